//! Exact dense linear algebra over a [`Field`].

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::poly::{Monomial, Poly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Vec<Scalar>>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![vec![field.zero(); cols]; rows],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i][i] = field.one();
        }
        m
    }

    pub fn from_rows(field: &Field, cols: usize, data: Vec<Vec<Scalar>>) -> Result<Self> {
        if let Some(bad) = data.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Matrix {
            field: field.clone(),
            rows: data.len(),
            cols,
            data,
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &Field, rows: usize, columns: &[Vec<Scalar>]) -> Result<Self> {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: c.len(),
                });
            }
            for (i, x) in c.iter().enumerate() {
                m.data[i][j] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn from_i64(field: &Field, data: &[&[i64]]) -> Self {
        let cols = data.first().map_or(0, |r| r.len());
        let rows = data
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Matrix::from_rows(field, cols, rows).expect("rectangular literal")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i][j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let f = &self.field;
        Ok(self
            .data
            .iter()
            .map(|r| r.iter().zip(v).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b))))
            .collect())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let t = f.mul(a, &other.data[k][j]);
                    out.data[i][j] = f.add(&out.data[i][j], &t);
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !f.is_zero(&m.data[i][c])) else {
                continue;
            };
            m.data.swap(r, p);
            let inv = f.inv(&m.data[r][c]).expect("pivot is nonzero");
            for x in m.data[r].iter_mut() {
                *x = f.mul(x, &inv);
            }
            let pivot_row = m.data[r].clone();
            for i in 0..self.rows {
                if i == r || f.is_zero(&m.data[i][c]) {
                    continue;
                }
                let factor = m.data[i][c].clone();
                for (x, y) in m.data[i].iter_mut().zip(&pivot_row) {
                    if !f.is_zero(y) {
                        *x = f.sub(x, &f.mul(&factor, y));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : M v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (k, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(&r.data[k][fc]);
                }
                v
            })
            .collect()
    }

    /// Basis of the column space (the pivot columns of `M`).
    pub fn image(&self) -> Vec<Vec<Scalar>> {
        self.rref().1.into_iter().map(|c| self.column(c)).collect()
    }

    /// A solution of `M x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let f = &self.field;
        let mut aug = self.clone();
        aug.cols += 1;
        for (row, x) in aug.data.iter_mut().zip(b) {
            row.push(x.clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![f.zero(); self.cols];
        for (k, &pc) in pivots.iter().enumerate() {
            x[pc] = r.data[k][self.cols].clone();
        }
        Ok(Some(x))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }
}

/// An incrementally maintained echelon basis of a subspace of `k^n`.
#[derive(Clone, Debug)]
pub struct Span {
    field: Field,
    dim: usize,
    /// Rows with distinct pivot columns, each normalised to pivot 1.
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl Span {
    pub fn new(field: &Field, dim: usize) -> Self {
        Span {
            field: field.clone(),
            dim,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Reduces `v` against the basis; the result is zero iff `v` is in the span.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let f = &self.field;
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if f.is_zero(&v[*p]) {
                continue;
            }
            let c = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.dim, "span: wrong ambient dimension");
        let f = self.field.clone();
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&r[p]).expect("nonzero pivot");
        let r: Vec<Scalar> = r.iter().map(|x| f.mul(x, &inv)).collect();
        for (_, row) in self.rows.iter_mut() {
            if f.is_zero(&row[p]) {
                continue;
            }
            let c = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        self.rows.push((p, r));
        true
    }
}

/// Coordinates of polynomials over the union of their supports.
pub struct Coordinates {
    pub monomials: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
}

impl Coordinates {
    pub fn new(monomials: impl IntoIterator<Item = Monomial>) -> Self {
        let mut monomials: Vec<Monomial> = monomials.into_iter().collect();
        monomials.sort();
        monomials.dedup();
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Coordinates { monomials, index }
    }

    pub fn spanning<'a>(polys: impl IntoIterator<Item = &'a Poly>) -> Self {
        Self::new(polys.into_iter().flat_map(|p| p.terms().map(|(m, _)| m.clone())))
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Coordinate vector; `None` if `p` has a monomial outside the index.
    pub fn vector(&self, p: &Poly) -> Option<Vec<Scalar>> {
        let mut v = vec![p.field().zero(); self.len()];
        for (m, c) in p.terms() {
            v[*self.index.get(m)?] = c.clone();
        }
        Some(v)
    }

    pub fn poly(&self, ring: &std::sync::Arc<crate::poly::PolyRing>, v: &[Scalar]) -> Poly {
        Poly::from_terms(ring, self.monomials.iter().cloned().zip(v.iter().cloned()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn kernels() {
        let q = Field::rationals();
        assert!(Matrix::identity(&q, 3).kernel().is_empty());
        assert_eq!(Matrix::zeros(&q, 2, 2).kernel().len(), 2);
        let f2 = Field::prime(2).unwrap();
        let m = Matrix::from_i64(&f2, &[&[1, 1], &[1, 1]]);
        assert_eq!(m.kernel(), vec![vec![f2.one(), f2.one()]]);
    }

    #[test]
    fn solve_reports_inconsistency() {
        let q = Field::rationals();
        let m = Matrix::from_i64(&q, &[&[1, 2], &[2, 4]]);
        assert_eq!(m.solve(&[q.from_i64(1), q.from_i64(3)]).unwrap(), None);
        let x = m.solve(&[q.from_i64(1), q.from_i64(2)]).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), vec![q.from_i64(1), q.from_i64(2)]);
        assert!(matches!(m.solve(&[q.one()]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn span_membership() {
        let f3 = Field::prime(3).unwrap();
        let mut s = Span::new(&f3, 3);
        let v = |a: i64, b: i64, c: i64| vec![f3.from_i64(a), f3.from_i64(b), f3.from_i64(c)];
        assert!(s.insert(&v(1, 1, 0)));
        assert!(s.insert(&v(0, 1, 1)));
        assert!(!s.insert(&v(1, 2, 1)));
        assert!(s.contains(&v(2, 1, 2)));
        assert!(!s.contains(&v(0, 0, 1)));
    }

    proptest! {
        #[test]
        fn rank_nullity(entries in proptest::collection::vec(-3i64..4, 12), p in prop_oneof![Just(0u64), Just(2), Just(5)]) {
            let f = if p == 0 { Field::rationals() } else { Field::prime(p).unwrap() };
            let rows: Vec<Vec<Scalar>> = entries.chunks(4).map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect();
            let m = Matrix::from_rows(&f, 4, rows).unwrap();
            let ker = m.kernel();
            prop_assert_eq!(m.rank() + ker.len(), 4);
            for v in &ker {
                prop_assert!(m.mul_vec(v).unwrap().iter().all(|x| f.is_zero(x)));
            }
            prop_assert_eq!(m.image().len(), m.rank());
        }
    }
}
