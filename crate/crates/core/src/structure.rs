//! Primitives, free plethories, Frobenius and Verschiebung, and the
//! linearization map onto a plethory.
//!
//! Graded verdicts are always relative to an explicit degree bound.

use std::sync::Arc;

use crate::algebra::{Algebra, AlgebraPres, Rule};
use crate::biring::{Biring, BiringData, HopfAlgebra, Report};
use crate::compose::{close_relations, Plethory};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{Coordinates, Matrix, Span};
use crate::poly::{Monomial, Poly};

type Tensor2 = Vec<Vec<Scalar>>;

/// A cocommutative bialgebra on a finite basis, possibly noncommutative,
/// given by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bialgebra {
    field: Field,
    names: Vec<String>,
    /// `mul[i][j]`: coordinates of `b_i b_j`.
    mul: Vec<Vec<Vec<Scalar>>>,
    unit: Vec<Scalar>,
    /// `comul[k][i][j]`: coefficient of `b_i ⊗ b_j` in `Δ(b_k)`.
    comul: Vec<Tensor2>,
    counit: Vec<Scalar>,
}

impl Bialgebra {
    pub fn new(
        field: Field,
        names: Vec<String>,
        mul: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
        comul: Vec<Tensor2>,
        counit: Vec<Scalar>,
    ) -> Result<Self> {
        let r = names.len();
        let bad = |m: &str| Err(Error::InvalidBialgebra(m.to_string()));
        let square = |t: &[Vec<Scalar>]| t.len() == r && t.iter().all(|row| row.len() == r);
        if mul.len() != r
            || mul.iter().any(|row| row.len() != r || row.iter().any(|v| v.len() != r))
            || unit.len() != r
            || counit.len() != r
            || comul.len() != r
            || !comul.iter().all(|t| square(t))
        {
            return bad("structure constants have the wrong shape");
        }
        let b = Bialgebra {
            field,
            names,
            mul,
            unit,
            comul,
            counit,
        };
        b.validate()?;
        Ok(b)
    }

    /// The monoid algebra of a finite monoid, every basis element grouplike.
    pub fn monoid(field: &Field, names: &[&str], table: &[&[usize]]) -> Result<Self> {
        let r = names.len();
        let e = |k: usize| -> Vec<Scalar> { (0..r).map(|i| if i == k { field.one() } else { field.zero() }).collect() };
        let unit_idx = (0..r)
            .find(|&u| (0..r).all(|i| table.get(u).and_then(|row| row.get(i)) == Some(&i) && table.get(i).and_then(|row| row.get(u)) == Some(&i)))
            .ok_or_else(|| Error::InvalidBialgebra("monoid table has no identity".into()))?;
        let mul = (0..r).map(|i| (0..r).map(|j| e(table[i][j])).collect()).collect();
        let comul = (0..r)
            .map(|k| (0..r).map(|i| (0..r).map(|j| if i == k && j == k { field.one() } else { field.zero() }).collect()).collect())
            .collect();
        Self::new(field.clone(), names.iter().map(|s| s.to_string()).collect(), mul, e(unit_idx), comul, vec![field.one(); r])
    }

    /// `k[m]/(m²)` on `{u, m}` with `u = 1` grouplike and `m` primitive
    /// relative to `u`; a bialgebra only in characteristic 2.
    pub fn dual_numbers(field: &Field) -> Result<Self> {
        let (z, o) = (field.zero(), field.one());
        let mul = vec![
            vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]],
            vec![vec![z.clone(), o.clone()], vec![z.clone(), z.clone()]],
        ];
        let comul = vec![
            vec![vec![o.clone(), z.clone()], vec![z.clone(), z.clone()]],
            vec![vec![z.clone(), o.clone()], vec![o.clone(), z.clone()]],
        ];
        Self::new(field.clone(), vec!["u".into(), "m".into()], mul, vec![o.clone(), z.clone()], comul, vec![o, z])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn counit(&self) -> &[Scalar] {
        &self.counit
    }

    pub fn mul_table(&self) -> &[Vec<Vec<Scalar>>] {
        &self.mul
    }

    pub fn comul_table(&self) -> &[Tensor2] {
        &self.comul
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim()];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !f.is_zero(a)) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !f.is_zero(b)) {
                let ab = f.mul(a, b);
                for (o, c) in out.iter_mut().zip(&self.mul[i][j]) {
                    *o = f.add(o, &f.mul(&ab, c));
                }
            }
        }
        out
    }

    pub fn comul(&self, x: &[Scalar]) -> Tensor2 {
        let f = &self.field;
        let r = self.dim();
        let mut out = vec![vec![f.zero(); r]; r];
        for (k, a) in x.iter().enumerate().filter(|(_, a)| !f.is_zero(a)) {
            for i in 0..r {
                for j in 0..r {
                    out[i][j] = f.add(&out[i][j], &f.mul(a, &self.comul[k][i][j]));
                }
            }
        }
        out
    }

    fn dot(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let f = &self.field;
        x.iter().zip(y).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
    }

    fn basis_vector(&self, k: usize) -> Vec<Scalar> {
        (0..self.dim()).map(|i| if i == k { self.field.one() } else { self.field.zero() }).collect()
    }

    fn tensor_mul(&self, s: &Tensor2, t: &Tensor2) -> Tensor2 {
        let f = &self.field;
        let r = self.dim();
        let mut out = vec![vec![f.zero(); r]; r];
        for (a, row) in s.iter().enumerate() {
            for (b, x) in row.iter().enumerate().filter(|(_, x)| !f.is_zero(x)) {
                for (c, row2) in t.iter().enumerate() {
                    for (d, y) in row2.iter().enumerate().filter(|(_, y)| !f.is_zero(y)) {
                        let xy = f.mul(x, y);
                        for (i, u) in self.mul[a][c].iter().enumerate().filter(|(_, u)| !f.is_zero(u)) {
                            for (j, v) in self.mul[b][d].iter().enumerate().filter(|(_, v)| !f.is_zero(v)) {
                                out[i][j] = f.add(&out[i][j], &f.mul(&xy, &f.mul(u, v)));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    fn validate(&self) -> Result<()> {
        let f = &self.field;
        let r = self.dim();
        let fail = |m: String| Err(Error::InvalidBialgebra(m));
        let e: Vec<Vec<Scalar>> = (0..r).map(|k| self.basis_vector(k)).collect();
        for i in 0..r {
            if self.mul(&self.unit, &e[i]) != e[i] || self.mul(&e[i], &self.unit) != e[i] {
                return fail(format!("unit law fails on {}", self.names[i]));
            }
            for j in 0..r {
                for k in 0..r {
                    if self.mul(&self.mul(&e[i], &e[j]), &e[k]) != self.mul(&e[i], &self.mul(&e[j], &e[k])) {
                        return fail(format!("multiplication is not associative on {}, {}, {}", self.names[i], self.names[j], self.names[k]));
                    }
                }
            }
        }
        for k in 0..r {
            let d = &self.comul[k];
            let name = &self.names[k];
            for i in 0..r {
                for j in 0..r {
                    if d[i][j] != d[j][i] {
                        return fail(format!("Δ({name}) is not cocommutative"));
                    }
                }
            }
            for c in 0..r {
                let left: Scalar = (0..r).fold(f.zero(), |acc, i| f.add(&acc, &f.mul(&self.counit[i], &d[i][c])));
                let right: Scalar = (0..r).fold(f.zero(), |acc, i| f.add(&acc, &f.mul(&self.counit[i], &d[c][i])));
                if left != e[k][c] || right != e[k][c] {
                    return fail(format!("counit law fails on {name}"));
                }
            }
            for a in 0..r {
                for b in 0..r {
                    for c in 0..r {
                        let left = (0..r).fold(f.zero(), |acc, i| f.add(&acc, &f.mul(&d[i][c], &self.comul[i][a][b])));
                        let right = (0..r).fold(f.zero(), |acc, j| f.add(&acc, &f.mul(&d[a][j], &self.comul[j][b][c])));
                        if left != right {
                            return fail(format!("Δ is not coassociative on {name}"));
                        }
                    }
                }
            }
        }
        let one_one: Tensor2 = (0..r).map(|i| (0..r).map(|j| f.mul(&self.unit[i], &self.unit[j])).collect()).collect();
        if self.comul(&self.unit) != one_one || !f.is_one(&self.dot(&self.counit, &self.unit)) {
            return fail("Δ or ε does not preserve the unit".into());
        }
        for i in 0..r {
            for j in 0..r {
                let prod = self.mul(&e[i], &e[j]);
                if self.comul(&prod) != self.tensor_mul(&self.comul[i], &self.comul[j]) {
                    return fail(format!("Δ is not multiplicative on {}, {}", self.names[i], self.names[j]));
                }
                if self.dot(&self.counit, &prod) != f.mul(&self.counit[i], &self.counit[j]) {
                    return fail(format!("ε is not multiplicative on {}, {}", self.names[i], self.names[j]));
                }
            }
        }
        Ok(())
    }
}

/// Coordinates of `x` in the span of `basis`, if it lies there.
pub fn express(basis: &[Poly], x: &Poly) -> Option<Vec<Scalar>> {
    let f = x.field().clone();
    let coords = Coordinates::spanning(basis.iter().chain(std::iter::once(x)));
    let cols: Vec<Vec<Scalar>> = basis.iter().map(|b| coords.vector(b).unwrap()).collect();
    if basis.is_empty() {
        return x.is_zero().then(Vec::new);
    }
    let m = Matrix::from_columns(&f, coords.len(), &cols).ok()?;
    m.solve(&coords.vector(x).unwrap()).ok().flatten()
}

fn combine(basis: &[Poly], coeffs: &[Scalar], zero: Poly) -> Poly {
    basis.iter().zip(coeffs).fold(zero, |acc, (b, c)| &acc + &b.scale(c))
}

/// An exact basis of `{x : Δ⁺(x) = x⊗1 + 1⊗x}`: on the full basis of a
/// finite carrier, or degreewise through `bound` on a graded one.
pub fn primitives(h: &HopfAlgebra, bound: u32) -> Result<Vec<Poly>> {
    let a = h.carrier();
    let f = h.field().clone();
    let groups: Vec<Vec<Monomial>> = if a.is_finite() {
        vec![a.basis().unwrap()]
    } else {
        let w = a.grading().ok_or(Error::GradingRequired)?.to_vec();
        (1..=bound).map(|d| a.normal_monomials_of_degree(d, &w)).collect()
    };
    let p = h.powers();
    let t2 = h.tensor2();
    let mut out = Vec::new();
    for mut group in groups {
        group.reverse();
        if group.is_empty() {
            continue;
        }
        let defects: Vec<Poly> = group
            .iter()
            .map(|m| {
                let x = Poly::monomial(a.ring(), m.clone(), f.one());
                let d = h.coadd_apply(&x).unwrap();
                t2.nf(&(&(&d - &p.place(&x, &[0], 2)) - &p.place(&x, &[1], 2)))
            })
            .collect();
        let coords = Coordinates::spanning(&defects);
        let cols: Vec<Vec<Scalar>> = defects.iter().map(|d| coords.vector(d).unwrap()).collect();
        let kernel = if coords.is_empty() {
            (0..group.len()).map(|k| (0..group.len()).map(|i| if i == k { f.one() } else { f.zero() }).collect()).collect()
        } else {
            Matrix::from_columns(&f, coords.len(), &cols)?.kernel()
        };
        for v in kernel {
            out.push(a.from_coords(&v, &group));
        }
    }
    Ok(out)
}

/// A k⟨F⟩-module: `F(Σ λ_i m_i) = Σ λ_i^p F(m_i)`. `action[i]` is `F(m_i)`
/// in coordinates, `None` where it leaves the module (a truncated chain).
/// A bialgebra on the same basis makes it an object of the category the
/// free `p`-linear plethory is built on.
#[derive(Clone, Debug)]
pub struct FModule {
    pub field: Field,
    pub names: Vec<String>,
    pub action: Vec<Option<Vec<Scalar>>>,
    pub bialgebra: Option<Bialgebra>,
}

impl FModule {
    pub fn new(field: &Field, names: &[&str], action: Vec<Option<Vec<i64>>>) -> Result<Self> {
        if field.characteristic() == 0 {
            return Err(Error::CharZeroField);
        }
        let r = names.len();
        if action.len() != r || action.iter().flatten().any(|v| v.len() != r) {
            return Err(Error::DimensionMismatch { expected: r, found: action.len() });
        }
        Ok(FModule {
            field: field.clone(),
            names: names.iter().map(|s| s.to_string()).collect(),
            action: action.into_iter().map(|v| v.map(|v| v.into_iter().map(|c| field.from_i64(c)).collect())).collect(),
            bialgebra: None,
        })
    }

    /// Attaches a bialgebra on the same basis; `F` must be compatible, which
    /// the plethory validation of the free object checks.
    pub fn with_bialgebra(mut self, b: Bialgebra) -> Result<Self> {
        if b.dim() != self.names.len() || b.field() != &self.field {
            return Err(Error::BadParameters("bialgebra does not match the module".into()));
        }
        self.bialgebra = Some(b);
        Ok(self)
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    /// `F` applied to a coordinate vector; `None` if it leaves the module.
    pub fn apply(&self, x: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.rank()];
        for (i, c) in x.iter().enumerate().filter(|(_, c)| !f.is_zero(c)) {
            let Some(img) = &self.action[i] else {
                return Ok(None);
            };
            let cp = f.frob(c)?;
            for (o, y) in out.iter_mut().zip(img) {
                *o = f.add(o, &f.mul(&cp, y));
            }
        }
        Ok(Some(out))
    }
}

/// The primitives through `bound` as a k⟨F⟩-module, `F` the `p`-th power.
pub fn prim_fmodule(h: &HopfAlgebra, bound: u32) -> Result<(Vec<Poly>, FModule)> {
    let f = h.field().clone();
    let p = f.characteristic();
    if p == 0 {
        return Err(Error::CharZeroField);
    }
    let prims = primitives(h, bound)?;
    let a = h.carrier();
    let action = prims.iter().map(|x| express(&prims, &a.pow(x, p as u32))).collect();
    let names = prims.iter().map(|x| x.to_string()).collect();
    Ok((
        prims,
        FModule {
            field: f,
            names,
            action,
            bialgebra: None,
        },
    ))
}

/// The bialgebra on `Prim(Q)`: product `x∘y`, coproduct `Δ×`, counit `ε×`.
pub fn prim_bialgebra(q: &Plethory, bound: u32) -> Result<(Vec<Poly>, Bialgebra)> {
    let b = q.biring();
    let prims = primitives(b, bound)?;
    let r = prims.len();
    let f = b.field().clone();
    let mut mul = vec![vec![Vec::new(); r]; r];
    for i in 0..r {
        for j in 0..r {
            let xy = q.compose(&prims[i], &prims[j])?;
            mul[i][j] = express(&prims, &xy)
                .ok_or_else(|| Error::PlethysmEscapesPrim(format!("({}) ∘ ({}) = {xy}", prims[i], prims[j])))?;
        }
    }
    let p = b.powers();
    let t2 = b.tensor2();
    let mut comul = Vec::with_capacity(r);
    for x in &prims {
        let d = b.comul_apply(x)?;
        let pairs: Vec<Poly> = prims
            .iter()
            .flat_map(|l| prims.iter().map(move |rr| (l, rr)))
            .map(|(l, rr)| t2.nf(&(&p.place(l, &[0], 2) * &p.place(rr, &[1], 2))))
            .collect();
        let c = express(&pairs, &d).ok_or_else(|| Error::ComultiplicationEscapesPrim(format!("Δ×({x}) = {d}")))?;
        comul.push(c.chunks(r.max(1)).map(<[Scalar]>::to_vec).collect());
    }
    let counit = prims.iter().map(|x| b.counit_mul_apply(x)).collect::<Result<_>>()?;
    let unit = express(&prims, q.unit()).ok_or_else(|| Error::PlethysmEscapesPrim(format!("unit {} is not primitive", q.unit())))?;
    let names = prims.iter().map(|x| x.to_string()).collect();
    Ok((prims, Bialgebra::new(f, names, mul, unit, comul, counit)?))
}

/// Structure maps of `Sym(A)` on the carrier `k[j(b_1), …, j(b_r)]` or a quotient.
fn sym_data(a: &Bialgebra, carrier: Algebra, name: &str) -> BiringData {
    let f = a.field();
    let r = a.dim();
    let t2 = carrier.tensor_power(2);
    let kc = crate::biring::scalar_ring(f);
    let coadd = (0..r).map(|i| &t2.gen(i) + &t2.gen(r + i)).collect();
    let comul = (0..r)
        .map(|k| {
            let mut d = t2.zero();
            for i in 0..r {
                for j in 0..r {
                    let c = &a.comul_table()[k][i][j];
                    if !f.is_zero(c) {
                        d = &d + &(&t2.gen(i) * &t2.gen(r + j)).scale(c);
                    }
                }
            }
            d
        })
        .collect();
    BiringData {
        name: name.to_string(),
        coadd,
        comul,
        counit_add: vec![f.zero(); r],
        counit_mul: a.counit().to_vec(),
        antipode: (0..r).map(|i| -&carrier.gen(i)).collect(),
        beta: a.counit().iter().map(|e| kc.gen(0).scale(e)).collect(),
        carrier,
    }
}

fn sym_plethory(a: &Bialgebra, data: BiringData) -> Result<Plethory> {
    let carrier = data.carrier.clone();
    let r = a.dim();
    let gens: Vec<Poly> = (0..r).map(|i| carrier.gen(i)).collect();
    let circ = (0..r)
        .map(|i| (0..r).map(|j| carrier.nf(&combine(&gens, &a.mul_table()[i][j], carrier.zero()))).collect())
        .collect();
    let unit = carrier.nf(&combine(&gens, a.unit(), carrier.zero()));
    Plethory::new(Biring::new(data)?, circ, &unit)
}

/// The free plethory `Sym(A)`: polynomials on a basis of `A` in degree 1,
/// `j(a)∘j(b) = j(ab)`, unit `j(1)`.
pub fn sym_free(a: &Bialgebra) -> Result<Plethory> {
    let carrier: Algebra = Arc::new(AlgebraPres::free_owned(a.field(), a.names().to_vec()).with_grading(vec![1; a.dim()])?);
    sym_plethory(a, sym_data(a, carrier, &format!("Sym({})", a.names().join(", "))))
}

/// `Sym(M)` modulo `j(m)^p - j(Fm)` as a presented algebra, with `j(m)^p`
/// as leading term of every relation.
pub fn sym_p_carrier(m: &FModule) -> Result<Algebra> {
    let f = &m.field;
    let p = f.characteristic();
    if p == 0 {
        return Err(Error::CharZeroField);
    }
    let free = AlgebraPres::free_owned(f, m.names.clone());
    let gens: Vec<Poly> = (0..m.rank()).map(|i| free.gen(i)).collect();
    let rules = m
        .action
        .iter()
        .map(|a| a.as_ref().map(|v| Rule { power: p as u32, rhs: combine(&gens, v, free.zero()) }))
        .collect();
    let pres = AlgebraPres::new(free.ring().clone(), rules, None)
        .map_err(|e| Error::BasisNotAdapted(e.to_string()))?;
    Ok(Arc::new(pres))
}

/// The free `p`-linear plethory `Sym^[p](M)` on a k⟨F⟩-bialgebra.
pub fn sym_p_free(m: &FModule) -> Result<Plethory> {
    let a = m
        .bialgebra
        .as_ref()
        .ok_or_else(|| Error::BadParameters("Sym^[p] as a plethory needs a bialgebra on the module".into()))?;
    let carrier = sym_p_carrier(m)?;
    sym_plethory(a, sym_data(a, carrier, &format!("Sym^[p]({})", m.names.join(", "))))
}

/// The elementary unipotent group scheme `Sym^[p](M)` of a bare k⟨F⟩-module.
pub fn sym_p_hopf(m: &FModule) -> Result<HopfAlgebra> {
    let carrier = sym_p_carrier(m)?;
    let r = m.rank();
    let t2 = carrier.tensor_power(2);
    let coadd: Vec<Poly> = (0..r).map(|i| &t2.gen(i) + &t2.gen(r + i)).collect();
    let antipode: Vec<Poly> = (0..r).map(|i| -&carrier.gen(i)).collect();
    HopfAlgebra::new(&format!("Sym^[p]({})", m.names.join(", ")), carrier, &coadd, vec![m.field.zero(); r], &antipode)
}

/// The relations `j(Fm_i) - j(m_i)^p` in the polynomial carrier of `Sym(M)`.
pub fn sym_p_generators(q: &Plethory, m: &FModule) -> Vec<Poly> {
    let a = q.carrier();
    let p = m.field.characteristic() as u32;
    let gens: Vec<Poly> = (0..m.rank()).map(|i| a.gen(i)).collect();
    m.action
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.as_ref().map(|v| &combine(&gens, v, a.zero()) - &a.pow(&gens[i], p)))
        .collect()
}

/// An algebra map given on generators whose coefficients are twisted by
/// `Frob^twist`: `φ(λ x) = Frob^twist(λ) φ(x)`.
#[derive(Clone, Debug)]
pub struct HopfMap {
    pub name: String,
    pub images: Vec<Poly>,
    pub twist: i32,
}

fn twist_scalar(f: &Field, c: &Scalar, twist: i32) -> Result<Scalar> {
    let mut c = c.clone();
    for _ in 0..twist.unsigned_abs() {
        c = if twist > 0 { f.frob(&c)? } else { f.frob_inv(&c)? };
    }
    Ok(c)
}

fn twist_poly(p: &Poly, twist: i32) -> Result<Poly> {
    if twist == 0 {
        return Ok(p.clone());
    }
    let f = p.field().clone();
    let mut err = None;
    let out = p.map_coefficients(|c| match twist_scalar(&f, c, twist) {
        Ok(c) => c,
        Err(e) => {
            err = Some(e);
            f.zero()
        }
    });
    err.map_or(Ok(out), Err)
}

impl HopfMap {
    pub fn apply(&self, a: &AlgebraPres, x: &Poly) -> Result<Poly> {
        let x = twist_poly(&a.import(x)?, self.twist)?;
        Ok(a.substitute(&x, &self.images))
    }

    /// `after ∘ self`.
    pub fn then(&self, a: &AlgebraPres, after: &HopfMap) -> Result<HopfMap> {
        Ok(HopfMap {
            name: format!("{}{}", after.name, self.name),
            images: self.images.iter().map(|x| after.apply(a, x)).collect::<Result<_>>()?,
            twist: self.twist + after.twist,
        })
    }

    pub fn is_zero_map(&self, h: &HopfAlgebra) -> bool {
        self.images.iter().zip(h.counit()).all(|(x, e)| x.as_constant().as_ref() == Some(e) || (x.is_zero() && h.field().is_zero(e)))
    }

    /// Whether the map commutes with `Δ⁺`, `ε⁺` and `S` up to its twist.
    pub fn check(&self, h: &HopfAlgebra) -> Result<Report> {
        let a = h.carrier();
        let mut report = Report::new(&self.name);
        for (_, rel) in a.relations() {
            let v = self.apply(a, &rel)?;
            report.push_relation(&self.name, &rel, &v);
        }
        let t2 = h.tensor2();
        let p = h.powers();
        let doubled: Vec<Poly> = self
            .images
            .iter()
            .map(|x| p.place(x, &[0], 2))
            .chain(self.images.iter().map(|x| p.place(x, &[1], 2)))
            .collect();
        for (i, img) in self.images.iter().enumerate() {
            let g = h.gen_name(i);
            let lhs = h.coadd_apply(img)?;
            let rhs = t2.substitute(&twist_poly(&h.coadd()[i], self.twist)?, &doubled);
            report.push_diff(&format!("{}: coadd", self.name), g, &t2, &lhs, &rhs);
            let e = twist_scalar(h.field(), &h.counit()[i], self.twist)?;
            report.push_scalar(&format!("{}: counit", self.name), g, h.field(), &h.counit_apply(img)?, &e);
            let s = self.apply(a, &h.antipode()[i])?;
            report.push_diff(&format!("{}: antipode", self.name), g, a, &h.antipode_apply(img)?, &s);
        }
        Ok(report)
    }
}

/// The Frobenius `x ↦ x^p`.
pub fn frobenius_hopf(h: &HopfAlgebra) -> Result<HopfMap> {
    let p = h.field().characteristic();
    if p == 0 {
        return Err(Error::CharZeroField);
    }
    let a = h.carrier();
    Ok(HopfMap {
        name: "F".into(),
        images: (0..a.ngens()).map(|i| a.pow(&a.gen(i), p as u32)).collect(),
        twist: 1,
    })
}

/// The Verschiebung: the coefficient of each pure tensor `b^{⊗p}` in
/// `Δ^{(p)}(g)`, untwisted by `Frob⁻¹`; mixed orbit sums map to zero.
pub fn verschiebung(h: &HopfAlgebra, _bound: u32) -> Result<HopfMap> {
    let f = h.field().clone();
    let p = f.characteristic() as usize;
    if p == 0 {
        return Err(Error::CharZeroField);
    }
    let a = h.carrier();
    if !a.is_finite() && a.grading().is_none() {
        return Err(Error::GradingRequired);
    }
    let n = a.ngens();
    let mut images = Vec::with_capacity(n);
    for i in 0..n {
        let d = h.iterated_coadd(&a.gen(i), p)?;
        let mut v = a.zero();
        for (m, c) in d.terms() {
            let first = &m.0[..n];
            if m.0.chunks(n).all(|s| s == first) {
                v.add_term(Monomial(first.to_vec()), f.frob_inv(c)?);
            }
        }
        images.push(a.nf(&v));
    }
    Ok(HopfMap {
        name: "V".into(),
        images,
        twist: -1,
    })
}

/// Multiplication by `n`: `n`-fold coaddition followed by multiplication.
pub fn mult_by_n(h: &HopfAlgebra, n: usize) -> Result<HopfMap> {
    let a = h.carrier();
    let images = (0..a.ngens())
        .map(|i| {
            let d = h.iterated_coadd(&a.gen(i), n)?;
            Ok(if n == 0 { a.constant(d.as_constant().unwrap_or_else(|| h.field().zero())) } else { h.powers().collapse(&d, n) })
        })
        .collect::<Result<_>>()?;
    Ok(HopfMap {
        name: format!("[{n}]"),
        images,
        twist: 0,
    })
}

/// Injectivity and surjectivity of the linearization restricted to
/// filtration degree `≤ degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeVerdict {
    pub degree: u32,
    pub injective: bool,
    pub surjective: bool,
}

/// Degreewise comparison of `v: k[j(x_1), …] → Q`, `j(x_a) ↦ x_a`, through `bound`.
pub fn compare_degrees(source: &AlgebraPres, q: &AlgebraPres, images: &[Poly], bound: u32) -> Vec<DegreeVerdict> {
    let f = q.field().clone();
    let sw = source.weights();
    let qw = q.weights();
    (0..=bound)
        .map(|d| {
            let monos = source.normal_monomials_up_to(d, &sw);
            let imgs: Vec<Poly> = monos
                .iter()
                .map(|m| q.substitute(&Poly::monomial(source.ring(), m.clone(), f.one()), images))
                .collect();
            let targets: Vec<Poly> = q
                .normal_monomials_up_to(d, &qw)
                .into_iter()
                .map(|m| Poly::monomial(q.ring(), m, f.one()))
                .collect();
            let coords = Coordinates::spanning(imgs.iter().chain(&targets));
            let mut span = Span::new(&f, coords.len());
            let independent = imgs.iter().filter(|x| span.insert(&coords.vector(x).unwrap())).count();
            DegreeVerdict {
                degree: d,
                injective: independent == imgs.len(),
                surjective: targets.iter().all(|t| span.contains(&coords.vector(t).unwrap())),
            }
        })
        .collect()
}

/// The canonical plethory map onto `Q` from the free (`p`-)linear plethory
/// on its primitives, with degreewise verdicts.
#[derive(Debug)]
pub struct Linearization {
    pub source: Plethory,
    pub primitives: Vec<Poly>,
    pub map_report: Report,
    pub degrees: Vec<DegreeVerdict>,
    /// In characteristic `p`: the verdicts for plain `Sym(Prim Q)`.
    pub plain: Option<Vec<DegreeVerdict>>,
}

impl Linearization {
    pub fn is_isomorphism(&self) -> bool {
        self.map_report.passed() && self.degrees.iter().all(|d| d.injective && d.surjective)
    }

    pub fn is_surjective(&self) -> bool {
        self.degrees.iter().all(|d| d.surjective)
    }
}

/// Checks that `images` define a plethory map `src → dst`.
pub fn check_plethory_map(src: &Plethory, dst: &Plethory, images: &[Poly]) -> Result<Report> {
    let mut report = src.biring().check_map_to(dst.biring(), images);
    let s = src.carrier();
    let d = dst.carrier();
    let n = s.ngens();
    for i in 0..n {
        for j in 0..n {
            let lhs = d.substitute(&src.circ()[i][j], images);
            let rhs = dst.compose(&images[i], &images[j])?;
            report.push_diff("map: plethysm", &format!("{}∘{}", s.gen_name(i), s.gen_name(j)), d, &lhs, &rhs);
        }
    }
    report.push_diff("map: unit", "e", d, &d.substitute(src.unit(), images), dst.unit());
    Ok(report)
}

pub fn linearize(q: &Plethory, bound: u32) -> Result<Linearization> {
    let f = q.biring().field().clone();
    let p = f.characteristic();
    let (prims, bialg) = prim_bialgebra(q, bound)?;
    let plain_source = sym_free(&bialg)?;
    let (source, plain) = if p == 0 {
        (plain_source, None)
    } else {
        let v = verschiebung(q.biring(), bound)?;
        for (i, x) in v.images.iter().enumerate() {
            let e = q.biring().counit()[i].clone();
            if q.carrier().nf(&(x - &q.carrier().constant(e))) != q.carrier().zero() {
                return Err(Error::VerschiebungNonzero {
                    generator: q.carrier().gen_name(i).to_string(),
                    witness: x.to_string(),
                });
            }
        }
        let module = FModule {
            field: f.clone(),
            names: bialg.names().to_vec(),
            action: prims.iter().map(|x| express(&prims, &q.carrier().pow(x, p as u32))).collect(),
            bialgebra: Some(bialg.clone()),
        };
        let plain = compare_degrees(plain_source.carrier(), q.carrier(), &prims, bound);
        (sym_p_free(&module)?, Some(plain))
    };
    let map_report = check_plethory_map(&source, q, &prims)?;
    let degrees = compare_degrees(source.carrier(), q.carrier(), &prims, bound);
    Ok(Linearization {
        source,
        primitives: prims,
        map_report,
        degrees,
        plain,
    })
}

/// Whether the algebra generated by primitives contains every element of
/// degree `≤ bound`.
pub fn primitively_generated(h: &HopfAlgebra, bound: u32) -> Result<bool> {
    let a = h.carrier();
    let prims = primitives(h, bound)?;
    let free = AlgebraPres::free_owned(h.field(), (0..prims.len()).map(|i| format!("p{i}")).collect());
    let w = a.weights();
    let free = free.with_grading(prims.iter().map(|x| x.weighted_degree(&w).unwrap_or(1).max(1)).collect())?;
    Ok(compare_degrees(&free, a, &prims, bound).iter().all(|d| d.surjective))
}

/// Weak linearity through `bound`: primitive generation up to the bound.
pub fn is_weakly_linear(q: &Plethory, bound: u32) -> Result<bool> {
    primitively_generated(q.biring(), bound)
}

/// The Lemma-type containments for the ideal `J` generated by `gens`:
/// `Δ⁺(s), Δ×(s) ∈ Q⊗J + J⊗Q`, `β(c)(s) = 0`, `s∘q ∈ J` and
/// `q∘s ≡ q∘0 (mod J)` for generators `q`. Decided by normal forms in the
/// quotient presentation.
pub fn qq_ideal_check(q: &Plethory, gens: &[Poly]) -> Result<Report> {
    let b = q.biring();
    let a = q.carrier();
    let gens: Vec<Poly> = gens.iter().map(|g| a.import(g)).collect::<Result<_>>()?;
    let quot = close_relations((**a).clone().without_grading(), gens.clone()).map_err(|e| match e {
        Error::RelationOutsideFragment(s) => Error::MembershipUndecidable(s),
        other => other,
    })?;
    let quot: Algebra = Arc::new(quot);
    let qt2 = quot.tensor_power(2);
    let kc = b.scalar_ring();
    let mut report = Report::new(&format!("ideal in {}", q.name()));
    let to = |target: &AlgebraPres, x: Poly| target.import(&x);
    for s in &gens {
        let name = s.to_string();
        let zero2 = qt2.zero();
        report.push_diff("ideal: coadd", &name, &qt2, &to(&qt2, b.coadd_apply(s)?)?, &zero2);
        report.push_diff("ideal: comul", &name, &qt2, &to(&qt2, b.comul_apply(s)?)?, &zero2);
        report.push_diff("ideal: beta", &name, kc, &b.beta_apply(s)?, &kc.zero());
        for i in 0..a.ngens() {
            let g = a.gen(i);
            let right = to(&quot, q.compose(s, &g)?)?;
            report.push_diff("ideal: J∘Q", &format!("{name} ∘ {g}"), &quot, &right, &quot.zero());
            let left = to(&quot, q.compose(&g, s)?)?;
            let zero = quot.constant(b.counit()[i].clone());
            report.push_diff("ideal: Q∘J", &format!("{g} ∘ {name}"), &quot, &left, &zero);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compose::unit_biring;

    fn graded_ga(f: &Field) -> HopfAlgebra {
        let a: Algebra = Arc::new(AlgebraPres::free(f, &["e"]).with_grading(vec![1]).unwrap());
        let t2 = a.tensor_power(2);
        HopfAlgebra::new("Ga", a.clone(), &[&t2.gen(0) + &t2.gen(1)], vec![f.zero()], &[-&a.gen(0)]).unwrap()
    }

    #[test]
    fn primitives_of_the_additive_group() {
        let q = Field::rationals();
        let p = primitives(&graded_ga(&q), 5).unwrap();
        assert_eq!(p.iter().map(|x| x.to_string()).collect::<Vec<_>>(), vec!["e"]);
        for pr in [2u64, 3] {
            let f = Field::prime(pr).unwrap();
            let p = primitives(&graded_ga(&f), (pr * pr) as u32).unwrap();
            let expect: Vec<String> = ["e".to_string(), format!("e^{pr}"), format!("e^{}", pr * pr)].into();
            assert_eq!(p.iter().map(|x| x.to_string()).collect::<Vec<_>>(), expect);
            let (_, m) = prim_fmodule(&graded_ga(&f), (pr * pr) as u32).unwrap();
            assert_eq!(m.action[0], Some(vec![f.zero(), f.one(), f.zero()]));
            assert_eq!(m.action[2], None);
        }
    }

    #[test]
    fn bialgebra_validation() {
        let q = Field::rationals();
        assert!(Bialgebra::monoid(&q, &["u", "v"], &[&[0, 1], &[1, 1]]).is_ok());
        assert!(Bialgebra::monoid(&q, &["u", "v"], &[&[0, 1], &[1, 0]]).is_ok());
        assert!(Bialgebra::monoid(&q, &["u", "v"], &[&[1, 0], &[0, 1]]).is_ok());
        assert!(Bialgebra::monoid(&q, &["u", "v"], &[&[1, 1], &[1, 1]]).is_err());
        assert!(Bialgebra::dual_numbers(&q).is_err());
        assert!(Bialgebra::dual_numbers(&Field::prime(2).unwrap()).is_ok());
    }

    #[test]
    fn sym_of_a_monoid_linearizes() {
        let q = Field::rationals();
        let a = Bialgebra::monoid(&q, &["u", "v"], &[&[0, 1], &[1, 1]]).unwrap();
        let s = sym_free(&a).unwrap();
        assert_eq!(s.compose(&s.carrier().gen(0), &s.carrier().gen(1)).unwrap(), s.carrier().gen(1));
        let lin = linearize(&s, 3).unwrap();
        assert!(lin.is_isomorphism(), "{:?}", lin.degrees);
        let (_, back) = prim_bialgebra(&s, 3).unwrap();
        assert_eq!(back.mul_table(), a.mul_table());
    }

    #[test]
    fn unit_plethory_linearizes() {
        let q = Field::rationals();
        let u = unit_biring(&q);
        let e = u.carrier().gen(0);
        let data = u.data();
        let carrier: Algebra = Arc::new((*data.carrier).clone().with_grading(vec![1]).unwrap());
        let b = Biring::new(BiringData { carrier, ..data }).unwrap();
        let p = Plethory::new(b, vec![vec![e.clone()]], &e).unwrap();
        let lin = linearize(&p, 5).unwrap();
        assert!(lin.is_isomorphism());
        assert_eq!(lin.degrees.len(), 6);
        assert!(is_weakly_linear(&p, 5).unwrap());
    }

    #[test]
    fn frobenius_and_verschiebung_on_the_additive_group() {
        for pr in [2u64, 3] {
            let f = Field::prime(pr).unwrap();
            let h = graded_ga(&f);
            let fr = frobenius_hopf(&h).unwrap();
            assert!(fr.check(&h).unwrap().passed());
            let v = verschiebung(&h, pr as u32).unwrap();
            assert!(v.images[0].is_zero());
            let m = mult_by_n(&h, pr as usize).unwrap();
            assert!(m.images[0].is_zero());
        }
        let q = Field::rationals();
        assert!(matches!(frobenius_hopf(&graded_ga(&q)), Err(Error::CharZeroField)));
        let two = mult_by_n(&graded_ga(&q), 2).unwrap();
        assert_eq!(two.images[0].to_string(), "2*e");
    }

    #[test]
    fn sym_p_of_a_grouplike() {
        let f = Field::prime(3).unwrap();
        let m = FModule::new(&f, &["u"], vec![Some(vec![1])])
            .unwrap()
            .with_bialgebra(Bialgebra::monoid(&f, &["u"], &[&[0]]).unwrap())
            .unwrap();
        let q = sym_p_free(&m).unwrap();
        assert_eq!(q.carrier().dim(), Some(3));
        let lin = linearize(&q, 3).unwrap();
        assert!(lin.is_isomorphism(), "{:?}", lin.degrees);
        let free = sym_free(m.bialgebra.as_ref().unwrap()).unwrap();
        let j = sym_p_generators(&free, &m);
        assert!(qq_ideal_check(&free, &j).unwrap().passed());
        assert!(qq_ideal_check(&free, &[]).unwrap().passed());
    }

    #[test]
    fn ideal_check_detects_failure() {
        let f = Field::prime(3).unwrap();
        let s = sym_free(&Bialgebra::monoid(&f, &["u", "g"], &[&[0, 1], &[1, 0]]).unwrap()).unwrap();
        let a = s.carrier();
        let r = qq_ideal_check(&s, &[&a.gen(0) + &a.gen(1)]).unwrap();
        assert!(r.failures().any(|x| x.axiom == "ideal: comul"));
    }
}
