//! Primitive idempotents of finite-dimensional commutative algebras.
//!
//! Over `F_q` the elements with `x^q = x` form a split semisimple subalgebra
//! `F_q^s` whose primitive idempotents are those of the whole algebra; it is
//! split by Lagrange interpolation on eigenvalues. Over the rationals
//! multiplication operators are split along the coprime factors of their
//! minimal polynomials, factored by Kronecker's method.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::FinAlgebra;
use crate::error::Result;
use crate::field::{Field, Scalar};
use crate::linalg::{Matrix, Span};

type Elem = Vec<Scalar>;

/// The complete set of primitive idempotents, sorted by coordinates.
pub fn idempotents(a: &FinAlgebra) -> Vec<Elem> {
    if a.dim() == 0 {
        return Vec::new();
    }
    let mut out = if a.field().is_finite() {
        split_finite(a)
    } else {
        split_rational(a)
    };
    out.sort();
    out
}

pub fn pi0_rank(a: &FinAlgebra) -> usize {
    idempotents(a).len()
}

/// Primitive idempotents by exhaustive search for `x^2 = x`.
pub fn idempotents_exhaustive(a: &FinAlgebra, cap: u64) -> Result<Vec<Elem>> {
    let all: Vec<Elem> = a
        .elements(cap)?
        .into_iter()
        .filter(|x| !a.is_zero(x) && a.mul(x, x) == *x)
        .collect();
    let mut prim: Vec<Elem> = all
        .iter()
        .filter(|e| !all.iter().any(|f| f != *e && a.mul(f, e) == *f))
        .cloned()
        .collect();
    prim.sort();
    Ok(prim)
}

fn sub(a: &FinAlgebra, x: &[Scalar], y: &[Scalar]) -> Elem {
    let f = a.field();
    x.iter().zip(y).map(|(u, v)| f.sub(u, v)).collect()
}

fn pow(a: &FinAlgebra, x: &[Scalar], mut e: u64) -> Elem {
    let mut acc = a.unit().to_vec();
    let mut base = x.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = a.mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = a.mul(&base, &base);
        }
    }
    acc
}

/// Minimal polynomial (low to high, monic) of `z` inside `eA`.
pub(crate) fn minimal_polynomial(a: &FinAlgebra, e: &[Scalar], z: &[Scalar]) -> Vec<Scalar> {
    let f = a.field();
    let mut powers: Vec<Elem> = vec![e.to_vec()];
    let mut span = Span::new(f, a.dim());
    span.insert(e);
    loop {
        let next = a.mul(powers.last().unwrap(), z);
        if span.contains(&next) {
            let m = Matrix::from_columns(f, a.dim(), &powers).expect("columns of equal length");
            let c = m.solve(&next).unwrap().expect("vector lies in the span");
            let mut mu: Vec<Scalar> = c.iter().map(|x| f.neg(x)).collect();
            mu.push(f.one());
            return mu;
        }
        span.insert(&next);
        powers.push(next);
    }
}

/// Evaluates a univariate polynomial at `z` in the algebra `eA`.
fn eval_at(a: &FinAlgebra, e: &[Scalar], poly: &[Scalar], z: &[Scalar]) -> Elem {
    let mut acc = a.zero_vector();
    for c in poly.iter().rev() {
        acc = a.add(&a.mul(&acc, z), &a.scale(c, e));
    }
    acc
}

fn split_finite(a: &FinAlgebra) -> Vec<Elem> {
    let f = a.field();
    let q = f.size().expect("finite field");
    let m = a.dim();
    let columns: Vec<Elem> = (0..m)
        .map(|j| {
            let b = a.basis_vector(j);
            sub(a, &pow(a, &b, q), &b)
        })
        .collect();
    let frob_minus_id = Matrix::from_columns(f, m, &columns).expect("square");
    let fixed: Vec<Elem> = frob_minus_id
        .kernel()
        .into_iter()
        .map(|coeffs| {
            coeffs
                .iter()
                .enumerate()
                .fold(a.zero_vector(), |acc, (j, c)| a.add(&acc, &a.scale(c, &a.basis_vector(j))))
        })
        .collect();
    let points = f.elements().expect("finite field");
    let mut parts = vec![a.unit().to_vec()];
    for y in &fixed {
        let mut next = Vec::new();
        for e in parts {
            let z = a.mul(y, &e);
            let mu = minimal_polynomial(a, &e, &z);
            let roots: Vec<&Scalar> = points.iter().filter(|l| f.is_zero(&horner(f, &mu, l))).collect();
            if roots.len() <= 1 {
                next.push(e);
                continue;
            }
            for l in &roots {
                let mut idem = e.clone();
                for other in roots.iter().filter(|o| *o != l) {
                    let denom = f.inv(&f.sub(l, other)).expect("distinct roots");
                    let factor = a.scale(&denom, &sub(a, &z, &a.scale(other, &e)));
                    idem = a.mul(&idem, &factor);
                }
                next.push(idem);
            }
        }
        parts = next;
    }
    parts
}

fn horner(f: &Field, poly: &[Scalar], x: &Scalar) -> Scalar {
    poly.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}

/// Elements tried when splitting over the rationals: the basis, then points
/// on the moment curve `Σ (j+1)^k b_j`.
fn test_elements(a: &FinAlgebra) -> Vec<Elem> {
    let f = a.field();
    let m = a.dim();
    let mut out: Vec<Elem> = (0..m).map(|j| a.basis_vector(j)).collect();
    for k in 1..=m as u32 {
        out.push((0..m).map(|j| f.from_i64(((j + 1) as i64).pow(k))).collect());
    }
    out
}

fn split_rational(a: &FinAlgebra) -> Vec<Elem> {
    let mut parts = vec![a.unit().to_vec()];
    for y in test_elements(a) {
        let mut next = Vec::new();
        for e in parts {
            let z = a.mul(&y, &e);
            let mu = to_q(&minimal_polynomial(a, &e, &z));
            let powers = coprime_prime_powers(&mu);
            if powers.len() <= 1 {
                next.push(e);
                continue;
            }
            for (k, pk) in powers.iter().enumerate() {
                let others = powers
                    .iter()
                    .enumerate()
                    .filter(|(l, _)| *l != k)
                    .fold(vec![BigRational::one()], |acc, (_, p)| upoly::mul(&acc, p));
                // u = others * (others^{-1} mod pk) is 1 mod pk and 0 mod the rest
                let inv = upoly::inverse_mod(&others, pk);
                let u = upoly::rem(&upoly::mul(&others, &inv), &mu);
                let coeffs: Vec<Scalar> = u.iter().map(|c| Scalar::Rat(c.clone())).collect();
                next.push(eval_at(a, &e, &coeffs, &z));
            }
        }
        parts = next;
    }
    parts
}

fn to_q(p: &[Scalar]) -> Vec<BigRational> {
    p.iter()
        .map(|c| match c {
            Scalar::Rat(r) => r.clone(),
            Scalar::Fin(_) => unreachable!("rational splitting on a finite field"),
        })
        .collect()
}

/// `μ = Π f_i^{m_i}` with distinct irreducible `f_i`; returns the `f_i^{m_i}`.
fn coprime_prime_powers(mu: &[BigRational]) -> Vec<Vec<BigRational>> {
    let d = upoly::derivative(mu);
    let g = upoly::gcd(mu, &d);
    let squarefree = upoly::div_exact(mu, &g);
    let irreducibles = kronecker::factor(&squarefree);
    irreducibles
        .into_iter()
        .map(|fi| {
            let mut power = fi.clone();
            loop {
                let next = upoly::mul(&power, &fi);
                if upoly::rem(mu, &next).is_empty() {
                    power = next;
                } else {
                    return power;
                }
            }
        })
        .collect()
}

/// Dense univariate polynomials over the rationals, low degree first, trimmed.
mod upoly {
    use super::*;

    pub type P = Vec<BigRational>;

    pub fn trim(mut p: P) -> P {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
        p
    }

    pub fn mul(a: &[BigRational], b: &[BigRational]) -> P {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    pub fn sub(a: &[BigRational], b: &[BigRational]) -> P {
        let n = a.len().max(b.len());
        let z = BigRational::zero();
        trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
    }

    pub fn divrem(a: &[BigRational], b: &[BigRational]) -> (P, P) {
        let b = trim(b.to_vec());
        assert!(!b.is_empty(), "division by the zero polynomial");
        let mut r = trim(a.to_vec());
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
        let lead = b.last().unwrap().clone();
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = r.last().unwrap() / &lead;
            for (i, y) in b.iter().enumerate() {
                let t = &c * y;
                r[i + shift] -= t;
            }
            q[shift] = c;
            r = trim(r);
        }
        (trim(q), r)
    }

    pub fn rem(a: &[BigRational], b: &[BigRational]) -> P {
        divrem(a, b).1
    }

    pub fn div_exact(a: &[BigRational], b: &[BigRational]) -> P {
        let (q, r) = divrem(a, b);
        debug_assert!(r.is_empty());
        q
    }

    pub fn monic(p: P) -> P {
        match p.last().cloned() {
            Some(l) => p.into_iter().map(|c| c / &l).collect(),
            None => p,
        }
    }

    pub fn derivative(p: &[BigRational]) -> P {
        trim(
            p.iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn gcd(a: &[BigRational], b: &[BigRational]) -> P {
        let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
        while !y.is_empty() {
            let r = rem(&x, &y);
            x = y;
            y = r;
        }
        monic(x)
    }

    /// `a^{-1} mod m` for coprime `a`, `m`, by the extended Euclidean algorithm.
    pub fn inverse_mod(a: &[BigRational], m: &[BigRational]) -> P {
        let (mut r0, mut r1) = (trim(m.to_vec()), rem(a, m));
        let (mut s0, mut s1): (P, P) = (Vec::new(), vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1);
            let s = sub(&s0, &mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        assert_eq!(r0.len(), 1, "inverse_mod: arguments are not coprime");
        let inv = BigRational::one() / &r0[0];
        rem(&s0.iter().map(|c| c * &inv).collect::<P>(), m)
    }

    pub fn eval(p: &[BigRational], x: &BigRational) -> BigRational {
        p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }
}

/// Factorisation of squarefree rational polynomials into monic irreducibles.
mod kronecker {
    use super::upoly::{self, P};
    use super::*;

    pub fn factor(p: &[BigRational]) -> Vec<P> {
        let p = upoly::monic(upoly::trim(p.to_vec()));
        if p.len() <= 2 {
            return vec![p];
        }
        match find_factor(&p) {
            Some(g) => {
                let h = upoly::div_exact(&p, &g);
                let mut out = factor(&g);
                out.extend(factor(&h));
                out
            }
            None => vec![p],
        }
    }

    fn primitive_integer(p: &[BigRational]) -> Vec<BigInt> {
        let l = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = p.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        ints.into_iter().map(|c| c / &g).collect()
    }

    fn divisors(n: &BigInt) -> Vec<BigInt> {
        let n = n.abs();
        let small = n.to_u64().expect("desk-scale polynomial values");
        let mut out = Vec::new();
        let mut d = 1u64;
        while d * d <= small {
            if small % d == 0 {
                out.push(BigInt::from(d));
                if d * d != small {
                    out.push(BigInt::from(small / d));
                }
            }
            d += 1;
        }
        let neg: Vec<BigInt> = out.iter().map(|d| -d).collect();
        out.extend(neg);
        out
    }

    fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> P {
        let mut out: P = Vec::new();
        for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
            let mut basis: P = vec![BigRational::one()];
            let mut denom = BigRational::one();
            for (j, xj) in xs.iter().enumerate() {
                if i != j {
                    basis = upoly::mul(&basis, &[-xj.clone(), BigRational::one()]);
                    denom *= xi - xj;
                }
            }
            let scaled: P = basis.iter().map(|c| c * yi / &denom).collect();
            let n = out.len().max(scaled.len());
            let z = BigRational::zero();
            out = upoly::trim(
                (0..n)
                    .map(|k| out.get(k).unwrap_or(&z) + scaled.get(k).unwrap_or(&z))
                    .collect(),
            );
        }
        out
    }

    /// A monic factor of degree between 1 and `deg/2`, if any.
    fn find_factor(p: &[BigRational]) -> Option<P> {
        let ints = primitive_integer(p);
        let q: P = ints.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        let n = q.len() - 1;
        let mut points: Vec<BigRational> = Vec::new();
        let mut k: i64 = 0;
        while points.len() <= n / 2 {
            let x = BigRational::from_integer(BigInt::from(k));
            if upoly::eval(&q, &x).is_zero() {
                return Some(vec![-x, BigRational::one()]);
            }
            points.push(x);
            k = if k > 0 { -k } else { -k + 1 };
        }
        for d in 1..=n / 2 {
            let xs = &points[..=d];
            let choices: Vec<Vec<BigInt>> = xs.iter().map(|x| divisors(&upoly::eval(&q, x).to_integer())).collect();
            let mut idx = vec![0usize; d + 1];
            loop {
                let ys: Vec<BigRational> = idx
                    .iter()
                    .zip(&choices)
                    .map(|(&i, c)| BigRational::from_integer(c[i].clone()))
                    .collect();
                let g = interpolate(xs, &ys);
                if g.len() == d + 1 && g.iter().all(|c| c.is_integer()) && upoly::rem(&q, &g).is_empty() {
                    return Some(upoly::monic(g));
                }
                let mut pos = 0;
                loop {
                    if pos == idx.len() {
                        break;
                    }
                    idx[pos] += 1;
                    if idx[pos] < choices[pos].len() {
                        break;
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
                if pos == idx.len() {
                    break;
                }
            }
        }
        None
    }

    #[cfg(test)]
    mod tests {
        use super::*;

        fn p(coeffs: &[i64]) -> P {
            coeffs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect()
        }

        #[test]
        fn factors_small_polynomials() {
            // t^4 - 1 = (t - 1)(t + 1)(t^2 + 1)
            let mut f = factor(&p(&[-1, 0, 0, 0, 1]));
            f.sort_by_key(|g| g.len());
            assert_eq!(f.len(), 3);
            assert_eq!(f[2], p(&[1, 0, 1]));
            // t^4 + 4 = (t^2 + 2t + 2)(t^2 - 2t + 2) has no roots
            assert_eq!(factor(&p(&[4, 0, 0, 0, 1])).len(), 2);
            assert_eq!(factor(&p(&[-2, 0, 1])).len(), 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraPres;
    use crate::poly::Poly;

    fn quotient(field: &Field, rel: &[i64]) -> FinAlgebra {
        let a = AlgebraPres::free(field, &["x"]);
        let x = a.gen(0);
        let mut r = Poly::zero(a.ring());
        for (i, &c) in rel.iter().enumerate() {
            r = &r + &x.pow(i as u32).scale(&field.from_i64(c));
        }
        FinAlgebra::from_pres(&a.with_relation(&r).unwrap()).unwrap()
    }

    fn assert_complete(a: &FinAlgebra, idem: &[Elem]) {
        let f = a.field();
        let mut sum = a.zero_vector();
        for (i, e) in idem.iter().enumerate() {
            assert!(!a.is_zero(e));
            assert_eq!(a.mul(e, e), *e);
            for g in &idem[i + 1..] {
                assert!(a.is_zero(&a.mul(e, g)));
            }
            sum = a.add(&sum, e);
        }
        assert_eq!(sum, a.unit(), "idempotents sum to 1 over {f}");
    }

    #[test]
    fn functions_on_field_split_completely() {
        for q in [2, 3, 4, 5, 8, 9] {
            let f = Field::finite(q).unwrap();
            let a = FinAlgebra::functions_on(&f).unwrap();
            let idem = idempotents(&a);
            assert_eq!(idem.len(), q as usize);
            assert_complete(&a, &idem);
        }
    }

    #[test]
    fn local_rings_have_only_one() {
        let q = Field::rationals();
        assert_eq!(idempotents(&quotient(&q, &[0, 0, 1])), vec![vec![q.one(), q.zero()]]);
        let f3 = Field::prime(3).unwrap();
        assert_eq!(pi0_rank(&quotient(&f3, &[0, 0, 0, 1])), 1);
        // F_2[x]/(x^2+x+1) = F_4 is a field
        assert_eq!(pi0_rank(&quotient(&Field::prime(2).unwrap(), &[1, 1, 1])), 1);
    }

    #[test]
    fn rational_splitting() {
        let q = Field::rationals();
        for (rel, n) in [
            (vec![0, -1, 1], 2),
            (vec![0, -1, 0, 1], 3),
            (vec![-2, 0, 1], 1),
            (vec![-1, 0, 0, 0, 1], 3),
            (vec![0, 0, -1, 0, 1], 3),
        ] {
            let a = quotient(&q, &rel);
            let idem = idempotents(&a);
            assert_eq!(idem.len(), n, "relation {rel:?}");
            assert_complete(&a, &idem);
        }
    }

    #[test]
    fn finite_route_agrees_with_exhaustive_search() {
        let f2 = Field::prime(2).unwrap();
        let f3 = Field::prime(3).unwrap();
        let cases = [
            quotient(&f2, &[0, 1, 0, 1]),
            quotient(&f2, &[1, 0, 0, 0, 1]),
            quotient(&f3, &[0, -1, 0, 0, 1]),
            quotient(&f3, &[1, 0, 1, 0, 1]),
            FinAlgebra::functions_on(&Field::finite(4).unwrap()).unwrap(),
        ];
        for a in &cases {
            let fast = idempotents(a);
            assert_eq!(fast, idempotents_exhaustive(a, 1 << 16).unwrap());
            assert_complete(a, &fast);
        }
    }
}
