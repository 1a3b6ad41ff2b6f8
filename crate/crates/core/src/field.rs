//! Exact base fields: the rationals, prime fields and small extensions of
//! prime fields given by a monic irreducible minimal polynomial.
//!
//! Extension elements are encoded as integers in base `p`: the digit of
//! weight `p^i` is the coefficient of `a^i`, where `a` is the distinguished
//! generator (a root of the minimal polynomial).

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest extension degree accepted by [`Field::extension`].
pub const MAX_EXTENSION_DEGREE: u32 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rat(BigRational),
    Fin(u64),
}

#[derive(Debug, PartialEq, Eq, Hash)]
enum Kind {
    Rationals,
    Prime(u64),
    Extension {
        p: u64,
        n: u32,
        /// Monic minimal polynomial, coefficients from degree 0 to degree n.
        minpoly: Vec<u64>,
        gen_name: String,
    },
}

/// A field descriptor. Cheap to clone.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Field(Arc<Kind>);

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^n` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while q % p != 0 {
        p += 1;
    }
    let mut n = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        n += 1;
    }
    (r == 1).then_some((p, n))
}

// Dense polynomial helpers over F_p (coefficients low to high).
fn fp_trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

fn fp_inv(a: u64, p: u64) -> u64 {
    let (g, x, _) = ext_gcd(a as i128, p as i128);
    debug_assert_eq!(g, 1);
    x.rem_euclid(p as i128) as u64
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Remainder of `a` modulo `b` over F_p; `b` must be nonzero.
fn fp_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = fp_inv(b[db], p);
    while r.len() > db && !(r.len() == 1 && r[0] == 0) {
        let shift = r.len() - 1 - db;
        let c = r[r.len() - 1] * lead_inv % p;
        for (i, &bc) in b.iter().enumerate() {
            let idx = shift + i;
            r[idx] = (r[idx] + p - c * bc % p) % p;
        }
        fp_trim(&mut r);
        if r.len() - 1 < db {
            break;
        }
    }
    r
}

/// Irreducibility of a monic polynomial of degree `n <= 4` over F_p, by trial
/// division with every monic polynomial of degree `1..=n/2`.
fn fp_irreducible(f: &[u64], p: u64) -> bool {
    let n = f.len() - 1;
    for d in 1..=n / 2 {
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                g.push(c % p);
                c /= p;
            }
            g.push(1);
            let r = fp_rem(f, &g, p);
            if r.iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

impl Field {
    pub fn rationals() -> Self {
        Field(Arc::new(Kind::Rationals))
    }

    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        Ok(Field(Arc::new(Kind::Prime(p))))
    }

    /// `F_p[a]/(minpoly)`; `minpoly` is monic, coefficients low to high.
    pub fn extension(p: u64, minpoly: &[u64], gen_name: &str) -> Result<Self> {
        if !is_prime(p) || p > u16::MAX as u64 {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        let n = minpoly.len().saturating_sub(1) as u32;
        if n == 0 || n > MAX_EXTENSION_DEGREE {
            return Err(Error::BadFieldDescriptor(format!(
                "extension degree {n} outside 1..={MAX_EXTENSION_DEGREE}"
            )));
        }
        let f: Vec<u64> = minpoly.iter().map(|c| c % p).collect();
        if *f.last().unwrap() != 1 {
            return Err(Error::BadFieldDescriptor("minimal polynomial must be monic".into()));
        }
        if !fp_irreducible(&f, p) {
            return Err(Error::ReduciblePolynomial(format_fp_poly(&f, gen_name)));
        }
        Ok(Field(Arc::new(Kind::Extension {
            p,
            n,
            minpoly: f,
            gen_name: gen_name.to_string(),
        })))
    }

    /// `F_q` for a prime power `q`, using the first monic irreducible
    /// polynomial in lexicographic coefficient order when `q` is not prime.
    pub fn finite(q: u64) -> Result<Self> {
        let (p, n) = prime_power(q).ok_or(Error::NonPrimeCharacteristic(q))?;
        if n == 1 {
            return Field::prime(p);
        }
        if n > MAX_EXTENSION_DEGREE {
            return Err(Error::BadFieldDescriptor(format!("F{q}: degree {n} too large")));
        }
        for code in 0..p.pow(n) {
            let mut f = Vec::with_capacity(n as usize + 1);
            let mut c = code;
            for _ in 0..n {
                f.push(c % p);
                c /= p;
            }
            f.push(1);
            if fp_irreducible(&f, p) {
                return Field::extension(p, &f, "a");
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    /// Parses `Q`, `F<q>` or `F<p>[a]/(<minpoly in a>)`.
    pub fn parse_descriptor(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::BadFieldDescriptor(s.to_string());
        if s == "Q" {
            return Ok(Field::rationals());
        }
        let rest = s.strip_prefix('F').ok_or_else(bad)?;
        if let Some(open) = rest.find('[') {
            let p: u64 = rest[..open].parse().map_err(|_| bad())?;
            let close = rest.find(']').ok_or_else(bad)?;
            let name = rest[open + 1..close].trim();
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphabetic()) {
                return Err(bad());
            }
            let tail = rest[close + 1..].trim();
            let inner = tail
                .strip_prefix("/(")
                .and_then(|t| t.strip_suffix(')'))
                .ok_or_else(bad)?;
            let coeffs = parse_fp_poly(inner, name, p).ok_or_else(bad)?;
            return Field::extension(p, &coeffs, name);
        }
        let q: u64 = rest.parse().map_err(|_| bad())?;
        Field::finite(q)
    }

    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            Kind::Rationals => 0,
            Kind::Prime(p) => *p,
            Kind::Extension { p, .. } => *p,
        }
    }

    /// Degree over the prime field (1 for ℚ and prime fields).
    pub fn degree(&self) -> u32 {
        match &*self.0 {
            Kind::Extension { n, .. } => *n,
            _ => 1,
        }
    }

    /// Number of elements, `None` for ℚ.
    pub fn size(&self) -> Option<u64> {
        match &*self.0 {
            Kind::Rationals => None,
            Kind::Prime(p) => Some(*p),
            Kind::Extension { p, n, .. } => Some(p.pow(*n)),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.size().is_some()
    }

    pub fn descriptor(&self) -> String {
        match &*self.0 {
            Kind::Rationals => "Q".into(),
            Kind::Prime(p) => format!("F{p}"),
            Kind::Extension {
                p,
                minpoly,
                gen_name,
                ..
            } => format!("F{p}[{gen_name}]/({})", format_fp_poly(minpoly, gen_name)),
        }
    }

    pub fn zero(&self) -> Scalar {
        match &*self.0 {
            Kind::Rationals => Scalar::Rat(BigRational::zero()),
            _ => Scalar::Fin(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match &*self.0 {
            Kind::Rationals => Scalar::Rat(BigRational::one()),
            _ => Scalar::Fin(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match &*self.0 {
            Kind::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            _ => {
                let p = self.characteristic() as i64;
                Scalar::Fin(n.rem_euclid(p) as u64)
            }
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match &*self.0 {
            Kind::Rationals => Scalar::Rat(BigRational::from_integer(n.clone())),
            _ => {
                let p = BigInt::from(self.characteristic());
                Scalar::Fin(n.mod_floor(&p).to_u64().unwrap())
            }
        }
    }

    /// Image of a rational number; fails when the denominator vanishes mod p.
    pub fn from_rational(&self, r: &BigRational) -> Result<Scalar> {
        match &*self.0 {
            Kind::Rationals => Ok(Scalar::Rat(r.clone())),
            _ => {
                let num = self.from_bigint(r.numer());
                let den = self.from_bigint(r.denom());
                self.div(&num, &den)
            }
        }
    }

    /// The distinguished generator of an extension field.
    pub fn generator(&self) -> Option<Scalar> {
        match &*self.0 {
            Kind::Extension { p, n, minpoly, .. } => {
                if *n == 1 {
                    Some(Scalar::Fin((p - minpoly[0]) % p))
                } else {
                    Some(Scalar::Fin(*p))
                }
            }
            _ => None,
        }
    }

    pub fn generator_name(&self) -> Option<&str> {
        match &*self.0 {
            Kind::Extension { gen_name, .. } => Some(gen_name),
            _ => None,
        }
    }

    /// All elements of a finite field in encoding order.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        self.size().map(|q| (0..q).map(Scalar::Fin).collect())
    }

    fn digits(&self, x: u64) -> Vec<u64> {
        let (p, n) = (self.characteristic(), self.degree());
        let mut d = Vec::with_capacity(n as usize);
        let mut x = x;
        for _ in 0..n {
            d.push(x % p);
            x /= p;
        }
        d
    }

    fn undigits(&self, d: &[u64]) -> u64 {
        let p = self.characteristic();
        d.iter().rev().fold(0, |acc, &c| acc * p + c)
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fin(x) => *x == 0,
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (&*self.0, a, b) {
            (Kind::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (Kind::Prime(p), Scalar::Fin(x), Scalar::Fin(y)) => Scalar::Fin((x + y) % p),
            (Kind::Extension { p, .. }, Scalar::Fin(x), Scalar::Fin(y)) => {
                let (dx, dy) = (self.digits(*x), self.digits(*y));
                let d: Vec<u64> = dx.iter().zip(&dy).map(|(u, v)| (u + v) % p).collect();
                Scalar::Fin(self.undigits(&d))
            }
            _ => panic!("scalar does not belong to field {}", self.descriptor()),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (&*self.0, a) {
            (Kind::Rationals, Scalar::Rat(x)) => Scalar::Rat(-x),
            (Kind::Prime(p), Scalar::Fin(x)) => Scalar::Fin((p - x) % p),
            (Kind::Extension { p, .. }, Scalar::Fin(x)) => {
                let d: Vec<u64> = self.digits(*x).iter().map(|u| (p - u) % p).collect();
                Scalar::Fin(self.undigits(&d))
            }
            _ => panic!("scalar does not belong to field {}", self.descriptor()),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (&*self.0, a, b) {
            (Kind::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (Kind::Prime(p), Scalar::Fin(x), Scalar::Fin(y)) => Scalar::Fin(x * y % p),
            (Kind::Extension { p, n, minpoly, .. }, Scalar::Fin(x), Scalar::Fin(y)) => {
                let (dx, dy) = (self.digits(*x), self.digits(*y));
                let n = *n as usize;
                let mut prod = vec![0u64; 2 * n - 1];
                for (i, u) in dx.iter().enumerate() {
                    for (j, v) in dy.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + u * v) % p;
                    }
                }
                let mut r = fp_rem(&prod, minpoly, *p);
                r.resize(n, 0);
                Scalar::Fin(self.undigits(&r))
            }
            _ => panic!("scalar does not belong to field {}", self.descriptor()),
        }
    }

    pub fn pow(&self, a: &Scalar, mut e: u64) -> Scalar {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match (&*self.0, a) {
            (Kind::Rationals, Scalar::Rat(x)) => Scalar::Rat(x.recip()),
            (Kind::Prime(p), Scalar::Fin(x)) => Scalar::Fin(fp_inv(*x, *p)),
            _ => self.pow(a, self.size().unwrap() - 2),
        })
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// The absolute Frobenius `c ↦ c^p`.
    pub fn frob(&self, c: &Scalar) -> Result<Scalar> {
        match self.characteristic() {
            0 => Err(Error::CharZeroField),
            p => Ok(self.pow(c, p)),
        }
    }

    /// Inverse of the Frobenius: `c^(p^(n-1))` on `F_{p^n}`.
    pub fn frob_inv(&self, c: &Scalar) -> Result<Scalar> {
        let p = self.characteristic();
        if p == 0 {
            return Err(Error::CharZeroField);
        }
        let mut x = c.clone();
        for _ in 1..self.degree() {
            x = self.pow(&x, p);
        }
        Ok(x)
    }

    /// Integer value of a prime-field element (the representative in `0..p`).
    pub fn as_integer(&self, a: &Scalar) -> Option<BigInt> {
        match (&*self.0, a) {
            (Kind::Rationals, Scalar::Rat(r)) if r.is_integer() => Some(r.to_integer()),
            (Kind::Prime(_), Scalar::Fin(x)) => Some(BigInt::from(*x)),
            (Kind::Extension { p, .. }, Scalar::Fin(x)) if *x < *p => Some(BigInt::from(*x)),
            _ => None,
        }
    }

    pub fn is_negative_literal(&self, a: &Scalar) -> bool {
        matches!(a, Scalar::Rat(r) if r.is_negative())
    }

    /// Whether the printed form of `a` needs parentheses as a coefficient.
    pub fn is_compound(&self, a: &Scalar) -> bool {
        self.format(a).contains(['+', '/'])
    }

    pub fn format(&self, a: &Scalar) -> String {
        match (&*self.0, a) {
            (Kind::Rationals, Scalar::Rat(r)) => {
                if r.is_integer() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            (Kind::Prime(_), Scalar::Fin(x)) => x.to_string(),
            (Kind::Extension { gen_name, .. }, Scalar::Fin(x)) => {
                format_fp_poly(&self.digits(*x), gen_name)
            }
            _ => "<foreign scalar>".into(),
        }
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.descriptor())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

fn format_fp_poly(coeffs: &[u64], var: &str) -> String {
    let mut parts = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        parts.push(match (c, i) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}*{mono}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

/// Parses sums of terms `c`, `c*a^k`, `a^k`, `a` over F_p.
fn parse_fp_poly(s: &str, var: &str, p: u64) -> Option<Vec<u64>> {
    let mut coeffs = vec![0u64; 8];
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    for term in s.split('+') {
        let (c, mono) = match term.split_once('*') {
            Some((c, m)) => (c.parse::<u64>().ok()?, m),
            None if term.starts_with(var) => (1, term),
            None => (term.parse::<u64>().ok()?, ""),
        };
        let deg = if mono.is_empty() {
            0
        } else if mono == var {
            1
        } else {
            mono.strip_prefix(var)?.strip_prefix('^')?.parse::<usize>().ok()?
        };
        if deg >= coeffs.len() {
            return None;
        }
        coeffs[deg] = (coeffs[deg] + c) % p;
    }
    fp_trim(&mut coeffs);
    Some(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_and_prime_fields() {
        let q = Field::rationals();
        assert_eq!(q.characteristic(), 0);
        assert_eq!(q.size(), None);
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.characteristic(), 5);
        assert_eq!(f5.size(), Some(5));
        assert_eq!(Field::prime(6), Err(Error::NonPrimeCharacteristic(6)));
    }

    #[test]
    fn f4_from_t2_t_1() {
        let f4 = Field::extension(2, &[1, 1, 1], "g").unwrap();
        assert_eq!(f4.size(), Some(4));
        let g = f4.generator().unwrap();
        // g^2 = g + 1
        let g2 = f4.mul(&g, &g);
        assert_eq!(g2, f4.add(&g, &f4.one()));
        assert_eq!(f4.frob(&g).unwrap(), g2);
        assert_eq!(f4.format(&g2), "g+1");
    }

    #[test]
    fn reducible_minpoly_rejected() {
        // t^2 + 1 = (t + 1)^2 over F_2
        assert!(matches!(
            Field::extension(2, &[1, 0, 1], "t"),
            Err(Error::ReduciblePolynomial(_))
        ));
        // t^4 + t^2 + 1 = (t^2 + t + 1)^2 has no roots but is reducible
        assert!(matches!(
            Field::extension(2, &[1, 0, 1, 0, 1], "t"),
            Err(Error::ReduciblePolynomial(_))
        ));
    }

    #[test]
    fn frob_inverse_is_identity_everywhere() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49, 81, 121, 125, 169, 625, 2401] {
            let f = Field::finite(q).unwrap();
            for c in f.elements().unwrap() {
                let fc = f.frob(&c).unwrap();
                assert_eq!(f.frob_inv(&fc).unwrap(), c, "F{q}");
            }
        }
    }

    #[test]
    fn frob_on_f2_and_char_zero() {
        let f2 = Field::prime(2).unwrap();
        assert_eq!(f2.frob(&f2.one()).unwrap(), f2.one());
        assert_eq!(Field::rationals().frob(&Field::rationals().one()), Err(Error::CharZeroField));
    }

    #[test]
    fn inverses_in_extensions() {
        let f9 = Field::finite(9).unwrap();
        for c in f9.elements().unwrap().into_iter().skip(1) {
            let i = f9.inv(&c).unwrap();
            assert_eq!(f9.mul(&c, &i), f9.one());
        }
    }

    #[test]
    fn descriptor_parsing() {
        assert_eq!(Field::parse_descriptor("Q").unwrap(), Field::rationals());
        assert_eq!(Field::parse_descriptor("F7").unwrap().size(), Some(7));
        let f4 = Field::parse_descriptor("F2[t]/(t^2+t+1)").unwrap();
        assert_eq!(f4.size(), Some(4));
        assert_eq!(Field::parse_descriptor(&f4.descriptor()).unwrap(), f4);
        assert_eq!(Field::parse_descriptor("F4").unwrap().size(), Some(4));
        assert!(Field::parse_descriptor("F6").is_err());
        assert!(Field::parse_descriptor("R").is_err());
    }
}
