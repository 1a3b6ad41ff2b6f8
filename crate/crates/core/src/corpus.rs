//! Named birings, Hopf algebras and plethories used as fixtures.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::algebra::{Algebra, AlgebraPres};
use crate::biring::{scalar_ring, Biring, BiringData, HopfAlgebra};
use crate::compose::{is_biring_isomorphism, unit_biring, Plethory};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::poly::Poly;

pub const NAMES: [&str; 9] = [
    "ga",
    "dual_numbers",
    "alpha_p_ring",
    "fun_plethory",
    "mu_p_ring",
    "witt_cocycle",
    "ghost_witt",
    "alpha_p",
    "mu_p",
];

#[derive(Debug)]
pub enum CorpusObject {
    Hopf(HopfAlgebra),
    Biring(Biring),
    Plethory(Plethory),
}

impl CorpusObject {
    pub fn hopf(&self) -> &HopfAlgebra {
        match self {
            CorpusObject::Hopf(h) => h,
            CorpusObject::Biring(b) => b,
            CorpusObject::Plethory(p) => p.biring(),
        }
    }

    pub fn biring(&self) -> Option<&Biring> {
        match self {
            CorpusObject::Hopf(_) => None,
            CorpusObject::Biring(b) => Some(b),
            CorpusObject::Plethory(p) => Some(p.biring()),
        }
    }

    pub fn plethory(&self) -> Option<&Plethory> {
        match self {
            CorpusObject::Plethory(p) => Some(p),
            _ => None,
        }
    }

    pub fn name(&self) -> &str {
        self.hopf().name()
    }
}

/// Builds a corpus object; `n` is the length for `ghost_witt`.
pub fn corpus_make(name: &str, field: &Field, n: Option<usize>) -> Result<CorpusObject> {
    Ok(match name {
        "ga" => CorpusObject::Plethory(ga(field)?),
        "dual_numbers" => CorpusObject::Biring(dual_numbers(field)?),
        "alpha_p_ring" => CorpusObject::Biring(alpha_p_ring(field)?),
        "fun_plethory" => CorpusObject::Plethory(fun_plethory(field)?),
        "mu_p_ring" => CorpusObject::Biring(mu_p_ring(field)?),
        "witt_cocycle" => CorpusObject::Hopf(witt_cocycle(field)?),
        "ghost_witt" => CorpusObject::Biring(ghost_witt(field, n.unwrap_or(2))?),
        "alpha_p" => CorpusObject::Hopf(alpha_p(field)?),
        "mu_p" => CorpusObject::Hopf(mu_p(field)?),
        other => return Err(Error::BadParameters(format!("unknown corpus object `{other}`"))),
    })
}

/// Parses `name`, `name@F` or `name(n)@F`; the field defaults to `Q` for
/// characteristic-zero objects and `F2` otherwise.
pub fn corpus_parse(spec: &str, field_override: Option<&Field>) -> Result<CorpusObject> {
    let (head, field) = match spec.split_once('@') {
        Some((h, f)) => (h, Some(Field::parse_descriptor(f)?)),
        None => (spec, None),
    };
    let (name, n) = match head.split_once('(') {
        Some((nm, rest)) => {
            let digits = rest
                .strip_suffix(')')
                .ok_or_else(|| Error::BadParameters(format!("malformed corpus name `{spec}`")))?;
            let n = digits
                .parse::<usize>()
                .map_err(|_| Error::BadParameters(format!("malformed corpus parameter `{digits}`")))?;
            (nm, Some(n))
        }
        None => (head, None),
    };
    let field = match (field_override, field) {
        (Some(f), _) => f.clone(),
        (None, Some(f)) => f,
        (None, None) if ["ga", "dual_numbers", "ghost_witt"].contains(&name) => Field::rationals(),
        (None, None) => Field::prime(2)?,
    };
    corpus_make(name, &field, n)
}

fn need_finite(field: &Field, what: &str) -> Result<u64> {
    field
        .size()
        .ok_or_else(|| Error::BadParameters(format!("{what} needs a finite field")))
}

fn need_char_zero(field: &Field, what: &str) -> Result<()> {
    if field.characteristic() != 0 {
        return Err(Error::BadParameters(format!("{what} needs characteristic zero")));
    }
    Ok(())
}

fn graded(a: AlgebraPres, w: Vec<u32>) -> Result<Algebra> {
    Ok(Arc::new(a.with_grading(w)?))
}

fn with_rel(a: AlgebraPres, rel: impl Fn(&AlgebraPres) -> Poly) -> Result<AlgebraPres> {
    let r = rel(&a);
    a.with_relation(&r)
}

/// The plethory `k[e]`: `e` is additive and multiplicative, `β(c)(e) = c`.
pub fn ga(field: &Field) -> Result<Plethory> {
    let data = unit_biring(field).data();
    let carrier = graded((*data.carrier).clone(), vec![1])?;
    let b = Biring::new(BiringData { carrier: carrier.clone(), name: "ga".into(), ..data })?;
    let e = carrier.gen(0);
    Plethory::new(b, vec![vec![e.clone()]], &e)
}

/// `k[e, x]` representing `R ↦ R[ε]/(ε²)`, `e + xε`.
pub fn dual_numbers(field: &Field) -> Result<Biring> {
    let a = graded(AlgebraPres::free(field, &["e", "x"]), vec![1, 1])?;
    let t = a.tensor_power(2);
    let kc = scalar_ring(field);
    let (e1, x1, e2, x2) = (t.gen(0), t.gen(1), t.gen(2), t.gen(3));
    Biring::new(BiringData {
        name: "dual_numbers".into(),
        coadd: vec![&e1 + &e2, &x1 + &x2],
        comul: vec![&e1 * &e2, &(&x1 * &e2) + &(&e1 * &x2)],
        counit_add: vec![field.zero(), field.zero()],
        counit_mul: vec![field.one(), field.zero()],
        antipode: vec![-&a.gen(0), -&a.gen(1)],
        beta: vec![kc.gen(0), kc.zero()],
        carrier: a,
    })
}

/// `k[e]/(e^q - e) = k^k`, with plethysm composition of functions.
pub fn fun_plethory(field: &Field) -> Result<Plethory> {
    let q = need_finite(field, "fun_plethory")?;
    let data = unit_biring(field).data();
    let carrier: Algebra = Arc::new(with_rel((*data.carrier).clone(), |a| &a.gen(0).pow(q as u32) - &a.gen(0))?);
    let b = Biring::new(BiringData { carrier: carrier.clone(), name: format!("fun_plethory@{}", field.descriptor()), ..data })?;
    let e = carrier.gen(0);
    Plethory::new(b, vec![vec![e.clone()]], &e)
}

/// `k[e]/(e^p)` with `e` primitive.
pub fn alpha_p(field: &Field) -> Result<HopfAlgebra> {
    let p = field.characteristic();
    if p == 0 {
        return Err(Error::BadParameters("alpha_p needs positive characteristic".into()));
    }
    let a: Algebra = Arc::new(with_rel(AlgebraPres::free(field, &["e"]), |a| a.gen(0).pow(p as u32))?);
    let t = a.tensor_power(2);
    HopfAlgebra::new("alpha_p", a.clone(), &[&t.gen(0) + &t.gen(1)], vec![field.zero()], &[-&a.gen(0)])
}

/// `k[x]/(x^p - 1)` with `x` grouplike.
pub fn mu_p(field: &Field) -> Result<HopfAlgebra> {
    let p = field.characteristic();
    if p == 0 {
        return Err(Error::BadParameters("mu_p needs positive characteristic".into()));
    }
    let a: Algebra = Arc::new(with_rel(AlgebraPres::free(field, &["x"]), |a| &a.gen(0).pow(p as u32) - &a.one())?);
    let t = a.tensor_power(2);
    HopfAlgebra::new("mu_p", a.clone(), &[&t.gen(0) * &t.gen(1)], vec![field.one()], &[a.gen(0).pow(p as u32 - 1)])
}

/// `δ_a(τ) = 1 - (τ - a)^{q-1}`, the indicator of `τ = a` on `F_q`.
fn indicator(tau: &Poly, a: &Scalar, q: u64) -> Poly {
    let ring = tau.ring().clone();
    let shifted = tau - &Poly::constant(&ring, a.clone());
    &Poly::one(&ring) - &shifted.pow(q as u32 - 1)
}

/// The ring scheme `F_q × α_p` with `(x, y)(z, w) = (xz, xw + yz)`.
pub fn alpha_p_ring(field: &Field) -> Result<Biring> {
    let q = need_finite(field, "alpha_p_ring")?;
    let p = field.characteristic() as u32;
    let a = AlgebraPres::free(field, &["t", "e"]);
    let a = with_rel(a, |a| &a.gen(0).pow(q as u32) - &a.gen(0))?;
    let a: Algebra = Arc::new(with_rel(a, |a| a.gen(1).pow(p))?);
    let c2 = a.tensor_power(2);
    let kc = scalar_ring(field);
    let (t1, e1, t2, e2) = (c2.gen(0), c2.gen(1), c2.gen(2), c2.gen(3));
    Biring::new(BiringData {
        name: format!("alpha_p_ring@{}", field.descriptor()),
        coadd: vec![&t1 + &t2, &e1 + &e2],
        comul: vec![&t1 * &t2, &(&t1 * &e2) + &(&e1 * &t2)],
        counit_add: vec![field.zero(), field.zero()],
        counit_mul: vec![field.one(), field.zero()],
        antipode: vec![-&a.gen(0), -&a.gen(1)],
        beta: vec![kc.gen(0), kc.zero()],
        carrier: a,
    })
}

/// The unitalization of `μ_p` with zero multiplication, over `F_p`:
/// `(x, y)(z, w) = (xz, w^x y^z)`.
pub fn mu_p_ring(field: &Field) -> Result<Biring> {
    let q = need_finite(field, "mu_p_ring")?;
    let p = field.characteristic();
    if q != p {
        return Err(Error::BadParameters("mu_p_ring is defined over a prime field".into()));
    }
    let a = AlgebraPres::free(field, &["t", "x"]);
    let a = with_rel(a, |a| &a.gen(0).pow(p as u32) - &a.gen(0))?;
    let a: Algebra = Arc::new(with_rel(a, |a| &a.gen(1).pow(p as u32) - &a.one())?);
    let c2 = a.tensor_power(2);
    let kc = scalar_ring(field);
    let (t1, x1, t2, x2) = (c2.gen(0), c2.gen(1), c2.gen(2), c2.gen(3));
    let power_by = |base: &Poly, exp_slot: &Poly| -> Poly {
        (0..p).fold(c2.zero(), |acc, k| {
            let ind = indicator(exp_slot, &field.from_i64(k as i64), q);
            &acc + &c2.mul(&ind, &base.pow(k as u32))
        })
    };
    let comul_x = c2.mul(&power_by(&x2, &t1), &power_by(&x1, &t2));
    Biring::new(BiringData {
        name: "mu_p_ring".into(),
        coadd: vec![&t1 + &t2, &x1 * &x2],
        comul: vec![&t1 * &t2, c2.nf(&comul_x)],
        counit_add: vec![field.zero(), field.one()],
        counit_mul: vec![field.one(), field.one()],
        antipode: vec![-&a.gen(0), a.gen(1).pow(p as u32 - 1)],
        beta: vec![kc.gen(0), kc.one()],
        carrier: a,
    })
}

/// Nonunital ring-scheme data over `F_q`: a group scheme `N`, its
/// multiplication on coordinates (`None` for the zero product) and the
/// action of each `a ∈ F_q` (in `field.elements()` order) as an
/// endomorphism on generators.
pub struct Nonunital {
    pub hopf: HopfAlgebra,
    pub mul: Option<Vec<Poly>>,
    pub scalars: Vec<Vec<Poly>>,
}

/// The ring scheme `F_q × N` with `(x, y)(z, w) = (xz, x·w + z·y + y*w)`.
pub fn unitalize(n: &Nonunital, name: &str) -> Result<Biring> {
    let h = &n.hopf;
    let field = h.field().clone();
    let q = field.size().ok_or(Error::InfiniteField)?;
    let elems = field.elements().ok_or(Error::InfiniteField)?;
    if n.scalars.len() != elems.len() {
        return Err(Error::DimensionMismatch { expected: elems.len(), found: n.scalars.len() });
    }
    let na = h.carrier();
    let r = na.ngens();
    let width = r + 1;
    let mut names = vec!["t".to_string()];
    names.extend(na.gen_names().iter().cloned());
    let mut c = AlgebraPres::free_owned(&field, names);
    c = with_rel(c, |a| &a.gen(0).pow(q as u32) - &a.gen(0))?;
    let shift: Vec<usize> = (0..r).map(|i| i + 1).collect();
    for (_, rel) in na.relations() {
        let moved = rel.rename(c.ring(), &shift);
        c = c.with_relation(&moved)?;
    }
    let c: Algebra = Arc::new(c);
    let c2 = c.tensor_power(2);
    // N^{⊗k} → C^{⊗2}, N-slot s to C-slot slots[s]
    let into = |x: &Poly, slots: &[usize], target: &AlgebraPres| -> Poly {
        let map: Vec<usize> = (0..slots.len() * r).map(|v| slots[v / r] * width + 1 + v % r).collect();
        target.nf(&x.rename(target.ring(), &map))
    };
    let t1 = c2.gen(0);
    let t2 = c2.gen(width);
    let scaled = |tau: &Poly, slot: usize| -> Vec<Poly> {
        (0..r)
            .map(|j| {
                elems.iter().zip(&n.scalars).fold(c2.zero(), |acc, (a, act)| {
                    &acc + &c2.mul(&indicator(tau, a, q), &into(&act[j], &[slot], &c2))
                })
            })
            .collect()
    };
    let xw = scaled(&t1, 1);
    let zy = scaled(&t2, 0);
    let yw: Vec<Poly> = match &n.mul {
        Some(m) => m.iter().map(|p| into(p, &[0, 1], &c2)).collect(),
        None => h.counit().iter().map(|e| c2.constant(e.clone())).collect(),
    };
    let images: Vec<Poly> = xw.into_iter().chain(zy).chain(yw).collect();
    let mut comul = vec![&t1 * &t2];
    let mut coadd = vec![&t1 + &t2];
    for j in 0..r {
        let d3 = h.iterated_coadd(&na.gen(j), 3)?;
        comul.push(c2.substitute(&d3, &images));
        coadd.push(into(&h.coadd()[j], &[0, 1], &c2));
    }
    let kc = scalar_ring(&field);
    let with_t = |t: Scalar| -> Vec<Scalar> { std::iter::once(t).chain(h.counit().iter().cloned()).collect() };
    let mut antipode = vec![-&c.gen(0)];
    antipode.extend(h.antipode().iter().map(|s| s.rename(c.ring(), &shift)));
    let mut beta = vec![kc.gen(0)];
    beta.extend(h.counit().iter().map(|e| kc.constant(e.clone())));
    Biring::new(BiringData {
        name: name.to_string(),
        carrier: c,
        coadd,
        comul,
        counit_add: with_t(field.zero()),
        counit_mul: with_t(field.one()),
        antipode,
        beta,
    })
}

/// `Δ(h) = h⊗1 + 1⊗h + ((x⊗1 + 1⊗x)^p - x^p⊗1 - 1⊗x^p)/p` on `k[x, h]`,
/// degrees `1` and `p`.
pub fn witt_cocycle(field: &Field) -> Result<HopfAlgebra> {
    let p = field.characteristic();
    if p == 0 {
        return Err(Error::BadParameters("witt_cocycle needs positive characteristic".into()));
    }
    let a = graded(AlgebraPres::free(field, &["x", "h"]), vec![1, p as u32])?;
    let t = a.tensor_power(2);
    let cocycle = |x: &Poly, y: &Poly, ring: &AlgebraPres| -> Poly {
        let mut binom = BigInt::from(1);
        let mut f = ring.zero();
        for i in 1..p {
            binom = binom * BigInt::from(p - i + 1) / BigInt::from(i);
            let (coef, rem) = binom.div_rem(&BigInt::from(p));
            debug_assert_eq!(rem, BigInt::from(0));
            f = &f + &(&x.pow(i as u32) * &y.pow((p - i) as u32)).scale(&field.from_bigint(&coef));
        }
        f
    };
    let (x1, h1, x2, h2) = (t.gen(0), t.gen(1), t.gen(2), t.gen(3));
    let dh = &(&h1 + &h2) + &cocycle(&x1, &x2, &t);
    let x = a.gen(0);
    let sh = &(-&a.gen(1)) - &cocycle(&(-&x), &x, &a);
    HopfAlgebra::new("witt_cocycle", a.clone(), &[&x1 + &x2, dh], vec![field.zero(), field.zero()], &[-&x, a.nf(&sh)])
}

/// Ghost coordinates of the Witt vectors of length `n` (`w_d` in degree `d`):
/// additive primitives, multiplicative grouplikes.
pub fn ghost_witt(field: &Field, n: usize) -> Result<Biring> {
    need_char_zero(field, "ghost_witt")?;
    if n == 0 {
        return Err(Error::BadParameters("ghost_witt needs n ≥ 1".into()));
    }
    let names: Vec<String> = (1..=n).map(|d| format!("w{d}")).collect();
    let a = graded(AlgebraPres::free_owned(field, names), (1..=n as u32).collect())?;
    let t = a.tensor_power(2);
    let kc = scalar_ring(field);
    Biring::new(BiringData {
        name: format!("ghost_witt({n})"),
        coadd: (0..n).map(|i| &t.gen(i) + &t.gen(n + i)).collect(),
        comul: (0..n).map(|i| &t.gen(i) * &t.gen(n + i)).collect(),
        counit_add: vec![field.zero(); n],
        counit_mul: vec![field.one(); n],
        antipode: (0..n).map(|i| -&a.gen(i)).collect(),
        beta: vec![kc.gen(0); n],
        carrier: a,
    })
}

/// `Σ_{e | d} e·x_e^{d/e}` in the ring of `xs`.
fn ghost(xs: &[Poly], d: usize, zero: &Poly) -> Poly {
    let f = zero.field().clone();
    (1..=d)
        .filter(|e| d % e == 0)
        .fold(zero.clone(), |acc, e| &acc + &xs[e - 1].pow((d / e) as u32).scale(&f.from_i64(e as i64)))
}

/// Solves `ghost_d(x) = targets[d]` for `x_1, …, x_n` by recursion on `d`.
fn solve_ghost(targets: &[Poly], zero: &Poly) -> Vec<Poly> {
    let f = zero.field().clone();
    let mut xs: Vec<Poly> = Vec::new();
    for d in 1..=targets.len() {
        let lower = (1..d)
            .filter(|e| d % e == 0)
            .fold(zero.clone(), |acc, e| &acc + &xs[e - 1].pow((d / e) as u32).scale(&f.from_i64(e as i64)));
        let inv = f.inv(&f.from_i64(d as i64)).expect("characteristic zero");
        xs.push((&targets[d - 1] - &lower).scale(&inv));
    }
    xs
}

/// The Witt vectors of length `n` in Witt coordinates, derived from the
/// ghost equations over `Q`.
pub fn witt_biring(n: usize) -> Result<Biring> {
    let field = Field::rationals();
    let names: Vec<String> = (1..=n).map(|d| format!("x{d}")).collect();
    let a = graded(AlgebraPres::free_owned(&field, names), (1..=n as u32).collect())?;
    let t = a.tensor_power(2);
    let kc = scalar_ring(&field);
    let xs: Vec<Poly> = (0..n).map(|i| t.gen(i)).collect();
    let ys: Vec<Poly> = (0..n).map(|i| t.gen(n + i)).collect();
    let own: Vec<Poly> = (0..n).map(|i| a.gen(i)).collect();
    let gx: Vec<Poly> = (1..=n).map(|d| ghost(&xs, d, &t.zero())).collect();
    let gy: Vec<Poly> = (1..=n).map(|d| ghost(&ys, d, &t.zero())).collect();
    let sums: Vec<Poly> = gx.iter().zip(&gy).map(|(u, v)| u + v).collect();
    let prods: Vec<Poly> = gx.iter().zip(&gy).map(|(u, v)| u * v).collect();
    let negs: Vec<Poly> = (1..=n).map(|d| -&ghost(&own, d, &a.zero())).collect();
    let point = AlgebraPres::point(&field);
    let ones: Vec<Poly> = vec![point.one(); n];
    let constant_c: Vec<Poly> = vec![kc.gen(0); n];
    let scalars = |ps: Vec<Poly>| -> Vec<Scalar> { ps.iter().map(|p| p.as_constant().unwrap_or_else(|| field.zero())).collect() };
    Biring::new(BiringData {
        name: format!("witt({n})"),
        coadd: solve_ghost(&sums, &t.zero()),
        comul: solve_ghost(&prods, &t.zero()),
        counit_add: vec![field.zero(); n],
        counit_mul: scalars(solve_ghost(&ones, &point.zero())),
        antipode: solve_ghost(&negs, &a.zero()),
        beta: solve_ghost(&constant_c, &kc.zero()),
        carrier: a,
    })
}

/// Whether the ghost map `w_d ↦ Σ_{e|d} e·x_e^{d/e}` is an isomorphism of
/// birings from `ghost_witt(n)` to the independently derived Witt biring.
pub fn ghost_witt_oracle(n: usize) -> Result<bool> {
    if !(1..=3).contains(&n) {
        return Err(Error::BadParameters("the oracle supports 1 ≤ n ≤ 3".into()));
    }
    let q = Field::rationals();
    let g = ghost_witt(&q, n)?;
    let w = witt_biring(n)?;
    let xs: Vec<Poly> = (0..n).map(|i| w.carrier().gen(i)).collect();
    let fwd: Vec<Poly> = (1..=n).map(|d| ghost(&xs, d, &w.carrier().zero())).collect();
    let ws: Vec<Poly> = (0..n).map(|i| g.carrier().gen(i)).collect();
    let bwd = solve_ghost(&ws, &g.carrier().zero());
    is_biring_isomorphism(&g, &w, fwd, bwd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_poly;

    #[test]
    fn every_object_builds() {
        let q = Field::rationals();
        let f2 = Field::prime(2).unwrap();
        for name in NAMES {
            let field = if ["ga", "dual_numbers", "ghost_witt"].contains(&name) { &q } else { &f2 };
            let o = corpus_make(name, field, None).unwrap();
            assert!(o.hopf().check().passed(), "{name}");
            if let Some(b) = o.biring() {
                assert!(b.check().passed(), "{name}");
            }
        }
        assert!(matches!(corpus_make("nope", &q, None), Err(Error::BadParameters(_))));
        assert!(matches!(corpus_make("alpha_p_ring", &q, None), Err(Error::BadParameters(_))));
    }

    #[test]
    fn witt_cocycle_over_f2() {
        let h = witt_cocycle(&Field::prime(2).unwrap()).unwrap();
        assert_eq!(h.coadd()[1].to_string(), "x(1)*x(2) + h(1) + h(2)");
        let h3 = witt_cocycle(&Field::prime(3).unwrap()).unwrap();
        let d = h3.coadd()[1].clone();
        let t = h3.tensor2();
        assert_eq!(d, parse_poly(t.ring(), "h(1) + h(2) + x(1)^2*x(2) + x(1)*x(2)^2").unwrap());
    }

    #[test]
    fn unitalization_recovers_the_explicit_ring_schemes() {
        for q in [2u64, 3, 4] {
            let f = Field::finite(q).unwrap();
            let alpha = alpha_p(&f).unwrap();
            let a = alpha.carrier().clone();
            let scalars = f.elements().unwrap().iter().map(|c| vec![a.gen(0).scale(c)]).collect();
            let u = unitalize(&Nonunital { hopf: alpha, mul: None, scalars }, "u").unwrap();
            let explicit = alpha_p_ring(&f).unwrap();
            assert_eq!(u.comul(), explicit.comul(), "F{q}");
            assert_eq!(u.coadd(), explicit.coadd());
        }
        for p in [2u64, 3] {
            let f = Field::prime(p).unwrap();
            let mu = mu_p(&f).unwrap();
            let a = mu.carrier().clone();
            let scalars = (0..p).map(|k| vec![a.gen(0).pow(k as u32)]).collect();
            let u = unitalize(&Nonunital { hopf: mu, mul: None, scalars }, "u").unwrap();
            assert_eq!(u.comul(), mu_p_ring(&f).unwrap().comul(), "F{p}");
        }
    }

    #[test]
    fn constant_ring_scheme() {
        let f2 = Field::prime(2).unwrap();
        let zero = HopfAlgebra::new("0", Arc::new(AlgebraPres::point(&f2)), &[], vec![], &[]).unwrap();
        let u = unitalize(&Nonunital { hopf: zero, mul: None, scalars: vec![vec![], vec![]] }, "F2").unwrap();
        assert_eq!(u.pi0_rank().unwrap(), 2);
        let renamed = u.comul()[0].to_string().replace('t', "e");
        assert_eq!(renamed, fun_plethory(&f2).unwrap().biring().comul()[0].to_string());
    }

    #[test]
    fn identity_components() {
        for p in [2u64, 3] {
            let f = Field::prime(p).unwrap();
            assert_eq!(mu_p_ring(&f).unwrap().grouplikes().unwrap().len(), p as usize);
            assert_eq!(alpha_p_ring(&f).unwrap().grouplikes().unwrap().len(), 1);
            assert!(alpha_p(&f).unwrap().is_conilpotent(p as u32).unwrap());
            assert!(!mu_p(&f).unwrap().is_conilpotent(p as u32).unwrap());
        }
        for q in [2u64, 3, 4] {
            let f = Field::finite(q).unwrap();
            assert_eq!(fun_plethory(&f).unwrap().biring().pi0_rank().unwrap(), q as usize);
            assert_eq!(alpha_p_ring(&f).unwrap().pi0_rank().unwrap(), q as usize);
        }
    }

    #[test]
    fn ghost_oracle() {
        for n in 1..=3 {
            assert!(ghost_witt_oracle(n).unwrap(), "n = {n}");
        }
        let w = witt_biring(2).unwrap();
        let t = w.tensor2();
        assert_eq!(w.coadd()[1], parse_poly(t.ring(), "x2(1) + x2(2) - x1(1)*x1(2)").unwrap());
    }

    #[test]
    fn parse_names() {
        assert_eq!(corpus_parse("ga@Q", None).unwrap().name(), "ga");
        assert_eq!(corpus_parse("ghost_witt(3)", None).unwrap().name(), "ghost_witt(3)");
        assert!(corpus_parse("fun_plethory@F3", None).unwrap().plethory().is_some());
        assert!(corpus_parse("ghost_witt(x)", None).is_err());
    }
}
