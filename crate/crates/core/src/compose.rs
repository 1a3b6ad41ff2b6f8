//! The composition product `A ⊙ R`, plethories and their actions.
//!
//! Every computation goes through one engine: for a biring `A` and a ring
//! `T`, the algebra maps `A → T` form a ring, with sum and product taken
//! through `Δ⁺` and `Δ×` and scalars through `β`. An element `r` of a
//! polynomial ring then acts on `A` by evaluating `r` in that ring.

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use crate::algebra::{Algebra, AlgebraMap, AlgebraPres, FinAlgebra, Rule};
use crate::biring::{Biring, BiringData};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::poly::{Monomial, Poly};

/// A commutative ring in which polynomials can be evaluated.
pub trait Target {
    type Elem: Clone + PartialEq + std::fmt::Debug;
    fn field(&self) -> &Field;
    fn constant(&self, c: &Scalar) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn eval(&self, p: &Poly, images: &[Self::Elem]) -> Self::Elem;
}

impl Target for AlgebraPres {
    type Elem = Poly;
    fn field(&self) -> &Field {
        AlgebraPres::field(self)
    }
    fn constant(&self, c: &Scalar) -> Poly {
        AlgebraPres::constant(self, c.clone())
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a + b
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        AlgebraPres::mul(self, a, b)
    }
    fn eval(&self, p: &Poly, images: &[Poly]) -> Poly {
        self.substitute(p, images)
    }
}

impl Target for FinAlgebra {
    type Elem = Vec<Scalar>;
    fn field(&self) -> &Field {
        FinAlgebra::field(self)
    }
    fn constant(&self, c: &Scalar) -> Vec<Scalar> {
        self.scale(c, self.unit())
    }
    fn add(&self, a: &Vec<Scalar>, b: &Vec<Scalar>) -> Vec<Scalar> {
        FinAlgebra::add(self, a, b)
    }
    fn mul(&self, a: &Vec<Scalar>, b: &Vec<Scalar>) -> Vec<Scalar> {
        FinAlgebra::mul(self, a, b)
    }
    fn eval(&self, p: &Poly, images: &[Vec<Scalar>]) -> Vec<Scalar> {
        FinAlgebra::eval(self, p, images)
    }
}

/// An algebra map `A → T`, by its images of the generators of `A`.
pub type Point<T> = Vec<<T as Target>::Elem>;

/// The ring of algebra maps `A → T` induced by the coring structure of `A`.
pub struct PointRing<'a, T: Target> {
    pub biring: &'a Biring,
    pub target: &'a T,
}

impl<'a, T: Target> PointRing<'a, T> {
    pub fn new(biring: &'a Biring, target: &'a T) -> Self {
        PointRing { biring, target }
    }

    fn consts(&self, cs: &[Scalar]) -> Point<T> {
        cs.iter().map(|c| self.target.constant(c)).collect()
    }

    pub fn zero(&self) -> Point<T> {
        self.consts(self.biring.counit())
    }

    pub fn one(&self) -> Point<T> {
        self.consts(self.biring.counit_mul())
    }

    pub fn constant(&self, c: &Scalar) -> Point<T> {
        self.consts(&self.biring.beta_values(c))
    }

    fn through(&self, maps: &[Poly], f: &Point<T>, g: &Point<T>) -> Point<T> {
        let both: Vec<T::Elem> = f.iter().chain(g).cloned().collect();
        maps.iter().map(|d| self.target.eval(d, &both)).collect()
    }

    pub fn add(&self, f: &Point<T>, g: &Point<T>) -> Point<T> {
        self.through(self.biring.coadd(), f, g)
    }

    pub fn mul(&self, f: &Point<T>, g: &Point<T>) -> Point<T> {
        self.through(self.biring.comul(), f, g)
    }

    /// `S∘f`, the additive inverse.
    pub fn neg(&self, f: &Point<T>) -> Point<T> {
        self.biring.antipode().iter().map(|s| self.target.eval(s, f)).collect()
    }

    fn pow(&self, f: &Point<T>, mut e: u32) -> Point<T> {
        let mut base = f.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Evaluates `p` with variable `v` sent to `images[v]`.
    pub fn eval(&self, p: &Poly, images: &[Point<T>]) -> Point<T> {
        let f = self.target.field();
        let mut sum: Option<Point<T>> = None;
        for (m, c) in p.terms() {
            let mut term: Option<Point<T>> = (!f.is_one(c)).then(|| self.constant(c));
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let x = self.pow(&images[v], e);
                term = Some(match term {
                    None => x,
                    Some(t) => self.mul(&t, &x),
                });
            }
            let term = term.unwrap_or_else(|| self.one());
            sum = Some(match sum {
                None => term,
                Some(s) => self.add(&s, &term),
            });
        }
        sum.unwrap_or_else(|| self.zero())
    }

    /// `f(x)` for `x ∈ A`.
    pub fn apply(&self, f: &Point<T>, x: &Poly) -> T::Elem {
        self.target.eval(x, f)
    }
}

/// The polynomial biring `k[e]` with `e` both additive and multiplicative
/// identity of the ring of points.
pub fn unit_biring(field: &Field) -> Biring {
    let a: Algebra = Arc::new(AlgebraPres::free(field, &["e"]));
    let t2 = a.tensor_power(2);
    let kc = crate::biring::scalar_ring(field);
    let (e1, e2) = (t2.gen(0), t2.gen(1));
    Biring::new(BiringData {
        name: "k[e]".into(),
        coadd: vec![&e1 + &e2],
        comul: vec![&e1 * &e2],
        counit_add: vec![field.zero()],
        counit_mul: vec![field.one()],
        antipode: vec![-&a.gen(0)],
        beta: vec![kc.gen(0)],
        carrier: a,
    })
    .expect("k[e] is a biring")
}

/// Adds the relations in `queue` to `pres`, keeping every rule a monic pure
/// power. Distinct generators carry the leading terms, so the rules stay a
/// Gröbner basis of the ideal.
pub fn close_relations(mut pres: AlgebraPres, queue: Vec<Poly>) -> Result<AlgebraPres> {
    let mut queue: VecDeque<Poly> = queue.into();
    let f = pres.field().clone();
    while let Some(p) = queue.pop_front() {
        let p = pres.nf(&p);
        let Some((lead, lc)) = p.leading() else {
            continue;
        };
        let Some((v, k)) = lead.as_pure_power().filter(|&(_, k)| k > 0) else {
            return Err(Error::RelationOutsideFragment(format!("{p} = 0")));
        };
        let inv = f.inv(lc)?;
        let mut rhs = p.scale(&f.neg(&inv));
        rhs.pop_leading();
        let mut rules = pres.rules().to_vec();
        if let Some(old) = rules[v].replace(Rule { power: k, rhs }) {
            let x = Poly::monomial(pres.ring(), Monomial::var(pres.ring().nvars(), v, old.power), f.one());
            queue.push_back(&x - &old.rhs);
        }
        pres = AlgebraPres::new(pres.ring().clone(), rules, pres.grading().map(<[u32]>::to_vec))?;
    }
    Ok(pres)
}

/// `A ⊙ R` presented on the symbols `a_i⊙r_j`; variable `i*m + j`.
#[derive(Clone, Debug)]
pub struct Odot {
    pub carrier: Algebra,
    pub source: Algebra,
    pub right: Algebra,
}

impl Odot {
    pub fn new(a: &Biring, r: &Algebra) -> Result<Self> {
        let src = a.carrier();
        if a.field() != r.field() {
            return Err(Error::FieldMismatch);
        }
        let (n, m) = (src.ngens(), r.ngens());
        let names = (0..n)
            .flat_map(|i| (0..m).map(move |j| (i, j)))
            .map(|(i, j)| format!("{}⊙{}", src.gen_name(i), r.gen_name(j)))
            .collect();
        let free = AlgebraPres::free_owned(a.field(), names);
        let mut queue = Vec::new();
        for (_, rel) in src.relations() {
            for j in 0..m {
                let map: Vec<usize> = (0..n).map(|k| k * m + j).collect();
                queue.push(rel.rename(free.ring(), &map));
            }
        }
        let pres = close_relations(free, queue)?;
        let base = base_points(&pres, n, m);
        let ring = PointRing::new(a, &pres);
        let zero = ring.zero();
        let mut queue = Vec::new();
        for (_, g) in r.relations() {
            let phi = ring.eval(&g, &base);
            queue.extend(phi.iter().zip(&zero).map(|(x, z)| x - z));
        }
        let carrier = Arc::new(close_relations(pres, queue)?);
        Ok(Odot {
            carrier,
            source: src.clone(),
            right: r.clone(),
        })
    }

    pub fn symbol(&self, i: usize, j: usize) -> Poly {
        self.carrier.gen(i * self.right.ngens() + j)
    }

    /// `Φ_{r_j}` for every generator `r_j`, as points of `A` in `A ⊙ R`.
    pub fn base(&self) -> Vec<Point<AlgebraPres>> {
        base_points(&self.carrier, self.source.ngens(), self.right.ngens())
    }

    /// `Φ_r: a ↦ a⊙r`.
    pub fn push(&self, a: &Biring, r: &Poly) -> Result<Point<AlgebraPres>> {
        let r = self.right.import(r)?;
        Ok(PointRing::new(a, &*self.carrier).eval(&r, &self.base()))
    }

    /// `x ⊙ y` in normal form over the symbols `a_i⊙r_j`.
    pub fn expand(&self, a: &Biring, x: &Poly, y: &Poly) -> Result<Poly> {
        let x = self.source.import(x)?;
        let phi = self.push(a, y)?;
        Ok(self.carrier.substitute(&x, &phi))
    }

    /// The biring structure on `A ⊙ R` induced by a biring `R`.
    pub fn biring(&self, a: &Biring, r: &Biring) -> Result<Biring> {
        let c = &self.carrier;
        let (n, m) = (self.source.ngens(), self.right.ngens());
        let t2: Algebra = Arc::new(c.tensor_power(2));
        let place = |slot: usize| -> Vec<Point<AlgebraPres>> {
            let map: Vec<usize> = (0..n * m).map(|v| slot * n * m + v).collect();
            self.base()
                .iter()
                .map(|pt| pt.iter().map(|x| t2.nf(&x.rename(t2.ring(), &map))).collect())
                .collect()
        };
        let doubled: Vec<Point<AlgebraPres>> = place(0).into_iter().chain(place(1)).collect();
        let ring2 = PointRing::new(a, &*t2);
        let via = |maps: &[Poly]| -> Vec<Poly> {
            let mut out = vec![t2.zero(); n * m];
            for (j, d) in maps.iter().enumerate() {
                for (i, x) in ring2.eval(d, &doubled).into_iter().enumerate() {
                    out[i * m + j] = x;
                }
            }
            out
        };
        let coadd = via(r.coadd());
        let comul = via(r.comul());
        let f = a.field();
        let scalars = |cs: &[Scalar]| -> Vec<Scalar> {
            let mut out = vec![f.zero(); n * m];
            for (j, c) in cs.iter().enumerate() {
                for (i, v) in a.beta_values(c).into_iter().enumerate() {
                    out[i * m + j] = v;
                }
            }
            out
        };
        let ring = PointRing::new(a, &**c);
        let base = self.base();
        let mut antipode = vec![c.zero(); n * m];
        for (j, s) in r.antipode().iter().enumerate() {
            for (i, x) in ring.eval(s, &base).into_iter().enumerate() {
                antipode[i * m + j] = x;
            }
        }
        let kc = a.scalar_ring();
        let ringc = PointRing::new(a, &**kc);
        let generic = a.beta().to_vec();
        let mut beta = vec![kc.zero(); n * m];
        for (j, b) in r.beta().iter().enumerate() {
            for (i, x) in ringc.eval(b, std::slice::from_ref(&generic)).into_iter().enumerate() {
                beta[i * m + j] = x;
            }
        }
        Biring::new(BiringData {
            name: format!("{} ⊙ {}", a.name(), r.name()),
            carrier: c.clone(),
            coadd,
            comul,
            counit_add: scalars(r.counit()),
            counit_mul: scalars(r.counit_mul()),
            antipode,
            beta,
        })
    }
}

fn base_points(pres: &AlgebraPres, n: usize, m: usize) -> Vec<Point<AlgebraPres>> {
    (0..m).map(|j| (0..n).map(|i| pres.gen(i * m + j)).collect()).collect()
}

/// Whether `fwd: X → Y` and `bwd: Y → X` are mutually inverse algebra maps.
pub fn is_algebra_isomorphism(x: &Algebra, y: &Algebra, fwd: Vec<Poly>, bwd: Vec<Poly>) -> Result<bool> {
    let f = AlgebraMap::new("forward", x.clone(), y.clone(), fwd)?;
    let b = AlgebraMap::new("backward", y.clone(), x.clone(), bwd)?;
    let round = |m1: &AlgebraMap, m2: &AlgebraMap, a: &Algebra| -> Result<bool> {
        for i in 0..a.ngens() {
            if m2.apply(&m1.apply(&a.gen(i))?)? != a.gen(i) {
                return Ok(false);
            }
        }
        Ok(true)
    };
    Ok(round(&f, &b, x)? && round(&b, &f, y)?)
}

/// Whether the images define mutually inverse biring maps.
pub fn is_biring_isomorphism(x: &Biring, y: &Biring, fwd: Vec<Poly>, bwd: Vec<Poly>) -> Result<bool> {
    let maps_ok = x.check_map_to(y, &fwd).passed() && y.check_map_to(x, &bwd).passed();
    Ok(maps_ok && is_algebra_isomorphism(x.carrier(), y.carrier(), fwd, bwd)?)
}

/// Sizes of both sides of `Hom(A⊙R, S) ≅ Hom(R, Hom(A, S))` and whether the
/// canonical correspondence is a bijection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionVerdict {
    pub left: usize,
    pub right: usize,
    pub bijective: bool,
}

fn assignments(values: &[Vec<Scalar>], k: usize, cap: u64) -> Result<Vec<Vec<Vec<Scalar>>>> {
    let total = (values.len() as u64).checked_pow(k as u32).filter(|&t| t <= cap);
    if total.is_none() {
        return Err(Error::TooLarge(format!("{}^{k} assignments exceed {cap}", values.len())));
    }
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<Vec<Scalar>>| {
                values.iter().map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v.clone());
                    p
                })
            })
            .collect();
    }
    Ok(out)
}

/// Algebra maps `A → S`, as images of the generators.
pub fn homs(a: &AlgebraPres, s: &FinAlgebra, cap: u64) -> Result<Vec<Vec<Vec<Scalar>>>> {
    let elems = s.elements(cap)?;
    let rels = a.relations();
    Ok(assignments(&elems, a.ngens(), cap)?
        .into_iter()
        .filter(|pt| rels.iter().all(|(_, r)| s.is_zero(&s.eval(r, pt))))
        .collect())
}

pub fn adjunction_check(a: &Biring, r: &Algebra, s: &FinAlgebra, cap: u64) -> Result<AdjunctionVerdict> {
    if s.field() != a.field() {
        return Err(Error::FieldMismatch);
    }
    let odot = Odot::new(a, r)?;
    let (n, m) = (a.carrier().ngens(), r.ngens());
    let left: BTreeSet<Vec<Vec<Scalar>>> = homs(&odot.carrier, s, cap)?.into_iter().collect();
    let points = homs(a.carrier(), s, cap)?;
    let ring = PointRing::new(a, s);
    let zero = ring.zero();
    let rels = r.relations();
    let right: BTreeSet<Vec<Vec<Scalar>>> = assignments(&points.iter().map(|p| p.concat()).collect::<Vec<_>>(), m, cap)?
        .into_iter()
        .map(|flat| flat.iter().map(|p| p.chunks(s.dim()).map(<[Scalar]>::to_vec).collect()).collect::<Vec<Point<FinAlgebra>>>())
        .filter(|f| rels.iter().all(|(_, g)| ring.eval(g, f) == zero))
        .map(|f| (0..n * m).map(|v| f[v % m][v / m].clone()).collect())
        .collect();
    Ok(AdjunctionVerdict {
        left: left.len(),
        right: right.len(),
        bijective: left == right,
    })
}

/// A monoid in birings under `⊙`, given by `q_i ∘ q_j` on generators and
/// the image `e_Q` of the unit `k[e] → Q`.
#[derive(Clone, Debug)]
pub struct Plethory {
    biring: Biring,
    circ: Vec<Vec<Poly>>,
    unit: Poly,
}

impl Plethory {
    /// Imports the table without validation.
    pub fn unchecked(biring: Biring, circ: Vec<Vec<Poly>>, unit: &Poly) -> Result<Self> {
        let a = biring.carrier().clone();
        let n = a.ngens();
        if circ.len() != n || circ.iter().any(|row| row.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: circ.len() });
        }
        let circ = circ
            .iter()
            .map(|row| row.iter().map(|p| a.import(p)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        Ok(Plethory {
            unit: a.import(unit)?,
            biring,
            circ,
        })
    }

    /// Validates unit laws, associativity on generator triples and that `∘`
    /// is a biring map `Q ⊙ Q → Q`, in that order.
    pub fn new(biring: Biring, circ: Vec<Vec<Poly>>, unit: &Poly) -> Result<Self> {
        let p = Self::unchecked(biring, circ, unit)?;
        p.check_units()?;
        p.check_associativity()?;
        p.check_biring_map()?;
        Ok(p)
    }

    pub fn biring(&self) -> &Biring {
        &self.biring
    }

    pub fn carrier(&self) -> &Algebra {
        self.biring.carrier()
    }

    pub fn circ(&self) -> &[Vec<Poly>] {
        &self.circ
    }

    pub fn unit(&self) -> &Poly {
        &self.unit
    }

    pub fn name(&self) -> &str {
        self.biring.name()
    }

    fn base(&self) -> Vec<Point<AlgebraPres>> {
        let n = self.circ.len();
        (0..n).map(|j| (0..n).map(|i| self.circ[i][j].clone()).collect()).collect()
    }

    /// The plethysm `Φ_y: x ↦ x ∘ y`.
    pub fn push(&self, y: &Poly) -> Result<Point<AlgebraPres>> {
        let y = self.carrier().import(y)?;
        Ok(PointRing::new(&self.biring, &**self.carrier()).eval(&y, &self.base()))
    }

    /// `x ∘ y`.
    pub fn compose(&self, x: &Poly, y: &Poly) -> Result<Poly> {
        let x = self.carrier().import(x)?;
        Ok(self.carrier().substitute(&x, &self.push(y)?))
    }

    fn check_units(&self) -> Result<()> {
        let a = self.carrier();
        let unit_map = unit_biring(a.field()).check_map_to(&self.biring, std::slice::from_ref(&self.unit));
        if let Some(r) = unit_map.failures().next() {
            return Err(Error::UnitLawFails(format!("k[e] -> Q, e -> {}: {} fails", self.unit, r.axiom)));
        }
        for j in 0..a.ngens() {
            let q = a.gen(j);
            let left = self.compose(&self.unit, &q)?;
            if left != q {
                return Err(Error::UnitLawFails(format!("{} ∘ {q} = {left}", self.unit)));
            }
            let right = self.compose(&q, &self.unit)?;
            if right != q {
                return Err(Error::UnitLawFails(format!("{q} ∘ {} = {right}", self.unit)));
            }
        }
        Ok(())
    }

    fn check_associativity(&self) -> Result<()> {
        let a = self.carrier();
        let n = a.ngens();
        let pushes: Vec<Point<AlgebraPres>> = (0..n).map(|k| self.push(&a.gen(k))).collect::<Result<_>>()?;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = a.substitute(&self.circ[i][j], &pushes[k]);
                    let right = a.substitute(&a.gen(i), &self.push(&self.circ[j][k])?);
                    if left != right {
                        return Err(Error::NotAssociative {
                            triple: format!("({}, {}, {})", a.gen_name(i), a.gen_name(j), a.gen_name(k)),
                            witness: (&left - &right).to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn check_biring_map(&self) -> Result<()> {
        let q = &self.biring;
        let a = q.carrier();
        let n = a.ngens();
        let f = q.field();
        let fail = |what: &str, i: usize, j: usize, w: String| {
            Err(Error::NotBiringMap(format!("{what} on {}⊙{}: {w}", a.gen_name(i), a.gen_name(j))))
        };
        // well-defined on relations of the left factor
        for (_, rel) in a.relations() {
            for j in 0..n {
                let col: Vec<Poly> = (0..n).map(|i| self.circ[i][j].clone()).collect();
                let v = a.substitute(&rel, &col);
                if !v.is_zero() {
                    return Err(Error::NotBiringMap(format!("relation {rel} in the first factor, column {}: {v}", a.gen_name(j))));
                }
            }
        }
        // and of the right factor
        let ring = PointRing::new(q, &**a);
        let base = self.base();
        for (_, g) in a.relations() {
            let v = ring.eval(&g, &base);
            if v != ring.zero() {
                return Err(Error::NotBiringMap(format!("relation {g} in the second factor")));
            }
        }
        let t2 = q.tensor2();
        let p = q.powers();
        let slot = |s: usize| -> Vec<Point<AlgebraPres>> { base.iter().map(|pt| pt.iter().map(|x| p.place(x, &[s], 2)).collect()).collect() };
        let doubled: Vec<Point<AlgebraPres>> = slot(0).into_iter().chain(slot(1)).collect();
        let ring2 = PointRing::new(q, &*t2);
        let kc = q.scalar_ring();
        let ringc = PointRing::new(q, &**kc);
        let generic = q.beta().to_vec();
        for j in 0..n {
            let plus = ring2.eval(&q.coadd()[j], &doubled);
            let times = ring2.eval(&q.comul()[j], &doubled);
            let anti = ring.eval(&q.antipode()[j], &base);
            let beta = ringc.eval(&q.beta()[j], std::slice::from_ref(&generic));
            let e_add = q.beta_values(&q.counit()[j]);
            let e_mul = q.beta_values(&q.counit_mul()[j]);
            for i in 0..n {
                let x = &self.circ[i][j];
                let d = t2.nf(&(&q.coadd_apply(x)? - &plus[i]));
                if !d.is_zero() {
                    return fail("coadd", i, j, d.to_string());
                }
                let d = t2.nf(&(&q.comul_apply(x)? - &times[i]));
                if !d.is_zero() {
                    return fail("comul", i, j, d.to_string());
                }
                let d = f.sub(&q.counit_apply(x)?, &e_add[i]);
                if !f.is_zero(&d) {
                    return fail("counit+", i, j, f.format(&d));
                }
                let d = f.sub(&q.counit_mul_apply(x)?, &e_mul[i]);
                if !f.is_zero(&d) {
                    return fail("counit*", i, j, f.format(&d));
                }
                let d = &q.antipode_apply(x)? - &anti[i];
                if !d.is_zero() {
                    return fail("antipode", i, j, d.to_string());
                }
                let d = kc.nf(&(&q.beta_apply(x)? - &beta[i]));
                if !d.is_zero() {
                    return fail("beta", i, j, d.to_string());
                }
            }
        }
        Ok(())
    }

    /// Validates an action: well-defined on `Q ⊙ R`, unital and associative
    /// on generators.
    pub fn check_action(&self, w: &ActionWitness) -> Result<()> {
        let a = self.carrier();
        let r = &w.target;
        let (n, m) = (a.ngens(), r.ngens());
        if w.table.len() != n || w.table.iter().any(|row| row.len() != m) {
            return Err(Error::DimensionMismatch { expected: n, found: w.table.len() });
        }
        for (_, rel) in a.relations() {
            for j in 0..m {
                let col: Vec<Poly> = (0..n).map(|i| w.table[i][j].clone()).collect();
                let v = r.substitute(&rel, &col);
                if !v.is_zero() {
                    return Err(Error::InvalidAction(format!("{rel} fails on column {}: {v}", r.gen_name(j))));
                }
            }
        }
        let ring = PointRing::new(&self.biring, &**r);
        let base = w.base();
        for (_, g) in r.relations() {
            if ring.eval(&g, &base) != ring.zero() {
                return Err(Error::InvalidAction(format!("relation {g} of the target is not respected")));
            }
        }
        for j in 0..m {
            let rj = r.gen(j);
            let e = self.act(w, &self.unit, &rj)?;
            if e != rj {
                return Err(Error::InvalidAction(format!("{} ∘ {rj} = {e}", self.unit)));
            }
            for i in 0..n {
                for k in 0..n {
                    let left = self.act(w, &self.circ[i][k], &rj)?;
                    let right = self.act(w, &a.gen(i), &w.table[k][j])?;
                    if left != right {
                        return Err(Error::InvalidAction(format!(
                            "({} ∘ {}) ∘ {rj} = {left} but {} ∘ ({} ∘ {rj}) = {right}",
                            a.gen_name(i),
                            a.gen_name(k),
                            a.gen_name(i),
                            a.gen_name(k)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `p ∘ r` in a `Q`-ring.
    pub fn act(&self, w: &ActionWitness, p: &Poly, r: &Poly) -> Result<Poly> {
        let p = self.carrier().import(p)?;
        let r = w.target.import(r)?;
        let phi = PointRing::new(&self.biring, &*w.target).eval(&r, &w.base());
        Ok(w.target.substitute(&p, &phi))
    }
}

/// A `Q`-ring: `table[i][j] = q_i ∘ r_j`.
#[derive(Clone, Debug)]
pub struct ActionWitness {
    pub target: Algebra,
    pub table: Vec<Vec<Poly>>,
}

impl ActionWitness {
    pub fn new(target: Algebra, table: Vec<Vec<Poly>>) -> Result<Self> {
        let table = table
            .iter()
            .map(|row| row.iter().map(|p| target.import(p)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        Ok(ActionWitness { target, table })
    }

    fn base(&self) -> Vec<Point<AlgebraPres>> {
        let m = self.target.ngens();
        (0..m).map(|j| self.table.iter().map(|row| row[j].clone()).collect()).collect()
    }
}
