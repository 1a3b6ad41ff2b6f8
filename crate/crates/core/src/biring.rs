//! Cocommutative Hopf algebras and birings given by generator images, with
//! exact axiom verification on generators.
//!
//! Every structure map is an algebra homomorphism, so an identity between
//! composites of structure maps holds everywhere once it holds on generators.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::algebra::{Algebra, AlgebraPres, FinAlgebra};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::idempotent;
use crate::linalg::{Coordinates, Matrix, Span};
use crate::poly::{Monomial, Poly};

/// Tensor powers `A^{⊗n}` of a carrier; generator `i` of slot `s` is
/// variable `s*ngens + i`.
#[derive(Clone, Debug)]
pub struct Powers {
    base: Algebra,
    cache: [OnceLock<Algebra>; 6],
}

impl Powers {
    pub fn new(base: Algebra) -> Self {
        Powers {
            base,
            cache: Default::default(),
        }
    }

    pub fn base(&self) -> &Algebra {
        &self.base
    }

    pub fn get(&self, n: usize) -> Algebra {
        match n {
            1 => self.base.clone(),
            n if n < self.cache.len() => self.cache[n]
                .get_or_init(|| Arc::new(self.base.tensor_power(n)))
                .clone(),
            n => Arc::new(self.base.tensor_power(n)),
        }
    }

    /// Moves slot `s` of `x ∈ A^{⊗k}` to slot `slots[s]` of `A^{⊗n}`;
    /// repeated targets multiply.
    pub fn place(&self, x: &Poly, slots: &[usize], n: usize) -> Poly {
        let g = self.base.ngens();
        let target = self.get(n);
        let map: Vec<usize> = (0..slots.len() * g).map(|v| slots[v / g] * g + v % g).collect();
        target.nf(&x.rename(target.ring(), &map))
    }

    /// Replaces slot `slot` of `x ∈ A^{⊗n}` by a map `A → A^{⊗j}` given on
    /// generators; the result lies in `A^{⊗(n+j-1)}`.
    pub fn apply_at(&self, x: &Poly, n: usize, slot: usize, images: &[Poly], j: usize) -> Poly {
        let g = self.base.ngens();
        let out_n = n + j - 1;
        let target = self.get(out_n);
        let inner: Vec<usize> = (slot..slot + j).collect();
        let placed: Vec<Poly> = images.iter().map(|p| self.place(p, &inner, out_n)).collect();
        let subs: Vec<Poly> = (0..n * g)
            .map(|v| {
                let (t, i) = (v / g, v % g);
                if t < slot {
                    Poly::var(target.ring(), v)
                } else if t == slot {
                    placed[i].clone()
                } else {
                    Poly::var(target.ring(), (t + j - 1) * g + i)
                }
            })
            .collect();
        target.substitute(x, &subs)
    }

    /// Multiplies all slots of `x ∈ A^{⊗n}` together.
    pub fn collapse(&self, x: &Poly, n: usize) -> Poly {
        self.place(x, &vec![0; n], 1)
    }
}

fn constants(field: &Field, cs: &[Scalar]) -> Vec<Poly> {
    let point = AlgebraPres::point(field);
    cs.iter().map(|c| point.constant(c.clone())).collect()
}

/// One verified instance: an axiom on a generator, with the difference of
/// the two sides when it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRecord {
    pub axiom: String,
    pub generator: String,
    pub witness: Option<String>,
    /// Whether this record concerns relations rather than an axiom.
    pub relation: bool,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub object: String,
    pub records: Vec<CheckRecord>,
}

impl Report {
    pub fn new(object: &str) -> Self {
        Report {
            object: object.to_string(),
            records: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(CheckRecord::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.passed())
    }

    pub fn push_diff(&mut self, axiom: &str, generator: &str, alg: &AlgebraPres, lhs: &Poly, rhs: &Poly) {
        let d = alg.nf(&(lhs - rhs));
        self.records.push(CheckRecord {
            axiom: axiom.to_string(),
            generator: generator.to_string(),
            witness: (!d.is_zero()).then(|| d.to_string()),
            relation: false,
        });
    }

    pub fn push_scalar(&mut self, axiom: &str, generator: &str, field: &Field, lhs: &Scalar, rhs: &Scalar) {
        let d = field.sub(lhs, rhs);
        self.records.push(CheckRecord {
            axiom: axiom.to_string(),
            generator: generator.to_string(),
            witness: (!field.is_zero(&d)).then(|| field.format(&d)),
            relation: false,
        });
    }

    pub fn push_relation(&mut self, map: &str, relation: &Poly, residue: &Poly) {
        self.records.push(CheckRecord {
            axiom: format!("relations({map})"),
            generator: format!("{relation} = 0"),
            witness: (!residue.is_zero()).then(|| residue.to_string()),
            relation: true,
        });
    }

    pub fn extend(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    /// The first failure as an error.
    pub fn first_error(&self) -> Option<Error> {
        self.failures().next().map(|r| {
            if r.relation {
                Error::RelationNotRespected {
                    map: r.axiom.trim_start_matches("relations(").trim_end_matches(')').to_string(),
                    relation: r.generator.clone(),
                    residue: r.witness.clone().unwrap(),
                }
            } else {
                Error::AxiomViolation {
                    axiom: r.axiom.clone(),
                    generator: r.generator.clone(),
                    witness: r.witness.clone().unwrap(),
                }
            }
        })
    }

    pub fn into_result(self) -> Result<()> {
        match self.first_error() {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.records {
            match &r.witness {
                None => writeln!(f, "pass  {:<22} {}", r.axiom, r.generator)?,
                Some(w) => writeln!(f, "FAIL  {:<22} {}  [{}]", r.axiom, r.generator, w)?,
            }
        }
        Ok(())
    }
}

/// A commutative, cocommutative Hopf algebra: the coordinate ring of an
/// affine commutative group scheme.
#[derive(Clone, Debug)]
pub struct HopfAlgebra {
    name: String,
    powers: Powers,
    coadd: Vec<Poly>,
    counit: Vec<Scalar>,
    antipode: Vec<Poly>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    Plus,
    Times,
}

impl HopfAlgebra {
    /// Imports the images into `A⊗A` and `A` by variable name without
    /// checking any axiom.
    pub fn unchecked(name: &str, carrier: Algebra, coadd: &[Poly], counit: Vec<Scalar>, antipode: &[Poly]) -> Result<Self> {
        let n = carrier.ngens();
        for len in [coadd.len(), counit.len(), antipode.len()] {
            if len != n {
                return Err(Error::DimensionMismatch { expected: n, found: len });
            }
        }
        let powers = Powers::new(carrier.clone());
        let t2 = powers.get(2);
        Ok(HopfAlgebra {
            name: name.to_string(),
            coadd: coadd.iter().map(|p| t2.import(p)).collect::<Result<_>>()?,
            counit,
            antipode: antipode.iter().map(|p| carrier.import(p)).collect::<Result<_>>()?,
            powers,
        })
    }

    pub fn new(name: &str, carrier: Algebra, coadd: &[Poly], counit: Vec<Scalar>, antipode: &[Poly]) -> Result<Self> {
        let h = Self::unchecked(name, carrier, coadd, counit, antipode)?;
        h.check().into_result()?;
        Ok(h)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn carrier(&self) -> &Algebra {
        self.powers.base()
    }

    pub fn field(&self) -> &Field {
        self.carrier().field()
    }

    pub fn powers(&self) -> &Powers {
        &self.powers
    }

    pub fn tensor2(&self) -> Algebra {
        self.powers.get(2)
    }

    pub fn coadd(&self) -> &[Poly] {
        &self.coadd
    }

    pub fn counit(&self) -> &[Scalar] {
        &self.counit
    }

    pub fn antipode(&self) -> &[Poly] {
        &self.antipode
    }

    pub fn gen_name(&self, i: usize) -> &str {
        self.carrier().gen_name(i)
    }

    /// `Δ⁺(x)`.
    pub fn coadd_apply(&self, x: &Poly) -> Result<Poly> {
        let x = self.carrier().import(x)?;
        Ok(self.tensor2().substitute(&x, &self.coadd))
    }

    /// `ε⁺(x)`.
    pub fn counit_apply(&self, x: &Poly) -> Result<Scalar> {
        Ok(self.carrier().import(x)?.eval(&self.counit))
    }

    /// `S(x)`.
    pub fn antipode_apply(&self, x: &Poly) -> Result<Poly> {
        let x = self.carrier().import(x)?;
        Ok(self.carrier().substitute(&x, &self.antipode))
    }

    /// Iterated coproduct `Δ^{(n)}: A → A^{⊗n}`.
    pub fn iterated_coadd(&self, x: &Poly, n: usize) -> Result<Poly> {
        let mut cur = self.carrier().import(x)?;
        if n == 0 {
            return Ok(AlgebraPres::point(self.field()).constant(self.counit_apply(&cur)?));
        }
        for k in 1..n {
            cur = self.powers.apply_at(&cur, k, k - 1, &self.coadd, 2);
        }
        Ok(cur)
    }

    fn check_relations(&self, report: &mut Report) {
        let a = self.carrier();
        let t2 = self.tensor2();
        for (_, rel) in a.relations() {
            report.push_relation("coadd", &rel, &t2.substitute(&rel, &self.coadd));
            let e = rel.eval(&self.counit);
            report.push_relation("counit+", &rel, &a.constant(e));
            report.push_relation("antipode", &rel, &a.substitute(&rel, &self.antipode));
        }
    }

    /// Coassociativity, cocommutativity and counit law of `(Δ, ε)` on generators.
    fn check_coalgebra(&self, report: &mut Report, tag: &str, delta: &[Poly], eps: &[Scalar]) {
        let a = self.carrier();
        let p = &self.powers;
        let t2 = p.get(2);
        let t3 = p.get(3);
        let eps_c = constants(self.field(), eps);
        for (i, d) in delta.iter().enumerate() {
            let g = self.gen_name(i);
            let left = p.apply_at(d, 2, 0, delta, 2);
            let right = p.apply_at(d, 2, 1, delta, 2);
            report.push_diff(&format!("coassociativity({tag})"), g, &t3, &left, &right);
            report.push_diff(&format!("cocommutativity({tag})"), g, &t2, d, &p.place(d, &[1, 0], 2));
            let l = p.apply_at(d, 2, 0, &eps_c, 0);
            let r = p.apply_at(d, 2, 1, &eps_c, 0);
            let x = a.gen(i);
            report.push_diff(&format!("counit({tag})"), g, a, &l, &x);
            report.push_diff(&format!("counit({tag})"), g, a, &r, &x);
        }
    }

    fn check_antipode(&self, report: &mut Report) {
        let a = self.carrier();
        let ids: Vec<Poly> = (0..a.ngens()).map(|i| a.gen(i)).collect();
        for (i, d) in self.coadd.iter().enumerate() {
            let g = self.gen_name(i);
            let unit = a.constant(self.counit[i].clone());
            let left: Vec<Poly> = self.antipode.iter().chain(&ids).cloned().collect();
            let right: Vec<Poly> = ids.iter().chain(&self.antipode).cloned().collect();
            report.push_diff("antipode", g, a, &a.substitute(d, &left), &unit);
            report.push_diff("antipode", g, a, &a.substitute(d, &right), &unit);
        }
    }

    /// Per-axiom, per-generator verdicts.
    pub fn check(&self) -> Report {
        let mut report = Report::new(&self.name);
        self.check_relations(&mut report);
        self.check_coalgebra(&mut report, "+", &self.coadd, &self.counit);
        self.check_antipode(&mut report);
        report
    }

    /// Minimal-length Sweedler expansion of `Δ⁺(x)`.
    pub fn sweedler(&self, x: &Poly) -> Result<Vec<(Poly, Poly)>> {
        Ok(sweedler_split(self.carrier(), &self.coadd_apply(x)?))
    }

    /// Dual convolution algebra `A*` on the dual basis of normal monomials.
    pub fn dual_algebra(&self) -> Result<FinAlgebra> {
        let a = self.carrier();
        let basis = a.basis().ok_or(Error::GradingRequired)?;
        let m = basis.len();
        let f = self.field().clone();
        let n = a.ngens();
        let index: std::collections::HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, b)| (b, i)).collect();
        let mut table = vec![vec![vec![f.zero(); m]; m]; m];
        for (k, b) in basis.iter().enumerate() {
            let d = self.coadd_apply(&Poly::monomial(a.ring(), b.clone(), f.one()))?;
            for (mono, c) in d.terms() {
                let i = index[&Monomial(mono.0[..n].to_vec())];
                let j = index[&Monomial(mono.0[n..].to_vec())];
                table[i][j][k] = c.clone();
            }
        }
        let unit = basis.iter().map(|b| Poly::monomial(a.ring(), b.clone(), f.one()).eval(&self.counit)).collect();
        let names = basis
            .iter()
            .map(|b| format!("({})*", Poly::monomial(a.ring(), b.clone(), f.one())))
            .collect();
        FinAlgebra::new(f, names, table, unit).map_err(|e| Error::InvalidBialgebra(e.to_string()))
    }

    /// All `g ≠ 0` with `Δ⁺(g) = g⊗g`, `ε⁺(g) = 1`: the characters of `A*`.
    pub fn grouplikes(&self) -> Result<Vec<Poly>> {
        let a = self.carrier();
        let basis = a.basis().ok_or(Error::GradingRequired)?;
        let dual = self.dual_algebra()?;
        let mut out = Vec::new();
        for e in idempotent::idempotents(&dual) {
            let Some(values) = character_on_component(&dual, &e) else {
                continue;
            };
            out.push(a.from_coords(&values, &basis));
        }
        out.sort_by_key(|g| g.to_string());
        Ok(out)
    }

    /// Whether the reduced coproduct is nilpotent on the augmentation ideal.
    /// Finite carriers are decided exactly; graded ones through `bound`.
    pub fn is_conilpotent(&self, bound: u32) -> Result<bool> {
        let a = self.carrier();
        if a.is_finite() {
            let dual = self.dual_algebra()?;
            let basis = a.basis().unwrap();
            let one = basis.iter().position(|b| b.is_one()).expect("normal basis contains 1");
            // the dual augmentation ideal {f : f(1) = 0}
            let ideal: Vec<Vec<Scalar>> = (0..basis.len()).filter(|&k| k != one).map(|k| dual.basis_vector(k)).collect();
            return Ok(is_nilpotent_ideal(&dual, &ideal));
        }
        let weights = a.grading().ok_or(Error::GradingRequired)?.to_vec();
        for b in a.normal_monomials_up_to(bound, &weights) {
            if b.is_one() {
                continue;
            }
            let x = Poly::monomial(a.ring(), b, self.field().one());
            let x = &x - &a.constant(self.counit_apply(&x)?);
            let mut cur = x;
            let mut k = 1;
            while !cur.is_zero() {
                if k > bound as usize {
                    return Ok(false);
                }
                cur = self.reduced_coadd_last(&cur, k);
                k += 1;
            }
        }
        Ok(true)
    }

    /// `(π⊗π)Δ` on the last slot of `x ∈ I^{⊗k}`, `I` the augmentation ideal.
    fn reduced_coadd_last(&self, x: &Poly, k: usize) -> Poly {
        let p = &self.powers;
        let delta = p.apply_at(x, k, k - 1, &self.coadd, 2);
        let ids: Vec<usize> = (0..k).collect();
        let mut shifted: Vec<usize> = (0..k - 1).collect();
        shifted.push(k);
        let t = p.get(k + 1);
        t.nf(&(&(&delta - &p.place(x, &ids, k + 1)) - &p.place(x, &shifted, k + 1)))
    }

    /// Number of primitive idempotents of a finite carrier.
    pub fn pi0_rank(&self) -> Result<usize> {
        let fa = FinAlgebra::from_pres(self.carrier()).ok_or(Error::GradingRequired)?;
        Ok(idempotent::pi0_rank(&fa))
    }

    /// Checks that `images` define a Hopf algebra map `self → other`.
    pub fn check_map_to(&self, other: &HopfAlgebra, images: &[Poly]) -> Report {
        let mut report = Report::new(&format!("{} -> {}", self.name, other.name));
        let b = other.carrier();
        if images.len() != self.carrier().ngens() {
            report.push_relation("map", &self.carrier().zero(), &b.one());
            return report;
        }
        let images: Vec<Poly> = images.iter().map(|p| b.import(p).unwrap_or_else(|_| b.zero())).collect();
        for (_, rel) in self.carrier().relations() {
            report.push_relation("map", &rel, &b.substitute(&rel, &images));
        }
        let p = &other.powers;
        let doubled: Vec<Poly> = images
            .iter()
            .map(|x| p.place(x, &[0], 2))
            .chain(images.iter().map(|x| p.place(x, &[1], 2)))
            .collect();
        let t2 = other.tensor2();
        for (i, img) in images.iter().enumerate() {
            let g = self.gen_name(i);
            let lhs = other.coadd_apply(img).unwrap();
            report.push_diff("map: coadd", g, &t2, &lhs, &t2.substitute(&self.coadd[i], &doubled));
            report.push_scalar("map: counit+", g, self.field(), &other.counit_apply(img).unwrap(), &self.counit[i]);
            let s = other.antipode_apply(img).unwrap();
            report.push_diff("map: antipode", g, b, &s, &b.substitute(&self.antipode[i], &images));
        }
        report
    }
}

/// Minimal-length decomposition `Σ l_k ⊗ r_k` of an element of `A⊗A`.
pub fn sweedler_split(a: &AlgebraPres, x: &Poly) -> Vec<(Poly, Poly)> {
    let n = a.ngens();
    let f = a.field();
    let left = Coordinates::new(x.terms().map(|(m, _)| Monomial(m.0[..n].to_vec())));
    let right = Coordinates::new(x.terms().map(|(m, _)| Monomial(m.0[n..].to_vec())));
    let mut mat = Matrix::zeros(f, left.len(), right.len());
    for (m, c) in x.terms() {
        let i = left.monomials.binary_search(&Monomial(m.0[..n].to_vec())).unwrap();
        let j = right.monomials.binary_search(&Monomial(m.0[n..].to_vec())).unwrap();
        mat.set(i, j, c.clone());
    }
    let (r, pivots) = mat.rref();
    let mut out: Vec<(Poly, Poly)> = pivots
        .iter()
        .enumerate()
        .map(|(k, &pc)| {
            let l = left.poly(a.ring(), &mat.column(pc));
            let rr = right.poly(a.ring(), r.row(k));
            (l, rr)
        })
        .collect();
    out.sort_by(|x, y| y.0.leading().map(|t| t.0.clone()).cmp(&x.0.leading().map(|t| t.0.clone())));
    out
}

/// The character `χ` of `A*` with `χ(e) = 1`, if the component `eA*` has
/// residue field `k`; returns `χ` on the dual basis.
fn character_on_component(dual: &FinAlgebra, e: &[Scalar]) -> Option<Vec<Scalar>> {
    let f = dual.field();
    let m = dual.dim();
    let nilpotent = |x: &[Scalar]| {
        let mut p = x.to_vec();
        for _ in 0..m {
            p = dual.mul(&p, x);
        }
        dual.is_zero(&p)
    };
    let mut values = Vec::with_capacity(m);
    for k in 0..m {
        let y = dual.mul(&dual.basis_vector(k), e);
        let candidate = |l: &Scalar| {
            let shifted: Vec<Scalar> = y.iter().zip(e).map(|(a, b)| f.sub(a, &f.mul(l, b))).collect();
            nilpotent(&shifted)
        };
        let lambda = match f.elements() {
            Some(points) => points.into_iter().find(|l| candidate(l)),
            None => {
                let mu = idempotent::minimal_polynomial(dual, e, &y);
                let deg = mu.len() - 1;
                let l = f.div(&f.neg(&mu[deg - 1]), &f.from_i64(deg as i64)).ok()?;
                candidate(&l).then_some(l)
            }
        };
        values.push(lambda?);
    }
    Some(values)
}

fn is_nilpotent_ideal(alg: &FinAlgebra, ideal: &[Vec<Scalar>]) -> bool {
    let f = alg.field();
    let mut power: Vec<Vec<Scalar>> = ideal.to_vec();
    let mut prev_rank = usize::MAX;
    loop {
        let mut span = Span::new(f, alg.dim());
        let mut basis = Vec::new();
        for v in &power {
            if span.insert(v) {
                basis.push(v.clone());
            }
        }
        if basis.is_empty() {
            return true;
        }
        if basis.len() == prev_rank {
            return false;
        }
        prev_rank = basis.len();
        power = basis.iter().flat_map(|x| ideal.iter().map(|y| alg.mul(x, y))).collect();
    }
}

/// The scalar ring in which `β` is stored: polynomial functions of `c` on `k`.
pub fn scalar_ring(field: &Field) -> Algebra {
    let a = AlgebraPres::free(field, &["c"]);
    match field.size() {
        Some(q) => {
            let rel = &a.gen(0).pow(q as u32) - &a.gen(0);
            Arc::new(a.with_relation(&rel).expect("c^q - c is triangular"))
        }
        None => Arc::new(a),
    }
}

/// A biring: a Hopf algebra with a cocommutative comultiplication that
/// codistributes over the coaddition, its counit, and a co-k-algebra map `β`.
#[derive(Clone, Debug)]
pub struct Biring {
    hopf: HopfAlgebra,
    comul: Vec<Poly>,
    counit_mul: Vec<Scalar>,
    kc: Algebra,
    beta: Vec<Poly>,
}

impl std::ops::Deref for Biring {
    type Target = HopfAlgebra;
    fn deref(&self) -> &HopfAlgebra {
        &self.hopf
    }
}

/// Generator images for all six structure maps of a biring.
#[derive(Clone, Debug)]
pub struct BiringData {
    pub name: String,
    pub carrier: Algebra,
    pub coadd: Vec<Poly>,
    pub comul: Vec<Poly>,
    pub counit_add: Vec<Scalar>,
    pub counit_mul: Vec<Scalar>,
    pub antipode: Vec<Poly>,
    pub beta: Vec<Poly>,
}

impl Biring {
    /// Imports the data without checking any axiom.
    pub fn unchecked(data: BiringData) -> Result<Self> {
        let n = data.carrier.ngens();
        for len in [data.comul.len(), data.counit_mul.len(), data.beta.len()] {
            if len != n {
                return Err(Error::DimensionMismatch { expected: n, found: len });
            }
        }
        let hopf = HopfAlgebra::unchecked(&data.name, data.carrier, &data.coadd, data.counit_add, &data.antipode)?;
        let t2 = hopf.tensor2();
        let kc = scalar_ring(hopf.field());
        Ok(Biring {
            comul: data.comul.iter().map(|p| t2.import(p)).collect::<Result<_>>()?,
            counit_mul: data.counit_mul,
            beta: data.beta.iter().map(|p| kc.import(p)).collect::<Result<_>>()?,
            kc,
            hopf,
        })
    }

    /// Validates every axiom on every generator.
    pub fn new(data: BiringData) -> Result<Self> {
        let b = Self::unchecked(data)?;
        b.check().into_result()?;
        Ok(b)
    }

    pub fn data(&self) -> BiringData {
        BiringData {
            name: self.name().to_string(),
            carrier: self.carrier().clone(),
            coadd: self.coadd().to_vec(),
            comul: self.comul.clone(),
            counit_add: self.counit().to_vec(),
            counit_mul: self.counit_mul.clone(),
            antipode: self.antipode().to_vec(),
            beta: self.beta.clone(),
        }
    }

    pub fn hopf(&self) -> &HopfAlgebra {
        &self.hopf
    }

    pub fn into_hopf(self) -> HopfAlgebra {
        self.hopf
    }

    pub fn renamed(mut self, name: &str) -> Self {
        self.hopf = self.hopf.renamed(name);
        self
    }

    pub fn comul(&self) -> &[Poly] {
        &self.comul
    }

    pub fn counit_mul(&self) -> &[Scalar] {
        &self.counit_mul
    }

    pub fn beta(&self) -> &[Poly] {
        &self.beta
    }

    pub fn scalar_ring(&self) -> &Algebra {
        &self.kc
    }

    pub fn structure(&self, which: Which) -> (&[Poly], &[Scalar]) {
        match which {
            Which::Plus => (self.coadd(), self.counit()),
            Which::Times => (&self.comul, &self.counit_mul),
        }
    }

    /// `Δ×(x)`.
    pub fn comul_apply(&self, x: &Poly) -> Result<Poly> {
        let x = self.carrier().import(x)?;
        Ok(self.tensor2().substitute(&x, &self.comul))
    }

    pub fn counit_mul_apply(&self, x: &Poly) -> Result<Scalar> {
        Ok(self.carrier().import(x)?.eval(&self.counit_mul))
    }

    /// `β(·)(x)` as a polynomial function of `c`.
    pub fn beta_apply(&self, x: &Poly) -> Result<Poly> {
        let x = self.carrier().import(x)?;
        Ok(self.kc.substitute(&x, &self.beta))
    }

    /// `β(c₀)(x)`.
    pub fn beta_at(&self, c: &Scalar, x: &Poly) -> Result<Scalar> {
        Ok(self.beta_apply(x)?.eval(std::slice::from_ref(c)))
    }

    /// Values `β(c₀)(g_i)` on all generators.
    pub fn beta_values(&self, c: &Scalar) -> Vec<Scalar> {
        self.beta.iter().map(|p| p.eval(std::slice::from_ref(c))).collect()
    }

    pub fn sweedler_with(&self, x: &Poly, which: Which) -> Result<Vec<(Poly, Poly)>> {
        let d = match which {
            Which::Plus => self.coadd_apply(x)?,
            Which::Times => self.comul_apply(x)?,
        };
        Ok(sweedler_split(self.carrier(), &d))
    }

    pub fn check(&self) -> Report {
        let mut report = self.hopf.check();
        let a = self.carrier();
        let t2 = self.tensor2();
        for (_, rel) in a.relations() {
            report.push_relation("comul", &rel, &t2.substitute(&rel, &self.comul));
            let e = rel.eval(&self.counit_mul);
            report.push_relation("counit*", &rel, &a.constant(e));
            report.push_relation("beta", &rel, &self.kc.substitute(&rel, &self.beta));
        }
        self.hopf.check_coalgebra(&mut report, "*", &self.comul, &self.counit_mul);
        self.check_codistributivity(&mut report);
        self.check_beta(&mut report);
        report
    }

    fn check_codistributivity(&self, report: &mut Report) {
        let a = self.carrier();
        let p = self.powers();
        let t3 = p.get(3);
        let eps_add = constants(self.field(), self.counit());
        for i in 0..a.ngens() {
            let g = self.gen_name(i);
            // x(y + z) = xy + xz
            let left = p.apply_at(&self.comul[i], 2, 1, self.coadd(), 2);
            let mixed = p.apply_at(&self.coadd()[i], 2, 0, &self.comul, 2);
            let mixed = p.apply_at(&mixed, 3, 2, &self.comul, 2);
            let right = p.place(&mixed, &[0, 1, 0, 2], 3);
            report.push_diff("codistributivity", g, &t3, &left, &right);
            // x·0 = 0
            let z = p.apply_at(&self.comul[i], 2, 1, &eps_add, 0);
            report.push_diff("absorption", g, a, &z, &a.constant(self.counit()[i].clone()));
        }
    }

    fn check_beta(&self, report: &mut Report) {
        let f = self.field().clone();
        let kc = &self.kc;
        let kc2 = Arc::new(AlgebraPres::tensor(&[kc, kc]).unwrap().renamed(vec!["c".into(), "c'".into()]));
        let c1 = kc2.gen(0);
        let c2 = kc2.gen(1);
        let at = |pt: Poly| vec![pt];
        let lift = |slot: usize| -> Vec<Poly> { self.beta.iter().map(|b| b.rename(kc2.ring(), &[slot])).collect() };
        let doubled: Vec<Poly> = lift(0).into_iter().chain(lift(1)).collect();
        for i in 0..self.carrier().ngens() {
            let g = self.gen_name(i);
            let sum = kc2.substitute(&self.beta[i], &at(&c1 + &c2));
            report.push_diff("beta-additive", g, &kc2, &sum, &kc2.substitute(&self.coadd()[i], &doubled));
            let prod = kc2.substitute(&self.beta[i], &at(&c1 * &c2));
            report.push_diff("beta-multiplicative", g, &kc2, &prod, &kc2.substitute(&self.comul[i], &doubled));
            report.push_scalar("beta-unit", g, &f, &self.beta[i].eval(&[f.one()]), &self.counit_mul[i]);
            report.push_scalar("beta-zero", g, &f, &self.beta[i].eval(&[f.zero()]), &self.counit()[i]);
        }
    }

    /// Checks that `images` define a biring map `self → other`.
    pub fn check_map_to(&self, other: &Biring, images: &[Poly]) -> Report {
        let mut report = self.hopf.check_map_to(&other.hopf, images);
        if report.records.iter().any(|r| r.axiom == "relations(map)" && r.generator == "0 = 0") {
            return report;
        }
        let b = other.carrier();
        let images: Vec<Poly> = images.iter().map(|p| b.import(p).unwrap_or_else(|_| b.zero())).collect();
        let p = other.powers();
        let doubled: Vec<Poly> = images
            .iter()
            .map(|x| p.place(x, &[0], 2))
            .chain(images.iter().map(|x| p.place(x, &[1], 2)))
            .collect();
        let t2 = other.tensor2();
        for (i, img) in images.iter().enumerate() {
            let g = self.gen_name(i);
            report.push_diff("map: comul", g, &t2, &other.comul_apply(img).unwrap(), &t2.substitute(&self.comul[i], &doubled));
            report.push_scalar("map: counit*", g, self.field(), &other.counit_mul_apply(img).unwrap(), &self.counit_mul[i]);
            report.push_diff("map: beta", g, &self.kc, &other.beta_apply(img).unwrap(), &self.beta[i]);
        }
        report
    }

    /// `A ⊗ B` with the componentwise structure.
    pub fn tensor(&self, other: &Biring) -> Result<Biring> {
        let carrier: Algebra = Arc::new(AlgebraPres::tensor(&[self.carrier(), other.carrier()])?);
        let (n, m) = (self.carrier().ngens(), other.carrier().ngens());
        let pw = Powers::new(carrier.clone());
        let t2 = pw.get(2);
        // generator i of A is variable i, generator j of B is variable n + j
        let embed2 = |x: &Poly, off: usize, k: usize| {
            let map: Vec<usize> = (0..2 * k).map(|v| (v / k) * (n + m) + off + v % k).collect();
            t2.nf(&x.rename(t2.ring(), &map))
        };
        let embed1 = |x: &Poly, off: usize, k: usize| {
            let map: Vec<usize> = (0..k).map(|v| off + v).collect();
            carrier.nf(&x.rename(carrier.ring(), &map))
        };
        let pick2 = |f: &dyn Fn(&Biring) -> &[Poly]| -> Vec<Poly> {
            f(self).iter().map(|x| embed2(x, 0, n)).chain(f(other).iter().map(|x| embed2(x, n, m))).collect()
        };
        let cat = |a: &[Scalar], b: &[Scalar]| -> Vec<Scalar> { a.iter().chain(b).cloned().collect() };
        Biring::new(BiringData {
            name: format!("{} ⊗ {}", self.name(), other.name()),
            coadd: pick2(&|b| b.coadd()),
            comul: pick2(&|b| b.comul()),
            counit_add: cat(self.counit(), other.counit()),
            counit_mul: cat(&self.counit_mul, &other.counit_mul),
            antipode: self
                .antipode()
                .iter()
                .map(|x| embed1(x, 0, n))
                .chain(other.antipode().iter().map(|x| embed1(x, n, m)))
                .collect(),
            beta: self.beta.iter().chain(&other.beta).cloned().collect(),
            carrier,
        })
    }
}
