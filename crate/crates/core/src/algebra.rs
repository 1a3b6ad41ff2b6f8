//! Finitely presented commutative algebras with triangular monic rewrite
//! rules, algebra maps between them, tensor products, and finite-dimensional
//! algebras given by structure constants.
//!
//! A rule for generator `g` rewrites `g^d` to a right-hand side whose
//! monomials are all smaller than `g^d` in the degree-lexicographic order.
//! Leading monomials of distinct generators are coprime, so the rules form a
//! Gröbner basis and normal forms are unique.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::poly::{same_ring, Monomial, Poly, PolyRing};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub power: u32,
    pub rhs: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPres {
    ring: Arc<PolyRing>,
    rules: Vec<Option<Rule>>,
    grading: Option<Vec<u32>>,
}

pub type Algebra = Arc<AlgebraPres>;

impl AlgebraPres {
    /// The free algebra `k[gens]`.
    pub fn free(field: &Field, gens: &[&str]) -> Self {
        Self::free_owned(field, gens.iter().map(|s| s.to_string()).collect())
    }

    pub fn free_owned(field: &Field, gens: Vec<String>) -> Self {
        let n = gens.len();
        AlgebraPres {
            ring: PolyRing::new(field.clone(), gens),
            rules: vec![None; n],
            grading: None,
        }
    }

    /// The ground field as an algebra with no generators.
    pub fn point(field: &Field) -> Self {
        Self::free_owned(field, Vec::new())
    }

    /// Builds a presentation and validates every rule.
    pub fn new(ring: Arc<PolyRing>, rules: Vec<Option<Rule>>, grading: Option<Vec<u32>>) -> Result<Self> {
        if rules.len() != ring.nvars() {
            return Err(Error::DimensionMismatch {
                expected: ring.nvars(),
                found: rules.len(),
            });
        }
        if let Some(g) = &grading {
            if g.len() != ring.nvars() {
                return Err(Error::DimensionMismatch {
                    expected: ring.nvars(),
                    found: g.len(),
                });
            }
            if g.iter().any(|&w| w == 0) {
                return Err(Error::NotTriangular("generator degrees must be positive".into()));
            }
        }
        let pres = AlgebraPres { ring, rules, grading };
        for (i, r) in pres.rules.iter().enumerate() {
            if let Some(r) = r {
                pres.validate_rule(i, r)?;
            }
        }
        Ok(pres)
    }

    fn validate_rule(&self, i: usize, r: &Rule) -> Result<()> {
        let lhs = Monomial::var(self.ring.nvars(), i, r.power);
        if r.power == 0 || !same_ring(r.rhs.ring(), &self.ring) {
            return Err(Error::NotTriangular(format!("bad rule for {}", self.ring.vars[i])));
        }
        if let Some((m, _)) = r.rhs.leading() {
            if *m >= lhs {
                return Err(Error::NotTriangular(format!(
                    "{}^{} -> {}: right-hand side is not lower order",
                    self.ring.vars[i], r.power, r.rhs
                )));
            }
        }
        if let Some(w) = &self.grading {
            let d = lhs.weighted_degree(w);
            if r.rhs.terms().any(|(m, _)| m.weighted_degree(w) != d) {
                return Err(Error::NotTriangular(format!(
                    "{}^{} -> {}: relation is not homogeneous",
                    self.ring.vars[i], r.power, r.rhs
                )));
            }
        }
        Ok(())
    }

    /// Adds `rel = 0` as a rule; the leading monomial must be a pure power
    /// of a generator without a rule.
    pub fn with_relation(mut self, rel: &Poly) -> Result<Self> {
        let (var, rule) = self.rule_from_relation(rel)?;
        if self.rules[var].is_some() {
            return Err(Error::NotTriangular(format!(
                "{rel}: generator {} already has a rule",
                self.ring.vars[var]
            )));
        }
        self.validate_rule(var, &rule)?;
        self.rules[var] = Some(rule);
        Ok(self)
    }

    /// Converts a relation `rel = 0` into a monic rule, without installing it.
    pub fn rule_from_relation(&self, rel: &Poly) -> Result<(usize, Rule)> {
        let (lead, lc) = rel
            .leading()
            .ok_or_else(|| Error::NotTriangular("zero relation".into()))?;
        let (var, power) = lead
            .as_pure_power()
            .ok_or_else(|| Error::NotTriangular(format!("{rel}: leading term is not a pure power")))?;
        let f = self.field().clone();
        let inv = f.inv(lc)?;
        let mut rhs = rel.scale(&f.neg(&inv));
        rhs.pop_leading();
        Ok((var, Rule { power, rhs }))
    }

    pub fn with_grading(self, weights: Vec<u32>) -> Result<Self> {
        AlgebraPres::new(self.ring, self.rules, Some(weights))
    }

    pub fn without_grading(self) -> Self {
        AlgebraPres {
            grading: None,
            ..self
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn field(&self) -> &Field {
        &self.ring.field
    }

    pub fn ngens(&self) -> usize {
        self.ring.nvars()
    }

    pub fn gen_names(&self) -> &[String] {
        &self.ring.vars
    }

    pub fn gen_name(&self, i: usize) -> &str {
        &self.ring.vars[i]
    }

    pub fn rules(&self) -> &[Option<Rule>] {
        &self.rules
    }

    pub fn grading(&self) -> Option<&[u32]> {
        self.grading.as_deref()
    }

    /// Generator weights: the grading if declared, otherwise all ones.
    pub fn weights(&self) -> Vec<u32> {
        self.grading.clone().unwrap_or_else(|| vec![1; self.ngens()])
    }

    /// Relation polynomials `g^d - rhs`.
    pub fn relations(&self) -> Vec<(usize, Poly)> {
        self.rules
            .iter()
            .enumerate()
            .filter_map(|(i, r)| {
                r.as_ref().map(|r| {
                    let lhs = Poly::monomial(&self.ring, Monomial::var(self.ngens(), i, r.power), self.field().one());
                    (i, &lhs - &r.rhs)
                })
            })
            .collect()
    }

    pub fn gen(&self, i: usize) -> Poly {
        Poly::var(&self.ring, i)
    }

    pub fn gen_by_name(&self, name: &str) -> Result<Poly> {
        self.ring
            .index_of(name)
            .map(|i| self.gen(i))
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(&self.ring)
    }

    pub fn one(&self) -> Poly {
        Poly::one(&self.ring)
    }

    pub fn constant(&self, c: Scalar) -> Poly {
        Poly::constant(&self.ring, c)
    }

    pub fn is_normal(&self, m: &Monomial) -> bool {
        m.0.iter()
            .zip(&self.rules)
            .all(|(&e, r)| r.as_ref().is_none_or(|r| e < r.power))
    }

    /// Unique normal form modulo the rules.
    pub fn nf(&self, p: &Poly) -> Poly {
        assert!(same_ring(p.ring(), &self.ring), "nf: polynomial from another ring");
        if self.rules.iter().all(Option::is_none) {
            return p.clone();
        }
        let f = self.field().clone();
        let mut work = p.clone();
        let mut out = Poly::zero(&self.ring);
        while let Some((m, c)) = work.pop_leading() {
            let hit = m
                .0
                .iter()
                .zip(&self.rules)
                .enumerate()
                .find_map(|(i, (&e, r))| r.as_ref().filter(|r| e >= r.power).map(|r| (i, r)));
            match hit {
                None => out.add_term(m, c),
                Some((i, r)) => {
                    let mut rest = m.0.clone();
                    rest[i] -= r.power;
                    work.add_scaled(&r.rhs.mul_term(&Monomial(rest), &f.one()), &c);
                }
            }
        }
        out
    }

    /// Normal form of a polynomial from another ring whose variables are
    /// generators of this algebra (matched by name).
    pub fn import(&self, p: &Poly) -> Result<Poly> {
        if same_ring(p.ring(), &self.ring) {
            return Ok(self.nf(p));
        }
        if p.field() != self.field() {
            return Err(Error::FieldMismatch);
        }
        let map = p
            .ring()
            .vars
            .iter()
            .map(|v| self.ring.index_of(v).ok_or_else(|| Error::UnknownVariable(v.clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.nf(&p.rename(&self.ring, &map)))
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.nf(&(a * b))
    }

    pub fn pow(&self, a: &Poly, e: u32) -> Poly {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = e;
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

    /// Substitutes `images[i]` (elements of `self`) for variable `i` of the
    /// polynomial `p` (from any ring with `images.len()` variables).
    pub fn substitute(&self, p: &Poly, images: &[Poly]) -> Poly {
        assert_eq!(p.ring().nvars(), images.len(), "substitute: arity mismatch");
        let mut cache: Vec<Vec<Poly>> = images.iter().map(|_| Vec::new()).collect();
        let mut out = self.zero();
        let to_target = |c: &Scalar| c.clone();
        for (m, c) in p.terms() {
            let mut t = self.constant(to_target(c));
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let powers = &mut cache[i];
                if powers.is_empty() {
                    powers.push(self.one());
                }
                while powers.len() <= e as usize {
                    let next = self.mul(powers.last().unwrap(), &images[i]);
                    powers.push(next);
                }
                t = self.mul(&t, &powers[e as usize]);
                if t.is_zero() {
                    break;
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Whether every generator has a rule, so the algebra is finite-dimensional.
    pub fn is_finite(&self) -> bool {
        self.rules.iter().all(Option::is_some)
    }

    /// Normal monomials, when finitely many.
    pub fn basis(&self) -> Option<Vec<Monomial>> {
        if !self.is_finite() {
            return None;
        }
        let bounds: Vec<u32> = self.rules.iter().map(|r| r.as_ref().unwrap().power).collect();
        let mut out = vec![Monomial(Vec::new())];
        for &b in &bounds {
            let mut next = Vec::with_capacity(out.len() * b as usize);
            for m in &out {
                for e in 0..b {
                    let mut v = m.0.clone();
                    v.push(e);
                    next.push(Monomial(v));
                }
            }
            out = next;
        }
        out.sort();
        Some(out)
    }

    pub fn dim(&self) -> Option<usize> {
        self.basis().map(|b| b.len())
    }

    /// Normal monomials of weighted degree exactly `d`.
    pub fn normal_monomials_of_degree(&self, d: u32, weights: &[u32]) -> Vec<Monomial> {
        let n = self.ngens();
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        self.enumerate_degree(0, d, weights, &mut cur, &mut out);
        out.sort();
        out
    }

    fn enumerate_degree(&self, i: usize, left: u32, w: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == cur.len() {
            if left == 0 {
                out.push(Monomial(cur.clone()));
            }
            return;
        }
        let cap = self.rules[i].as_ref().map(|r| r.power - 1).unwrap_or(u32::MAX);
        let mut e = 0;
        while e <= cap && e * w[i] <= left {
            cur[i] = e;
            self.enumerate_degree(i + 1, left - e * w[i], w, cur, out);
            e += 1;
        }
        cur[i] = 0;
    }

    /// Normal monomials of weighted degree at most `d`, in increasing order.
    pub fn normal_monomials_up_to(&self, d: u32, weights: &[u32]) -> Vec<Monomial> {
        let mut out: Vec<Monomial> = (0..=d)
            .flat_map(|k| self.normal_monomials_of_degree(k, weights))
            .collect();
        out.sort();
        out
    }

    /// `A_1 ⊗ … ⊗ A_n`; generator `g` of slot `s` is named `g(s+1)`.
    pub fn tensor(factors: &[&AlgebraPres]) -> Result<AlgebraPres> {
        let field = match factors.first() {
            Some(a) => a.field().clone(),
            None => return Err(Error::BadParameters("empty tensor product".into())),
        };
        if factors.iter().any(|a| *a.field() != field) {
            return Err(Error::FieldMismatch);
        }
        let names: Vec<String> = factors
            .iter()
            .enumerate()
            .flat_map(|(s, a)| a.gen_names().iter().map(move |g| format!("{g}({})", s + 1)))
            .collect();
        let ring = PolyRing::new(field, names);
        let mut rules = Vec::with_capacity(ring.nvars());
        let mut offset = 0;
        for a in factors {
            let map: Vec<usize> = (offset..offset + a.ngens()).collect();
            for r in &a.rules {
                rules.push(r.as_ref().map(|r| Rule {
                    power: r.power,
                    rhs: r.rhs.rename(&ring, &map),
                }));
            }
            offset += a.ngens();
        }
        let grading = if factors.iter().all(|a| a.grading.is_some()) {
            Some(factors.iter().flat_map(|a| a.grading.clone().unwrap()).collect())
        } else {
            None
        };
        AlgebraPres::new(ring, rules, grading)
    }

    pub fn tensor_power(&self, n: usize) -> AlgebraPres {
        let factors: Vec<&AlgebraPres> = std::iter::repeat_n(self, n).collect();
        if n == 0 {
            return AlgebraPres::point(self.field());
        }
        AlgebraPres::tensor(&factors).expect("tensor power of a valid presentation")
    }

    /// Same generators and relations with every generator renamed.
    pub fn renamed(&self, names: Vec<String>) -> AlgebraPres {
        let ring = PolyRing::new(self.field().clone(), names);
        let id: Vec<usize> = (0..self.ngens()).collect();
        AlgebraPres {
            rules: self
                .rules
                .iter()
                .map(|r| r.as_ref().map(|r| Rule { power: r.power, rhs: r.rhs.rename(&ring, &id) }))
                .collect(),
            ring,
            grading: self.grading.clone(),
        }
    }

    /// Coordinates of a normal form in the monomial basis.
    pub fn coords(&self, p: &Poly, basis: &[Monomial]) -> Vec<Scalar> {
        let p = self.nf(p);
        basis.iter().map(|m| p.coefficient(m)).collect()
    }

    pub fn from_coords(&self, c: &[Scalar], basis: &[Monomial]) -> Poly {
        Poly::from_terms(&self.ring, basis.iter().cloned().zip(c.iter().cloned()))
    }
}

impl fmt::Display for AlgebraPres {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field(), self.gen_names().join(", "))?;
        let rels: Vec<String> = self
            .rules
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.as_ref().map(|r| format!("{}^{} = {}", self.gen_name(i), r.power, r.rhs)))
            .collect();
        if !rels.is_empty() {
            write!(f, "/({})", rels.join(", "))?;
        }
        Ok(())
    }
}

/// `tensor_pres(A, B)`: generators of `A` tagged `(1)`, of `B` tagged `(2)`.
pub fn tensor_pres(a: &AlgebraPres, b: &AlgebraPres) -> Result<AlgebraPres> {
    AlgebraPres::tensor(&[a, b])
}

/// An algebra homomorphism given by the images of the source generators.
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    pub name: String,
    pub source: Algebra,
    pub target: Algebra,
    pub images: Vec<Poly>,
}

impl AlgebraMap {
    /// Validates that every source relation maps to zero.
    pub fn new(name: &str, source: Algebra, target: Algebra, images: Vec<Poly>) -> Result<Self> {
        if images.len() != source.ngens() {
            return Err(Error::DimensionMismatch {
                expected: source.ngens(),
                found: images.len(),
            });
        }
        let images = images
            .iter()
            .map(|p| target.import(p))
            .collect::<Result<Vec<_>>>()?;
        let map = AlgebraMap {
            name: name.to_string(),
            source,
            target,
            images,
        };
        map.check_relations()?;
        Ok(map)
    }

    pub fn check_relations(&self) -> Result<()> {
        for (_, rel) in self.source.relations() {
            let residue = self.target.substitute(&rel, &self.images);
            if !residue.is_zero() {
                return Err(Error::RelationNotRespected {
                    map: self.name.clone(),
                    relation: format!("{rel} = 0"),
                    residue: residue.to_string(),
                });
            }
        }
        Ok(())
    }

    /// `φ(x)`: substitute generator images, then reduce in the target.
    pub fn apply(&self, x: &Poly) -> Result<Poly> {
        let x = self.source.import(x)?;
        Ok(self.target.substitute(&x, &self.images))
    }

    pub fn compose(&self, after: &AlgebraMap) -> AlgebraMap {
        AlgebraMap {
            name: format!("{}∘{}", after.name, self.name),
            source: self.source.clone(),
            target: after.target.clone(),
            images: self.images.iter().map(|p| after.target.substitute(p, &after.images)).collect(),
        }
    }
}

/// Evaluates a presentation-free polynomial identity `a == b` after
/// normalising in `alg`; returns the difference when they differ.
pub fn difference(alg: &AlgebraPres, a: &Poly, b: &Poly) -> Option<Poly> {
    let d = alg.nf(&(a - b));
    (!d.is_zero()).then_some(d)
}

/// A finite-dimensional commutative algebra given by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinAlgebra {
    field: Field,
    names: Vec<String>,
    /// `table[i][j]` = coordinates of `b_i · b_j`.
    table: Vec<Vec<Vec<Scalar>>>,
    unit: Vec<Scalar>,
}

impl FinAlgebra {
    /// Validates associativity, commutativity and the unit exhaustively.
    pub fn new(field: Field, names: Vec<String>, table: Vec<Vec<Vec<Scalar>>>, unit: Vec<Scalar>) -> Result<Self> {
        let m = names.len();
        let shape_ok = table.len() == m
            && table.iter().all(|row| row.len() == m && row.iter().all(|v| v.len() == m))
            && unit.len() == m;
        if !shape_ok {
            return Err(Error::InvalidAlgebra("structure constants have the wrong shape".into()));
        }
        let alg = FinAlgebra { field, names, table, unit };
        let basis: Vec<Vec<Scalar>> = (0..m).map(|i| alg.basis_vector(i)).collect();
        for i in 0..m {
            if alg.mul(&alg.unit, &basis[i]) != basis[i] {
                return Err(Error::InvalidAlgebra(format!("unit fails on {}", alg.names[i])));
            }
            for j in 0..m {
                if alg.table[i][j] != alg.table[j][i] {
                    return Err(Error::InvalidAlgebra(format!(
                        "not commutative on ({}, {})",
                        alg.names[i], alg.names[j]
                    )));
                }
                for k in 0..m {
                    let l = alg.mul(&alg.table[i][j], &basis[k]);
                    let r = alg.mul(&basis[i], &alg.table[j][k]);
                    if l != r {
                        return Err(Error::InvalidAlgebra(format!(
                            "not associative on ({}, {}, {})",
                            alg.names[i], alg.names[j], alg.names[k]
                        )));
                    }
                }
            }
        }
        Ok(alg)
    }

    /// The algebra of all functions on a finite field, basis of point
    /// indicators `δ_a`.
    pub fn functions_on(field: &Field) -> Result<Self> {
        let pts = field.elements().ok_or(Error::InfiniteField)?;
        let m = pts.len();
        let (z, o) = (field.zero(), field.one());
        let table = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| (0..m).map(|k| if i == j && j == k { o.clone() } else { z.clone() }).collect())
                    .collect()
            })
            .collect();
        let names = pts.iter().map(|a| format!("δ{}", field.format(a))).collect();
        FinAlgebra::new(field.clone(), names, table, vec![o; m])
    }

    /// The finite algebra of a presentation whose generators all have rules.
    pub fn from_pres(pres: &AlgebraPres) -> Option<Self> {
        let basis = pres.basis()?;
        let m = basis.len();
        let idx: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, b)| (b, i)).collect();
        let field = pres.field().clone();
        let mut table = vec![vec![vec![field.zero(); m]; m]; m];
        for i in 0..m {
            for j in i..m {
                let prod = pres.nf(&Poly::monomial(pres.ring(), basis[i].mul(&basis[j]), field.one()));
                let mut v = vec![field.zero(); m];
                for (mono, c) in prod.terms() {
                    v[idx[mono]] = c.clone();
                }
                table[i][j] = v.clone();
                table[j][i] = v;
            }
        }
        let names = basis
            .iter()
            .map(|b| Poly::monomial(pres.ring(), b.clone(), field.one()).to_string())
            .collect();
        let mut unit = vec![field.zero(); m];
        unit[idx[&Monomial::one(pres.ngens())]] = field.one();
        Some(FinAlgebra { field, names, table, unit })
    }

    /// `A/(generators)^n` for a presentation without relations.
    pub fn truncation(pres: &AlgebraPres, n: u32) -> Result<Self> {
        if pres.rules().iter().any(Option::is_some) {
            return Err(Error::BadParameters("truncation needs a relation-free presentation".into()));
        }
        let ones = vec![1; pres.ngens()];
        let mut trunc = AlgebraPres::free_owned(pres.field(), pres.gen_names().to_vec());
        // x_i^n = 0 keeps the basis finite; monomials of total degree >= n are dropped below.
        for i in 0..pres.ngens() {
            let rel = Poly::monomial(pres.ring(), Monomial::var(pres.ngens(), i, n), pres.field().one());
            let rel = trunc.import(&rel)?;
            trunc = trunc.with_relation(&rel)?;
        }
        let basis: Vec<Monomial> = trunc.normal_monomials_up_to(n - 1, &ones);
        let m = basis.len();
        let idx: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, b)| (b, i)).collect();
        let field = pres.field().clone();
        let mut table = vec![vec![vec![field.zero(); m]; m]; m];
        for i in 0..m {
            for j in 0..m {
                let prod = basis[i].mul(&basis[j]);
                if let Some(&k) = idx.get(&prod) {
                    table[i][j][k] = field.one();
                }
            }
        }
        let names = basis
            .iter()
            .map(|b| Poly::monomial(pres.ring(), b.clone(), field.one()).to_string())
            .collect();
        let mut unit = vec![field.zero(); m];
        unit[idx[&Monomial::one(pres.ngens())]] = field.one();
        FinAlgebra::new(field, names, table, unit)
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

    pub fn zero_vector(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = self.zero_vector();
        v[i] = self.field.one();
        v
    }

    pub fn add(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        a.iter().zip(b).map(|(x, y)| self.field.add(x, y)).collect()
    }

    pub fn scale(&self, c: &Scalar, a: &[Scalar]) -> Vec<Scalar> {
        a.iter().map(|x| self.field.mul(c, x)).collect()
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let f = &self.field;
        let mut out = self.zero_vector();
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if f.is_zero(y) {
                    continue;
                }
                let c = f.mul(x, y);
                for (k, t) in self.table[i][j].iter().enumerate() {
                    if !f.is_zero(t) {
                        out[k] = f.add(&out[k], &f.mul(&c, t));
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self, a: &[Scalar]) -> bool {
        a.iter().all(|x| self.field.is_zero(x))
    }

    /// Every element, for a finite field and `q^dim <= cap`.
    pub fn elements(&self, cap: u64) -> Result<Vec<Vec<Scalar>>> {
        let pts = self.field.elements().ok_or(Error::InfiniteField)?;
        let q = pts.len() as u64;
        let total = q
            .checked_pow(self.dim() as u32)
            .filter(|&t| t <= cap)
            .ok_or_else(|| Error::TooLarge(format!("{q}^{} elements", self.dim())))?;
        Ok((0..total)
            .map(|mut code| {
                (0..self.dim())
                    .map(|_| {
                        let d = (code % q) as usize;
                        code /= q;
                        pts[d].clone()
                    })
                    .collect()
            })
            .collect())
    }

    /// Evaluates a polynomial at a point given by one element per variable.
    pub fn eval(&self, p: &Poly, point: &[Vec<Scalar>]) -> Vec<Scalar> {
        let mut out = self.zero_vector();
        let mut cache: Vec<Vec<Vec<Scalar>>> = point.iter().map(|x| vec![self.unit.clone(), x.clone()]).collect();
        for (m, c) in p.terms() {
            let mut t = self.scale(c, &self.unit);
            for (i, &e) in m.0.iter().enumerate() {
                while cache[i].len() <= e as usize {
                    let next = self.mul(cache[i].last().unwrap(), &point[i]);
                    cache[i].push(next);
                }
                if e > 0 {
                    t = self.mul(&t, &cache[i][e as usize]);
                }
            }
            out = self.add(&out, &t);
        }
        out
    }

    pub fn format(&self, a: &[Scalar]) -> String {
        let parts: Vec<String> = a
            .iter()
            .zip(&self.names)
            .filter(|(c, _)| !self.field.is_zero(c))
            .map(|(c, n)| {
                if self.field.is_one(c) {
                    n.clone()
                } else {
                    format!("{}*{}", self.field.format(c), n)
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fp(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    fn truncated_poly(field: &Field, p: u32) -> AlgebraPres {
        let a = AlgebraPres::free(field, &["e"]);
        let rel = a.gen(0).pow(p);
        a.with_relation(&rel).unwrap()
    }

    #[test]
    fn nf_examples() {
        let f3 = fp(3);
        let alpha = truncated_poly(&f3, 3);
        assert!(alpha.nf(&alpha.gen(0).pow(3)).is_zero());
        let mu = AlgebraPres::free(&f3, &["x"]);
        let rel = &mu.gen(0).pow(3) - &mu.one();
        let mu = mu.with_relation(&rel).unwrap();
        assert_eq!(mu.nf(&mu.gen(0).pow(3)), mu.one());
        assert_eq!(mu.nf(&mu.gen(0).pow(7)), mu.gen(0));
        let free = AlgebraPres::free(&Field::rationals(), &["x", "y"]);
        let p = &free.gen(0).pow(5) + &free.gen(1);
        assert_eq!(free.nf(&p), p);
    }

    #[test]
    fn unknown_variable_is_reported() {
        let a = AlgebraPres::free(&Field::rationals(), &["e"]);
        let b = AlgebraPres::free(&Field::rationals(), &["z"]);
        assert_eq!(a.import(&b.gen(0)), Err(Error::UnknownVariable("z".into())));
    }

    #[test]
    fn non_triangular_relations_rejected() {
        let a = AlgebraPres::free(&Field::rationals(), &["x", "y"]);
        let rel = &a.gen(0) * &a.gen(1);
        assert!(matches!(a.with_relation(&rel), Err(Error::NotTriangular(_))));
        // grading must be respected
        let b = AlgebraPres::free(&Field::rationals(), &["x"]).with_grading(vec![1]).unwrap();
        let rel = &b.gen(0).pow(2) - &b.one();
        assert!(b.with_relation(&rel).is_err());
    }

    #[test]
    fn tensor_examples() {
        let q = Field::rationals();
        let k = AlgebraPres::free(&q, &["e"]);
        let kk = tensor_pres(&k, &k).unwrap();
        assert_eq!(kk.gen_names(), &["e(1)".to_string(), "e(2)".to_string()]);
        assert!(kk.relations().is_empty());
        let f2 = fp(2);
        let a = truncated_poly(&f2, 2);
        let aa = tensor_pres(&a, &a).unwrap();
        assert_eq!(aa.relations().len(), 2);
        let two = AlgebraPres::free(&q, &["x", "y"]);
        assert_eq!(two.tensor_power(3).ngens(), 6);
        assert!(matches!(tensor_pres(&k, &a), Err(Error::FieldMismatch)));
    }

    #[test]
    fn tensor_is_associative_up_to_renaming() {
        let f3 = fp(3);
        let a = truncated_poly(&f3, 3);
        let b = AlgebraPres::free(&f3, &["y"]);
        let ab_c = AlgebraPres::tensor(&[&tensor_pres(&a, &b).unwrap(), &a]).unwrap();
        let a_bc = AlgebraPres::tensor(&[&a, &tensor_pres(&b, &a).unwrap()]).unwrap();
        let flat = AlgebraPres::tensor(&[&a, &b, &a]).unwrap();
        let ones = vec![1; 3];
        // identical normal monomials and rules under the positional renaming
        assert_eq!(ab_c.renamed(flat.gen_names().to_vec()), flat);
        assert_eq!(a_bc.renamed(flat.gen_names().to_vec()), flat);
        assert_eq!(ab_c.normal_monomials_up_to(4, &ones), flat.normal_monomials_up_to(4, &ones));
    }

    #[test]
    fn algebra_map_checks_relations() {
        let f2 = fp(2);
        let a: Algebra = Arc::new(truncated_poly(&f2, 2));
        let free: Algebra = Arc::new(AlgebraPres::free(&f2, &["t"]));
        // e ↦ t does not send e^2 to 0 in k[t]
        assert!(matches!(
            AlgebraMap::new("bad", a.clone(), free.clone(), vec![free.gen(0)]),
            Err(Error::RelationNotRespected { .. })
        ));
        let ok = AlgebraMap::new("ok", a.clone(), a.clone(), vec![a.zero()]).unwrap();
        assert!(ok.apply(&a.gen(0)).unwrap().is_zero());
    }

    #[test]
    fn fin_algebra_from_presentation() {
        let f2 = fp(2);
        let a = AlgebraPres::free(&f2, &["t"]);
        let rel = &a.gen(0).pow(2) - &a.gen(0);
        let a = a.with_relation(&rel).unwrap();
        let fa = FinAlgebra::from_pres(&a).unwrap();
        assert_eq!(fa.dim(), 2);
        assert!(FinAlgebra::functions_on(&Field::rationals()).is_err());
        let bad = FinAlgebra::new(
            f2.clone(),
            vec!["1".into(), "x".into()],
            vec![
                vec![vec![Scalar::Fin(1), Scalar::Fin(0)], vec![Scalar::Fin(0), Scalar::Fin(1)]],
                vec![vec![Scalar::Fin(0), Scalar::Fin(0)], vec![Scalar::Fin(0), Scalar::Fin(0)]],
            ],
            vec![Scalar::Fin(1), Scalar::Fin(0)],
        );
        assert!(bad.is_err(), "1·x = x but x·1 = 0 is not commutative");
    }

    fn arb_poly(ring: Arc<PolyRing>) -> impl Strategy<Value = Poly> {
        proptest::collection::vec(((0u32..5, 0u32..5), -3i64..4), 0..6).prop_map(move |terms| {
            let mut p = Poly::zero(&ring);
            for ((a, b), c) in terms {
                p.add_term(Monomial(vec![a, b]), ring.field.from_i64(c));
            }
            p
        })
    }

    fn sample_algebra() -> AlgebraPres {
        let f5 = fp(5);
        let a = AlgebraPres::free(&f5, &["x", "y"]);
        let r1 = &(&a.gen(0).pow(3) - &a.gen(1)) - &a.one();
        let a = a.with_relation(&r1).unwrap();
        let r2 = &a.gen(1).pow(2) - &a.gen(1).scale(&Scalar::Fin(2));
        a.with_relation(&r2).unwrap()
    }

    proptest! {
        #[test]
        fn nf_is_a_ring_homomorphism(
            a in arb_poly(sample_algebra().ring().clone()),
            b in arb_poly(sample_algebra().ring().clone()),
        ) {
            let alg = sample_algebra();
            let a = alg.import(&a).unwrap();
            let b = alg.import(&b).unwrap();
            let na = alg.nf(&a);
            prop_assert_eq!(alg.nf(&na), na.clone());
            prop_assert_eq!(alg.nf(&(&a * &b)), alg.nf(&(&na * &alg.nf(&b))));
            prop_assert_eq!(alg.nf(&(&a + &b)), alg.nf(&(&na + &alg.nf(&b))));
        }
    }
}
