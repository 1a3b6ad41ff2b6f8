//! Inputs resolved to library objects: DSL documents and `corpus:` names.

use std::sync::Arc;

use sha2::{Digest, Sha256};

use plethory_core::biring::{scalar_ring, Biring, BiringData, HopfAlgebra};
use plethory_core::compose::{ActionWitness, Plethory};
use plethory_core::corpus::{corpus_parse, CorpusObject};
use plethory_core::expr::Expr;
use plethory_core::{Algebra, AlgebraPres, Error, Field, Poly, PolyRing, Scalar};

use crate::dsl::{parse_dsl, BiringBlock, BlockKind, DslDocument, Item, MapKind, RingBlock};

/// Failure to read or interpret an input; exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

pub type InResult<T> = Result<T, InputError>;

#[derive(Debug)]
pub enum Object {
    /// Unvalidated; `check` reports the axioms.
    Hopf(HopfAlgebra),
    /// Unvalidated; `check` reports the axioms.
    Biring(Biring),
    /// A plethory block, or the first mathematical reason it is not one.
    Plethory(Result<Plethory, Error>),
}

impl Object {
    pub fn hopf(&self) -> Option<&HopfAlgebra> {
        match self {
            Object::Hopf(h) => Some(h),
            Object::Biring(b) => Some(b),
            Object::Plethory(Ok(p)) => Some(p.biring()),
            Object::Plethory(Err(_)) => None,
        }
    }

    pub fn biring(&self) -> Option<&Biring> {
        match self {
            Object::Biring(b) => Some(b),
            Object::Plethory(Ok(p)) => Some(p.biring()),
            _ => None,
        }
    }
}

#[derive(Debug)]
pub struct Env {
    pub field: Field,
    pub objects: Vec<(String, Object)>,
    pub rings: Vec<RingBlock>,
}

impl Env {
    pub fn get(&self, name: &str) -> Option<&Object> {
        self.objects.iter().find(|(n, _)| n == name).map(|(_, o)| o)
    }

    /// The named object, else the last plethory, else the last object.
    pub fn select(&self, name: Option<&str>) -> InResult<(&str, &Object)> {
        if let Some(n) = name {
            return self
                .objects
                .iter()
                .find(|(m, _)| m == n)
                .map(|(m, o)| (m.as_str(), o))
                .ok_or_else(|| InputError(format!("no object named `{n}`")));
        }
        self.objects
            .iter()
            .rev()
            .find(|(_, o)| matches!(o, Object::Plethory(_)))
            .or_else(|| self.objects.last())
            .map(|(m, o)| (m.as_str(), o))
            .ok_or_else(|| InputError("the input declares no objects".into()))
    }
}

#[derive(Debug)]
pub struct Input {
    pub label: String,
    pub bytes: Vec<u8>,
    pub doc: Option<DslDocument>,
    pub env: Env,
}

pub fn digest(inputs: &[&Input]) -> String {
    let mut h = Sha256::new();
    for i in inputs {
        h.update(i.label.as_bytes());
        h.update([0]);
        h.update(&i.bytes);
        h.update([0]);
    }
    hex::encode(h.finalize())
}

pub fn load(spec: &str, field_override: Option<&str>) -> InResult<Input> {
    let field = field_override.map(Field::parse_descriptor).transpose()?;
    if let Some(name) = spec.strip_prefix("corpus:") {
        let obj = corpus_parse(name, field.as_ref())?;
        let f = obj.hopf().field().clone();
        let label = match field_override {
            Some(d) => format!("{spec} --field {d}"),
            None => spec.to_string(),
        };
        let object = match obj {
            CorpusObject::Hopf(h) => Object::Hopf(h),
            CorpusObject::Biring(b) => Object::Biring(b),
            CorpusObject::Plethory(p) => Object::Plethory(Ok(p)),
        };
        let short = name.split('@').next().unwrap_or(name).to_string();
        return Ok(Input {
            bytes: label.clone().into_bytes(),
            label,
            doc: None,
            env: Env { field: f, objects: vec![(short, object)], rings: vec![] },
        });
    }
    let bytes = std::fs::read(spec).map_err(|e| InputError(format!("{spec}: {e}")))?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| InputError(format!("{spec}: not UTF-8")))?;
    let doc = parse_dsl(&text).map_err(|e| InputError(format!("{spec}:{e}")))?;
    let env = build(&doc, field)?;
    Ok(Input { label: spec.to_string(), bytes, doc: Some(doc), env })
}

fn resolver(field: &Field) -> impl Fn(&str) -> Option<Scalar> + '_ {
    move |name| (field.generator_name() == Some(name)).then(|| field.generator().unwrap())
}

pub fn eval(e: &Expr, ring: &Arc<PolyRing>, field: &Field, what: &str) -> InResult<Poly> {
    e.to_poly(ring, &resolver(field)).map_err(|err| InputError(format!("{what}: {err}")))
}

fn scalar(e: &Expr, field: &Field, what: &str) -> InResult<Scalar> {
    let point = AlgebraPres::point(field);
    eval(e, point.ring(), field, what)?
        .as_constant()
        .ok_or_else(|| InputError(format!("{what}: expected a constant")))
}

pub fn presentation(field: &Field, gens: &[String], rels: &[crate::dsl::Relation], what: &str) -> InResult<AlgebraPres> {
    let mut a = AlgebraPres::free_owned(field, gens.to_vec());
    for r in rels {
        let lhs = eval(&r.lhs, a.ring(), field, what)?;
        let rhs = eval(&r.rhs, a.ring(), field, what)?;
        a = a.with_relation(&(&lhs - &rhs)).map_err(|e| InputError(format!("{what}: {e}")))?;
    }
    Ok(a)
}

fn biring_object(field: &Field, b: &BiringBlock) -> InResult<Object> {
    let what = format!("{} {}", if b.kind == BlockKind::Hopf { "hopf" } else { "biring" }, b.name);
    let mut pres = presentation(field, &b.gens, &b.rels, &what)?;
    if let Some(w) = &b.grading {
        pres = pres.with_grading(w.clone()).map_err(|e| InputError(format!("{what}: {e}")))?;
    }
    let carrier: Algebra = Arc::new(pres);
    let t2 = carrier.tensor_power(2);
    let kc = scalar_ring(field);
    let kinds: Vec<MapKind> = MapKind::ALL.into_iter().filter(|k| b.kind == BlockKind::Biring || k.additive()).collect();
    let mut polys: Vec<Vec<Poly>> = vec![Vec::new(); MapKind::ALL.len()];
    let mut scalars: Vec<Vec<Scalar>> = vec![Vec::new(); MapKind::ALL.len()];
    for &k in &kinds {
        for g in &b.gens {
            let clause = b
                .maps
                .iter()
                .rev()
                .find(|m| m.kind == k && &m.gen == g)
                .ok_or_else(|| InputError(format!("{what}: missing `{} {g}`", k.keyword())))?;
            let w = format!("{what}, {} {g}", k.keyword());
            let slot = k as usize;
            match k {
                MapKind::Coadd | MapKind::Comul => polys[slot].push(eval(&clause.expr, t2.ring(), field, &w)?),
                MapKind::Antipode => polys[slot].push(eval(&clause.expr, carrier.ring(), field, &w)?),
                MapKind::Beta => polys[slot].push(eval(&clause.expr, kc.ring(), field, &w)?),
                MapKind::CounitAdd | MapKind::CounitMul => scalars[slot].push(scalar(&clause.expr, field, &w)?),
            }
        }
    }
    let take = |k: MapKind, p: &mut Vec<Vec<Poly>>| std::mem::take(&mut p[k as usize]);
    Ok(match b.kind {
        BlockKind::Hopf => Object::Hopf(HopfAlgebra::unchecked(
            &b.name,
            carrier,
            &take(MapKind::Coadd, &mut polys),
            std::mem::take(&mut scalars[MapKind::CounitAdd as usize]),
            &take(MapKind::Antipode, &mut polys),
        )?),
        BlockKind::Biring => Object::Biring(Biring::unchecked(BiringData {
            name: b.name.clone(),
            carrier,
            coadd: take(MapKind::Coadd, &mut polys),
            comul: take(MapKind::Comul, &mut polys),
            counit_add: std::mem::take(&mut scalars[MapKind::CounitAdd as usize]),
            counit_mul: std::mem::take(&mut scalars[MapKind::CounitMul as usize]),
            antipode: take(MapKind::Antipode, &mut polys),
            beta: take(MapKind::Beta, &mut polys),
        })?),
    })
}

pub fn build(doc: &DslDocument, field_override: Option<Field>) -> InResult<Env> {
    let field = match field_override {
        Some(f) => f,
        None => Field::parse_descriptor(&doc.field)?,
    };
    let mut env = Env { field: field.clone(), objects: Vec::new(), rings: Vec::new() };
    for item in &doc.items {
        match item {
            Item::Biring(b) => {
                let o = biring_object(&field, b)?;
                env.objects.push((b.name.clone(), o));
            }
            Item::Plethory(p) => {
                let what = format!("plethory {}", p.name);
                let base = match env.get(&p.base) {
                    Some(Object::Biring(b)) => b.clone(),
                    _ => return Err(InputError(format!("{what}: `{}` is not a biring", p.base))),
                };
                let a = base.carrier().clone();
                let names = a.gen_names().to_vec();
                let mut circ = Vec::new();
                for x in &names {
                    let mut row = Vec::new();
                    for y in &names {
                        let e = p
                            .circ
                            .iter()
                            .rev()
                            .find(|e| &e.left == x && &e.right == y)
                            .ok_or_else(|| InputError(format!("{what}: missing `circ {x} {y}`")))?;
                        row.push(eval(&e.expr, a.ring(), &field, &what)?);
                    }
                    circ.push(row);
                }
                let unit = p.unit.as_ref().ok_or_else(|| InputError(format!("{what}: missing `unit`")))?;
                let unit = eval(unit, a.ring(), &field, &what)?;
                let built = match base.check().first_error() {
                    Some(e) => Err(e),
                    None => Plethory::new(base, circ, &unit),
                };
                env.objects.push((p.name.clone(), Object::Plethory(built)));
            }
            Item::Ring(r) => env.rings.push(r.clone()),
            Item::Task(_) => {}
        }
    }
    Ok(env)
}

/// The action table of `ring` on the generators of `q`.
pub fn action_witness(q: &Plethory, ring: &RingBlock, field: &Field) -> InResult<ActionWitness> {
    let what = format!("ring {}", ring.name);
    let target: Algebra = Arc::new(presentation(field, &ring.gens, &ring.rels, &what)?);
    let names = q.carrier().gen_names().to_vec();
    let mut table = Vec::new();
    for x in &names {
        let mut row = Vec::new();
        for y in &ring.gens {
            let e = ring
                .acts
                .iter()
                .rev()
                .find(|e| &e.left == x && &e.right == y)
                .ok_or_else(|| InputError(format!("{what}: missing `act {x} {y}`")))?;
            row.push(eval(&e.expr, target.ring(), field, &what)?);
        }
        table.push(row);
    }
    Ok(ActionWitness { target, table })
}
