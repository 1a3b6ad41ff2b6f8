use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use plethory_core::biring::{HopfAlgebra, Report as CoreReport};
use plethory_core::compose::{Odot, Plethory};
use plethory_core::linalg::Matrix;
use plethory_core::structure::{frobenius_hopf, linearize, mult_by_n, prim_fmodule, primitives, verschiebung, HopfMap};
use plethory_core::{Error, Poly};

use crate::env::{action_witness, digest, load, Input, InputError, Object};
use crate::report::{Record, Report};

#[derive(Parser, Debug)]
#[command(name = "plethory", version, about = "Exact checks for birings, Hopf algebras and plethories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Degree bound for graded verdicts.
    #[arg(long, global = true, default_value_t = 4)]
    degree: u32,
    /// Write the machine-readable report here.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Field descriptor overriding the input's field.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Object to use from a DSL file (default: last plethory, else last object).
    #[arg(long, global = true)]
    object: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check biring, Hopf algebra or plethory axioms.
    Check { input: String },
    /// Primitive elements within the degree bound.
    Prim { input: String },
    /// Compare a plethory with the free plethory on its primitives.
    Linearize { input: String },
    /// The composition product `A ⊙ B` of two birings.
    Compose { left: String, right: String },
    /// Check the action of a plethory on the last ring block of a file.
    Act { plethory: String, ring: String },
    /// The Verschiebung and its relation to Frobenius.
    Versch { input: String },
    /// Number of connected components.
    Pi0 { input: String },
    /// Run the task directives of a file (a corpus name runs `check`).
    Report { input: String },
    /// Print a DSL file in canonical form.
    Fmt { input: String },
}

#[derive(Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

type Out = Result<Vec<Record>, InputError>;

fn is_mathematical(e: &Error) -> bool {
    matches!(
        e,
        Error::AxiomViolation { .. }
            | Error::RelationNotRespected { .. }
            | Error::NotBiringMap(_)
            | Error::NotAssociative { .. }
            | Error::UnitLawFails(_)
            | Error::InvalidAction(_)
            | Error::ComultiplicationEscapesPrim(_)
            | Error::PlethysmEscapesPrim(_)
            | Error::VerschiebungNonzero { .. }
            | Error::InvalidBialgebra(_)
    )
}

/// A mathematical failure becomes a failing record; anything else is an
/// input error.
fn failure(name: &str, object: &str, e: Error) -> Out {
    if is_mathematical(&e) {
        Ok(vec![Record::check(name, object, false).with_witness(e.to_string())])
    } else {
        Err(InputError(format!("{object}: {e}")))
    }
}

fn from_core(r: &CoreReport, object: &str, prefix: &str) -> Vec<Record> {
    r.records
        .iter()
        .map(|c| {
            let rec = Record::check(format!("{prefix}{} [{}]", c.axiom, c.generator), object, c.passed());
            match &c.witness {
                Some(w) => rec.with_witness(w.clone()),
                None => rec,
            }
        })
        .collect()
}

fn check(name: &str, obj: &Object) -> Out {
    Ok(match obj {
        Object::Hopf(h) => from_core(&h.check(), name, ""),
        Object::Biring(b) => from_core(&b.check(), name, ""),
        Object::Plethory(Ok(p)) => {
            let mut out = from_core(&p.biring().check(), name, "");
            out.push(Record::check("plethory laws", name, true));
            out
        }
        Object::Plethory(Err(e)) => return failure("plethory laws", name, e.clone()),
    })
}

/// The object if its axioms hold, else the failing check records.
fn valid<'a>(name: &str, obj: &'a Object) -> Result<Result<&'a HopfAlgebra, Vec<Record>>, InputError> {
    let records = check(name, obj)?;
    if records.iter().any(|r| r.verdict == crate::report::Verdict::Fail) {
        return Ok(Err(records.into_iter().filter(|r| r.verdict == crate::report::Verdict::Fail).collect()));
    }
    Ok(Ok(obj.hopf().expect("valid objects carry a Hopf algebra")))
}

fn plethory<'a>(name: &str, obj: &'a Object) -> Result<&'a Plethory, InputError> {
    match obj {
        Object::Plethory(Ok(p)) => Ok(p),
        _ => Err(InputError(format!("{name} is not a plethory"))),
    }
}

fn combination(prims: &[Poly], v: &[plethory_core::Scalar], zero: Poly) -> Poly {
    prims.iter().zip(v).fold(zero, |acc, (p, c)| &acc + &p.scale(c))
}

fn prim(name: &str, obj: &Object, bound: u32) -> Out {
    let h = match valid(name, obj)? {
        Ok(h) => h,
        Err(fail) => return Ok(fail),
    };
    let ps = primitives(h, bound).map_err(|e| InputError(format!("{name}: {e}")))?;
    let listed: Vec<String> = ps.iter().map(Poly::to_string).collect();
    let span = if listed.is_empty() { "0".to_string() } else { listed.join(", ") };
    let mut out = vec![Record::info("primitives", name, span).with_bound(Some(bound))];
    if h.field().characteristic() != 0 {
        let (ps, m) = match prim_fmodule(h, bound) {
            Ok(x) => x,
            Err(e) => return failure("F on primitives", name, e),
        };
        let zero = h.carrier().zero();
        let images: Vec<String> = ps
            .iter()
            .zip(&m.action)
            .map(|(p, v)| match v {
                Some(v) => format!("F({p}) = {}", combination(&ps, v, zero.clone())),
                None => format!("F({p}) beyond the bound"),
            })
            .collect();
        out.push(Record::info("F on primitives", name, images.join("; ")).with_bound(Some(bound)));
    }
    Ok(out)
}

fn linearize_task(name: &str, obj: &Object, bound: u32) -> Out {
    if let Err(fail) = valid(name, obj)? {
        return Ok(fail);
    }
    let q = plethory(name, obj)?;
    let lin = match linearize(q, bound) {
        Ok(l) => l,
        Err(e) => return failure("linearization", name, e),
    };
    let mut out = from_core(&lin.map_report, name, "linearization map: ");
    let describe = |inj: bool, sur: bool| match (inj, sur) {
        (true, true) => "isomorphism".to_string(),
        (i, s) => format!("injective: {i}, surjective: {s}"),
    };
    for d in &lin.degrees {
        out.push(
            Record::check(format!("degree {}", d.degree), name, d.injective && d.surjective)
                .with_witness(describe(d.injective, d.surjective)),
        );
    }
    if let Some(plain) = &lin.plain {
        for d in plain {
            out.push(Record::info(format!("plain Sym degree {}", d.degree), name, describe(d.injective, d.surjective)));
        }
    }
    let ok = lin.is_isomorphism();
    let summary = match lin.degrees.iter().find(|d| !(d.injective && d.surjective)) {
        None => format!("isomorphism through degree {bound}"),
        Some(d) => format!("not an isomorphism in degree {}", d.degree),
    };
    out.push(Record::check("linearization", name, ok).with_witness(summary).with_bound(Some(bound)));
    Ok(out)
}

fn same_images(h: &HopfAlgebra, x: &HopfMap, y: &HopfMap) -> bool {
    let a = h.carrier();
    x.images.iter().zip(&y.images).all(|(u, v)| a.nf(u) == a.nf(v))
}

/// The largest set of generators spanning a finite sub-Hopf algebra on
/// which `v` is bijective.
fn invertible_factor(h: &HopfAlgebra, v: &HopfMap) -> Option<Vec<usize>> {
    let a = h.carrier();
    let basis = a.basis()?;
    let n = a.ngens();
    if n > 12 {
        return None;
    }
    let mut masks: Vec<u32> = (1..(1u32 << n)).collect();
    masks.sort_by_key(|m| (std::cmp::Reverse(m.count_ones()), *m));
    let inside = |p: &Poly, mask: u32, width: usize| p.support_vars().iter().all(|&i| mask >> (i % width) & 1 == 1);
    for mask in masks {
        let closed = (0..n).filter(|i| mask >> i & 1 == 1).all(|i| {
            let rule_ok = a.rules()[i].as_ref().map_or(true, |r| inside(&r.rhs, mask, n));
            rule_ok && inside(&h.coadd()[i], mask, n) && inside(&v.images[i], mask, n)
        });
        if !closed {
            continue;
        }
        let sub: Vec<usize> = (0..basis.len())
            .filter(|&k| basis[k].0.iter().enumerate().all(|(i, &e)| e == 0 || mask >> i & 1 == 1))
            .collect();
        let cols: Vec<Vec<_>> = sub
            .iter()
            .map(|&k| {
                let img = v.apply(a, &Poly::monomial(a.ring(), basis[k].clone(), h.field().one())).ok()?;
                let c = a.coords(&img, &basis);
                Some(sub.iter().map(|&j| c[j].clone()).collect())
            })
            .collect::<Option<_>>()?;
        let m = Matrix::from_columns(h.field(), sub.len(), &cols).ok()?;
        if m.rank() == sub.len() {
            return Some((0..n).filter(|i| mask >> i & 1 == 1).collect());
        }
    }
    None
}

fn factor_name(h: &HopfAlgebra, gens: &[usize]) -> String {
    let a = h.carrier();
    let p = h.field().characteristic() as u32;
    if let [g] = gens {
        let t = h.tensor2();
        let (g1, g2) = (t.gen(*g), t.gen(a.ngens() + g));
        if let Some(rule) = &a.rules()[*g] {
            if rule.power == p && rule.rhs == a.one() && h.coadd()[*g] == &g1 * &g2 {
                return "μ_p".into();
            }
            if rule.power == p && rule.rhs.is_zero() && h.coadd()[*g] == &g1 + &g2 {
                return "α_p".into();
            }
        }
    }
    let names: Vec<&str> = gens.iter().map(|&i| a.gen_name(i)).collect();
    format!("⟨{}⟩", names.join(", "))
}

fn versch(name: &str, obj: &Object, bound: u32) -> Out {
    let h = match valid(name, obj)? {
        Ok(h) => h,
        Err(fail) => return Ok(fail),
    };
    let a = h.carrier();
    let p = h.field().characteristic();
    let v = verschiebung(h, bound).map_err(|e| InputError(format!("{name}: Verschiebung: {e}")))?;
    let mut out = Vec::new();
    for (i, img) in v.images.iter().enumerate() {
        out.push(Record::info(format!("V({})", a.gen_name(i)), name, img.to_string()).with_bound(Some(bound)));
    }
    match v.check(h) {
        Ok(r) => out.extend(from_core(&r, name, "")),
        Err(e) => out.extend(failure("V is a Hopf map", name, e)?),
    }
    let fr = frobenius_hopf(h).map_err(InputError::from)?;
    let n = mult_by_n(h, p as usize).map_err(InputError::from)?;
    let fv = fr.then(a, &v).map_err(InputError::from)?;
    let vf = v.then(a, &fr).map_err(InputError::from)?;
    out.push(Record::check("F∘V = [p]", name, same_images(h, &fv, &n)));
    out.push(Record::check("V∘F = [p]", name, same_images(h, &vf, &n)));
    let summary = if v.is_zero_map(h) {
        "V = 0".to_string()
    } else {
        match invertible_factor(h, &v) {
            Some(gens) if gens.len() == a.ngens() => "V is an isomorphism".to_string(),
            Some(gens) => format!("V is an isomorphism on {} factor", factor_name(h, &gens)),
            None => "V ≠ 0".to_string(),
        }
    };
    out.push(Record::new(summary, name, crate::report::Verdict::Info).with_bound(Some(bound)));
    Ok(out)
}

fn pi0(name: &str, obj: &Object) -> Out {
    let h = match valid(name, obj)? {
        Ok(h) => h,
        Err(fail) => return Ok(fail),
    };
    let r = h.pi0_rank().map_err(|e| InputError(format!("{name}: π0 needs a finite carrier ({e})")))?;
    Ok(vec![Record::info("pi0", name, r.to_string())])
}

fn task(command: &str, name: &str, obj: &Object, bound: u32) -> Out {
    match command {
        "check" => check(name, obj),
        "prim" => prim(name, obj, bound),
        "linearize" => linearize_task(name, obj, bound),
        "versch" => versch(name, obj, bound),
        "pi0" => pi0(name, obj),
        other => Err(InputError(format!("unknown task `{other}`"))),
    }
}

fn compose(left: &Input, right: &Input, object: Option<&str>) -> Out {
    let (na, oa) = left.env.select(object)?;
    let (nb, ob) = right.env.select(None)?;
    let label = format!("{na}⊙{nb}");
    for (n, o) in [(na, oa), (nb, ob)] {
        if let Err(fail) = valid(n, o)? {
            return Ok(fail);
        }
    }
    let a = oa.biring().ok_or_else(|| InputError(format!("{na} is not a biring")))?;
    let b = ob.biring().ok_or_else(|| InputError(format!("{nb} is not a biring")))?;
    let odot = Odot::new(a, b.carrier()).map_err(|e| InputError(format!("{label}: {e}")))?;
    let ab = match odot.biring(a, b) {
        Ok(x) => x,
        Err(e) => return failure("composition product", &label, e),
    };
    let mut out = vec![Record::info("carrier", &label, odot.carrier.to_string())];
    out.extend(from_core(&ab.check(), &label, ""));
    Ok(out)
}

fn act(p: &Input, r: &Input, object: Option<&str>) -> Out {
    let (name, obj) = p.env.select(object)?;
    if let Err(fail) = valid(name, obj)? {
        return Ok(fail);
    }
    let q = plethory(name, obj)?;
    let ring = r.env.rings.last().ok_or_else(|| InputError(format!("{}: no ring block", r.label)))?;
    let label = format!("{name} on {}", ring.name);
    let w = action_witness(q, ring, &p.env.field)?;
    match q.check_action(&w) {
        Ok(()) => Ok(vec![Record::check("action", &label, true)]),
        Err(e) => failure("action", &label, e),
    }
}

fn report_tasks(input: &Input, cli: &Cli) -> Out {
    let tasks: Vec<_> = input
        .doc
        .iter()
        .flat_map(|d| d.items.iter())
        .filter_map(|i| match i {
            crate::dsl::Item::Task(t) => Some(t.clone()),
            _ => None,
        })
        .collect();
    if tasks.is_empty() {
        let (name, obj) = input.env.select(cli.object.as_deref())?;
        return check(name, obj);
    }
    let mut out = Vec::new();
    for t in tasks {
        let obj = input.env.get(&t.object).ok_or_else(|| InputError(format!("no object `{}`", t.object)))?;
        out.extend(task(&t.command, &t.object, obj, t.degree.unwrap_or(cli.degree))?);
    }
    Ok(out)
}

fn execute(cli: &Cli) -> Result<(Report, Option<String>), InputError> {
    let field = cli.field.as_deref();
    let single = |input: &str, command: &str| -> Result<Report, InputError> {
        let inp = load(input, field)?;
        let (name, obj) = inp.env.select(cli.object.as_deref())?;
        Ok(Report::new(digest(&[&inp]), task(command, name, obj, cli.degree)?))
    };
    let report = match &cli.command {
        Command::Check { input } => single(input, "check")?,
        Command::Prim { input } => single(input, "prim")?,
        Command::Linearize { input } => single(input, "linearize")?,
        Command::Versch { input } => single(input, "versch")?,
        Command::Pi0 { input } => single(input, "pi0")?,
        Command::Compose { left, right } => {
            let (l, r) = (load(left, field)?, load(right, field)?);
            Report::new(digest(&[&l, &r]), compose(&l, &r, cli.object.as_deref())?)
        }
        Command::Act { plethory, ring } => {
            let (p, r) = (load(plethory, field)?, load(ring, field)?);
            Report::new(digest(&[&p, &r]), act(&p, &r, cli.object.as_deref())?)
        }
        Command::Report { input } => {
            let inp = load(input, field)?;
            let r = Report::new(digest(&[&inp]), report_tasks(&inp, cli)?);
            let text = if cli.json.is_none() { Some(r.to_json()) } else { None };
            return Ok((r, text));
        }
        Command::Fmt { input } => {
            let inp = load(input, field)?;
            let doc = inp.doc.as_ref().ok_or_else(|| InputError("fmt needs a DSL file".into()))?;
            return Ok((Report::new(digest(&[&inp]), vec![]), Some(doc.to_string())));
        }
    };
    Ok((report, None))
}

/// Runs the command line `args` (program name first).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
        Ok((report, text)) => {
            if let Some(path) = &cli.json {
                if let Err(e) = std::fs::write(path, report.to_json()) {
                    return Outcome { code: 2, stdout: String::new(), stderr: format!("error: {}: {e}\n", path.display()) };
                }
            }
            let stdout = text.unwrap_or_else(|| report.to_string());
            Outcome { code: if report.passed() { 0 } else { 1 }, stdout, stderr: String::new() }
        }
    }
}
