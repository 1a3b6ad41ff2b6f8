//! Acceptance criteria, one line each. Runs without the libtest harness so
//! every verdict is printed; exits nonzero if any criterion fails.

use std::collections::HashMap;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use plethory_core::biring::{Biring, BiringData, HopfAlgebra};
use plethory_core::compose::{adjunction_check, is_biring_isomorphism, unit_biring, Odot};
use plethory_core::corpus::{
    alpha_p, alpha_p_ring, corpus_make, dual_numbers, fun_plethory, ga, ghost_witt, ghost_witt_oracle, mu_p, mu_p_ring,
    witt_cocycle,
};
use plethory_core::expr::parse_poly;
use plethory_core::idempotent;
use plethory_core::linalg::Matrix;
use plethory_core::structure::{
    frobenius_hopf, linearize, mult_by_n, prim_fmodule, primitives, qq_ideal_check, sym_free, sym_p_free, sym_p_generators,
    sym_p_hopf, verschiebung, Bialgebra, FModule, HopfMap,
};
use plethory_core::{Algebra, AlgebraPres, Field, FinAlgebra, Poly};

type Verdict = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q() -> Field {
    Field::rationals()
}

fn fp(p: u64) -> Field {
    Field::finite(p).unwrap()
}

// 1

#[derive(Clone, Copy)]
enum Slot {
    Coadd,
    Comul,
    CounitAdd,
    CounitMul,
    Antipode,
    Beta,
}

fn mutate(b: &Biring, slot: Slot, i: usize, src: &str) -> Result<BiringData, String> {
    let mut d = b.data();
    let t2 = b.tensor2();
    let f = b.field().clone();
    let parse = |a: &AlgebraPres| parse_poly(a.ring(), src).map_err(|e| e.to_string());
    match slot {
        Slot::Coadd => d.coadd[i] = parse(&t2)?,
        Slot::Comul => d.comul[i] = parse(&t2)?,
        Slot::CounitAdd => d.counit_add[i] = f.from_i64(src.parse().map_err(|_| src.to_string())?),
        Slot::CounitMul => d.counit_mul[i] = f.from_i64(src.parse().map_err(|_| src.to_string())?),
        Slot::Antipode => d.antipode[i] = parse(b.carrier())?,
        Slot::Beta => d.beta[i] = parse(b.scalar_ring())?,
    }
    Ok(d)
}

fn axiom_suite() -> Verdict {
    let mut objects = 0;
    let mut push = |name: &str, field: &Field, n: Option<usize>| -> Result<(), String> {
        let o = corpus_make(name, field, n).map_err(|e| format!("{name}@{}: {e}", field.descriptor()))?;
        let r = match o.biring() {
            Some(b) => b.check(),
            None => o.hopf().check(),
        };
        ensure(r.passed(), || format!("{name}@{}:\n{r}", field.descriptor()))?;
        objects += 1;
        Ok(())
    };
    for name in ["ga", "dual_numbers"] {
        push(name, &q(), None)?;
    }
    for n in 1..=3 {
        push("ghost_witt", &q(), Some(n))?;
    }
    for qq in [2, 3, 4] {
        for name in ["ga", "alpha_p_ring", "fun_plethory", "witt_cocycle", "alpha_p", "mu_p", "dual_numbers"] {
            push(name, &fp(qq), None)?;
        }
    }
    for p in [2, 3] {
        push("mu_p_ring", &fp(p), None)?;
    }

    let ga_q = ga(&q()).unwrap();
    let dual_q = dual_numbers(&q()).unwrap();
    let alpha2 = alpha_p_ring(&fp(2)).unwrap();
    let ghost2 = ghost_witt(&q(), 2).unwrap();
    let mu3 = mu_p_ring(&fp(3)).unwrap();
    let mutations: [(&Biring, Slot, usize, &str); 20] = [
        (ga_q.biring(), Slot::Coadd, 0, "e(1) + 2*e(2)"),
        (ga_q.biring(), Slot::Comul, 0, "e(1)*e(2) + e(1)"),
        (ga_q.biring(), Slot::CounitAdd, 0, "1"),
        (ga_q.biring(), Slot::CounitMul, 0, "0"),
        (ga_q.biring(), Slot::Antipode, 0, "e"),
        (ga_q.biring(), Slot::Beta, 0, "c^2"),
        (ga_q.biring(), Slot::Beta, 0, "c + 1"),
        (&dual_q, Slot::Coadd, 1, "2*x(1) + x(2)"),
        (&dual_q, Slot::Comul, 1, "x(1)*e(2)"),
        (&dual_q, Slot::CounitMul, 1, "1"),
        (&dual_q, Slot::Antipode, 1, "x"),
        (&dual_q, Slot::Beta, 1, "c"),
        (&alpha2, Slot::Comul, 1, "t(1)*e(2)"),
        (&alpha2, Slot::Coadd, 0, "t(1) + t(2) + t(1)*t(2)"),
        (&alpha2, Slot::CounitAdd, 0, "1"),
        (&alpha2, Slot::Beta, 0, "0"),
        (&ghost2, Slot::Comul, 1, "w2(1)*w2(2) + w1(1)"),
        (&ghost2, Slot::Coadd, 1, "w2(1) + w2(2) + w1(1)*w1(2)"),
        (&mu3, Slot::Coadd, 1, "x(1) + x(2)"),
        (&mu3, Slot::CounitMul, 1, "0"),
    ];
    let mut rejected = 0;
    for (k, (b, slot, i, src)) in mutations.iter().enumerate() {
        let data = mutate(b, *slot, *i, src)?;
        let report = Biring::unchecked(data).map_err(|e| e.to_string())?.check();
        ensure(report.failures().any(|r| !r.relation), || format!("mutation {k} ({src}) not detected"))?;
        rejected += 1;
    }
    Ok(format!("{objects} corpus objects pass every axiom; {rejected}/20 mutations rejected"))
}

// 2

fn unit_laws() -> Verdict {
    let objects: Vec<Biring> = vec![
        ga(&q()).unwrap().biring().clone(),
        dual_numbers(&q()).unwrap(),
        ghost_witt(&q(), 2).unwrap(),
        ghost_witt(&q(), 3).unwrap(),
    ];
    let u = unit_biring(&q());
    for a in &objects {
        let n = a.carrier().ngens();
        let same: Vec<Poly> = (0..n).map(|i| a.carrier().gen(i)).collect();
        let left = Odot::new(&u, a.carrier()).map_err(|e| e.to_string())?;
        let lb = left.biring(&u, a).map_err(|e| e.to_string())?;
        let to_left: Vec<Poly> = (0..n).map(|j| left.symbol(0, j)).collect();
        ensure(is_biring_isomorphism(&lb, a, same.clone(), to_left).map_err(|e| e.to_string())?, || {
            format!("k[e]⊙{} ≇ {}", a.name(), a.name())
        })?;
        let right = Odot::new(a, u.carrier()).map_err(|e| e.to_string())?;
        let rb = right.biring(a, &u).map_err(|e| e.to_string())?;
        let to_right: Vec<Poly> = (0..n).map(|i| right.symbol(i, 0)).collect();
        ensure(is_biring_isomorphism(&rb, a, same, to_right).map_err(|e| e.to_string())?, || {
            format!("{}⊙k[e] ≇ {}", a.name(), a.name())
        })?;
    }
    Ok("k[e]⊙A ≅ A ≅ A⊙k[e] for ga, dual_numbers, ghost_witt(2), ghost_witt(3)".into())
}

// 3

fn all_functions(a: &AlgebraPres, f: &Field) -> Vec<Poly> {
    let el = f.elements().unwrap();
    let qn = el.len();
    let basis = a.basis().unwrap();
    let total = qn.pow(basis.len() as u32);
    (0..total)
        .map(|mut k| {
            let coords: Vec<_> = (0..basis.len())
                .map(|_| {
                    let c = el[k % qn].clone();
                    k /= qn;
                    c
                })
                .collect();
            a.from_coords(&coords, &basis)
        })
        .collect()
}

fn function_plethory() -> Verdict {
    let mut pairs = 0;
    let mut triples = 0;
    for qq in [2u64, 3] {
        let f = fp(qq);
        let p = fun_plethory(&f).unwrap();
        let a = p.carrier();
        let elems = all_functions(a, &f);
        let points = f.elements().unwrap();
        let index: HashMap<String, usize> = elems.iter().enumerate().map(|(i, x)| (x.to_string(), i)).collect();
        let e = p.unit().clone();
        let mut table = vec![vec![0usize; elems.len()]; elems.len()];
        for (i, x) in elems.iter().enumerate() {
            for (j, y) in elems.iter().enumerate() {
                let xy = p.compose(x, y).map_err(|e| e.to_string())?;
                for v in &points {
                    let inner = y.eval(std::slice::from_ref(v));
                    ensure(xy.eval(std::slice::from_ref(v)) == x.eval(&[inner]), || format!("({x})∘({y}) at {v:?}"))?;
                }
                table[i][j] = index[&xy.to_string()];
                pairs += 1;
            }
            ensure(p.compose(&e, x).map_err(|e| e.to_string())? == *x, || format!("e∘{x} ≠ {x}"))?;
            ensure(p.compose(x, &e).map_err(|e| e.to_string())? == *x, || format!("{x}∘e ≠ {x}"))?;
        }
        let n = elems.len();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    ensure(table[table[i][j]][k] == table[i][table[j][k]], || {
                        format!("associativity fails on ({}, {}, {})", elems[i], elems[j], elems[k])
                    })?;
                    triples += 1;
                }
            }
        }
    }
    Ok(format!("{pairs} pairs equal function composition; {triples} triples associative; units hold"))
}

// 4

fn linearization_char_zero() -> Verdict {
    let a2 = Bialgebra::monoid(&q(), &["u", "g"], &[&[0, 1], &[1, 0]]).unwrap();
    let a3 = Bialgebra::monoid(&q(), &["u", "g", "h"], &[&[0, 1, 2], &[1, 2, 0], &[2, 0, 1]]).unwrap();
    let cases = [ga(&q()).unwrap(), sym_free(&a2).unwrap(), sym_free(&a3).unwrap()];
    for p in &cases {
        let lin = linearize(p, 5).map_err(|e| e.to_string())?;
        ensure(lin.degrees.len() == 6 && lin.is_isomorphism(), || format!("{}: {:?}", p.name(), lin.degrees))?;
    }
    Ok("Q[e], Sym(Q[Z/2]), Sym(Q[Z/3]) linear in degrees 0..=5".into())
}

// 5

fn primitive_elements() -> Verdict {
    let h = ga(&q()).unwrap().biring().hopf().clone();
    let names: Vec<String> = primitives(&h, 6).map_err(|e| e.to_string())?.iter().map(Poly::to_string).collect();
    ensure(names == ["e"], || format!("Prim(Q[e]) = {names:?}"))?;
    for p in [2u64, 3] {
        let f = fp(p);
        let h = ga(&f).unwrap().biring().hopf().clone();
        let bound = (p * p) as u32;
        let names: Vec<String> = primitives(&h, bound).map_err(|e| e.to_string())?.iter().map(Poly::to_string).collect();
        let expect = ["e".to_string(), format!("e^{p}"), format!("e^{}", p * p)];
        ensure(names == expect, || format!("Prim(F{p}[e]) = {names:?}"))?;
        let (_, m) = prim_fmodule(&h, bound).map_err(|e| e.to_string())?;
        let unit = |k: usize| -> Vec<_> { (0..3).map(|i| if i == k { f.one() } else { f.zero() }).collect() };
        ensure(m.action[0] == Some(unit(1)) && m.action[1] == Some(unit(2)) && m.action[2].is_none(), || {
            format!("F on Prim(F{p}[e]): {:?}", m.action)
        })?;
    }
    Ok("Prim(Q[e]) = <e>; Prim(F_p[e]) = <e, e^p, e^p²> free of rank 1 under F, p = 2, 3".into())
}

// 6

fn same_images(a: &AlgebraPres, x: &HopfMap, y: &HopfMap) -> bool {
    x.images.iter().zip(&y.images).all(|(u, v)| a.nf(u) == a.nf(v))
}

fn is_automorphism(h: &HopfAlgebra, v: &HopfMap) -> Result<bool, String> {
    let a = h.carrier();
    let basis = a.basis().ok_or("infinite carrier")?;
    let cols: Vec<_> = basis
        .iter()
        .map(|b| {
            let img = v.apply(a, &Poly::monomial(a.ring(), b.clone(), h.field().one())).unwrap();
            a.coords(&img, &basis)
        })
        .collect();
    let m = Matrix::from_columns(h.field(), basis.len(), &cols).map_err(|e| e.to_string())?;
    Ok(m.rank() == basis.len())
}

fn frobenius_verschiebung() -> Verdict {
    for p in [2u64, 3] {
        let f = fp(p);
        let mut finite = vec![alpha_p(&f).unwrap(), mu_p(&f).unwrap()];
        if p == 2 {
            finite.push(fun_plethory(&f).unwrap().biring().hopf().clone());
        }
        for h in &finite {
            let a = h.carrier();
            let fr = frobenius_hopf(h).map_err(|e| e.to_string())?;
            let v = verschiebung(h, p as u32).map_err(|e| e.to_string())?;
            let n = mult_by_n(h, p as usize).map_err(|e| e.to_string())?;
            let fv = fr.then(a, &v).map_err(|e| e.to_string())?;
            let vf = v.then(a, &fr).map_err(|e| e.to_string())?;
            ensure(same_images(a, &fv, &n) && same_images(a, &vf, &n), || format!("FV ≠ VF ≠ [p] on {}@F{p}", h.name()))?;
        }
        let ga_h = ga(&f).unwrap().biring().hopf().clone();
        ensure(verschiebung(&ga_h, p as u32).unwrap().is_zero_map(&ga_h), || format!("V(Ga) ≠ 0 over F{p}"))?;
        let al = alpha_p(&f).unwrap();
        ensure(verschiebung(&al, p as u32).unwrap().is_zero_map(&al), || format!("V(α_p) ≠ 0 over F{p}"))?;
        let mu = mu_p(&f).unwrap();
        ensure(is_automorphism(&mu, &verschiebung(&mu, p as u32).unwrap())?, || format!("V(μ_p) not invertible over F{p}"))?;
        let w = witt_cocycle(&f).unwrap();
        let vw = verschiebung(&w, p as u32).map_err(|e| e.to_string())?;
        ensure(!vw.is_zero_map(&w), || format!("V(witt_cocycle) = 0 over F{p}"))?;
    }
    Ok("FV = VF = [p] on α_p, μ_p, k^k; V(Ga) = V(α_p) = 0; V(μ_p) invertible; V(witt_cocycle) ≠ 0".into())
}

// 7

fn sym_p_lemma() -> Verdict {
    let f2 = fp(2);
    let f3 = fp(3);
    let mut modules = Vec::new();
    for f in [&f2, &f3] {
        let m = FModule::new(f, &["u"], vec![Some(vec![1])]).unwrap();
        modules.push(m.with_bialgebra(Bialgebra::monoid(f, &["u"], &[&[0]]).unwrap()).unwrap());
    }
    // F = id, and the echelon F = (v·): u ↦ v, v ↦ v
    for (f, fu) in [(&f3, vec![1, 0]), (&f2, vec![0, 1]), (&f3, vec![0, 1])] {
        let m = FModule::new(f, &["u", "v"], vec![Some(fu), Some(vec![0, 1])]).unwrap();
        modules.push(m.with_bialgebra(Bialgebra::monoid(f, &["u", "v"], &[&[0, 1], &[1, 1]]).unwrap()).unwrap());
    }
    for m in &modules {
        let p = m.field.characteristic() as u32;
        let label = format!("Sym^[p]({})@F{p}", m.names.join(", "));
        let qp = sym_p_free(m).map_err(|e| format!("{label}: {e}"))?;
        let free = sym_free(m.bialgebra.as_ref().unwrap()).map_err(|e| e.to_string())?;
        let report = qq_ideal_check(&free, &sym_p_generators(&free, m)).map_err(|e| e.to_string())?;
        ensure(report.passed(), || format!("{label}:\n{report}"))?;
        let h = qp.biring();
        ensure(verschiebung(h, p).map_err(|e| e.to_string())?.is_zero_map(h), || format!("{label}: V ≠ 0"))?;
        let lin = linearize(&qp, p).map_err(|e| e.to_string())?;
        ensure(lin.is_isomorphism(), || format!("{label}: {:?}", lin.degrees))?;
    }
    for f in [&f2, &f3] {
        let m = FModule::new(f, &["m"], vec![Some(vec![0])]).unwrap();
        let h = sym_p_hopf(&m).map_err(|e| e.to_string())?;
        ensure(h.check().passed(), || "Sym^[p] with Fm = 0 is not a Hopf algebra".into())?;
        let p = f.characteristic() as u32;
        ensure(verschiebung(&h, p).unwrap().is_zero_map(&h), || "V ≠ 0 on Sym^[p] with Fm = 0".into())?;
    }
    Ok(format!("{} plethories Sym^[p](M) valid, J∘Q/Q∘J closed, V = 0, p-linear; Fm = 0 elementary unipotent", modules.len()))
}

// 8

fn ghost_witt_check() -> Verdict {
    for n in 1..=3 {
        ensure(ghost_witt_oracle(n).map_err(|e| e.to_string())?, || format!("ghost map not an isomorphism at n = {n}"))?;
    }
    Ok("ghost coordinates ≅ Witt coordinates for n = 1, 2, 3".into())
}

// 9

fn connected_components() -> Verdict {
    for qq in [2u64, 3, 4] {
        let f = fp(qq);
        let k = fun_plethory(&f).unwrap().biring().pi0_rank().map_err(|e| e.to_string())?;
        let a = alpha_p_ring(&f).unwrap().pi0_rank().map_err(|e| e.to_string())?;
        ensure(k == qq as usize && a == qq as usize, || format!("F{qq}: π0(k^k) = {k}, π0(alpha_p_ring) = {a}"))?;
    }
    let carriers: Vec<Algebra> = vec![
        ga(&q()).unwrap().carrier().clone(),
        dual_numbers(&q()).unwrap().carrier().clone(),
        ghost_witt(&q(), 2).unwrap().carrier().clone(),
        ghost_witt(&q(), 3).unwrap().carrier().clone(),
    ];
    for c in &carriers {
        for d in 1..=3 {
            let t = FinAlgebra::truncation(c, d).map_err(|e| e.to_string())?;
            ensure(idempotent::pi0_rank(&t) == 1, || format!("π0 of a truncation of {c} is not 1"))?;
        }
    }
    Ok("π0 = q for k^k and alpha_p_ring over F_2, F_3, F_4; π0 = 1 on char-0 truncations".into())
}

// 10

fn adjunctions() -> Verdict {
    let f2 = fp(2);
    let pres = |names: &[&str], rels: &[&str]| -> Algebra {
        let mut a = AlgebraPres::free(&f2, names);
        for r in rels {
            let p = parse_poly(a.ring(), r).unwrap();
            a = a.with_relation(&p).unwrap();
        }
        Arc::new(a)
    };
    let fin = |names: &[&str], rels: &[&str]| FinAlgebra::from_pres(&pres(names, rels)).unwrap();
    let triples: Vec<(Biring, Algebra, FinAlgebra)> = vec![
        (ga(&f2).unwrap().biring().clone(), pres(&["r"], &["r^2"]), fin(&["s"], &["s^2"])),
        (dual_numbers(&f2).unwrap(), pres(&["r"], &[]), fin(&["s"], &["s^2"])),
        (alpha_p_ring(&f2).unwrap(), pres(&["r"], &[]), fin(&["s"], &["s^2 + s + 1"])),
        (fun_plethory(&f2).unwrap().biring().clone(), pres(&["r"], &["r^2 - r"]), FinAlgebra::functions_on(&f2).unwrap()),
        (mu_p_ring(&f2).unwrap(), pres(&["r"], &[]), fin(&["s"], &["s^3"])),
        (unit_biring(&f2), pres(&["r", "s"], &["r^2", "s^2"]), fin(&["a", "b"], &["a^2", "b^2"])),
    ];
    let mut sizes = Vec::new();
    for (a, r, s) in &triples {
        let v = adjunction_check(a, r, s, 1 << 16).map_err(|e| e.to_string())?;
        ensure(v.bijective && v.left == v.right, || format!("{}: {} vs {}", a.name(), v.left, v.right))?;
        sizes.push(v.left.to_string());
    }
    Ok(format!("6 triples, hom-set sizes {}", sizes.join(", ")))
}

fn cli(args: &[&str]) -> plethory_cli::Outcome {
    plethory_cli::run(std::iter::once("plethory").chain(args.iter().copied()).map(std::ffi::OsString::from))
}

fn cli_contract() -> Verdict {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../cli/dsl");
    let mut files: Vec<_> = std::fs::read_dir(&dir)
        .map_err(|e| format!("{}: {e}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "pleth"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err("no shipped DSL files".into());
    }
    for f in &files {
        let path = f.to_str().ok_or("non-UTF-8 path")?;
        let text = std::fs::read_to_string(f).map_err(|e| e.to_string())?;
        let doc = plethory_cli::dsl::parse_dsl(&text).map_err(|e| format!("{path}: {e}"))?;
        let printed = doc.to_string();
        let again = plethory_cli::dsl::parse_dsl(&printed).map_err(|e| format!("{path} reprinted: {e}"))?;
        if again != doc || again.to_string() != printed {
            return Err(format!("{path}: parse/print is not the identity"));
        }
        let (a, b) = (cli(&["report", path]), cli(&["report", path]));
        if a.code != 0 || a.stdout != b.stdout || a.stdout.is_empty() {
            return Err(format!("{path}: exit {} / {}, identical {}", a.code, b.code, a.stdout == b.stdout));
        }
    }
    let mut codes = Vec::new();
    for (name, want) in [("broken_counit.pleth", 1), ("bad_unit.pleth", 1), ("parse_error.pleth", 2)] {
        let f = dir.join("failing").join(name);
        let got = cli(&["report", f.to_str().ok_or("non-UTF-8 path")?]).code;
        if got != want {
            return Err(format!("{name}: exit {got}, expected {want}"));
        }
        codes.push(got.to_string());
    }
    Ok(format!("{} files round-trip with identical reports; fixtures exit {}", files.len(), codes.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [(&str, Option<u64>, fn() -> Verdict); 11] = [
        ("biring axiom suite", Some(10), axiom_suite),
        ("monoidal unit laws", None, unit_laws),
        ("k^k exhaustive plethory", Some(5), function_plethory),
        ("characteristic-0 linearization", Some(60), linearization_char_zero),
        ("primitives", None, primitive_elements),
        ("Frobenius/Verschiebung", None, frobenius_verschiebung),
        ("Sym^[p] and ideal containments", None, sym_p_lemma),
        ("ghost/Witt oracle", Some(10), ghost_witt_check),
        ("π0 and connectedness", None, connected_components),
        ("adjunction spot-checks", None, adjunctions),
        ("CLI contract", None, cli_contract),
    ];
    let mut failed = 0;
    for (k, (title, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut verdict = run();
        let took = start.elapsed();
        if let (Ok(_), Some(s)) = (&verdict, limit) {
            if took > Duration::from_secs(*s) {
                verdict = Err(format!("took {:.2} s, limit {s} s", took.as_secs_f64()));
            }
        }
        let (tag, detail) = match &verdict {
            Ok(d) => ("pass", d.clone()),
            Err(d) => ("FAIL", d.clone()),
        };
        if verdict.is_err() {
            failed += 1;
        }
        println!("criterion {:>2} [{tag}] {title}: {detail} ({:.2} s)", k + 1, took.as_secs_f64());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
