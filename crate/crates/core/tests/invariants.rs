use proptest::prelude::*;

use plethory_core::biring::HopfAlgebra;
use plethory_core::corpus::{alpha_p_ring, dual_numbers, fun_plethory, ga, ghost_witt, mu_p_ring};
use plethory_core::structure::mult_by_n;
use plethory_core::{AlgebraPres, Field, Monomial, Poly};

fn element(a: &AlgebraPres, terms: &[(Vec<u32>, i64)]) -> Poly {
    let n = a.ngens();
    let ring = a.ring();
    let f = a.field();
    let p = Poly::from_terms(
        ring,
        terms.iter().map(|(e, c)| (Monomial(e.iter().cycle().take(n).copied().collect()), f.from_i64(*c))),
    );
    a.nf(&p)
}

fn terms(max_exp: u32) -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, 3), -4i64..=4), 0..5)
}

fn hopf_fixtures() -> Vec<HopfAlgebra> {
    let q = Field::rationals();
    let f2 = Field::prime(2).unwrap();
    let f3 = Field::prime(3).unwrap();
    let f4 = Field::finite(4).unwrap();
    vec![
        dual_numbers(&q).unwrap().into_hopf(),
        ghost_witt(&q, 2).unwrap().into_hopf(),
        alpha_p_ring(&f4).unwrap().into_hopf(),
        mu_p_ring(&f3).unwrap().into_hopf(),
        mu_p_ring(&f2).unwrap().into_hopf(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn finite_field_laws(a in 0usize..9, b in 0usize..9, c in 0usize..9) {
        for q in [4u64, 8, 9] {
            let f = Field::finite(q).unwrap();
            let el = f.elements().unwrap();
            let (x, y, z) = (&el[a % el.len()], &el[b % el.len()], &el[c % el.len()]);
            prop_assert_eq!(f.mul(x, &f.add(y, z)), f.add(&f.mul(x, y), &f.mul(x, z)));
            prop_assert_eq!(f.mul(&f.mul(x, y), z), f.mul(x, &f.mul(y, z)));
            prop_assert_eq!(f.frob(&f.frob_inv(x).unwrap()).unwrap(), x.clone());
            prop_assert_eq!(f.pow(x, q), x.clone());
            if !f.is_zero(x) {
                prop_assert!(f.is_one(&f.mul(x, &f.inv(x).unwrap())));
            }
        }
    }

    #[test]
    fn normal_forms_are_canonical(s in terms(5), t in terms(5)) {
        let a = alpha_p_ring(&Field::finite(4).unwrap()).unwrap();
        let c = a.carrier();
        let (x, y) = (element(c, &s), element(c, &t));
        prop_assert_eq!(c.nf(&x), x.clone());
        prop_assert_eq!(c.mul(&x, &y), c.mul(&y, &x));
        let raw = &x * &y;
        prop_assert_eq!(c.nf(&raw), c.mul(&x, &y));
    }

    #[test]
    fn hopf_laws_on_elements(s in terms(3)) {
        for h in hopf_fixtures() {
            let a = h.carrier();
            let x = element(a, &s);
            let pw = h.powers();
            let d = h.coadd_apply(&x).unwrap();
            prop_assert_eq!(pw.apply_at(&d, 2, 0, h.coadd(), 2), pw.apply_at(&d, 2, 1, h.coadd(), 2), "{}", h.name());
            let anti = pw.collapse(&pw.apply_at(&d, 2, 0, h.antipode(), 1), 2);
            prop_assert_eq!(anti, a.constant(h.counit_apply(&x).unwrap()), "{}", h.name());
            let counit: Vec<Poly> = h.counit().iter().map(|e| a.constant(e.clone())).collect();
            let left = pw.collapse(&pw.apply_at(&d, 2, 0, &counit, 1), 2);
            prop_assert_eq!(left, x.clone(), "{}", h.name());
        }
    }

    #[test]
    fn multiplication_maps_compose(m in 0usize..6, n in 0usize..6) {
        for h in hopf_fixtures() {
            let a = h.carrier();
            let both = mult_by_n(&h, m).unwrap().then(a, &mult_by_n(&h, n).unwrap()).unwrap();
            let direct = mult_by_n(&h, m * n).unwrap();
            for i in 0..a.ngens() {
                prop_assert_eq!(both.apply(a, &a.gen(i)).unwrap(), direct.apply(a, &a.gen(i)).unwrap(), "{}", h.name());
            }
        }
    }

    #[test]
    fn ga_plethysm_is_substitution(s in terms(3), t in terms(2), u in terms(2)) {
        let q = ga(&Field::rationals()).unwrap();
        let a = q.carrier();
        let (x, y, z) = (element(a, &s), element(a, &t), element(a, &u));
        prop_assert_eq!(q.compose(&x, &y).unwrap(), a.substitute(&x, &[y.clone()]));
        let lhs = q.compose(&q.compose(&x, &y).unwrap(), &z).unwrap();
        let rhs = q.compose(&x, &q.compose(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn function_plethysm_is_composition(s in terms(8), t in terms(8)) {
        let f = Field::finite(4).unwrap();
        let q = fun_plethory(&f).unwrap();
        let a = q.carrier();
        let (x, y) = (element(a, &s), element(a, &t));
        let xy = q.compose(&x, &y).unwrap();
        for v in f.elements().unwrap() {
            let inner = y.eval(std::slice::from_ref(&v));
            prop_assert_eq!(xy.eval(&[v]), x.eval(&[inner]));
        }
    }
}
