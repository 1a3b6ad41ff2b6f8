//! Sym^[p] of a bialgebra is a plethory only when F is multiplication by a
//! grouplike; the dual numbers over F_2 admit no such quotient.

use plethory_core::structure::{qq_ideal_check, sym_free, sym_p_free, sym_p_generators, Bialgebra, FModule};
use plethory_core::Field;

#[test]
fn dual_numbers_have_no_p_linear_quotient() {
    let f2 = Field::prime(2).unwrap();
    for action in [vec![Some(vec![1, 0]), Some(vec![0, 1])], vec![Some(vec![1, 0]), Some(vec![0, 0])]] {
        let m = FModule::new(&f2, &["u", "m"], action)
            .unwrap()
            .with_bialgebra(Bialgebra::dual_numbers(&f2).unwrap())
            .unwrap();
        assert!(sym_p_free(&m).is_err());
        let free = sym_free(m.bialgebra.as_ref().unwrap()).unwrap();
        let report = qq_ideal_check(&free, &sym_p_generators(&free, &m)).unwrap();
        let failed: Vec<&str> = report.failures().map(|r| r.axiom.as_str()).collect();
        assert!(failed.contains(&"ideal: Q∘J"), "{report}");
    }
}

#[test]
fn multiplication_by_a_grouplike_passes() {
    for p in [2u64, 3] {
        let f = Field::prime(p).unwrap();
        let m = FModule::new(&f, &["u", "v"], vec![Some(vec![0, 1]), Some(vec![0, 1])])
            .unwrap()
            .with_bialgebra(Bialgebra::monoid(&f, &["u", "v"], &[&[0, 1], &[1, 1]]).unwrap())
            .unwrap();
        let q = sym_p_free(&m).unwrap();
        assert_eq!(q.carrier().dim(), Some(p as usize * p as usize));
        let free = sym_free(m.bialgebra.as_ref().unwrap()).unwrap();
        assert!(qq_ideal_check(&free, &sym_p_generators(&free, &m)).unwrap().passed());
    }
}
