//! The Witt biring solved from ghost components, against the classical
//! addition and multiplication polynomials written out by hand.

use plethory_core::corpus::{ghost_witt, ghost_witt_oracle, witt_biring};
use plethory_core::expr::parse_poly;
use plethory_core::Field;

#[test]
fn addition_and_multiplication_through_length_three() {
    let w = witt_biring(3).unwrap();
    let t = w.tensor2();
    let r = t.ring();
    let expected_add = [
        "x1(1) + x1(2)",
        "x2(1) + x2(2) - x1(1)*x1(2)",
        "x3(1) + x3(2) - x1(1)^2*x1(2) - x1(1)*x1(2)^2",
    ];
    let expected_mul = [
        "x1(1)*x1(2)",
        "x1(1)^2*x2(2) + x2(1)*x1(2)^2 + 2*x2(1)*x2(2)",
        "x1(1)^3*x3(2) + x3(1)*x1(2)^3 + 3*x3(1)*x3(2)",
    ];
    for d in 0..3 {
        assert_eq!(w.coadd()[d], parse_poly(r, expected_add[d]).unwrap(), "S{}", d + 1);
        assert_eq!(w.comul()[d], parse_poly(r, expected_mul[d]).unwrap(), "P{}", d + 1);
    }
    let a = w.carrier();
    assert_eq!(w.antipode()[1], parse_poly(a.ring(), "-x2 - x1^2").unwrap());
    assert_eq!(w.counit_mul()[1], Field::rationals().zero());
}

#[test]
fn oracle_and_failure_of_the_naive_identification() {
    for n in 1..=3 {
        assert!(ghost_witt_oracle(n).unwrap());
    }
    // identifying x_d with w_d directly is not a biring map once n ≥ 2
    let g = ghost_witt(&Field::rationals(), 2).unwrap();
    let w = witt_biring(2).unwrap();
    let id: Vec<_> = (0..2).map(|i| w.carrier().gen(i)).collect();
    let back: Vec<_> = (0..2).map(|i| g.carrier().gen(i)).collect();
    assert!(!plethory_core::compose::is_biring_isomorphism(&g, &w, id, back).unwrap());
}
