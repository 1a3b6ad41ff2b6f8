//! V on a finite cocommutative Hopf algebra is the transpose of the p-th
//! power map on its dual convolution algebra. The dual product is built here
//! from Δ⁺ alone, never from Δ^{(p)}.

use plethory_core::biring::HopfAlgebra;
use plethory_core::corpus::{alpha_p, alpha_p_ring, fun_plethory, mu_p, mu_p_ring};
use plethory_core::structure::verschiebung;
use plethory_core::{Field, Monomial, Poly, Scalar};

fn convolve(h: &HopfAlgebra, basis: &[Monomial], phi: &[Scalar], psi: &[Scalar]) -> Vec<Scalar> {
    let a = h.carrier();
    let f = h.field();
    let n = a.ngens();
    let at = |m: &[u32]| basis.iter().position(|b| b.0 == m).expect("tensor factors are normal");
    basis
        .iter()
        .map(|b| {
            let d = h.coadd_apply(&Poly::monomial(a.ring(), b.clone(), f.one())).unwrap();
            d.terms().fold(f.zero(), |acc, (m, c)| {
                let term = f.mul(c, &f.mul(&phi[at(&m.0[..n])], &psi[at(&m.0[n..])]));
                f.add(&acc, &term)
            })
        })
        .collect()
}

fn assert_transpose(h: &HopfAlgebra) {
    let a = h.carrier();
    let f = h.field();
    let p = f.characteristic();
    let basis = a.basis().unwrap();
    let v = verschiebung(h, 0).unwrap();
    let k = basis.len();
    for i in 0..k {
        let phi: Vec<Scalar> = (0..k).map(|j| if i == j { f.one() } else { f.zero() }).collect();
        let mut power = phi.clone();
        for _ in 1..p {
            power = convolve(h, &basis, &power, &phi);
        }
        for (j, b) in basis.iter().enumerate() {
            let vb = v.apply(a, &Poly::monomial(a.ring(), b.clone(), f.one())).unwrap();
            let lhs = a.coords(&vb, &basis)[i].clone();
            assert_eq!(lhs, power[j], "{}: <V(b{j}), b{i}*>", h.name());
        }
    }
}

#[test]
fn verschiebung_is_dual_frobenius() {
    for p in [2u64, 3] {
        let f = Field::prime(p).unwrap();
        assert_transpose(&alpha_p(&f).unwrap());
        assert_transpose(&mu_p(&f).unwrap());
        assert_transpose(&alpha_p_ring(&f).unwrap());
        assert_transpose(&mu_p_ring(&f).unwrap());
        assert_transpose(fun_plethory(&f).unwrap().biring());
    }
}
