//! The three reference pairs over QQ[x,y,z] with every intermediate value
//! frozen: homology lengths, both sides of the intersection identity, the
//! decomposition identity, and the partial-characteristic vanishing test.
//! The expected numbers were derived by hand from the Koszul resolutions,
//! staircase counts and cumulative Hilbert polynomials.

use eulerform_core::field::Field;
use eulerform_core::homology::{self, Functor};
use eulerform_core::invariants::{self, GradeValue};
use eulerform_core::module::{GradedModule, Length};
use eulerform_core::poly::Polynomial;
use eulerform_core::ring::{PolyRing, Ring};

fn setup() -> (Ring, GradedModule, GradedModule, GradedModule, GradedModule) {
    let ring = Ring::polynomial(PolyRing::standard(Field::Rationals, &["x", "y", "z"]));
    let pr = ring.poly_ring().clone();
    let cyc = |gens: &[&str]| {
        GradedModule::cyclic(
            ring.clone(),
            gens.iter()
                .map(|s| Polynomial::parse(&pr, s).unwrap())
                .collect(),
        )
        .unwrap()
    };
    let m1 = cyc(&["y^2", "z^2"]);
    let m2 = cyc(&["y", "z"]);
    let n1 = cyc(&["x^2", "x*y", "x*z"]);
    let n2 = cyc(&["x^3", "x*y", "x*z"]);
    (ring, m1, m2, n1, n2)
}

fn lengths(functor: Functor, m: &GradedModule, n: &GradedModule) -> Vec<u64> {
    invariants::functor_lengths(functor, m, n, None)
        .unwrap()
        .lengths
        .iter()
        .map(|l| l.finite().expect("finite"))
        .collect()
}

#[test]
fn quadric_pair_full_chain() {
    let (_, m1, _, n1, _) = setup();
    // Tor lengths 5, 2, 1: tensor staircase {1,x,y,z,yz}, then Koszul homology
    assert_eq!(lengths(Functor::Tor, &m1, &n1), vec![5, 2, 1]);
    // Ext lengths 1, 2, 5 (confirmed degreewise by the dense linear-algebra
    // oracle in the cross-check suite): Hom = k·x̄ has length 1
    assert_eq!(lengths(Functor::Ext, &m1, &n1), vec![1, 2, 5]);

    let chi = invariants::chi_partial(0, &m1, &n1, None).unwrap().value;
    let xi = invariants::xi_partial(0, &m1, &n1, None).unwrap().value;
    assert_eq!(chi, 4);
    assert_eq!(xi, 4);
    assert_eq!(invariants::xi_partial(1, &m1, &n1, None).unwrap().value, -3);

    // intersection identity: k₀ = 2, c₂ = 4, P_N'' = 1
    let rep = invariants::chan_check(&m1, &n1, None)
        .unwrap()
        .checked()
        .unwrap();
    assert_eq!(rep.grade, 2);
    assert_eq!(rep.k0, 2);
    assert_eq!(rep.c_k0.to_string(), "4");
    assert_eq!(rep.pn_derivative.to_string(), "1");
    assert!(rep.chan_holds && rep.chi_side_holds && rep.xi_side_holds);

    // decomposition at j = 1: (-1)^{2+1}·ξ₁ = 3 = χ + (-1)^3·ξ̄₀ = 4 - 1
    let dec = invariants::xi_decomposition_check(1, &m1, &n1, None)
        .unwrap()
        .checked()
        .unwrap();
    assert!(dec.holds);
    assert_eq!(dec.lhs, 3);
    assert_eq!(dec.chi, 4);
    assert_eq!(dec.xi_bar_prev, 1);

    // χ₁ = 2 - 1 = 1 ≠ 0 matches the nonvanishing Tor tail
    assert_eq!(invariants::chi_partial(1, &m1, &n1, None).unwrap().value, 1);
}

#[test]
fn plane_pair_chain() {
    let (_, _, m2, n1, _) = setup();
    assert_eq!(lengths(Functor::Tor, &m2, &n1), vec![2, 2, 1]);
    assert_eq!(lengths(Functor::Ext, &m2, &n1), vec![1, 2, 2]);
    assert_eq!(invariants::xi_partial(0, &m2, &n1, None).unwrap().value, 1);
    assert_eq!(invariants::xi_partial(1, &m2, &n1, None).unwrap().value, 0);
    let rep = invariants::chan_check(&m2, &n1, None)
        .unwrap()
        .checked()
        .unwrap();
    assert_eq!(rep.k0, 2);
    assert_eq!(rep.c_k0.to_string(), "1");
    assert_eq!(rep.rhs.to_string(), "1");
}

#[test]
fn cubic_pair_chain() {
    let (_, _, m2, _, n2) = setup();
    // Hom = span{x̄, x̄²}: length 2
    let hom = homology::ext_module(0, &m2, &n2, None).unwrap();
    assert_eq!(hom.length(), Length::Finite(2));
    assert_eq!(invariants::xi_partial(0, &m2, &n2, None).unwrap().value, 1);
    assert_eq!(invariants::xi_partial(1, &m2, &n2, None).unwrap().value, 1);
    assert_eq!(
        invariants::grade_of(&m2, None).unwrap(),
        GradeValue::Finite(2)
    );
}
