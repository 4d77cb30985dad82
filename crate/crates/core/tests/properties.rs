//! Property tests: algebra axioms on randomized inputs, Gröbner membership
//! soundness, syzygy exactness, and invariant telescoping.

use eulerform_core::field::Field;
use eulerform_core::groebner::{self, GroebnerBasis};
use eulerform_core::hilbert;
use eulerform_core::homology::Functor;
use eulerform_core::instances::{self, InstanceParams, SplitMix64};
use eulerform_core::invariants;
use eulerform_core::module::{Dimension, GradedModule};
use eulerform_core::monomial::Monomial;
use eulerform_core::order::{monomial_compare, ModuleOrder, ScalarOrder};
use eulerform_core::poly::Polynomial;
use eulerform_core::ring::{PolyRing, Ring};
use eulerform_core::vector::{FreeModule, FreeVector};
use num_integer::Integer;
use num_traits::{One, Signed};
use proptest::prelude::*;
use std::cmp::Ordering;
use std::sync::Arc;

fn rational_ring() -> Arc<PolyRing> {
    PolyRing::standard(Field::Rationals, &["x", "y", "z"])
}

fn prime_ring() -> Arc<PolyRing> {
    PolyRing::standard(Field::Prime(5), &["x", "y", "z"])
}

prop_compose! {
    fn arb_monomial(max_exp: u32)(exps in proptest::collection::vec(0..=max_exp, 3)) -> Monomial {
        Monomial::from_exponents(exps)
    }
}

fn arb_poly(ring: Arc<PolyRing>) -> impl Strategy<Value = Polynomial> {
    let field_vals = -6i64..=6;
    proptest::collection::vec((field_vals, arb_monomial(3)), 0..6).prop_map(move |terms| {
        Polynomial::from_terms(
            &ring,
            terms
                .into_iter()
                .map(|(c, m)| (ring.field.from_i64(c), m))
                .collect(),
        )
    })
}

proptest! {
    #[test]
    fn ring_axioms_over_rationals(
        a in arb_poly(rational_ring()),
        b in arb_poly(rational_ring()),
        c in arb_poly(rational_ring()),
    ) {
        // associativity, commutativity, distributivity — exact equality
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.mul(&c)), a.mul(&b).mul(&c));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn ring_axioms_over_prime_field(
        a in arb_poly(prime_ring()),
        b in arb_poly(prime_ring()),
        c in arb_poly(prime_ring()),
    ) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn rational_coefficients_stay_canonical(
        a in arb_poly(rational_ring()),
        b in arb_poly(rational_ring()),
    ) {
        for t in a.mul(&b).terms() {
            let r = t.coeff.as_rational().unwrap();
            prop_assert!(r.denom().is_positive());
            prop_assert!(r.numer().gcd(r.denom()).is_one());
            prop_assert!(!t.coeff.is_zero());
        }
    }

    #[test]
    fn order_axioms(
        a in arb_monomial(4),
        b in arb_monomial(4),
        c in arb_monomial(4),
        which in 0..3usize,
    ) {
        let order = match which {
            0 => ScalarOrder::Grevlex,
            1 => ScalarOrder::Lex,
            _ => ScalarOrder::WeightedGrevlex(vec![1, 2, 3]),
        };
        // multiplicative: a < b ⟹ ac < bc
        let ab = monomial_compare(&order, &a, &b).unwrap();
        let acbc = monomial_compare(&order, &a.mul(&c), &b.mul(&c)).unwrap();
        prop_assert_eq!(ab, acbc);
        // 1 is the minimum
        let one = Monomial::one(3);
        prop_assert_ne!(monomial_compare(&order, &one, &a).unwrap(), Ordering::Greater);
        // antisymmetry / totality
        let ba = monomial_compare(&order, &b, &a).unwrap();
        prop_assert_eq!(ab, ba.reverse());
    }
}

fn seeded_ideal(seed: u64) -> (Ring, GradedModule, GroebnerBasis) {
    let params = InstanceParams::default();
    let mut rng = SplitMix64::for_trial(seed, 0);
    let ring = instances::standard_ring(3);
    let m = instances::random_module(&mut rng, &ring, params);
    let gb = m.measurement_basis().clone();
    (ring, m, gb)
}

#[test]
fn membership_soundness() {
    for seed in 0..25u64 {
        let (ring, m, gb) = seeded_ideal(seed);
        let pr = ring.poly_ring().clone();
        let mut rng = SplitMix64::for_trial(seed, 99);
        // random combination of the generators reduces to zero
        let mut combo = FreeVector::zero(&pr, 1);
        for rel in m.relations() {
            let c = pr.field.from_i64(rng.below(9) as i64 - 4);
            let e = Monomial::from_exponents(vec![
                rng.below(3) as u32,
                rng.below(3) as u32,
                rng.below(3) as u32,
            ]);
            combo = combo.add(&rel.mul_term(&c, &e));
        }
        assert!(groebner::normal_form(&combo, &gb).is_zero(), "seed {seed}");

        // a standard monomial stays nonzero
        let leads: Vec<Monomial> = gb
            .gens
            .iter()
            .map(|g| g.leading_term(&gb.order).unwrap().mono)
            .collect();
        'search: for d in 0..6u32 {
            for e0 in 0..=d {
                for e1 in 0..=(d - e0) {
                    let mono = Monomial::from_exponents(vec![e0, e1, d - e0 - e1]);
                    if !leads.iter().any(|l| l.divides(&mono)) {
                        let probe =
                            FreeVector::scalar(Polynomial::monomial(&pr, pr.field.one(), mono));
                        assert!(!groebner::normal_form(&probe, &gb).is_zero());
                        break 'search;
                    }
                }
            }
        }
    }
}

#[test]
fn reduced_basis_is_unique_under_shuffle() {
    for seed in 0..15u64 {
        let (ring, m, gb) = seeded_ideal(seed);
        let mut gens = m.relations().to_vec();
        // deterministic shuffle
        let mut rng = SplitMix64::for_trial(seed, 5);
        for i in (1..gens.len()).rev() {
            gens.swap(i, rng.below((i + 1) as u64) as usize);
        }
        let fm = FreeModule::new(Ring::polynomial(ring.poly_ring().clone()), vec![0]);
        let order = ModuleOrder::Top(ring.poly_ring().canonical_order());
        let gb2 = groebner::buchberger(gens, fm, order).unwrap();
        assert_eq!(gb.gens, gb2.gens, "seed {seed}");
    }
}

#[test]
fn syzygy_columns_compose_to_zero() {
    for seed in 0..15u64 {
        let (_, _, gb) = seeded_ideal(seed);
        let syz = groebner::schreyer_syzygies(&gb);
        for col in &syz.columns {
            let mut image = FreeVector::zero(gb.free_module.ring.poly_ring(), 1);
            for (k, coeff) in col.components().iter().enumerate() {
                image = image.add(&gb.gens[k].mul_poly(coeff));
            }
            assert!(image.is_zero(), "seed {seed}");
        }
    }
}

#[test]
fn chi_and_xi_telescope() {
    let params = InstanceParams::default();
    for seed in 0..12u64 {
        let mut rng = SplitMix64::for_trial(seed, 1);
        let (_, m, n, _) = instances::random_finite_tensor_pair(&mut rng, params);
        let pdim = invariants::projective_dimension(&m, None).unwrap().unwrap();
        for j in 0..=pdim {
            let chi_j = invariants::chi_partial(j, &m, &n, None).unwrap();
            let chi_next = invariants::chi_partial(j + 1, &m, &n, None).unwrap();
            let tor_j = chi_j.lengths.first().copied().unwrap_or(0) as i64;
            assert_eq!(chi_j.value, tor_j - chi_next.value, "chi seed {seed} j {j}");
            let xi_j = invariants::xi_partial(j, &m, &n, None).unwrap();
            let xi_next = invariants::xi_partial(j + 1, &m, &n, None).unwrap();
            let ext_j = xi_j.lengths.first().copied().unwrap_or(0) as i64;
            assert_eq!(xi_j.value, ext_j - xi_next.value, "xi seed {seed} j {j}");
        }
    }
}

#[test]
fn hilbert_polynomial_degree_is_dimension() {
    let params = InstanceParams::default();
    for seed in 0..20u64 {
        let mut rng = SplitMix64::for_trial(seed, 2);
        let ring = instances::standard_ring(3);
        let m = instances::random_module(&mut rng, &ring, params);
        let p = hilbert::hilbert_polynomial(&m).unwrap();
        match m.dimension() {
            Dimension::NegInf => assert!(p.is_zero()),
            Dimension::Finite(d) => assert_eq!(p.degree(), Some(d as usize), "seed {seed}"),
        }
        // agreement beyond the validity threshold
        for n in p.n0..(p.n0 + 6) {
            assert_eq!(
                p.evaluate(n),
                num_rational::BigRational::from_integer(num_bigint::BigInt::from(
                    m.cumulative_hilbert_count(n)
                )),
                "seed {seed} at n = {n}"
            );
        }
    }
}

#[test]
fn tor_balance_on_finite_pairs() {
    let params = InstanceParams::default();
    for seed in 0..8u64 {
        let mut rng = SplitMix64::for_trial(seed, 3);
        let (_, m, n, _) = instances::random_finite_tensor_pair(&mut rng, params);
        let mn = invariants::functor_lengths(Functor::Tor, &m, &n, None).unwrap();
        let nm = invariants::functor_lengths(Functor::Tor, &n, &m, None).unwrap();
        let pad = mn.lengths.len().max(nm.lengths.len());
        for i in 0..pad {
            let a = mn.lengths.get(i).and_then(|l| l.finite()).unwrap_or(0);
            let b = nm.lengths.get(i).and_then(|l| l.finite()).unwrap_or(0);
            assert_eq!(a, b, "seed {seed} index {i}");
        }
    }
}
