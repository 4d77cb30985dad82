//! Degreewise cross-checks of the Gröbner/staircase machinery against the
//! dense linear-algebra oracles, and exactness of computed resolutions.

use eulerform_core::bruteforce;
use eulerform_core::field::Field;
use eulerform_core::groebner;
use eulerform_core::homology;
use eulerform_core::instances::{self, InstanceParams, SplitMix64};
use eulerform_core::module::GradedModule;
use eulerform_core::order::ModuleOrder;
use eulerform_core::poly::Polynomial;
use eulerform_core::resolution::{self, FreeResolution};
use eulerform_core::ring::{PolyRing, Ring};
use eulerform_core::vector::{FreeModule, FreeVector};
use std::sync::Arc;

fn r3() -> Ring {
    Ring::polynomial(PolyRing::standard(Field::Rationals, &["x", "y", "z"]))
}

fn cyc(ring: &Ring, gens: &[&str]) -> GradedModule {
    let pr = ring.poly_ring();
    GradedModule::cyclic(
        ring.clone(),
        gens.iter()
            .map(|s| Polynomial::parse(pr, s).unwrap())
            .collect(),
    )
    .unwrap()
}

/// Staircase graded dimension from cumulative counts.
fn staircase_graded_dim(m: &GradedModule, d: i64) -> usize {
    let hi = m.cumulative_hilbert_count(d);
    let lo = if d > i64::MIN {
        m.cumulative_hilbert_count(d - 1)
    } else {
        0
    };
    (hi - lo) as usize
}

#[test]
fn hilbert_function_matches_brute_force_linear_algebra() {
    let params = InstanceParams::default();
    for seed in 0..20u64 {
        let mut rng = SplitMix64::for_trial(seed, 4);
        let ring = instances::standard_ring(3);
        let m = instances::random_module(&mut rng, &ring, params);
        for d in 0..=8 {
            assert_eq!(
                staircase_graded_dim(&m, d),
                bruteforce::module_graded_dim(&m, d),
                "seed {seed} degree {d}"
            );
        }
    }
}

#[test]
fn initial_module_preserves_hilbert_function() {
    // graded dimension of the quotient by a submodule equals that of the
    // quotient by its initial module, degree by degree
    let params = InstanceParams::default();
    for seed in 0..15u64 {
        let mut rng = SplitMix64::for_trial(seed, 6);
        let ring = instances::standard_ring(3);
        let m = instances::random_module(&mut rng, &ring, params);
        let gb = m.measurement_basis();
        let pr = ring.poly_ring().clone();
        let initial: Vec<FreeVector> = groebner::initial_module(gb)
            .into_iter()
            .map(|(mono, _)| FreeVector::scalar(Polynomial::monomial(&pr, pr.field.one(), mono)))
            .collect();
        let fm = m.free_module();
        for d in 0..=8 {
            assert_eq!(
                bruteforce::coker_graded_dim(&fm, m.relations(), d),
                bruteforce::coker_graded_dim(&fm, &initial, d),
                "seed {seed} degree {d}"
            );
        }
    }
}

#[test]
fn resolutions_are_exact_via_normal_form_membership() {
    let params = InstanceParams::default();
    for seed in 0..10u64 {
        let mut rng = SplitMix64::for_trial(seed, 7);
        let ring = instances::standard_ring(3);
        let m = instances::random_module(&mut rng, &ring, params);
        let res = resolution::minimal_free_resolution(&m).unwrap();
        for i in 1..res.length() {
            // kernel generators of dᵢ must lie in the image of dᵢ₊₁
            let src = res.free_module(i);
            let tgt = res.free_module(i - 1);
            let kernel = groebner::preimage_module(res.differential(i), &src, &[], &tgt).unwrap();
            if res.differential(i + 1).is_empty() {
                assert!(kernel.is_empty(), "seed {seed} level {i}");
                continue;
            }
            let order = ModuleOrder::Top(ring.poly_ring().canonical_order());
            let image_fm = FreeModule::new(ring.clone(), res.gen_degrees(i).to_vec());
            let image_gb =
                groebner::buchberger(res.differential(i + 1).to_vec(), image_fm, order).unwrap();
            for k in &kernel {
                assert!(
                    groebner::normal_form(k, &image_gb).is_zero(),
                    "seed {seed} level {i}: homology nonzero"
                );
            }
        }
    }
}

#[test]
fn koszul_oracle_matches_resolutions_of_regular_sequences() {
    let ring = r3();
    // k = R/(x,y,z) and the complete intersection R/(y², z²)
    let cases: Vec<(GradedModule, Vec<i64>)> = vec![
        (GradedModule::residue_field(ring.clone()), vec![1, 1, 1]),
        (cyc(&ring, &["y^2", "z^2"]), vec![2, 2]),
        (cyc(&ring, &["x", "y^3"]), vec![1, 3]),
    ];
    for (m, degrees) in cases {
        let expected = bruteforce::koszul_levels(&degrees);
        let res = resolution::minimal_free_resolution(&m).unwrap();
        assert_eq!(res.length() + 1, expected.len());
        for (i, (rank, degs)) in expected.iter().enumerate() {
            assert_eq!(res.rank(i), *rank, "level {i}");
            let mut got = res.gen_degrees(i).to_vec();
            got.sort();
            assert_eq!(&got, degs, "level {i} degrees");
        }
    }
}

#[test]
fn artinian_betti_oracle_matches_quotient_resolutions() {
    use eulerform_core::monomial::Monomial;
    // k over QQ[x]/(x²)
    let pr = PolyRing::standard(Field::Rationals, &["x"]);
    let ring = Ring::quotient(
        Arc::clone(&pr),
        vec![Polynomial::parse(&pr, "x^2").unwrap()],
    )
    .unwrap();
    let k = GradedModule::residue_field(ring);
    let res = resolution::truncated_resolution(&k, 5).unwrap();
    let oracle = bruteforce::artinian_residue_betti(
        &Field::Rationals,
        &[1],
        &[Monomial::from_exponents(vec![2])],
        5,
    );
    assert_eq!(res.betti_numbers().unwrap(), oracle);

    // k over QQ[x,y]/(x²,y²)
    let pr = PolyRing::standard(Field::Rationals, &["x", "y"]);
    let ring = Ring::quotient(
        Arc::clone(&pr),
        vec![
            Polynomial::parse(&pr, "x^2").unwrap(),
            Polynomial::parse(&pr, "y^2").unwrap(),
        ],
    )
    .unwrap();
    let k = GradedModule::residue_field(ring);
    let res = resolution::truncated_resolution(&k, 4).unwrap();
    let oracle = bruteforce::artinian_residue_betti(
        &Field::Rationals,
        &[1, 1],
        &[
            Monomial::from_exponents(vec![2, 0]),
            Monomial::from_exponents(vec![0, 2]),
        ],
        4,
    );
    assert_eq!(res.betti_numbers().unwrap(), oracle);
}

/// Build the brute-force block data for `Extⁱ`/`Torᵢ` from a resolution and
/// evaluate its homology dimension at one degree.
#[allow(clippy::too_many_arguments)]
fn brute_homology_dim(
    res: &FreeResolution,
    n: &GradedModule,
    i: usize,
    ext: bool,
    d: i64,
) -> usize {
    let ring = n.ring().clone();
    let pr = ring.poly_ring().clone();
    let g = n.gen_degrees().len();
    let offsets = |level: usize| -> Vec<i64> {
        res.gen_degrees(level)
            .iter()
            .map(|deg| if ext { -deg } else { *deg })
            .collect()
    };
    let cover = |level: usize| -> FreeModule {
        let degrees: Vec<i64> = offsets(level)
            .iter()
            .flat_map(|off| n.gen_degrees().iter().map(move |b| b + off))
            .collect();
        FreeModule::new(ring.clone(), degrees)
    };
    let cover_rels = |level: usize| -> Vec<FreeVector> {
        let blocks = res.rank(level);
        let mut out = Vec::new();
        for b in 0..blocks {
            for rel in n.relations() {
                let mut v = FreeVector::zero(&pr, blocks * g);
                for l in 0..g {
                    if !rel.component(l).is_zero() {
                        v.set_component(b * g + l, rel.component(l).clone());
                    }
                }
                out.push(v);
            }
        }
        // quotient-ring augmentation
        out.extend(groebner::ideal_augmentation(&cover(level)));
        out
    };
    // scalar matrix entry (target block t, source block u)
    let scalar = |level: usize, t: usize, u: usize| -> Polynomial {
        if ext {
            res.differential(level)[t].component(u).clone()
        } else {
            res.differential(level)[u].component(t).clone()
        }
    };
    let induced_cols = |level: usize, src: usize, tgt: usize| -> Vec<FreeVector> {
        // one column per source-cover basis vector (block b, gen l)
        let tgt_blocks = res.rank(tgt);
        let src_blocks = res.rank(src);
        let mut cols = Vec::new();
        for b in 0..src_blocks {
            for l in 0..g {
                let mut v = FreeVector::zero(&pr, tgt_blocks * g);
                for t in 0..tgt_blocks {
                    let s = scalar(level, t, b);
                    if !s.is_zero() {
                        v.set_component(t * g + l, s);
                    }
                }
                cols.push(v);
            }
        }
        cols
    };

    let mid = cover(i);
    let mid_rels = cover_rels(i);
    let (out_fm, out_cols, out_rels) = if ext {
        if res.rank(i + 1) > 0 {
            (
                Some(cover(i + 1)),
                Some(induced_cols(i + 1, i, i + 1)),
                cover_rels(i + 1),
            )
        } else {
            (None, None, Vec::new())
        }
    } else if i >= 1 {
        (
            Some(cover(i - 1)),
            Some(induced_cols(i, i, i - 1)),
            cover_rels(i - 1),
        )
    } else {
        (None, None, Vec::new())
    };
    let in_cols = if ext {
        if i >= 1 && res.rank(i - 1) > 0 {
            Some(induced_cols(i, i - 1, i))
        } else {
            None
        }
    } else if res.rank(i + 1) > 0 {
        Some(induced_cols(i + 1, i + 1, i))
    } else {
        None
    };

    bruteforce::homology_graded_dim(
        &mid,
        &mid_rels,
        out_fm.as_ref(),
        out_cols.as_deref(),
        &out_rels,
        in_cols.as_deref(),
        d,
    )
}

#[test]
fn ext_and_tor_graded_dimensions_match_brute_force() {
    let ring = r3();
    let mut cases = vec![
        (
            GradedModule::residue_field(ring.clone()),
            GradedModule::residue_field(ring.clone()),
        ),
        (
            cyc(&ring, &["y^2", "z^2"]),
            cyc(&ring, &["x^2", "x*y", "x*z"]),
        ),
        (cyc(&ring, &["y", "z"]), cyc(&ring, &["x^3", "x*y", "x*z"])),
    ];
    let params = InstanceParams::default();
    for seed in 0..6u64 {
        let mut rng = SplitMix64::for_trial(seed, 8);
        let (_, m, n, _) = instances::random_finite_tensor_pair(&mut rng, params);
        cases.push((m, n));
    }
    for (case, (m, n)) in cases.iter().enumerate() {
        let res = resolution::minimal_free_resolution(m).unwrap();
        for i in 0..=res.length() {
            let ext = homology::ext_from_resolution(&res, i, n).unwrap();
            let tor = homology::tor_from_resolution(&res, i, n).unwrap();
            for d in -6..=8 {
                assert_eq!(
                    bruteforce::module_graded_dim(&ext, d),
                    brute_homology_dim(&res, n, i, true, d),
                    "case {case}: ext^{i} at degree {d}"
                );
                assert_eq!(
                    bruteforce::module_graded_dim(&tor, d),
                    brute_homology_dim(&res, n, i, false, d),
                    "case {case}: tor_{i} at degree {d}"
                );
            }
        }
    }
}
