//! Deterministic random instances for the verification suites: cyclic
//! modules cut out by monomial and binomial homogeneous ideals in at most
//! three variables, with small generator degrees.

use crate::field::Field;
use crate::module::GradedModule;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::{PolyRing, Ring};
use std::sync::Arc;

/// SplitMix64: tiny, stable, seedable; good enough for instance sampling and
/// reproducible across builds (no external dependency drift).
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        self.next_u64() % n
    }

    /// Deterministic per-trial stream derived from a root seed.
    pub fn for_trial(root: u64, trial: u64) -> Self {
        let mut mix = SplitMix64::new(root ^ trial.wrapping_mul(0xA24BAED4963EE407));
        // burn a few values so nearby trials decorrelate
        mix.next_u64();
        mix.next_u64();
        SplitMix64::new(mix.next_u64())
    }
}

/// Sampling parameters for random instances.
#[derive(Debug, Clone, Copy)]
pub struct InstanceParams {
    pub nvars: usize,
    pub max_degree: u32,
}

impl Default for InstanceParams {
    fn default() -> Self {
        InstanceParams {
            nvars: 3,
            max_degree: 4,
        }
    }
}

pub fn standard_ring(nvars: usize) -> Ring {
    let names = ["x", "y", "z", "w"];
    Ring::polynomial(PolyRing::standard(Field::Rationals, &names[..nvars]))
}

fn random_monomial(rng: &mut SplitMix64, nvars: usize, degree: u32) -> Monomial {
    let mut exps = vec![0u32; nvars];
    for _ in 0..degree {
        exps[rng.below(nvars as u64) as usize] += 1;
    }
    Monomial::from_exponents(exps)
}

/// A homogeneous ideal with 1–4 monomial or binomial generators.
pub fn random_ideal(
    rng: &mut SplitMix64,
    ring: &Arc<PolyRing>,
    params: InstanceParams,
) -> Vec<Polynomial> {
    let ngens = 1 + rng.below(4) as usize;
    let mut gens = Vec::with_capacity(ngens);
    for _ in 0..ngens {
        let degree = 1 + rng.below(params.max_degree as u64) as u32;
        let m1 = random_monomial(rng, params.nvars, degree);
        let binomial = rng.below(3) == 0;
        let poly = if binomial {
            let m2 = random_monomial(rng, params.nvars, degree);
            if m2 == m1 {
                Polynomial::monomial(ring, ring.field.one(), m1)
            } else {
                Polynomial::monomial(ring, ring.field.one(), m1).sub(&Polynomial::monomial(
                    ring,
                    ring.field.one(),
                    m2,
                ))
            }
        } else {
            Polynomial::monomial(ring, ring.field.one(), m1)
        };
        gens.push(poly);
    }
    gens
}

/// A random cyclic module `R/I` over the standard ring.
pub fn random_module(rng: &mut SplitMix64, ring: &Ring, params: InstanceParams) -> GradedModule {
    let gens = random_ideal(rng, ring.poly_ring(), params);
    GradedModule::cyclic(ring.clone(), gens).unwrap()
}

/// A random pair `(M, N)` over a fresh standard ring, with no filtering;
/// suites apply their own hypothesis filters.
pub fn random_pair(
    rng: &mut SplitMix64,
    params: InstanceParams,
) -> (Ring, GradedModule, GradedModule) {
    let ring = standard_ring(params.nvars);
    let m = random_module(rng, &ring, params);
    let n = random_module(rng, &ring, params);
    (ring, m, n)
}

/// A random pair with `length(M ⊗ N) < ∞`, resampling until the support of
/// the sum ideal is zero-dimensional (checked on the staircase). Returns the
/// number of attempts alongside.
pub fn random_finite_tensor_pair(
    rng: &mut SplitMix64,
    params: InstanceParams,
) -> (Ring, GradedModule, GradedModule, usize) {
    let ring = standard_ring(params.nvars);
    let mut attempts = 0;
    loop {
        attempts += 1;
        let m = random_module(rng, &ring, params);
        let n = random_module(rng, &ring, params);
        let mut sum_gens: Vec<Polynomial> = m
            .relations()
            .iter()
            .chain(n.relations().iter())
            .map(|v| v.component(0).clone())
            .collect();
        sum_gens.dedup();
        let tensor = GradedModule::cyclic(ring.clone(), sum_gens).unwrap();
        if matches!(tensor.length(), crate::module::Length::Finite(_)) {
            return (ring, m, n, attempts);
        }
    }
}
