//! Asymptotic growth of Ext and Tor: complexity and plexity, finiteness
//! thresholds, and Herbrand-difference estimators.
//!
//! Exact verdicts for the estimators require a matrix-level periodicity
//! certificate from [`resolution::detect_period`] on a hypersurface, or a
//! finite resolution; repeated lengths alone never certify.

use crate::error::{Error, Result};
use crate::homology::{self, Functor};
use crate::invariants;
use crate::module::{GradedModule, Length};
use crate::resolution::{self, FreeResolution};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

/// Polynomial growth degree (plus one) of a Betti-type sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Confidence {
    Exact,
    Fitted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComplexityEstimate {
    pub value: usize,
    pub confidence: Confidence,
}

/// Complexity `cx M`: growth of the Betti sequence of `M`. Zero exactly when
/// the truncated resolution terminates; one exactly under a periodicity
/// certificate; otherwise fitted from the computed window.
pub fn complexity(m: &GradedModule, bound: usize) -> Result<ComplexityEstimate> {
    if bound < 4 {
        return Err(Error::Structural("complexity needs bound >= 4".into()));
    }
    let res = resolution::truncated_resolution(m, bound)?;
    let betti = res.betti_numbers()?;
    Ok(fit_growth(&res, &betti))
}

/// Plexity `px M`: growth of the minimal generator counts of `Extⁿ(k, M)`.
pub fn plexity(m: &GradedModule, bound: usize) -> Result<ComplexityEstimate> {
    if bound < 4 {
        return Err(Error::Structural("plexity needs bound >= 4".into()));
    }
    let k = GradedModule::residue_field(m.ring().clone());
    let res = resolution::resolve(&k, Some(bound))?;
    let window = if res.is_complete() {
        res.length()
    } else {
        res.length() - 1
    };
    let mut nu = Vec::with_capacity(window + 1);
    for i in 0..=window {
        nu.push(homology::ext_from_resolution(&res, i, m)?.min_gens());
    }
    // strip trailing zeros so a finite tail counts as termination
    while nu.last() == Some(&0) {
        nu.pop();
    }
    if res.is_complete() || nu.len() <= window {
        return Ok(ComplexityEstimate {
            value: 0,
            confidence: Confidence::Exact,
        });
    }
    Ok(fit_growth(&res, &nu))
}

fn fit_growth(res: &FreeResolution, seq: &[usize]) -> ComplexityEstimate {
    if res.is_complete() {
        return ComplexityEstimate {
            value: 0,
            confidence: Confidence::Exact,
        };
    }
    if resolution::detect_period(res).is_some() {
        // ranks eventually constant and nonzero
        return ComplexityEstimate {
            value: 1,
            confidence: Confidence::Exact,
        };
    }
    // finite-difference fit on the tail of the window
    let tail_start = seq.len() / 3;
    let mut diffs: Vec<i64> = seq[tail_start..].iter().map(|&b| b as i64).collect();
    let mut degree = 0usize;
    while diffs.len() > 1 && !diffs.iter().all(|&d| d == diffs[0]) {
        diffs = diffs.windows(2).map(|w| w[1] - w[0]).collect();
        degree += 1;
    }
    ComplexityEstimate {
        value: degree + 1,
        confidence: Confidence::Fitted,
    }
}

/// Threshold value for `f_tor`/`f_ext`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Threshold {
    Known(usize),
    Inconclusive,
}

/// `inf{ s : length(Fᵢ(M,N)) < ∞ for all i ≥ s }`, certified either by a
/// finite resolution (everything past it vanishes) or by a periodicity
/// certificate (lengths repeat); otherwise inconclusive.
pub fn f_threshold(
    functor: Functor,
    m: &GradedModule,
    n: &GradedModule,
    bound: usize,
) -> Result<Threshold> {
    let data = window_lengths(functor, m, n, bound)?;
    if !data.certified {
        return Ok(Threshold::Inconclusive);
    }
    let mut s = data.lengths.len();
    while s > 0 {
        if matches!(data.lengths[s - 1], Length::Infinite) {
            break;
        }
        s -= 1;
    }
    Ok(Threshold::Known(s))
}

struct WindowLengths {
    lengths: Vec<Length>,
    /// Lengths beyond the window are determined: zero (finite resolution) or
    /// periodic repetition of the tail.
    certified: bool,
    complete: bool,
    periodic: Option<(usize, usize)>,
}

fn window_lengths(
    functor: Functor,
    m: &GradedModule,
    n: &GradedModule,
    bound: usize,
) -> Result<WindowLengths> {
    let res = resolution::resolve(m, Some(bound))?;
    let window = if res.is_complete() {
        res.length()
    } else {
        res.length() - 1
    };
    let mut lengths = Vec::with_capacity(window + 1);
    for i in 0..=window {
        let h = match functor {
            Functor::Ext => homology::ext_from_resolution(&res, i, n)?,
            Functor::Tor => homology::tor_from_resolution(&res, i, n)?,
        };
        lengths.push(h.length());
    }
    let periodic = resolution::detect_period(&res).filter(|_| m.ring().is_hypersurface());
    let complete = res.is_complete();
    Ok(WindowLengths {
        lengths,
        certified: complete || periodic.is_some(),
        complete,
        periodic,
    })
}

/// One point of the partial-sum trace.
#[derive(Debug, Clone)]
pub struct TracePoint {
    pub n: usize,
    pub partial_sum: i64,
    pub scaled: BigRational,
}

#[derive(Debug, Clone)]
pub enum Verdict {
    Exact(BigRational),
    Estimated {
        value: BigRational,
        window: (usize, usize),
    },
    InconclusiveOscillating {
        values: (BigRational, BigRational),
    },
    Inconclusive {
        reason: String,
    },
}

#[derive(Debug, Clone)]
pub struct AsymptoticEstimate {
    pub e: usize,
    pub functor: Functor,
    pub trace: Vec<TracePoint>,
    pub verdict: Verdict,
    pub certificate: Option<(usize, usize)>,
}

/// Higher Herbrand difference
/// `h_e(M,N) = lim Σ_{i=f_ext}^n (-1)ⁱ·length(Extⁱ(M,N)) / nᵉ`.
pub fn herbrand_h(
    e: usize,
    m: &GradedModule,
    n: &GradedModule,
    bound: usize,
) -> Result<AsymptoticEstimate> {
    limit_estimate(Functor::Ext, e, m, n, bound)
}

/// `η_e(M,N)`: the same limit shape over Tor lengths.
pub fn eta(
    e: usize,
    m: &GradedModule,
    n: &GradedModule,
    bound: usize,
) -> Result<AsymptoticEstimate> {
    limit_estimate(Functor::Tor, e, m, n, bound)
}

fn limit_estimate(
    functor: Functor,
    e: usize,
    m: &GradedModule,
    n: &GradedModule,
    bound: usize,
) -> Result<AsymptoticEstimate> {
    let data = window_lengths(functor, m, n, bound)?;
    let mut estimate = AsymptoticEstimate {
        e,
        functor,
        trace: Vec::new(),
        verdict: Verdict::Inconclusive {
            reason: String::new(),
        },
        certificate: data.periodic,
    };
    // f = start of the all-finite tail of the window
    let mut f = data.lengths.len();
    while f > 0 && matches!(data.lengths[f - 1], Length::Finite(_)) {
        f -= 1;
    }
    if f == data.lengths.len() && !data.complete {
        estimate.verdict = Verdict::Inconclusive {
            reason: "finiteness threshold not reached within bound".into(),
        };
        return Ok(estimate);
    }
    let finite: Vec<i64> = data.lengths[f..]
        .iter()
        .map(|l| l.finite().expect("finite past threshold") as i64)
        .collect();

    // partial sums s_n = Σ_{i=f}^n (-1)^i ℓ_i and the scaled trace
    let mut sum = 0i64;
    let mut sums = Vec::new();
    for (off, l) in finite.iter().enumerate() {
        let i = f + off;
        let sign = if i % 2 == 0 { 1 } else { -1 };
        sum += sign * l;
        sums.push(sum);
        if i >= 1 || e == 0 {
            estimate.trace.push(TracePoint {
                n: i,
                partial_sum: sum,
                scaled: scale(sum, i, e),
            });
        }
    }

    if data.complete {
        // finite Ext/Tor tail: the limit is the full sum for e = 0, else 0
        let value = if e == 0 {
            BigRational::from_integer(BigInt::from(sums.last().copied().unwrap_or(0)))
        } else {
            BigRational::zero()
        };
        estimate.verdict = Verdict::Exact(value);
        return Ok(estimate);
    }

    let window_end = data.lengths.len() - 1;
    let Some((start, period)) = data.periodic else {
        // lengths are finite over the tail but nothing certifies the limit
        let value = estimated_tail_value(&estimate).unwrap_or_else(BigRational::zero);
        estimate.verdict = Verdict::Estimated {
            value,
            window: (f, window_end),
        };
        return Ok(estimate);
    };
    // stable even/odd lengths from the certified zone
    let tail_from = (start + 1).max(f);
    if window_end < tail_from + period || window_end < f + 1 {
        estimate.verdict = Verdict::Inconclusive {
            reason: "certified zone too short for stable lengths".into(),
        };
        return Ok(estimate);
    }
    let len_at = |i: usize| finite[i - f];
    let (even_len, odd_len) = {
        let a = window_end - 1;
        let b = window_end;
        if a % 2 == 0 {
            (len_at(a), len_at(b))
        } else {
            (len_at(b), len_at(a))
        }
    };
    match e {
        0 => {
            if even_len == 0 && odd_len == 0 {
                let value =
                    BigRational::from_integer(BigInt::from(sums.last().copied().unwrap_or(0)));
                estimate.verdict = Verdict::Exact(value);
            } else if even_len == odd_len {
                // partial sums oscillate between two accumulation values
                let hi = sums[sums.len() - 1].max(sums[sums.len() - 2]);
                let lo = sums[sums.len() - 1].min(sums[sums.len() - 2]);
                estimate.verdict = Verdict::InconclusiveOscillating {
                    values: (
                        BigRational::from_integer(BigInt::from(lo)),
                        BigRational::from_integer(BigInt::from(hi)),
                    ),
                };
            } else {
                estimate.verdict = Verdict::Inconclusive {
                    reason: "partial sums unbounded".into(),
                };
            }
        }
        1 => {
            let diff = BigRational::from_integer(BigInt::from(even_len - odd_len))
                / BigRational::from_integer(BigInt::from(2));
            estimate.verdict = Verdict::Exact(diff);
        }
        _ => {
            // bounded or linear numerator over n^e with e ≥ 2
            estimate.verdict = Verdict::Exact(BigRational::zero());
        }
    }
    Ok(estimate)
}

fn scale(sum: i64, n: usize, e: usize) -> BigRational {
    let denom = BigInt::from(n.max(1) as i64).pow(e as u32);
    BigRational::new(BigInt::from(sum), denom)
}

/// Estimated value when no certificate exists: mean of the last two scaled
/// partial sums over the window.
pub fn estimated_tail_value(estimate: &AsymptoticEstimate) -> Option<BigRational> {
    let n = estimate.trace.len();
    if n < 2 {
        return None;
    }
    let a = &estimate.trace[n - 2].scaled;
    let b = &estimate.trace[n - 1].scaled;
    Some((a + b) / BigRational::from_integer(BigInt::from(2)))
}

#[derive(Serialize)]
pub struct TracePointJson {
    pub n: usize,
    pub partial_sum: i64,
    pub scaled: String,
}

#[derive(Serialize)]
pub struct AsymptoticJson {
    pub e: usize,
    pub functor: String,
    pub trace: Vec<TracePointJson>,
    pub verdict: String,
    pub value: Option<String>,
    pub certificate: Option<(usize, usize)>,
}

impl AsymptoticEstimate {
    pub fn to_json(&self) -> AsymptoticJson {
        let (verdict, value) = match &self.verdict {
            Verdict::Exact(v) => ("exact".to_string(), Some(v.to_string())),
            Verdict::Estimated { value, .. } => ("estimated".to_string(), Some(value.to_string())),
            Verdict::InconclusiveOscillating { values } => (
                "inconclusive-oscillating".to_string(),
                Some(format!("{{{}, {}}}", values.0, values.1)),
            ),
            Verdict::Inconclusive { reason } => (format!("inconclusive: {reason}"), None),
        };
        AsymptoticJson {
            e: self.e,
            functor: self.functor.to_string(),
            trace: self
                .trace
                .iter()
                .map(|t| TracePointJson {
                    n: t.n,
                    partial_sum: t.partial_sum,
                    scaled: t.scaled.to_string(),
                })
                .collect(),
            verdict,
            value,
            certificate: self.certificate,
        }
    }

    pub fn exact_value(&self) -> Option<&BigRational> {
        match &self.verdict {
            Verdict::Exact(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(&self.verdict, Verdict::Exact(v) if v.is_zero())
    }
}

/// Convenience: `h₀` agrees with `ξ` and `η₀` with `χ` when the threshold is
/// zero and the resolution is finite.
pub fn consistency_with_euler_forms(
    m: &GradedModule,
    n: &GradedModule,
    bound: usize,
) -> Result<bool> {
    let h0 = herbrand_h(0, m, n, bound)?;
    let eta0 = eta(0, m, n, bound)?;
    let f_ext = f_threshold(Functor::Ext, m, n, bound)?;
    let f_tor = f_threshold(Functor::Tor, m, n, bound)?;
    let mut ok = true;
    if f_ext == Threshold::Known(0) {
        let xi = invariants::xi_partial(0, m, n, Some(bound))?.value;
        ok &= h0.exact_value() == Some(&BigRational::from_integer(BigInt::from(xi)));
    }
    if f_tor == Threshold::Known(0) {
        let chi = invariants::chi_partial(0, m, n, Some(bound))?.value;
        ok &= eta0.exact_value() == Some(&BigRational::from_integer(BigInt::from(chi)));
    }
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::poly::Polynomial;
    use crate::ring::{PolyRing, Ring};
    use std::sync::Arc;

    fn dual_numbers() -> Ring {
        let pr = PolyRing::standard(Field::Rationals, &["x"]);
        let x2 = Polynomial::parse(&pr, "x^2").unwrap();
        Ring::quotient(pr, vec![x2]).unwrap()
    }

    fn r3() -> Ring {
        Ring::polynomial(PolyRing::standard(Field::Rationals, &["x", "y", "z"]))
    }

    #[test]
    fn complexity_of_residue_fields() {
        let k3 = GradedModule::residue_field(r3());
        let c = complexity(&k3, 6).unwrap();
        assert_eq!((c.value, c.confidence), (0, Confidence::Exact));

        let k1 = GradedModule::residue_field(dual_numbers());
        let c = complexity(&k1, 6).unwrap();
        assert_eq!((c.value, c.confidence), (1, Confidence::Exact));

        let pr = PolyRing::standard(Field::Rationals, &["x", "y"]);
        let gens = vec![
            Polynomial::parse(&pr, "x^2").unwrap(),
            Polynomial::parse(&pr, "y^2").unwrap(),
        ];
        let ring = Ring::quotient(Arc::clone(&pr), gens).unwrap();
        let k2 = GradedModule::residue_field(ring);
        let c = complexity(&k2, 6).unwrap();
        assert_eq!((c.value, c.confidence), (2, Confidence::Fitted));
    }

    #[test]
    fn herbrand_h1_vanishes_on_dual_numbers() {
        let k = GradedModule::residue_field(dual_numbers());
        let h = herbrand_h(1, &k, &k, 8).unwrap();
        assert_eq!(h.exact_value(), Some(&BigRational::zero()));
        assert!(h.certificate.is_some());
        let n = eta(1, &k, &k, 8).unwrap();
        assert_eq!(n.exact_value(), Some(&BigRational::zero()));
    }

    #[test]
    fn herbrand_h0_oscillates_on_dual_numbers() {
        let k = GradedModule::residue_field(dual_numbers());
        let h = herbrand_h(0, &k, &k, 8).unwrap();
        assert!(matches!(h.verdict, Verdict::InconclusiveOscillating { .. }));
    }

    #[test]
    fn herbrand_agrees_with_euler_forms_over_polynomial_rings() {
        let ring = r3();
        let pr = ring.poly_ring().clone();
        let m = GradedModule::cyclic(
            ring.clone(),
            vec![
                Polynomial::parse(&pr, "y").unwrap(),
                Polynomial::parse(&pr, "z").unwrap(),
            ],
        )
        .unwrap();
        let n = GradedModule::cyclic(ring, vec![Polynomial::parse(&pr, "x").unwrap()]).unwrap();
        assert!(consistency_with_euler_forms(&m, &n, 8).unwrap());
        // e ≥ 1 over a polynomial ring is exactly zero
        let h = herbrand_h(2, &m, &n, 8).unwrap();
        assert_eq!(h.exact_value(), Some(&BigRational::zero()));
    }

    #[test]
    fn thresholds() {
        let ring = r3();
        let k = GradedModule::residue_field(ring.clone());
        assert_eq!(
            f_threshold(Functor::Ext, &k, &k, 8).unwrap(),
            Threshold::Known(0)
        );
        assert_eq!(
            f_threshold(Functor::Tor, &k, &k, 8).unwrap(),
            Threshold::Known(0)
        );

        // R ⊕ k against itself: Hom contains R, so the threshold is 1
        let r = GradedModule::ring_module(ring.clone());
        let m = r.direct_sum(&k);
        assert_eq!(
            f_threshold(Functor::Ext, &m, &m, 8).unwrap(),
            Threshold::Known(1)
        );
        assert_eq!(
            f_threshold(Functor::Tor, &m, &m, 8).unwrap(),
            Threshold::Known(1)
        );

        let z = GradedModule::zero(ring);
        assert_eq!(
            f_threshold(Functor::Ext, &z, &z, 8).unwrap(),
            Threshold::Known(0)
        );
    }
}
