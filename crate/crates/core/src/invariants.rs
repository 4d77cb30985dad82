//! Partial Euler characteristics and Euler forms, grade, twist coefficients,
//! and the identity checkers built from them.
//!
//! Sign conventions are taken literally: `χⱼ = Σ_{i≥j} (-1)^{i-j}·len Torᵢ`,
//! `ξⱼ = Σ_{i≥j} (-1)^{i-j}·len Extⁱ`, `ξ̄ⱼ = Σ_{i=0..j} (-1)^i·len Ext^{j-i}`,
//! with empty sums (and the zero module) contributing 0 and `ξ̄₋₁ = 0`.
//! Hypothesis-violating inputs yield structured skips or errors, never
//! silently wrong numbers.

use crate::error::{Error, Result};
use crate::hilbert;
use crate::homology::{self, Functor};
use crate::module::{Dimension, GradedModule, Length};
use crate::resolution::{self, FreeResolution};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use std::fmt;

/// First index of nonvanishing Ext; infinite when all vanish.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GradeValue {
    Finite(usize),
    Infinite,
}

impl GradeValue {
    pub fn finite(&self) -> Option<usize> {
        match self {
            GradeValue::Finite(g) => Some(*g),
            GradeValue::Infinite => None,
        }
    }

    pub fn at_least(&self, j: usize) -> bool {
        match self {
            GradeValue::Finite(g) => *g >= j,
            GradeValue::Infinite => true,
        }
    }
}

impl fmt::Display for GradeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GradeValue::Finite(g) => write!(f, "{g}"),
            GradeValue::Infinite => write!(f, "infinite"),
        }
    }
}

/// Index of the last nonvanishing Tor; minus infinity when all vanish.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LastTor {
    MinusInfinity,
    Finite(usize),
}

impl fmt::Display for LastTor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LastTor::Finite(q) => write!(f, "{q}"),
            LastTor::MinusInfinity => write!(f, "-infinity"),
        }
    }
}

/// An alternating sum of homology lengths, with the lengths that entered it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternatingSum {
    pub functor: Functor,
    /// Index of the first retained term.
    pub start: usize,
    /// Lengths at indices `start, start+1, …`.
    pub lengths: Vec<u64>,
    pub value: i64,
}

/// Lengths of `Extⁱ` or `Torᵢ` for `i = 0..window`, with a completeness flag:
/// when `complete`, every index past the window is zero.
pub struct FunctorLengths {
    pub lengths: Vec<Length>,
    pub complete: bool,
}

pub fn functor_lengths(
    functor: Functor,
    m: &GradedModule,
    n: &GradedModule,
    bound: Option<usize>,
) -> Result<FunctorLengths> {
    let res = resolution::resolve(m, bound)?;
    let window = if res.is_complete() {
        res.length()
    } else {
        res.length() - 1
    };
    let mut lengths = Vec::with_capacity(window + 1);
    for i in 0..=window {
        let module = match functor {
            Functor::Ext => homology::ext_from_resolution(&res, i, n)?,
            Functor::Tor => homology::tor_from_resolution(&res, i, n)?,
        };
        lengths.push(module.length());
    }
    Ok(FunctorLengths {
        lengths,
        complete: res.is_complete(),
    })
}

fn alternating_tail(
    functor: Functor,
    j: usize,
    m: &GradedModule,
    n: &GradedModule,
    bound: Option<usize>,
) -> Result<AlternatingSum> {
    let all = functor_lengths(functor, m, n, bound)?;
    if !all.complete {
        return Err(Error::HypothesisViolated {
            hypothesis: format!("{functor} vanishes for i >> 0"),
            detail: "resolution does not terminate within the truncation bound".into(),
        });
    }
    let mut lengths = Vec::new();
    let mut value = 0i64;
    for i in j..all.lengths.len() {
        let l = match all.lengths[i] {
            Length::Finite(l) => l,
            Length::Infinite => {
                return Err(Error::HypothesisViolated {
                    hypothesis: format!("length({functor}_{i}) < infinity"),
                    detail: format!("{functor} at homological degree {i} has infinite length"),
                })
            }
        };
        lengths.push(l);
        let sign = if (i - j).is_multiple_of(2) { 1 } else { -1 };
        value += sign * l as i64;
    }
    Ok(AlternatingSum {
        functor,
        start: j,
        lengths,
        value,
    })
}

/// `χⱼ(M,N) = Σ_{i≥j} (-1)^{i-j}·length(Torᵢ(M,N))`.
pub fn chi_partial(
    j: usize,
    m: &GradedModule,
    n: &GradedModule,
    bound: Option<usize>,
) -> Result<AlternatingSum> {
    alternating_tail(Functor::Tor, j, m, n, bound)
}

/// `ξⱼ(M,N) = Σ_{i≥j} (-1)^{i-j}·length(Extⁱ(M,N))`.
pub fn xi_partial(
    j: usize,
    m: &GradedModule,
    n: &GradedModule,
    bound: Option<usize>,
) -> Result<AlternatingSum> {
    alternating_tail(Functor::Ext, j, m, n, bound)
}

/// `ξ̄ⱼ(M,N) = Σ_{i=0..j} (-1)^i·length(Ext^{j-i}(M,N))`, with `ξ̄₋₁ = 0`.
pub fn xi_bar(
    j: i64,
    m: &GradedModule,
    n: &GradedModule,
    bound: Option<usize>,
) -> Result<AlternatingSum> {
    if j < 0 {
        return Ok(AlternatingSum {
            functor: Functor::Ext,
            start: 0,
            lengths: Vec::new(),
            value: 0,
        });
    }
    let j = j as usize;
    let all = functor_lengths(Functor::Ext, m, n, bound)?;
    let mut lengths = Vec::new();
    let mut value = 0i64;
    for t in 0..=j {
        // t indexes Ext^t; its sign in the sum is (-1)^{j-t}
        let l = match all.lengths.get(t).copied().unwrap_or({
            if all.complete {
                Length::Finite(0)
            } else {
                Length::Infinite
            }
        }) {
            Length::Finite(l) => l,
            Length::Infinite => {
                if all.lengths.get(t).is_some() {
                    return Err(Error::HypothesisViolated {
                        hypothesis: format!("length(ext^{t}) < infinity"),
                        detail: format!("Ext at homological degree {t} has infinite length"),
                    });
                }
                return Err(Error::InsufficientTruncation {
                    needed: t,
                    bound: all.lengths.len(),
                });
            }
        };
        lengths.push(l);
        let sign = if (j - t).is_multiple_of(2) { 1 } else { -1 };
        value += sign * l as i64;
    }
    Ok(AlternatingSum {
        functor: Functor::Ext,
        start: 0,
        lengths,
        value,
    })
}

/// `grade(M,N) = inf{ n : Extⁿ(M,N) ≠ 0 }`.
pub fn grade_pair(m: &GradedModule, n: &GradedModule, bound: Option<usize>) -> Result<GradeValue> {
    let res = resolution::resolve(m, bound)?;
    let window = if res.is_complete() {
        res.length()
    } else {
        res.length() - 1
    };
    for i in 0..=window {
        if !homology::ext_from_resolution(&res, i, n)?.is_zero() {
            return Ok(GradeValue::Finite(i));
        }
    }
    if res.is_complete() {
        Ok(GradeValue::Infinite)
    } else {
        Err(Error::InsufficientTruncation {
            needed: window + 1,
            bound: res.truncated_at.unwrap(),
        })
    }
}

/// `grade M = grade(M, R)`.
pub fn grade_of(m: &GradedModule, bound: Option<usize>) -> Result<GradeValue> {
    grade_pair(m, &GradedModule::ring_module(m.ring().clone()), bound)
}

/// `q(M,N) = sup{ n : Torₙ(M,N) ≠ 0 }`.
pub fn q_last_tor(m: &GradedModule, n: &GradedModule, bound: Option<usize>) -> Result<LastTor> {
    let res = resolution::resolve(m, bound)?;
    if !res.is_complete() {
        return Err(Error::HypothesisViolated {
            hypothesis: "Tor vanishes for i >> 0".into(),
            detail: "resolution does not terminate within the truncation bound".into(),
        });
    }
    for i in (0..=res.length()).rev() {
        if !homology::tor_from_resolution(&res, i, n)?.is_zero() {
            return Ok(LastTor::Finite(i));
        }
    }
    Ok(LastTor::MinusInfinity)
}

/// Projective dimension read off a complete resolution.
pub fn projective_dimension(m: &GradedModule, bound: Option<usize>) -> Result<Option<usize>> {
    let res = resolution::resolve(m, bound)?;
    Ok(if res.is_complete() {
        Some(res.length())
    } else {
        None
    })
}

/// Twist coefficients `c_k = (1/k!)·Σ_{i,j} (-1)^i·n_ij^k` of a minimal
/// finite resolution, for `0 ≤ k ≤ dim R`, with `k₀` the least nonzero index.
#[derive(Debug, Clone, PartialEq)]
pub struct TwistCoefficients {
    pub c: Vec<BigRational>,
    pub k0: Option<usize>,
}

pub fn twist_coefficients(res: &FreeResolution) -> Result<TwistCoefficients> {
    if !res.is_complete() {
        return Err(Error::TruncatedResolution);
    }
    if !res.minimal {
        return Err(Error::NotMinimal);
    }
    let dim_r = res.ring.dimension().max(0) as usize;
    let mut c = Vec::with_capacity(dim_r + 1);
    let mut factorial = BigRational::one();
    for k in 0..=dim_r {
        if k > 0 {
            factorial *= BigRational::from_integer(BigInt::from(k as i64));
        }
        let mut sum = BigInt::zero();
        for i in 0..=res.length() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            for twist in res.twists(i) {
                sum += sign * BigInt::from(twist).pow(k as u32);
            }
        }
        c.push(BigRational::from_integer(sum) / &factorial);
    }
    let k0 = c.iter().position(|v| !v.is_zero());
    if let Some(k0) = k0 {
        // consistency: k₀ = dim R − dim M for the resolved module
        let m = GradedModule::new(
            res.ring.clone(),
            res.gen_degrees(0).to_vec(),
            res.differential(1).to_vec(),
        )?;
        if let Dimension::Finite(dm) = m.dimension() {
            let expected = res.ring.dimension() - dm;
            if expected != k0 as i64 {
                return Err(Error::Structural(format!(
                    "twist coefficient index {k0} disagrees with dim R - dim M = {expected}"
                )));
            }
        }
    }
    Ok(TwistCoefficients { c, k0 })
}

/// Outcome of a checker whose hypotheses may fail on a given instance.
#[derive(Debug, Clone)]
pub enum Outcome<T> {
    Checked(T),
    Skipped { hypothesis: String },
}

impl<T> Outcome<T> {
    pub fn checked(self) -> Option<T> {
        match self {
            Outcome::Checked(t) => Some(t),
            Outcome::Skipped { .. } => None,
        }
    }

    pub fn is_skipped(&self) -> bool {
        matches!(self, Outcome::Skipped { .. })
    }
}

/// `length(M ⊗ N) < ∞`, decided on the support of Tor₀.
pub fn tensor_length_finite(
    m: &GradedModule,
    n: &GradedModule,
    bound: Option<usize>,
) -> Result<bool> {
    let t0 = homology::tor_module(0, m, n, bound)?;
    Ok(matches!(t0.length(), Length::Finite(_)))
}

/// Both sides of the graded intersection identity:
/// `χ(M,N) = c_{k₀}·P_N^{(k₀)}` and `(-1)^{k₀}·ξ(M,N) = c_{k₀}·P_N^{(k₀)}`,
/// together with `χ = (-1)^{grade M}·ξ`.
#[derive(Debug, Clone)]
pub struct ChanReport {
    pub chi: i64,
    pub xi: i64,
    pub grade: usize,
    pub k0: usize,
    pub c_k0: BigRational,
    pub pn_derivative: BigRational,
    pub rhs: BigRational,
    pub chan_holds: bool,
    pub chi_side_holds: bool,
    pub xi_side_holds: bool,
    pub tor_lengths: Vec<u64>,
    pub ext_lengths: Vec<u64>,
}

pub fn chan_check(
    m: &GradedModule,
    n: &GradedModule,
    bound: Option<usize>,
) -> Result<Outcome<ChanReport>> {
    if m.is_zero() {
        return Ok(Outcome::Skipped {
            hypothesis: "M is nonzero".into(),
        });
    }
    if !tensor_length_finite(m, n, bound)? {
        return Ok(Outcome::Skipped {
            hypothesis: "length(M⊗N) < infinity".into(),
        });
    }
    let res = resolution::resolve(m, bound)?;
    if !res.is_complete() {
        return Ok(Outcome::Skipped {
            hypothesis: "pdim M < infinity".into(),
        });
    }
    let chi = chi_partial(0, m, n, bound)?;
    let xi = xi_partial(0, m, n, bound)?;
    let grade = match grade_of(m, bound)? {
        GradeValue::Finite(g) => g,
        GradeValue::Infinite => {
            return Ok(Outcome::Skipped {
                hypothesis: "grade M < infinity".into(),
            })
        }
    };
    let tc = twist_coefficients(&res)?;
    let k0 = tc
        .k0
        .expect("nonzero module has a nonzero twist coefficient");
    let c_k0 = tc.c[k0].clone();
    let pn = hilbert::hilbert_polynomial(n)?;
    let deriv = pn.nth_derivative(k0);
    let pn_derivative = deriv
        .constant_value()
        .ok_or_else(|| Error::HypothesisViolated {
            hypothesis: "dim N <= k0".into(),
            detail: format!("P_N^({k0}) is not constant"),
        })?;
    let rhs = &c_k0 * &pn_derivative;
    let chi_rat = BigRational::from_integer(BigInt::from(chi.value));
    let xi_rat = BigRational::from_integer(BigInt::from(xi.value));
    let xi_sign = if k0 % 2 == 0 {
        xi_rat.clone()
    } else {
        -xi_rat.clone()
    };
    let chan_sign = if grade % 2 == 0 { xi.value } else { -xi.value };
    Ok(Outcome::Checked(ChanReport {
        chi: chi.value,
        xi: xi.value,
        grade,
        k0,
        c_k0,
        pn_derivative,
        chi_side_holds: chi_rat == rhs,
        xi_side_holds: xi_sign == rhs,
        rhs,
        chan_holds: chi.value == chan_sign,
        tor_lengths: chi.lengths,
        ext_lengths: xi.lengths,
    }))
}

/// The three equivalent vanishing conditions, checked independently:
/// `ξⱼ(M,N) = 0`, `grade(M,N) ≥ j`, `χ_{pdim M - j + 1}(M,N) = 0`,
/// plus the sign constraint `ξⱼ ≥ 0`. Hypotheses: `length(M⊗N) < ∞`,
/// `dim M + dim N < dim R`, `1 ≤ j ≤ grade M`.
#[derive(Debug, Clone)]
pub struct EquivalenceReport {
    pub xi_j: i64,
    pub grade_mn: GradeValue,
    pub chi_top: i64,
    pub cond_xi_zero: bool,
    pub cond_grade_ge_j: bool,
    pub cond_chi_zero: bool,
    pub equivalent: bool,
    pub xi_j_nonneg: bool,
}

pub fn vanishing_equivalence_check(
    j: usize,
    m: &GradedModule,
    n: &GradedModule,
    bound: Option<usize>,
) -> Result<Outcome<EquivalenceReport>> {
    if m.is_zero() {
        return Ok(Outcome::Skipped {
            hypothesis: "M is nonzero".into(),
        });
    }
    if !tensor_length_finite(m, n, bound)? {
        return Ok(Outcome::Skipped {
            hypothesis: "length(M⊗N) < infinity".into(),
        });
    }
    let dim_sum = m.dimension().lower_bound() + n.dimension().lower_bound();
    if dim_sum >= m.ring().dimension() {
        return Ok(Outcome::Skipped {
            hypothesis: "dim M + dim N < dim R".into(),
        });
    }
    let grade_m = match grade_of(m, bound)? {
        GradeValue::Finite(g) => g,
        GradeValue::Infinite => {
            return Ok(Outcome::Skipped {
                hypothesis: "grade M < infinity".into(),
            })
        }
    };
    if j < 1 || j > grade_m {
        return Ok(Outcome::Skipped {
            hypothesis: "1 <= j <= grade M".into(),
        });
    }
    let pdim = match projective_dimension(m, bound)? {
        Some(p) => p,
        None => {
            return Ok(Outcome::Skipped {
                hypothesis: "pdim M < infinity".into(),
            })
        }
    };
    let xi_j = xi_partial(j, m, n, bound)?.value;
    let grade_mn = grade_pair(m, n, bound)?;
    let chi_top = chi_partial(pdim - j + 1, m, n, bound)?.value;
    let c1 = xi_j == 0;
    let c2 = grade_mn.at_least(j);
    let c3 = chi_top == 0;
    Ok(Outcome::Checked(EquivalenceReport {
        xi_j,
        grade_mn,
        chi_top,
        cond_xi_zero: c1,
        cond_grade_ge_j: c2,
        cond_chi_zero: c3,
        equivalent: c1 == c2 && c2 == c3,
        xi_j_nonneg: xi_j >= 0,
    }))
}

/// Nonvanishing of self-extensions `Extⁿ(M,M)` through the required range:
/// `0..=pdim M` over a polynomial ring, `0..=grade M` over a quotient ring
/// when `grade M ≤ 2`.
#[derive(Debug, Clone)]
pub struct SelfExtReport {
    pub grade: usize,
    pub pdim: usize,
    /// `nonzero[n]` records `Extⁿ(M,M) ≠ 0` for `n = 0..=pdim`.
    pub nonzero: Vec<bool>,
    /// Indices that must be nonzero for the check to pass.
    pub required: usize,
    pub pass: bool,
}

pub fn self_ext_check(m: &GradedModule, bound: Option<usize>) -> Result<Outcome<SelfExtReport>> {
    if m.is_zero() {
        return Ok(Outcome::Skipped {
            hypothesis: "M is nonzero".into(),
        });
    }
    let pdim = match projective_dimension(m, bound)? {
        Some(p) => p,
        None => {
            return Ok(Outcome::Skipped {
                hypothesis: "pdim M < infinity".into(),
            })
        }
    };
    let grade = match grade_of(m, bound)? {
        GradeValue::Finite(g) => g,
        GradeValue::Infinite => {
            return Ok(Outcome::Skipped {
                hypothesis: "grade M < infinity".into(),
            })
        }
    };
    let required = if m.ring().is_quotient() {
        if grade > 2 {
            return Ok(Outcome::Skipped {
                hypothesis: "grade M <= 2 over quotient rings".into(),
            });
        }
        grade
    } else {
        pdim
    };
    let res = resolution::resolve(m, bound)?;
    let mut nonzero = Vec::with_capacity(pdim + 1);
    for nn in 0..=pdim {
        nonzero.push(!homology::ext_from_resolution(&res, nn, m)?.is_zero());
    }
    let pass = nonzero.iter().take(required + 1).all(|&b| b);
    Ok(Outcome::Checked(SelfExtReport {
        grade,
        pdim,
        nonzero,
        required,
        pass,
    }))
}

/// The decomposition identity
/// `(-1)^{grade M + j}·ξⱼ(M,N) = χ(M,N) + (-1)^{grade M + j}·ξ̄_{j-1}(M,N)`.
#[derive(Debug, Clone)]
pub struct DecompositionReport {
    pub grade: usize,
    pub xi_j: i64,
    pub chi: i64,
    pub xi_bar_prev: i64,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

pub fn xi_decomposition_check(
    j: usize,
    m: &GradedModule,
    n: &GradedModule,
    bound: Option<usize>,
) -> Result<Outcome<DecompositionReport>> {
    if m.is_zero() {
        return Ok(Outcome::Skipped {
            hypothesis: "M is nonzero".into(),
        });
    }
    if !tensor_length_finite(m, n, bound)? {
        return Ok(Outcome::Skipped {
            hypothesis: "length(M⊗N) < infinity".into(),
        });
    }
    if projective_dimension(m, bound)?.is_none() || projective_dimension(n, bound)?.is_none() {
        return Ok(Outcome::Skipped {
            hypothesis: "pdim M, pdim N < infinity".into(),
        });
    }
    let grade = match grade_of(m, bound)? {
        GradeValue::Finite(g) => g,
        GradeValue::Infinite => {
            return Ok(Outcome::Skipped {
                hypothesis: "grade M < infinity".into(),
            })
        }
    };
    let xi_j = xi_partial(j, m, n, bound)?.value;
    let chi = chi_partial(0, m, n, bound)?.value;
    let xi_bar_prev = xi_bar(j as i64 - 1, m, n, bound)?.value;
    let sign = if (grade + j).is_multiple_of(2) { 1 } else { -1 };
    let lhs = sign * xi_j;
    let rhs = chi + sign * xi_bar_prev;
    Ok(Outcome::Checked(DecompositionReport {
        grade,
        xi_j,
        chi,
        xi_bar_prev,
        lhs,
        rhs,
        holds: lhs == rhs,
    }))
}

/// Schema for JSON emission of a single invariant computation.
#[derive(Serialize)]
pub struct InvariantReport {
    pub invariant: String,
    pub args: Vec<String>,
    pub value: String,
    pub lengths: Vec<LengthEntry>,
    pub hypotheses: Vec<HypothesisEntry>,
}

#[derive(Serialize)]
pub struct LengthEntry {
    pub functor: String,
    pub i: usize,
    pub length: String,
}

#[derive(Serialize)]
pub struct HypothesisEntry {
    pub name: String,
    pub holds: bool,
}

impl AlternatingSum {
    pub fn length_entries(&self) -> Vec<LengthEntry> {
        self.lengths
            .iter()
            .enumerate()
            .map(|(off, l)| LengthEntry {
                functor: self.functor.to_string(),
                i: self.start + off,
                length: l.to_string(),
            })
            .collect()
    }
}
