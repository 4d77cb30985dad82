//! Hilbert series numerators and cumulative Hilbert polynomials.
//!
//! The Hilbert series of a module is `N(t) / Π(1 - t^{wᵢ})` with `N` a
//! Laurent polynomial; the cumulative Hilbert polynomial `P` agrees with
//! `n ↦ Σ_{k≤n} dim M_k` for `n ≥ n₀` and has degree equal to the module's
//! dimension.

use crate::error::{Error, Result};
use crate::module::GradedModule;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::fmt;

/// Integer Laurent polynomial `Σ coeffs[i] · t^{offset+i}`, trimmed so the
/// first and last coefficients are nonzero (empty = 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntSeries {
    pub offset: i64,
    pub coeffs: Vec<BigInt>,
}

impl IntSeries {
    pub fn zero() -> Self {
        IntSeries {
            offset: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        IntSeries {
            offset: 0,
            coeffs: vec![BigInt::one()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn shifted(&self, k: i64) -> IntSeries {
        IntSeries {
            offset: self.offset + k,
            coeffs: self.coeffs.clone(),
        }
    }

    fn trim(mut self) -> IntSeries {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.offset += lead_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.offset = 0;
        }
        self
    }

    pub fn add(&self, other: &IntSeries) -> IntSeries {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.offset.min(other.offset);
        let hi =
            (self.offset + self.coeffs.len() as i64).max(other.offset + other.coeffs.len() as i64);
        let mut coeffs = vec![BigInt::zero(); (hi - lo) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.offset - lo) as usize + i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[(other.offset - lo) as usize + i] += c;
        }
        IntSeries { offset: lo, coeffs }.trim()
    }

    pub fn sub(&self, other: &IntSeries) -> IntSeries {
        let negated = IntSeries {
            offset: other.offset,
            coeffs: other.coeffs.iter().map(|c| -c).collect(),
        };
        self.add(&negated)
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Largest exponent with nonzero coefficient.
    pub fn degree(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.offset + self.coeffs.len() as i64 - 1)
        }
    }

    /// Exact division by `1 + t + … + t^{w-1}`; `None` when not divisible.
    fn div_sigma(&self, w: u32) -> Option<IntSeries> {
        if self.is_zero() {
            return Some(IntSeries::zero());
        }
        if w == 1 {
            return Some(self.clone());
        }
        // long division, ascending
        let mut rem = self.coeffs.clone();
        let n = rem.len();
        let deg_d = (w - 1) as usize;
        if n < deg_d + 1 {
            return None;
        }
        let mut q = vec![BigInt::zero(); n - deg_d];
        for i in 0..q.len() {
            let c = rem[i].clone();
            if c.is_zero() {
                continue;
            }
            q[i] = c.clone();
            for j in 0..=deg_d {
                rem[i + j] -= &c;
            }
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(
                IntSeries {
                    offset: self.offset,
                    coeffs: q,
                }
                .trim(),
            )
        } else {
            None
        }
    }

    /// Exact division by `1 - t`; requires the coefficient sum to vanish.
    fn div_one_minus_t(&self) -> Option<IntSeries> {
        if self.is_zero() {
            return Some(IntSeries::zero());
        }
        // (1-t)·q = p with q_j = p_j + q_{j-1}: prefix sums
        let mut q = Vec::with_capacity(self.coeffs.len());
        let mut acc = BigInt::zero();
        for c in &self.coeffs {
            acc += c;
            q.push(acc.clone());
        }
        if q.pop().is_some_and(|last| last.is_zero()) {
            Some(
                IntSeries {
                    offset: self.offset,
                    coeffs: q,
                }
                .trim(),
            )
        } else {
            None
        }
    }
}

/// Cumulative Hilbert polynomial: coefficients ascending in `n`, with the
/// threshold `n₀` past which it matches the counted cumulative Hilbert
/// function.
#[derive(Debug, Clone, PartialEq)]
pub struct HilbertPolynomial {
    pub coeffs: Vec<BigRational>,
    pub n0: i64,
}

/// JSON form: exact rational coefficients as decimal strings, ascending.
#[derive(Serialize)]
pub struct HilbertPolynomialJson {
    pub coefficients: Vec<String>,
    pub n0: i64,
}

impl HilbertPolynomial {
    pub fn to_json(&self) -> HilbertPolynomialJson {
        HilbertPolynomialJson {
            coefficients: self.coeffs.iter().map(|c| c.to_string()).collect(),
            n0: self.n0,
        }
    }
}

impl HilbertPolynomial {
    pub fn zero() -> Self {
        HilbertPolynomial {
            coeffs: Vec::new(),
            n0: 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading_coefficient(&self) -> BigRational {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn derivative(&self) -> HilbertPolynomial {
        let coeffs: Vec<BigRational> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect();
        HilbertPolynomial {
            coeffs: trim_rationals(coeffs),
            n0: self.n0,
        }
    }

    pub fn nth_derivative(&self, k: usize) -> HilbertPolynomial {
        let mut p = self.clone();
        for _ in 0..k {
            p = p.derivative();
        }
        p
    }

    pub fn evaluate(&self, n: i64) -> BigRational {
        let x = BigRational::from_integer(BigInt::from(n));
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &x + c;
        }
        acc
    }

    /// The value of a constant polynomial (degree ≤ 0).
    pub fn constant_value(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }
}

impl fmt::Display for HilbertPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                1 if a.is_one() => write!(f, "n")?,
                1 => write!(f, "{a}*n")?,
                _ if a.is_one() => write!(f, "n^{i}")?,
                _ => write!(f, "{a}*n^{i}")?,
            }
        }
        Ok(())
    }
}

fn trim_rationals(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Cumulative Hilbert polynomial of a module, computed from the Hilbert
/// series numerator: divide out the weight factors and all powers of
/// `(1 - t)`, then expand binomial coefficients.
pub fn hilbert_polynomial(x: &GradedModule) -> Result<HilbertPolynomial> {
    let num = x.hilbert_numerator();
    if num.is_zero() {
        return Ok(HilbertPolynomial::zero());
    }
    let weights = &x.ring().poly_ring().weights;
    let mut series = num;
    for &w in weights {
        if w > 1 {
            series = series.div_sigma(w).ok_or_else(|| {
                Error::NoHilbertPolynomial(
                    "Hilbert function is quasi-polynomial under this weighting".into(),
                )
            })?;
        }
    }
    // full denominator is now (1-t)^{nvars+1} including the cumulative factor
    let mut e = weights.len() + 1;
    while e > 0 {
        match series.div_one_minus_t() {
            Some(q) => {
                series = q;
                e -= 1;
            }
            None => break,
        }
    }
    if e == 0 {
        // only the zero module has a polynomial cumulative series
        return Err(Error::NoHilbertPolynomial(
            "cumulative Hilbert series has no pole at t=1".into(),
        ));
    }
    let n0 = series.degree().unwrap_or(0);

    // P(n) = Σ_j a_j · C(n - j + e - 1, e - 1)
    let mut coeffs = vec![BigRational::zero(); e];
    for (idx, a) in series.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let j = series.offset + idx as i64;
        let term = binomial_polynomial(-j, e - 1);
        let a = BigRational::from_integer(a.clone());
        for (i, c) in term.iter().enumerate() {
            coeffs[i] += c * &a;
        }
    }
    Ok(HilbertPolynomial {
        coeffs: trim_rationals(coeffs),
        n0,
    })
}

/// Coefficients of `C(n + shift + d, d)` as a polynomial in `n` of degree `d`:
/// `Π_{r=1..d} (n + shift + r) / d!`.
fn binomial_polynomial(shift: i64, d: usize) -> Vec<BigRational> {
    let mut poly = vec![BigRational::one()];
    for r in 1..=d {
        let root = BigRational::from_integer(BigInt::from(shift + r as i64));
        let mut next = vec![BigRational::zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i] += c * &root;
            next[i + 1] += c;
        }
        poly = next;
    }
    let mut fact = BigRational::one();
    for r in 1..=d {
        fact *= BigRational::from_integer(BigInt::from(r as i64));
    }
    poly.into_iter().map(|c| c / &fact).collect()
}
