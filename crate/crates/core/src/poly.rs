//! Multivariate polynomials with exact coefficients.
//!
//! Terms are kept strictly descending under the owning ring's canonical
//! order (weighted grevlex), with no zero coefficients and pairwise distinct
//! monomials; the empty term list is zero. Leading terms under *other*
//! orders are found by scanning, which is cheap at the polynomial sizes this
//! engine works with.

use crate::error::{Error, Result};
use crate::field::{display_negative, FieldElement};
use crate::monomial::Monomial;
use crate::order::ScalarOrder;
use crate::ring::PolyRing;
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: FieldElement,
    pub mono: Monomial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial {
            ring: Arc::clone(ring),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Polynomial::constant(ring, ring.field.one())
    }

    pub fn constant(ring: &Arc<PolyRing>, c: FieldElement) -> Self {
        if c.is_zero() {
            return Polynomial::zero(ring);
        }
        Polynomial {
            ring: Arc::clone(ring),
            terms: vec![Term {
                coeff: c,
                mono: Monomial::one(ring.nvars()),
            }],
        }
    }

    pub fn variable(ring: &Arc<PolyRing>, i: usize) -> Self {
        Polynomial {
            ring: Arc::clone(ring),
            terms: vec![Term {
                coeff: ring.field.one(),
                mono: Monomial::var(ring.nvars(), i),
            }],
        }
    }

    pub fn monomial(ring: &Arc<PolyRing>, coeff: FieldElement, mono: Monomial) -> Self {
        assert_eq!(
            mono.nvars(),
            ring.nvars(),
            "monomial variable count mismatch"
        );
        if coeff.is_zero() {
            return Polynomial::zero(ring);
        }
        Polynomial {
            ring: Arc::clone(ring),
            terms: vec![Term { coeff, mono }],
        }
    }

    /// Build from an arbitrary term list; sorts and merges into canonical form.
    pub fn from_terms(ring: &Arc<PolyRing>, terms: Vec<(FieldElement, Monomial)>) -> Self {
        let mut raw: Vec<Term> = terms
            .into_iter()
            .map(|(coeff, mono)| Term { coeff, mono })
            .collect();
        let order = ring.canonical_order();
        raw.sort_by(|a, b| order.cmp_mono(&b.mono, &a.mono));
        let mut merged: Vec<Term> = Vec::with_capacity(raw.len());
        for t in raw {
            match merged.last_mut() {
                Some(last) if last.mono == t.mono => {
                    last.coeff = last.coeff.add(&t.coeff);
                    if last.coeff.is_zero() {
                        merged.pop();
                    }
                }
                _ => {
                    if !t.coeff.is_zero() {
                        merged.push(t);
                    }
                }
            }
        }
        Polynomial {
            ring: Arc::clone(ring),
            terms: merged,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].mono.is_one()
    }

    /// The degree-zero coefficient.
    pub fn constant_coeff(&self) -> FieldElement {
        self.terms
            .iter()
            .find(|t| t.mono.is_one())
            .map(|t| t.coeff.clone())
            .unwrap_or_else(|| self.ring.field.zero())
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.check_ring(other);
        // merge of two canonically sorted term lists
        let order = self.ring.canonical_order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match order.cmp_mono(&self.terms[i].mono, &other.terms[j].mono) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = self.terms[i].coeff.add(&other.terms[j].coeff);
                    if !c.is_zero() {
                        out.push(Term {
                            coeff: c,
                            mono: self.terms[i].mono.clone(),
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms: out,
        }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff.neg(),
                    mono: t.mono.clone(),
                })
                .collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.check_ring(other);
        let mut prods = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                prods.push((a.coeff.mul(&b.coeff), a.mono.mul(&b.mono)));
            }
        }
        Polynomial::from_terms(&self.ring, prods)
    }

    pub fn scale(&self, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff.mul(c),
                    mono: t.mono.clone(),
                })
                .collect(),
        }
    }

    /// Multiply by the single term `c·m`.
    pub fn mul_term(&self, c: &FieldElement, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: t.coeff.mul(c),
                mono: t.mono.mul(m),
            })
            .collect();
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms,
        }
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn leading_term(&self, order: &ScalarOrder) -> Option<&Term> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp_mono(&a.mono, &b.mono))
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(t0) => {
                let d = t0.mono.weighted_degree(&self.ring.weights);
                self.terms
                    .iter()
                    .all(|t| t.mono.weighted_degree(&self.ring.weights) == d)
            }
        }
    }

    /// Weighted degree for nonzero homogeneous polynomials.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        if self.terms.is_empty() || !self.is_homogeneous() {
            return None;
        }
        Some(self.terms[0].mono.weighted_degree(&self.ring.weights))
    }

    fn check_ring(&self, other: &Polynomial) {
        assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring,
            "polynomials over different rings"
        );
    }

    /// Parse a polynomial expression: `+ - * ^`, parentheses, integer and
    /// `p/q` rational literals, variable names from the ring.
    pub fn parse(ring: &Arc<PolyRing>, text: &str) -> Result<Polynomial> {
        let mut p = PolyParser {
            ring,
            bytes: text.as_bytes(),
            pos: 0,
        };
        let poly = p.expr()?;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return Err(Error::Structural(format!(
                "unexpected trailing input at byte {} in polynomial \"{text}\"",
                p.pos
            )));
        }
        Ok(poly)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let neg = display_negative(&t.coeff);
            let coeff_abs = if neg { t.coeff.neg() } else { t.coeff.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if t.mono.is_one() {
                write!(f, "{coeff_abs}")?;
            } else if coeff_abs.is_one() {
                write!(f, "{}", t.mono.display(&self.ring.vars))?;
            } else {
                write!(f, "{}*{}", coeff_abs, t.mono.display(&self.ring.vars))?;
            }
        }
        Ok(())
    }
}

struct PolyParser<'a> {
    ring: &'a Arc<PolyRing>,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> PolyParser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while let Some(c) = self.peek() {
            if c == b'*' {
                self.pos += 1;
                acc = acc.mul(&self.factor()?);
            } else if c.is_ascii_alphabetic() || c == b'(' {
                // implicit multiplication, e.g. "2x" or "x(y+z)"
                acc = acc.mul(&self.factor()?);
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let n = self.integer()?;
            if n < 0 {
                return Err(Error::Structural("negative exponent".into()));
            }
            return Ok(base.pow(n as u32));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(Error::Structural("expected ')' in polynomial".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let d = self.integer()?;
                    if d == 0 {
                        return Err(Error::Structural("zero denominator".into()));
                    }
                    let num = Polynomial::constant(self.ring, self.ring.field.from_i64(n));
                    let den = self.ring.field.from_i64(d);
                    Ok(num.scale(&den.inv()))
                } else {
                    Ok(Polynomial::constant(self.ring, self.ring.field.from_i64(n)))
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_alphanumeric()
                        || self.bytes[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
                match self.ring.vars.iter().position(|v| v == name) {
                    Some(i) => Ok(Polynomial::variable(self.ring, i)),
                    None => Err(Error::Structural(format!("unknown variable \"{name}\""))),
                }
            }
            _ => Err(Error::Structural("expected polynomial atom".into())),
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Structural("expected integer".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn ring() -> Arc<PolyRing> {
        PolyRing::standard(Field::Rationals, &["x", "y", "z"])
    }

    #[test]
    fn add_inverse_is_zero() {
        let r = ring();
        let x = Polynomial::variable(&r, 0);
        assert!(x.add(&x.neg()).is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let r = ring();
        let x = Polynomial::variable(&r, 0);
        let y = Polynomial::variable(&r, 1);
        let lhs = x.add(&y).mul(&x.sub(&y));
        let rhs = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn prime_field_mul() {
        let r = PolyRing::standard(Field::Prime(5), &["x"]);
        let f = Field::Prime(5);
        let x = Polynomial::variable(&r, 0);
        let a = x.scale(&f.from_i64(3));
        let b = x.scale(&f.from_i64(4));
        // 3x · 4x = 12x² = 2x² over GF(5)
        assert_eq!(a.mul(&b), x.mul(&x).scale(&f.from_i64(2)));
    }

    #[test]
    fn parse_roundtrip() {
        let r = ring();
        let p = Polynomial::parse(&r, "x^2*y - 3*z^3 + 1/2").unwrap();
        let back = Polynomial::parse(&r, &p.to_string()).unwrap();
        assert_eq!(p, back);
    }

    #[test]
    fn parse_rejects_unknown_variable() {
        let r = ring();
        assert!(Polynomial::parse(&r, "x + w").is_err());
    }

    #[test]
    fn homogeneity() {
        let r = ring();
        let p = Polynomial::parse(&r, "x^2 + y*z").unwrap();
        assert_eq!(p.homogeneous_degree(), Some(2));
        let q = Polynomial::parse(&r, "x + y^2").unwrap();
        assert!(q.homogeneous_degree().is_none());
    }
}
