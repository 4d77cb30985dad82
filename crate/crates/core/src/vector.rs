//! Graded free modules and their elements.

use crate::field::FieldElement;
use crate::monomial::Monomial;
use crate::order::ModuleOrder;
use crate::poly::Polynomial;
use crate::ring::{PolyRing, Ring};
use std::fmt;
use std::sync::Arc;

/// A graded free module `F = ⊕ R[-dⱼ]`, described by its generator degrees.
/// The twist of generator `j` in shift notation is `-gen_degrees[j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeModule {
    pub ring: Ring,
    pub gen_degrees: Vec<i64>,
}

impl FreeModule {
    pub fn new(ring: Ring, gen_degrees: Vec<i64>) -> Self {
        FreeModule { ring, gen_degrees }
    }

    pub fn rank(&self) -> usize {
        self.gen_degrees.len()
    }

    pub fn twists(&self) -> Vec<i64> {
        self.gen_degrees.iter().map(|d| -d).collect()
    }
}

/// A term of a free-module element: `coeff · mono · e_comp`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModTerm {
    pub coeff: FieldElement,
    pub mono: Monomial,
    pub comp: usize,
}

/// An element of a free module, one polynomial per generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeVector {
    comps: Vec<Polynomial>,
}

impl FreeVector {
    pub fn new(comps: Vec<Polynomial>) -> Self {
        FreeVector { comps }
    }

    pub fn zero(ring: &Arc<PolyRing>, rank: usize) -> Self {
        FreeVector {
            comps: vec![Polynomial::zero(ring); rank],
        }
    }

    pub fn unit(ring: &Arc<PolyRing>, rank: usize, comp: usize) -> Self {
        let mut v = FreeVector::zero(ring, rank);
        v.comps[comp] = Polynomial::one(ring);
        v
    }

    /// Rank-one vector wrapping a ring element.
    pub fn scalar(p: Polynomial) -> Self {
        FreeVector { comps: vec![p] }
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn component(&self, i: usize) -> &Polynomial {
        &self.comps[i]
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.comps
    }

    pub fn set_component(&mut self, i: usize, p: Polynomial) {
        self.comps[i] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, other: &FreeVector) -> FreeVector {
        assert_eq!(self.rank(), other.rank(), "free-module rank mismatch");
        FreeVector {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &FreeVector) -> FreeVector {
        assert_eq!(self.rank(), other.rank(), "free-module rank mismatch");
        FreeVector {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> FreeVector {
        FreeVector {
            comps: self.comps.iter().map(|p| p.neg()).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> FreeVector {
        FreeVector {
            comps: self.comps.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn mul_poly(&self, p: &Polynomial) -> FreeVector {
        FreeVector {
            comps: self.comps.iter().map(|q| q.mul(p)).collect(),
        }
    }

    pub fn mul_term(&self, c: &FieldElement, m: &Monomial) -> FreeVector {
        FreeVector {
            comps: self.comps.iter().map(|p| p.mul_term(c, m)).collect(),
        }
    }

    /// Largest term under the given module order.
    pub fn leading_term(&self, order: &ModuleOrder) -> Option<ModTerm> {
        let mut best: Option<ModTerm> = None;
        for (comp, p) in self.comps.iter().enumerate() {
            for t in p.terms() {
                let better = match &best {
                    None => true,
                    Some(b) => {
                        order.cmp_term((&t.mono, comp), (&b.mono, b.comp))
                            == std::cmp::Ordering::Greater
                    }
                };
                if better {
                    best = Some(ModTerm {
                        coeff: t.coeff.clone(),
                        mono: t.mono.clone(),
                        comp,
                    });
                }
            }
        }
        best
    }

    /// Degree of a nonzero homogeneous element of `fm`; `None` if zero or
    /// inhomogeneous. Component `j` of an element of degree `d` must be
    /// homogeneous of degree `d - gen_degrees[j]`.
    pub fn homogeneous_degree(&self, fm: &FreeModule) -> Option<i64> {
        let mut degree = None;
        for (j, p) in self.comps.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let dj = p.homogeneous_degree()? + fm.gen_degrees[j];
            match degree {
                None => degree = Some(dj),
                Some(d) if d != dj => return None,
                _ => {}
            }
        }
        degree
    }

    pub fn is_homogeneous(&self, fm: &FreeModule) -> bool {
        self.is_zero() || self.homogeneous_degree(fm).is_some()
    }

    /// Componentwise canonical form modulo the ring's defining ideal.
    pub fn reduce_mod_ring(&self, ring: &Ring) -> FreeVector {
        if !ring.is_quotient() {
            return self.clone();
        }
        FreeVector {
            comps: self.comps.iter().map(|p| ring.reduce(p)).collect(),
        }
    }

    pub fn display(&self) -> String {
        let parts: Vec<String> = self.comps.iter().map(|p| p.to_string()).collect();
        format!("({})", parts.join(", "))
    }
}

impl fmt::Display for FreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}
