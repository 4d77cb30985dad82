//! Weighted graded polynomial rings and their quotients by homogeneous ideals.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::order::{ModuleOrder, ScalarOrder};
use crate::poly::Polynomial;
use serde::Serialize;
use std::fmt;
use std::sync::Arc;

/// A polynomial ring over an exact field, graded by positive integer weights
/// (default weight 1 per variable).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRing {
    pub field: Field,
    pub vars: Vec<String>,
    pub weights: Vec<u32>,
}

impl PolyRing {
    pub fn new(field: Field, vars: Vec<String>, weights: Vec<u32>) -> Result<Arc<Self>> {
        if vars.len() != weights.len() {
            return Err(Error::Structural("one weight per variable required".into()));
        }
        if weights.contains(&0) {
            return Err(Error::Structural("weights must be positive".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::Structural(format!(
                    "duplicate variable name \"{v}\""
                )));
            }
        }
        Ok(Arc::new(PolyRing {
            field,
            vars,
            weights,
        }))
    }

    /// Standard grading: every variable has weight 1.
    pub fn standard(field: Field, vars: &[&str]) -> Arc<Self> {
        let n = vars.len();
        PolyRing::new(
            field,
            vars.iter().map(|s| s.to_string()).collect(),
            vec![1; n],
        )
        .unwrap()
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// The order polynomials are canonically sorted under.
    pub fn canonical_order(&self) -> ScalarOrder {
        ScalarOrder::WeightedGrevlex(self.weights.clone())
    }
}

#[derive(Debug)]
pub struct QuotientData {
    /// Reduced Gröbner basis of the defining ideal under the canonical order.
    pub gb: Vec<Polynomial>,
}

/// A graded ring: either a polynomial ring or its quotient by a proper
/// homogeneous ideal. Cloning is cheap; all data is shared.
#[derive(Debug, Clone)]
pub struct Ring {
    base: Arc<PolyRing>,
    quotient: Option<Arc<QuotientData>>,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base
            && match (&self.quotient, &other.quotient) {
                (None, None) => true,
                (Some(a), Some(b)) => a.gb == b.gb,
                _ => false,
            }
    }
}
impl Eq for Ring {}

impl Ring {
    pub fn polynomial(base: Arc<PolyRing>) -> Ring {
        Ring {
            base,
            quotient: None,
        }
    }

    /// Quotient by the homogeneous ideal generated by `gens`.
    pub fn quotient(base: Arc<PolyRing>, gens: Vec<Polynomial>) -> Result<Ring> {
        for g in &gens {
            if !g.is_zero() && g.homogeneous_degree().is_none() {
                return Err(Error::Inhomogeneous(format!(
                    "defining ideal generator {g}"
                )));
            }
        }
        let ambient = Ring::polynomial(Arc::clone(&base));
        let fm = crate::vector::FreeModule::new(ambient, vec![0]);
        let vecs: Vec<_> = gens
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(crate::vector::FreeVector::scalar)
            .collect();
        let gb = crate::groebner::buchberger(vecs, fm, ModuleOrder::Top(base.canonical_order()))?;
        let ideal: Vec<Polynomial> = gb.gens.iter().map(|v| v.component(0).clone()).collect();
        if ideal.iter().any(|p| p.is_constant() && !p.is_zero()) {
            return Err(Error::Structural("defining ideal is not proper".into()));
        }
        Ok(Ring {
            base,
            quotient: Some(Arc::new(QuotientData { gb: ideal })),
        })
    }

    pub fn poly_ring(&self) -> &Arc<PolyRing> {
        &self.base
    }

    pub fn field(&self) -> &Field {
        &self.base.field
    }

    pub fn nvars(&self) -> usize {
        self.base.nvars()
    }

    pub fn is_quotient(&self) -> bool {
        self.quotient.is_some()
    }

    /// One defining equation.
    pub fn is_hypersurface(&self) -> bool {
        self.quotient.as_ref().is_some_and(|q| q.gb.len() == 1)
    }

    /// Reduced Gröbner basis of the defining ideal; empty for polynomial rings.
    pub fn defining_gb(&self) -> &[Polynomial] {
        self.quotient
            .as_ref()
            .map(|q| q.gb.as_slice())
            .unwrap_or(&[])
    }

    /// Canonical representative of a ring element.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        match &self.quotient {
            None => p.clone(),
            Some(q) => {
                let order = ModuleOrder::Top(self.base.canonical_order());
                let gens: Vec<_> =
                    q.gb.iter()
                        .map(|g| crate::vector::FreeVector::scalar(g.clone()))
                        .collect();
                let f = crate::vector::FreeVector::scalar(p.clone());
                crate::groebner::reduce_full(&f, &gens, &order)
                    .component(0)
                    .clone()
            }
        }
    }

    /// Krull dimension of the ring.
    pub fn dimension(&self) -> i64 {
        match &self.quotient {
            None => self.nvars() as i64,
            Some(q) => {
                let order = self.base.canonical_order();
                let leads: Vec<_> =
                    q.gb.iter()
                        .map(|g| g.leading_term(&order).unwrap().mono.clone())
                        .collect();
                crate::module::monomial_quotient_dimension(&leads, self.nvars())
                    .expect("proper ideal has nonempty staircase")
            }
        }
    }

    /// Default truncation bound for resolutions over quotient rings.
    pub fn default_bound(&self) -> usize {
        2 * self.nvars() + 4
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.base.field)?;
        for (i, v) in self.base.vars.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
            if self.base.weights[i] != 1 {
                write!(f, ":{}", self.base.weights[i])?;
            }
        }
        write!(f, "]")?;
        if let Some(q) = &self.quotient {
            write!(f, "/(")?;
            for (i, g) in q.gb.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{g}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Serializable descriptor used in JSON output.
#[derive(Serialize)]
pub struct RingJson {
    pub field: String,
    pub vars: Vec<String>,
    pub weights: Vec<u32>,
    pub quotient: Vec<String>,
}

impl Ring {
    pub fn to_json(&self) -> RingJson {
        RingJson {
            field: self.base.field.to_string(),
            vars: self.base.vars.clone(),
            weights: self.base.weights.clone(),
            quotient: self.defining_gb().iter().map(|g| g.to_string()).collect(),
        }
    }
}
