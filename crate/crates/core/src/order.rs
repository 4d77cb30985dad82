//! Term orders on monomials and their module extensions.

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use std::cmp::Ordering;
use std::sync::Arc;

/// A multiplicative total order on monomials with 1 as minimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalarOrder {
    /// Total degree first, then reverse lexicographic: on a degree tie the
    /// monomial whose last differing exponent is smaller wins.
    Grevlex,
    /// Pure lexicographic with the first variable largest.
    Lex,
    /// Weighted degree first (against the given weights), grevlex tiebreak.
    WeightedGrevlex(Vec<u32>),
}

impl ScalarOrder {
    pub fn cmp_mono(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        match self {
            ScalarOrder::Grevlex => grevlex_tail(a, b, a.total_degree().cmp(&b.total_degree())),
            ScalarOrder::Lex => a.exponents().cmp(b.exponents()),
            ScalarOrder::WeightedGrevlex(w) => {
                grevlex_tail(a, b, a.weighted_degree(w).cmp(&b.weighted_degree(w)))
            }
        }
    }
}

fn grevlex_tail(a: &Monomial, b: &Monomial, degrees: Ordering) -> Ordering {
    if degrees != Ordering::Equal {
        return degrees;
    }
    // Last nonzero entry of a − b negative ⟹ a > b.
    for i in (0..a.nvars()).rev() {
        let (ea, eb) = (a.exponents()[i], b.exponents()[i]);
        if ea != eb {
            return if ea < eb {
                Ordering::Greater
            } else {
                Ordering::Less
            };
        }
    }
    Ordering::Equal
}

/// Checked comparison for the public surface; the variable sets must match.
pub fn monomial_compare(order: &ScalarOrder, a: &Monomial, b: &Monomial) -> Result<Ordering> {
    if a.nvars() != b.nvars() {
        return Err(Error::Structural(format!(
            "monomials over different variable sets ({} vs {})",
            a.nvars(),
            b.nvars()
        )));
    }
    if let ScalarOrder::WeightedGrevlex(w) = order {
        if w.len() != a.nvars() {
            return Err(Error::Structural("weight vector length mismatch".into()));
        }
    }
    Ok(order.cmp_mono(a, b))
}

/// Leading-term data of the generators a Schreyer order is induced from:
/// generator `j` of the current free module maps to an element of the
/// previous level whose leading term is `leads[j]`.
#[derive(Debug, Clone)]
pub struct SchreyerOrder {
    pub base: ModuleOrder,
    pub leads: Vec<(Monomial, usize)>,
}

/// Extension of a scalar order to terms `monomial · e_component` of a free
/// module. Smaller component index means larger basis vector throughout.
#[derive(Debug, Clone)]
pub enum ModuleOrder {
    /// Term over position: compare monomials, break ties by component.
    Top(ScalarOrder),
    /// Position over term: compare components, then monomials.
    Pot(ScalarOrder),
    /// Induced order: compare images under the previous level's leading
    /// terms, break ties by component.
    Schreyer(Arc<SchreyerOrder>),
    /// Block elimination order: components `< split` dominate the rest.
    /// Used for kernel/preimage computations via tag components.
    BlockElim {
        split: usize,
        head: Box<ModuleOrder>,
        tag: Box<ModuleOrder>,
    },
}

impl ModuleOrder {
    pub fn cmp_term(&self, a: (&Monomial, usize), b: (&Monomial, usize)) -> Ordering {
        match self {
            ModuleOrder::Top(ord) => ord.cmp_mono(a.0, b.0).then_with(|| b.1.cmp(&a.1)),
            ModuleOrder::Pot(ord) => b.1.cmp(&a.1).then_with(|| ord.cmp_mono(a.0, b.0)),
            ModuleOrder::Schreyer(s) => {
                let (la, ca) = &s.leads[a.1];
                let (lb, cb) = &s.leads[b.1];
                s.base
                    .cmp_term((&a.0.mul(la), *ca), (&b.0.mul(lb), *cb))
                    .then_with(|| b.1.cmp(&a.1))
            }
            ModuleOrder::BlockElim { split, head, tag } => {
                let in_head = |c: usize| c < *split;
                match (in_head(a.1), in_head(b.1)) {
                    (true, false) => Ordering::Greater,
                    (false, true) => Ordering::Less,
                    (true, true) => head.cmp_term(a, b),
                    (false, false) => tag.cmp_term((a.0, a.1 - split), (b.0, b.1 - split)),
                }
            }
        }
    }
}
