//! Exact computational commutative algebra over weighted graded polynomial
//! rings and their quotients.
//!
//! The crate is organized bottom-up:
//!
//! - [`field`], [`monomial`], [`order`], [`poly`]: exact coefficients,
//!   monomials with weighted degrees, term orders, polynomials.
//! - [`ring`], [`vector`]: rings (polynomial and quotient), free modules and
//!   their elements.
//! - [`groebner`]: Buchberger's algorithm for submodules of graded free
//!   modules, normal forms, Schreyer syzygies, preimage (kernel) modules.
//! - [`module`]: finitely presented graded modules, with length, Krull
//!   dimension and Hilbert data read off monomial staircases.
//! - [`resolution`]: minimal graded free resolutions (finite over polynomial
//!   rings, truncated over quotients), Betti numbers, periodicity detection.
//! - [`hilbert`]: Hilbert series and cumulative Hilbert polynomials.
//! - [`homology`]: Ext and Tor as finitely presented graded modules, depth.
//! - [`invariants`]: partial Euler characteristics and Euler forms, grade,
//!   twist coefficients, and the theorem checkers built from them.
//! - [`asymptotics`]: complexity, Ext/Tor finiteness thresholds, Herbrand
//!   difference estimators with periodicity certificates.
//! - [`instances`]: deterministic random instance generator for the
//!   verification suites.
//! - [`bruteforce`]: independent linear-algebra oracles used by tests.
//!
//! All arithmetic is exact (arbitrary-precision rationals or prime fields);
//! there is no floating point anywhere in the algebra path.

pub mod asymptotics;
pub mod bruteforce;
pub mod error;
pub mod field;
pub mod groebner;
pub mod hilbert;
pub mod homology;
pub mod instances;
pub mod invariants;
pub mod module;
pub mod monomial;
pub mod order;
pub mod poly;
pub mod resolution;
pub mod ring;
pub mod vector;

pub use error::{Error, Result};
pub use field::{Field, FieldElement};
pub use module::{Dimension, GradedModule, Length};
pub use monomial::Monomial;
pub use order::{ModuleOrder, ScalarOrder};
pub use poly::Polynomial;
pub use ring::{PolyRing, Ring};
pub use vector::{FreeModule, FreeVector};
