//! Growth series, clique polynomials and equilibrium states of weighted
//! right-angled Artin monoids.
//!
//! A finite [`IndependenceGraph`] presents the monoid: vertices are the
//! generators, edges say which generators commute, and every generator carries
//! a strictly positive rational weight `w(s) = log N(s)`. Elements are stored
//! as [`Trace`]s in Foata normal form.
//!
//! The crate is organised bottom-up:
//!
//! * [`monoid`]: normal forms, multiplication, divisibility, joins and the
//!   Wick reordering of `v_p* v_q`.
//! * [`growth`]: element enumeration, growth tables, the clique polynomial
//!   and exact series inversion.
//! * [`roots`]: exact real-root isolation for the clique polynomial.
//! * [`thermo`]: partition function, critical inverse temperature and the
//!   closed-form Gibbs, KMS and ground-state values.
//! * [`fock`]: the truncated left regular representation and numerical
//!   checks of the operator identities.
//! * [`suite`]: the named invariant suite behind `qlo verify`.
//!
//! Heavy loops go through [`par`], which uses rayon when the `parallel`
//! feature is enabled (the default) and plain iterators otherwise.

pub mod error;
pub mod fock;
pub mod growth;
pub mod monoid;
pub mod oracle;
pub mod par;
pub mod poly;
pub mod presets;
pub mod roots;
pub mod suite;
pub mod thermo;

pub use error::{Error, Result};
pub use fock::{SparseOperator, TruncatedRep};
pub use growth::{GrowthTable, InversionReport};
pub use monoid::{Generator, IndependenceGraph, JoinResult, Trace, Wick};
pub use poly::WeightedPolynomial;
pub use thermo::{StateValue, ThermoContext};

/// Exact rational used for weights and cutoffs.
pub type Rational = num_rational::Rational64;
