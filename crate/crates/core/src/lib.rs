//! Exact Reidemeister torsion for bounded and 2-periodic chain complexes over
//! rational-function fields `Q(v1, ..., vk)`.
//!
//! The crate is layered bottom-up:
//!
//! - [`exact_field`]: Laurent polynomials and their fraction field, with
//!   equality up to sign and up to unit monomials.
//! - [`linalg`]: dense exact linear algebra (row reduction, determinants,
//!   image bases with recorded sections).
//! - [`complex`]: based chain complexes and their torsion invariants.
//! - [`group_rep`]: periodic complexes over `Z[Z^k]` and their specialization
//!   through a representation.
//! - [`pearl`]: pearl complexes of Lagrangians, Morse homology rings, the
//!   first-page differential `d1*` and the examples built from them.
//! - [`verify`]: randomized invariant suites shared by the test harness and
//!   the command-line `verify` job.

#![allow(clippy::needless_range_loop)]

pub mod complex;
pub mod exact_field;
pub mod group_rep;
pub mod linalg;
pub mod pearl;
pub mod verify;

pub use complex::{BoundedComplex, CochainFamily, PeriodicComplex, Quotient, TorsionValue};
pub use exact_field::{LaurentPoly, Monomial, RatFunc, Rational, UnitGroup, VarTable};
pub use group_rep::{GRComplex, GroupRingElem, Representation};
pub use linalg::{LabeledBasis, Matrix};
pub use pearl::{D1Data, GradedRingPresentation};
