//! Pearl complexes and the first-page differential `d1` on Morse homology.
//!
//! [`ring`] presents `H_*(L)` with the intersection product, [`extend_d1_leibniz`]
//! extends generator values of `d1` to the whole ring, and the torsion of
//! `(H_*, d1)` is computed through a [`CochainFamily`](crate::complex::CochainFamily).

mod d1;
mod examples;
pub mod ring;

use crate::complex::{ComplexError, Violation};
use crate::exact_field::FieldError;
use crate::group_rep::GroupRepError;
use crate::linalg::LinalgError;

pub use d1::{
    build_d1_family, e1_report, extend_d1_leibniz, is_e1_narrow, sigma_splitting, torsion_from_d1, D1Data, E1Report,
    SigmaSplitting,
};
pub use examples::{
    circle_d1, circle_pearl, contractible_circle_pearl, product_star, product_star_sigma, r_phi_from_gw,
    s1xs2_possibility1, s1xs2_possibility2, sigma_g_d1, sigma_g_d1_with, sigma_g_ring, torus_d1, torus_d1_with, GwRow,
    GwTable,
};
pub use ring::{Factorization, GradedRingPresentation, ProductRule};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PearlError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid ring presentation: {0}")]
    Ring(String),
    #[error("`{0}` is not a generator of the ring")]
    UnknownGenerator(String),
    #[error("no d1 value given for generator `{0}`")]
    MissingGeneratorValue(String),
    #[error("d1(`{element}`) has a component on `{component}`, outside degree {expected}")]
    DegreeMismatch { element: String, component: String, expected: i64 },
    #[error("Leibniz rule fails on ({left}, {right}): d(xy) = {lhs} but d(x)y ± x d(y) = {rhs}")]
    Leibniz { left: String, right: String, lhs: String, rhs: String },
    #[error("d1 does not square to zero: {0}")]
    NotADifferential(Violation),
    #[error("{0}")]
    NotE1Narrow(E1Report),
    #[error("splitting check failed: {0}")]
    Splitting(String),
    #[error("class generator `{0}` has no image under the representation")]
    Unassigned(String),
    #[error(transparent)]
    GroupRep(#[from] GroupRepError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Field(#[from] FieldError),
}
