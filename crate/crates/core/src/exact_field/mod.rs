//! Exact arithmetic in `Q` and in Laurent-polynomial fraction fields.
//!
//! Elements of `Q(v1, ..., vk)` are stored as a numerator and denominator
//! Laurent polynomial over a shared [`VarTable`]. Fractions are only partially
//! reduced (monomial content, integer content, univariate gcd and exact
//! multivariate division), so equality is always decided by
//! cross-multiplication.

mod laurent;
mod parse;
mod ratfunc;
mod units;
mod vars;

pub use laurent::{LaurentPoly, Monomial};
pub use parse::ParseError;
pub use ratfunc::{eq_mod_signs, eq_mod_units, rf_arith, rf_eq, substitute, ArithOp, RatFunc};
pub use units::UnitGroup;
pub use vars::VarTable;

/// Scalars of the ground field.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("torsion values must be nonzero")]
    ZeroValue,
    #[error("variable tables differ: [{0}] vs [{1}]")]
    VarTableMismatch(String, String),
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("invalid variable name `{0}`")]
    InvalidVariable(String),
    #[error("variable `{0}` is neither bound nor present in the target table")]
    UnboundVariable(String),
    #[error("substitution produced a zero denominator")]
    ZeroDenominator,
    #[error("unit group generator is not a monomial with coefficient 1")]
    NotAMonomial,
    #[error(transparent)]
    Parse(#[from] ParseError),
}
