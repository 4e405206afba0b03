//! Based chain complexes over a rational-function field and their torsion.
//!
//! Bounded complexes live in degrees `0..=n` with `d_i: C_i -> C_{i-1}`.
//! Periodic complexes have two spaces `C_[0]`, `C_[1]` and maps
//! `d: C_[1] -> C_[0]`, `delta: C_[0] -> C_[1]`.

mod family;
mod torsion;
mod value;

use std::fmt;

use crate::exact_field::{FieldError, RatFunc, VarTable};
use crate::linalg::{rank, LabeledBasis, LinalgError, Matrix};

pub use family::{torsion_cochain_family, CochainFamily, FamilyMember, FamilySpace};
pub use torsion::{
    base_change_dets, boundary_data, change_basis, fold, torsion_bounded, torsion_bounded_with, torsion_milnor,
    torsion_periodic, BoundaryData,
};
pub use value::{Quotient, TorsionValue};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("complex is not acyclic at degree {degree}; use torsion_milnor with homology lifts")]
    NotAcyclic { degree: i64 },
    #[error("cochain family member {member} is not acyclic at degree {degree}")]
    NonAcyclicMember { member: usize, degree: i64 },
    #[error("{0}")]
    Violation(Violation),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("homology lift in degree {degree}: {reason}")]
    BadLift { degree: usize, reason: String },
    #[error("boundary data in degree {degree}: {reason}")]
    BadBoundaryData { degree: usize, reason: String },
    #[error("change of basis in degree {degree} is singular")]
    SingularChange { degree: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// First nonzero entry of a composite that should vanish.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub composite: String,
    pub row: String,
    pub col: String,
    pub value: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} is nonzero at ({}, {}): {}", self.composite, self.row, self.col, self.value)
    }
}

/// First nonzero entry of `m`, reported as a violation of `composite = 0`.
pub fn first_nonzero_entry(composite: String, m: &Matrix) -> Option<Violation> {
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if !m.get(i, j).is_zero() {
                return Some(Violation {
                    composite,
                    row: m.rows().labels()[i].clone(),
                    col: m.cols().labels()[j].clone(),
                    value: m.get(i, j).to_string(),
                });
            }
        }
    }
    None
}

fn check_unique_labels<'a>(bases: impl IntoIterator<Item = &'a LabeledBasis>) -> Result<(), ComplexError> {
    let mut seen = std::collections::BTreeSet::new();
    for b in bases {
        for l in b.labels() {
            if !seen.insert(l.as_str()) {
                return Err(LinalgError::DuplicateLabel(l.clone()).into());
            }
        }
    }
    Ok(())
}

fn check_map(
    m: &Matrix,
    vars: &VarTable,
    rows: &LabeledBasis,
    cols: &LabeledBasis,
    name: &str,
) -> Result<(), ComplexError> {
    if !m.vars().same_as(vars) {
        return Err(FieldError::VarTableMismatch(m.vars().names().join(","), vars.names().join(",")).into());
    }
    if m.rows() != rows || m.cols() != cols {
        return Err(ComplexError::Shape(format!(
            "{name} must map [{}] to [{}], got [{}] to [{}]",
            cols.labels().join(", "),
            rows.labels().join(", "),
            m.cols().labels().join(", "),
            m.rows().labels().join(", ")
        )));
    }
    Ok(())
}

/// Chain complex `0 -> C_n -> ... -> C_0 -> 0` with preferred bases.
#[derive(Clone, Debug)]
pub struct BoundedComplex {
    vars: VarTable,
    bases: Vec<LabeledBasis>,
    // diffs[i - 1] = d_i
    diffs: Vec<Matrix>,
}

impl BoundedComplex {
    /// `bases[i]` is the basis of `C_i`; `diffs[i - 1]` is `d_i` with rows
    /// `bases[i - 1]` and columns `bases[i]`. `d^2 = 0` is checked separately
    /// by [`BoundedComplex::validate`].
    pub fn new(vars: &VarTable, bases: Vec<LabeledBasis>, diffs: Vec<Matrix>) -> Result<Self, ComplexError> {
        if bases.is_empty() {
            return Err(ComplexError::Shape("a complex needs at least one degree".into()));
        }
        if diffs.len() + 1 != bases.len() {
            return Err(ComplexError::Shape(format!(
                "{} degrees need {} differentials, got {}",
                bases.len(),
                bases.len() - 1,
                diffs.len()
            )));
        }
        check_unique_labels(&bases)?;
        for (k, d) in diffs.iter().enumerate() {
            check_map(d, vars, &bases[k], &bases[k + 1], &format!("d_{}", k + 1))?;
        }
        Ok(BoundedComplex { vars: vars.clone(), bases, diffs })
    }

    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    pub fn top_degree(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn basis(&self, i: usize) -> &LabeledBasis {
        &self.bases[i]
    }

    pub fn bases(&self) -> &[LabeledBasis] {
        &self.bases
    }

    pub fn dim(&self, i: usize) -> usize {
        self.bases.get(i).map_or(0, LabeledBasis::len)
    }

    /// `d_i: C_i -> C_{i-1}` for `1 <= i <= n`.
    pub fn d(&self, i: usize) -> Option<&Matrix> {
        if i == 0 {
            None
        } else {
            self.diffs.get(i - 1)
        }
    }

    pub fn total_dim(&self) -> usize {
        self.bases.iter().map(LabeledBasis::len).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.bases.iter().enumerate().map(|(i, b)| if i % 2 == 0 { b.len() as i64 } else { -(b.len() as i64) }).sum()
    }

    pub fn validate(&self) -> Result<(), Violation> {
        for i in 1..self.diffs.len() {
            let comp = self.diffs[i - 1].mul(&self.diffs[i]).expect("shapes checked at construction");
            if let Some(v) = first_nonzero_entry(format!("d_{}∘d_{}", i, i + 1), &comp) {
                return Err(v);
            }
        }
        Ok(())
    }

    pub(crate) fn rank_d(&self, i: usize) -> usize {
        self.d(i).map_or(0, rank)
    }

    /// First degree where `rank d_{i+1} + rank d_i != dim C_i`.
    pub fn first_non_acyclic_degree(&self) -> Option<usize> {
        let ranks: Vec<usize> = (0..=self.top_degree() + 1).map(|i| self.rank_d(i)).collect();
        (0..=self.top_degree()).find(|&i| ranks[i] + ranks[i + 1] != self.dim(i))
    }

    pub fn is_acyclic(&self) -> bool {
        self.first_non_acyclic_degree().is_none()
    }
}

/// Two-periodic complex `C_[0] <-d- C_[1] <-delta- C_[0]`.
#[derive(Clone, Debug)]
pub struct PeriodicComplex {
    vars: VarTable,
    c0: LabeledBasis,
    c1: LabeledBasis,
    d: Matrix,
    delta: Matrix,
    degree_tags: Option<(Vec<i64>, Vec<i64>)>,
}

impl PeriodicComplex {
    pub fn new(
        vars: &VarTable,
        c0: LabeledBasis,
        c1: LabeledBasis,
        d: Matrix,
        delta: Matrix,
    ) -> Result<Self, ComplexError> {
        check_unique_labels([&c0, &c1])?;
        check_map(&d, vars, &c0, &c1, "d")?;
        check_map(&delta, vars, &c1, &c0, "delta")?;
        Ok(PeriodicComplex { vars: vars.clone(), c0, c1, d, delta, degree_tags: None })
    }

    /// Attach the integer degree of every basis element.
    pub fn with_degree_tags(mut self, tags0: Vec<i64>, tags1: Vec<i64>) -> Result<Self, ComplexError> {
        if tags0.len() != self.c0.len() || tags1.len() != self.c1.len() {
            return Err(ComplexError::Shape("degree tags must match basis sizes".into()));
        }
        if tags0.iter().any(|t| t.rem_euclid(2) != 0) || tags1.iter().any(|t| t.rem_euclid(2) != 1) {
            return Err(ComplexError::Shape("degree tags must have the parity of their component".into()));
        }
        self.degree_tags = Some((tags0, tags1));
        Ok(self)
    }

    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    pub fn c0(&self) -> &LabeledBasis {
        &self.c0
    }

    pub fn c1(&self) -> &LabeledBasis {
        &self.c1
    }

    pub fn d(&self) -> &Matrix {
        &self.d
    }

    pub fn delta(&self) -> &Matrix {
        &self.delta
    }

    pub fn degree_tags(&self) -> Option<(&[i64], &[i64])> {
        self.degree_tags.as_ref().map(|(a, b)| (a.as_slice(), b.as_slice()))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.c0.len() as i64 - self.c1.len() as i64
    }

    pub fn validate(&self) -> Result<(), Violation> {
        let dd = self.d.mul(&self.delta).expect("shapes checked at construction");
        if let Some(v) = first_nonzero_entry("d∘delta".into(), &dd) {
            return Err(v);
        }
        let dd = self.delta.mul(&self.d).expect("shapes checked at construction");
        if let Some(v) = first_nonzero_entry("delta∘d".into(), &dd) {
            return Err(v);
        }
        Ok(())
    }

    /// Rank counting: `rank d + rank delta` equals both dimensions.
    pub fn is_acyclic(&self) -> bool {
        let r = rank(&self.d) + rank(&self.delta);
        r == self.c0.len() && r == self.c1.len()
    }
}

impl fmt::Display for BoundedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.bases.iter().enumerate().rev() {
            writeln!(f, "C_{i} = <{}>", b.labels().join(", "))?;
        }
        for (k, d) in self.diffs.iter().enumerate() {
            writeln!(f, "d_{}:", k + 1)?;
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// Convenience for building a bounded complex from raw columns.
pub fn bounded_from_columns(
    vars: &VarTable,
    bases: Vec<LabeledBasis>,
    diff_columns: Vec<Vec<Vec<RatFunc>>>,
) -> Result<BoundedComplex, ComplexError> {
    let diffs = diff_columns
        .iter()
        .enumerate()
        .map(|(k, cols)| Matrix::from_columns(vars, bases[k].clone(), bases[k + 1].clone(), cols))
        .collect::<Result<Vec<_>, _>>()?;
    BoundedComplex::new(vars, bases, diffs)
}
