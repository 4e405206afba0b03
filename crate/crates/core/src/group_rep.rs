//! Periodic complexes over the group ring `Z[Z^k]` and their specialization
//! through representations into a rational-function field.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::complex::{torsion_periodic, ComplexError, PeriodicComplex, Quotient, TorsionValue, Violation};
use crate::exact_field::{FieldError, LaurentPoly, Monomial, RatFunc, Rational, UnitGroup, VarTable};
use crate::linalg::{LabeledBasis, LinalgError, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupRepError {
    #[error("generator `{0}` has no image under the representation")]
    Unassigned(String),
    #[error("generator `{0}` is sent to zero, which is not a unit")]
    ZeroImage(String),
    #[error("representation images are not all monomials; cannot quotient by them")]
    NonMonomialImages,
    #[error("group ring element `{0}` is not an integral Laurent polynomial")]
    NotIntegral(String),
    #[error("entry ({row}, {col}) contains class {class} of Maslov index {found}, expected {expected}")]
    Maslov { row: String, col: String, class: String, found: i64, expected: i64 },
    #[error("{0}")]
    Violation(Violation),
    #[error("complex is not narrow for this representation")]
    NotNarrow,
    #[error("shape error: {0}")]
    Shape(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Finite integer combination of group elements `A_1^{e_1} ... A_k^{e_k}`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GroupRingElem {
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl GroupRingElem {
    pub fn zero() -> Self {
        GroupRingElem::default()
    }

    /// The identity element of `Z^k`.
    pub fn one(k: usize) -> Self {
        Self::term(vec![0; k], BigInt::one())
    }

    pub fn term(exponents: Vec<i64>, coeff: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exponents, coeff);
        }
        GroupRingElem { terms }
    }

    pub fn from_int(k: usize, c: i64) -> Self {
        Self::term(vec![0; k], BigInt::from(c))
    }

    /// `A_index` in `Z[Z^k]`.
    pub fn generator(k: usize, index: usize) -> Self {
        let mut e = vec![0; k];
        e[index] = 1;
        Self::term(e, BigInt::one())
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: Vec<i64>, c: BigInt) {
        let slot = self.terms.entry(e).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        GroupRingElem { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = GroupRingElem::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// Parse `3*A^2*B^-1 - 1` over the given generator names. The expression
    /// must reduce to a Laurent polynomial with integer coefficients.
    pub fn parse(src: &str, generators: &VarTable) -> Result<Self, GroupRepError> {
        let f = RatFunc::parse(src, generators)?;
        let not_integral = || GroupRepError::NotIntegral(src.to_string());
        let (dm, dc) = f.denom().as_monomial().ok_or_else(not_integral)?;
        let mut out = GroupRingElem::zero();
        for (m, c) in f.numer().terms() {
            let c = c / dc;
            if !c.is_integer() {
                return Err(not_integral());
            }
            out.add_term(m.div(dm).exponents().to_vec(), c.to_integer());
        }
        Ok(out)
    }

    pub fn to_laurent(&self, generators: &VarTable) -> LaurentPoly {
        LaurentPoly::from_terms(
            generators,
            self.terms.iter().map(|(e, c)| (Monomial::from_exponents(e.clone()), Rational::from_integer(c.clone()))),
        )
    }

    /// Image under `A_g -> images[g]`.
    pub fn evaluate(&self, images: &[RatFunc], target: &VarTable) -> Result<RatFunc, FieldError> {
        let mut acc = RatFunc::zero(target);
        for (e, c) in &self.terms {
            let mut t = RatFunc::constant(target, Rational::from_integer(c.clone()));
            for (img, &k) in images.iter().zip(e) {
                if k != 0 {
                    t = &t * &img.pow(k)?;
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    pub fn display(&self, generators: &VarTable) -> String {
        self.to_laurent(generators).to_string()
    }
}

/// Two-periodic complex with entries in `Z[Z^k]`, bases tagged with Morse
/// degrees. `d` maps `C_[1] -> C_[0]` and `delta` maps `C_[0] -> C_[1]`;
/// `d[i][j]` is the coefficient of `c0[i]` in the image of `c1[j]`.
#[derive(Clone, Debug)]
pub struct GRComplex {
    generators: VarTable,
    c0: LabeledBasis,
    c1: LabeledBasis,
    degrees0: Vec<i64>,
    degrees1: Vec<i64>,
    d: Vec<Vec<GroupRingElem>>,
    delta: Vec<Vec<GroupRingElem>>,
    maslov: Option<Vec<i64>>,
}

fn check_grid(
    grid: &[Vec<GroupRingElem>],
    rows: usize,
    cols: usize,
    k: usize,
    name: &str,
) -> Result<(), GroupRepError> {
    if grid.len() != rows || grid.iter().any(|r| r.len() != cols) {
        return Err(GroupRepError::Shape(format!("{name} must be {rows}x{cols}")));
    }
    if grid.iter().flatten().flat_map(|e| e.terms.keys()).any(|e| e.len() != k) {
        return Err(GroupRepError::Shape(format!("{name} has an exponent vector of the wrong length")));
    }
    Ok(())
}

impl GRComplex {
    pub fn new(
        generators: &VarTable,
        c0: (LabeledBasis, Vec<i64>),
        c1: (LabeledBasis, Vec<i64>),
        d: Vec<Vec<GroupRingElem>>,
        delta: Vec<Vec<GroupRingElem>>,
    ) -> Result<Self, GroupRepError> {
        let (c0, degrees0) = c0;
        let (c1, degrees1) = c1;
        if degrees0.len() != c0.len() || degrees1.len() != c1.len() {
            return Err(GroupRepError::Shape("degree tags must match basis sizes".into()));
        }
        if degrees0.iter().any(|t| t.rem_euclid(2) != 0) || degrees1.iter().any(|t| t.rem_euclid(2) != 1) {
            return Err(GroupRepError::Shape("C_[0] needs even and C_[1] odd degree tags".into()));
        }
        c0.concat(&c1)?;
        let k = generators.len();
        check_grid(&d, c0.len(), c1.len(), k, "d")?;
        check_grid(&delta, c1.len(), c0.len(), k, "delta")?;
        Ok(GRComplex { generators: generators.clone(), c0, c1, degrees0, degrees1, d, delta, maslov: None })
    }

    /// Attach Maslov indices of the generators and check that every class in
    /// an entry from degree `j` to degree `i` has index `i - j + 1`.
    pub fn with_maslov(mut self, indices: Vec<i64>) -> Result<Self, GroupRepError> {
        if indices.len() != self.generators.len() {
            return Err(GroupRepError::Shape("one Maslov index per generator".into()));
        }
        let check = |grid: &[Vec<GroupRingElem>], rows: (&LabeledBasis, &[i64]), cols: (&LabeledBasis, &[i64])| {
            for (i, row) in grid.iter().enumerate() {
                for (j, e) in row.iter().enumerate() {
                    let expected = rows.1[i] - cols.1[j] + 1;
                    for class in e.terms.keys() {
                        let found: i64 = class.iter().zip(&indices).map(|(a, b)| a * b).sum();
                        if found != expected {
                            return Err(GroupRepError::Maslov {
                                row: rows.0.labels()[i].clone(),
                                col: cols.0.labels()[j].clone(),
                                class: GroupRingElem::term(class.clone(), BigInt::one()).display(&self.generators),
                                found,
                                expected,
                            });
                        }
                    }
                }
            }
            Ok(())
        };
        check(&self.d, (&self.c0, &self.degrees0), (&self.c1, &self.degrees1))?;
        check(&self.delta, (&self.c1, &self.degrees1), (&self.c0, &self.degrees0))?;
        self.maslov = Some(indices);
        Ok(self)
    }

    pub fn generators(&self) -> &VarTable {
        &self.generators
    }

    pub fn c0(&self) -> (&LabeledBasis, &[i64]) {
        (&self.c0, &self.degrees0)
    }

    pub fn c1(&self) -> (&LabeledBasis, &[i64]) {
        (&self.c1, &self.degrees1)
    }

    pub fn d(&self) -> &[Vec<GroupRingElem>] {
        &self.d
    }

    pub fn delta(&self) -> &[Vec<GroupRingElem>] {
        &self.delta
    }

    pub fn maslov(&self) -> Option<&[i64]> {
        self.maslov.as_deref()
    }

    /// Both composites vanish over the group ring.
    pub fn validate(&self) -> Result<(), Violation> {
        let compose = |a: &[Vec<GroupRingElem>],
                       b: &[Vec<GroupRingElem>],
                       rows: &LabeledBasis,
                       cols: &LabeledBasis,
                       name: &str| {
            for (i, arow) in a.iter().enumerate() {
                for j in 0..cols.len() {
                    let mut acc = GroupRingElem::zero();
                    for (k, x) in arow.iter().enumerate() {
                        if !x.is_zero() && !b[k][j].is_zero() {
                            acc = acc.add(&x.mul(&b[k][j]));
                        }
                    }
                    if !acc.is_zero() {
                        return Err(Violation {
                            composite: name.to_string(),
                            row: rows.labels()[i].clone(),
                            col: cols.labels()[j].clone(),
                            value: acc.display(&self.generators),
                        });
                    }
                }
            }
            Ok(())
        };
        compose(&self.d, &self.delta, &self.c0, &self.c0, "d∘delta")?;
        compose(&self.delta, &self.d, &self.c1, &self.c1, "delta∘d")
    }
}

/// Ring morphism `Z[Z^k] -> F` given by the images of the generators.
#[derive(Clone, Debug)]
pub struct Representation {
    vars: VarTable,
    assignment: BTreeMap<String, RatFunc>,
}

impl Representation {
    pub fn new(vars: &VarTable, assignment: BTreeMap<String, RatFunc>) -> Result<Self, GroupRepError> {
        for (name, v) in &assignment {
            vars.check(v.vars())?;
            if v.is_zero() {
                return Err(GroupRepError::ZeroImage(name.clone()));
            }
        }
        Ok(Representation { vars: vars.clone(), assignment })
    }

    /// Build from `(generator, expression)` pairs parsed over `vars`.
    pub fn parse(vars: &VarTable, pairs: &[(&str, &str)]) -> Result<Self, GroupRepError> {
        let assignment = pairs
            .iter()
            .map(|(g, e)| Ok((g.to_string(), RatFunc::parse(e, vars)?)))
            .collect::<Result<BTreeMap<_, _>, GroupRepError>>()?;
        Self::new(vars, assignment)
    }

    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    pub fn assignment(&self) -> &BTreeMap<String, RatFunc> {
        &self.assignment
    }

    pub fn image(&self, generator: &str) -> Option<&RatFunc> {
        self.assignment.get(generator)
    }

    fn images_for(&self, generators: &VarTable) -> Result<Vec<RatFunc>, GroupRepError> {
        generators
            .names()
            .iter()
            .map(|g| self.assignment.get(g).cloned().ok_or_else(|| GroupRepError::Unassigned(g.clone())))
            .collect()
    }

    /// Compose with a substitution of the target variables.
    pub fn then_substitute(&self, bindings: &BTreeMap<String, RatFunc>) -> Result<Self, GroupRepError> {
        let Some(first) = bindings.values().next() else {
            return Ok(self.clone());
        };
        let target = first.vars().clone();
        let assignment = self
            .assignment
            .iter()
            .map(|(g, v)| Ok((g.clone(), crate::exact_field::substitute(v, bindings)?)))
            .collect::<Result<BTreeMap<_, _>, GroupRepError>>()?;
        Self::new(&target, assignment)
    }

    /// Subgroup generated by the images, when all of them are monomials.
    pub fn unit_group(&self) -> Option<UnitGroup> {
        let images: Vec<RatFunc> = self.assignment.values().cloned().collect();
        UnitGroup::from_elements(&self.vars, &images).ok()
    }
}

fn specialize_grid(
    grid: &[Vec<GroupRingElem>],
    images: &[RatFunc],
    vars: &VarTable,
    rows: &LabeledBasis,
    cols: &LabeledBasis,
) -> Result<Matrix, GroupRepError> {
    let data = grid
        .iter()
        .map(|r| r.iter().map(|e| e.evaluate(images, vars)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_rows(vars, rows.clone(), cols.clone(), data)?)
}

/// Apply the representation entrywise.
pub fn specialize(c: &GRComplex, rep: &Representation) -> Result<PeriodicComplex, GroupRepError> {
    c.validate().map_err(GroupRepError::Violation)?;
    let images = rep.images_for(&c.generators)?;
    let d = specialize_grid(&c.d, &images, &rep.vars, &c.c0, &c.c1)?;
    let delta = specialize_grid(&c.delta, &images, &rep.vars, &c.c1, &c.c0)?;
    let p = PeriodicComplex::new(&rep.vars, c.c0.clone(), c.c1.clone(), d, delta)?
        .with_degree_tags(c.degrees0.clone(), c.degrees1.clone())?;
    p.validate().map_err(GroupRepError::Violation)?;
    Ok(p)
}

pub fn is_narrow(c: &GRComplex, rep: &Representation) -> Result<bool, GroupRepError> {
    Ok(specialize(c, rep)?.is_acyclic())
}

/// Which ambiguity to report a quantum torsion value in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotientKind {
    Signs,
    /// Signs and the monomials in the image of the representation.
    Units,
}

pub fn quantum_torsion(c: &GRComplex, rep: &Representation, kind: QuotientKind) -> Result<TorsionValue, GroupRepError> {
    let p = specialize(c, rep)?;
    if !p.is_acyclic() {
        return Err(GroupRepError::NotNarrow);
    }
    let t = torsion_periodic(&p)?;
    match kind {
        QuotientKind::Signs => Ok(t),
        QuotientKind::Units => {
            let u = rep.unit_group().ok_or(GroupRepError::NonMonomialImages)?;
            Ok(t.with_quotient(Quotient::Units(u))?)
        }
    }
}

impl fmt::Display for GRComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |f: &mut fmt::Formatter<'_>,
                    grid: &[Vec<GroupRingElem>],
                    rows: &LabeledBasis,
                    cols: &LabeledBasis,
                    name: &str| {
            for (j, c) in cols.labels().iter().enumerate() {
                let parts: Vec<String> = rows
                    .labels()
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !grid[*i][j].is_zero())
                    .map(|(i, r)| format!("({})*{r}", grid[i][j].display(&self.generators)))
                    .collect();
                let rhs = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
                writeln!(f, "{name}({c}) = {rhs}")?;
            }
            Ok(())
        };
        show(f, &self.d, &self.c0, &self.c1, "d")?;
        show(f, &self.delta, &self.c1, &self.c0, "delta")
    }
}

impl fmt::Display for GroupRingElem {
    /// Terms as `coeff*[e1,...,ek]`; use [`GroupRingElem::display`] for names.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let sign = if c.is_negative() { "-" } else { "" };
                format!("{sign}{}*{e:?}", c.abs())
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
