//! Dense exact linear algebra over [`RatFunc`] with labeled bases.
//!
//! Pivoting always takes the first nonzero entry in column order, so every
//! basis choice made here (image bases, sections, kernel bases) is
//! deterministic.

use std::fmt;

use crate::exact_field::{FieldError, RatFunc, VarTable};

/// Column vector of field elements.
pub type Vector = Vec<RatFunc>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch { context: &'static str, expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("vector in column {column} is not in the span of the basis")]
    NotInSpan { column: usize },
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("duplicate basis label `{0}`")]
    DuplicateLabel(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Ordered, duplicate-free list of basis element names.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LabeledBasis(Vec<String>);

impl LabeledBasis {
    pub fn new<I, S>(labels: I) -> Result<Self, LinalgError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(LinalgError::DuplicateLabel(l.clone()));
            }
        }
        Ok(LabeledBasis(labels))
    }

    /// `prefix0, prefix1, ...`
    pub fn indexed(prefix: &str, n: usize) -> Self {
        LabeledBasis((0..n).map(|i| format!("{prefix}{i}")).collect())
    }

    pub fn labels(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.0.iter().position(|l| l == label)
    }

    pub fn concat(&self, other: &LabeledBasis) -> Result<LabeledBasis, LinalgError> {
        LabeledBasis::new(self.0.iter().chain(other.0.iter()).cloned())
    }
}

/// Dense matrix mapping the `cols` basis (domain) to the `rows` basis
/// (codomain). Column `j` holds the coordinates of the image of `cols[j]`.
#[derive(Clone)]
pub struct Matrix {
    vars: VarTable,
    rows: LabeledBasis,
    cols: LabeledBasis,
    entries: Vec<RatFunc>,
}

impl Matrix {
    pub fn zeros(vars: &VarTable, rows: LabeledBasis, cols: LabeledBasis) -> Self {
        let entries = vec![RatFunc::zero(vars); rows.len() * cols.len()];
        Matrix { vars: vars.clone(), rows, cols, entries }
    }

    pub fn identity(vars: &VarTable, basis: LabeledBasis) -> Self {
        let mut m = Self::zeros(vars, basis.clone(), basis);
        for i in 0..m.nrows() {
            m.set(i, i, RatFunc::one(vars));
        }
        m
    }

    pub fn from_rows(
        vars: &VarTable,
        rows: LabeledBasis,
        cols: LabeledBasis,
        data: Vec<Vec<RatFunc>>,
    ) -> Result<Self, LinalgError> {
        if data.len() != rows.len() {
            return Err(LinalgError::DimensionMismatch {
                context: "row count",
                expected: rows.len(),
                found: data.len(),
            });
        }
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for row in data {
            if row.len() != cols.len() {
                return Err(LinalgError::DimensionMismatch {
                    context: "row length",
                    expected: cols.len(),
                    found: row.len(),
                });
            }
            for e in row {
                vars.check(e.vars())?;
                entries.push(e);
            }
        }
        Ok(Matrix { vars: vars.clone(), rows, cols, entries })
    }

    pub fn from_columns(
        vars: &VarTable,
        rows: LabeledBasis,
        cols: LabeledBasis,
        columns: &[Vector],
    ) -> Result<Self, LinalgError> {
        if columns.len() != cols.len() {
            return Err(LinalgError::DimensionMismatch {
                context: "column count",
                expected: cols.len(),
                found: columns.len(),
            });
        }
        let mut m = Self::zeros(vars, rows, cols);
        for (j, c) in columns.iter().enumerate() {
            if c.len() != m.nrows() {
                return Err(LinalgError::DimensionMismatch {
                    context: "column length",
                    expected: m.nrows(),
                    found: c.len(),
                });
            }
            for (i, e) in c.iter().enumerate() {
                vars.check(e.vars())?;
                m.set(i, j, e.clone());
            }
        }
        Ok(m)
    }

    /// Square or rectangular matrix with generic labels built from columns of
    /// length `nrows`.
    pub fn from_unlabeled_columns(vars: &VarTable, nrows: usize, columns: &[Vector]) -> Result<Self, LinalgError> {
        Self::from_columns(vars, LabeledBasis::indexed("r", nrows), LabeledBasis::indexed("c", columns.len()), columns)
    }

    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    pub fn rows(&self) -> &LabeledBasis {
        &self.rows
    }

    pub fn cols(&self) -> &LabeledBasis {
        &self.cols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        &self.entries[i * self.ncols() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RatFunc) {
        let n = self.ncols();
        self.entries[i * n + j] = v;
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.nrows()).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.ncols()).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> Vector {
        self.entries[i * self.ncols()..(i + 1) * self.ncols()].to_vec()
    }

    fn row_vecs(&self) -> Vec<Vector> {
        (0..self.nrows()).map(|i| self.row(i)).collect()
    }

    pub fn with_labels(mut self, rows: LabeledBasis, cols: LabeledBasis) -> Result<Self, LinalgError> {
        if rows.len() != self.nrows() || cols.len() != self.ncols() {
            return Err(LinalgError::DimensionMismatch {
                context: "relabel",
                expected: self.nrows() * self.ncols(),
                found: rows.len() * cols.len(),
            });
        }
        self.rows = rows;
        self.cols = cols;
        Ok(self)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RatFunc::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.vars, self.cols.clone(), self.rows.clone());
        for i in 0..self.nrows() {
            for j in 0..self.ncols() {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// `self * rhs`; the inner dimensions must agree.
    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        if self.ncols() != rhs.nrows() {
            return Err(LinalgError::DimensionMismatch {
                context: "matrix product",
                expected: self.ncols(),
                found: rhs.nrows(),
            });
        }
        self.vars.check(&rhs.vars)?;
        let mut out = Matrix::zeros(&self.vars, self.rows.clone(), rhs.cols.clone());
        for i in 0..self.nrows() {
            for k in 0..self.ncols() {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.ncols() {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[RatFunc]) -> Vector {
        assert_eq!(v.len(), self.ncols(), "vector length does not match matrix columns");
        (0..self.nrows())
            .map(|i| {
                let mut acc = RatFunc::zero(&self.vars);
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect()
    }
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.vars.same_as(&other.vars)
            && self.entries.iter().zip(&other.entries).all(|(a, b)| a == b)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> =
            (0..self.nrows()).map(|i| (0..self.ncols()).map(|j| self.get(i, j).to_string()).collect()).collect();
        let label_w = self.rows.labels().iter().map(String::len).max().unwrap_or(0);
        let widths: Vec<usize> = (0..self.ncols())
            .map(|j| {
                cells
                    .iter()
                    .map(|r| r[j].chars().count())
                    .chain(std::iter::once(self.cols.labels()[j].chars().count()))
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        write!(f, "{:label_w$} |", "")?;
        for (j, l) in self.cols.labels().iter().enumerate() {
            write!(f, " {:>w$}", l, w = widths[j])?;
        }
        writeln!(f)?;
        for (i, l) in self.rows.labels().iter().enumerate() {
            write!(f, "{l:label_w$} |")?;
            for (j, c) in cells[i].iter().enumerate() {
                write!(f, " {:>w$}", c, w = widths[j])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Result of Gauss-Jordan elimination: `transform * m == reduced`.
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
    pub transform: Matrix,
}

fn gauss_jordan(a: &mut [Vector], mut t: Option<&mut [Vector]>, ncols: usize) -> Vec<usize> {
    let nrows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        if let Some(t) = t.as_deref_mut() {
            t.swap(r, p);
        }
        let inv = a[r][c].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            scale_row(&mut a[r], &inv);
            if let Some(t) = t.as_deref_mut() {
                scale_row(&mut t[r], &inv);
            }
        }
        for i in 0..nrows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            let pivot_row = a[r].clone();
            sub_scaled(&mut a[i], &pivot_row, &f);
            if let Some(t) = t.as_deref_mut() {
                let pivot_row = t[r].clone();
                sub_scaled(&mut t[i], &pivot_row, &f);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn scale_row(row: &mut [RatFunc], f: &RatFunc) {
    for x in row.iter_mut() {
        if !x.is_zero() {
            *x = &*x * f;
        }
    }
}

fn sub_scaled(row: &mut [RatFunc], pivot: &[RatFunc], f: &RatFunc) {
    for (x, p) in row.iter_mut().zip(pivot) {
        if !p.is_zero() {
            *x = &*x - &(f * p);
        }
    }
}

/// Reduced row echelon form with the accumulated row operations.
pub fn rref(m: &Matrix) -> Rref {
    let mut a = m.row_vecs();
    let mut t = Matrix::identity(&m.vars, m.rows.clone()).row_vecs();
    let pivots = gauss_jordan(&mut a, Some(&mut t), m.ncols());
    let reduced = Matrix::from_rows(&m.vars, m.rows.clone(), m.cols.clone(), a).expect("shape preserved");
    let transform = Matrix::from_rows(&m.vars, m.rows.clone(), m.rows.clone(), t).expect("shape preserved");
    Rref { reduced, pivots, transform }
}

pub fn rank(m: &Matrix) -> usize {
    let mut a = m.row_vecs();
    gauss_jordan(&mut a, None, m.ncols()).len()
}

/// Kernel basis from the free columns of the reduced form.
pub fn kernel_basis(m: &Matrix) -> Vec<Vector> {
    let mut a = m.row_vecs();
    let pivots = gauss_jordan(&mut a, None, m.ncols());
    kernel_from_reduced(&m.vars, &a, &pivots, m.ncols())
}

fn kernel_from_reduced(vars: &VarTable, reduced: &[Vector], pivots: &[usize], ncols: usize) -> Vec<Vector> {
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![RatFunc::zero(vars); ncols];
            v[free] = RatFunc::one(vars);
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&reduced[r][free];
            }
            v
        })
        .collect()
}

/// Determinant by fraction-free (Bareiss) elimination after clearing the
/// denominators of each row.
pub fn det(m: &Matrix) -> Result<RatFunc, LinalgError> {
    if m.nrows() != m.ncols() {
        return Err(LinalgError::NotSquare { rows: m.nrows(), cols: m.ncols() });
    }
    Ok(bareiss(&m.vars, m.row_vecs()))
}

/// Determinant of the square matrix whose columns are `columns`.
pub fn det_of_columns(vars: &VarTable, nrows: usize, columns: &[Vector]) -> Result<RatFunc, LinalgError> {
    if columns.len() != nrows {
        return Err(LinalgError::NotSquare { rows: nrows, cols: columns.len() });
    }
    for c in columns {
        if c.len() != nrows {
            return Err(LinalgError::DimensionMismatch { context: "column length", expected: nrows, found: c.len() });
        }
    }
    let rows: Vec<Vector> = (0..nrows).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
    Ok(bareiss(vars, rows))
}

fn bareiss(vars: &VarTable, mut a: Vec<Vector>) -> RatFunc {
    let n = a.len();
    if n == 0 {
        return RatFunc::one(vars);
    }
    let mut scale = RatFunc::one(vars);
    for row in a.iter_mut() {
        let mut dens: Vec<&crate::LaurentPoly> = Vec::new();
        for x in row.iter() {
            if !x.is_zero() && !x.denom().is_one() && !dens.contains(&x.denom()) {
                dens.push(x.denom());
            }
        }
        if dens.is_empty() {
            continue;
        }
        let mult = dens.into_iter().fold(RatFunc::one(vars), |acc, d| &acc * &RatFunc::from_poly(d.clone()));
        scale_row(row, &mult);
        scale = &scale * &mult;
    }
    let mut negate = false;
    let mut prev = RatFunc::one(vars);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    negate = !negate;
                }
                None => return RatFunc::zero(vars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = v.checked_div(&prev).expect("Bareiss divisor is nonzero");
            }
            a[i][k] = RatFunc::zero(vars);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].checked_div(&scale).expect("row scales are nonzero");
    if negate {
        -d
    } else {
        d
    }
}

pub fn inverse(m: &Matrix) -> Result<Matrix, LinalgError> {
    if m.nrows() != m.ncols() {
        return Err(LinalgError::NotSquare { rows: m.nrows(), cols: m.ncols() });
    }
    let r = rref(m);
    if r.pivots.len() != m.nrows() {
        return Err(LinalgError::Singular);
    }
    r.transform.with_labels(m.cols.clone(), m.rows.clone())
}

/// Image basis of a linear map with recorded preimages and a kernel basis.
///
/// Invariant: `m * preimages[j] == image_basis[j]` exactly.
#[derive(Clone, Debug)]
pub struct ImageData {
    pub image_basis: Vec<Vector>,
    pub preimages: Vec<Vector>,
    pub complement: Vec<Vector>,
}

impl ImageData {
    pub fn rank(&self) -> usize {
        self.image_basis.len()
    }
}

/// Image basis = pivot columns of `m`, preimages = the matching standard
/// basis vectors of the domain, complement = kernel basis.
pub fn image_with_section(m: &Matrix) -> ImageData {
    let mut a = m.row_vecs();
    let pivots = gauss_jordan(&mut a, None, m.ncols());
    let complement = kernel_from_reduced(&m.vars, &a, &pivots, m.ncols());
    let image_basis = pivots.iter().map(|&c| m.column(c)).collect();
    let preimages = pivots
        .iter()
        .map(|&c| {
            let mut e = vec![RatFunc::zero(&m.vars); m.ncols()];
            e[c] = RatFunc::one(&m.vars);
            e
        })
        .collect();
    ImageData { image_basis, preimages, complement }
}

/// Coefficient matrix `B` with `basis * B == vectors`, column by column.
pub fn express_in_basis(vars: &VarTable, vectors: &[Vector], basis: &[Vector]) -> Result<Matrix, LinalgError> {
    let n = basis.first().map(Vec::len).or_else(|| vectors.first().map(Vec::len)).unwrap_or(0);
    let bm = Matrix::from_unlabeled_columns(vars, n, basis)?;
    let r = rref(&bm);
    if r.pivots.len() != basis.len() {
        return Err(LinalgError::DependentBasis);
    }
    let k = basis.len();
    let mut cols = Vec::with_capacity(vectors.len());
    for (j, v) in vectors.iter().enumerate() {
        if v.len() != n {
            return Err(LinalgError::DimensionMismatch { context: "vector length", expected: n, found: v.len() });
        }
        let w = r.transform.apply(v);
        if w[k..].iter().any(|x| !x.is_zero()) {
            return Err(LinalgError::NotInSpan { column: j });
        }
        cols.push(w[..k].to_vec());
    }
    Matrix::from_columns(vars, LabeledBasis::indexed("b", k), LabeledBasis::indexed("v", vectors.len()), &cols)
}
