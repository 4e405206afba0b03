//! Seeded random inputs over `Q(t)`.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::complex::{bounded_from_columns, change_basis, BoundedComplex};
use crate::exact_field::{LaurentPoly, Monomial, RatFunc, Rational, VarTable};
use crate::linalg::{LabeledBasis, Matrix, Vector};

fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    let num: i64 = rng.gen_range(-4..=4);
    let den: i64 = *[1, 1, 1, 2, 3].choose(rng).unwrap();
    Rational::new(num.into(), den.into())
}

/// Laurent polynomial with up to three terms and exponents in `-1..=2`.
pub fn random_poly<R: Rng>(rng: &mut R, vars: &VarTable) -> LaurentPoly {
    let terms = rng.gen_range(1..=3);
    LaurentPoly::from_terms(
        vars,
        (0..terms).map(|_| {
            let exps = (0..vars.len()).map(|_| rng.gen_range(-1..=2)).collect();
            (Monomial::from_exponents(exps), small_rational(rng))
        }),
    )
}

pub fn random_nonzero_poly<R: Rng>(rng: &mut R, vars: &VarTable) -> LaurentPoly {
    loop {
        let p = random_poly(rng, vars);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Quotient of two random Laurent polynomials.
pub fn random_ratfunc<R: Rng>(rng: &mut R, vars: &VarTable) -> RatFunc {
    RatFunc::new(random_poly(rng, vars), random_nonzero_poly(rng, vars)).expect("nonzero denominator")
}

pub fn random_nonzero_ratfunc<R: Rng>(rng: &mut R, vars: &VarTable) -> RatFunc {
    RatFunc::new(random_nonzero_poly(rng, vars), random_nonzero_poly(rng, vars)).expect("nonzero denominator")
}

/// A nonzero monomial with rational coefficient: a unit of `Q[t, t^-1]`.
fn random_unit<R: Rng>(rng: &mut R, vars: &VarTable) -> RatFunc {
    let exps = (0..vars.len()).map(|_| rng.gen_range(-1..=1)).collect();
    let c = *[1i64, -1, 2, -2, 3].choose(rng).unwrap();
    RatFunc::from_poly(LaurentPoly::monomial(vars, Monomial::from_exponents(exps), Rational::from_integer(c.into())))
}

/// Sparse entry for change-of-basis factors: mostly zero, otherwise a small
/// integer or a signed power of a variable.
fn random_entry<R: Rng>(rng: &mut R, vars: &VarTable) -> RatFunc {
    match rng.gen_range(0..10) {
        0..=4 => RatFunc::zero(vars),
        5..=7 => RatFunc::from_int(vars, *[1, -1, 2, -2].choose(rng).unwrap()),
        _ => random_unit(rng, vars),
    }
}

/// Dense entry with a short Laurent polynomial in most positions.
fn random_dense_entry<R: Rng>(rng: &mut R, vars: &VarTable) -> RatFunc {
    match rng.gen_range(0..4) {
        0 => RatFunc::zero(vars),
        1 => RatFunc::from_int(vars, rng.gen_range(-2..=2)),
        _ => RatFunc::from_poly(random_poly(rng, vars)),
    }
}

/// Nonzero polynomial with at most two terms, integer coefficients and
/// exponents in `0..=2`.
fn random_scalar<R: Rng>(rng: &mut R, vars: &VarTable) -> RatFunc {
    loop {
        let terms = rng.gen_range(1..=2);
        let p = LaurentPoly::from_terms(
            vars,
            (0..terms).map(|_| {
                let exps = (0..vars.len()).map(|_| rng.gen_range(0..=2)).collect();
                let c: i64 = *[1, -1, 2, -2, 3].choose(rng).unwrap();
                (Monomial::from_exponents(exps), Rational::from_integer(c.into()))
            }),
        );
        if !p.is_zero() {
            return RatFunc::from_poly(p);
        }
    }
}

/// Invertible `n x n` matrix `L·U` with unit diagonals, so the inverse has
/// Laurent-polynomial entries.
pub fn random_invertible<R: Rng>(rng: &mut R, vars: &VarTable, basis: &LabeledBasis) -> Matrix {
    let n = basis.len();
    let mut lower = Matrix::zeros(vars, basis.clone(), basis.clone());
    let mut upper = Matrix::zeros(vars, basis.clone(), basis.clone());
    for i in 0..n {
        lower.set(i, i, random_unit(rng, vars));
        upper.set(i, i, RatFunc::one(vars));
        for j in 0..i {
            lower.set(i, j, random_entry(rng, vars));
            upper.set(j, i, random_entry(rng, vars));
        }
    }
    lower.mul(&upper).expect("square")
}

/// Random invertible `r x r` coefficient matrix as columns.
pub fn random_invertible_columns<R: Rng>(rng: &mut R, vars: &VarTable, r: usize) -> Vec<Vector> {
    random_invertible(rng, vars, &LabeledBasis::indexed("e", r)).columns()
}

/// Random square matrix with small entries.
pub fn random_matrix<R: Rng>(rng: &mut R, vars: &VarTable, n: usize) -> Matrix {
    let b = LabeledBasis::indexed("e", n);
    let mut m = Matrix::zeros(vars, b.clone(), b);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, random_dense_entry(rng, vars));
        }
    }
    m
}

/// Acyclic complex of total dimension `<= max_total_dim` (even, at least 2):
/// a direct sum of one-dimensional isomorphisms `C_{i+1} -> C_i`, then
/// conjugated by random invertible matrices in every degree.
pub fn random_acyclic_complex<R: Rng>(rng: &mut R, vars: &VarTable, max_total_dim: usize) -> BoundedComplex {
    let top = rng.gen_range(1..=4usize);
    let pieces = rng.gen_range(1..=(max_total_dim / 2).max(1));
    // Piece k sits in degrees (pos[k] + 1, pos[k]).
    let pos: Vec<usize> = (0..pieces).map(|_| rng.gen_range(0..top)).collect();
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); top + 1];
    for (k, &p) in pos.iter().enumerate() {
        members[p].push(k);
        members[p + 1].push(k);
    }
    let bases: Vec<LabeledBasis> = members
        .iter()
        .enumerate()
        .map(|(i, ks)| LabeledBasis::new(ks.iter().map(|k| format!("e{i}_{k}"))).expect("distinct"))
        .collect();
    let scalars: Vec<RatFunc> = (0..pieces).map(|_| random_scalar(rng, vars)).collect();
    let diffs: Vec<Vec<Vector>> = (1..=top)
        .map(|i| {
            members[i]
                .iter()
                .map(|&k| {
                    members[i - 1]
                        .iter()
                        .map(|&k2| if k == k2 && pos[k] + 1 == i { scalars[k].clone() } else { RatFunc::zero(vars) })
                        .collect()
                })
                .collect()
        })
        .collect();
    let c = bounded_from_columns(vars, bases, diffs).expect("well-formed");
    let changes: Vec<Matrix> = c.bases().iter().map(|b| random_invertible(rng, vars, b)).collect();
    change_basis(&c, &changes).expect("invertible changes")
}
