//! Randomized invariant suites.
//!
//! Each suite draws its cases from a ChaCha stream seeded by
//! [`VerifyConfig::seed`], so a run is reproducible bit for bit.

pub mod gen;

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{
    base_change_dets, boundary_data, change_basis, fold, torsion_bounded, torsion_bounded_with, torsion_milnor,
    torsion_periodic, BoundaryData,
};
use crate::exact_field::{substitute, RatFunc, VarTable};
use crate::linalg::{det, image_with_section, inverse, kernel_basis, rank, rref, Matrix, Vector};
use crate::pearl::{self, ring};

use gen::*;

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Cases per complex suite.
    pub cases: usize,
    /// Bound on the total dimension of generated complexes.
    pub max_dim: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: 0x5eed, cases: 100, max_dim: 12 }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    /// One message per failing case.
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status}  {:<28} {:>4} cases, {} failures", self.name, self.cases, self.failures.len())?;
        for msg in self.failures.iter().take(3) {
            write!(f, "\n      {msg}")?;
        }
        Ok(())
    }
}

fn t_vars() -> VarTable {
    VarTable::new(["t"]).expect("valid name")
}

fn rng_for(cfg: &VerifyConfig, suite: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed ^ suite.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// Run `case` `n` times, collecting error messages.
fn run_cases<F>(name: &'static str, n: usize, mut case: F) -> SuiteResult
where
    F: FnMut(usize) -> Result<(), String>,
{
    let failures = (0..n).filter_map(|k| case(k).err().map(|e| format!("case {k}: {e}"))).collect();
    SuiteResult { name, cases: n, failures }
}

fn err<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

fn combine(vars: &VarTable, vectors: &[Vector], coeffs: &[Vector]) -> Vec<Vector> {
    coeffs
        .iter()
        .map(|col| {
            let len = vectors.first().map_or(0, Vec::len);
            let mut out = vec![RatFunc::zero(vars); len];
            for (v, c) in vectors.iter().zip(col) {
                for (o, x) in out.iter_mut().zip(v) {
                    *o = &*o + &(c * x);
                }
            }
            out
        })
        .collect()
}

/// (a) Replacing every `b_i` by `b_i R_i` and its sections by `s_i R_i`
/// leaves the torsion unchanged modulo signs.
pub fn suite_image_basis(cfg: &VerifyConfig) -> SuiteResult {
    let vars = t_vars();
    let mut rng = rng_for(cfg, 1);
    run_cases("image-basis independence", cfg.cases, |_| {
        let c = random_acyclic_complex(&mut rng, &vars, cfg.max_dim);
        let base = torsion_bounded(&c).map_err(err)?;
        let data: Vec<BoundaryData> = boundary_data(&c)
            .into_iter()
            .map(|bd| {
                let r = random_invertible_columns(&mut rng, &vars, bd.basis.len());
                BoundaryData { basis: combine(&vars, &bd.basis, &r), sections: combine(&vars, &bd.sections, &r) }
            })
            .collect();
        let other = torsion_bounded_with(&c, &data).map_err(err)?;
        if base == other {
            Ok(())
        } else {
            Err(format!("{base} vs {other}"))
        }
    })
}

/// (b) Adding cycles to the sections leaves every base-change determinant
/// literally unchanged.
pub fn suite_section_choice(cfg: &VerifyConfig) -> SuiteResult {
    let vars = t_vars();
    let mut rng = rng_for(cfg, 2);
    run_cases("section-choice invariance", cfg.cases, |_| {
        let c = random_acyclic_complex(&mut rng, &vars, cfg.max_dim);
        let data = boundary_data(&c);
        let before = base_change_dets(&c, &data).map_err(err)?;
        let moved: Vec<BoundaryData> = data
            .iter()
            .enumerate()
            .map(|(i, bd)| {
                let cycles = c.d(i + 1).map(kernel_basis).unwrap_or_default();
                let sections = bd
                    .sections
                    .iter()
                    .map(|s| {
                        let mut s = s.clone();
                        for z in &cycles {
                            let k = RatFunc::from_poly(random_poly(&mut rng, &vars));
                            for (x, y) in s.iter_mut().zip(z) {
                                *x = &*x + &(&k * y);
                            }
                        }
                        s
                    })
                    .collect();
                BoundaryData { basis: bd.basis.clone(), sections }
            })
            .collect();
        let after = base_change_dets(&c, &moved).map_err(err)?;
        match before.iter().zip(&after).position(|(x, y)| x != y) {
            None => Ok(()),
            Some(i) => Err(format!("degree {i}: {} vs {}", before[i], after[i])),
        }
    })
}

/// (c) With boundary data transported along the change of basis,
/// `τ' = τ · ∏ det(P_i)^{-(-1)^i}` exactly.
pub fn suite_change_basis(cfg: &VerifyConfig) -> SuiteResult {
    let vars = t_vars();
    let mut rng = rng_for(cfg, 3);
    run_cases("change-of-basis formula", cfg.cases, |_| {
        let c = random_acyclic_complex(&mut rng, &vars, cfg.max_dim);
        let data = boundary_data(&c);
        let tau = torsion_bounded_with(&c, &data).map_err(err)?;
        let changes: Vec<Matrix> = c.bases().iter().map(|b| random_invertible(&mut rng, &vars, b)).collect();
        let c2 = change_basis(&c, &changes).map_err(err)?;
        let invs: Vec<Matrix> = changes.iter().map(|p| inverse(p).map_err(err)).collect::<Result<_, _>>()?;
        let moved: Vec<BoundaryData> = data
            .iter()
            .enumerate()
            .map(|(i, bd)| BoundaryData {
                basis: bd.basis.iter().map(|b| invs[i].apply(b)).collect(),
                sections: bd.sections.iter().map(|s| invs[i + 1].apply(s)).collect(),
            })
            .collect();
        let tau2 = torsion_bounded_with(&c2, &moved).map_err(err)?;
        let mut expected = tau.value().clone();
        for (i, p) in changes.iter().enumerate() {
            let dp = det(p).map_err(err)?;
            expected = if i % 2 == 0 { expected.checked_div(&dp).map_err(err)? } else { &expected * &dp };
        }
        if *tau2.value() == expected {
            Ok(())
        } else {
            Err(format!("got {}, expected {expected}", tau2.value()))
        }
    })
}

/// (d) Folding to a 2-periodic complex preserves the torsion modulo signs.
pub fn suite_fold(cfg: &VerifyConfig) -> SuiteResult {
    let vars = t_vars();
    let mut rng = rng_for(cfg, 4);
    run_cases("fold equality", cfg.cases, |_| {
        let c = random_acyclic_complex(&mut rng, &vars, cfg.max_dim);
        let p = fold(&c);
        if p.euler_characteristic() != c.euler_characteristic() {
            return Err("Euler characteristic changed".into());
        }
        let t = torsion_bounded(&c).map_err(err)?;
        let t2 = torsion_periodic(&p).map_err(err)?;
        if t == t2 {
            Ok(())
        } else {
            Err(format!("{t} vs {t2}"))
        }
    })
}

/// (e) Milnor torsion with no homology agrees with the acyclic torsion.
pub fn suite_milnor(cfg: &VerifyConfig) -> SuiteResult {
    let vars = t_vars();
    let mut rng = rng_for(cfg, 5);
    run_cases("Milnor with empty homology", cfg.cases, |_| {
        let c = random_acyclic_complex(&mut rng, &vars, cfg.max_dim);
        let t = torsion_bounded(&c).map_err(err)?;
        let m = torsion_milnor(&c, &[]).map_err(err)?;
        if t == m {
            Ok(())
        } else {
            Err(format!("{t} vs {m}"))
        }
    })
}

/// Permuting each basis changes the torsion by a sign only.
pub fn suite_permutation(cfg: &VerifyConfig) -> SuiteResult {
    use rand::seq::SliceRandom;
    let vars = t_vars();
    let mut rng = rng_for(cfg, 6);
    run_cases("basis permutation", cfg.cases, |_| {
        let c = random_acyclic_complex(&mut rng, &vars, cfg.max_dim);
        let perms: Vec<Matrix> = c
            .bases()
            .iter()
            .map(|b| {
                let mut idx: Vec<usize> = (0..b.len()).collect();
                idx.shuffle(&mut rng);
                let mut p = Matrix::zeros(&vars, b.clone(), b.clone());
                for (j, &i) in idx.iter().enumerate() {
                    p.set(i, j, RatFunc::one(&vars));
                }
                p
            })
            .collect();
        let t = torsion_bounded(&c).map_err(err)?;
        let t2 = torsion_bounded(&change_basis(&c, &perms).map_err(err)?).map_err(err)?;
        if t == t2 {
            Ok(())
        } else {
            Err(format!("{t} vs {t2}"))
        }
    })
}

/// Field axioms, inverses and substitution as a homomorphism over `Q(s, t)`.
pub fn suite_field(cfg: &VerifyConfig) -> SuiteResult {
    let vars = VarTable::new(["s", "t"]).expect("valid names");
    let target = VarTable::new(["z"]).expect("valid name");
    let mut rng = rng_for(cfg, 7);
    run_cases("field axioms", cfg.cases, |_| {
        let a = random_ratfunc(&mut rng, &vars);
        let b = random_ratfunc(&mut rng, &vars);
        let c = random_ratfunc(&mut rng, &vars);
        if (&(&a + &b) + &c) != (&a + &(&b + &c)) {
            return Err("addition is not associative".into());
        }
        if (&(&a * &b) * &c) != (&a * &(&b * &c)) {
            return Err("multiplication is not associative".into());
        }
        if (&a * &(&b + &c)) != (&(&a * &b) + &(&a * &c)) {
            return Err("distributivity fails".into());
        }
        if (&a * &b) != (&b * &a) {
            return Err("multiplication is not commutative".into());
        }
        if !a.is_zero() && !(&a * &a.inv().map_err(err)?).is_one() {
            return Err(format!("a·a⁻¹ != 1 for a = {a}"));
        }
        if !a.sign_normalized().structurally_eq(&a.sign_normalized().sign_normalized()) {
            return Err("normalization is not idempotent".into());
        }
        let round = RatFunc::parse(&a.to_string(), &vars).map_err(err)?;
        if round != a {
            return Err(format!("display/parse round trip changed {a}"));
        }
        // Images are units, so no denominator can vanish.
        let z = RatFunc::var(&target, 0);
        let bindings: BTreeMap<String, RatFunc> = [
            ("s".to_string(), z.pow(rng.gen_range(-2..=2)).map_err(err)?),
            (
                "t".to_string(),
                &RatFunc::from_int(&target, rng.gen_range(1..=3)) * &z.pow(rng.gen_range(-1..=1)).map_err(err)?,
            ),
        ]
        .into_iter()
        .collect();
        let sub = |x: &RatFunc| substitute(x, &bindings);
        let (sa, sb) = match (sub(&a), sub(&b)) {
            (Ok(x), Ok(y)) => (x, y),
            // Denominator vanished under the specialization; nothing to compare.
            _ => return Ok(()),
        };
        if sub(&(&a * &b)).map_err(err)? != &sa * &sb {
            return Err("substitution does not respect products".into());
        }
        if sub(&(&a + &b)).map_err(err)? != &sa + &sb {
            return Err("substitution does not respect sums".into());
        }
        Ok(())
    })
}

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &Matrix) -> RatFunc {
    fn go(rows: &[Vector], cols: &[usize], vars: &VarTable) -> RatFunc {
        if cols.is_empty() {
            return RatFunc::one(vars);
        }
        let mut acc = RatFunc::zero(vars);
        for (k, &j) in cols.iter().enumerate() {
            let e = &rows[0][j];
            if e.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&c| c != j).collect();
            let term = e * &go(&rows[1..], &rest, vars);
            acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }
    let rows: Vec<Vector> = (0..m.nrows()).map(|i| m.row(i)).collect();
    go(&rows, &(0..m.ncols()).collect::<Vec<_>>(), m.vars())
}

/// Determinants against a cofactor oracle and multiplicativity, rank-nullity,
/// sections of the image and invertibility of the row-reduction transform.
pub fn suite_linalg(cfg: &VerifyConfig) -> SuiteResult {
    let vars = t_vars();
    let mut rng = rng_for(cfg, 8);
    run_cases("linear algebra", cfg.cases, |_| {
        let n = rng.gen_range(1..=4);
        let a = random_matrix(&mut rng, &vars, n);
        let b = random_matrix(&mut rng, &vars, n);
        let da = det(&a).map_err(err)?;
        if da != cofactor_det(&a) {
            return Err(format!("det {da} disagrees with cofactor expansion {}", cofactor_det(&a)));
        }
        let db = det(&b).map_err(err)?;
        if det(&a.mul(&b).map_err(err)?).map_err(err)? != &da * &db {
            return Err("det is not multiplicative".into());
        }
        if rank(&a) + kernel_basis(&a).len() != n {
            return Err("rank-nullity fails".into());
        }
        let im = image_with_section(&a);
        for (s, v) in im.preimages.iter().zip(&im.image_basis) {
            if a.apply(s) != *v {
                return Err("preimage does not map to its image vector".into());
            }
        }
        for z in &im.complement {
            if a.apply(z).iter().any(|x| !x.is_zero()) {
                return Err("kernel vector is not in the kernel".into());
            }
        }
        if det(&rref(&a).transform).map_err(err)?.is_zero() {
            return Err("row-reduction transform is singular".into());
        }
        Ok(())
    })
}

fn e1_torsion(d1: &pearl::D1Data) -> Result<crate::complex::TorsionValue, String> {
    pearl::torsion_from_d1(d1).map_err(err)
}

/// Pearl-side identities at random specializations of the parameters.
pub fn suite_pearl(cfg: &VerifyConfig) -> SuiteResult {
    let vars = t_vars();
    let mut rng = rng_for(cfg, 9);
    let n = (cfg.cases / 10).max(3);
    run_cases("pearl models", n, |k| {
        let r = RatFunc::from_poly(random_nonzero_poly(&mut rng, &vars));
        // Torus: torsion 1 for any nonzero values.
        let m = 2 + k % 2;
        let values: Vec<RatFunc> = (0..m).map(|_| RatFunc::from_poly(random_nonzero_poly(&mut rng, &vars))).collect();
        let t = e1_torsion(&pearl::torus_d1_with(&values).map_err(err)?)?;
        if !t.matches(&RatFunc::one(&vars)) {
            return Err(format!("torus T^{m}: {t}"));
        }
        // Product with an odd sphere: r^{-χ(V)} and a working splitting.
        let v = match k % 3 {
            0 => ring::sphere(2).map_err(err)?,
            1 => ring::torus(2).map_err(err)?,
            _ => ring::surface(2).map_err(err)?,
        };
        let d1 = pearl::product_star(&v, 0, &r).map_err(err)?;
        let expected = r.pow(-v.euler_characteristic()).map_err(err)?;
        let t = e1_torsion(&d1)?;
        if !t.matches(&expected) {
            return Err(format!("product model: {t}, expected {expected}"));
        }
        pearl::sigma_splitting(&d1, pearl::product_star_sigma(&d1, &r).map_err(err)?).map_err(err)?;
        // Explicit and tensor-built presentations of S^1 × Σ_2 agree.
        let explicit = e1_torsion(&pearl::sigma_g_d1_with(2, &r).map_err(err)?)?;
        let tensored = e1_torsion(&pearl::product_star(&ring::surface(2).map_err(err)?, 0, &r).map_err(err)?)?;
        if explicit != tensored {
            return Err(format!("surface models disagree: {explicit} vs {tensored}"));
        }
        Ok(())
    })
}

/// The five complex suites required for acceptance, in order (a) to (e).
pub fn complex_suites(cfg: &VerifyConfig) -> Vec<SuiteResult> {
    vec![suite_image_basis(cfg), suite_section_choice(cfg), suite_change_basis(cfg), suite_fold(cfg), suite_milnor(cfg)]
}

/// Every suite.
pub fn run_all(cfg: &VerifyConfig) -> Vec<SuiteResult> {
    let mut out = complex_suites(cfg);
    out.push(suite_permutation(cfg));
    out.push(suite_field(cfg));
    out.push(suite_linalg(cfg));
    out.push(suite_pearl(cfg));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> VerifyConfig {
        VerifyConfig { seed: 7, cases: 8, max_dim: 8 }
    }

    #[test]
    fn generated_complexes_are_acyclic_and_valid() {
        let vars = t_vars();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let c: crate::complex::BoundedComplex = random_acyclic_complex(&mut rng, &vars, 12);
            assert!(c.total_dim() <= 12);
            assert!(c.validate().is_ok());
            assert!(c.is_acyclic());
        }
    }

    #[test]
    fn random_invertible_has_unit_determinant() {
        let vars = t_vars();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let b = crate::linalg::LabeledBasis::indexed("e", 4);
        for _ in 0..10 {
            let d = det(&random_invertible(&mut rng, &vars, &b)).unwrap();
            assert!(d.numer().num_terms() == 1 && d.denom().num_terms() == 1, "{d}");
        }
    }

    #[test]
    fn cofactor_oracle_on_known_matrix() {
        let v = t_vars();
        let q = |s: &str| RatFunc::parse(s, &v).unwrap();
        let b = crate::linalg::LabeledBasis::indexed("e", 2);
        let m = Matrix::from_rows(&v, b.clone(), b, vec![vec![q("t"), q("1")], vec![q("2"), q("t")]]).unwrap();
        assert_eq!(cofactor_det(&m), q("t^2 - 2"));
    }

    #[test]
    fn small_run_passes() {
        for s in run_all(&small()) {
            assert!(s.passed(), "{s}");
        }
    }

    #[test]
    fn runs_are_deterministic() {
        let a: Vec<String> = complex_suites(&small()).iter().map(ToString::to_string).collect();
        let b: Vec<String> = complex_suites(&small()).iter().map(ToString::to_string).collect();
        assert_eq!(a, b);
    }
}
