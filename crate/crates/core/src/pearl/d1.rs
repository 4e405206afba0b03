use std::collections::BTreeMap;
use std::fmt;

use super::ring::{Factorization, GradedRingPresentation};
use super::PearlError;
use crate::complex::{
    first_nonzero_entry, torsion_cochain_family, CochainFamily, FamilyMember, FamilySpace, TorsionValue,
};
use crate::exact_field::{RatFunc, VarTable};
use crate::linalg::{image_with_section, rank, LabeledBasis, Matrix, Vector};

/// First-page differential on `H_*(L)`, raising degree by `N_L - 1`.
#[derive(Clone, Debug)]
pub struct D1Data {
    ring: GradedRingPresentation,
    vars: VarTable,
    n_l: i64,
    generator_values: BTreeMap<String, Vector>,
    full_matrix: Matrix,
}

impl D1Data {
    pub fn ring(&self) -> &GradedRingPresentation {
        &self.ring
    }

    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    pub fn n_l(&self) -> i64 {
        self.n_l
    }

    pub fn generator_values(&self) -> &BTreeMap<String, Vector> {
        &self.generator_values
    }

    /// `d1` on the whole basis; column `j` is the image of `basis[j]`.
    pub fn full_matrix(&self) -> &Matrix {
        &self.full_matrix
    }

    /// Image of a coordinate vector.
    pub fn apply(&self, v: &[RatFunc]) -> Vector {
        self.full_matrix.apply(v)
    }
}

fn scale(v: &[RatFunc], c: &RatFunc) -> Vector {
    v.iter().map(|x| if x.is_zero() { x.clone() } else { x * c }).collect()
}

fn add(u: &[RatFunc], v: &[RatFunc]) -> Vector {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

fn vec_eq(u: &[RatFunc], v: &[RatFunc]) -> bool {
    u.iter().zip(v).all(|(a, b)| a == b)
}

fn show_vector(ring: &GradedRingPresentation, v: &[RatFunc]) -> String {
    let parts: Vec<String> =
        v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| format!("({x})*{}", ring.name(i))).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Extend generator values to the whole ring by
/// `d(x·y) = d(x)·y + (-1)^{n-|x|} x·d(y)` along the recorded
/// factorizations, then check the rule on every pair of basis elements and
/// check `d∘d = 0`.
pub fn extend_d1_leibniz(
    ring: &GradedRingPresentation,
    vars: &VarTable,
    gen_values: BTreeMap<String, Vector>,
    n_l: i64,
) -> Result<D1Data, PearlError> {
    if n_l < 2 || n_l % 2 != 0 {
        return Err(PearlError::InvalidArgument(format!("N_L must be even and at least 2, got {n_l}")));
    }
    let dim = ring.dim();
    for (name, v) in &gen_values {
        let i = ring.index_of(name).ok_or_else(|| PearlError::UnknownGenerator(name.clone()))?;
        if *ring.factorization(i) != Factorization::Generator {
            return Err(PearlError::UnknownGenerator(name.clone()));
        }
        if v.len() != dim {
            return Err(PearlError::InvalidArgument(format!("value of `{name}` must have {dim} coordinates")));
        }
        for x in v {
            if !x.vars().same_as(vars) {
                return Err(crate::exact_field::FieldError::VarTableMismatch(
                    x.vars().names().join(","),
                    vars.names().join(","),
                )
                .into());
            }
        }
        let target = ring.degree(i) - 1 + n_l;
        if let Some(j) = (0..dim).find(|&j| !v[j].is_zero() && ring.degree(j) != target) {
            return Err(PearlError::DegreeMismatch {
                element: name.clone(),
                component: ring.name(j).to_string(),
                expected: target,
            });
        }
    }
    for g in ring.generators() {
        if !gen_values.contains_key(ring.name(g)) {
            return Err(PearlError::MissingGeneratorValue(ring.name(g).to_string()));
        }
    }

    let mut memo: Vec<Option<Vector>> = vec![None; dim];
    for x in 0..dim {
        leibniz_value(ring, vars, &gen_values, x, &mut memo);
    }
    let values: Vec<Vector> = memo.into_iter().map(|v| v.expect("all values computed")).collect();

    // The rule must hold on every pair, not only along the factorizations.
    for x in 0..dim {
        for y in 0..dim {
            let mut lhs = vec![RatFunc::zero(vars); dim];
            for &(i, c) in ring.product(x, y) {
                lhs = add(&lhs, &scale(&values[i], &RatFunc::from_int(vars, c)));
            }
            let ex = ring.basis_vector(x, vars);
            let ey = ring.basis_vector(y, vars);
            let mut rhs = ring.mul_vectors(&values[x], &ey, vars);
            let second = ring.mul_vectors(&ex, &values[y], vars);
            let s = if ring.codegree(x).rem_euclid(2) == 0 { 1 } else { -1 };
            rhs = add(&rhs, &scale(&second, &RatFunc::from_int(vars, s)));
            if !vec_eq(&lhs, &rhs) {
                return Err(PearlError::Leibniz {
                    left: ring.name(x).to_string(),
                    right: ring.name(y).to_string(),
                    lhs: show_vector(ring, &lhs),
                    rhs: show_vector(ring, &rhs),
                });
            }
        }
    }

    let full_matrix = Matrix::from_columns(vars, ring.basis().clone(), ring.basis().clone(), &values)?;
    let square = full_matrix.mul(&full_matrix)?;
    if let Some(v) = first_nonzero_entry("d1∘d1".into(), &square) {
        return Err(PearlError::NotADifferential(v));
    }
    Ok(D1Data { ring: ring.clone(), vars: vars.clone(), n_l, generator_values: gen_values, full_matrix })
}

fn leibniz_value(
    ring: &GradedRingPresentation,
    vars: &VarTable,
    gen_values: &BTreeMap<String, Vector>,
    x: usize,
    memo: &mut Vec<Option<Vector>>,
) -> Vector {
    if let Some(v) = &memo[x] {
        return v.clone();
    }
    let v = match ring.factorization(x) {
        Factorization::Unit => vec![RatFunc::zero(vars); ring.dim()],
        Factorization::Generator => gen_values[ring.name(x)].clone(),
        Factorization::Product { left, right, coeff } => {
            let dl = leibniz_value(ring, vars, gen_values, *left, memo);
            let dr = leibniz_value(ring, vars, gen_values, *right, memo);
            let el = ring.basis_vector(*left, vars);
            let er = ring.basis_vector(*right, vars);
            let s = if ring.codegree(*left).rem_euclid(2) == 0 { 1 } else { -1 };
            let sum = add(
                &ring.mul_vectors(&dl, &er, vars),
                &scale(&ring.mul_vectors(&el, &dr, vars), &RatFunc::from_int(vars, s)),
            );
            let inv = RatFunc::from_int(vars, *coeff).inv().expect("nonzero coefficient");
            scale(&sum, &inv)
        }
    };
    memo[x] = Some(v.clone());
    v
}

/// Submatrix of `d1` from degree `from` to degree `to`.
fn block(d1: &D1Data, from: &[usize], to: &[usize]) -> Matrix {
    let ring = &d1.ring;
    let rows = LabeledBasis::new(to.iter().map(|&i| ring.name(i).to_string())).expect("ring labels unique");
    let cols = LabeledBasis::new(from.iter().map(|&i| ring.name(i).to_string())).expect("ring labels unique");
    let mut m = Matrix::zeros(&d1.vars, rows, cols);
    for (r, &i) in to.iter().enumerate() {
        for (c, &j) in from.iter().enumerate() {
            m.set(r, c, d1.full_matrix.get(i, j).clone());
        }
    }
    m
}

/// One complex `H_k -> H_{k-1+N_L} -> ...` for each `k` in `0..=N_L-2`
/// with `k <= n`.
pub fn build_d1_family(d1: &D1Data) -> CochainFamily {
    let ring = &d1.ring;
    let step = d1.n_l - 1;
    let mut members = Vec::new();
    for k in 0..=(d1.n_l - 2).min(ring.n()) {
        let degrees: Vec<i64> = (0..).map(|j| k + j * step).take_while(|&d| d <= ring.n()).collect();
        let elems: Vec<Vec<usize>> = degrees.iter().map(|&d| ring.elements_of_degree(d)).collect();
        let spaces = degrees
            .iter()
            .zip(&elems)
            .map(|(&degree, e)| FamilySpace {
                degree,
                basis: LabeledBasis::new(e.iter().map(|&i| ring.name(i).to_string())).expect("ring labels unique"),
            })
            .collect();
        let maps = elems.windows(2).map(|w| block(d1, &w[0], &w[1])).collect();
        members.push(FamilyMember::new(&d1.vars, spaces, maps).expect("blocks match spaces"));
    }
    CochainFamily::new(&d1.vars, step as usize, members).expect("degrees are step apart")
}

/// Dimensions of the second page, per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E1Report {
    pub narrow: bool,
    /// `(degree, dim E^2)` for every degree `0..=n`.
    pub e2_dims: Vec<(i64, usize)>,
}

impl fmt::Display for E1Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<String> = self.e2_dims.iter().map(|(d, k)| format!("E2_{d} = {k}")).collect();
        write!(f, "{}: {}", if self.narrow { "E1-narrow" } else { "not E1-narrow" }, dims.join(", "))
    }
}

pub fn e1_report(d1: &D1Data) -> E1Report {
    let ring = &d1.ring;
    let step = d1.n_l - 1;
    let out_rank = |d: i64| -> usize {
        let from = ring.elements_of_degree(d);
        let to = ring.elements_of_degree(d + step);
        if from.is_empty() || to.is_empty() {
            0
        } else {
            rank(&block(d1, &from, &to))
        }
    };
    let e2_dims: Vec<(i64, usize)> =
        (0..=ring.n()).map(|d| (d, ring.elements_of_degree(d).len() - out_rank(d) - out_rank(d - step))).collect();
    E1Report { narrow: e2_dims.iter().all(|&(_, k)| k == 0), e2_dims }
}

pub fn is_e1_narrow(d1: &D1Data) -> bool {
    e1_report(d1).narrow
}

/// Torsion of `(H_*, d1)` computed through the cochain family.
pub fn torsion_from_d1(d1: &D1Data) -> Result<TorsionValue, PearlError> {
    let report = e1_report(d1);
    if !report.narrow {
        return Err(PearlError::NotE1Narrow(report));
    }
    Ok(torsion_cochain_family(&build_d1_family(d1))?)
}

/// Right inverse of `d1` on its image given by left multiplication with an
/// element `sigma` satisfying `d1(sigma) = L`.
#[derive(Clone, Debug)]
pub struct SigmaSplitting {
    ring: GradedRingPresentation,
    vars: VarTable,
    sigma: Vector,
}

impl SigmaSplitting {
    pub fn sigma(&self) -> &[RatFunc] {
        &self.sigma
    }

    /// `sigma · v`.
    pub fn apply(&self, v: &[RatFunc]) -> Vector {
        self.ring.mul_vectors(&self.sigma, v, &self.vars)
    }
}

/// Check `d1(sigma) = L` and that `d1(sigma·v) = v` on a basis of the image.
pub fn sigma_splitting(d1: &D1Data, sigma: Vector) -> Result<SigmaSplitting, PearlError> {
    let ring = &d1.ring;
    if sigma.len() != ring.dim() {
        return Err(PearlError::InvalidArgument(format!("sigma must have {} coordinates", ring.dim())));
    }
    let unit = ring.basis_vector(ring.unit(), &d1.vars);
    if !vec_eq(&d1.apply(&sigma), &unit) {
        return Err(PearlError::Splitting(format!(
            "d1(sigma) = {} is not the unit",
            show_vector(ring, &d1.apply(&sigma))
        )));
    }
    let s = SigmaSplitting { ring: ring.clone(), vars: d1.vars.clone(), sigma };
    for v in image_with_section(&d1.full_matrix).image_basis {
        if !vec_eq(&d1.apply(&s.apply(&v)), &v) {
            return Err(PearlError::Splitting(format!("d1(sigma·v) != v for v = {}", show_vector(ring, &v))));
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::super::ring::{circle, torus};
    use super::*;

    fn values(
        ring: &GradedRingPresentation,
        vars: &VarTable,
        spec: &[(&str, &[(&str, &str)])],
    ) -> BTreeMap<String, Vector> {
        spec.iter()
            .map(|(g, comps)| {
                let mut v = vec![RatFunc::zero(vars); ring.dim()];
                for (name, expr) in comps.iter() {
                    v[ring.index_of(name).unwrap()] = RatFunc::parse(expr, vars).unwrap();
                }
                (g.to_string(), v)
            })
            .collect()
    }

    #[test]
    fn torus_two_leibniz_step() {
        let ring = torus(2).unwrap();
        let vars = VarTable::new(["r1", "r2"]).unwrap();
        let vals = values(&ring, &vars, &[("x1", &[("L", "r1")]), ("x2", &[("L", "r2")])]);
        let d1 = extend_d1_leibniz(&ring, &vars, vals, 2).unwrap();
        let x12 = ring.index_of("x1x2").unwrap();
        let col = d1.full_matrix().column(x12);
        assert_eq!(col[ring.index_of("x2").unwrap()], RatFunc::parse("r1", &vars).unwrap());
        assert_eq!(col[ring.index_of("x1").unwrap()], RatFunc::parse("-r2", &vars).unwrap());
        assert!(is_e1_narrow(&d1));
        assert!(torsion_from_d1(&d1).unwrap().matches(&RatFunc::one(&vars)));
    }

    #[test]
    fn zero_values_give_zero_matrix() {
        let ring = torus(3).unwrap();
        let vars = VarTable::empty();
        let vals = ring
            .generators()
            .iter()
            .map(|&g| (ring.name(g).to_string(), vec![RatFunc::zero(&vars); ring.dim()]))
            .collect();
        let d1 = extend_d1_leibniz(&ring, &vars, vals, 2).unwrap();
        assert!(d1.full_matrix().is_zero());
        let report = e1_report(&d1);
        assert!(!report.narrow);
        assert_eq!(report.e2_dims, vec![(0, 1), (1, 3), (2, 3), (3, 1)]);
        assert!(matches!(torsion_from_d1(&d1), Err(PearlError::NotE1Narrow(_))));
    }

    #[test]
    fn circle_family_and_splitting() {
        let ring = circle();
        let vars = VarTable::new(["r"]).unwrap();
        let d1 = extend_d1_leibniz(&ring, &vars, values(&ring, &vars, &[("p", &[("L", "r")])]), 2).unwrap();
        let fam = build_d1_family(&d1);
        assert_eq!(fam.members().len(), 1);
        assert_eq!(fam.members()[0].spaces().len(), 2);
        let t = torsion_from_d1(&d1).unwrap();
        assert!(t.value().structurally_eq(&RatFunc::parse("1/r", &vars).unwrap()));

        let sigma = vec![RatFunc::parse("1/r", &vars).unwrap(), RatFunc::zero(&vars)];
        let s = sigma_splitting(&d1, sigma).unwrap();
        let v = vec![RatFunc::zero(&vars), RatFunc::parse("r", &vars).unwrap()];
        assert_eq!(d1.apply(&s.apply(&v)), v);
        assert!(s.apply(&s.apply(&v)).iter().all(RatFunc::is_zero));
        assert!(sigma_splitting(&d1, vec![RatFunc::one(&vars), RatFunc::zero(&vars)]).is_err());
    }

    #[test]
    fn bad_generator_values_rejected() {
        let ring = circle();
        let vars = VarTable::new(["r"]).unwrap();
        assert!(matches!(
            extend_d1_leibniz(&ring, &vars, values(&ring, &vars, &[("p", &[("p", "r")])]), 2),
            Err(PearlError::DegreeMismatch { .. })
        ));
        assert!(matches!(
            extend_d1_leibniz(&ring, &vars, BTreeMap::new(), 2),
            Err(PearlError::MissingGeneratorValue(_))
        ));
        assert!(matches!(
            extend_d1_leibniz(&ring, &vars, values(&ring, &vars, &[("p", &[("L", "r")])]), 3),
            Err(PearlError::InvalidArgument(_))
        ));
    }

    #[test]
    fn family_shape_for_larger_minimal_maslov() {
        // S^3 with N_L = 4: d1(p) = rL raises degree by 3.
        let ring = super::super::ring::sphere(3).unwrap();
        let vars = VarTable::new(["r"]).unwrap();
        let d1 = extend_d1_leibniz(&ring, &vars, values(&ring, &vars, &[("p", &[("L", "r")])]), 4).unwrap();
        let fam = build_d1_family(&d1);
        let shapes: Vec<Vec<i64>> =
            fam.members().iter().map(|m| m.spaces().iter().map(|s| s.degree).collect()).collect();
        assert_eq!(shapes, vec![vec![0, 3], vec![1], vec![2]]);
        assert!(torsion_from_d1(&d1).unwrap().matches(&RatFunc::parse("1/r", &vars).unwrap()));
    }
}
