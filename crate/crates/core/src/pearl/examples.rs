use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::d1::{extend_d1_leibniz, D1Data};
use super::ring::{circle, sphere, sphere_named, tensor, torus, Factorization, GradedRingPresentation, ProductRule};
use super::PearlError;
use crate::complex::{ComplexError, PeriodicComplex};
use crate::exact_field::{RatFunc, VarTable};
use crate::group_rep::{GRComplex, GroupRingElem, Representation};
use crate::linalg::{LabeledBasis, Matrix, Vector};

fn circle_grid(n: usize, k: usize, disc: &GroupRingElem) -> (Vec<Vec<GroupRingElem>>, Vec<Vec<GroupRingElem>>) {
    // d[i][j]: coefficient of y_{i+1} in d(x_{j+1}) = y_j - y_{j+1}, indices mod n.
    let mut d = vec![vec![GroupRingElem::zero(); n]; n];
    for j in 0..n {
        let prev = (j + n - 1) % n;
        d[prev][j] = d[prev][j].add(&GroupRingElem::from_int(k, 1));
        d[j][j] = d[j][j].sub(&GroupRingElem::from_int(k, 1));
    }
    let delta = vec![vec![disc.clone(); n]; n];
    (d, delta)
}

fn circle_bases(n: usize) -> ((LabeledBasis, Vec<i64>), (LabeledBasis, Vec<i64>)) {
    let ys = LabeledBasis::new((1..=n).map(|i| format!("y{i}"))).expect("distinct");
    let xs = LabeledBasis::new((1..=n).map(|i| format!("x{i}"))).expect("distinct");
    ((ys, vec![0; n]), (xs, vec![1; n]))
}

/// Pearl complex of the Morse function with `n` maxima `x_i` and `n` minima
/// `y_i` on a monotone circle: `d(x_i) = y_{i-1} - y_i`,
/// `d(y_i) = (A - B) Σ x_j`.
pub fn circle_pearl(n: usize) -> Result<GRComplex, PearlError> {
    if n == 0 {
        return Err(PearlError::InvalidArgument("circle_pearl needs n >= 1".into()));
    }
    let g = VarTable::new(["A", "B"]).expect("valid names");
    let disc = GroupRingElem::generator(2, 0).sub(&GroupRingElem::generator(2, 1));
    let (d, delta) = circle_grid(n, 2, &disc);
    let (c0, c1) = circle_bases(n);
    Ok(GRComplex::new(&g, c0, c1, d, delta)?.with_maslov(vec![2, 2])?)
}

/// The same circle with only the disc class `A`: `d(y_i) = A Σ x_j`.
pub fn contractible_circle_pearl(n: usize) -> Result<GRComplex, PearlError> {
    if n == 0 {
        return Err(PearlError::InvalidArgument("circle_pearl needs n >= 1".into()));
    }
    let g = VarTable::new(["A"]).expect("valid names");
    let (d, delta) = circle_grid(n, 1, &GroupRingElem::generator(1, 0));
    let (c0, c1) = circle_bases(n);
    Ok(GRComplex::new(&g, c0, c1, d, delta)?.with_maslov(vec![2])?)
}

fn unit_multiple(ring: &GradedRingPresentation, c: &RatFunc) -> Vector {
    let mut v = vec![RatFunc::zero(c.vars()); ring.dim()];
    v[ring.unit()] = c.clone();
    v
}

fn zero_values(ring: &GradedRingPresentation, vars: &VarTable) -> BTreeMap<String, Vector> {
    ring.generators().into_iter().map(|g| (ring.name(g).to_string(), vec![RatFunc::zero(vars); ring.dim()])).collect()
}

/// `d1(p) = r L` on the circle.
pub fn circle_d1(r: &RatFunc) -> Result<D1Data, PearlError> {
    torus_d1_with(std::slice::from_ref(r))
}

/// Torus `T^m` with symbolic values `d1(x_i) = r_i L`.
pub fn torus_d1(m: usize) -> Result<D1Data, PearlError> {
    if m == 0 {
        return Err(PearlError::InvalidArgument("torus dimension must be positive".into()));
    }
    let vars = VarTable::new((1..=m).map(|i| format!("r{i}")))?;
    let values: Vec<RatFunc> = (0..m).map(|i| RatFunc::var(&vars, i)).collect();
    torus_d1_with(&values)
}

/// Torus with `d1(x_i) = values[i] L`.
pub fn torus_d1_with(values: &[RatFunc]) -> Result<D1Data, PearlError> {
    let Some(first) = values.first() else {
        return Err(PearlError::InvalidArgument("torus dimension must be positive".into()));
    };
    let vars = first.vars().clone();
    let ring = if values.len() == 1 { circle() } else { torus(values.len())? };
    let gens = ring.generators();
    let gen_values =
        gens.iter().zip(values).map(|(&g, r)| (ring.name(g).to_string(), unit_multiple(&ring, r))).collect();
    extend_d1_leibniz(&ring, &vars, gen_values, 2)
}

/// `H_*(S^1 × Σ_g)` presented explicitly: generators `a_i, b_i, z` of
/// degree 2, `a_i b_i = a1b1` for every `i`, `a_i b_j = 0` for `i != j`.
pub fn sigma_g_ring(g: usize) -> Result<GradedRingPresentation, PearlError> {
    if g == 0 {
        return Err(PearlError::InvalidArgument("genus must be positive".into()));
    }
    let a = |i: usize| 1 + 2 * i;
    let b = |i: usize| 2 + 2 * i;
    let z = 2 * g + 1;
    let p = 2 * g + 2;
    let az = |i: usize| 2 * g + 3 + 2 * i;
    let bz = |i: usize| 2 * g + 4 + 2 * i;
    let pz = 4 * g + 3;

    let mut names = vec!["L".to_string()];
    let mut degrees = vec![3];
    for i in 1..=g {
        names.extend([format!("a{i}"), format!("b{i}")]);
        degrees.extend([2, 2]);
    }
    names.extend(["z".to_string(), "a1b1".to_string()]);
    degrees.extend([2, 1]);
    for i in 1..=g {
        names.extend([format!("a{i}z"), format!("b{i}z")]);
        degrees.extend([1, 1]);
    }
    names.push("a1b1z".into());
    degrees.push(0);

    let rule = |left, right, result| ProductRule { left, right, result };
    let mut products = vec![rule(p, z, vec![(pz, 1)])];
    for i in 0..g {
        products.push(rule(a(i), b(i), vec![(p, 1)]));
        products.push(rule(a(i), z, vec![(az(i), 1)]));
        products.push(rule(b(i), z, vec![(bz(i), 1)]));
        products.push(rule(a(i), bz(i), vec![(pz, 1)]));
        products.push(rule(b(i), az(i), vec![(pz, -1)]));
    }

    let mut factorizations = vec![Factorization::Generator; names.len()];
    factorizations[0] = Factorization::Unit;
    factorizations[p] = Factorization::Product { left: a(0), right: b(0), coeff: 1 };
    for i in 0..g {
        factorizations[az(i)] = Factorization::Product { left: a(i), right: z, coeff: 1 };
        factorizations[bz(i)] = Factorization::Product { left: b(i), right: z, coeff: 1 };
    }
    factorizations[pz] = Factorization::Product { left: p, right: z, coeff: 1 };
    GradedRingPresentation::new(3, LabeledBasis::new(names)?, degrees, 0, products, factorizations)
}

/// `S^1 × Σ_g` with `d1(z) = cL` and `d1(a_i) = d1(b_i) = 0`, over `Q(c)`.
pub fn sigma_g_d1(g: usize) -> Result<D1Data, PearlError> {
    let vars = VarTable::new(["c"])?;
    sigma_g_d1_with(g, &RatFunc::var(&vars, 0))
}

pub fn sigma_g_d1_with(g: usize, c: &RatFunc) -> Result<D1Data, PearlError> {
    let ring = sigma_g_ring(g)?;
    let mut values = zero_values(&ring, c.vars());
    values.insert("z".into(), unit_multiple(&ring, c));
    extend_d1_leibniz(&ring, c.vars(), values, 2)
}

/// `S^{2k+1} × V` with `N_L = 2k + 2`, `d1(s) = r L` for the point class
/// `s` of the sphere factor, and `d1 = 0` on the other generators.
pub fn product_star(v: &GradedRingPresentation, k: usize, r: &RatFunc) -> Result<D1Data, PearlError> {
    let s = sphere_named(2 * k as i64 + 1, "s", "L")?;
    let ring = tensor(&s, v)?;
    let mut values = zero_values(&ring, r.vars());
    values.insert("s".into(), unit_multiple(&ring, r));
    extend_d1_leibniz(&ring, r.vars(), values, 2 * k as i64 + 2)
}

/// `σ = s / r`, the element whose left multiplication splits `d1` in the
/// [`product_star`] model.
pub fn product_star_sigma(d1: &D1Data, r: &RatFunc) -> Result<Vector, PearlError> {
    let ring = d1.ring();
    let s = ring.index_of("s").ok_or_else(|| PearlError::InvalidArgument("not a product_star model".into()))?;
    let mut v = vec![RatFunc::zero(d1.vars()); ring.dim()];
    v[s] = r.inv()?;
    Ok(v)
}

/// `S^1 × S^2` when it is E1-narrow: `d1(b) = r L`.
pub fn s1xs2_possibility1(r: &RatFunc) -> Result<D1Data, PearlError> {
    product_star(&sphere(2)?, 0, r)
}

/// `S^1 × S^2` with `d(a) = β b`, `d(ab) = β r_bb L` and `d(b) = 0`, as a
/// folded periodic complex on `ab (0), a (1), b (2), L (3)`.
pub fn s1xs2_possibility2(beta: &RatFunc, r_bb: &RatFunc) -> Result<PeriodicComplex, PearlError> {
    let vars = beta.vars().clone();
    let zero = RatFunc::zero(&vars);
    let c0 = LabeledBasis::new(["ab", "b"])?;
    let c1 = LabeledBasis::new(["a", "L"])?;
    let d = Matrix::from_rows(
        &vars,
        c0.clone(),
        c1.clone(),
        vec![vec![zero.clone(), zero.clone()], vec![beta.clone(), zero.clone()]],
    )?;
    let delta = Matrix::from_rows(
        &vars,
        c1.clone(),
        c0.clone(),
        vec![vec![zero.clone(), zero.clone()], vec![beta * r_bb, zero.clone()]],
    )?;
    let p = PeriodicComplex::new(&vars, c0, c1, d, delta)?.with_degree_tags(vec![0, 2], vec![1, 3])?;
    if !p.is_acyclic() {
        let degree = if beta.is_zero() { 1 } else { 0 };
        return Err(ComplexError::NotAcyclic { degree }.into());
    }
    Ok(p)
}

/// One two-point disc count `GW^A_{0,2}(input, output)` in class `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GwRow {
    pub class: String,
    pub maslov: i64,
    pub input: String,
    pub output: String,
    pub count: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GwTable {
    n_l: i64,
    rows: Vec<GwRow>,
}

impl GwTable {
    pub fn new(n_l: i64, rows: Vec<GwRow>) -> Result<Self, PearlError> {
        if let Some(r) = rows.iter().find(|r| r.maslov != n_l) {
            return Err(PearlError::InvalidArgument(format!(
                "class {} has Maslov index {}, expected {n_l}",
                r.class, r.maslov
            )));
        }
        Ok(GwTable { n_l, rows })
    }

    pub fn n_l(&self) -> i64 {
        self.n_l
    }

    pub fn rows(&self) -> &[GwRow] {
        &self.rows
    }
}

/// `r_φ = Σ count · φ(class)`; classes are monomials in the generator names
/// of the representation.
pub fn r_phi_from_gw(table: &GwTable, rep: &Representation) -> Result<RatFunc, PearlError> {
    let names: Vec<&String> = rep.assignment().keys().collect();
    let gens = VarTable::new(names.iter().map(|s| s.as_str()))?;
    let images: Vec<RatFunc> = names.iter().map(|n| rep.assignment()[*n].clone()).collect();
    let mut acc = RatFunc::zero(rep.vars());
    for row in &table.rows {
        for ident in row.class.split(|c: char| !(c.is_ascii_alphanumeric() || c == '_')) {
            if ident.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_') && gens.index_of(ident).is_none() {
                return Err(PearlError::Unassigned(ident.to_string()));
            }
        }
        let class = GroupRingElem::parse(&row.class, &gens)?;
        let weighted = class.mul(&GroupRingElem::term(vec![0; gens.len()], BigInt::from(row.count)));
        acc = &acc + &weighted.evaluate(&images, rep.vars())?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pearl::d1::torsion_from_d1;

    #[test]
    fn circle_pearl_formulas() {
        let c = circle_pearl(1).unwrap();
        assert!(c.d()[0][0].is_zero());
        assert_eq!(c.delta()[0][0].display(c.generators()), "A - B");
        let c = circle_pearl(3).unwrap();
        // d(x2) = y1 - y2
        let col: Vec<String> = (0..3).map(|i| c.d()[i][1].display(c.generators())).collect();
        assert_eq!(col, ["1", "-1", "0"]);
        for n in 1..=6 {
            assert!(circle_pearl(n).unwrap().validate().is_ok());
        }
        assert!(circle_pearl(0).is_err());
    }

    #[test]
    fn sigma_g_table() {
        let d1 = sigma_g_d1(2).unwrap();
        let ring = d1.ring();
        let vars = d1.vars();
        let m = d1.full_matrix();
        let c = RatFunc::var(vars, 0);
        let col = |name: &str| m.column(ring.index_of(name).unwrap());
        let at = |v: &Vector, name: &str| v[ring.index_of(name).unwrap()].clone();
        assert_eq!(at(&col("z"), "L"), c);
        assert!(col("a1").iter().all(RatFunc::is_zero));
        assert!(col("a1b1").iter().all(RatFunc::is_zero));
        assert_eq!(at(&col("a2z"), "a2"), -&c);
        assert_eq!(at(&col("b1z"), "b1"), -&c);
        assert_eq!(at(&col("a1b1z"), "a1b1"), c);
        assert!(torsion_from_d1(&d1).unwrap().matches(&(&c * &c)));
    }

    #[test]
    fn star_point_is_the_circle() {
        let vars = VarTable::new(["r"]).unwrap();
        let r = RatFunc::var(&vars, 0);
        let d1 = product_star(&super::super::ring::point(), 0, &r).unwrap();
        assert_eq!(d1.ring().basis().labels(), ["s", "L"]);
        assert!(torsion_from_d1(&d1).unwrap().value().structurally_eq(&r.inv().unwrap()));
    }

    #[test]
    fn possibility_two() {
        let vars = VarTable::new(["beta", "rbb", "lambda"]).unwrap();
        let beta = RatFunc::var(&vars, 0);
        let rbb = RatFunc::var(&vars, 1);
        let p = s1xs2_possibility2(&beta, &rbb).unwrap();
        assert!(p.validate().is_ok());
        let t = crate::complex::torsion_periodic(&p).unwrap();
        assert!(t.matches(&rbb.inv().unwrap()));
        let scaled = &beta * &RatFunc::var(&vars, 2);
        let t2 = crate::complex::torsion_periodic(&s1xs2_possibility2(&scaled, &rbb).unwrap()).unwrap();
        assert_eq!(t.value(), t2.value());
        assert!(s1xs2_possibility2(&RatFunc::zero(&vars), &rbb).is_err());
        assert!(s1xs2_possibility2(&beta, &RatFunc::zero(&vars)).is_err());
    }

    #[test]
    fn gw_weighted_sums() {
        let vars = VarTable::new(["z1", "z2"]).unwrap();
        let rep = Representation::parse(&vars, &[("A", "z1"), ("B", "z2")]).unwrap();
        let row = |class: &str, count| GwRow {
            class: class.into(),
            maslov: 2,
            input: "s".into(),
            output: "pt".into(),
            count,
        };
        let table = GwTable::new(2, vec![row("A", 1), row("B", -1)]).unwrap();
        assert_eq!(r_phi_from_gw(&table, &rep).unwrap(), RatFunc::parse("z1 - z2", &vars).unwrap());
        assert!(r_phi_from_gw(&GwTable::new(2, vec![]).unwrap(), &rep).unwrap().is_zero());
        let bad = GwTable::new(2, vec![row("C", 1)]).unwrap();
        assert_eq!(r_phi_from_gw(&bad, &rep).unwrap_err(), PearlError::Unassigned("C".into()));
        assert!(GwTable::new(4, vec![row("A", 1)]).is_err());
    }
}
