//! Graded-commutative rings with a free basis, used to present Morse homology
//! with the intersection product. The product lowers degree:
//! `|x·y| = |x| + |y| - n`, and `x·y = (-1)^{cd(x) cd(y)} y·x` with the
//! codegree `cd(x) = n - |x|`.

use super::PearlError;
use crate::exact_field::{RatFunc, VarTable};
use crate::linalg::{LabeledBasis, Vector};

/// How a basis element is reached from the ring generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factorization {
    Unit,
    Generator,
    /// `basis[left] · basis[right] = coeff · x`.
    Product {
        left: usize,
        right: usize,
        coeff: i64,
    },
}

/// One structure constant row: `basis[left] · basis[right] = Σ c · basis[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductRule {
    pub left: usize,
    pub right: usize,
    pub result: Vec<(usize, i64)>,
}

#[derive(Clone, Debug)]
pub struct GradedRingPresentation {
    n: i64,
    basis: LabeledBasis,
    degrees: Vec<i64>,
    unit: usize,
    // table[i][j] = sparse basis[i] · basis[j]
    table: Vec<Vec<Vec<(usize, i64)>>>,
    factorizations: Vec<Factorization>,
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn add_into(acc: &mut Vec<(usize, i64)>, idx: usize, c: i64) {
    match acc.iter_mut().find(|(i, _)| *i == idx) {
        Some(slot) => slot.1 += c,
        None => acc.push((idx, c)),
    }
    acc.retain(|(_, c)| *c != 0);
}

fn normalized(mut v: Vec<(usize, i64)>) -> Vec<(usize, i64)> {
    let mut out = Vec::new();
    for (i, c) in v.drain(..) {
        add_into(&mut out, i, c);
    }
    out.sort();
    out
}

impl GradedRingPresentation {
    /// Products not listed are zero, except that the unit always acts as
    /// the identity. A pair listed in only one order is completed by graded
    /// commutativity; pairs listed in both orders must agree with it.
    pub fn new(
        n: i64,
        basis: LabeledBasis,
        degrees: Vec<i64>,
        unit: usize,
        products: Vec<ProductRule>,
        factorizations: Vec<Factorization>,
    ) -> Result<Self, PearlError> {
        let dim = basis.len();
        let bad = |msg: String| Err(PearlError::Ring(msg));
        if degrees.len() != dim || factorizations.len() != dim {
            return bad("degrees and factorizations must match the basis".into());
        }
        if unit >= dim || degrees[unit] != n {
            return bad(format!("the unit must be a basis element of degree {n}"));
        }
        if let Some(i) = (0..dim).find(|&i| degrees[i] < 0 || degrees[i] > n) {
            return bad(format!("`{}` has degree {} outside 0..={n}", basis.labels()[i], degrees[i]));
        }
        let mut table = vec![vec![Vec::new(); dim]; dim];
        let mut given = vec![vec![false; dim]; dim];
        for rule in products {
            if rule.left >= dim || rule.right >= dim || rule.result.iter().any(|(i, _)| *i >= dim) {
                return bad("product rule refers to an unknown element".into());
            }
            if given[rule.left][rule.right] {
                return bad(format!(
                    "product {}·{} listed twice",
                    basis.labels()[rule.left],
                    basis.labels()[rule.right]
                ));
            }
            given[rule.left][rule.right] = true;
            table[rule.left][rule.right] = normalized(rule.result);
        }
        let mut ring = GradedRingPresentation { n, basis, degrees, unit, table, factorizations };
        for x in 0..dim {
            for (a, b) in [(unit, x), (x, unit)] {
                let expected = vec![(x, 1)];
                if given[a][b] && ring.table[a][b] != expected {
                    return bad(format!("the unit does not act as the identity on `{}`", ring.name(x)));
                }
                ring.table[a][b] = expected;
                given[a][b] = true;
            }
        }
        for x in 0..dim {
            for y in 0..dim {
                if given[x][y] && !given[y][x] {
                    let s = sign(ring.codegree(x) * ring.codegree(y));
                    ring.table[y][x] = ring.table[x][y].iter().map(|&(i, c)| (i, s * c)).collect();
                    given[y][x] = true;
                }
            }
        }
        ring.check()?;
        Ok(ring)
    }

    fn check(&self) -> Result<(), PearlError> {
        let dim = self.dim();
        let err = |msg: String| Err(PearlError::Ring(msg));
        for x in 0..dim {
            for y in 0..dim {
                let target = self.degrees[x] + self.degrees[y] - self.n;
                if let Some(&(i, _)) = self.table[x][y].iter().find(|(i, _)| self.degrees[*i] != target) {
                    return err(format!(
                        "{}·{} contains `{}` of degree {}, expected {target}",
                        self.name(x),
                        self.name(y),
                        self.name(i),
                        self.degrees[i]
                    ));
                }
                let s = sign(self.codegree(x) * self.codegree(y));
                let swapped: Vec<(usize, i64)> = self.table[y][x].iter().map(|&(i, c)| (i, s * c)).collect();
                if normalized(swapped) != self.table[x][y] {
                    return err(format!("{}·{} is not graded-commutative", self.name(x), self.name(y)));
                }
            }
        }
        for x in 0..dim {
            for y in 0..dim {
                for z in 0..dim {
                    let mut lhs = Vec::new();
                    for &(i, c) in &self.table[x][y] {
                        for &(j, e) in &self.table[i][z] {
                            add_into(&mut lhs, j, c * e);
                        }
                    }
                    let mut rhs = Vec::new();
                    for &(i, c) in &self.table[y][z] {
                        for &(j, e) in &self.table[x][i] {
                            add_into(&mut rhs, j, c * e);
                        }
                    }
                    lhs.sort();
                    rhs.sort();
                    if lhs != rhs {
                        return err(format!(
                            "product is not associative on ({}, {}, {})",
                            self.name(x),
                            self.name(y),
                            self.name(z)
                        ));
                    }
                }
            }
        }
        // Factorizations must hold and bottom out in generators.
        let mut state = vec![0u8; dim];
        for x in 0..dim {
            self.check_factorization(x, &mut state)?;
        }
        Ok(())
    }

    fn check_factorization(&self, x: usize, state: &mut [u8]) -> Result<(), PearlError> {
        match state[x] {
            2 => return Ok(()),
            1 => return Err(PearlError::Ring(format!("factorization of `{}` is circular", self.name(x)))),
            _ => {}
        }
        state[x] = 1;
        match &self.factorizations[x] {
            Factorization::Unit if x != self.unit => {
                return Err(PearlError::Ring(format!("`{}` is marked as the unit but is not", self.name(x))));
            }
            Factorization::Generator if x == self.unit => {
                return Err(PearlError::Ring("the unit cannot be a generator".into()));
            }
            Factorization::Product { left, right, coeff } => {
                if *left >= self.dim() || *right >= self.dim() || *coeff == 0 {
                    return Err(PearlError::Ring(format!("bad factorization of `{}`", self.name(x))));
                }
                if self.table[*left][*right] != vec![(x, *coeff)] {
                    return Err(PearlError::Ring(format!(
                        "{}·{} is not {}·{}",
                        self.name(*left),
                        self.name(*right),
                        coeff,
                        self.name(x)
                    )));
                }
                self.check_factorization(*left, state)?;
                self.check_factorization(*right, state)?;
            }
            _ => {}
        }
        if x == self.unit && self.factorizations[x] != Factorization::Unit {
            return Err(PearlError::Ring("the unit must be marked as such".into()));
        }
        state[x] = 2;
        Ok(())
    }

    /// Dimension of the underlying manifold.
    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn basis(&self) -> &LabeledBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.basis.labels()[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.index_of(name)
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    pub fn codegree(&self, i: usize) -> i64 {
        self.n - self.degrees[i]
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn generators(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.factorizations[i] == Factorization::Generator).collect()
    }

    pub fn factorization(&self, i: usize) -> &Factorization {
        &self.factorizations[i]
    }

    pub fn factorizations(&self) -> &[Factorization] {
        &self.factorizations
    }

    /// `basis[x] · basis[y]` as sparse integer coordinates.
    pub fn product(&self, x: usize, y: usize) -> &[(usize, i64)] {
        &self.table[x][y]
    }

    /// Nonzero products other than those involving the unit.
    pub fn product_rules(&self) -> Vec<ProductRule> {
        let mut out = Vec::new();
        for x in 0..self.dim() {
            for y in 0..self.dim() {
                if x != self.unit && y != self.unit && !self.table[x][y].is_empty() {
                    out.push(ProductRule { left: x, right: y, result: self.table[x][y].clone() });
                }
            }
        }
        out
    }

    /// Basis indices of the given degree, in basis order.
    pub fn elements_of_degree(&self, d: i64) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == d).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees.iter().map(|&d| sign(d)).sum()
    }

    /// Bilinear extension of the product to coordinate vectors.
    pub fn mul_vectors(&self, u: &[RatFunc], v: &[RatFunc], vars: &VarTable) -> Vector {
        let mut out = vec![RatFunc::zero(vars); self.dim()];
        for (x, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (y, b) in v.iter().enumerate() {
                if b.is_zero() || self.table[x][y].is_empty() {
                    continue;
                }
                let ab = a * b;
                for &(i, c) in &self.table[x][y] {
                    out[i] = &out[i] + &(&ab * &RatFunc::from_int(vars, c));
                }
            }
        }
        out
    }

    /// Coordinate vector of a single basis element.
    pub fn basis_vector(&self, i: usize, vars: &VarTable) -> Vector {
        (0..self.dim()).map(|j| if j == i { RatFunc::one(vars) } else { RatFunc::zero(vars) }).collect()
    }
}

fn rule(left: usize, right: usize, result: Vec<(usize, i64)>) -> ProductRule {
    ProductRule { left, right, result }
}

/// `H_*(pt)`: just the unit.
pub fn point() -> GradedRingPresentation {
    GradedRingPresentation::new(0, LabeledBasis::new(["L"]).unwrap(), vec![0], 0, vec![], vec![Factorization::Unit])
        .expect("valid presentation")
}

/// `H_*(S^dim)` with point class `point` and unit `unit`.
pub fn sphere_named(dim: i64, point: &str, unit: &str) -> Result<GradedRingPresentation, PearlError> {
    if dim < 1 {
        return Err(PearlError::InvalidArgument("sphere dimension must be positive".into()));
    }
    GradedRingPresentation::new(
        dim,
        LabeledBasis::new([point, unit])?,
        vec![0, dim],
        1,
        vec![],
        vec![Factorization::Generator, Factorization::Unit],
    )
}

/// `H_*(S^dim)` with basis `p`, `L`.
pub fn sphere(dim: i64) -> Result<GradedRingPresentation, PearlError> {
    sphere_named(dim, "p", "L")
}

pub fn circle() -> GradedRingPresentation {
    sphere(1).expect("valid presentation")
}

/// Exterior algebra on generators of odd codegree. The basis element for a
/// set `{i1 < ... < ik}` is the product `x_{i1} · ... · x_{ik}` (the unit
/// `L` for the empty set) and is named by concatenating generator names.
pub fn exterior(n: i64, generators: &[(&str, i64)]) -> Result<GradedRingPresentation, PearlError> {
    let k = generators.len();
    if k > 12 {
        return Err(PearlError::InvalidArgument("too many exterior generators".into()));
    }
    let cds: Vec<i64> = generators.iter().map(|(_, d)| n - d).collect();
    if cds.iter().any(|c| c.rem_euclid(2) != 1) {
        return Err(PearlError::InvalidArgument("exterior generators need odd codegree".into()));
    }
    // Subsets ordered by size, then lexicographically.
    let mut subsets: Vec<Vec<usize>> =
        (0u32..(1 << k)).map(|mask| (0..k).filter(|i| mask & (1 << i) != 0).collect()).collect();
    subsets.sort_by(|a: &Vec<usize>, b: &Vec<usize>| a.len().cmp(&b.len()).then(a.cmp(b)));
    let position = |s: &[usize]| subsets.iter().position(|t| t == s).expect("subset present");
    let names: Vec<String> = subsets
        .iter()
        .map(|s| if s.is_empty() { "L".into() } else { s.iter().map(|&i| generators[i].0).collect::<String>() })
        .collect();
    let degrees: Vec<i64> = subsets.iter().map(|s| n - s.iter().map(|&i| cds[i]).sum::<i64>()).collect();
    let mut products = Vec::new();
    for (a, s) in subsets.iter().enumerate() {
        for (b, t) in subsets.iter().enumerate() {
            if s.is_empty() || t.is_empty() || s.iter().any(|i| t.contains(i)) {
                continue;
            }
            let mut seq: Vec<usize> = s.iter().chain(t).copied().collect();
            if degrees[a] + degrees[b] - n < 0 {
                continue;
            }
            // Bubble sort, one sign per transposition of odd elements.
            let mut sgn = 1;
            for i in 0..seq.len() {
                for j in 0..seq.len() - 1 - i {
                    if seq[j] > seq[j + 1] {
                        seq.swap(j, j + 1);
                        sgn = -sgn;
                    }
                }
            }
            products.push(rule(a, b, vec![(position(&seq), sgn)]));
        }
    }
    let factorizations = subsets
        .iter()
        .map(|s| match s.len() {
            0 => Factorization::Unit,
            1 => Factorization::Generator,
            _ => Factorization::Product { left: position(&s[..1]), right: position(&s[1..]), coeff: 1 },
        })
        .collect();
    GradedRingPresentation::new(n, LabeledBasis::new(names)?, degrees, 0, products, factorizations)
}

/// `H_*(T^m)`: exterior algebra on `x1..xm` of degree `m - 1`.
pub fn torus(m: usize) -> Result<GradedRingPresentation, PearlError> {
    if m == 0 {
        return Err(PearlError::InvalidArgument("torus dimension must be positive".into()));
    }
    let names: Vec<String> = (1..=m).map(|i| format!("x{i}")).collect();
    let gens: Vec<(&str, i64)> = names.iter().map(|s| (s.as_str(), m as i64 - 1)).collect();
    exterior(m as i64, &gens)
}

/// `H_*(Σ_g)`: `a_i · b_i = pt`.
pub fn surface(g: usize) -> Result<GradedRingPresentation, PearlError> {
    if g == 0 {
        return sphere_named(2, "pt", "L");
    }
    let mut names = vec!["L".to_string()];
    for i in 1..=g {
        names.push(format!("a{i}"));
        names.push(format!("b{i}"));
    }
    names.push("pt".into());
    let pt = names.len() - 1;
    let mut degrees = vec![2];
    degrees.extend(std::iter::repeat_n(1, 2 * g));
    degrees.push(0);
    let products = (0..g).map(|i| rule(1 + 2 * i, 2 + 2 * i, vec![(pt, 1)])).collect();
    let mut factorizations = vec![Factorization::Unit];
    factorizations.extend(std::iter::repeat_n(Factorization::Generator, 2 * g));
    factorizations.push(Factorization::Product { left: 1, right: 2, coeff: 1 });
    GradedRingPresentation::new(2, LabeledBasis::new(names)?, degrees, 0, products, factorizations)
}

/// Truncated polynomial ring `F[h]/(h^3)` with `|h| = 2`, `n = 4`.
pub fn cp2() -> GradedRingPresentation {
    GradedRingPresentation::new(
        4,
        LabeledBasis::new(["L", "h", "h2"]).unwrap(),
        vec![4, 2, 0],
        0,
        vec![rule(1, 1, vec![(2, 1)])],
        vec![Factorization::Unit, Factorization::Generator, Factorization::Product { left: 1, right: 1, coeff: 1 }],
    )
    .expect("valid presentation")
}

/// `A ⊗ B` with `(a⊗b)(a'⊗b') = (-1)^{cd(b) cd(a')} (aa')⊗(bb')`. Names drop
/// unit factors and otherwise join with `.`; the unit is `L`.
pub fn tensor(a: &GradedRingPresentation, b: &GradedRingPresentation) -> Result<GradedRingPresentation, PearlError> {
    let (da, db) = (a.dim(), b.dim());
    let idx = |i: usize, j: usize| i * db + j;
    let mut names = Vec::with_capacity(da * db);
    let mut degrees = Vec::with_capacity(da * db);
    for i in 0..da {
        for j in 0..db {
            names.push(match (i == a.unit, j == b.unit) {
                (true, true) => "L".to_string(),
                (true, false) => b.name(j).to_string(),
                (false, true) => a.name(i).to_string(),
                (false, false) => format!("{}.{}", a.name(i), b.name(j)),
            });
            degrees.push(a.degree(i) + b.degree(j));
        }
    }
    let mut products = Vec::new();
    for i in 0..da {
        for j in 0..db {
            for i2 in 0..da {
                for j2 in 0..db {
                    let s = sign(b.codegree(j) * a.codegree(i2));
                    let mut result = Vec::new();
                    for &(p, c) in a.product(i, i2) {
                        for &(q, e) in b.product(j, j2) {
                            result.push((idx(p, q), s * c * e));
                        }
                    }
                    if !result.is_empty() {
                        products.push(rule(idx(i, j), idx(i2, j2), result));
                    }
                }
            }
        }
    }
    let mut factorizations = Vec::with_capacity(da * db);
    for i in 0..da {
        for j in 0..db {
            factorizations.push(match (i == a.unit, j == b.unit) {
                (true, true) => Factorization::Unit,
                (false, true) => match a.factorization(i) {
                    Factorization::Product { left, right, coeff } => {
                        Factorization::Product { left: idx(*left, b.unit), right: idx(*right, b.unit), coeff: *coeff }
                    }
                    f => f.clone(),
                },
                (true, false) => match b.factorization(j) {
                    Factorization::Product { left, right, coeff } => {
                        Factorization::Product { left: idx(a.unit, *left), right: idx(a.unit, *right), coeff: *coeff }
                    }
                    f => f.clone(),
                },
                (false, false) => Factorization::Product { left: idx(i, b.unit), right: idx(a.unit, j), coeff: 1 },
            });
        }
    }
    let basis = LabeledBasis::new(names)?;
    // The unit rules are implicit; drop them so they are not listed twice.
    let unit = idx(a.unit, b.unit);
    products.retain(|r| r.left != unit && r.right != unit);
    GradedRingPresentation::new(a.n + b.n, basis, degrees, unit, products, factorizations)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_rings_are_valid() {
        assert_eq!(point().euler_characteristic(), 1);
        assert_eq!(sphere(2).unwrap().euler_characteristic(), 2);
        assert_eq!(circle().euler_characteristic(), 0);
        assert_eq!(surface(2).unwrap().euler_characteristic(), -2);
        assert_eq!(cp2().euler_characteristic(), 3);
        let t = torus(3).unwrap();
        assert_eq!(t.dim(), 8);
        assert_eq!(t.euler_characteristic(), 0);
        assert_eq!(t.elements_of_degree(2).len(), 3);
        assert_eq!(t.generators().len(), 3);
    }

    #[test]
    fn surface_products_anticommute() {
        let s = surface(2).unwrap();
        let (a1, b1, pt) = (s.index_of("a1").unwrap(), s.index_of("b1").unwrap(), s.index_of("pt").unwrap());
        assert_eq!(s.product(a1, b1), &[(pt, 1)]);
        assert_eq!(s.product(b1, a1), &[(pt, -1)]);
        assert!(s.product(a1, s.index_of("b2").unwrap()).is_empty());
    }

    #[test]
    fn torus_two_products() {
        let t = torus(2).unwrap();
        let (x1, x2, x12) = (t.index_of("x1").unwrap(), t.index_of("x2").unwrap(), t.index_of("x1x2").unwrap());
        assert_eq!(t.degree(x1), 1);
        assert_eq!(t.degree(x12), 0);
        assert_eq!(t.product(x1, x2), &[(x12, 1)]);
        assert_eq!(t.product(x2, x1), &[(x12, -1)]);
        assert!(t.product(x1, x1).is_empty());
    }

    #[test]
    fn tensor_of_circles_matches_torus_shape() {
        let t = tensor(&sphere_named(1, "s", "L").unwrap(), &circle()).unwrap();
        assert_eq!(t.basis().labels(), ["s.p", "s", "p", "L"]);
        assert_eq!(t.degrees(), [0, 1, 1, 2]);
        let (s, p, sp) = (t.index_of("s").unwrap(), t.index_of("p").unwrap(), t.index_of("s.p").unwrap());
        assert_eq!(t.product(s, p), &[(sp, 1)]);
        assert_eq!(t.product(p, s), &[(sp, -1)]);
        assert_eq!(t.factorization(sp), &Factorization::Product { left: s, right: p, coeff: 1 });
        assert!(tensor(&circle(), &circle()).is_err());
    }

    #[test]
    fn invalid_presentations_are_rejected() {
        let basis = LabeledBasis::new(["L", "a", "b"]).unwrap();
        let gens = vec![Factorization::Unit, Factorization::Generator, Factorization::Generator];
        // a·b in the wrong degree
        let r = GradedRingPresentation::new(
            2,
            basis.clone(),
            vec![2, 1, 1],
            0,
            vec![rule(1, 2, vec![(0, 1)])],
            gens.clone(),
        );
        assert!(matches!(r, Err(PearlError::Ring(_))));
        // a·b = b·a contradicts graded commutativity for odd codegrees
        let basis = LabeledBasis::new(["L", "a", "b", "p"]).unwrap();
        let mut f = gens.clone();
        f.push(Factorization::Generator);
        let r = GradedRingPresentation::new(
            2,
            basis,
            vec![2, 1, 1, 0],
            0,
            vec![rule(1, 2, vec![(3, 1)]), rule(2, 1, vec![(3, 1)])],
            f,
        );
        assert!(matches!(r, Err(PearlError::Ring(_))));
    }
}
