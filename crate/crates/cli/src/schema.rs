//! JSON input files.
//!
//! ```json
//! {
//!   "field": { "vars": ["z1", "z2"] },
//!   "complex": {
//!     "kind": "group",
//!     "bases": [["y1"], ["x1"]],
//!     "degrees": [[0], [1]],
//!     "differentials": [[["0"]], [["A - B"]]],
//!     "maslov": [2, 2]
//!   },
//!   "group": { "generators": ["A", "B"] },
//!   "representation": { "A": "z1", "B": "z2" }
//! }
//! ```
//!
//! `complex.kind` is `bounded` (bases per degree, differentials `d_1..d_n`),
//! `periodic` or `group` (bases `[C_[0], C_[1]]`, differentials `[d, delta]`).
//! Matrices are row-major lists of expression strings. A ring with a `d1`
//! section replaces `complex`:
//!
//! ```json
//! {
//!   "field": { "vars": ["r"] },
//!   "ring": {
//!     "n": 1, "basis": ["p", "L"], "degrees": [0, 1], "unit": "L",
//!     "products": [], "factorizations": {}
//!   },
//!   "d1": { "NL": 2, "generators": { "p": { "L": "r" } } }
//! }
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use qtorsion::group_rep::GroupRingElem;
use qtorsion::pearl::{extend_d1_leibniz, Factorization, ProductRule};
use qtorsion::{
    BoundedComplex, D1Data, GRComplex, GradedRingPresentation, LabeledBasis, Matrix, PeriodicComplex, RatFunc,
    Representation, VarTable,
};

use crate::error::CliError;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputFile {
    #[serde(default)]
    pub field: FieldSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex: Option<ComplexSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representation: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d1: Option<D1Section>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSection {
    #[serde(default)]
    pub vars: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComplexKind {
    Bounded,
    Periodic,
    Group,
}

type Grid = Vec<Vec<String>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSection {
    pub kind: ComplexKind,
    pub bases: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<Vec<i64>>>,
    pub differentials: Vec<Grid>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub maslov: Option<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSection {
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductEntry {
    pub left: String,
    pub right: String,
    /// Basis element name to integer coefficient; empty means zero.
    pub result: BTreeMap<String, i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorEntry {
    pub left: String,
    pub right: String,
    #[serde(default = "one")]
    pub coeff: i64,
}

fn one() -> i64 {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSection {
    pub n: i64,
    pub basis: Vec<String>,
    pub degrees: Vec<i64>,
    pub unit: String,
    #[serde(default)]
    pub products: Vec<ProductEntry>,
    /// Non-generator, non-unit elements and how they factor.
    #[serde(default)]
    pub factorizations: BTreeMap<String, FactorEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct D1Section {
    #[serde(rename = "NL")]
    pub n_l: i64,
    /// Generator name to its image as a sparse vector.
    pub generators: BTreeMap<String, BTreeMap<String, String>>,
}

/// Parsed content of an input file.
pub enum Loaded {
    Bounded(BoundedComplex),
    Periodic(PeriodicComplex),
    Group { complex: GRComplex, representation: Option<Representation> },
    D1(D1Data),
}

pub fn read_input(text: &str) -> Result<InputFile, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Syntax(format!("line {}, column {}: {e}", e.line(), e.column())))
}

fn syntax<E: std::fmt::Display>(field: String) -> impl FnOnce(E) -> CliError {
    move |e| CliError::Syntax(format!("{field}: {e}"))
}

fn invalid<E: std::fmt::Display>(field: &str) -> impl FnOnce(E) -> CliError + '_ {
    move |e| CliError::Validation(format!("{field}: {e}"))
}

fn basis(labels: &[String], field: &str) -> Result<LabeledBasis, CliError> {
    LabeledBasis::new(labels.iter().cloned()).map_err(invalid(field))
}

fn ratfunc_grid(grid: &Grid, vars: &VarTable, field: &str) -> Result<Vec<Vec<RatFunc>>, CliError> {
    grid.iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, s)| RatFunc::parse(s, vars).map_err(syntax(format!("{field}[{i}][{j}]"))))
                .collect()
        })
        .collect()
}

fn matrix(
    grid: &Grid,
    vars: &VarTable,
    rows: &LabeledBasis,
    cols: &LabeledBasis,
    field: &str,
) -> Result<Matrix, CliError> {
    let data = ratfunc_grid(grid, vars, field)?;
    // An empty row list stands for a matrix with no rows.
    if data.is_empty() && rows.is_empty() {
        return Ok(Matrix::zeros(vars, rows.clone(), cols.clone()));
    }
    Matrix::from_rows(vars, rows.clone(), cols.clone(), data).map_err(invalid(field))
}

impl InputFile {
    pub fn vars(&self) -> Result<VarTable, CliError> {
        VarTable::new(self.field.vars.iter().cloned()).map_err(invalid("field.vars"))
    }

    pub fn load(&self) -> Result<Loaded, CliError> {
        let vars = self.vars()?;
        match (&self.complex, &self.ring) {
            (Some(c), None) => self.load_complex(c, &vars),
            (None, Some(r)) => {
                let d1 = self.d1.as_ref().ok_or_else(|| CliError::Validation("d1: section missing".into()))?;
                Ok(Loaded::D1(load_d1(r, d1, &vars)?))
            }
            (Some(_), Some(_)) => Err(CliError::Validation("give either `complex` or `ring`, not both".into())),
            (None, None) => Err(CliError::Validation("missing `complex` or `ring` section".into())),
        }
    }

    fn load_complex(&self, c: &ComplexSection, vars: &VarTable) -> Result<Loaded, CliError> {
        let bases = c
            .bases
            .iter()
            .enumerate()
            .map(|(i, b)| basis(b, &format!("complex.bases[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        match c.kind {
            ComplexKind::Bounded => {
                if bases.is_empty() || c.differentials.len() + 1 != bases.len() {
                    return Err(CliError::Validation(format!(
                        "complex.differentials: {} bases need {} differentials",
                        bases.len(),
                        bases.len().saturating_sub(1)
                    )));
                }
                let diffs = c
                    .differentials
                    .iter()
                    .enumerate()
                    .map(|(k, g)| matrix(g, vars, &bases[k], &bases[k + 1], &format!("complex.differentials[{k}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                let cx = BoundedComplex::new(vars, bases, diffs).map_err(invalid("complex"))?;
                cx.validate().map_err(invalid("complex"))?;
                Ok(Loaded::Bounded(cx))
            }
            ComplexKind::Periodic => {
                let (c0, c1) = two(&bases)?;
                let (d, delta) = two_grids(&c.differentials)?;
                let d = matrix(d, vars, c0, c1, "complex.differentials[0]")?;
                let delta = matrix(delta, vars, c1, c0, "complex.differentials[1]")?;
                let mut p = PeriodicComplex::new(vars, c0.clone(), c1.clone(), d, delta).map_err(invalid("complex"))?;
                if let Some(tags) = &c.degrees {
                    let (t0, t1) = two(tags)?;
                    p = p.with_degree_tags(t0.clone(), t1.clone()).map_err(invalid("complex.degrees"))?;
                }
                p.validate().map_err(invalid("complex"))?;
                Ok(Loaded::Periodic(p))
            }
            ComplexKind::Group => {
                let group = self.group.as_ref().ok_or_else(|| CliError::Validation("group: section missing".into()))?;
                let gens = VarTable::new(group.generators.iter().cloned()).map_err(invalid("group.generators"))?;
                let (c0, c1) = two(&bases)?;
                let tags = c.degrees.clone().unwrap_or_else(|| vec![vec![0; c0.len()], vec![1; c1.len()]]);
                let (t0, t1) = two(&tags)?;
                let (d, delta) = two_grids(&c.differentials)?;
                let gr_grid = |g: &Grid, field: &str| -> Result<Vec<Vec<GroupRingElem>>, CliError> {
                    g.iter()
                        .enumerate()
                        .map(|(i, row)| {
                            row.iter()
                                .enumerate()
                                .map(|(j, s)| {
                                    GroupRingElem::parse(s, &gens).map_err(syntax(format!("{field}[{i}][{j}]")))
                                })
                                .collect()
                        })
                        .collect()
                };
                let d = gr_grid(d, "complex.differentials[0]")?;
                let delta = gr_grid(delta, "complex.differentials[1]")?;
                let mut cx = GRComplex::new(&gens, (c0.clone(), t0.clone()), (c1.clone(), t1.clone()), d, delta)
                    .map_err(invalid("complex"))?;
                if let Some(m) = &c.maslov {
                    cx = cx.with_maslov(m.clone()).map_err(invalid("complex.maslov"))?;
                }
                cx.validate().map_err(invalid("complex"))?;
                let representation = self.representation.as_ref().map(|r| parse_rep(r, vars)).transpose()?;
                Ok(Loaded::Group { complex: cx, representation })
            }
        }
    }

    pub fn from_bounded(c: &BoundedComplex) -> Self {
        let bases = c.bases().iter().map(|b| b.labels().to_vec()).collect();
        let differentials = (1..=c.top_degree()).map(|i| grid_of(c.d(i).expect("degree in range"))).collect();
        InputFile {
            field: field_of(c.vars()),
            complex: Some(ComplexSection {
                kind: ComplexKind::Bounded,
                bases,
                degrees: None,
                differentials,
                maslov: None,
            }),
            ..Default::default()
        }
    }

    pub fn from_periodic(p: &PeriodicComplex) -> Self {
        InputFile {
            field: field_of(p.vars()),
            complex: Some(ComplexSection {
                kind: ComplexKind::Periodic,
                bases: vec![p.c0().labels().to_vec(), p.c1().labels().to_vec()],
                degrees: p.degree_tags().map(|(a, b)| vec![a.to_vec(), b.to_vec()]),
                differentials: vec![grid_of(p.d()), grid_of(p.delta())],
                maslov: None,
            }),
            ..Default::default()
        }
    }

    pub fn from_group(c: &GRComplex, rep: Option<&Representation>) -> Self {
        let gens = c.generators();
        let show = |g: &[Vec<GroupRingElem>]| -> Grid {
            g.iter().map(|r| r.iter().map(|e| e.display(gens)).collect()).collect()
        };
        let (c0, t0) = c.c0();
        let (c1, t1) = c.c1();
        InputFile {
            field: rep.map(|r| field_of(r.vars())).unwrap_or_default(),
            complex: Some(ComplexSection {
                kind: ComplexKind::Group,
                bases: vec![c0.labels().to_vec(), c1.labels().to_vec()],
                degrees: Some(vec![t0.to_vec(), t1.to_vec()]),
                differentials: vec![show(c.d()), show(c.delta())],
                maslov: c.maslov().map(<[i64]>::to_vec),
            }),
            group: Some(GroupSection { generators: gens.names().to_vec() }),
            representation: rep.map(|r| r.assignment().iter().map(|(k, v)| (k.clone(), v.to_string())).collect()),
            ..Default::default()
        }
    }

    pub fn from_d1(d1: &D1Data) -> Self {
        let ring = d1.ring();
        let name = |i: usize| ring.name(i).to_string();
        let products = ring
            .product_rules()
            .into_iter()
            .map(|ProductRule { left, right, result }| ProductEntry {
                left: name(left),
                right: name(right),
                result: result.into_iter().map(|(i, c)| (name(i), c)).collect(),
            })
            .collect();
        let factorizations = ring
            .factorizations()
            .iter()
            .enumerate()
            .filter_map(|(i, f)| match f {
                Factorization::Product { left, right, coeff } => {
                    Some((name(i), FactorEntry { left: name(*left), right: name(*right), coeff: *coeff }))
                }
                _ => None,
            })
            .collect();
        let generators = d1
            .generator_values()
            .iter()
            .map(|(g, v)| {
                let sparse =
                    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (name(i), x.to_string())).collect();
                (g.clone(), sparse)
            })
            .collect();
        InputFile {
            field: field_of(d1.vars()),
            ring: Some(RingSection {
                n: ring.n(),
                basis: ring.basis().labels().to_vec(),
                degrees: ring.degrees().to_vec(),
                unit: name(ring.unit()),
                products,
                factorizations,
            }),
            d1: Some(D1Section { n_l: d1.n_l(), generators }),
            ..Default::default()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

fn field_of(vars: &VarTable) -> FieldSection {
    FieldSection { vars: vars.names().to_vec() }
}

fn grid_of(m: &Matrix) -> Grid {
    (0..m.nrows()).map(|i| m.row(i).iter().map(ToString::to_string).collect()).collect()
}

fn two<T>(v: &[T]) -> Result<(&T, &T), CliError> {
    match v {
        [a, b] => Ok((a, b)),
        _ => Err(CliError::Validation(format!("expected two entries for C_[0] and C_[1], found {}", v.len()))),
    }
}

fn two_grids(v: &[Grid]) -> Result<(&Grid, &Grid), CliError> {
    match v {
        [a, b] => Ok((a, b)),
        _ => {
            Err(CliError::Validation(format!("complex.differentials: expected [d, delta], found {} matrices", v.len())))
        }
    }
}

pub fn parse_rep(pairs: &BTreeMap<String, String>, vars: &VarTable) -> Result<Representation, CliError> {
    let mut assignment = BTreeMap::new();
    for (g, expr) in pairs {
        let v = RatFunc::parse(expr, vars).map_err(syntax(format!("representation.{g}")))?;
        assignment.insert(g.clone(), v);
    }
    Representation::new(vars, assignment).map_err(invalid("representation"))
}

/// `A=z1,B=z2` into a binding map.
pub fn parse_rep_flag(s: &str) -> Result<BTreeMap<String, String>, CliError> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|pair| match pair.split_once('=') {
            Some((k, v)) if !k.trim().is_empty() => Ok((k.trim().to_string(), v.trim().to_string())),
            _ => Err(CliError::Syntax(format!("--rep: expected name=expr, found `{pair}`"))),
        })
        .collect()
}

fn load_d1(r: &RingSection, d: &D1Section, vars: &VarTable) -> Result<D1Data, CliError> {
    let b = basis(&r.basis, "ring.basis")?;
    let idx = |name: &str, field: &str| {
        b.index_of(name).ok_or_else(|| CliError::Validation(format!("{field}: unknown basis element `{name}`")))
    };
    let unit = idx(&r.unit, "ring.unit")?;
    let products = r
        .products
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let field = format!("ring.products[{k}]");
            Ok(ProductRule {
                left: idx(&p.left, &field)?,
                right: idx(&p.right, &field)?,
                result: p.result.iter().map(|(n, c)| Ok((idx(n, &field)?, *c))).collect::<Result<_, CliError>>()?,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let mut factorizations = vec![Factorization::Generator; b.len()];
    factorizations[unit] = Factorization::Unit;
    for (name, f) in &r.factorizations {
        let field = format!("ring.factorizations.{name}");
        let i = idx(name, &field)?;
        factorizations[i] =
            Factorization::Product { left: idx(&f.left, &field)?, right: idx(&f.right, &field)?, coeff: f.coeff };
    }
    let ring = GradedRingPresentation::new(r.n, b.clone(), r.degrees.clone(), unit, products, factorizations)
        .map_err(invalid("ring"))?;
    let mut values = BTreeMap::new();
    for (g, sparse) in &d.generators {
        let mut v = vec![RatFunc::zero(vars); b.len()];
        for (name, expr) in sparse {
            let field = format!("d1.generators.{g}.{name}");
            let i = idx(name, &field)?;
            v[i] = RatFunc::parse(expr, vars).map_err(syntax(field))?;
        }
        values.insert(g.clone(), v);
    }
    extend_d1_leibniz(&ring, vars, values, d.n_l).map_err(invalid("d1"))
}
