use super::{BoundedComplex, ComplexError, PeriodicComplex, TorsionValue};
use crate::exact_field::RatFunc;
use crate::linalg::{det_of_columns, image_with_section, inverse, LabeledBasis, Matrix, Vector};

/// Boundary basis `b_i` of `C_i` (the image of `d_{i+1}`) with sections in
/// `C_{i+1}`: `d_{i+1}(sections[j]) == basis[j]`.
#[derive(Clone, Debug)]
pub struct BoundaryData {
    pub basis: Vec<Vector>,
    pub sections: Vec<Vector>,
}

/// Default boundary data for every degree `0..=n`.
pub fn boundary_data(c: &BoundedComplex) -> Vec<BoundaryData> {
    (0..=c.top_degree())
        .map(|i| match c.d(i + 1) {
            Some(d) => {
                let im = image_with_section(d);
                BoundaryData { basis: im.image_basis, sections: im.preimages }
            }
            None => BoundaryData { basis: Vec::new(), sections: Vec::new() },
        })
        .collect()
}

/// `det[s(b_{i-1}) b_i / c_i]` for every degree, from the given data.
pub fn base_change_dets(c: &BoundedComplex, data: &[BoundaryData]) -> Result<Vec<RatFunc>, ComplexError> {
    if data.len() != c.top_degree() + 1 {
        return Err(ComplexError::Shape(format!("expected boundary data for {} degrees", c.top_degree() + 1)));
    }
    for (i, bd) in data.iter().enumerate() {
        if bd.basis.len() != bd.sections.len() {
            return Err(ComplexError::BadBoundaryData {
                degree: i,
                reason: "basis and sections differ in length".into(),
            });
        }
        if bd.basis.is_empty() {
            continue;
        }
        let d = c.d(i + 1).ok_or_else(|| ComplexError::BadBoundaryData {
            degree: i,
            reason: "top degree has no boundaries".into(),
        })?;
        for (s, b) in bd.sections.iter().zip(&bd.basis) {
            if s.len() != c.dim(i + 1) || b.len() != c.dim(i) {
                return Err(ComplexError::BadBoundaryData { degree: i, reason: "vector length".into() });
            }
            if d.apply(s).iter().zip(b).any(|(x, y)| x != y) {
                return Err(ComplexError::BadBoundaryData {
                    degree: i,
                    reason: "section does not map to its boundary".into(),
                });
            }
        }
    }
    let mut dets = Vec::with_capacity(data.len());
    for i in 0..=c.top_degree() {
        let mut cols: Vec<Vector> = if i > 0 { data[i - 1].sections.clone() } else { Vec::new() };
        cols.extend(data[i].basis.iter().cloned());
        if cols.len() != c.dim(i) {
            return Err(ComplexError::NotAcyclic { degree: i as i64 });
        }
        let det = det_of_columns(c.vars(), c.dim(i), &cols)?;
        if det.is_zero() {
            return Err(ComplexError::BadBoundaryData { degree: i, reason: "columns are dependent".into() });
        }
        dets.push(det);
    }
    Ok(dets)
}

fn alternating_product(c: &BoundedComplex, dets: &[RatFunc]) -> Result<RatFunc, ComplexError> {
    let mut num = RatFunc::one(c.vars());
    let mut den = RatFunc::one(c.vars());
    for (i, det) in dets.iter().enumerate() {
        if i % 2 == 0 {
            num = &num * det;
        } else {
            den = &den * det;
        }
    }
    Ok(num.checked_div(&den)?)
}

/// `∏ det[s(b_{i-1}) b_i / c_i]^{(-1)^i}` modulo signs.
pub fn torsion_bounded(c: &BoundedComplex) -> Result<TorsionValue, ComplexError> {
    if let Some(i) = c.first_non_acyclic_degree() {
        return Err(ComplexError::NotAcyclic { degree: i as i64 });
    }
    torsion_bounded_with(c, &boundary_data(c))
}

/// Torsion computed from caller-supplied boundary bases and sections.
pub fn torsion_bounded_with(c: &BoundedComplex, data: &[BoundaryData]) -> Result<TorsionValue, ComplexError> {
    let dets = base_change_dets(c, data)?;
    Ok(TorsionValue::mod_signs(alternating_product(c, &dets)?)?)
}

/// Torsion of a complex with homology, given cycle lifts of a homology basis
/// in every degree (`lifts[i]` lives in `C_i`; missing degrees are empty).
pub fn torsion_milnor(c: &BoundedComplex, lifts: &[Vec<Vector>]) -> Result<TorsionValue, ComplexError> {
    if let Err(v) = c.validate() {
        return Err(ComplexError::Violation(v));
    }
    if lifts.len() > c.top_degree() + 1 {
        return Err(ComplexError::Shape("more lift degrees than the complex has".into()));
    }
    let data = boundary_data(c);
    let empty = Vec::new();
    let mut dets = Vec::with_capacity(data.len());
    for i in 0..=c.top_degree() {
        let h = lifts.get(i).unwrap_or(&empty);
        let betti = c.dim(i) - c.rank_d(i) - c.rank_d(i + 1);
        if h.len() != betti {
            return Err(ComplexError::BadLift {
                degree: i,
                reason: format!("expected {betti} lifts, got {}", h.len()),
            });
        }
        for v in h {
            if v.len() != c.dim(i) {
                return Err(ComplexError::BadLift { degree: i, reason: "vector length".into() });
            }
            if let Some(d) = c.d(i) {
                if d.apply(v).iter().any(|x| !x.is_zero()) {
                    return Err(ComplexError::BadLift { degree: i, reason: "lift is not a cycle".into() });
                }
            }
        }
        let mut cols: Vec<Vector> = h.clone();
        cols.extend(data[i].basis.iter().cloned());
        if i > 0 {
            cols.extend(data[i - 1].sections.iter().cloned());
        }
        let det = det_of_columns(c.vars(), c.dim(i), &cols)?;
        if det.is_zero() {
            return Err(ComplexError::BadLift { degree: i, reason: "lifts are dependent modulo boundaries".into() });
        }
        dets.push(det);
    }
    Ok(TorsionValue::mod_signs(alternating_product(c, &dets)?)?)
}

/// `det[s(b_[1]) b_[0] / c_[0]] / det[s(b_[0]) b_[1] / c_[1]]` modulo signs.
pub fn torsion_periodic(p: &PeriodicComplex) -> Result<TorsionValue, ComplexError> {
    let im_d = image_with_section(p.d());
    let im_delta = image_with_section(p.delta());
    let r = im_d.rank() + im_delta.rank();
    if r != p.c0().len() {
        return Err(ComplexError::NotAcyclic { degree: 0 });
    }
    if r != p.c1().len() {
        return Err(ComplexError::NotAcyclic { degree: 1 });
    }
    let mut cols0 = im_delta.preimages;
    cols0.extend(im_d.image_basis);
    let mut cols1 = im_d.preimages;
    cols1.extend(im_delta.image_basis);
    let det0 = det_of_columns(p.vars(), p.c0().len(), &cols0)?;
    let det1 = det_of_columns(p.vars(), p.c1().len(), &cols1)?;
    Ok(TorsionValue::mod_signs(det0.checked_div(&det1)?)?)
}

/// Collapse to a 2-periodic complex: even degrees form `C_[0]`, odd degrees
/// `C_[1]`, and the differentials become block matrices.
pub fn fold(c: &BoundedComplex) -> PeriodicComplex {
    let vars = c.vars();
    let n = c.top_degree();
    // Offset of C_i inside its parity component.
    let mut offset = vec![0usize; n + 1];
    let mut sizes = [0usize; 2];
    let mut labels: [Vec<String>; 2] = [Vec::new(), Vec::new()];
    let mut tags: [Vec<i64>; 2] = [Vec::new(), Vec::new()];
    for i in 0..=n {
        let p = i % 2;
        offset[i] = sizes[p];
        sizes[p] += c.dim(i);
        labels[p].extend(c.basis(i).labels().iter().cloned());
        tags[p].extend(std::iter::repeat_n(i as i64, c.dim(i)));
    }
    let [l0, l1] = labels;
    let c0 = LabeledBasis::new(l0).expect("labels unique in the complex");
    let c1 = LabeledBasis::new(l1).expect("labels unique in the complex");
    let mut d = Matrix::zeros(vars, c0.clone(), c1.clone());
    let mut delta = Matrix::zeros(vars, c1.clone(), c0.clone());
    for i in 1..=n {
        let di = c.d(i).expect("degree in range");
        let target = if i % 2 == 1 { &mut d } else { &mut delta };
        for r in 0..di.nrows() {
            for s in 0..di.ncols() {
                let e = di.get(r, s);
                if !e.is_zero() {
                    target.set(offset[i - 1] + r, offset[i] + s, e.clone());
                }
            }
        }
    }
    let [t0, t1] = tags;
    PeriodicComplex::new(vars, c0, c1, d, delta)
        .and_then(|p| p.with_degree_tags(t0, t1))
        .expect("fold preserves shapes")
}

/// Change preferred bases: column `j` of `new_bases[i]` is the `j`-th new
/// basis vector of `C_i` in old coordinates, and its column label becomes the
/// new basis label. Differentials become `P_{i-1}^{-1} d_i P_i`.
pub fn change_basis(c: &BoundedComplex, new_bases: &[Matrix]) -> Result<BoundedComplex, ComplexError> {
    if new_bases.len() != c.top_degree() + 1 {
        return Err(ComplexError::Shape(format!("expected {} change matrices", c.top_degree() + 1)));
    }
    let mut inverses = Vec::with_capacity(new_bases.len());
    for (i, p) in new_bases.iter().enumerate() {
        if p.nrows() != c.dim(i) || p.ncols() != c.dim(i) {
            return Err(ComplexError::Shape(format!("change matrix in degree {i} must be {0}x{0}", c.dim(i))));
        }
        inverses.push(inverse(p).map_err(|_| ComplexError::SingularChange { degree: i })?);
    }
    let bases: Vec<LabeledBasis> = new_bases.iter().map(|p| p.cols().clone()).collect();
    let diffs = (1..=c.top_degree())
        .map(|i| {
            let d = inverses[i - 1].mul(c.d(i).expect("degree in range"))?.mul(&new_bases[i])?;
            d.with_labels(bases[i - 1].clone(), bases[i].clone())
        })
        .collect::<Result<Vec<_>, _>>()?;
    BoundedComplex::new(c.vars(), bases, diffs)
}

#[cfg(test)]
mod tests {
    use super::super::bounded_from_columns;
    use super::*;
    use crate::exact_field::VarTable;
    use crate::linalg::LabeledBasis;

    fn q(s: &str, v: &VarTable) -> RatFunc {
        RatFunc::parse(s, v).unwrap()
    }

    fn basis(names: &[&str]) -> LabeledBasis {
        LabeledBasis::new(names.iter().copied()).unwrap()
    }

    /// Two-term complex C_1 -> C_0 given by a square matrix (rows of strings).
    fn two_term(v: &VarTable, rows: &[&[&str]], c1: &[&str], c0: &[&str]) -> BoundedComplex {
        let data = rows.iter().map(|r| r.iter().map(|s| q(s, v)).collect()).collect();
        let m = Matrix::from_rows(v, basis(c0), basis(c1), data).unwrap();
        BoundedComplex::new(v, vec![basis(c0), basis(c1)], vec![m]).unwrap()
    }

    #[test]
    fn single_map_torsion_is_the_map() {
        let v = VarTable::new(["a"]).unwrap();
        let c = two_term(&v, &[&["a"]], &["x"], &["y"]);
        let t = torsion_bounded(&c).unwrap();
        assert!(t.matches(&q("a", &v)));
        assert!(!t.matches(&q("1/a", &v)));
    }

    #[test]
    fn identity_in_degrees_two_and_one() {
        let v = VarTable::empty();
        let c = bounded_from_columns(
            &v,
            vec![LabeledBasis::default(), basis(&["y"]), basis(&["x"])],
            vec![vec![vec![]], vec![vec![q("1", &v)]]],
        )
        .unwrap();
        assert!(torsion_bounded(&c).unwrap().value().is_one());
    }

    #[test]
    fn non_acyclic_points_to_milnor() {
        let v = VarTable::empty();
        let c = two_term(&v, &[&["0"]], &["x"], &["y"]);
        let err = torsion_bounded(&c).unwrap_err();
        assert_eq!(err, ComplexError::NotAcyclic { degree: 0 });
        assert!(err.to_string().contains("torsion_milnor"));
        let t = torsion_milnor(&c, &[vec![vec![q("1", &v)]], vec![vec![q("1", &v)]]]).unwrap();
        assert!(t.value().is_one());
    }

    #[test]
    fn milnor_circle_morse_complex() {
        let v = VarTable::empty();
        // d(x1) = y2 - y1, d(x2) = y1 - y2
        let c = two_term(&v, &[&["-1", "1"], &["1", "-1"]], &["x1", "x2"], &["y1", "y2"]);
        let lifts = vec![vec![vec![q("1", &v), q("0", &v)]], vec![vec![q("1", &v), q("1", &v)]]];
        let t = torsion_milnor(&c, &lifts).unwrap();
        assert!(t.matches(&q("1", &v)));
        let bad = vec![vec![vec![q("1", &v), q("0", &v)]], vec![vec![q("1", &v), q("0", &v)]]];
        assert!(matches!(torsion_milnor(&c, &bad), Err(ComplexError::BadLift { degree: 1, .. })));
        assert!(matches!(torsion_milnor(&c, &lifts[..1]), Err(ComplexError::BadLift { degree: 1, .. })));
    }

    #[test]
    fn periodic_diagonal_example() {
        let v = VarTable::new(["a", "b"]).unwrap();
        let c0 = basis(&["e1", "e2"]);
        let c1 = basis(&["f1", "f2"]);
        let d = Matrix::from_rows(
            &v,
            c0.clone(),
            c1.clone(),
            vec![vec![q("a", &v), q("0", &v)], vec![q("0", &v), q("0", &v)]],
        )
        .unwrap();
        let delta = Matrix::from_rows(
            &v,
            c1.clone(),
            c0.clone(),
            vec![vec![q("0", &v), q("0", &v)], vec![q("0", &v), q("b", &v)]],
        )
        .unwrap();
        let p = PeriodicComplex::new(&v, c0, c1, d, delta).unwrap();
        assert!(p.validate().is_ok());
        let t = torsion_periodic(&p).unwrap();
        assert!(t.value().structurally_eq(&q("-a/b", &v)));
    }

    #[test]
    fn fold_of_two_term_complex() {
        let v = VarTable::new(["t"]).unwrap();
        let c = two_term(&v, &[&["t", "1"], &["0", "t"]], &["x1", "x2"], &["y1", "y2"]);
        let p = fold(&c);
        assert!(p.delta().is_zero());
        assert_eq!(p.degree_tags().unwrap(), (&[0, 0][..], &[1, 1][..]));
        assert_eq!(p.euler_characteristic(), c.euler_characteristic());
        assert_eq!(torsion_periodic(&p).unwrap(), torsion_bounded(&c).unwrap());
    }

    #[test]
    fn scaling_a_basis_vector() {
        let v = VarTable::new(["t", "l"]).unwrap();
        let c = two_term(&v, &[&["t", "1"], &["1", "t"]], &["x1", "x2"], &["y1", "y2"]);
        let tau = torsion_bounded(&c).unwrap();
        for degree in 0..2 {
            let mut ps: Vec<Matrix> = (0..2).map(|i| Matrix::identity(&v, c.basis(i).clone())).collect();
            ps[degree].set(0, 0, q("l", &v));
            let c2 = change_basis(&c, &ps).unwrap();
            let tau2 = torsion_bounded(&c2).unwrap();
            // The new torsion is tau * l^{-(-1)^i}.
            let expected = if degree == 0 { tau.value() * &q("1/l", &v) } else { tau.value() * &q("l", &v) };
            assert!(tau2.value() == &expected, "degree {degree}: {} vs {expected}", tau2.value());
        }
        let mut ps: Vec<Matrix> = (0..2).map(|i| Matrix::identity(&v, c.basis(i).clone())).collect();
        ps[1].set(0, 0, q("0", &v));
        assert_eq!(change_basis(&c, &ps).unwrap_err(), ComplexError::SingularChange { degree: 1 });
    }

    #[test]
    fn permuting_a_basis_changes_sign_only() {
        let v = VarTable::new(["t"]).unwrap();
        let c = two_term(&v, &[&["t", "1"], &["2", "t"]], &["x1", "x2"], &["y1", "y2"]);
        let swap = Matrix::from_rows(
            &v,
            c.basis(1).clone(),
            basis(&["x2", "x1"]),
            vec![vec![q("0", &v), q("1", &v)], vec![q("1", &v), q("0", &v)]],
        )
        .unwrap();
        let c2 = change_basis(&c, &[Matrix::identity(&v, c.basis(0).clone()), swap]).unwrap();
        assert_eq!(c2.basis(1).labels(), ["x2", "x1"]);
        assert_eq!(torsion_bounded(&c2).unwrap(), torsion_bounded(&c).unwrap());
    }
}
