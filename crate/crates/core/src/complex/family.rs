use super::{first_nonzero_entry, ComplexError, TorsionValue, Violation};
use crate::exact_field::{FieldError, RatFunc, VarTable};
use crate::linalg::{det_of_columns, image_with_section, LabeledBasis, Matrix, Vector};

/// A space of a cochain family tagged with its ambient degree.
#[derive(Clone, Debug)]
pub struct FamilySpace {
    pub degree: i64,
    pub basis: LabeledBasis,
}

/// `H_k -> H_{k+s} -> H_{k+2s} -> ...` with degree-raising maps.
#[derive(Clone, Debug)]
pub struct FamilyMember {
    spaces: Vec<FamilySpace>,
    // maps[j]: spaces[j] -> spaces[j + 1]
    maps: Vec<Matrix>,
}

impl FamilyMember {
    pub fn new(vars: &VarTable, spaces: Vec<FamilySpace>, maps: Vec<Matrix>) -> Result<Self, ComplexError> {
        if spaces.is_empty() || maps.len() + 1 != spaces.len() {
            return Err(ComplexError::Shape(format!(
                "{} spaces need {} maps",
                spaces.len(),
                spaces.len().saturating_sub(1)
            )));
        }
        for (j, m) in maps.iter().enumerate() {
            super::check_map(
                m,
                vars,
                &spaces[j + 1].basis,
                &spaces[j].basis,
                &format!("map out of degree {}", spaces[j].degree),
            )?;
        }
        Ok(FamilyMember { spaces, maps })
    }

    pub fn spaces(&self) -> &[FamilySpace] {
        &self.spaces
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }
}

/// The complexes `(H_*, d)` split by residue of the degree modulo `step`.
#[derive(Clone, Debug)]
pub struct CochainFamily {
    vars: VarTable,
    step: usize,
    members: Vec<FamilyMember>,
}

impl CochainFamily {
    pub fn new(vars: &VarTable, step: usize, members: Vec<FamilyMember>) -> Result<Self, ComplexError> {
        if step == 0 {
            return Err(ComplexError::Shape("family step must be positive".into()));
        }
        for m in &members {
            for w in m.spaces.windows(2) {
                if w[1].degree - w[0].degree != step as i64 {
                    return Err(ComplexError::Shape(format!(
                        "degrees {} and {} are not {step} apart",
                        w[0].degree, w[1].degree
                    )));
                }
            }
        }
        Ok(CochainFamily { vars: vars.clone(), step, members })
    }

    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    pub fn step(&self) -> usize {
        self.step
    }

    pub fn members(&self) -> &[FamilyMember] {
        &self.members
    }

    pub fn validate(&self) -> Result<(), Violation> {
        for (k, m) in self.members.iter().enumerate() {
            for j in 1..m.maps.len() {
                let comp = m.maps[j].mul(&m.maps[j - 1]).expect("shapes checked at construction");
                let name = format!("member {k}: d∘d out of degree {}", m.spaces[j - 1].degree);
                if let Some(v) = first_nonzero_entry(name, &comp) {
                    return Err(v);
                }
            }
        }
        Ok(())
    }
}

/// `∏ det[q_k s(q_{k+step}) / h_k]^{(-1)^k}` over all spaces of all members,
/// with `k` the ambient degree, `q_k` the image landing in degree `k` and
/// `s` the recorded section.
pub fn torsion_cochain_family(f: &CochainFamily) -> Result<TorsionValue, ComplexError> {
    let mut num = RatFunc::one(&f.vars);
    let mut den = RatFunc::one(&f.vars);
    for (k, member) in f.members.iter().enumerate() {
        let images: Vec<_> = member.maps.iter().map(image_with_section).collect();
        for (j, space) in member.spaces.iter().enumerate() {
            let mut cols: Vec<Vector> = if j > 0 { images[j - 1].image_basis.clone() } else { Vec::new() };
            if let Some(im) = images.get(j) {
                cols.extend(im.preimages.iter().cloned());
            }
            if cols.len() != space.basis.len() {
                return Err(ComplexError::NonAcyclicMember { member: k, degree: space.degree });
            }
            let det = det_of_columns(&f.vars, cols.len(), &cols)?;
            if det.is_zero() {
                return Err(ComplexError::NonAcyclicMember { member: k, degree: space.degree });
            }
            if space.degree.rem_euclid(2) == 0 {
                num = &num * &det;
            } else {
                den = &den * &det;
            }
        }
    }
    let value = num.checked_div(&den).map_err(|_| FieldError::DivisionByZero)?;
    Ok(TorsionValue::mod_signs(value)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(degree: i64, labels: &[&str]) -> FamilySpace {
        FamilySpace { degree, basis: LabeledBasis::new(labels.iter().copied()).unwrap() }
    }

    #[test]
    fn single_map_gives_inverse() {
        let v = VarTable::new(["r"]).unwrap();
        let s0 = space(0, &["p"]);
        let s1 = space(1, &["L"]);
        let m = Matrix::from_rows(&v, s1.basis.clone(), s0.basis.clone(), vec![vec![RatFunc::var(&v, 0)]]).unwrap();
        let fam = CochainFamily::new(&v, 1, vec![FamilyMember::new(&v, vec![s0, s1], vec![m]).unwrap()]).unwrap();
        let t = torsion_cochain_family(&fam).unwrap();
        assert!(t.value().structurally_eq(&RatFunc::parse("1/r", &v).unwrap()));
    }

    #[test]
    fn identities_give_one() {
        let v = VarTable::empty();
        let spaces = vec![space(0, &["a", "b"]), space(3, &["c", "d"])];
        let m = Matrix::identity(&v, spaces[0].basis.clone())
            .with_labels(spaces[1].basis.clone(), spaces[0].basis.clone())
            .unwrap();
        let member = FamilyMember::new(&v, spaces, vec![m]).unwrap();
        let fam = CochainFamily::new(&v, 3, vec![member]).unwrap();
        assert!(torsion_cochain_family(&fam).unwrap().value().is_one());
    }

    #[test]
    fn zero_map_member_is_reported() {
        let v = VarTable::empty();
        let spaces = vec![space(1, &["a"]), space(2, &["b"])];
        let m = Matrix::zeros(&v, spaces[1].basis.clone(), spaces[0].basis.clone());
        let fam = CochainFamily::new(&v, 1, vec![FamilyMember::new(&v, spaces, vec![m]).unwrap()]).unwrap();
        assert_eq!(torsion_cochain_family(&fam).unwrap_err(), ComplexError::NonAcyclicMember { member: 0, degree: 1 });
    }
}
