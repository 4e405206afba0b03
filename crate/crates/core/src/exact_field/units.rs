use std::fmt;

use super::laurent::monomial_string;
use super::{FieldError, Monomial, RatFunc, VarTable};

/// Subgroup of Laurent monomials generated by a finite list, used to quotient
/// torsion values by the image of a representation.
#[derive(Clone, Debug)]
pub struct UnitGroup {
    vars: VarTable,
    generators: Vec<Monomial>,
    // Echelon basis of the exponent lattice: (pivot column, row).
    echelon: Vec<(usize, Vec<i128>)>,
}

impl UnitGroup {
    pub fn new(vars: &VarTable, generators: Vec<Monomial>) -> Self {
        for g in &generators {
            assert_eq!(g.exponents().len(), vars.len(), "generator length does not match variable table");
        }
        let echelon = echelon_basis(&generators, vars.len());
        UnitGroup { vars: vars.clone(), generators, echelon }
    }

    pub fn trivial(vars: &VarTable) -> Self {
        Self::new(vars, Vec::new())
    }

    /// Unit group generated by field elements that must each be a monomial
    /// with coefficient 1.
    pub fn from_elements(vars: &VarTable, elems: &[RatFunc]) -> Result<Self, FieldError> {
        let gens = elems
            .iter()
            .map(|e| {
                vars.check(e.vars())?;
                e.as_monomial().ok_or(FieldError::NotAMonomial)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(vars, gens))
    }

    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    /// Lattice membership of the exponent vector of `m`.
    pub fn contains(&self, m: &Monomial) -> bool {
        let mut target: Vec<i128> = m.exponents().iter().map(|&e| e as i128).collect();
        let mut rows = self.echelon.iter().peekable();
        for col in 0..target.len() {
            match rows.peek() {
                Some((pc, row)) if *pc == col => {
                    let p = row[col];
                    if target[col] % p != 0 {
                        return false;
                    }
                    let f = target[col] / p;
                    for (t, r) in target.iter_mut().zip(row) {
                        *t -= f * r;
                    }
                    rows.next();
                }
                _ => {
                    if target[col] != 0 {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Variables `v` such that the monomial `v` itself lies in the group.
    pub(crate) fn full_variables(&self) -> Vec<bool> {
        (0..self.vars.len()).map(|i| self.contains(&Monomial::var(self.vars.len(), i))).collect()
    }
}

fn echelon_basis(gens: &[Monomial], nvars: usize) -> Vec<(usize, Vec<i128>)> {
    let mut pool: Vec<Vec<i128>> = gens
        .iter()
        .map(|g| g.exponents().iter().map(|&e| e as i128).collect())
        .filter(|r: &Vec<i128>| r.iter().any(|&e| e != 0))
        .collect();
    let mut out = Vec::new();
    for col in 0..nvars {
        // Euclid on the column until at most one row has a nonzero entry.
        loop {
            let mut idx: Vec<usize> = (0..pool.len()).filter(|&i| pool[i][col] != 0).collect();
            if idx.len() <= 1 {
                if let Some(&i) = idx.first() {
                    let mut row = pool.swap_remove(i);
                    if row[col] < 0 {
                        row.iter_mut().for_each(|e| *e = -*e);
                    }
                    out.push((col, row));
                }
                break;
            }
            idx.sort_by_key(|&i| pool[i][col].abs());
            let small = pool[idx[0]].clone();
            for &i in &idx[1..] {
                let f = pool[i][col] / small[col];
                for (a, b) in pool[i].iter_mut().zip(&small) {
                    *a -= f * b;
                }
            }
            pool.retain(|r| r.iter().any(|&e| e != 0));
        }
    }
    out
}

impl fmt::Display for UnitGroup {
    /// Shows the reduced lattice basis, so `⟨z, z^-1⟩` prints as `⟨z⟩`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.echelon.is_empty() {
            return write!(f, "⟨1⟩");
        }
        let gens: Vec<String> = self
            .echelon
            .iter()
            .map(|(_, row)| {
                let m = Monomial::from_exponents(row.iter().map(|&e| e as i64).collect());
                monomial_string(&self.vars, &m)
            })
            .collect();
        write!(f, "⟨{}⟩", gens.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_membership() {
        let v = VarTable::new(["a", "b"]).unwrap();
        let u = UnitGroup::new(&v, vec![Monomial::from_exponents(vec![2, 1]), Monomial::from_exponents(vec![0, 3])]);
        assert!(u.contains(&Monomial::from_exponents(vec![2, 4])));
        assert!(u.contains(&Monomial::from_exponents(vec![-2, 2])));
        assert!(!u.contains(&Monomial::from_exponents(vec![1, 0])));
        assert!(!u.contains(&Monomial::from_exponents(vec![0, 1])));
        assert!(u.contains(&Monomial::one(2)));
        let w = UnitGroup::new(&v, vec![Monomial::from_exponents(vec![4, 0]), Monomial::from_exponents(vec![6, 0])]);
        assert!(w.contains(&Monomial::from_exponents(vec![2, 0])));
        assert!(!w.contains(&Monomial::from_exponents(vec![1, 0])));
        assert_eq!(w.full_variables(), vec![false, false]);
    }
}
