use std::fmt;

use crate::exact_field::{eq_mod_signs, eq_mod_units, FieldError, RatFunc, UnitGroup};

/// Ambiguity of a torsion value: a sign, or a sign and a monomial unit.
#[derive(Clone, Debug)]
pub enum Quotient {
    Signs,
    Units(UnitGroup),
}

impl Quotient {
    fn join(&self, other: &Quotient) -> Quotient {
        match (self, other) {
            (Quotient::Signs, Quotient::Signs) => Quotient::Signs,
            (Quotient::Units(u), Quotient::Signs) | (Quotient::Signs, Quotient::Units(u)) => Quotient::Units(u.clone()),
            (Quotient::Units(a), Quotient::Units(b)) => {
                let gens = a.generators().iter().chain(b.generators()).cloned().collect();
                Quotient::Units(UnitGroup::new(a.vars(), gens))
            }
        }
    }
}

/// Nonzero field element taken modulo a [`Quotient`].
#[derive(Clone, Debug)]
pub struct TorsionValue {
    value: RatFunc,
    quotient: Quotient,
}

impl TorsionValue {
    pub fn new(value: RatFunc, quotient: Quotient) -> Result<Self, FieldError> {
        if value.is_zero() {
            return Err(FieldError::ZeroValue);
        }
        if let Quotient::Units(u) = &quotient {
            value.vars().check(u.vars())?;
        }
        Ok(TorsionValue { value, quotient })
    }

    pub fn mod_signs(value: RatFunc) -> Result<Self, FieldError> {
        Self::new(value, Quotient::Signs)
    }

    /// The stored representative (not normalized).
    pub fn value(&self) -> &RatFunc {
        &self.value
    }

    pub fn quotient(&self) -> &Quotient {
        &self.quotient
    }

    pub fn with_quotient(self, quotient: Quotient) -> Result<Self, FieldError> {
        Self::new(self.value, quotient)
    }

    /// Whether `other` represents the same class under this value's quotient.
    pub fn matches(&self, other: &RatFunc) -> bool {
        if other.is_zero() || !other.vars().same_as(self.value.vars()) {
            return false;
        }
        match &self.quotient {
            Quotient::Signs => eq_mod_signs(&self.value, other).unwrap_or(false),
            Quotient::Units(u) => eq_mod_units(&self.value, other, u).unwrap_or(false),
        }
    }

    /// Representative with positive leading coefficient, and for unit
    /// quotients with the monomial content of the numerator removed in every
    /// variable that is itself a unit.
    pub fn canonical(&self) -> RatFunc {
        let v = match &self.quotient {
            Quotient::Signs => self.value.clone(),
            Quotient::Units(u) => self.value.strip_monomial_content(&u.full_variables()),
        };
        v.sign_normalized()
    }
}

impl PartialEq for TorsionValue {
    /// Compared in the coarser of the two quotients.
    fn eq(&self, other: &Self) -> bool {
        let q = self.quotient.join(&other.quotient);
        TorsionValue { value: self.value.clone(), quotient: q }.matches(&other.value)
    }
}

impl fmt::Display for Quotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quotient::Signs => write!(f, "±1"),
            Quotient::Units(u) => write!(f, "±{u}"),
        }
    }
}

impl fmt::Display for TorsionValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}  (mod {})", self.canonical(), self.quotient)
    }
}
