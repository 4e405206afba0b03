use std::fmt;
use std::sync::Arc;

use super::FieldError;

/// Ordered list of variable names. The order fixes the monomial order, so a
/// table is shared (cheaply cloned) by every element of one computation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VarTable(Arc<[String]>);

impl VarTable {
    pub fn new<I, S>(names: I) -> Result<Self, FieldError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(FieldError::InvalidVariable(name.clone()));
            }
            if names[..i].contains(name) {
                return Err(FieldError::DuplicateVariable(name.clone()));
            }
        }
        Ok(VarTable(names.into()))
    }

    /// Table with no variables, i.e. the field `Q`.
    pub fn empty() -> Self {
        VarTable(Arc::from(Vec::<String>::new()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn same_as(&self, other: &VarTable) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }

    pub(crate) fn check(&self, other: &VarTable) -> Result<(), FieldError> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(FieldError::VarTableMismatch(self.0.join(","), other.0.join(",")))
        }
    }
}

impl fmt::Debug for VarTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VarTable{:?}", &*self.0)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_bad_names() {
        assert!(matches!(VarTable::new(["z1", "z1"]), Err(FieldError::DuplicateVariable(_))));
        assert!(matches!(VarTable::new(["1z"]), Err(FieldError::InvalidVariable(_))));
        let t = VarTable::new(["z1", "z2"]).unwrap();
        assert_eq!(t.index_of("z2"), Some(1));
        assert!(t.same_as(&VarTable::new(["z1", "z2"]).unwrap()));
    }
}
