use qtorsion::complex::ComplexError;
use qtorsion::group_rep::GroupRepError;
use qtorsion::pearl::PearlError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("I/O error: {0}")]
    Io(String),
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("not acyclic: {0}")]
    NotAcyclic(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::NotAcyclic(_) => 2,
            CliError::Io(_) | CliError::Syntax(_) => 3,
        }
    }
}

impl From<ComplexError> for CliError {
    fn from(e: ComplexError) -> Self {
        match e {
            ComplexError::NotAcyclic { .. } | ComplexError::NonAcyclicMember { .. } => {
                CliError::NotAcyclic(e.to_string())
            }
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<GroupRepError> for CliError {
    fn from(e: GroupRepError) -> Self {
        match e {
            GroupRepError::NotNarrow => CliError::NotAcyclic(e.to_string()),
            GroupRepError::Complex(c) => c.into(),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<PearlError> for CliError {
    fn from(e: PearlError) -> Self {
        match e {
            PearlError::NotE1Narrow(_) => CliError::NotAcyclic(e.to_string()),
            PearlError::Complex(c) => c.into(),
            PearlError::GroupRep(g) => g.into(),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::from(ComplexError::NotAcyclic { degree: 0 }).exit_code(), 2);
        assert_eq!(CliError::from(GroupRepError::NotNarrow).exit_code(), 2);
        assert_eq!(CliError::from(GroupRepError::NonMonomialImages).exit_code(), 1);
        assert_eq!(CliError::Syntax("x".into()).exit_code(), 3);
    }
}
