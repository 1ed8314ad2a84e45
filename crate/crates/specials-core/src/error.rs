use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("invalid group: {0}")]
    Validation(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("name `{name}` is not defined for {group}")]
    UndefinedName { name: String, group: String },
    #[error("duality is ambiguous: {count} candidate anti-automorphisms")]
    AmbiguousDual { count: usize },
    #[error("ladder did not terminate within {cap} steps")]
    CapExceeded { cap: usize },
    #[error("internal error: {0}")]
    Internal(String),
    #[error("fixture error: {0}")]
    Fixture(String),
}

impl Error {
    /// Whether the error stems from bad user input rather than a failed check.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Syntax(_) | Error::Validation(_) | Error::Domain(_) | Error::UndefinedName { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
