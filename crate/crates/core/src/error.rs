use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("field error: {0}")]
    Field(String),
    #[error("quiver has a directed cycle: {0}")]
    Cycle(String),
    #[error("not a morphism: {0}")]
    Contract(String),
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("catalog incomplete: {0}")]
    IncompleteCatalog(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
