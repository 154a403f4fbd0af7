use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Argument outside its mathematical domain (negative distance, split
    /// ratio outside (0,1], ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Vector or matrix dimensions inconsistent with the scenario.
    #[error("dimension mismatch in {what}: expected {expected}, got {got}")]
    Dimension {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("configuration error: {0}")]
    Config(String),

    /// The instance cannot satisfy its constraints; `constraint` names the
    /// violated one.
    #[error("infeasible: constraint {constraint} cannot be met ({detail})")]
    Infeasible { constraint: String, detail: String },

    #[error("conic solver failure: {0}")]
    Solver(String),

    /// Guard rails in the brute-force oracle (instance too large, ...).
    #[error("oracle guard: {0}")]
    Guard(String),

    #[error("unknown variable or block: {0}")]
    UnknownName(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
