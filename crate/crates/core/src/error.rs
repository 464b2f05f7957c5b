use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input outside the mathematical domain of a function.
    #[error("domain error: {0}")]
    Domain(String),
    /// Caller supplied an invalid argument (bad grid, empty basis, ...).
    #[error("invalid argument: {0}")]
    Argument(String),
    /// The polar angle is undefined at the origin of the relative plane.
    #[error("angle undefined at rho = 0")]
    AngleUndefined,
    /// A numerical invariant that should hold by construction failed.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
