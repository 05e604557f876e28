use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Arguments fall outside the region where a formula is valid.
    #[error("domain error: {0}")]
    Domain(String),

    /// A floating-point evaluation could not be rounded to an integer safely.
    #[error("precision error: residual {residual} at n={n}, t={t} is not below {limit}")]
    Precision {
        n: u32,
        t: u32,
        residual: f64,
        limit: f64,
    },

    /// Exhaustive enumeration refused because the instance is too large.
    #[error("enumeration budget exceeded: n={n} exceeds the limit of {limit}")]
    Budget { n: u32, limit: u32 },

    #[error("invalid argument: {0}")]
    Argument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
