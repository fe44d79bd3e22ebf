use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input is outside the domain where the quantity is defined.
    #[error("{name} = {value:e} is out of domain: {reason}")]
    Domain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// The cavity would sit at or below the Schwarzschild radius.
    #[error("radius {radius:e} m does not exceed the Schwarzschild radius {alpha:e} m")]
    Horizon { radius: f64, alpha: f64 },

    /// The rigid-cavity treatment needs the cavity small against the field scale.
    #[error(
        "cavity extent {extent:e} m exceeds {limit:e} m, the allowed fraction of the distance \
         {radius:e} m to the source"
    )]
    GeometryTooLarge {
        extent: f64,
        radius: f64,
        limit: f64,
    },

    /// No regularization method registered under this name.
    #[error("unknown regularization method {name:?}; available: {available}")]
    UnknownMethod { name: String, available: String },

    /// An iterative scheme failed to reach its tolerance.
    #[error("{what} failed to converge: {detail}")]
    Convergence { what: &'static str, detail: String },

    /// Configuration validation failed; every violation is listed.
    #[error("invalid configuration:\n{}", violations.join("\n"))]
    InvalidConfig { violations: Vec<String> },

    /// The feasible set of an optimization problem is empty.
    #[error("infeasible constraints: {constraint}")]
    Infeasible { constraint: String },
}

impl Error {
    pub fn domain(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::Domain {
            name,
            value,
            reason,
        }
    }
}

/// Checks one scalar precondition, collecting nothing: returns the error.
pub fn require_finite_positive(name: &'static str, value: f64) -> Result<f64> {
    if !value.is_finite() {
        return Err(Error::domain(name, value, "must be finite"));
    }
    if value <= 0.0 {
        return Err(Error::domain(name, value, "must be positive"));
    }
    Ok(value)
}
