use thiserror::Error;

/// Errors shared by all laboratory modules.
#[derive(Debug, Error)]
pub enum Error {
    /// Caller handed in something structurally wrong (sizes, ranges, flags).
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A family failed the exact-deformation check; carries the worst defect.
    #[error("exactness violated: {message} (defect {defect:.3e})")]
    Exactness { message: String, defect: f64 },

    /// Samples fail the Legendrian tangency condition.
    #[error("legendrian condition violated: {message} (worst defect {defect:.3e} at {location})")]
    Legendrian {
        message: String,
        defect: f64,
        location: String,
    },

    /// A lift could not be constructed (e.g. non-integer area for a circle-valued lift).
    #[error("lift failed: {0}")]
    Lift(String),

    /// A numerical routine could not produce a result.
    #[error("computation failed: {0}")]
    Computation(String),

    /// Flow or sample left the working domain/grid.
    #[error("domain escape: {0}")]
    Domain(String),

    /// A Hamiltonian did not decay inside the grid window.
    #[error("cutoff failure: {0}")]
    Cutoff(String),

    /// Critical values collide, so the value-ordered pairing is undefined.
    #[error("strong Morse violation: {0}")]
    StrongMorse(String),

    /// Scenario/report parsing problems; carries a location hint when known.
    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
