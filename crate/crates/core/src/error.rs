use thiserror::Error;

/// Errors produced by the numerical layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error in {function}: {message}")]
    Domain {
        function: &'static str,
        message: String,
    },

    #[error("dimension mismatch: cannot convert {from} to {to}")]
    DimensionMismatch { from: String, to: String },

    #[error("unknown unit `{0}`")]
    UnknownUnit(String),

    #[error("unknown species `{0}`")]
    UnknownSpecies(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("potential is not finite at r = {radius:e} m")]
    Singularity { radius: f64 },

    #[error("reservoir is condensed: phase-space density {psd} exceeds {max}")]
    CondensedReservoir { psd: f64, max: f64 },

    #[error("no depth in the scan satisfies 2ε > U > ε")]
    NoBlockadeWindow,

    #[error("eigensolver failed to converge")]
    Eigensolver,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(function: &'static str, message: impl Into<String>) -> Error {
    Error::Domain {
        function,
        message: message.into(),
    }
}
