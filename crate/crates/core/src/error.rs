use thiserror::Error;

/// Errors raised by the geometry, Green-function and stress routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument violated the precondition named in the message.
    #[error("domain error: {0}")]
    Domain(String),

    /// Field and source point closer than the exclusion radius.
    #[error("coincident points: separation {separation:e} is below the exclusion radius {radius:e}")]
    Coincidence { separation: f64, radius: f64 },

    /// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
    #[error(
        "quadrature did not converge after {subdivisions} subdivisions: \
         estimate {value:e}, error estimate {error:e}"
    )]
    Convergence {
        value: f64,
        error: f64,
        subdivisions: usize,
    },

    /// A finite-difference stencil reaches past the region where the function is valid.
    #[error("finite-difference stencil of reach {reach:e} leaves the valid region ({detail})")]
    Stencil { reach: f64, detail: String },

    /// A matrix passed as a rotation is not orthogonal with determinant +1.
    #[error("matrix is not a proper rotation (defect {defect:e})")]
    NotRotation { defect: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
