use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The eigenvalues of `-(WV)^2` did not come in matching pairs.
    #[error("numerical degeneracy: {0}")]
    NumericalDegeneracy(String),

    #[error("no steady state found: {0}")]
    Convergence(String),

    #[error(
        "unstable operating point: drift eigenvalue {re:.6e} {im:+.6e}i has positive real part"
    )]
    UnstableOperatingPoint { re: f64, im: f64 },

    #[error("resonance singularity: transfer matrix is singular ({0})")]
    ResonanceSingularity(String),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
