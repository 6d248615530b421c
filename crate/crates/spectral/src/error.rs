use std::fmt;

use fa2f_core::error::{DropletError, LatticeError};

#[derive(Debug, Clone, PartialEq)]
pub enum SpectralError {
    /// State space (or site count) beyond the exhaustive cap.
    CapExceeded { have: usize, cap: usize },
    EmptyStateSpace,
    /// Detailed balance violated between two states.
    NotReversible { from: usize, to: usize, detail: String },
    /// The chain splits into communicating classes (listed by state index).
    Reducible { components: Vec<Vec<usize>> },
    /// A function separates super-good states at zero Dirichlet cost: the
    /// conditioned Poincaré constant is infinite, signalling an
    /// event-definition bug.
    InfiniteGamma,
    HypothesisViolated(String),
    ZeroProbabilityEvent(String),
    EigenFailure(String),
    Disconnected,
    BadInstance(String),
    Droplet(DropletError),
    Lattice(LatticeError),
}

impl fmt::Display for SpectralError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectralError::CapExceeded { have, cap } => {
                write!(f, "state space of {have} exceeds cap {cap}")
            }
            SpectralError::EmptyStateSpace => write!(f, "empty state space"),
            SpectralError::NotReversible { from, to, detail } => {
                write!(f, "detailed balance fails between {from} and {to}: {detail}")
            }
            SpectralError::Reducible { components } => {
                write!(f, "chain is reducible into {} components", components.len())
            }
            SpectralError::InfiniteGamma => write!(
                f,
                "infinite Poincaré constant: super-good states disconnected under the constrained moves"
            ),
            SpectralError::HypothesisViolated(w) => write!(f, "hypothesis violated: {w}"),
            SpectralError::ZeroProbabilityEvent(w) => write!(f, "zero-probability event: {w}"),
            SpectralError::EigenFailure(w) => write!(f, "eigensolve failed: {w}"),
            SpectralError::Disconnected => write!(f, "graph is disconnected"),
            SpectralError::BadInstance(w) => write!(f, "bad instance: {w}"),
            SpectralError::Droplet(e) => write!(f, "{e}"),
            SpectralError::Lattice(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for SpectralError {}

impl From<DropletError> for SpectralError {
    fn from(e: DropletError) -> Self {
        SpectralError::Droplet(e)
    }
}

impl From<LatticeError> for SpectralError {
    fn from(e: LatticeError) -> Self {
        SpectralError::Lattice(e)
    }
}
