use std::fmt;

use fa2f_spectral::SpectralError;

#[derive(Debug)]
pub enum CbsepError {
    DisconnectedGraph,
    /// The weights must give the particle states positive mass.
    NoParticleMass,
    BadWeights(String),
    /// Initial state has no particle (outside Omega^+).
    NoParticleInInit,
    CapExceeded { have: u128, cap: usize },
    /// Renormalization box side does not divide the torus side.
    Divisibility { side: usize, ell: usize },
    NotATorus,
    BadGraph(String),
    Spectral(SpectralError),
}

impl fmt::Display for CbsepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CbsepError::DisconnectedGraph => write!(f, "graph must be connected"),
            CbsepError::NoParticleMass => write!(f, "pi(S_1) must be positive"),
            CbsepError::BadWeights(w) => write!(f, "bad weights: {w}"),
            CbsepError::NoParticleInInit => write!(f, "initial state has no particle"),
            CbsepError::CapExceeded { have, cap } => {
                write!(f, "state space of {have} exceeds cap {cap}")
            }
            CbsepError::Divisibility { side, ell } => {
                write!(f, "box side {ell} does not divide torus side {side}")
            }
            CbsepError::NotATorus => write!(f, "renormalization requires a torus graph"),
            CbsepError::BadGraph(w) => write!(f, "bad graph: {w}"),
            CbsepError::Spectral(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CbsepError {}

impl From<SpectralError> for CbsepError {
    fn from(e: SpectralError) -> Self {
        CbsepError::Spectral(e)
    }
}
