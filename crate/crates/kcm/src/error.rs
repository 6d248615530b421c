use std::fmt;

use fa2f_core::error::LatticeError;

#[derive(Debug, Clone, PartialEq)]
pub enum SimError {
    /// tau_0 needs the origin inside the region.
    OriginOutsideRegion,
    NonPositiveTime(f64),
    /// Stationarity windows produced no usable batches.
    ZeroEffectiveSamples,
    BadEventLog(String),
    Lattice(LatticeError),
}

impl fmt::Display for SimError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimError::OriginOutsideRegion => write!(f, "origin lies outside the region"),
            SimError::NonPositiveTime(t) => write!(f, "time horizon {t} must be positive"),
            SimError::ZeroEffectiveSamples => write!(f, "zero effective samples"),
            SimError::BadEventLog(w) => write!(f, "bad event log: {w}"),
            SimError::Lattice(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for SimError {}

impl From<LatticeError> for SimError {
    fn from(e: LatticeError) -> Self {
        SimError::Lattice(e)
    }
}
