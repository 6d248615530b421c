use std::fmt;

/// Harness failures map onto process exit codes: validation problems exit
/// 2, numeric guards (overflow, reducibility, infinite constants) exit 3,
/// I/O and internal failures exit 1.
#[derive(Debug)]
pub enum HarnessError {
    Validation(String),
    Numeric(String),
    Io(std::io::Error),
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Validation(_) => 2,
            HarnessError::Numeric(_) => 3,
            HarnessError::Io(_) => 1,
        }
    }
}

impl fmt::Display for HarnessError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HarnessError::Validation(w) => write!(f, "validation error: {w}"),
            HarnessError::Numeric(w) => write!(f, "numeric guard: {w}"),
            HarnessError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl std::error::Error for HarnessError {}

impl From<std::io::Error> for HarnessError {
    fn from(e: std::io::Error) -> Self {
        HarnessError::Io(e)
    }
}

impl From<fa2f_core::error::LatticeError> for HarnessError {
    fn from(e: fa2f_core::error::LatticeError) -> Self {
        match e {
            fa2f_core::error::LatticeError::SiteCapExceeded { .. } => {
                HarnessError::Numeric(e.to_string())
            }
            other => HarnessError::Validation(other.to_string()),
        }
    }
}

impl From<fa2f_core::error::DropletError> for HarnessError {
    fn from(e: fa2f_core::error::DropletError) -> Self {
        use fa2f_core::error::DropletError as D;
        match e {
            D::ScaleOverflow { .. } => HarnessError::Numeric(e.to_string()),
            other => HarnessError::Validation(other.to_string()),
        }
    }
}

impl From<fa2f_core::error::BpError> for HarnessError {
    fn from(e: fa2f_core::error::BpError) -> Self {
        use fa2f_core::error::BpError as B;
        match e {
            B::NonCuboidComponent { .. } => HarnessError::Numeric(e.to_string()),
            other => HarnessError::Validation(other.to_string()),
        }
    }
}

impl From<fa2f_spectral::SpectralError> for HarnessError {
    fn from(e: fa2f_spectral::SpectralError) -> Self {
        use fa2f_spectral::SpectralError as S;
        match e {
            S::Reducible { .. } | S::InfiniteGamma | S::EigenFailure(_) | S::CapExceeded { .. } => {
                HarnessError::Numeric(e.to_string())
            }
            other => HarnessError::Validation(other.to_string()),
        }
    }
}

impl From<fa2f_kcm::SimError> for HarnessError {
    fn from(e: fa2f_kcm::SimError) -> Self {
        HarnessError::Validation(e.to_string())
    }
}

impl From<fa2f_cbsep::CbsepError> for HarnessError {
    fn from(e: fa2f_cbsep::CbsepError) -> Self {
        use fa2f_cbsep::CbsepError as C;
        match e {
            C::CapExceeded { .. } | C::Spectral(_) => HarnessError::Numeric(e.to_string()),
            other => HarnessError::Validation(other.to_string()),
        }
    }
}
