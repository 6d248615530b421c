use std::fmt;

/// Errors from geometry, sampling and composition.
#[derive(Debug, Clone, PartialEq)]
pub enum LatticeError {
    /// Region would hold more sites than the implementation cap.
    SiteCapExceeded { sites: u128, cap: usize },
    EmptyDims,
    ZeroDim,
    DimensionMismatch { expected: usize, got: usize },
    SiteOutsideRegion,
    /// `compose` parts overlap.
    OverlappingParts,
    /// `compose` parts do not tile a rectangle.
    PartsDoNotTile,
    /// Explicit boundary does not cover exactly the boundary of the region.
    BoundaryMismatch(String),
    /// Operation needs a rectangle (tori have no boundary).
    NotARectangle,
    /// Density outside (0, 1).
    InvalidDensity(f64),
    /// Constraint level outside 1..=2d.
    InvalidConstraint { j: u8, max: u8 },
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeError::SiteCapExceeded { sites, cap } => {
                write!(f, "region has {sites} sites, exceeding the cap of {cap}")
            }
            LatticeError::EmptyDims => write!(f, "region dims must be nonempty"),
            LatticeError::ZeroDim => write!(f, "region dims must be positive"),
            LatticeError::DimensionMismatch { expected, got } => {
                write!(f, "expected {expected} coordinates, got {got}")
            }
            LatticeError::SiteOutsideRegion => write!(f, "site lies outside the region"),
            LatticeError::OverlappingParts => write!(f, "compose parts overlap"),
            LatticeError::PartsDoNotTile => {
                write!(f, "compose parts do not tile a rectangle")
            }
            LatticeError::BoundaryMismatch(why) => write!(f, "boundary mismatch: {why}"),
            LatticeError::NotARectangle => write!(f, "operation requires a rectangle region"),
            LatticeError::InvalidDensity(q) => write!(f, "density q = {q} outside (0, 1)"),
            LatticeError::InvalidConstraint { j, max } => {
                write!(f, "constraint level j = {j} outside 1..={max}")
            }
        }
    }
}

impl std::error::Error for LatticeError {}

/// Errors from the binary / text configuration codecs.
#[derive(Debug)]
pub enum CodecError {
    BadMagic,
    BadVersion(u16),
    Truncated,
    TrailingBytes,
    BadChar(char),
    RaggedRows,
    Empty,
    RunOverflow,
    Lattice(LatticeError),
}

impl fmt::Display for CodecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodecError::BadMagic => write!(f, "bad magic bytes"),
            CodecError::BadVersion(v) => write!(f, "unsupported format version {v}"),
            CodecError::Truncated => write!(f, "input ends mid-record"),
            CodecError::TrailingBytes => write!(f, "trailing bytes after payload"),
            CodecError::BadChar(c) => write!(f, "unexpected character {c:?} in matrix text"),
            CodecError::RaggedRows => write!(f, "matrix rows have unequal widths"),
            CodecError::Empty => write!(f, "empty input"),
            CodecError::RunOverflow => write!(f, "run length overflows the region"),
            CodecError::Lattice(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CodecError {}

impl From<LatticeError> for CodecError {
    fn from(e: LatticeError) -> Self {
        CodecError::Lattice(e)
    }
}

/// Errors from the droplet calculus.
#[derive(Debug, Clone, PartialEq)]
pub enum DropletError {
    /// Scale sequence must start at 1 and strictly increase.
    ScalesNotIncreasing { index: usize },
    ScalesEmpty,
    ScaleBaseNotOne,
    /// ell_m no longer fits the floating-point range used to derive it.
    ScaleOverflow { m: u64 },
    /// Scale index beyond the configured sequence.
    ScaleIndexOutOfRange { m: usize, len: usize },
    /// Rectangle is not of the requested class.
    NotOfClass { n: u32 },
    /// Rectangle dims do not match the required shape.
    GeometryMismatch(String),
    /// Operation requires a rectangle inside the configuration's region.
    RectOutsideRegion,
    /// Box side does not tile the torus.
    PartitionMismatch { side: u64 },
    NotATorus,
    DomainViolation(String),
    Lattice(LatticeError),
}

impl fmt::Display for DropletError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DropletError::ScalesNotIncreasing { index } => {
                write!(f, "scale sequence not strictly increasing at index {index}")
            }
            DropletError::ScalesEmpty => write!(f, "scale sequence is empty"),
            DropletError::ScaleBaseNotOne => write!(f, "scale sequence must start with ell_0 = 1"),
            DropletError::ScaleOverflow { m } => {
                write!(f, "ell_{m} overflows the supported numeric range")
            }
            DropletError::ScaleIndexOutOfRange { m, len } => {
                write!(f, "scale index {m} out of range (sequence holds {len})")
            }
            DropletError::NotOfClass { n } => write!(f, "rectangle is not of class {n}"),
            DropletError::GeometryMismatch(why) => write!(f, "geometry mismatch: {why}"),
            DropletError::RectOutsideRegion => {
                write!(f, "rectangle not contained in the configuration region")
            }
            DropletError::PartitionMismatch { side } => {
                write!(f, "boxes of side {side} do not tile the torus")
            }
            DropletError::NotATorus => write!(f, "operation requires a torus region"),
            DropletError::DomainViolation(why) => write!(f, "domain violation: {why}"),
            DropletError::Lattice(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for DropletError {}

impl From<LatticeError> for DropletError {
    fn from(e: LatticeError) -> Self {
        DropletError::Lattice(e)
    }
}

/// Errors from the bootstrap percolation engine.
#[derive(Debug, Clone, PartialEq)]
pub enum BpError {
    /// A connected component of a 2-BP closure failed the cuboid shape check;
    /// this signals an engine bug, not bad input.
    NonCuboidComponent { size: usize, bbox_volume: usize },
    /// rho must be positive to form the lower bound q / (rho |V|^2).
    NonPositiveRho(f64),
    ZeroSamples,
    Lattice(LatticeError),
}

impl fmt::Display for BpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BpError::NonCuboidComponent { size, bbox_volume } => write!(
                f,
                "closure component of {size} sites is not a cuboid (bounding box holds {bbox_volume})"
            ),
            BpError::NonPositiveRho(r) => write!(f, "rho = {r} must be positive"),
            BpError::ZeroSamples => write!(f, "sample count must be at least 1"),
            BpError::Lattice(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for BpError {}

impl From<LatticeError> for BpError {
    fn from(e: LatticeError) -> Self {
        BpError::Lattice(e)
    }
}
