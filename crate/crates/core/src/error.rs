use thiserror::Error;

/// Errors raised by the ring models and the lattice primitives.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("complement is unbounded: no pure-power generator on axis {axis}")]
    UnboundedComplement { axis: usize },
    #[error("ideal is not m-primary")]
    NotMPrimary,
    #[error("dimension {0} is not supported by the closed-form covolume (max 3)")]
    DimensionUnsupported(usize),
    #[error("{count} generators after minimization exceed the inclusion-exclusion cap of {cap}")]
    TooManyGenerators { count: usize, cap: usize },
    #[error("generator {index} has length {got}, expected ambient dimension {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("empty generator set")]
    EmptyGenerators,
    #[error("the unit ideal is not a proper m-primary ideal")]
    UnitIdeal,
    #[error("generators have gcd {0}, not a numerical semigroup")]
    NotCoprime(u64),
    #[error("1 lies in the semigroup: the ring is regular (a DVR)")]
    RegularRing,
    #[error("{0} is not an element of the semigroup")]
    NotInSemigroup(u64),
    #[error("ideals live in different semigroups")]
    MixedSemigroups,
    #[error("first ideal is not contained in the second")]
    NotNested,
    #[error("ideal is not generated by pure powers of every variable")]
    NotParameter,
    #[error("facet {0:?} is not a facet of the ring")]
    UnknownFacet(Vec<usize>),
    #[error("ring is not a union of coordinate axes")]
    NotAxesRing,
    #[error("invalid facet complex: {0}")]
    InvalidComplex(String),
    #[error("generator {0:?} is zero in the ring (its support lies in no facet)")]
    ZeroGenerator(Vec<u32>),
    #[error("unknown family: {0}")]
    UnknownFamily(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Variant name, used as the `kind` of structured error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::UnboundedComplement { .. } => "UnboundedComplement",
            Error::NotMPrimary => "NotMPrimary",
            Error::DimensionUnsupported(_) => "DimensionUnsupported",
            Error::TooManyGenerators { .. } => "TooManyGenerators",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::EmptyGenerators => "EmptyGenerators",
            Error::UnitIdeal => "UnitIdeal",
            Error::NotCoprime(_) => "NotCoprime",
            Error::RegularRing => "RegularRing",
            Error::NotInSemigroup(_) => "NotInSemigroup",
            Error::MixedSemigroups => "MixedSemigroups",
            Error::NotNested => "NotNested",
            Error::NotParameter => "NotParameter",
            Error::UnknownFacet(_) => "UnknownFacet",
            Error::NotAxesRing => "NotAxesRing",
            Error::InvalidComplex(_) => "InvalidComplex",
            Error::ZeroGenerator(_) => "ZeroGenerator",
            Error::UnknownFamily(_) => "UnknownFamily",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}
