use thiserror::Error;

use crate::coefficient::Coefficient;
use crate::element::GroupElement;
use crate::expr::ParseError;
use crate::verify::ClosureViolation;

#[derive(Debug, Error)]
pub enum Error {
    #[error("a simple quantity needs a non-empty set")]
    EmptySet,

    #[error("the zero coefficient slice is infinite; pass a nonzero coefficient")]
    ZeroSlice,

    #[error("coefficient function is undefined at {0}")]
    UndefinedCoefficient(Coefficient),

    #[error("family parameter n must be nonzero")]
    ZeroParameter,

    #[error("{family} partitions the rank-one subgroup only; element ({element}) has j != 0")]
    OffAxis {
        family: String,
        element: GroupElement,
    },

    #[error("{0}")]
    UnknownFamily(String),

    #[error(
        "orbit of ({element}) exceeded {cap} elements; the generated group is probably infinite"
    )]
    OrbitCap { element: GroupElement, cap: usize },

    #[error("set {0} is not a basic set of the family")]
    NotABasicSet(String),

    #[error(transparent)]
    Closure(Box<ClosureViolation>),

    #[error("<a> is not a window-verified A-subgroup of {0}; the projection to <b> is undefined")]
    KernelNotASubgroup(String),

    #[error("projected partition of {0} matches neither the discrete nor the symmetric rank-one pattern")]
    ProjectionMismatch(String),

    #[error("{0} is not a rank-two catalog family")]
    NotRankTwo(String),

    #[error("window radius must be at least 1")]
    EmptyWindow,

    #[error("window radius {radius} is too small; need at least {needed}")]
    WindowTooSmall { radius: u64, needed: u64 },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("j0 must be nonzero")]
    ZeroFrobeniusExponent,

    #[error("orbit-coincidence failed for {family} at ({element})")]
    OrbitMismatch {
        family: String,
        element: GroupElement,
    },

    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl From<ClosureViolation> for Error {
    fn from(v: ClosureViolation) -> Self {
        Error::Closure(Box::new(v))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
