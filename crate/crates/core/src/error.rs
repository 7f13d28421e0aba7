use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vector has length {found}, expected ambient dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{0}")]
    UnsupportedDimension(String),
    #[error("cone is not pointed (contains a line); split off the lineality space first")]
    NotPointed,
    #[error("ray {0:?} is not primitive")]
    NotPrimitive(Vec<i64>),
    #[error("the zero vector is not a ray")]
    ZeroRay,
    #[error("integer overflow in lattice computation")]
    Overflow,
    #[error("invalid composition {0:?}: parts must be positive")]
    InvalidComposition(Vec<usize>),
    #[error("invalid Chevalley data: {0}")]
    InvalidChevalleyData(String),
    #[error("monoid has no source cone; prime enumeration needs one")]
    MissingSourceCone,
    #[error("torification carries no charts")]
    MissingCharts,
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("invalid parameters for family `{family}`: {reason}")]
    InvalidParameters { family: String, reason: String },
    #[error("q = {0} is not a valid field size (need q >= 2)")]
    InvalidFieldSize(String),
    #[error("enumeration of {needed} elements exceeds the budget of {budget}")]
    BudgetExceeded { needed: String, budget: u64 },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("relation search bound {bound} too small: found kernel rank {found}, expected {expected}")]
    BoundTooSmall { bound: i64, found: usize, expected: usize },
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
