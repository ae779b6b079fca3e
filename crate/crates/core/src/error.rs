use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("duplicate label '{0}'")]
    DuplicateLabel(String),
    #[error("unknown label '{0}'")]
    UnknownLabel(String),
    #[error("dual map is not an involution fixing the vacuum: {0}")]
    DualNotInvolution(String),
    #[error("vacuum weight must be 0, got {0}")]
    VacuumWeightNonzero(String),
    #[error("S-matrix is singular: |det S| = {0:e}")]
    SingularS(f64),
    #[error("twist of '{0}' differs from twist of its dual")]
    DualWeightMismatch(String),
    #[error("invalid fusion tensor: {0}")]
    InvalidFusionTensor(String),
    #[error("S_e^{0} vanishes; Verlinde formula undefined")]
    VacuumColumnZero(String),
    #[error("Verlinde entry N_{{{0}}} = {1:e} is not within tolerance of an integer")]
    NonIntegral(String, f64),
    #[error("Verlinde entry N_{{{0}}} rounds to negative value {1}")]
    Negative(String, i64),
    #[error("vacuum entry S_e^e vanishes")]
    VacuumEntryZero,
    #[error("fusion matrices N({0}) and N({1}) do not commute")]
    NonCommutingFusionMatrices(String, String),
    #[error("common eigenspaces could not be split")]
    DegenerateSpectrumUnresolved,
    #[error("no column ordering reproduces the fusion tensor")]
    NoConsistentOrdering,
    #[error("missing entry {0}")]
    MissingEntry(String),
    #[error("rigidity scalar of '{0}' vanishes")]
    ZeroRigidityScalar(String),
    #[error("fusion tensor is not multiplicity-free: N_{{{0}}} = {1}")]
    NotMultiplicityFree(String, u32),
    #[error("inadmissible entry {0}")]
    InadmissibleEntry(String),
    #[error("tau must lie in the upper half plane, got {0}")]
    TauNotInUpperHalfPlane(String),
    #[error("truncation bound {0:e} exceeds tolerance {1:e}")]
    TruncationTooShort(f64, f64),
    #[error("character data inconsistent with modular data: {0}")]
    CharacterMismatch(String),
    #[error("invalid fixture parameters: {0}")]
    InvalidParameters(String),
    #[error("oracle search failed: {0}")]
    OracleSearchFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
