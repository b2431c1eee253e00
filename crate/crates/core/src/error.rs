use alloc::string::String;

/// Reason a computation was refused because it would exceed a configured cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refusal {
    /// Machine-readable reason code, e.g. `tuple_cap_exceeded`.
    pub code: &'static str,
    pub requested: u128,
    pub limit: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("refused ({}): {} requested, limit {}", .0.code, .0.requested, .0.limit)]
    Refused(Refusal),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("group is not finite")]
    NotFinite,
    #[error("group with torsion where a torsion-free group is required")]
    NotTorsionFree,
    #[error("invalid group data: {0}")]
    InvalidGroup(String),
    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),
    #[error("level {level} outside 1..={max}")]
    LevelOutOfRange { level: usize, max: usize },
    #[error("intertwiner check failed: {0}")]
    Intertwiner(String),
    #[error("unit is not an eigenvector of the stationary matrix")]
    UnitNotEigenvector,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn refused(code: &'static str, requested: u128, limit: u128) -> Self {
        Error::Refused(Refusal { code, requested, limit })
    }

    /// True for cap refusals, which callers report differently from errors.
    pub fn is_refusal(&self) -> bool {
        matches!(self, Error::Refused(_))
    }
}

pub type Result<T> = core::result::Result<T, Error>;
