use thiserror::Error;

/// Crate-wide error type. The CLI maps these onto exit codes: spectrum and
/// protocol validation problems are "invalid input" (exit 2), guard trips are
/// "resource" (exit 3), everything a caller cannot trigger is "internal"
/// (exit 4).
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("mismatched level structure: {0}")]
    MismatchedLevels(String),

    #[error("resource guard exceeded: {0}")]
    ResourceGuard(String),

    #[error("infeasible shift {shift} at n={n}: shell t={t} has {occupied} occupied states but only {capacity} targets at t-s")]
    InfeasibleShift {
        shift: u64,
        n: u64,
        t: u64,
        occupied: String,
        capacity: String,
    },

    #[error("ground level is occupied; deterministic rate is zero and the construction does not apply")]
    GroundOccupied,

    #[error("no sign change of S_A - S_0 on the scan grid: {0}")]
    NoSignChange(String),

    #[error("occupied support equals the full basis; the bound degenerates to 0")]
    FullSupport,

    #[error("CLT estimate inapplicable: {0}")]
    CltInapplicable(String),

    #[error("state support mismatch: {0}")]
    SupportMismatch(String),

    #[error("invalid protocol table: {0}")]
    InvalidProtocol(String),

    #[error("band violation: {0}")]
    BandViolation(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
