//! Error type shared by all modules.

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |m - m^dag| entry = {deviation:.3e}")]
    NotHermitian { deviation: f64 },

    #[error("trace differs from 1 by {deviation:.3e}")]
    TraceNotOne { deviation: f64 },

    #[error("matrix is not positive semidefinite: min eigenvalue = {min_eigenvalue:.3e}")]
    NotPositive { min_eigenvalue: f64 },

    #[error("subsystem dims {dims:?} do not multiply to matrix dim {dim}")]
    DimsMismatch { dims: Vec<usize>, dim: usize },

    #[error("bad subsystem selection {indices:?} for {count} subsystems")]
    BadSubsystem { indices: Vec<usize>, count: usize },

    #[error("operation requires exactly 2 subsystems, state has {count}")]
    BipartitionRequired { count: usize },

    #[error("channel parameter p = {p} outside [0, 1]")]
    ParameterOutOfRange { p: f64 },

    #[error("Bell-diagonal parameters ({c1}, {c2}, {c3}) give a negative eigenvalue {min_eigenvalue:.3e}")]
    BellParamsNotPositive {
        c1: f64,
        c2: f64,
        c3: f64,
        min_eigenvalue: f64,
    },

    #[error("general two-qubit coefficient c[0][0] must be 1, got {value}")]
    BadNormalizationCoefficient { value: f64 },

    #[error("environment qubit cannot dilate a channel with {count} Kraus operators")]
    TooManyKrausOperators { count: usize },

    #[error("invalid probability distribution: {reason}")]
    InvalidDistribution { reason: String },

    #[error("state is not in X form (off-pattern entry {magnitude:.3e} at ({row}, {col})); use concurrence_general")]
    NotXForm {
        row: usize,
        col: usize,
        magnitude: f64,
    },

    #[error("no closed-form chi for {kind}")]
    ChiUnsupported { kind: crate::channels::ChannelKind },

    #[error("expected a {expected}-dimensional state, got dim {dim}")]
    WrongDimension { expected: usize, dim: usize },

    #[error("sweep failed at p = {p}: {source}")]
    SweepRow {
        p: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("sweep config invalid: {reason}")]
    BadSweepConfig { reason: String },
}
