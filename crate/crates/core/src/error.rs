use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("rank {0} exceeds the supported maximum of {max}", max = crate::matrix::MAX_RANK)]
    RankTooLarge(usize),

    #[error("division by the zero rational function")]
    DivisionByZero,

    #[error("not a power series at 0: denominator has zero constant term")]
    NotPowerSeries,

    #[error("series coefficient {index} is not an integer")]
    NonIntegralSeries { index: usize },

    #[error("oracle horizon exceeded: {0}")]
    OracleHorizon(String),

    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("the Davis complex is only modelled for infinite groups")]
    DavisFiniteGroup,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
