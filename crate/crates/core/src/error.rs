use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("precision context: {0}")]
    Precision(String),
    #[error("non-invertible series: constant term is zero")]
    NonInvertibleSeries,
    #[error("non-reversible series: {0}")]
    NonReversibleSeries(String),
    #[error("coefficient table too short: need index {needed}, table ends at {available}")]
    TableTooShort { needed: u32, available: u32 },
    #[error("{method} did not converge within {iterations} iterations")]
    NonConvergence { method: &'static str, iterations: u32 },
    #[error("pole of cosecant: sample point {0} is an integer")]
    CosecantPole(String),
    #[error("degenerate sample point: A_{k}({x}) vanishes")]
    DegenerateSamplePoint { k: u32, x: String },
    #[error("truncation N = {n} too small for |x| = {x}")]
    TruncationTooSmall { n: u64, x: String },
    #[error("argument {0} beyond the ascending-series cap; asymptotic range not supported")]
    BesselArgumentTooLarge(String),
    #[error("{0} is below the Gamma minimum on the positive axis")]
    BelowGammaMinimum(String),
    #[error("unknown method identifier `{0}`")]
    UnknownMethod(String),
    #[error("unknown approximant `{0}`")]
    UnknownApproximant(String),
    #[error("malformed record: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
