use thiserror::Error;

use crate::scalar::Domain;

/// Errors raised by the algebra layers and the pipelines built on them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("scalar domain mismatch: {left} vs {right}")]
    DomainMismatch { left: Domain, right: Domain },

    #[error("negative exponent {0}")]
    NegativeExponent(i64),

    #[error("variable index {index} out of range for arity {arity}")]
    IndexOutOfRange { index: usize, arity: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("prime {0} is too small (need p >= 5)")]
    SmallPrime(u64),

    #[error("bad prime {p}: a coefficient denominator is divisible by p")]
    BadPrime { p: u64 },

    #[error("enumeration of P^{n}(F_{p}) exceeds the size cap")]
    SizeCap { n: usize, p: u64 },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("input is not homogeneous")]
    NonHomogeneous,

    #[error("zero input: {0}")]
    ZeroInput(&'static str),

    #[error("division by zero")]
    DivisionByZero,

    #[error("weight condition violated: sum of d_i * lambda_i = {residual}")]
    WeightCondition { residual: String },

    #[error("rank {rank} below required {required}")]
    RankDeficient { rank: usize, required: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("certification failed at stage `{stage}`: {detail}")]
    Certification { stage: &'static str, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
