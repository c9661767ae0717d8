use thiserror::Error;

use crate::exact_arith::Int;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid modulus {0}: must be positive")]
    InvalidModulus(Int),

    #[error("gcd(0, 0) is undefined")]
    UndefinedGcd,

    #[error("invalid exponent {0}: must be non-negative")]
    InvalidExponent(Int),

    /// `[r, u, v, w]` with `u + v + w != r` or a negative part.
    #[error("invalid partition: {} + {} + {} != {}", .0[1], .0[2], .0[3], .0[0])]
    InvalidPartition(Box<[Int; 4]>),

    #[error("{name} = {value} is out of range: {expected}")]
    OutOfRange {
        name: &'static str,
        value: Int,
        expected: &'static str,
    },

    #[error("{0} and {1} are not coprime")]
    NotCoprime(Int, Int),

    #[error("expected {expected} values, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("method {method} does not support {detail}")]
    UnsupportedMethod {
        method: &'static str,
        detail: String,
    },

    #[error("{0}")]
    Usage(String),
}

impl Error {
    pub(crate) fn out_of_range(name: &'static str, value: &Int, expected: &'static str) -> Self {
        Error::OutOfRange {
            name,
            value: value.clone(),
            expected,
        }
    }
}
