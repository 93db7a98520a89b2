//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid recurrence spec: {0}")]
    InvalidSpec(String),

    #[error("unknown sequence `{0}`")]
    UnknownSequence(String),

    #[error("index {n} is negative and the trailing coefficient {last_coeff} is not a unit")]
    BackwardExtension { n: i64, last_coeff: String },

    #[error("modulus must be at least {min} (got {got})")]
    BadModulus { got: u64, min: u64 },

    #[error("radicand {0} is zero or a perfect square")]
    DegenerateRadicand(i64),

    #[error("mixed radicands {0} and {1} in one operation")]
    MixedRadicands(i64, i64),

    #[error("division by zero element of Q(sqrt {0})")]
    ZeroDivision(i64),

    #[error("characteristic discriminant r^2+4s vanishes for r={r}, s={s}")]
    ZeroDiscriminant { r: i64, s: i64 },

    #[error("discriminant {delta} of (r,s)=({r},{s}) is not a positive non-square")]
    NotRealQuadratic { r: i64, s: i64, delta: i64 },

    #[error("discriminant overflow for r={r}, s={s}")]
    DiscriminantOverflow { r: i64, s: i64 },

    #[error("state space of size {states} modulo {modulus} exceeds the cap of {cap}")]
    StateSpaceTooLarge {
        modulus: u64,
        states: u128,
        cap: u128,
    },

    #[error("state map is not invertible modulo {modulus}")]
    NonInvertibleState { modulus: u64 },

    #[error("enumeration of {count} tilings exceeds the cap of {cap}")]
    EnumerationTooLarge { count: String, cap: u64 },

    #[error("invalid sweep range: {0}")]
    InvalidRange(String),

    #[error("output of {digits} decimal digits exceeds the guard (pass --force to override)")]
    OutputTooLarge { digits: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
