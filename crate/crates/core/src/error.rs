use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid {kind} order {order}")]
    InvalidOrder { kind: &'static str, order: usize },

    #[error("amplitude ratio undefined: reference symbol is zero")]
    UndefinedRatio,

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("power division factor {0} outside (0, 1)")]
    InvalidSplit(f64),

    #[error(
        "equal power division requires equal-modulus symbols (|s1| = {s1_abs}, |s2| = {s2_abs})"
    )]
    PskRequired { s1_abs: f64, s2_abs: f64 },

    #[error("user 1 must have the stronger channel (gamma1 = {gamma1}, gamma2 = {gamma2})")]
    InvalidOrdering { gamma1: f64, gamma2: f64 },

    #[error("r1 = {target} outside frontier range [0, {max}]")]
    OutOfRange { target: f64, max: f64 },

    #[error("invalid configuration `{key}`: {reason}")]
    Config { key: String, reason: String },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn config(key: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Config {
            key: key.into(),
            reason: reason.into(),
        }
    }
}
