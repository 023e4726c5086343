//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug)]
pub enum Error {
    /// Bad argument to an operation (index out of range, invalid family
    /// parameters, malformed descriptor, ...).
    #[error("input error: {0}")]
    Input(String),

    /// An enumeration-dependent operation was asked to run on a group larger
    /// than its configured cap.
    #[error("capability error: {what} requires order <= {cap}, group has order {order}")]
    CapExceeded {
        what: &'static str,
        cap: usize,
        order: usize,
    },

    /// A multiplication table failed validation (identity, latin-square,
    /// inverse or associativity law).
    #[error("invalid table: {0}")]
    InvalidTable(String),

    /// A power-commutator presentation did not collect to a group of the
    /// announced order. Carries the first failing check, e.g. an
    /// associativity triple.
    #[error("inconsistent presentation: {0}")]
    InconsistentPresentation(String),

    /// A semidirect-product action that is not an automorphism or not a
    /// homomorphism.
    #[error("construction error: {0}")]
    InvalidAction(String),

    /// Two membership methods returned different verdicts. This is always an
    /// implementation bug; the payload dumps everything needed to debug it.
    #[error("membership methods disagree on {group}: {details}")]
    MethodDisagreement { group: String, details: String },

    #[error("unknown theorem id: {0}")]
    UnknownTheorem(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}
