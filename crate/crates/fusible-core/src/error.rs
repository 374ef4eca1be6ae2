//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// All failure modes of the library.
///
/// `BudgetExhausted` and `ResourceExhausted` are expected outcomes for many
/// inputs (the quantities involved grow faster than any primitive recursive
/// function); they carry enough state to reproduce and report the frontier
/// that was reached.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Checked fuse with `|y - x| >= 1`.
    #[error("fuse gap: |{y} - {x}| >= 1")]
    FuseGap { x: String, y: String },

    /// `ceil_log2` of a non-positive rational, or a non-positive value where
    /// a positive one is required.
    #[error("non-positive argument: {0}")]
    NonPositive(String),

    /// A malformed number, tree, or ordinal literal.
    #[error("parse error: {0}")]
    Parse(String),

    /// A rational that is not a dyadic where a dyadic is required.
    #[error("not a dyadic rational: {0}")]
    NotDyadic(String),

    /// A representation tree violating `|y - x| < 1` at some internal node.
    /// The path is a string of `L`/`R` steps from the root.
    #[error("invalid representation at node '{path}': |{right} - {left}| >= 1")]
    InvalidRep {
        path: String,
        left: String,
        right: String,
    },

    /// Step or depth budget ran out. `frontier` describes the innermost
    /// pending state at the moment of exhaustion.
    #[error("budget exhausted after {steps} steps (depth {depth}): {frontier}")]
    BudgetExhausted {
        steps: u64,
        depth: usize,
        frontier: String,
    },

    /// A size guard tripped: bit-size limit, enumeration cap, cache cap, or
    /// argument magnitude cap.
    #[error("resource exhausted: {what} (limit {limit})")]
    ResourceExhausted { what: String, limit: u64 },

    /// Canonical sequence of the ordinal 0.
    #[error("canonical sequence of 0 is undefined")]
    ZeroOrdinal,

    /// Left subtraction `-b + a` with `b > a`.
    #[error("left subtraction underflow: {b} > {a}")]
    Underflow { b: String, a: String },

    /// χ of an ordinal that is not a limit.
    #[error("not a limit ordinal: {0}")]
    NotLimit(String),

    /// No recurrence clause matches the given (well-formed) ordinal shape.
    /// This is reported rather than patched; it indicates a gap in the
    /// clause system, not a caller error.
    #[error("no recurrence clause matches {0}")]
    UnmatchedClause(String),
}

impl Error {
    /// Stable machine-readable tag, used by the CLI failure records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::FuseGap { .. } => "fuse-gap",
            Error::NonPositive(_) => "non-positive",
            Error::Parse(_) => "parse",
            Error::NotDyadic(_) => "not-dyadic",
            Error::InvalidRep { .. } => "invalid-rep",
            Error::BudgetExhausted { .. } => "budget-exhausted",
            Error::ResourceExhausted { .. } => "resource-exhausted",
            Error::ZeroOrdinal => "zero-ordinal",
            Error::Underflow { .. } => "underflow",
            Error::NotLimit(_) => "not-limit",
            Error::UnmatchedClause(_) => "unmatched-clause",
        }
    }
}
