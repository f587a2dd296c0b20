//! Error type shared by every module of the kernel.
//!
//! All operations are exact; there is no "approximately failed". The only
//! resource-style error is [`Error::BudgetExceeded`], raised when a lazy tail
//! would have to be expanded past the configured run budget. Audits treat it
//! as a third verdict distinct from pass/fail.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Lazy tail expansion passed the configured per-query run budget.
    #[error("run budget exceeded while expanding a symbolic tail (budget {0})")]
    BudgetExceeded(usize),

    /// A raw run with zero length was handed to the normalizer.
    #[error("sign run with zero length")]
    InvalidRun,

    /// Concatenation after a tail segment outside the supported shapes.
    #[error("unsupported concatenation: {0}")]
    UnsupportedConcat(String),

    /// Transfinite repetition of a number containing symbolic tails.
    #[error("cannot scale or repeat a number containing symbolic tails")]
    UnsupportedScale,

    /// An operation restricted to tail-free numbers met a symbolic tail.
    #[error("operation requires a tail-free number: {0}")]
    UnsupportedTail(String),

    /// `nc_ordinal_bridge` on a number with minus signs.
    #[error("number is not an ordinal (contains minus signs)")]
    NotAnOrdinal,

    /// Dyadic evaluation of a number of infinite length.
    #[error("number has infinite length")]
    NotFinite,

    /// ω-map inversion failed.
    #[error("not in the image of the omega-map: {0}")]
    NotAMonomial(String),

    /// Left subtraction `a ∔ c = b` with `a > b`.
    #[error("left subtraction undefined: minuend exceeds subtrahend")]
    Undefined,

    /// Interval projection of a number outside the interval.
    #[error("number lies outside the requested interval")]
    OutOfInterval,

    /// A piecewise h/g rewrite whose pattern does not match the input.
    #[error("piecewise pattern does not match: {0}")]
    PatternMismatch(String),

    /// Input outside an operation's stated domain.
    #[error("domain error: {0}")]
    DomainError(String),

    /// Text that does not parse, with a position and (for non-normal but
    /// readable ordinal input) the normalized form.
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

impl Error {
    pub fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, col, msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
