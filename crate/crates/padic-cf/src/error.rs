//! Error type shared across the crate.

use std::fmt;

/// Errors produced by the arithmetic substrate and the expansion drivers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// v_p(0) is undefined; callers that need it handle zero explicitly.
    ZeroValuation,
    /// Digit expansion of zero has no leading digit.
    ZeroExpansion,
    /// Inversion of a zero complete quotient.
    DivisionByZero,
    /// real sign of zero requested.
    ZeroSign,
    /// The argument to `u_sign` is not a p-adic unit.
    NotAUnit { valuation: i64 },
    /// D has no square root in Q_p.
    NotASquare { p: u64 },
    /// `hensel_sqrt` requires a unit argument; strip the even p-power first.
    NonUnitSquareInput { valuation: i64 },
    /// Digit stabilization for a quadratic irrational exceeded the precision cap.
    PrecisionExhausted { cap: u32 },
    /// A scheme-phase precondition failed inside `step`; indicates a driver bug.
    PhaseViolation {
        index: usize,
        alpha: String,
        reason: &'static str,
    },
    /// A convergent denominator vanished; the sequence is not expandable.
    ZeroDenominator { index: usize },
    /// An index-range precondition was violated.
    IndexRange { detail: String },
    /// Malformed or inadmissible input (bad prime, square D, zero denominator...).
    InvalidInput(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroValuation => write!(f, "valuation of zero undefined"),
            Error::ZeroExpansion => write!(f, "zero has no leading digit"),
            Error::DivisionByZero => write!(f, "division by zero complete quotient"),
            Error::ZeroSign => write!(f, "sign of zero undefined"),
            Error::NotAUnit { valuation } => {
                write!(f, "u defined only on units (got valuation {valuation})")
            }
            Error::NotASquare { p } => write!(f, "no square root in Q_{p}"),
            Error::NonUnitSquareInput { valuation } => {
                write!(f, "strip even p-power first (got valuation {valuation})")
            }
            Error::PrecisionExhausted { cap } => {
                write!(f, "digit stabilization exceeded the {cap}-digit precision cap")
            }
            Error::PhaseViolation { index, alpha, reason } => {
                write!(f, "phase precondition violated at step {index} on {alpha}: {reason}")
            }
            Error::ZeroDenominator { index } => write!(
                f,
                "continued fraction hits a zero denominator at index {index} — not expandable"
            ),
            Error::IndexRange { detail } => write!(f, "index out of range: {detail}"),
            Error::InvalidInput(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
