//! Truncation functions on digit expansions.
//!
//! `s` keeps the digits at indices ≤ 0, `t` the digits at indices < 0, and
//! `u` flags the constant digit of a unit with ±1. `s` plays the role the
//! floor function has for real continued fractions; all three return exact
//! rationals in Z[1/p].

use num_traits::Zero;

use crate::digits::{digit_expansion, partial_sum, DigitMode};
use crate::error::{Error, Result};
use crate::quadratic::QuadIrr;
use crate::rational::{valuation, Rational};

pub use crate::rational::real_sign;

/// Truncation through index `stop` (exclusive) of a value's expansion,
/// starting from its own valuation.
fn truncate_rational(q: &Rational, p: u64, stop: i64, mode: DigitMode) -> Result<Rational> {
    if q.is_zero() {
        return Err(Error::ZeroExpansion);
    }
    let v = valuation(q, p)?;
    if v >= stop {
        return Ok(Rational::zero());
    }
    let count = (stop - v) as usize;
    let (start, digits) = digit_expansion(q, p, count, mode)?;
    Ok(partial_sum(p, start, &digits, stop))
}

fn truncate_quad(alpha: &QuadIrr, stop: i64, mode: DigitMode) -> Result<Rational> {
    if alpha.is_zero() {
        return Err(Error::ZeroExpansion);
    }
    if let Some(q) = alpha.as_rational() {
        return truncate_rational(&q, alpha.prime(), stop, mode);
    }
    let v = alpha.valuation()?;
    if v >= stop {
        return Ok(Rational::zero());
    }
    let count = (stop - v) as usize;
    let (start, digits) = alpha.digits_mode(count, mode)?;
    Ok(partial_sum(alpha.prime(), start, &digits, stop))
}

/// s(α) = Σ_{n≤0} a_n p^n over the balanced expansion; 0 when v_p(α) ≥ 1.
pub fn s_floor(q: &Rational, p: u64) -> Result<Rational> {
    truncate_rational(q, p, 1, DigitMode::Balanced)
}

/// t(α) = Σ_{n<0} a_n p^n; 0 when v_p(α) ≥ 0.
pub fn t_floor(q: &Rational, p: u64) -> Result<Rational> {
    truncate_rational(q, p, 0, DigitMode::Balanced)
}

/// Ruban truncation: digits at indices ≤ 0 in the {0, …, p−1} system.
pub fn ruban_floor(q: &Rational, p: u64) -> Result<Rational> {
    truncate_rational(q, p, 1, DigitMode::NonNegative)
}

/// Unit flag of the constant digit a_0 of a p-adic unit:
/// +1 on {+2, …, (p−1)/2} ∪ {−1}, −1 on {−(p−1)/2, …, −2} ∪ {+1}.
pub fn u_sign(q: &Rational, p: u64) -> Result<i32> {
    if q.is_zero() {
        return Err(Error::ZeroExpansion);
    }
    let v = valuation(q, p)?;
    if v != 0 {
        return Err(Error::NotAUnit { valuation: v });
    }
    let (_, digits) = digit_expansion(q, p, 1, DigitMode::Balanced)?;
    Ok(classify_constant_digit(digits[0]))
}

pub(crate) fn classify_constant_digit(a0: i64) -> i32 {
    debug_assert!(a0 != 0);
    if a0 >= 2 || a0 == -1 {
        1
    } else {
        -1
    }
}

impl QuadIrr {
    /// s-truncation of a nonzero quadratic irrational.
    pub fn s_floor(&self) -> Result<Rational> {
        truncate_quad(self, 1, DigitMode::Balanced)
    }

    /// t-truncation of a nonzero quadratic irrational.
    pub fn t_floor(&self) -> Result<Rational> {
        truncate_quad(self, 0, DigitMode::Balanced)
    }

    /// Ruban s-truncation (non-negative representatives).
    pub fn ruban_floor(&self) -> Result<Rational> {
        truncate_quad(self, 1, DigitMode::NonNegative)
    }

    /// Unit flag of the constant digit; errors unless v_p(α) = 0.
    pub fn u_sign(&self) -> Result<i32> {
        if self.is_zero() {
            return Err(Error::ZeroExpansion);
        }
        let v = self.valuation()?;
        if v != 0 {
            return Err(Error::NotAUnit { valuation: v });
        }
        let (_, digits) = self.digits_mode(1, DigitMode::Balanced)?;
        Ok(classify_constant_digit(digits[0]))
    }
}
