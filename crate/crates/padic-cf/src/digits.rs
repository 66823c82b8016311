//! Digit expansions of rationals in Q_p.
//!
//! A nonzero rational q = p^v · u (denominator of u coprime to p) has a
//! unique expansion q = Σ_{n≥v} a_n p^n once a residue system is fixed.
//! The crate works with balanced digits a_n ∈ {−(p−1)/2, …, (p−1)/2};
//! the non-negative system {0, …, p−1} is kept internal for the Ruban
//! truncation. Extraction is exact: each step subtracts the chosen
//! representative and divides by p in Q.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{p_free_part, Rational};

/// Residue system used when extracting digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum DigitMode {
    /// Representatives in {−(p−1)/2, …, (p−1)/2}.
    Balanced,
    /// Representatives in {0, …, p−1} (Ruban).
    NonNegative,
}

/// Finite slice of a balanced digit expansion, starting at index `start`
/// (the valuation of the represented value when nonempty and nonzero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitWindow {
    p: u64,
    start: i64,
    digits: Vec<i64>,
}

impl DigitWindow {
    /// Validated constructor: digits balanced, leading digit nonzero unless
    /// the window represents zero.
    pub fn new(p: u64, start: i64, digits: Vec<i64>) -> Result<Self> {
        let half = ((p - 1) / 2) as i64;
        if let Some(bad) = digits.iter().find(|d| d.abs() > half) {
            return Err(Error::InvalidInput(format!(
                "digit {bad} outside balanced range for p={p}"
            )));
        }
        if digits.first() == Some(&0) && digits.iter().any(|d| *d != 0) {
            return Err(Error::InvalidInput(
                "leading digit of a nonzero window must be nonzero".into(),
            ));
        }
        Ok(DigitWindow { p, start, digits })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn digits(&self) -> &[i64] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Digit at absolute index n, zero outside the window's span.
    pub fn digit_at(&self, n: i64) -> i64 {
        if n < self.start {
            return 0;
        }
        self.digits
            .get((n - self.start) as usize)
            .copied()
            .unwrap_or(0)
    }
}

/// Exact partial sum Σ digits[n]·p^n over the window's indices.
pub fn from_digits(w: &DigitWindow) -> Rational {
    partial_sum(w.p, w.start, &w.digits, w.start + w.digits.len() as i64)
}

/// Σ a_n p^n over indices start ≤ n < stop of the digit slice.
pub(crate) fn partial_sum(p: u64, start: i64, digits: &[i64], stop: i64) -> Rational {
    let take = (stop - start).clamp(0, digits.len() as i64) as usize;
    if take == 0 {
        return Rational::zero();
    }
    let p_big = BigInt::from(p);
    // Horner from the highest included index down to `start`.
    let mut acc = BigInt::zero();
    for d in digits[..take].iter().rev() {
        acc = acc * &p_big + BigInt::from(*d);
    }
    if start >= 0 {
        BigRational::from(acc * p_big.pow(start as u32))
    } else {
        BigRational::new(acc, p_big.pow((-start) as u32))
    }
}

/// Raw digit extraction engine shared by the balanced and Ruban paths.
///
/// Returns (start, digits) with `count` digits beginning at v_p(q); the
/// leading digit is nonzero.
pub(crate) fn digit_expansion(
    q: &Rational,
    p: u64,
    count: usize,
    mode: DigitMode,
) -> Result<(i64, Vec<i64>)> {
    if q.is_zero() {
        return Err(Error::ZeroExpansion);
    }
    if count == 0 {
        return Err(Error::InvalidInput("digit count must be positive".into()));
    }
    let (start, unit) = p_free_part(q, p)?;
    let p_big = BigInt::from(p);
    let half = (p - 1) / 2;
    let mut digits = Vec::with_capacity(count);
    let mut cur = unit;
    for _ in 0..count {
        if cur.is_zero() {
            digits.push(0);
            continue;
        }
        // Residue of num·den^{-1} mod p; den is coprime to p here.
        let num_res = cur.numer().mod_floor(&p_big);
        let den_res = cur.denom().mod_floor(&p_big);
        let den_inv = mod_inverse(&den_res, &p_big).expect("denominator coprime to p");
        let res = (num_res * den_inv).mod_floor(&p_big);
        let res_u64 = res.to_u64().expect("residue fits in u64");
        let digit = match mode {
            DigitMode::Balanced if res_u64 > half => res_u64 as i64 - p as i64,
            _ => res_u64 as i64,
        };
        digits.push(digit);
        cur = (cur - BigRational::from(BigInt::from(digit))) / BigRational::from(p_big.clone());
    }
    debug_assert!(digits[0] != 0);
    Ok((start, digits))
}

/// Balanced digit window of a nonzero rational: `count` digits starting
/// at index v_p(q), leading digit nonzero.
pub fn balanced_digits(q: &Rational, p: u64, count: usize) -> Result<DigitWindow> {
    let (start, digits) = digit_expansion(q, p, count, DigitMode::Balanced)?;
    Ok(DigitWindow { p, start, digits })
}

/// Modular inverse of a mod m for coprime a, m (extended Euclid).
pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(m);
    if a.is_zero() {
        return None;
    }
    let egcd = a.extended_gcd(m);
    if !egcd.gcd.is_one() {
        return None;
    }
    Some(egcd.x.mod_floor(m))
}
