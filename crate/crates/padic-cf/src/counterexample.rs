//! Deterministic generator for the bounded-valuation counterexample.
//!
//! The produced quotients follow the 3-step valuation pattern (one negative,
//! two units) yet keep v_p(B_n) ≥ −1 forever, so v_p(B_nB_{n+1}) cannot
//! diverge to −∞ and the continued fraction converges nowhere in Q_p. The
//! construction seeds b_2·b_3 + 1 = p — precisely the failure of the unit
//! product side condition — and then steers every later block so the
//! denominator valuations repeat the schedule (−1, −1, ≥ 0).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::analysis::PQSequence;
use crate::digits::mod_inverse;
use crate::error::{Error, Result};
use crate::quadratic::is_odd_prime;
use crate::rational::{valuation, Rational};

/// Residue of a rational unit modulo p (denominator coprime to p).
fn unit_residue(q: &Rational, p: u64) -> BigInt {
    let p_big = BigInt::from(p);
    let num = q.numer().mod_floor(&p_big);
    let den = q.denom().mod_floor(&p_big);
    let inv = mod_inverse(&den, &p_big).expect("denominator coprime to p");
    (num * inv).mod_floor(&p_big)
}

fn balanced_residue_of(q: &Rational, p: u64) -> i64 {
    let r = unit_residue(q, p).to_u64().expect("residue fits") as i64;
    if r > ((p - 1) / 2) as i64 {
        r - p as i64
    } else {
        r
    }
}

/// Builds the counterexample quotients b_0, …, b_{3·n_blocks}.
///
/// Fixed head: b_0 = 0 (unused), b_1 = 1/p, b_2 = 2, b_3 = (p−1)/2.
/// Each further block chooses b_{3n+4} ∈ {1/p, 2/p} by the valuation of
/// a_3 + a_2, sets b_{3n+5} = 1, and picks b_{3n+6} as the balanced
/// representative of −a_4·a_5⁻¹ mod p, where a_i are the p-free scalings
/// of the running denominators. Free choices are pinned for determinism.
pub fn build_counterexample(p: u64, n_blocks: usize) -> Result<PQSequence> {
    if !is_odd_prime(p) {
        return Err(Error::InvalidInput(format!("p = {p} is not an odd prime")));
    }
    if n_blocks < 1 {
        return Err(Error::InvalidInput("n_blocks must be at least 1".into()));
    }
    let p_rat = Rational::from(BigInt::from(p));
    let one = Rational::one();
    let inv_p = one.clone() / &p_rat;

    let mut terms = vec![
        Rational::zero(),
        inv_p.clone(),
        Rational::from(BigInt::from(2)),
        Rational::from(BigInt::from((p - 1) / 2)),
    ];

    // Convergent denominators alongside, seeded B_{-1} = 0, B_{-2} = 1.
    let (mut den_prev, mut den_prev2) = (Rational::zero(), Rational::one());
    for b in &terms {
        let den = b * &den_prev + &den_prev2;
        den_prev2 = std::mem::replace(&mut den_prev, den);
    }

    for _ in 1..n_blocks {
        // den_prev = B_{3n+3}, den_prev2 = B_{3n+2}.
        let a2 = &den_prev2 * &p_rat;
        let a3 = den_prev.clone();
        let sum = &a3 + &a2;
        let b4 = if !sum.is_zero() && valuation(&sum, p)? == 0 {
            inv_p.clone()
        } else {
            &inv_p + &inv_p
        };
        let b5 = one.clone();
        let den4 = &b4 * &den_prev + &den_prev2;
        let den5 = &b5 * &den4 + &den_prev;
        let a4 = &den4 * &p_rat;
        let a5 = &den5 * &p_rat;
        // b_{3n+6}·a_5 + a_4 ≡ 0 (mod p); a_4, a_5 are units so the
        // representative is a nonzero balanced digit.
        let target = -(&a4 / &a5);
        let b6 = Rational::from(BigInt::from(balanced_residue_of(&target, p)));
        let den6 = &b6 * &den5 + &den4;

        terms.push(b4);
        terms.push(b5);
        terms.push(b6);
        den_prev2 = den5;
        den_prev = den6;
    }

    PQSequence::new(p, terms)
}

/// True when v_p(B_n) ≥ bound for every convergent denominator.
pub fn certify_bounded(seq: &PQSequence, bound: i64) -> Result<bool> {
    for (i, (_, den)) in crate::analysis::convergents(seq).iter().enumerate() {
        if den.is_zero() {
            return Err(Error::ZeroDenominator { index: i });
        }
        if valuation(den, seq.p())? < bound {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest v_p(B_n) over the sequence.
pub fn min_denominator_valuation(seq: &PQSequence) -> Result<i64> {
    let mut min = i64::MAX;
    for (i, (_, den)) in crate::analysis::convergents(seq).iter().enumerate() {
        if den.is_zero() {
            return Err(Error::ZeroDenominator { index: i });
        }
        min = min.min(valuation(den, seq.p())?);
    }
    Ok(min)
}
