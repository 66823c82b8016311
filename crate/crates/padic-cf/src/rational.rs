//! Exact rational scalars and the p-adic valuation.
//!
//! Every scalar in the crate (partial quotients, convergents, digit
//! reassemblies) is a [`Rational`]: an arbitrary-precision fraction kept
//! reduced with a positive denominator, so equality is structural.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Reduced arbitrary-precision fraction with positive denominator.
/// Zero is stored uniquely as 0/1.
pub type Rational = BigRational;

/// Builds a reduced rational from integer parts, rejecting a zero denominator.
pub fn rational(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Multiplicity of `p` in a nonzero integer, together with the cofactor.
pub(crate) fn split_p_power(n: &BigInt, p: u64) -> (i64, BigInt) {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut mult = 0i64;
    let mut rest = n.clone();
    loop {
        let (q, r) = num_integer::Integer::div_rem(&rest, &p);
        if !r.is_zero() {
            return (mult, rest);
        }
        rest = q;
        mult += 1;
    }
}

/// p-adic valuation v_p(q) of a nonzero rational.
///
/// Extends the integer valuation by v_p(a/b) = v_p(a) − v_p(b).
pub fn valuation(q: &Rational, p: u64) -> Result<i64> {
    if q.is_zero() {
        return Err(Error::ZeroValuation);
    }
    let (vn, _) = split_p_power(q.numer(), p);
    let (vd, _) = split_p_power(q.denom(), p);
    Ok(vn - vd)
}

/// Valuation with v_p(0) = +infinity encoded as `None`.
pub fn valuation_opt(q: &Rational, p: u64) -> Option<i64> {
    valuation(q, p).ok()
}

/// Strips the p-power from a nonzero rational: returns (v, u) with
/// q = p^v · u and both parts of u coprime to p.
pub fn p_free_part(q: &Rational, p: u64) -> Result<(i64, Rational)> {
    if q.is_zero() {
        return Err(Error::ZeroValuation);
    }
    let (vn, num) = split_p_power(q.numer(), p);
    let (vd, den) = split_p_power(q.denom(), p);
    Ok((vn - vd, BigRational::new(num, den)))
}

/// Sign of a nonzero rational as a real number.
pub fn real_sign(q: &Rational) -> Result<i32> {
    if q.is_zero() {
        return Err(Error::ZeroSign);
    }
    Ok(if q.is_negative() { -1 } else { 1 })
}

/// Parses "a/b" or "a" into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("malformed fraction `{s}`"));
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num_str.trim().parse().map_err(|_| bad())?;
    let den: BigInt = den_str.trim().parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::InvalidInput(format!("zero denominator in `{s}`")));
    }
    Ok(BigRational::new(num, den))
}

/// Canonical "num/den" form in lowest terms, e.g. "-3/5", "2/1".
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    /// Trial-division oracle: exponent of p in the factorization of |n|.
    fn factor_multiplicity(mut n: i64, p: i64) -> i64 {
        assert!(n != 0);
        n = n.abs();
        let mut count = 0;
        while n % p == 0 {
            n /= p;
            count += 1;
        }
        count
    }

    #[test]
    fn valuation_of_unit_is_zero() {
        assert_eq!(valuation(&rational(1, 1), 5).unwrap(), 0);
    }

    #[test]
    fn valuation_matches_factorization_oracle() {
        // 7/5 at p=5 and 18 at p=3, frozen from the trial-division oracle.
        assert_eq!(factor_multiplicity(7, 5) - factor_multiplicity(5, 5), -1);
        assert_eq!(valuation(&rational(7, 5), 5).unwrap(), -1);
        assert_eq!(factor_multiplicity(18, 3), 2);
        assert_eq!(valuation(&rational(18, 1), 3).unwrap(), 2);
    }

    #[test]
    fn valuation_of_zero_is_an_error() {
        assert_eq!(valuation(&Rational::zero(), 5), Err(Error::ZeroValuation));
    }

    #[test]
    fn p_free_part_strips_all_p_powers() {
        let (v, u) = p_free_part(&rational(50, 3), 5).unwrap();
        assert_eq!(v, 2);
        assert_eq!(u, rational(2, 3));
        let (v, u) = p_free_part(&rational(3, 25), 5).unwrap();
        assert_eq!(v, -2);
        assert_eq!(u, rational(3, 1));
    }

    #[test]
    fn parse_and_format_round_trip() {
        let q = parse_rational("-6/10").unwrap();
        assert_eq!(q, rational(-3, 5));
        assert_eq!(format_rational(&q), "-3/5");
        assert_eq!(parse_rational("7").unwrap(), rational(7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/b").is_err());
    }

    #[test]
    fn real_sign_cases() {
        assert_eq!(real_sign(&rational(2, 5)).unwrap(), 1);
        assert_eq!(real_sign(&rational(-3, 5)).unwrap(), -1);
        assert_eq!(real_sign(&rational(-7, 1)).unwrap(), -1);
        assert!(real_sign(&Rational::zero()).is_err());
    }

    proptest::proptest! {
        #[test]
        fn valuation_is_additive(a in -2000i64..2000, b in 1i64..2000, c in -2000i64..2000, d in 1i64..2000) {
            proptest::prop_assume!(a != 0 && c != 0);
            let x = rational(a, b);
            let y = rational(c, d);
            let p = 5;
            let vx = valuation(&x, p).unwrap();
            let vy = valuation(&y, p).unwrap();
            proptest::prop_assert_eq!(valuation(&(&x * &y), p).unwrap(), vx + vy);
            let sum = &x + &y;
            if !sum.is_zero() {
                let vs = valuation(&sum, p).unwrap();
                proptest::prop_assert!(vs >= vx.min(vy));
                if vx != vy {
                    proptest::prop_assert_eq!(vs, vx.min(vy));
                }
            }
        }

        #[test]
        fn p_free_part_reassembles(a in -5000i64..5000, b in 1i64..5000) {
            proptest::prop_assume!(a != 0);
            let q = rational(a, b);
            let (v, u) = p_free_part(&q, 7).unwrap();
            let p_pow = if v >= 0 {
                BigRational::from(BigInt::from(7).pow(v as u32))
            } else {
                BigRational::new(BigInt::one(), BigInt::from(7).pow((-v) as u32))
            };
            proptest::prop_assert_eq!(u * p_pow, q);
        }
    }
}
