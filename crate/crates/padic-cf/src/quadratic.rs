//! Exact arithmetic on quadratic irrational elements of Q_p.
//!
//! A [`QuadIrr`] stores (a + b√d)/r with integer coefficients, gcd-normalized
//! and with positive denominator. The discriminant d must be a non-square
//! integer that is a square in Q_p (even valuation, unit part a quadratic
//! residue), so √d denotes the canonical p-adic branch: the root whose
//! constant balanced digit lies in {1, …, (p−1)/2}. Rational values are
//! carried with b = 0, which keeps the expansion step map closed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::digits::{digit_expansion, mod_inverse, DigitMode, DigitWindow};
use crate::error::{Error, Result};
use crate::rational::{split_p_power, Rational};

/// Hard cap for the digit-stabilization loop; pathological cancellation
/// becomes an explicit error instead of an unbounded search.
const PRECISION_CAP: u32 = 4096;

/// Trial-division primality check; the crate only admits odd primes.
pub fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    if p.is_multiple_of(3) {
        return p == 3;
    }
    let mut f = 5u64;
    while f.saturating_mul(f) <= p {
        if p.is_multiple_of(f) || p.is_multiple_of(f + 2) {
            return false;
        }
        f += 6;
    }
    true
}

fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let root = n.sqrt();
    &root * &root == *n
}

/// Euler's criterion for a unit residue mod an odd prime.
fn is_quadratic_residue(unit: &BigInt, p: u64) -> bool {
    let p_big = BigInt::from(p);
    let res = unit.mod_floor(&p_big);
    debug_assert!(!res.is_zero());
    res.modpow(&BigInt::from((p - 1) / 2), &p_big).is_one()
}

/// Square root of a unit residue mod p by Tonelli–Shanks.
fn sqrt_mod_p(unit: &BigInt, p: u64) -> Result<BigInt> {
    let p_big = BigInt::from(p);
    let n = unit.mod_floor(&p_big);
    if !is_quadratic_residue(&n, p) {
        return Err(Error::NotASquare { p });
    }
    if p % 4 == 3 {
        return Ok(n.modpow(&BigInt::from((p + 1) / 4), &p_big));
    }
    // Write p − 1 = q·2^s with q odd.
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    // Any quadratic non-residue works as the seed.
    let mut z = BigInt::from(2);
    while is_quadratic_residue(&z, p) {
        z += 1;
    }
    let mut c = z.modpow(&BigInt::from(q), &p_big);
    let mut t = n.modpow(&BigInt::from(q), &p_big);
    let mut x = n.modpow(&BigInt::from(q.div_ceil(2)), &p_big);
    let mut m = s;
    while !t.is_one() {
        let mut i = 0u32;
        let mut probe = t.clone();
        while !probe.is_one() {
            probe = (&probe * &probe).mod_floor(&p_big);
            i += 1;
        }
        let mut b = c.clone();
        for _ in 0..(m - i - 1) {
            b = (&b * &b).mod_floor(&p_big);
        }
        m = i;
        c = (&b * &b).mod_floor(&p_big);
        t = (&t * &c).mod_floor(&p_big);
        x = (&x * &b).mod_floor(&p_big);
    }
    Ok(x)
}

/// Canonical square root of a unit D modulo p^k.
///
/// Returns the unique x with 0 < x < p^k, x² ≡ D (mod p^k) and balanced
/// constant digit in {1, …, (p−1)/2}. Lifting is Newton's iteration, which
/// doubles the exact modulus each round.
pub fn hensel_sqrt(d: &BigInt, p: u64, k: u32) -> Result<BigInt> {
    if k == 0 {
        return Err(Error::InvalidInput("precision k must be positive".into()));
    }
    if d.is_zero() {
        return Err(Error::NonUnitSquareInput { valuation: i64::MAX });
    }
    let (v, unit) = split_p_power(d, p);
    if v != 0 {
        return Err(Error::NonUnitSquareInput { valuation: v });
    }
    let p_big = BigInt::from(p);
    let mut root = sqrt_mod_p(&unit, p)?;
    let mut prec = 1u32;
    let two = BigInt::from(2);
    while prec < k {
        prec = (prec * 2).min(k.next_power_of_two());
        let modulus = p_big.pow(prec);
        let inv_root = mod_inverse(&root, &modulus)
            .expect("root is a unit, invertible mod p^k");
        let inv_two = mod_inverse(&two, &modulus).expect("p is odd");
        root = ((&root + unit.mod_floor(&modulus) * inv_root) * inv_two).mod_floor(&modulus);
    }
    let modulus = p_big.pow(k);
    root = root.mod_floor(&modulus);
    // Fix the canonical branch by the residue mod p.
    let residue = root.mod_floor(&p_big).to_u64().expect("residue fits");
    if residue > (p - 1) / 2 {
        root = &modulus - root;
    }
    debug_assert!((&root * &root - d).mod_floor(&modulus).is_zero());
    Ok(root)
}

/// Discriminant used when embedding plain rationals: the smallest of
/// 1+p, 1+p² that is not a perfect square (its unit part is ≡ 1 mod p,
/// always a residue).
fn canonical_discriminant(p: u64) -> BigInt {
    let candidate = BigInt::from(p + 1);
    if is_perfect_square(&candidate) {
        BigInt::from(p * p + 1)
    } else {
        candidate
    }
}

/// Exact element (a + b√d)/r of Q_p.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadIrr {
    p: u64,
    a: BigInt,
    b: BigInt,
    d: BigInt,
    r: BigInt,
}

impl QuadIrr {
    /// Validated constructor for (a + b√d)/r in Q_p.
    ///
    /// Normalizes gcd(a, b, r) = 1 with r > 0. Rational values (b = 0) are
    /// canonicalized to the per-prime default discriminant so that equality
    /// stays structural.
    pub fn new(a: BigInt, b: BigInt, d: BigInt, r: BigInt, p: u64) -> Result<Self> {
        if !is_odd_prime(p) {
            return Err(Error::InvalidInput(format!("p = {p} is not an odd prime")));
        }
        if r.is_zero() {
            return Err(Error::InvalidInput("denominator R must be nonzero".into()));
        }
        if is_perfect_square(&d) {
            return Err(Error::InvalidInput(format!("D = {d} is a perfect square")));
        }
        let (vd, unit) = split_p_power(&d, p);
        if vd % 2 != 0 || !is_quadratic_residue(&unit, p) {
            return Err(Error::InvalidInput(format!("D = {d} is not a square in Q_{p}")));
        }
        let d = if b.is_zero() { canonical_discriminant(p) } else { d };
        Ok(Self { p, a, b, d, r }.normalized())
    }

    /// Embeds an exact rational as (num + 0√d)/den.
    pub fn from_rational(q: &Rational, p: u64) -> Result<Self> {
        if !is_odd_prime(p) {
            return Err(Error::InvalidInput(format!("p = {p} is not an odd prime")));
        }
        Ok(Self {
            p,
            a: q.numer().clone(),
            b: BigInt::zero(),
            d: canonical_discriminant(p),
            r: q.denom().clone(),
        }
        .normalized())
    }

    fn normalized(mut self) -> Self {
        if self.a.is_zero() && self.b.is_zero() {
            self.r = BigInt::one();
            return self;
        }
        let g = self.a.gcd(&self.b).gcd(&self.r);
        if !g.is_one() {
            self.a /= &g;
            self.b /= &g;
            self.r /= &g;
        }
        if self.r.is_negative() {
            self.a = -self.a;
            self.b = -self.b;
            self.r = -self.r.clone();
        }
        self
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn const_coeff(&self) -> &BigInt {
        &self.a
    }

    pub fn surd_coeff(&self) -> &BigInt {
        &self.b
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.d
    }

    pub fn denom(&self) -> &BigInt {
        &self.r
    }

    /// Exact zero test: d is a non-square, so a + b√d vanishes only at a = b = 0.
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The value as an exact rational when b = 0.
    pub fn as_rational(&self) -> Option<Rational> {
        self.b
            .is_zero()
            .then(|| Rational::new(self.a.clone(), self.r.clone()))
    }

    /// Exact difference α − q, staying in the same Q(√d).
    pub fn sub_rational(&self, q: &Rational) -> Self {
        // (a + b√d)/r − x/y = ((ay − rx) + by√d)/(ry)
        let x = q.numer();
        let y = q.denom();
        Self {
            p: self.p,
            a: &self.a * y - &self.r * x,
            b: &self.b * y,
            d: self.d.clone(),
            r: &self.r * y,
        }
        .normalized()
    }

    /// Exact reciprocal via the conjugate: 1/α = r(a − b√d)/(a² − b²d).
    ///
    /// Errors on zero, signalling finite termination to expansion drivers.
    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let norm = &self.a * &self.a - &self.b * &self.b * &self.d;
        debug_assert!(!norm.is_zero(), "d non-square makes the norm nonzero");
        Ok(Self {
            p: self.p,
            a: &self.r * &self.a,
            b: -(&self.r * &self.b),
            d: self.d.clone(),
            r: norm,
        }
        .normalized())
    }

    /// First `count` balanced digits starting at v_p(α).
    pub fn digits(&self, count: usize) -> Result<DigitWindow> {
        let (start, digits) = self.digits_mode(count, DigitMode::Balanced)?;
        DigitWindow::new(self.p, start, digits)
    }

    /// Digit engine shared with the Ruban (non-negative) truncation.
    ///
    /// For irrational values, √d is replaced by its Hensel lift at working
    /// precision m, starting from count + |start estimate| + 4 guard digits
    /// and doubling until two successive precisions agree on the leading
    /// index and on all requested digits; a certificate on the substitution
    /// error (v_p(α − approx) ≥ c + m) must also cover the window. The cap
    /// turns pathological cancellation into `PrecisionExhausted`.
    pub(crate) fn digits_mode(&self, count: usize, mode: DigitMode) -> Result<(i64, Vec<i64>)> {
        if self.is_zero() {
            return Err(Error::ZeroExpansion);
        }
        if count == 0 {
            return Err(Error::InvalidInput("digit count must be positive".into()));
        }
        if let Some(q) = self.as_rational() {
            return digit_expansion(&q, self.p, count, mode);
        }
        if count as u64 > PRECISION_CAP as u64 {
            return Err(Error::PrecisionExhausted { cap: PRECISION_CAP });
        }
        let (vd, unit) = split_p_power(&self.d, self.p);
        let half_vd = vd / 2;
        let (vb, _) = split_p_power(&self.b, self.p);
        let (vr, _) = split_p_power(&self.r, self.p);
        // v_p(α − approx_m) ≥ offset + m.
        let offset = half_vd + vb - vr;
        let start_estimate = {
            let surd_val = half_vd + vb;
            let low = if self.a.is_zero() {
                surd_val
            } else {
                split_p_power(&self.a, self.p).0.min(surd_val)
            };
            low - vr
        };
        let mut m = (count as u32 + start_estimate.unsigned_abs().min(1024) as u32 + 4)
            .next_power_of_two();
        let p_pow_half = BigInt::from(self.p).pow(half_vd.unsigned_abs() as u32);
        debug_assert!(half_vd >= 0, "even valuation of an integer discriminant");
        while m <= PRECISION_CAP {
            let coarse = self.approx_digits(&unit, &p_pow_half, m, count, mode)?;
            let fine = self.approx_digits(&unit, &p_pow_half, 2 * m, count, mode)?;
            if let (Some(c), Some(f)) = (&coarse, &fine) {
                let certified = c.0 + count as i64 <= offset + m as i64;
                if c == f && certified {
                    return Ok(c.clone());
                }
            }
            m *= 2;
        }
        Err(Error::PrecisionExhausted { cap: PRECISION_CAP })
    }

    /// Digits of the rational proxy (a + b·p^{vd/2}·hensel(unit))/r, or None
    /// when the proxy collapses to zero at this precision.
    fn approx_digits(
        &self,
        unit: &BigInt,
        p_pow_half: &BigInt,
        m: u32,
        count: usize,
        mode: DigitMode,
    ) -> Result<Option<(i64, Vec<i64>)>> {
        let root = hensel_sqrt(unit, self.p, m)?;
        let approx = Rational::new(&self.a + &self.b * p_pow_half * root, self.r.clone());
        if approx.is_zero() {
            return Ok(None);
        }
        digit_expansion(&approx, self.p, count, mode).map(Some)
    }

    /// v_p(α) for nonzero α, read off the digit expansion.
    pub fn valuation(&self) -> Result<i64> {
        if let Some(q) = self.as_rational() {
            return crate::rational::valuation(&q, self.p);
        }
        Ok(self.digits(1)?.start())
    }
}

impl std::fmt::Display for QuadIrr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.b.is_zero() {
            if self.r.is_one() {
                write!(f, "{}", self.a)
            } else {
                write!(f, "{}/{}", self.a, self.r)
            }
        } else {
            write!(f, "({} + {}√{})/{}", self.a, self.b, self.d, self.r)
        }
    }
}
