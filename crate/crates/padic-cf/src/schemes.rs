//! The expansion algorithms and the trace driver.
//!
//! Five single-step maps share the shape b_n = truncation(α_n),
//! α_{n+1} = 1/(α_n − b_n); they differ in which truncation runs at which
//! phase of the step index:
//!
//! * `browkin1` — s every step;
//! * `browkin2` — s on even steps, the t/sign correction on odd steps;
//! * `new1` — period 3: s, t/sign, u;
//! * `new2` — period 3: s, t/sign, s − u;
//! * `ruban` — s with non-negative representatives every step.
//!
//! [`expand`] drives a map to exact termination (α_n = b_n), a detected
//! cycle of complete quotients at matching phase, or the step budget.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::quadratic::QuadIrr;
use crate::rational::{p_free_part, real_sign, valuation_opt, Rational};

/// Tag of one of the five expansion algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Browkin1,
    Browkin2,
    New1,
    New2,
    Ruban,
}

impl Scheme {
    /// Phase period of the step map: the branch taken at step n depends on
    /// n modulo this length.
    pub fn period_length(self) -> usize {
        match self {
            Scheme::Browkin1 | Scheme::Ruban => 1,
            Scheme::Browkin2 => 2,
            Scheme::New1 | Scheme::New2 => 3,
        }
    }

    /// Smallest admissible prime. The 3-step schemes need p ≥ 5: for p = 3
    /// the u-split of the constant digit leaves no room.
    pub fn min_prime(self) -> u64 {
        match self {
            Scheme::New1 | Scheme::New2 => 5,
            _ => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Browkin1 => "browkin1",
            Scheme::Browkin2 => "browkin2",
            Scheme::New1 => "new1",
            Scheme::New2 => "new2",
            Scheme::Ruban => "ruban",
        }
    }

    pub const ALL: [Scheme; 5] = [
        Scheme::Browkin1,
        Scheme::Browkin2,
        Scheme::New1,
        Scheme::New2,
        Scheme::Ruban,
    ];
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "browkin1" => Ok(Scheme::Browkin1),
            "browkin2" => Ok(Scheme::Browkin2),
            "new1" => Ok(Scheme::New1),
            "new2" => Ok(Scheme::New2),
            "ruban" => Ok(Scheme::Ruban),
            other => Err(Error::InvalidInput(format!("unknown algorithm `{other}`"))),
        }
    }
}

/// Continuation of a single step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepOutcome {
    /// The next complete quotient 1/(α − b).
    Continue(QuadIrr),
    /// α = b exactly; the expansion terminates here.
    Finished,
}

fn phase_violation(n: usize, alpha: &QuadIrr, reason: &'static str) -> Error {
    Error::PhaseViolation {
        index: n,
        alpha: alpha.to_string(),
        reason,
    }
}

/// The t-branch shared by browkin2/new1/new2 at their middle phase:
/// b = t(α) when v_p(α − t(α)) = 0, and b = t(α) − sign(t(α)) otherwise —
/// α = t(α) exactly counts as valuation +∞, hence as "otherwise".
fn t_branch(alpha: &QuadIrr, n: usize) -> Result<Rational> {
    let t = alpha.t_floor()?;
    if t.is_zero() {
        // Only reachable when v_p(α) ≥ 0, which the drivers exclude at t-phases.
        return Err(phase_violation(n, alpha, "t-truncation vanished at a t-phase"));
    }
    let tail = alpha.sub_rational(&t);
    let unit_tail = !tail.is_zero() && tail.valuation()? == 0;
    if unit_tail {
        Ok(t)
    } else {
        let correction = BigInt::from(real_sign(&t).expect("t nonzero"));
        Ok(t - Rational::from(correction))
    }
}

fn partial_quotient(alpha: &QuadIrr, n: usize, scheme: Scheme) -> Result<Rational> {
    match scheme {
        Scheme::Browkin1 => alpha.s_floor(),
        Scheme::Ruban => alpha.ruban_floor(),
        Scheme::Browkin2 => {
            if n.is_multiple_of(2) {
                alpha.s_floor()
            } else {
                t_branch(alpha, n)
            }
        }
        Scheme::New1 => match n % 3 {
            0 => alpha.s_floor(),
            1 => t_branch(alpha, n),
            _ => {
                let u = alpha
                    .u_sign()
                    .map_err(|_| phase_violation(n, alpha, "u requested on a non-unit"))?;
                Ok(Rational::from(BigInt::from(u)))
            }
        },
        Scheme::New2 => match n % 3 {
            0 => alpha.s_floor(),
            1 => t_branch(alpha, n),
            _ => {
                let u = alpha
                    .u_sign()
                    .map_err(|_| phase_violation(n, alpha, "u requested on a non-unit"))?;
                Ok(alpha.s_floor()? - Rational::from(BigInt::from(u)))
            }
        },
    }
}

/// One step of a scheme: the partial quotient at index n and either the
/// next complete quotient or exact termination.
pub fn step(alpha: &QuadIrr, n: usize, scheme: Scheme) -> Result<(Rational, StepOutcome)> {
    if alpha.is_zero() {
        return Err(phase_violation(n, alpha, "zero complete quotient"));
    }
    let b = partial_quotient(alpha, n, scheme)?;
    let delta = alpha.sub_rational(&b);
    if delta.is_zero() {
        Ok((b, StepOutcome::Finished))
    } else {
        Ok((b, StepOutcome::Continue(delta.invert()?)))
    }
}

/// Per-step record of an expansion run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub index: usize,
    /// Partial quotient b_n.
    pub quotient: Rational,
    /// v_p(b_n); `None` encodes +∞ (only b_0 = 0 can produce it).
    pub quotient_valuation: Option<i64>,
    /// Complete quotient α_n before the step.
    pub complete: QuadIrr,
    /// Convergent numerator A_n.
    pub convergent_num: Rational,
    /// Convergent denominator B_n.
    pub convergent_den: Rational,
    /// v_p(B_n); `None` encodes +∞.
    pub den_valuation: Option<i64>,
}

/// How an expansion run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpansionStatus {
    /// α_N = b_N exactly.
    Finite,
    /// α_{preperiod + period} = α_{preperiod} at matching phase.
    Periodic { preperiod: usize, period: usize },
    /// Step budget exhausted.
    Truncated,
}

/// Full record of an expansion: quotients, complete quotients, convergents
/// and their valuations, plus the termination status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionTrace {
    pub p: u64,
    pub scheme: Scheme,
    pub input: QuadIrr,
    pub steps: Vec<TraceStep>,
    pub status: ExpansionStatus,
}

impl ExpansionTrace {
    pub fn quotients(&self) -> Vec<Rational> {
        self.steps.iter().map(|s| s.quotient.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// First `count` partial quotients, continuing a periodic trace through
    /// its cycle. `None` when the trace cannot supply that many (a finite
    /// expansion that stopped earlier, or a truncated run).
    pub fn quotients_extended(&self, count: usize) -> Option<Vec<Rational>> {
        let stored = self.steps.len();
        if count <= stored {
            return Some(self.steps[..count].iter().map(|s| s.quotient.clone()).collect());
        }
        match self.status {
            ExpansionStatus::Periodic { period, .. } => {
                let mut out: Vec<Rational> = self.quotients();
                for i in stored..count {
                    out.push(out[i - period].clone());
                }
                Some(out)
            }
            _ => None,
        }
    }

    /// Height |num| + |den| of each rational complete quotient α_{3k} for
    /// k ≥ 1. These are p-adic units under the 3-step schemes, and on
    /// rational input the second new scheme drives this sequence down,
    /// which forces termination. α_0 is excluded: the unit decomposition
    /// behind the descent argument only exists from the first full block
    /// onward (b_0 is an arbitrary truncation, not a ±1 unit quotient).
    pub fn descent_heights(&self) -> Vec<BigInt> {
        self.steps
            .iter()
            .skip(3)
            .step_by(3)
            .filter_map(|s| {
                let q = s.complete.as_rational()?;
                let (v, unit) = p_free_part(&q, self.p).ok()?;
                (v == 0).then(|| unit.numer().abs() + unit.denom())
            })
            .collect()
    }
}

/// Expands `input` under `scheme` until exact termination, a detected
/// period, or `max_steps` quotients.
///
/// Periodicity keys on (normalized complete quotient, step phase): the
/// schemes are phase-dependent, so equal quotients at different phases do
/// not imply a cycle.
pub fn expand(input: &QuadIrr, scheme: Scheme, max_steps: usize) -> Result<ExpansionTrace> {
    let p = input.prime();
    if p < scheme.min_prime() {
        return Err(Error::InvalidInput(format!(
            "{scheme} requires p >= {}, got {p}",
            scheme.min_prime()
        )));
    }
    if max_steps == 0 {
        return Err(Error::InvalidInput("max_steps must be positive".into()));
    }

    let mut steps = Vec::new();
    let mut status = ExpansionStatus::Truncated;

    if input.is_zero() {
        // The expansion of zero is the single quotient b_0 = 0.
        let zero = Rational::zero();
        steps.push(TraceStep {
            index: 0,
            quotient: zero.clone(),
            quotient_valuation: None,
            complete: input.clone(),
            convergent_num: zero,
            convergent_den: Rational::one(),
            den_valuation: Some(0),
        });
        return Ok(ExpansionTrace {
            p,
            scheme,
            input: input.clone(),
            steps,
            status: ExpansionStatus::Finite,
        });
    }

    let plen = scheme.period_length();
    let mut seen: HashMap<(QuadIrr, usize), usize> = HashMap::new();
    let mut alpha = input.clone();
    // Virtual seeds A_{-1} = 1, A_{-2} = 0 and B_{-1} = 0, B_{-2} = 1.
    let (mut num_prev, mut num_prev2) = (Rational::one(), Rational::zero());
    let (mut den_prev, mut den_prev2) = (Rational::zero(), Rational::one());

    for n in 0..max_steps {
        let phase = n % plen;
        if let Some(&first) = seen.get(&(alpha.clone(), phase)) {
            status = ExpansionStatus::Periodic {
                preperiod: first,
                period: n - first,
            };
            break;
        }
        seen.insert((alpha.clone(), phase), n);

        let (b, outcome) = step(&alpha, n, scheme)?;
        let num = &b * &num_prev + &num_prev2;
        let den = &b * &den_prev + &den_prev2;
        steps.push(TraceStep {
            index: n,
            quotient: b.clone(),
            quotient_valuation: valuation_opt(&b, p),
            complete: alpha.clone(),
            convergent_num: num.clone(),
            convergent_den: den.clone(),
            den_valuation: valuation_opt(&den, p),
        });
        num_prev2 = std::mem::replace(&mut num_prev, num);
        den_prev2 = std::mem::replace(&mut den_prev, den);

        match outcome {
            StepOutcome::Finished => {
                status = ExpansionStatus::Finite;
                break;
            }
            StepOutcome::Continue(next) => alpha = next,
        }
    }

    Ok(ExpansionTrace {
        p,
        scheme,
        input: input.clone(),
        steps,
        status,
    })
}

/// A failed consistency check inside [`verify_trace`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceViolation {
    pub step: Option<usize>,
    pub message: String,
}

impl fmt::Display for TraceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.step {
            Some(n) => write!(f, "step {n}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

fn violation(step: impl Into<Option<usize>>, message: impl Into<String>) -> TraceViolation {
    TraceViolation {
        step: step.into(),
        message: message.into(),
    }
}

/// Re-derives every complete quotient and convergent of a trace from
/// scratch and checks the per-scheme valuation pattern. Violations come
/// back as data; an empty list means the trace is internally consistent.
pub fn verify_trace(trace: &ExpansionTrace) -> Vec<TraceViolation> {
    let mut out = Vec::new();
    let p = trace.p;
    let steps = &trace.steps;
    if steps.is_empty() {
        out.push(violation(None, "trace has no steps"));
        return out;
    }
    if steps[0].complete != trace.input {
        out.push(violation(0, "first complete quotient differs from the input"));
    }
    for (i, s) in steps.iter().enumerate() {
        if s.index != i {
            out.push(violation(i, format!("step index {} out of order", s.index)));
        }
    }

    // α_{n+1} = 1/(α_n − b_n) exactly, including the wrap of a periodic cycle
    // and the exact stop of a finite one.
    for w in steps.windows(2) {
        let (cur, next) = (&w[0], &w[1]);
        let delta = cur.complete.sub_rational(&cur.quotient);
        match delta.invert() {
            Ok(derived) if derived == next.complete => {}
            Ok(_) => out.push(violation(
                cur.index,
                "next complete quotient is not 1/(alpha - b)",
            )),
            Err(_) => out.push(violation(
                cur.index,
                "alpha = b inside the trace but the trace continues",
            )),
        }
    }
    let last = steps.last().expect("nonempty");
    match trace.status {
        ExpansionStatus::Finite => {
            if !last.complete.sub_rational(&last.quotient).is_zero() {
                out.push(violation(last.index, "finite status but last alpha differs from last b"));
            }
        }
        ExpansionStatus::Periodic { preperiod, period } => {
            if period == 0 || preperiod + period != steps.len() {
                out.push(violation(None, "periodic status inconsistent with trace length"));
            } else if period % trace.scheme.period_length() != 0 {
                out.push(violation(
                    None,
                    "cycle length is not a multiple of the scheme phase period",
                ));
            } else {
                let delta = last.complete.sub_rational(&last.quotient);
                match delta.invert() {
                    Ok(wrap) if wrap == steps[preperiod].complete => {}
                    _ => out.push(violation(
                        last.index,
                        "periodic status but the cycle does not close",
                    )),
                }
            }
        }
        ExpansionStatus::Truncated => {}
    }

    // Convergent recurrences and the determinant identity.
    let (mut num_prev, mut num_prev2) = (Rational::one(), Rational::zero());
    let (mut den_prev, mut den_prev2) = (Rational::zero(), Rational::one());
    for s in steps {
        let num = &s.quotient * &num_prev + &num_prev2;
        let den = &s.quotient * &den_prev + &den_prev2;
        if num != s.convergent_num || den != s.convergent_den {
            out.push(violation(s.index, "stored convergents differ from the recurrence"));
        }
        if s.quotient_valuation != valuation_opt(&s.quotient, p) {
            out.push(violation(s.index, "stored quotient valuation is wrong"));
        }
        if s.den_valuation != valuation_opt(&s.convergent_den, p) {
            out.push(violation(s.index, "stored denominator valuation is wrong"));
        }
        num_prev2 = std::mem::replace(&mut num_prev, num);
        den_prev2 = std::mem::replace(&mut den_prev, den);
    }
    for w in steps.windows(2) {
        let det = &w[1].convergent_num * &w[0].convergent_den
            - &w[0].convergent_num * &w[1].convergent_den;
        let expected = if w[0].index % 2 == 0 {
            Rational::one()
        } else {
            -Rational::one()
        };
        if det != expected {
            out.push(violation(w[0].index, "determinant identity A_{n+1}B_n - A_nB_{n+1} = (-1)^n fails"));
        }
    }

    check_valuation_pattern(trace, &mut out);
    out
}

/// Valuation pattern required of the partial quotients for n ≥ 1, plus the
/// unit-product side condition of the 3-step schemes.
fn check_valuation_pattern(trace: &ExpansionTrace, out: &mut Vec<TraceViolation>) {
    let steps = &trace.steps;
    for s in steps.iter().skip(1) {
        let v = s.quotient_valuation;
        let ok = match trace.scheme {
            Scheme::Browkin1 => matches!(v, Some(x) if x < 0),
            Scheme::Browkin2 => {
                if s.index % 2 == 0 {
                    v == Some(0)
                } else {
                    matches!(v, Some(x) if x < 0)
                }
            }
            Scheme::New1 | Scheme::New2 => match s.index % 3 {
                1 => matches!(v, Some(x) if x < 0),
                _ => v == Some(0),
            },
            Scheme::Ruban => true,
        };
        if !ok {
            out.push(violation(
                s.index,
                format!("quotient valuation {v:?} breaks the {} pattern", trace.scheme),
            ));
        }
    }
    match trace.scheme {
        Scheme::New1 | Scheme::New2 => {
            // v_p(b_{3k+2}·b_{3k+3} + 1) = 0 on every complete triple.
            let mut i = 2;
            while i + 1 < steps.len() {
                let product_plus_one =
                    &steps[i].quotient * &steps[i + 1].quotient + Rational::one();
                if valuation_opt(&product_plus_one, trace.p) != Some(0) {
                    out.push(violation(
                        steps[i].index,
                        "v_p(b_{3k+2}·b_{3k+3} + 1) = 0 fails on this triple",
                    ));
                }
                i += 3;
            }
        }
        Scheme::Ruban => {
            for s in steps {
                if !ruban_quotient_admissible(&s.quotient, trace.p) {
                    out.push(violation(
                        s.index,
                        "ruban quotient is not a digit sum over {0,…,p−1}",
                    ));
                }
            }
        }
        _ => {}
    }
}

/// A Ruban quotient is Σ_{i=−r}^{0} a_i p^i with digits in {0, …, p−1}:
/// equivalently a non-negative element of Z[1/p] below p.
fn ruban_quotient_admissible(b: &Rational, p: u64) -> bool {
    if b.is_zero() {
        return true;
    }
    if b.is_negative() || *b >= Rational::from(BigInt::from(p)) {
        return false;
    }
    let (_, rest) = crate::rational::split_p_power(b.denom(), p);
    rest.is_one()
}

/// Evaluates a finite continued fraction bottom-up with exact arithmetic.
pub fn evaluate_finite(quotients: &[Rational]) -> Result<Rational> {
    let mut iter = quotients.iter().rev();
    let mut value = iter
        .next()
        .ok_or_else(|| Error::InvalidInput("empty quotient list".into()))?
        .clone();
    for b in iter {
        if value.is_zero() {
            return Err(Error::DivisionByZero);
        }
        value = b + value.recip();
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rational;

    fn rat_input(num: i64, den: i64, p: u64) -> QuadIrr {
        QuadIrr::from_rational(&rational(num, den), p).unwrap()
    }

    #[test]
    fn step_browkin1_on_one_third() {
        let alpha = rat_input(1, 3, 5);
        let (b, outcome) = step(&alpha, 0, Scheme::Browkin1).unwrap();
        assert_eq!(b, rational(2, 1));
        let next = match outcome {
            StepOutcome::Continue(a) => a,
            StepOutcome::Finished => panic!("should continue"),
        };
        assert_eq!(next.as_rational().unwrap(), rational(-3, 5));

        // s(−3/5) = −3/5 exactly: the expansion stops.
        let (b, outcome) = step(&next, 1, Scheme::Browkin1).unwrap();
        assert_eq!(b, rational(-3, 5));
        assert_eq!(outcome, StepOutcome::Finished);
    }

    #[test]
    fn step_new2_u_phase() {
        let alpha = rat_input(-1, 1, 5);
        let (b, outcome) = step(&alpha, 2, Scheme::New2).unwrap();
        assert_eq!(b, rational(-2, 1));
        match outcome {
            StepOutcome::Continue(a) => assert_eq!(a.as_rational().unwrap(), rational(1, 1)),
            StepOutcome::Finished => panic!(),
        }
    }

    #[test]
    fn step_new1_exact_t_goes_to_sign_correction() {
        // α = t(α) exactly: valuation +∞ lands in the correction branch.
        let alpha = rat_input(-2, 5, 5);
        let (b, outcome) = step(&alpha, 4, Scheme::New1).unwrap();
        assert_eq!(b, rational(3, 5));
        match outcome {
            StepOutcome::Continue(a) => assert_eq!(a.as_rational().unwrap(), rational(-1, 1)),
            StepOutcome::Finished => panic!(),
        }
    }

    #[test]
    fn expand_one_third_browkin1() {
        let trace = expand(&rat_input(1, 3, 5), Scheme::Browkin1, 200).unwrap();
        assert_eq!(trace.status, ExpansionStatus::Finite);
        assert_eq!(trace.quotients(), vec![rational(2, 1), rational(-3, 5)]);
        assert_eq!(evaluate_finite(&trace.quotients()).unwrap(), rational(1, 3));
        assert!(verify_trace(&trace).is_empty());
    }

    #[test]
    fn expand_one_third_new2() {
        let trace = expand(&rat_input(1, 3, 5), Scheme::New2, 200).unwrap();
        assert_eq!(trace.status, ExpansionStatus::Finite);
        assert_eq!(
            trace.quotients(),
            vec![rational(2, 1), rational(2, 5), rational(-2, 1), rational(1, 1)]
        );
        assert_eq!(evaluate_finite(&trace.quotients()).unwrap(), rational(1, 3));
        assert!(verify_trace(&trace).is_empty());
    }

    #[test]
    fn expand_one_third_new1_is_periodic() {
        // Hand iteration: α_2 = 1/(−3/5 − 2/5) = −1 and α_5 = 1/(−2/5 − 3/5) = −1
        // at matching phase 2, so the first phase-tagged repeat closes after
        // preperiod 2 with cycle length 3.
        let trace = expand(&rat_input(1, 3, 5), Scheme::New1, 200).unwrap();
        assert_eq!(
            trace.status,
            ExpansionStatus::Periodic { preperiod: 2, period: 3 }
        );
        assert_eq!(
            trace.quotients(),
            vec![
                rational(2, 1),
                rational(2, 5),
                rational(1, 1),
                rational(2, 1),
                rational(3, 5),
            ]
        );
        assert_eq!(trace.steps[3].complete.as_rational().unwrap(), rational(-1, 2));
        assert!(verify_trace(&trace).is_empty());
        // The stream continues 1, 2, 3/5, 1, … so the block (2, 3/5, 1) repeats
        // from index 3 onward.
        let ext = trace.quotients_extended(9).unwrap();
        assert_eq!(
            ext,
            vec![
                rational(2, 1),
                rational(2, 5),
                rational(1, 1),
                rational(2, 1),
                rational(3, 5),
                rational(1, 1),
                rational(2, 1),
                rational(3, 5),
                rational(1, 1),
            ]
        );
        assert_eq!(ext[6..9], ext[3..6]);
    }

    #[test]
    fn expand_integer_is_immediate() {
        let trace = expand(&rat_input(2, 1, 5), Scheme::New2, 200).unwrap();
        assert_eq!(trace.status, ExpansionStatus::Finite);
        assert_eq!(trace.quotients(), vec![rational(2, 1)]);
        assert!(verify_trace(&trace).is_empty());
    }

    #[test]
    fn expand_ruban_goes_periodic_on_negative_rationals() {
        let trace = expand(&rat_input(-1, 1, 5), Scheme::Ruban, 50).unwrap();
        assert_eq!(
            trace.status,
            ExpansionStatus::Periodic { preperiod: 1, period: 1 }
        );
        assert_eq!(trace.quotients(), vec![rational(4, 1), rational(24, 5)]);
        assert!(verify_trace(&trace).is_empty());
    }

    #[test]
    fn ruban_quotients_stay_in_profile() {
        // Non-negative elements of Z[1/p] below p, digits in {0,…,p−1};
        // verify_trace enforces the profile on every step.
        let mut rng = crate::analysis::SplitMix64::new(0x20BA);
        for _ in 0..30 {
            let a = rng.in_range(-3000, 3000);
            if a == 0 {
                continue;
            }
            let b = rng.in_range(1, 3000);
            let trace = expand(&rat_input(a, b, 5), Scheme::Ruban, 80).unwrap();
            assert!(
                verify_trace(&trace).is_empty(),
                "ruban trace of {a}/{b} out of profile"
            );
        }
    }

    #[test]
    fn tampered_quotient_is_reported() {
        let mut trace = expand(&rat_input(1, 3, 5), Scheme::New2, 200).unwrap();
        trace.steps[1].quotient = rational(1, 1);
        trace.steps[1].quotient_valuation = Some(0);
        let violations = verify_trace(&trace);
        assert!(!violations.is_empty());
        assert!(violations.iter().any(|v| v.step == Some(1)));
    }

    #[test]
    fn new_schemes_require_p_at_least_five() {
        let err = expand(&rat_input(1, 2, 3), Scheme::New1, 10);
        assert!(matches!(err, Err(Error::InvalidInput(_))));
        assert!(expand(&rat_input(1, 2, 3), Scheme::Browkin1, 10).is_ok());
    }

    #[test]
    fn expand_sqrt_two_in_q7_verifies() {
        let input = QuadIrr::new(0.into(), 1.into(), 2.into(), 1.into(), 7).unwrap();
        for scheme in [Scheme::Browkin1, Scheme::Browkin2, Scheme::New1, Scheme::New2] {
            let trace = expand(&input, scheme, 40).unwrap();
            assert!(
                verify_trace(&trace).is_empty(),
                "{scheme} trace of sqrt(2) fails verification"
            );
        }
    }

    #[test]
    fn descent_heights_shrink_on_rational_new2() {
        let trace = expand(&rat_input(355, 113, 5), Scheme::New2, 500).unwrap();
        let heights = trace.descent_heights();
        assert!(heights.windows(2).all(|w| w[1] < w[0]));
    }
}
