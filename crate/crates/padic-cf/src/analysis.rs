//! Convergents, valuation traces, and executable checkers for the
//! convergence conditions.
//!
//! Every checker evaluates hypotheses and conclusions independently and
//! reports both; none of them assumes the theorem it is checking, so they
//! double as tests of the implementation and of the statements themselves.
//! They accept arbitrary partial-quotient sequences, not just algorithm
//! output.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::quadratic::QuadIrr;
use crate::rational::{valuation, valuation_opt, Rational};
use crate::schemes::ExpansionTrace;

/// A finite partial-quotient sequence b_0, b_1, … over a fixed odd prime.
/// b_0 is unrestricted; b_n ≠ 0 for n ≥ 1 so its valuation is defined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PQSequence {
    p: u64,
    terms: Vec<Rational>,
}

impl PQSequence {
    pub fn new(p: u64, terms: Vec<Rational>) -> Result<Self> {
        if !crate::quadratic::is_odd_prime(p) {
            return Err(Error::InvalidInput(format!("p = {p} is not an odd prime")));
        }
        if let Some(i) = terms.iter().skip(1).position(|b| b.is_zero()) {
            return Err(Error::InvalidInput(format!(
                "partial quotient b_{} is zero",
                i + 1
            )));
        }
        Ok(PQSequence { p, terms })
    }

    /// The partial quotients of an expansion trace.
    pub fn from_trace(trace: &ExpansionTrace) -> Self {
        PQSequence {
            p: trace.p,
            terms: trace.quotients(),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn terms(&self) -> &[Rational] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term(&self, n: usize) -> &Rational {
        &self.terms[n]
    }

    fn term_valuation(&self, n: usize) -> Option<i64> {
        valuation_opt(&self.terms[n], self.p)
    }
}

/// Exact convergents (A_n, B_n) from the three-term recurrences, seeded
/// with A_{-1} = 1, A_{-2} = 0 and B_{-1} = 0, B_{-2} = 1.
pub fn convergents(seq: &PQSequence) -> Vec<(Rational, Rational)> {
    let mut out = Vec::with_capacity(seq.len());
    let (mut num_prev, mut num_prev2) = (Rational::one(), Rational::zero());
    let (mut den_prev, mut den_prev2) = (Rational::zero(), Rational::one());
    for b in seq.terms() {
        let num = b * &num_prev + &num_prev2;
        let den = b * &den_prev + &den_prev2;
        out.push((num.clone(), den.clone()));
        num_prev2 = std::mem::replace(&mut num_prev, num);
        den_prev2 = std::mem::replace(&mut den_prev, den);
    }
    out
}

fn denominator_valuations(seq: &PQSequence) -> Result<Vec<i64>> {
    convergents(seq)
        .iter()
        .enumerate()
        .map(|(i, (_, den))| {
            valuation(den, seq.p()).map_err(|_| Error::ZeroDenominator { index: i })
        })
        .collect()
}

/// Per-index (v_p(B_n), v_p(B_n·B_{n+1})); the product valuation is the sum
/// of consecutive entries and is `None` at the final index.
pub fn valuation_trace(seq: &PQSequence) -> Result<Vec<(i64, Option<i64>)>> {
    let vals = denominator_valuations(seq)?;
    Ok(vals
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, vals.get(i + 1).map(|w| v + w)))
        .collect())
}

/// Outcome of the pair condition v_p(b_n·b_{n+1}) < 0 for all n ≥ 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairConditionReport {
    pub holds: bool,
    /// Smallest n ≥ 1 with v_p(b_n·b_{n+1}) ≥ 0.
    pub first_violation: Option<usize>,
    /// Number of checkable indices.
    pub checked: usize,
}

/// Condition (ii) of the strict-decrease characterization, evaluated from
/// the quotients alone.
pub fn check_pair_condition(seq: &PQSequence) -> PairConditionReport {
    let mut checked = 0;
    for n in 1..seq.len().saturating_sub(1) {
        checked += 1;
        let v = seq.term_valuation(n).expect("b_n nonzero for n >= 1")
            + seq.term_valuation(n + 1).expect("b_n nonzero for n >= 1");
        if v >= 0 {
            return PairConditionReport {
                holds: false,
                first_violation: Some(n),
                checked,
            };
        }
    }
    PairConditionReport {
        holds: true,
        first_violation: None,
        checked,
    }
}

/// Both sides of the strict-decrease equivalence, evaluated independently,
/// plus the per-index restatements they rest on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentEquivalenceReport {
    /// v_p(b_{n+1}B_n) < v_p(B_{n−1}) for all n ≥ 1 (from actual convergents).
    pub condition_i: bool,
    pub first_violation_i: Option<usize>,
    /// v_p(b_n·b_{n+1}) < 0 for all n ≥ 1 (from the quotients alone).
    pub condition_ii: bool,
    pub first_violation_ii: Option<usize>,
    pub agree: bool,
    /// Per-index equivalence of (i) with v_p(B_{n+1}) < v_p(B_{n−1}).
    pub lemma_restatement_holds: bool,
    /// Whenever v_p(B_{n+1}) < v_p(B_{n−1}) and v_p(b_{n+1}) ≤ 0, also
    /// v_p(B_{n+1}) ≤ v_p(B_n).
    pub lemma_monotonicity_holds: bool,
    /// v_p(B_nB_{n+1}) strictly decreasing over every transition.
    pub products_strictly_decreasing: bool,
}

/// Evaluates conditions (i) and (ii) independently and reports whether they
/// agree; errors with the offending index when a convergent denominator
/// vanishes (where (i) is undefined).
pub fn check_descent_equivalence(seq: &PQSequence) -> Result<DescentEquivalenceReport> {
    let vals = denominator_valuations(seq)?;
    let len = seq.len();

    let pair = check_pair_condition(seq);

    let mut condition_i = true;
    let mut first_violation_i = None;
    let mut lemma_restatement_holds = true;
    let mut lemma_monotonicity_holds = true;
    for n in 1..len.saturating_sub(1) {
        // v_p(b_{n+1}B_n) = v_p(b_{n+1}) + v_p(B_n), both finite here.
        let lhs = seq.term_valuation(n + 1).expect("nonzero") + vals[n];
        let holds_here = lhs < vals[n - 1];
        if !holds_here && condition_i {
            condition_i = false;
            first_violation_i = Some(n);
        }
        if holds_here != (vals[n + 1] < vals[n - 1]) {
            lemma_restatement_holds = false;
        }
        if vals[n + 1] < vals[n - 1]
            && seq.term_valuation(n + 1).expect("nonzero") <= 0
            && vals[n + 1] > vals[n]
        {
            lemma_monotonicity_holds = false;
        }
    }

    let products_strictly_decreasing = vals
        .windows(3)
        .all(|w| w[1] + w[2] < w[0] + w[1]);

    Ok(DescentEquivalenceReport {
        condition_i,
        first_violation_i,
        condition_ii: pair.holds,
        first_violation_ii: pair.first_violation,
        agree: condition_i == pair.holds,
        lemma_restatement_holds,
        lemma_monotonicity_holds,
        products_strictly_decreasing,
    })
}

/// Hypotheses and conclusion of the 3-step convergence theorem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeStepReport {
    /// One negative-valuation quotient followed by two unit quotients,
    /// repeating with period 3 from index 1.
    pub pattern_holds: bool,
    /// v_p(b_{3n+2}·b_{3n+3} + 1) = 0 on every complete triple.
    pub side_condition_holds: bool,
    /// Index of the first quotient (pattern) or triple start (side
    /// condition) in violation.
    pub first_violation: Option<usize>,
    /// Triples (b_{3n+1}, b_{3n+2}, b_{3n+3}) fully inside the sequence.
    pub complete_triples: usize,
    /// Plateau v_p(B_{3n−2}) = v_p(B_{3n−1}) = v_p(B_{3n}) > v_p(B_{3n+1}),
    /// verified against actual convergents when the hypotheses hold.
    pub plateau_verified: Option<bool>,
    /// v_p(B_nB_{n+1}) non-increasing, strict at block boundaries.
    pub products_descend: Option<bool>,
}

impl ThreeStepReport {
    /// Hypotheses and verified conclusions all hold.
    pub fn holds(&self) -> bool {
        self.pattern_holds
            && self.side_condition_holds
            && self.plateau_verified == Some(true)
            && self.products_descend == Some(true)
    }
}

fn pattern_valuation_ok(v: Option<i64>, phase_in_block: usize) -> bool {
    match phase_in_block {
        // b_{rn+1}
        0 => matches!(v, Some(x) if x < 0),
        // b_{rn+i}, i ≥ 2
        _ => v == Some(0),
    }
}

/// Checks the 3-step pattern and unit-product side condition, then verifies
/// the plateau conclusion against actual convergents.
pub fn check_3step_hypotheses(seq: &PQSequence) -> ThreeStepReport {
    let len = seq.len();
    let mut pattern_holds = true;
    let mut first_violation = None;
    for n in 1..len {
        if !pattern_valuation_ok(seq.term_valuation(n), (n - 1) % 3) {
            pattern_holds = false;
            first_violation = Some(n);
            break;
        }
    }

    let complete_triples = if len >= 4 { (len - 1) / 3 } else { 0 };
    let mut side_condition_holds = true;
    let mut side_violation = None;
    for k in 0..complete_triples {
        let i = 3 * k + 2;
        if i + 1 >= len {
            break;
        }
        let product_plus_one = seq.term(i) * seq.term(i + 1) + Rational::one();
        if valuation_opt(&product_plus_one, seq.p()) != Some(0) {
            side_condition_holds = false;
            side_violation = Some(i);
            break;
        }
    }
    if pattern_holds && !side_condition_holds {
        first_violation = side_violation;
    }

    let (plateau_verified, products_descend) = if pattern_holds && side_condition_holds {
        match denominator_valuations(seq) {
            Ok(vals) => (
                Some(plateau_pattern_holds(&vals, 3)),
                Some(products_descend_3step(&vals)),
            ),
            Err(_) => (Some(false), Some(false)),
        }
    } else {
        (None, None)
    };

    ThreeStepReport {
        pattern_holds,
        side_condition_holds,
        first_violation,
        complete_triples,
        plateau_verified,
        products_descend,
    }
}

/// v_p(B_{rn+1}) = … = v_p(B_{rn+r}) > v_p(B_{rn+r+1}) on every complete
/// window of denominator valuations.
fn plateau_pattern_holds(vals: &[i64], r: usize) -> bool {
    let mut n = 0;
    loop {
        let lo = r * n + 1;
        let hi = r * n + r + 1;
        if hi >= vals.len() {
            // Trailing partial plateau: the available equalities must hold.
            let available = &vals[lo.min(vals.len())..vals.len()];
            return available.windows(2).all(|w| w[0] == w[1]);
        }
        if vals[lo..=hi - 1].windows(2).any(|w| w[0] != w[1]) {
            return false;
        }
        if vals[hi] >= vals[hi - 1] {
            return false;
        }
        n += 1;
    }
}

/// The product pattern behind the 3-step corollary: transitions of
/// v_p(B_kB_{k+1}) are strict drops entering and leaving a block and flat
/// inside it.
fn products_descend_3step(vals: &[i64]) -> bool {
    let products: Vec<i64> = vals.windows(2).map(|w| w[0] + w[1]).collect();
    products.windows(2).enumerate().all(|(k, w)| match k % 3 {
        1 => w[1] == w[0],
        _ => w[1] < w[0],
    })
}

/// The continuant-like family U_m^(n): U_m^(0) = 1, U_m^(1) = b_m,
/// U_m^(n+1) = b_{m+n}·U_m^(n) + U_m^(n−1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct USequence {
    start: usize,
    values: Vec<Rational>,
}

impl USequence {
    pub fn start(&self) -> usize {
        self.start
    }

    /// U_m^(n).
    pub fn value(&self, n: usize) -> &Rational {
        &self.values[n]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

/// Builds U_m^(0), …, U_m^(n_max) from the quotients.
pub fn u_sequence(seq: &PQSequence, m: usize, n_max: usize) -> Result<USequence> {
    if m < 2 {
        return Err(Error::IndexRange {
            detail: format!("u-sequence start m = {m} must be at least 2"),
        });
    }
    if n_max >= 1 && m + n_max > seq.len() {
        return Err(Error::IndexRange {
            detail: format!(
                "u-sequence needs quotient b_{}, sequence has {}",
                m + n_max - 1,
                seq.len()
            ),
        });
    }
    let mut values = Vec::with_capacity(n_max + 1);
    values.push(Rational::one());
    if n_max >= 1 {
        values.push(seq.term(m).clone());
    }
    for n in 1..n_max {
        let next = seq.term(m + n) * &values[n] + &values[n - 1];
        values.push(next);
    }
    Ok(USequence { start: m, values })
}

/// Exact identity B_{k+n} = U_{k+2}^(n−1)·B_{k+1} + U_{k+3}^(n−2)·B_k.
pub fn verify_seqden(seq: &PQSequence, k: usize, n: usize) -> Result<bool> {
    if n < 2 {
        return Err(Error::IndexRange {
            detail: format!("seqden identity needs n >= 2, got {n}"),
        });
    }
    if k + n >= seq.len() {
        return Err(Error::IndexRange {
            detail: format!("seqden identity needs B_{}, sequence has {}", k + n, seq.len()),
        });
    }
    let convs = convergents(seq);
    let u2 = u_sequence(seq, k + 2, n - 1)?;
    let u3 = u_sequence(seq, k + 3, n - 2)?;
    let lhs = &convs[k + n].1;
    let rhs = u2.value(n - 1) * &convs[k + 1].1 + u3.value(n - 2) * &convs[k].1;
    Ok(*lhs == rhs)
}

/// Hypotheses and conclusion of the r-step generalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RStepReport {
    pub r: usize,
    /// v_p(b_{rn+1}) < 0 and v_p(b_{rn+i}) = 0 for i ∈ {2, …, r}.
    pub pattern_holds: bool,
    /// v_p(U_{rn+2}^(i)) = 0 for i ∈ {2, …, r−1} and
    /// v_p(U_{rn+3}^(i)) = 0 for i ∈ {2, …, r−2}; vacuous for r ≤ 2.
    pub u_conditions_hold: bool,
    /// First quotient index or block-start index in violation.
    pub first_violation: Option<usize>,
    /// Blocks with every referenced index inside the sequence.
    pub complete_blocks: usize,
    /// Plateau conclusion against actual convergents, when hypotheses hold.
    pub plateau_verified: Option<bool>,
    /// For r = 3: whether U_{rn+2}^(2) equals b_{rn+3}·b_{rn+2} + 1 on every
    /// complete block, i.e. the u-condition is exactly the 3-step side
    /// condition.
    pub reduces_to_three_step: Option<bool>,
}

impl RStepReport {
    pub fn holds(&self) -> bool {
        self.pattern_holds && self.u_conditions_hold && self.plateau_verified == Some(true)
    }
}

/// Checks the r-step valuation pattern and u-sequence unit conditions, then
/// verifies the plateau conclusion. Incomplete trailing blocks are ignored.
pub fn check_rstep_hypotheses(seq: &PQSequence, r: usize) -> Result<RStepReport> {
    if r < 1 {
        return Err(Error::IndexRange {
            detail: "r must be at least 1".into(),
        });
    }
    let len = seq.len();
    let complete_blocks = if len > r { (len - 1) / r } else { 0 };

    let mut pattern_holds = true;
    let mut first_violation = None;
    for idx in 1..len {
        if !pattern_valuation_ok(seq.term_valuation(idx), (idx - 1) % r) {
            pattern_holds = false;
            first_violation = Some(idx);
            break;
        }
    }

    let mut u_conditions_hold = true;
    let mut u_violation = None;
    'ublocks: for n in 0..complete_blocks {
        let mut requirements = Vec::new();
        if r >= 3 {
            requirements.push((r * n + 2, 2..=r - 1));
        }
        if r >= 4 {
            requirements.push((r * n + 3, 2..=r - 2));
        }
        for (m, range) in requirements {
            let top = *range.end();
            if m + top > len {
                continue;
            }
            let useq = u_sequence(seq, m, top)?;
            for i in range {
                if valuation_opt(useq.value(i), seq.p()) != Some(0) {
                    u_conditions_hold = false;
                    u_violation = Some(r * n + 1);
                    break 'ublocks;
                }
            }
        }
    }
    if pattern_holds && !u_conditions_hold {
        first_violation = u_violation;
    }

    let plateau_verified = if pattern_holds && u_conditions_hold {
        match denominator_valuations(seq) {
            Ok(vals) => Some(plateau_pattern_holds(&vals, r)),
            Err(_) => Some(false),
        }
    } else {
        None
    };

    let reduces_to_three_step = (r == 3).then(|| {
        (0..complete_blocks).all(|n| {
            let m = 3 * n + 2;
            match u_sequence(seq, m, 2) {
                Ok(u) => *u.value(2) == seq.term(m + 1) * seq.term(m) + Rational::one(),
                Err(_) => true,
            }
        })
    });

    Ok(RStepReport {
        r,
        pattern_holds,
        u_conditions_hold,
        first_violation,
        complete_blocks,
        plateau_verified,
        reduces_to_three_step,
    })
}

/// v_p(α − A_n/B_n) computed exactly; `None` encodes +∞ (exact equality).
pub fn approximation_valuation(
    alpha: &QuadIrr,
    seq: &PQSequence,
    n: usize,
) -> Result<Option<i64>> {
    if n >= seq.len() {
        return Err(Error::IndexRange {
            detail: format!("convergent index {n} out of range"),
        });
    }
    let convs = convergents(seq);
    let (num, den) = &convs[n];
    if den.is_zero() {
        return Err(Error::ZeroDenominator { index: n });
    }
    let diff = alpha.sub_rational(&(num / den));
    if diff.is_zero() {
        return Ok(None);
    }
    Ok(Some(diff.valuation()?))
}

/// Deterministic split-mix generator; fixed seeds make every randomized
/// report reproducible.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform value in [0, bound).
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }

    /// Uniform value in [lo, hi].
    pub fn in_range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }
}

/// Random quotient b = unit·p^v with the unit drawn from the nonzero
/// balanced residues.
fn random_term(rng: &mut SplitMix64, p: u64, v: i64) -> Rational {
    let half = ((p - 1) / 2) as i64;
    let mut unit = rng.in_range(-half, half);
    if unit == 0 {
        unit = half;
    }
    let num = BigInt::from(unit);
    let p_big = BigInt::from(p);
    if v >= 0 {
        Rational::from(num * p_big.pow(v as u32))
    } else {
        Rational::new(num, p_big.pow((-v) as u32))
    }
}

/// Random sequence with valuations drawn from {−2, −1, 0}.
pub fn random_sequence(p: u64, len: usize, seed: u64) -> PQSequence {
    let mut rng = SplitMix64::new(seed);
    let terms = (0..len)
        .map(|_| {
            let v = rng.in_range(-2, 0);
            random_term(&mut rng, p, v)
        })
        .collect();
    PQSequence { p, terms }
}

/// Random sequence with one prescribed valuation per index (pattern
/// injection for the block checkers).
pub fn random_sequence_with_valuations(p: u64, valuations: &[i64], seed: u64) -> PQSequence {
    let mut rng = SplitMix64::new(seed);
    let terms = valuations
        .iter()
        .map(|&v| random_term(&mut rng, p, v))
        .collect();
    PQSequence { p, terms }
}
