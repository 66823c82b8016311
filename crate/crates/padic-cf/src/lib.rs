//! Exact arithmetic for p-adic continued fractions.
//!
//! The crate expands elements of Q_p — rationals and quadratic irrationals —
//! under five algorithms (the two classical balanced-digit schemes, two
//! 3-step schemes built from the unit-splitting function u, and the
//! non-negative-digit variant), and ships executable checkers for the
//! convergence conditions those schemes rely on: the pairwise-negative
//! product criterion, the 3-step unit-product condition with its plateau
//! conclusion, the continuant-based r-step generalization, and the bounded
//! counterexample showing the bare 3-step pattern does not converge.
//!
//! All arithmetic is exact: arbitrary-precision rationals everywhere,
//! Hensel-lifted square roots for quadratic irrationals, and digit windows
//! whose correctness is certified rather than assumed.

pub mod analysis;
pub mod batch;
pub mod counterexample;
pub mod digits;
pub mod error;
pub mod floors;
pub mod quadratic;
pub mod rational;
pub mod schemes;

pub use analysis::{
    approximation_valuation, check_3step_hypotheses, check_descent_equivalence,
    check_pair_condition, check_rstep_hypotheses, convergents, random_sequence,
    random_sequence_with_valuations, u_sequence, valuation_trace, verify_seqden,
    DescentEquivalenceReport, PQSequence, PairConditionReport, RStepReport, SplitMix64,
    ThreeStepReport, USequence,
};
pub use batch::{expand_many, expand_many_sequential};
pub use counterexample::{build_counterexample, certify_bounded, min_denominator_valuation};
pub use digits::{balanced_digits, from_digits, DigitWindow};
pub use error::{Error, Result};
pub use floors::{real_sign, ruban_floor, s_floor, t_floor, u_sign};
pub use quadratic::{hensel_sqrt, is_odd_prime, QuadIrr};
pub use rational::{format_rational, parse_rational, rational, valuation, Rational};
pub use schemes::{
    evaluate_finite, expand, step, verify_trace, ExpansionStatus, ExpansionTrace, Scheme,
    StepOutcome, TraceStep, TraceViolation,
};
