//! Data-parallel drivers over corpora of independent inputs.
//!
//! Every expansion is a pure function of its input, so corpus runs are
//! embarrassingly parallel. With the `parallel` feature (default) the
//! drivers fan out over rayon's thread pool; without it they run the same
//! sequential loop as [`expand_many_sequential`], which is always available
//! for comparison.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::Result;
use crate::quadratic::QuadIrr;
use crate::schemes::{expand, ExpansionTrace, Scheme};

/// Expands every input, in parallel when the `parallel` feature is on.
/// Fails fast on the first error.
pub fn expand_many(
    inputs: &[QuadIrr],
    scheme: Scheme,
    max_steps: usize,
) -> Result<Vec<ExpansionTrace>> {
    #[cfg(feature = "parallel")]
    {
        inputs
            .par_iter()
            .map(|input| expand(input, scheme, max_steps))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        expand_many_sequential(inputs, scheme, max_steps)
    }
}

/// Sequential reference driver.
pub fn expand_many_sequential(
    inputs: &[QuadIrr],
    scheme: Scheme,
    max_steps: usize,
) -> Result<Vec<ExpansionTrace>> {
    inputs
        .iter()
        .map(|input| expand(input, scheme, max_steps))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::SplitMix64;
    use crate::rational::rational;

    fn corpus(p: u64, n: usize) -> Vec<QuadIrr> {
        let mut rng = SplitMix64::new(7);
        (0..n)
            .map(|_| {
                let a = rng.in_range(-5000, 5000).max(1);
                let b = rng.in_range(1, 5000);
                QuadIrr::from_rational(&rational(a, b), p).unwrap()
            })
            .collect()
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let inputs = corpus(5, 64);
        let par = expand_many(&inputs, Scheme::New2, 300).unwrap();
        let seq = expand_many_sequential(&inputs, Scheme::New2, 300).unwrap();
        assert_eq!(par, seq);
    }

    #[test]
    fn errors_propagate() {
        let inputs = vec![QuadIrr::from_rational(&rational(1, 2), 3).unwrap()];
        assert!(expand_many(&inputs, Scheme::New2, 10).is_err());
    }
}
