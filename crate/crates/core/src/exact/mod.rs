//! Exact scalar arithmetic, binomials, and the combinatorial identity checkers.

mod combinatorics;
mod identities;
mod scalar;

pub use combinatorics::{binom, binom_int, binom_or_zero, factorial, sign};
pub use identities::{format_params, lemma_residual, sweep, Identity, Params, SweepReport};
pub use scalar::{ExactScalar, Rational};
