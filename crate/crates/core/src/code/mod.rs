//! Z2Z4-additive codes: words, the Gray map, enumeration, types, standard
//! forms and the brute-force kernel/rank oracles.

mod additive;
mod binary;
mod oracle;
mod standard;
mod word;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use additive::{AdditiveCode, CodeJson, Codewords, DEFAULT_MAX_LOG2};
pub use binary::BinaryCode;
pub use oracle::{
    gray_identity_counterexample, is_gray_linear_bruteforce, is_gray_linear_exhaustive,
    kernel_bruteforce, kernel_exhaustive, span_bruteforce, span_exhaustive, Span,
};
pub use standard::{equivalent_up_to_block_permutation, standard_form, StandardForm};
pub use word::{bits_to_vec, check_ambient, gray, ungray, vec_to_bits, Word, MAX_BLOCK, MAX_IMAGE};

/// Type `(alpha, beta; gamma, delta; kappa)` with the refinements
/// `kappa = kappa1 + kappa2` and `delta = delta1 + delta2`.
///
/// `delta1`/`delta2` come only from generator polynomials; codes built from
/// arbitrary generators leave them unset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CodeType {
    pub alpha: usize,
    pub beta: usize,
    pub gamma: usize,
    pub delta: usize,
    pub kappa: usize,
    pub kappa1: usize,
    pub kappa2: usize,
    pub delta1: Option<usize>,
    pub delta2: Option<usize>,
}

impl CodeType {
    /// The five headline parameters.
    pub fn short(&self) -> (usize, usize, usize, usize, usize) {
        (self.alpha, self.beta, self.gamma, self.delta, self.kappa)
    }

    /// `log2 |C| = gamma + 2 delta`.
    pub fn log2_size(&self) -> usize {
        self.gamma + 2 * self.delta
    }
}

impl fmt::Display for CodeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{};{},{};{})",
            self.alpha, self.beta, self.gamma, self.delta, self.kappa
        )
    }
}
