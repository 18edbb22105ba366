//! Brute-force kernel, rank and linearity oracles.
//!
//! Every codeword is `v + c` with `v` a 0/1 combination of the order-four
//! representatives and `c` in `C_b`. Both `2v*w` and the Gray image of
//! `v + c` depend on `c` only additively, so the default oracles scan the
//! `2^delta` cosets of `C_b`. The `*_exhaustive` variants scan every codeword
//! and exist to validate that shortcut.

use serde::Serialize;

use super::additive::AdditiveCode;
use super::binary::BinaryCode;
use super::word::Word;
use crate::error::{Error, Result};

/// All 0/1 combinations of the order-four representatives.
fn coset_leaders(code: &AdditiveCode, limit_log2: u32) -> Result<Vec<Word>> {
    let reps = code.order_four_reps();
    if reps.len() as u32 > limit_log2 {
        return Err(Error::TooLarge {
            log2_size: reps.len() as u32,
            limit_log2,
        });
    }
    let mut out = Vec::with_capacity(1 << reps.len());
    out.push(Word::zero(code.alpha(), code.beta()));
    for r in reps {
        let more: Vec<Word> = out.iter().map(|v| v.add(r)).collect();
        out.extend(more);
    }
    Ok(out)
}

/// `Phi(C)` is linear iff `2u*v` lies in `C` for every pair of generators.
pub fn is_gray_linear_bruteforce(code: &AdditiveCode) -> bool {
    let reps = code.order_four_reps();
    reps.iter()
        .enumerate()
        .all(|(i, u)| reps[i..].iter().all(|v| code.contains(&u.star2(v))))
}

/// Linearity checked on every pair of codewords.
pub fn is_gray_linear_exhaustive(code: &AdditiveCode, limit_log2: u32) -> Result<bool> {
    code.check_size(limit_log2 / 2)?;
    let words: Vec<Word> = code.iter().collect();
    Ok(words
        .iter()
        .all(|u| words.iter().all(|v| code.contains(&u.star2(v)))))
}

/// `K(C) = {v in C : 2v*w in C for all w in C}`.
pub fn kernel_bruteforce(code: &AdditiveCode, limit_log2: u32) -> Result<AdditiveCode> {
    let reps = code.order_four_reps();
    let good: Vec<Word> = coset_leaders(code, limit_log2)?
        .into_iter()
        .filter(|v| reps.iter().all(|w| code.contains(&v.star2(w))))
        .collect();
    let mut gens = good.clone();
    gens.extend(code.order_two_basis());
    let kernel = AdditiveCode::from_generators(code.alpha(), code.beta(), &gens)?;
    let expected = good.len().trailing_zeros() + code.cb_packed().dim() as u32;
    if !good.len().is_power_of_two() || kernel.log2_size() != expected {
        return Err(Error::Consistency(format!(
            "kernel candidates of {code:?} are not closed under addition"
        )));
    }
    Ok(kernel)
}

/// Kernel from the definition, scanning all pairs of codewords.
pub fn kernel_exhaustive(code: &AdditiveCode, limit_log2: u32) -> Result<AdditiveCode> {
    code.check_size(limit_log2 / 2)?;
    let words: Vec<Word> = code.iter().collect();
    let members: Vec<Word> = words
        .iter()
        .filter(|v| words.iter().all(|w| code.contains(&v.star2(w))))
        .copied()
        .collect();
    let kernel = AdditiveCode::from_generators(code.alpha(), code.beta(), &members)?;
    if kernel.size() != members.len() as u128 {
        return Err(Error::Consistency(format!(
            "kernel of {code:?} is not a subgroup"
        )));
    }
    Ok(kernel)
}

/// Linear span of the Gray image and its preimage.
#[derive(Clone, Debug, Serialize)]
pub struct Span {
    /// `rank(Phi(C)) = dim <Phi(C)>`.
    pub rank: usize,
    pub span: BinaryCode,
    /// `R(C) = Phi^{-1}(<Phi(C)>)`.
    #[serde(skip)]
    pub lifted: AdditiveCode,
}

/// `<Phi(C)>` by Gaussian elimination over the Gray images, pulled back.
pub fn span_bruteforce(code: &AdditiveCode, limit_log2: u32) -> Result<Span> {
    let (alpha, beta) = (code.alpha(), code.beta());
    let mut span = BinaryCode::new(alpha + 2 * beta);
    for c in code.order_two_basis() {
        span.insert(c.gray());
    }
    for v in coset_leaders(code, limit_log2)? {
        span.insert(v.gray());
    }
    lift_span(span, alpha, beta)
}

/// Span from the Gray image of every codeword.
pub fn span_exhaustive(code: &AdditiveCode, limit_log2: u32) -> Result<Span> {
    code.check_size(limit_log2)?;
    let span = BinaryCode::from_vectors(code.alpha() + 2 * code.beta(), code.iter().map(|c| c.gray()));
    lift_span(span, code.alpha(), code.beta())
}

fn lift_span(span: BinaryCode, alpha: usize, beta: usize) -> Result<Span> {
    let gens: Vec<Word> = span
        .basis()
        .iter()
        .map(|&v| Word::ungray(v, alpha, beta))
        .collect();
    let lifted = AdditiveCode::from_generators(alpha, beta, &gens)?;
    // Phi(lifted) is inside the span iff the span absorbs every 2u*v on the
    // generators; equal sizes then give Phi(lifted) = span.
    let g = lifted.generators();
    let absorbed = g.iter().enumerate().all(|(i, u)| {
        g[i..].iter().all(|v| span.contains(u.star2(v).gray()))
    });
    if !absorbed || lifted.log2_size() as usize != span.dim() {
        return Err(Error::Consistency(
            "preimage of the Gray span is not an additive code".into(),
        ));
    }
    Ok(Span {
        rank: span.dim(),
        span,
        lifted,
    })
}

/// First pair violating `Phi(v+w) = Phi(v) + Phi(w) + Phi(2v*w)`.
///
/// Scans all pairs when `|C|^2 <= 2^limit_log2`; otherwise pairs every
/// codeword with every generator and with a fixed stride of codewords.
pub fn gray_identity_counterexample(code: &AdditiveCode, limit_log2: u32) -> Option<(Word, Word)> {
    let holds = |v: &Word, w: &Word| v.add(w).gray() == v.gray() ^ w.gray() ^ v.star2(w).gray();
    if 2 * code.log2_size() <= limit_log2 {
        let words: Vec<Word> = code.iter().collect();
        for v in &words {
            for w in &words {
                if !holds(v, w) {
                    return Some((*v, *w));
                }
            }
        }
        return None;
    }
    let mut partners = code.generators();
    let stride = (code.size() / 64).max(1);
    partners.extend(
        code.iter()
            .enumerate()
            .filter(|(i, _)| (*i as u128) % stride == 0)
            .map(|(_, w)| w),
    );
    let budget = 1usize << limit_log2.min(40);
    for v in code.iter().take(budget / partners.len().max(1)) {
        for w in &partners {
            if !holds(&v, w) {
                return Some((v, *w));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::DEFAULT_MAX_LOG2;

    fn code(alpha: usize, beta: usize, gens: &[&str]) -> AdditiveCode {
        let gens: Vec<Word> = gens.iter().map(|s| s.parse().unwrap()).collect();
        AdditiveCode::from_generators(alpha, beta, &gens).unwrap()
    }

    fn inequality_code() -> AdditiveCode {
        code(1, 3, &["1|110", "1|011", "1|101"])
    }

    #[test]
    fn kernel_of_inequality_example() {
        let c = inequality_code();
        let k = kernel_bruteforce(&c, DEFAULT_MAX_LOG2).unwrap();
        assert_eq!(k, code(1, 3, &["1|200", "0|220", "0|202"]));
        assert_eq!(k.log2_size(), 3);
        assert_eq!(k, kernel_exhaustive(&c, DEFAULT_MAX_LOG2).unwrap());
        assert!(!is_gray_linear_bruteforce(&c));
        assert!(!is_gray_linear_exhaustive(&c, DEFAULT_MAX_LOG2).unwrap());
    }

    #[test]
    fn kernel_of_linear_code_is_itself() {
        let c = code(0, 3, &["|200", "|110"]);
        assert!(is_gray_linear_bruteforce(&c));
        assert_eq!(kernel_bruteforce(&c, DEFAULT_MAX_LOG2).unwrap(), c);
        let cb = inequality_code().order_two_subcode();
        assert!(is_gray_linear_bruteforce(&cb));
    }

    #[test]
    fn rank_of_five_row_example() {
        let c = code(3, 3, &["100|000", "010|000", "001|200", "000|110", "000|101"]);
        let s = span_bruteforce(&c, DEFAULT_MAX_LOG2).unwrap();
        assert_eq!(s.rank, 8);
        assert_eq!(s.span, span_exhaustive(&c, DEFAULT_MAX_LOG2).unwrap().span);
        assert!(c.is_subcode_of(&s.lifted));
        let cy = c.project_y();
        assert_eq!(span_bruteforce(&cy, DEFAULT_MAX_LOG2).unwrap().rank, 5);
    }

    #[test]
    fn gray_identity() {
        assert!(gray_identity_counterexample(&inequality_code(), 20).is_none());
        let big = code(2, 6, &["10|100000", "01|010000", "00|001000", "00|000100", "00|000011"]);
        assert!(gray_identity_counterexample(&big, 12).is_none());
    }
}
