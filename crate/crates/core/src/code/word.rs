//! Words of `Z2^alpha x Z4^beta`, bit-packed.
//!
//! The binary block is a bitset `x`; the quaternary block is split into a
//! low bitplane `lo` and a high bitplane `hi` so that a symbol is
//! `lo + 2*hi`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest block length in either block.
pub const MAX_BLOCK: usize = 64;
/// Largest binary image length `alpha + 2*beta`.
pub const MAX_IMAGE: usize = 128;

/// Check that `(alpha, beta)` fits the packed representation.
pub fn check_ambient(alpha: usize, beta: usize) -> Result<()> {
    if alpha > MAX_BLOCK || beta > MAX_BLOCK || alpha + 2 * beta > MAX_IMAGE {
        return Err(Error::Ambient { alpha, beta });
    }
    Ok(())
}

pub(crate) fn mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Word {
    alpha: u8,
    beta: u8,
    x: u64,
    lo: u64,
    hi: u64,
}

impl Word {
    pub fn zero(alpha: usize, beta: usize) -> Self {
        Word {
            alpha: alpha as u8,
            beta: beta as u8,
            x: 0,
            lo: 0,
            hi: 0,
        }
    }

    /// Build from bitsets; bits beyond the block lengths are dropped.
    pub fn from_planes(alpha: usize, beta: usize, x: u64, lo: u64, hi: u64) -> Self {
        Word {
            alpha: alpha as u8,
            beta: beta as u8,
            x: x & mask(alpha),
            lo: lo & mask(beta),
            hi: hi & mask(beta),
        }
    }

    /// Build from explicit coordinates; quaternary entries are taken mod 4.
    pub fn new(u: &[u8], uq: &[u8]) -> Result<Self> {
        check_ambient(u.len(), uq.len())?;
        let mut w = Word::zero(u.len(), uq.len());
        for (i, &b) in u.iter().enumerate() {
            w.x |= u64::from(b & 1) << i;
        }
        for (i, &q) in uq.iter().enumerate() {
            w.lo |= u64::from(q & 1) << i;
            w.hi |= u64::from((q >> 1) & 1) << i;
        }
        Ok(w)
    }

    pub fn alpha(&self) -> usize {
        self.alpha as usize
    }

    pub fn beta(&self) -> usize {
        self.beta as usize
    }

    pub fn x(&self) -> u64 {
        self.x
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn binary_part(&self) -> Vec<u8> {
        (0..self.alpha()).map(|i| ((self.x >> i) & 1) as u8).collect()
    }

    pub fn quaternary_part(&self) -> Vec<u8> {
        (0..self.beta()).map(|i| self.symbol(i)).collect()
    }

    pub fn symbol(&self, i: usize) -> u8 {
        (((self.lo >> i) & 1) | (((self.hi >> i) & 1) << 1)) as u8
    }

    pub fn is_zero(&self) -> bool {
        self.x | self.lo | self.hi == 0
    }

    /// True when `2w = 0`.
    pub fn has_order_le_two(&self) -> bool {
        self.lo == 0
    }

    pub fn same_ambient(&self, other: &Word) -> bool {
        self.alpha == other.alpha && self.beta == other.beta
    }

    pub fn add(&self, other: &Word) -> Word {
        debug_assert!(self.same_ambient(other));
        Word {
            x: self.x ^ other.x,
            lo: self.lo ^ other.lo,
            hi: self.hi ^ other.hi ^ (self.lo & other.lo),
            ..*self
        }
    }

    pub fn neg(&self) -> Word {
        Word {
            hi: self.hi ^ self.lo,
            ..*self
        }
    }

    pub fn sub(&self, other: &Word) -> Word {
        self.add(&other.neg())
    }

    /// `2w`: binary part vanishes, quaternary part becomes `2 * lo`.
    pub fn double(&self) -> Word {
        Word {
            x: 0,
            lo: 0,
            hi: self.lo,
            ..*self
        }
    }

    /// `2 v * w`: zero binary part, `2 v'_i w'_i` on the quaternary block.
    pub fn star2(&self, other: &Word) -> Word {
        debug_assert!(self.same_ambient(other));
        Word {
            x: 0,
            lo: 0,
            hi: self.lo & other.lo,
            ..*self
        }
    }

    /// Simultaneous cyclic shift of both blocks by one position to the right.
    pub fn shift(&self) -> Word {
        Word {
            x: rotate(self.x, self.alpha()),
            lo: rotate(self.lo, self.beta()),
            hi: rotate(self.hi, self.beta()),
            ..*self
        }
    }

    /// Zero out the binary block.
    pub fn project_y(&self) -> Word {
        Word { x: 0, ..*self }
    }

    /// Zero out the quaternary block.
    pub fn project_x(&self) -> Word {
        Word {
            lo: 0,
            hi: 0,
            ..*self
        }
    }

    /// Gray image as a bit vector of length `alpha + 2*beta`: the binary
    /// block, then the high bitplane, then `lo ^ hi`.
    pub fn gray(&self) -> u128 {
        let a = self.alpha();
        let b = self.beta();
        u128::from(self.x) | (u128::from(self.hi) << a) | (u128::from(self.lo ^ self.hi) << (a + b))
    }

    /// Inverse of [`Word::gray`].
    pub fn ungray(v: u128, alpha: usize, beta: usize) -> Word {
        let x = (v as u64) & mask(alpha);
        let hi = ((v >> alpha) as u64) & mask(beta);
        let t = ((v >> (alpha + beta)) as u64) & mask(beta);
        Word::from_planes(alpha, beta, x, t ^ hi, hi)
    }

    /// Binary block and high bitplane packed as `x | hi << alpha`, the
    /// coordinates of an order-two word.
    pub(crate) fn pack_order2(&self) -> u128 {
        u128::from(self.x) | (u128::from(self.hi) << self.alpha())
    }

    pub(crate) fn unpack_order2(v: u128, alpha: usize, beta: usize) -> Word {
        Word::from_planes(alpha, beta, v as u64, 0, (v >> alpha) as u64)
    }

    pub fn weight_lee(&self) -> u32 {
        self.gray().count_ones()
    }
}

fn rotate(bits: u64, len: usize) -> u64 {
    if len <= 1 {
        return bits;
    }
    ((bits << 1) | (bits >> (len - 1))) & mask(len)
}

/// Gray image of a length-`n` bit vector as a 0/1 list.
pub fn bits_to_vec(v: u128, n: usize) -> Vec<u8> {
    (0..n).map(|i| ((v >> i) & 1) as u8).collect()
}

/// Build a bit vector from a 0/1 list.
pub fn vec_to_bits(bits: &[u8]) -> Result<u128> {
    if bits.len() > MAX_IMAGE {
        return Err(Error::LengthMismatch {
            expected: MAX_IMAGE,
            got: bits.len(),
        });
    }
    Ok(bits
        .iter()
        .enumerate()
        .fold(0u128, |acc, (i, &b)| acc | (u128::from(b & 1) << i)))
}

/// Gray map on explicit coordinates.
pub fn gray(w: &Word) -> Vec<u8> {
    bits_to_vec(w.gray(), w.alpha() + 2 * w.beta())
}

/// Inverse Gray map on explicit coordinates.
pub fn ungray(v: &[u8], alpha: usize, beta: usize) -> Result<Word> {
    check_ambient(alpha, beta)?;
    if v.len() != alpha + 2 * beta {
        return Err(Error::LengthMismatch {
            expected: alpha + 2 * beta,
            got: v.len(),
        });
    }
    Ok(Word::ungray(vec_to_bits(v)?, alpha, beta))
}

fn first_diff_cmp(a: u64, b: u64) -> Option<Ordering> {
    let d = a ^ b;
    (d != 0).then(|| {
        let bit = d.trailing_zeros();
        ((a >> bit) & 1).cmp(&((b >> bit) & 1))
    })
}

impl Ord for Word {
    /// Lexicographic on `(u_0, .., u_{alpha-1}, u'_0, .., u'_{beta-1})`.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.alpha, self.beta)
            .cmp(&(other.alpha, other.beta))
            .then_with(|| first_diff_cmp(self.x, other.x).unwrap_or(Ordering::Equal))
            .then_with(|| {
                let d = (self.lo ^ other.lo) | (self.hi ^ other.hi);
                if d == 0 {
                    return Ordering::Equal;
                }
                let i = d.trailing_zeros() as usize;
                self.symbol(i).cmp(&other.symbol(i))
            })
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.binary_part() {
            write!(f, "{b}")?;
        }
        f.write_str("|")?;
        for q in self.quaternary_part() {
            write!(f, "{q}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parse `"10|213"`: binary digits, a bar, quaternary digits.
    fn from_str(s: &str) -> Result<Self> {
        let err = |reason: &str| Error::ParseWord {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let (u, q) = s.trim().split_once('|').ok_or_else(|| err("missing '|'"))?;
        let digits = |part: &str, base: u32| -> Result<Vec<u8>> {
            part.chars()
                .filter(|c| !c.is_whitespace() && *c != ',')
                .map(|c| {
                    c.to_digit(base)
                        .map(|d| d as u8)
                        .ok_or_else(|| err(&format!("bad digit {c:?} in base {base}")))
                })
                .collect()
        };
        let (u, q) = (digits(u, 2)?, digits(q, 4)?);
        if u.is_empty() && q.is_empty() {
            return Err(err("empty word"));
        }
        Word::new(&u, &q)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn gray_examples() {
        assert_eq!(gray(&w("|0123")), vec![0, 0, 1, 1, 0, 1, 1, 0]);
        assert_eq!(gray(&w("000|000")), vec![0; 9]);
        assert_eq!(gray(&w("1|2")), vec![1, 1, 1]);
        assert_eq!(ungray(&[1, 1, 1], 1, 1).unwrap(), w("1|2"));
        assert_eq!(ungray(&[0; 5], 1, 2).unwrap(), w("0|00"));
        assert!(ungray(&[0; 4], 1, 2).is_err());
    }

    #[test]
    fn symbol_images() {
        let images: Vec<Vec<u8>> = (0..4).map(|q| gray(&Word::new(&[], &[q]).unwrap())).collect();
        assert_eq!(images, vec![vec![0, 0], vec![0, 1], vec![1, 1], vec![1, 0]]);
    }

    #[test]
    fn arithmetic() {
        assert_eq!(w("1|13").add(&w("1|11")), w("0|20"));
        assert_eq!(w("0|123").neg(), w("0|321"));
        assert_eq!(w("1|1").star2(&w("1|1")), w("0|2"));
        assert_eq!(w("1|123").star2(&Word::zero(1, 3)), Word::zero(1, 3));
        assert_eq!(w("1|13").double(), w("0|22"));
    }

    #[test]
    fn shift_example() {
        assert_eq!(w("100|123").shift(), w("010|312"));
        assert_eq!(w("1|").shift(), w("1|"));
    }

    #[test]
    fn text_round_trip() {
        assert_eq!(w("10|213").to_string(), "10|213");
        assert_eq!(w("|3").to_string(), "|3");
        assert!("10213".parse::<Word>().is_err());
        assert!("12|0".parse::<Word>().is_err());
        assert!("|".parse::<Word>().is_err());
    }

    #[test]
    fn lexicographic_order() {
        let mut v = vec![w("1|0"), w("0|3"), w("0|1"), w("1|2")];
        v.sort();
        assert_eq!(v, vec![w("0|1"), w("0|3"), w("1|0"), w("1|2")]);
        assert!(w("0|30") > w("0|03"));
    }
}
