//! Dense univariate polynomials over a small residue ring.
//!
//! Coefficients are stored in ascending order (index `i` holds the
//! coefficient of `x^i`) and are always normalized: the last stored
//! coefficient is nonzero, and the zero polynomial has no coefficients.
//!
//! Text format, shared by every module and the CLI: a sum of terms such as
//! `x^3+2x^2+x+3` or `1+x` (ascending or descending, `-` allowed), printed
//! in ascending order (`3+x+2x^2+x^3`) with `0` for the zero polynomial.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ring::{Coefficient, Z2, Z4};

/// Largest degree accepted from external input.
pub const MAX_DEGREE: usize = 1 << 16;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<R> {
    coeffs: Vec<R>,
}

impl<R: Coefficient> Poly<R> {
    /// Build from ascending coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Build from ascending integer coefficients, reduced into the ring.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| R::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![R::one()] }
    }

    pub fn x() -> Self {
        Self::monomial(R::one(), 1)
    }

    pub fn monomial(c: R, k: usize) -> Self {
        let mut coeffs = vec![R::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `x^n - 1`.
    pub fn x_n_minus_one(n: usize) -> Self {
        Self::monomial(R::one(), n) - Self::one()
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).copied().unwrap_or_else(R::zero)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree of a polynomial known to be nonzero.
    ///
    /// Panics on the zero polynomial.
    pub fn deg(&self) -> usize {
        self.degree().expect("degree of the zero polynomial")
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn leading(&self) -> Option<R> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, c: R) -> Self {
        Self::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![R::zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { coeffs }
    }

    /// Scale by the inverse of the leading coefficient, when it is a unit.
    pub fn to_monic(&self) -> Option<Self> {
        let inv = self.leading()?.inverse()?;
        Some(self.scale(inv))
    }

    /// Euclidean division by a divisor with unit leading coefficient.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let lead = divisor.leading().ok_or(Error::DivisionByZero)?;
        let inv = lead.inverse().ok_or(Error::NonUnitLeading(lead.value()))?;
        let dd = divisor.deg();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![R::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i] * inv;
            if c.is_zero() {
                continue;
            }
            quot[i - dd] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] = rem[i - dd + j] - c * d;
            }
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// `self / divisor` when the division is exact.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        match self.div_rem(divisor) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    /// True when `self` divides `other` (divisor needs a unit leading coefficient).
    pub fn divides(&self, other: &Self) -> bool {
        other.exact_div(self).is_some()
    }

    /// Reduce modulo `x^n - 1` by folding exponents. `n = 0` yields zero.
    pub fn mod_cyclic(&self, n: usize) -> Self {
        if n == 0 {
            return Self::zero();
        }
        let mut out = vec![R::zero(); n.min(self.coeffs.len())];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i % n] = out[i % n] + c;
        }
        Self::new(out)
    }

    /// Coefficient-wise ring map.
    pub fn map<S: Coefficient>(&self, f: impl Fn(R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(|&c| f(c)).collect())
    }

    /// Product of a list of polynomials.
    pub fn product<'a>(factors: impl IntoIterator<Item = &'a Self>) -> Self {
        factors.into_iter().fold(Self::one(), |acc, p| &acc * p)
    }

    /// Coefficients as small integers.
    pub fn to_ints(&self) -> Vec<u8> {
        self.coeffs.iter().map(|c| c.value()).collect()
    }

    /// Canonical order: by degree, then lexicographic on ascending coefficients.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.to_ints().cmp(&other.to_ints()))
    }
}

impl Poly<Z4> {
    /// Binary reduction, coefficient-wise mod 2.
    pub fn reduce(&self) -> Poly<Z2> {
        self.map(Z4::reduce)
    }
}

impl Poly<Z2> {
    /// The 0/1-coefficient lift into `Z4[x]`.
    pub fn lift(&self) -> Poly<Z4> {
        self.map(Z2::lift)
    }

    /// Bitmask of coefficients (bit `i` is the coefficient of `x^i`).
    ///
    /// Only valid for degree < 64.
    pub fn to_bits(&self) -> u64 {
        debug_assert!(self.coeffs.len() <= 64);
        self.coeffs
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, c)| acc | (u64::from(c.value()) << i))
    }

    pub fn from_bits(bits: u64) -> Self {
        Self::new((0..64).map(|i| Z2::new(((bits >> i) & 1) as u8)).collect())
    }
}

impl<R: Coefficient> PartialOrd for Poly<R> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<R: Coefficient> Ord for Poly<R> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_cmp(other)
    }
}

impl<R: Coefficient> Zero for Poly<R> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<R: Coefficient> One for Poly<R> {
    fn one() -> Self {
        Poly::one()
    }
}

impl<R: Coefficient> Add for &Poly<R> {
    type Output = Poly<R>;
    fn add(self, rhs: &Poly<R>) -> Poly<R> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<R: Coefficient> Sub for &Poly<R> {
    type Output = Poly<R>;
    fn sub(self, rhs: &Poly<R>) -> Poly<R> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<R: Coefficient> Mul for &Poly<R> {
    type Output = Poly<R>;
    fn mul(self, rhs: &Poly<R>) -> Poly<R> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j] + a * b;
            }
        }
        Poly::new(out)
    }
}

impl<R: Coefficient> Neg for &Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        Poly::new(self.coeffs.iter().map(|&c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<R: Coefficient> $tr for Poly<R> {
            type Output = Poly<R>;
            fn $m(self, rhs: Poly<R>) -> Poly<R> {
                (&self).$m(&rhs)
            }
        }
        impl<R: Coefficient> $tr<&Poly<R>> for Poly<R> {
            type Output = Poly<R>;
            fn $m(self, rhs: &Poly<R>) -> Poly<R> {
                (&self).$m(rhs)
            }
        }
        impl<R: Coefficient> $tr<Poly<R>> for &Poly<R> {
            type Output = Poly<R>;
            fn $m(self, rhs: Poly<R>) -> Poly<R> {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<R: Coefficient> Neg for Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        -&self
    }
}

impl<R: Coefficient> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match (k, c.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (_, true) => f.write_str("x")?,
                (_, false) => write!(f, "{c}x")?,
            }
            if k > 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

impl<R: Coefficient> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[Z{}]({})", R::MODULUS, self)
    }
}

impl<R: Coefficient> FromStr for Poly<R> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let text: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(err("empty input"));
        }
        let mut terms: Vec<(i64, usize)> = Vec::new();
        let mut i = 0;
        let read_digits = |i: &mut usize| -> Option<u64> {
            let start = *i;
            while *i < text.len() && text[*i].is_ascii_digit() {
                *i += 1;
            }
            if start == *i {
                None
            } else {
                text[start..*i].iter().collect::<String>().parse().ok()
            }
        };
        while i < text.len() {
            let mut sign = 1i64;
            match text[i] {
                '+' => i += 1,
                '-' => {
                    sign = -1;
                    i += 1;
                }
                _ if !terms.is_empty() => return Err(err("expected '+' or '-' between terms")),
                _ => {}
            }
            let coeff = read_digits(&mut i);
            if let Some(c) = coeff {
                if c >= u64::from(R::MODULUS) {
                    return Err(err(&format!(
                        "coefficient {c} is not a residue mod {}",
                        R::MODULUS
                    )));
                }
            }
            if i < text.len() && text[i] == '*' {
                if coeff.is_none() {
                    return Err(err("dangling '*'"));
                }
                i += 1;
                if i >= text.len() || text[i] != 'x' {
                    return Err(err("expected 'x' after '*'"));
                }
            }
            let mut power = 0usize;
            if i < text.len() && text[i] == 'x' {
                i += 1;
                power = 1;
                if i < text.len() && text[i] == '^' {
                    i += 1;
                    let p = read_digits(&mut i).ok_or_else(|| err("missing exponent after '^'"))?;
                    power = usize::try_from(p).map_err(|_| err("exponent too large"))?;
                }
            } else if coeff.is_none() {
                return Err(err("expected a term"));
            }
            if power > MAX_DEGREE {
                return Err(Error::DegreeTooLarge {
                    degree: power,
                    max: MAX_DEGREE,
                });
            }
            terms.push((sign * coeff.unwrap_or(1) as i64, power));
        }
        let deg = terms.iter().map(|t| t.1).max().unwrap_or(0);
        let mut coeffs = vec![R::zero(); deg + 1];
        for (c, p) in terms {
            coeffs[p] = coeffs[p] + R::from_int(c);
        }
        Ok(Self::new(coeffs))
    }
}

impl<R: Coefficient> Serialize for Poly<R> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Coeffs {
            coeffs: Vec<u8>,
        }
        Coeffs {
            coeffs: self.to_ints(),
        }
        .serialize(serializer)
    }
}

impl<'de, R: Coefficient> Deserialize<'de> for Poly<R> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Coeffs { coeffs: Vec<u8> },
        }
        match Repr::deserialize(deserializer)? {
            Repr::Text(s) => s.parse().map_err(serde::de::Error::custom),
            Repr::Coeffs { coeffs } => {
                if let Some(bad) = coeffs.iter().find(|&&c| c >= R::MODULUS) {
                    return Err(serde::de::Error::custom(format!(
                        "coefficient {bad} is not a residue mod {}",
                        R::MODULUS
                    )));
                }
                Ok(Poly::from_ints(
                    &coeffs.iter().map(|&c| i64::from(c)).collect::<Vec<_>>(),
                ))
            }
        }
    }
}

/// Serde adapter writing a polynomial in the text format.
pub mod as_text {
    use super::*;

    pub fn serialize<R: Coefficient, S: Serializer>(
        p: &Poly<R>,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(p)
    }

    pub fn deserialize<'de, R: Coefficient, D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Poly<R>, D::Error> {
        Poly::deserialize(deserializer)
    }
}

/// Serde adapter for lists of polynomials in the text format.
pub mod vec_as_text {
    use super::*;

    pub fn serialize<R: Coefficient, S: Serializer>(
        ps: &[Poly<R>],
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(ps.iter().map(|p| p.to_string()))
    }

    pub fn deserialize<'de, R: Coefficient, D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Vec<Poly<R>>, D::Error> {
        Vec::<Poly<R>>::deserialize(deserializer)
    }
}
