//! Coefficient rings Z2 and Z4.
//!
//! Both are tiny residue rings stored in a `u8`. Polynomial code in
//! [`crate::poly`] is generic over the [`Coefficient`] trait so the same
//! arithmetic serves `Z2[x]` and `Z4[x]`.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Zero};

/// A finite residue ring `Z/qZ` usable as a polynomial coefficient.
pub trait Coefficient:
    Copy
    + Eq
    + Ord
    + Hash
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Size of the ring.
    const MODULUS: u8;

    /// Reduce an arbitrary integer into the ring.
    fn from_int(v: i64) -> Self;

    /// Canonical representative in `0..MODULUS`.
    fn value(self) -> u8;

    /// Multiplicative inverse, if the element is a unit.
    fn inverse(self) -> Option<Self>;

    fn is_unit(self) -> bool {
        self.inverse().is_some()
    }
}

macro_rules! residue_ring {
    ($name:ident, $q:expr, $doc:expr) => {
        #[doc = $doc]
        #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
        pub struct $name(u8);

        impl $name {
            pub const fn new(v: u8) -> Self {
                $name(v % $q)
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self.0)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self.0)
            }
        }

        impl Add for $name {
            type Output = Self;
            fn add(self, rhs: Self) -> Self {
                $name((self.0 + rhs.0) % $q)
            }
        }

        impl AddAssign for $name {
            fn add_assign(&mut self, rhs: Self) {
                *self = *self + rhs;
            }
        }

        impl Sub for $name {
            type Output = Self;
            fn sub(self, rhs: Self) -> Self {
                $name((self.0 + $q - rhs.0) % $q)
            }
        }

        impl Mul for $name {
            type Output = Self;
            fn mul(self, rhs: Self) -> Self {
                $name((self.0 * rhs.0) % $q)
            }
        }

        impl Neg for $name {
            type Output = Self;
            fn neg(self) -> Self {
                $name(($q - self.0) % $q)
            }
        }

        impl Zero for $name {
            fn zero() -> Self {
                $name(0)
            }
            fn is_zero(&self) -> bool {
                self.0 == 0
            }
        }

        impl One for $name {
            fn one() -> Self {
                $name(1)
            }
        }

        impl From<$name> for u8 {
            fn from(v: $name) -> u8 {
                v.0
            }
        }
    };
}

residue_ring!(Z2, 2, "The binary field `Z/2Z`.");
residue_ring!(Z4, 4, "The ring of integers modulo 4.");

impl Coefficient for Z2 {
    const MODULUS: u8 = 2;

    fn from_int(v: i64) -> Self {
        Z2(v.rem_euclid(2) as u8)
    }

    fn value(self) -> u8 {
        self.0
    }

    fn inverse(self) -> Option<Self> {
        (self.0 == 1).then_some(self)
    }
}

impl Coefficient for Z4 {
    const MODULUS: u8 = 4;

    fn from_int(v: i64) -> Self {
        Z4(v.rem_euclid(4) as u8)
    }

    fn value(self) -> u8 {
        self.0
    }

    fn inverse(self) -> Option<Self> {
        // 1 and 3 are self-inverse
        (self.0 % 2 == 1).then_some(self)
    }
}

impl Z4 {
    /// Binary reduction of a residue.
    pub fn reduce(self) -> Z2 {
        Z2(self.0 & 1)
    }
}

impl Z2 {
    /// The 0/1 lift into Z4.
    pub fn lift(self) -> Z4 {
        Z4(self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z4_units() {
        let units: Vec<u8> = (0..4)
            .map(Z4::new)
            .filter(|z| z.is_unit())
            .map(u8::from)
            .collect();
        assert_eq!(units, vec![1, 3]);
        assert_eq!(Z4::new(3) * Z4::new(3), Z4::one());
        assert_eq!(-Z4::new(1), Z4::new(3));
        assert_eq!(Z4::new(2) + Z4::new(3), Z4::new(1));
    }

    #[test]
    fn z2_is_a_field() {
        assert_eq!(Z2::one().inverse(), Some(Z2::one()));
        assert_eq!(Z2::zero().inverse(), None);
        assert_eq!(Z2::one() + Z2::one(), Z2::zero());
        assert_eq!(Z2::from_int(-3), Z2::one());
    }
}
