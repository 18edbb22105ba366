//! Z2Z4-additive cyclic codes: polynomial arithmetic over `Z2` and `Z4`,
//! factorization of `x^n - 1`, codes over `Z2^alpha x Z4^beta` with the Gray
//! map, and closed forms for the kernel and rank of cyclic codes.

pub mod code;
pub mod cyclic;
pub mod error;
pub mod gf2;
pub mod poly;
pub mod ring;
pub mod verify;
pub mod z4;

pub use error::{Error, Result};
pub use ring::{Coefficient, Z2, Z4};

/// Polynomials over `Z2`.
pub type BinPoly = poly::Poly<Z2>;
/// Polynomials over `Z4`.
pub type QuatPoly = poly::Poly<Z4>;
