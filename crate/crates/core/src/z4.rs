//! Arithmetic over `Z4[x]`: binary reduction, division, Hensel lifts of the
//! factors of `x^n - 1`, Bezout pairs and divisor lattices.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{self, Coset};
use crate::ring::{Coefficient, Z4};
use crate::{BinPoly, QuatPoly};

/// Coefficient-wise reduction mod 2.
pub fn reduce_mod2(p: &QuatPoly) -> BinPoly {
    p.reduce()
}

/// `a = q*b + rem` with `deg rem < deg b`; `b` needs a unit leading coefficient.
pub fn divmod4(a: &QuatPoly, b: &QuatPoly) -> Result<(QuatPoly, QuatPoly)> {
    a.div_rem(b)
}

/// The monic divisor `H` of `x^n - 1` over `Z4` reducing to `p`.
///
/// Uses `H(x^2) = (-1)^deg(p) * P(x) * P(-x)` for the 0/1 lift `P` of `p`.
pub fn hensel_lift(p: &BinPoly, n: usize) -> Result<QuatPoly> {
    gf2::factor_indices(p, n)?;
    let lift = p.lift();
    let neg: QuatPoly = QuatPoly::new(
        lift.coeffs()
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 1 { -c } else { c })
            .collect(),
    );
    let sq = &lift * &neg;
    let sign = if p.deg() % 2 == 1 { -Z4::new(1) } else { Z4::new(1) };
    let h = QuatPoly::new(sq.coeffs().iter().step_by(2).map(|&c| c * sign).collect());
    debug_assert!(sq.coeffs().iter().skip(1).step_by(2).all(|c| c.value() == 0));
    Ok(h)
}

/// A basic irreducible factor of `x^n - 1` over `Z4` with its root exponents.
pub type QuatFactor = (QuatPoly, Coset);

fn factor_cache() -> &'static Mutex<HashMap<usize, Arc<Vec<QuatFactor>>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<QuatFactor>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Hensel lifts of the binary factors of `x^n - 1`, same order and labels.
pub fn factor_xn1_z4(n: usize) -> Result<Arc<Vec<QuatFactor>>> {
    if let Some(f) = factor_cache().lock().expect("factor cache").get(&n) {
        return Ok(Arc::clone(f));
    }
    let out = gf2::factor_xn1_gf2(n)?
        .iter()
        .map(|(p, c)| Ok((hensel_lift(p, n)?, c.clone())))
        .collect::<Result<Vec<_>>>()?;
    let out = Arc::new(out);
    factor_cache()
        .lock()
        .expect("factor cache")
        .insert(n, Arc::clone(&out));
    Ok(out)
}

/// Indices of the basic irreducible factors of a monic divisor `g` of `x^n - 1`.
pub fn factor_indices4(g: &QuatPoly, n: usize) -> Result<Vec<usize>> {
    let not_divisor = || Error::NotADivisor {
        poly: g.to_string(),
        n,
    };
    if g.is_zero() || !g.is_monic() || !g.divides(&QuatPoly::x_n_minus_one(n)) {
        return Err(not_divisor());
    }
    let idx = gf2::factor_indices(&g.reduce(), n)?;
    let factors = factor_xn1_z4(n)?;
    if QuatPoly::product(idx.iter().map(|&i| &factors[i].0)) != *g {
        return Err(Error::NotSquarefreeDivisor(g.to_string()));
    }
    Ok(idx)
}

/// Root exponents of a monic divisor of `x^n - 1` over `Z4`.
pub fn root_set4(g: &QuatPoly, n: usize) -> Result<BTreeSet<usize>> {
    let factors = factor_xn1_z4(n)?;
    Ok(factor_indices4(g, n)?
        .into_iter()
        .flat_map(|i| factors[i].1.exponents().to_vec())
        .collect())
}

/// Pair `(lambda, mu)` with `lambda*h + mu*g = 1` in `Z4[x]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BezoutPair {
    #[serde(with = "crate::poly::as_text")]
    pub lambda: QuatPoly,
    #[serde(with = "crate::poly::as_text")]
    pub mu: QuatPoly,
}

/// Lift the binary Bezout identity for `h~, g~` to `Z4` with one Newton step.
pub fn bezout_lift(h: &QuatPoly, g: &QuatPoly) -> Result<BezoutPair> {
    let (d, s, t) = gf2::ext_gcd2(&h.reduce(), &g.reduce())
        .map_err(|_| Error::NotCoprime(h.to_string(), g.to_string()))?;
    if !d.is_one() {
        return Err(Error::NotCoprime(h.to_string(), g.to_string()));
    }
    let (l0, m0) = (s.lift(), t.lift());
    let e = &(&(&l0 * h) + &(&m0 * g)) - &QuatPoly::one();
    let pair = BezoutPair {
        lambda: &l0 - &(&l0 * &e),
        mu: &m0 - &(&m0 * &e),
    };
    debug_assert!((&(&pair.lambda * h) + &(&pair.mu * g)).is_one());
    Ok(pair)
}

/// All divisors of a squarefree divisor `g` of `x^n - 1`, in canonical order.
pub fn divisors_of(g: &QuatPoly, n: usize) -> Result<Vec<QuatPoly>> {
    let idx = factor_indices4(g, n)?;
    let factors = factor_xn1_z4(n)?;
    let mut out: Vec<QuatPoly> = (0u64..1 << idx.len())
        .map(|mask| {
            QuatPoly::product(
                idx.iter()
                    .enumerate()
                    .filter(|(bit, _)| mask >> bit & 1 == 1)
                    .map(|(_, &i)| &factors[i].0),
            )
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Least common multiple of squarefree divisors of `x^n - 1`.
pub fn lcm4(ks: &[QuatPoly], n: usize) -> Result<QuatPoly> {
    let factors = factor_xn1_z4(n)?;
    let mut union = BTreeSet::new();
    for k in ks {
        union.extend(factor_indices4(k, n)?);
    }
    Ok(QuatPoly::product(union.iter().map(|&i| &factors[i].0)))
}

/// Greatest common divisor of two squarefree divisors of `x^n - 1`.
pub fn gcd4(a: &QuatPoly, b: &QuatPoly, n: usize) -> Result<QuatPoly> {
    let factors = factor_xn1_z4(n)?;
    let ia: BTreeSet<usize> = factor_indices4(a, n)?.into_iter().collect();
    let ib: BTreeSet<usize> = factor_indices4(b, n)?.into_iter().collect();
    Ok(QuatPoly::product(ia.intersection(&ib).map(|&i| &factors[i].0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(s: &str) -> QuatPoly {
        s.parse().unwrap()
    }

    fn bp(s: &str) -> BinPoly {
        s.parse().unwrap()
    }

    #[test]
    fn reduction() {
        assert_eq!(reduce_mod2(&qp("x^3+2x^2+x+3")), bp("x^3+x+1"));
        assert_eq!(reduce_mod2(&QuatPoly::zero()), BinPoly::zero());
        assert_eq!(reduce_mod2(&qp("2x^2+2")), BinPoly::zero());
    }

    #[test]
    fn division() {
        assert_eq!(
            divmod4(&qp("x^3-1"), &qp("x-1")).unwrap(),
            (qp("x^2+x+1"), QuatPoly::zero())
        );
        let (_, r) = divmod4(&qp("x^7-1"), &qp("x^3+2x^2+x+3")).unwrap();
        assert!(r.is_zero());
        assert_eq!(divmod4(&qp("2x+1"), &qp("x+1")).unwrap(), (qp("2"), qp("3")));
    }

    #[test]
    fn lifts() {
        assert_eq!(hensel_lift(&bp("x+1"), 7).unwrap(), qp("x+3"));
        assert_eq!(hensel_lift(&bp("x^3+x+1"), 7).unwrap(), qp("x^3+2x^2+x+3"));
        assert_eq!(hensel_lift(&bp("x^4+x+1"), 15).unwrap(), qp("x^4+2x^2+3x+1"));
        assert!(hensel_lift(&bp("x^2+1"), 7).is_err());
    }

    #[test]
    fn factorizations() {
        let f7: Vec<String> = factor_xn1_z4(7)
            .unwrap()
            .iter()
            .map(|(p, _)| p.to_string())
            .collect();
        assert_eq!(f7, ["3+x", "3+x+2x^2+x^3", "3+2x+3x^2+x^3"]);
        assert_eq!(factor_xn1_z4(1).unwrap()[0].0, qp("x+3"));
        let f3 = factor_xn1_z4(3).unwrap();
        assert_eq!(f3[1].0, qp("x^2+x+1"));
    }

    #[test]
    fn bezout() {
        let pair = bezout_lift(&qp("x-1"), &qp("x^2+x+1")).unwrap();
        assert_eq!(pair.lambda, qp("2x^3+x"));
        assert_eq!(pair.mu, qp("2x^2+1"));
        let pair = bezout_lift(&qp("1"), &qp("x^3+2x^2+x+3")).unwrap();
        assert_eq!((pair.lambda, pair.mu), (qp("1"), qp("0")));
        let (h, g) = (qp("x^3+2x^2+x+3"), qp("x^3+3x^2+2x+3"));
        let pair = bezout_lift(&h, &g).unwrap();
        assert!((&(&pair.lambda * &h) + &(&pair.mu * &g)).is_one());
        assert!(bezout_lift(&qp("x-1"), &qp("x^2-1")).is_err());
    }

    #[test]
    fn divisor_lattice() {
        assert_eq!(
            divisors_of(&qp("x^2+x+1"), 3).unwrap(),
            vec![qp("1"), qp("x^2+x+1")]
        );
        let (p3, q3) = (qp("x^3+2x^2+x+3"), qp("x^3+3x^2+2x+3"));
        let g = &p3 * &q3;
        assert_eq!(
            divisors_of(&g, 7).unwrap(),
            vec![qp("1"), p3.clone(), q3.clone(), g.clone()]
        );
        assert_eq!(divisors_of(&qp("1"), 7).unwrap(), vec![qp("1")]);
        assert_eq!(lcm4(&[p3.clone(), q3.clone()], 7).unwrap(), g);
        assert_eq!(lcm4(&[p3.clone()], 7).unwrap(), p3);
        assert_eq!(lcm4(&[qp("x+3"), p3.clone()], 7).unwrap(), &qp("x+3") * &p3);
        assert_eq!(gcd4(&g, &p3, 7).unwrap(), p3);
        assert!(divisors_of(&qp("x^2+1"), 7).is_err());
    }
}
