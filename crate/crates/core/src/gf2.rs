//! Arithmetic over `Z2[x]`, the fields `GF(2^m)`, cyclotomic cosets and the
//! factorization of `x^n - 1` for odd `n`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::Coefficient;
use crate::BinPoly;

/// Largest extension degree `m` accepted by [`build_field`].
///
/// Elements of `GF(2^m)` are packed into a `u64`, and every odd `n <= 63`
/// needs `m <= 60`.
pub const MAX_EXTENSION_DEGREE: usize = 60;

/// Monic gcd. `gcd2(a, 0) = a` and `gcd2(0, 0) = 0`.
pub fn gcd2(a: &BinPoly, b: &BinPoly) -> BinPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let r = a.rem(&b).expect("nonzero binary divisor");
        a = b;
        b = r;
    }
    a
}

/// Least common multiple over `Z2`.
pub fn lcm2(a: &BinPoly, b: &BinPoly) -> BinPoly {
    if a.is_zero() || b.is_zero() {
        return BinPoly::zero();
    }
    let g = gcd2(a, b);
    (a * b).exact_div(&g).expect("gcd divides the product")
}

/// Extended gcd: returns `(g, s, t)` with `s*a + t*b = g = gcd2(a, b)`.
///
/// When both inputs are nonzero, `deg s < deg(b/g)` and `deg t < deg(a/g)`.
pub fn ext_gcd2(a: &BinPoly, b: &BinPoly) -> Result<(BinPoly, BinPoly, BinPoly)> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (BinPoly::one(), BinPoly::zero());
    let (mut t0, mut t1) = (BinPoly::zero(), BinPoly::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1)?;
        r0 = std::mem::replace(&mut r1, r);
        let s = &s0 - &(&q * &s1);
        s0 = std::mem::replace(&mut s1, s);
        let t = &t0 - &(&q * &t1);
        t0 = std::mem::replace(&mut t1, t);
    }
    if !a.is_zero() && !b.is_zero() {
        // Reduce s modulo b/g and recompute t so the degree bounds hold.
        let bg = b.exact_div(&r0).expect("gcd divides b");
        let s = s0.rem(&bg)?;
        let t = (&r0 - &(&s * a)).exact_div(b).expect("Bezout identity");
        return Ok((r0, s, t));
    }
    Ok((r0, s0, t0))
}

/// A 2-cyclotomic coset modulo `n`, stored sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Coset {
    exponents: Vec<usize>,
}

impl Coset {
    pub fn exponents(&self) -> &[usize] {
        &self.exponents
    }

    pub fn min(&self) -> usize {
        self.exponents[0]
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.exponents.binary_search(&e).is_ok()
    }
}

impl fmt::Debug for Coset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Coset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.exponents.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

fn check_odd(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroLength(n));
    }
    if n % 2 == 0 {
        return Err(Error::EvenLength(n));
    }
    Ok(())
}

/// Multiplicative order of 2 modulo odd `n` (1 for `n = 1`).
pub fn order_of_two(n: usize) -> usize {
    if n == 1 {
        return 1;
    }
    let mut v = 2 % n;
    let mut m = 1;
    while v != 1 {
        v = v * 2 % n;
        m += 1;
    }
    m
}

/// Partition of `0..n` into 2-cyclotomic cosets, ordered by least element.
pub fn cyclotomic_cosets(n: usize) -> Result<Vec<Coset>> {
    check_odd(n)?;
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut exps = Vec::new();
        let mut e = s;
        while !seen[e] {
            seen[e] = true;
            exps.push(e);
            e = e * 2 % n;
        }
        exps.sort_unstable();
        out.push(Coset { exponents: exps });
    }
    Ok(out)
}

/// `GF(2^m)` together with a primitive `n`-th root of unity `xi`.
#[derive(Clone, Debug)]
pub struct FieldContext {
    pub n: usize,
    pub m: usize,
    /// Primitive polynomial of degree `m` defining the field.
    pub modulus_poly: BinPoly,
    modulus: u64,
    /// `xi_pow[k] = xi^k` for `k < n`.
    xi_pow: Vec<u64>,
}

impl FieldContext {
    /// Product in `GF(2^m)`, elements as bitmasks in the polynomial basis.
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        field_mul(a, b, self.modulus, self.m)
    }

    /// `xi^k`.
    pub fn xi_pow(&self, k: usize) -> u64 {
        self.xi_pow[k % self.n]
    }

    /// Exponent `k` with `xi^k = v`, if `v` is an `n`-th root of unity.
    pub fn xi_log(&self, v: u64) -> Option<usize> {
        self.xi_pow.iter().position(|&p| p == v)
    }

    /// Evaluate a binary polynomial at `xi^k`.
    pub fn eval_at_xi(&self, p: &BinPoly, k: usize) -> u64 {
        let x = self.xi_pow(k);
        p.coeffs()
            .iter()
            .rev()
            .fold(0u64, |acc, c| self.mul(acc, x) ^ u64::from(c.value()))
    }
}

fn field_mul(mut a: u64, mut b: u64, modulus: u64, m: usize) -> u64 {
    let top = 1u64 << m;
    let mut acc = 0u64;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & top != 0 {
            a ^= modulus;
        }
    }
    acc
}

fn field_pow(mut base: u64, mut e: u64, modulus: u64, m: usize) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = field_mul(acc, base, modulus, m);
        }
        base = field_mul(base, base, modulus, m);
        e >>= 1;
    }
    acc
}

fn prime_factors(mut v: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= v {
        if v % d == 0 {
            out.push(d);
            while v % d == 0 {
                v /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if v > 1 {
        out.push(v);
    }
    out
}

/// Least primitive polynomial of degree `m`, compared as integer bitmasks.
fn least_primitive(m: usize) -> u64 {
    if m == 1 {
        // x + 1; GF(2) itself, the root 1 generates the trivial group.
        return 0b11;
    }
    let order = (1u64 << m) - 1;
    let primes = prime_factors(order);
    ((1u64 << m) + 1..1u64 << (m + 1))
        .step_by(2)
        .find(|&f| {
            field_pow(2, order, f, m) == 1
                && primes.iter().all(|&q| field_pow(2, order / q, f, m) != 1)
        })
        .expect("a primitive polynomial exists for every degree")
}

fn field_cache() -> &'static Mutex<HashMap<usize, Arc<FieldContext>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<FieldContext>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Build (or fetch the memoized) field context for odd `n`.
pub fn build_field(n: usize) -> Result<Arc<FieldContext>> {
    check_odd(n)?;
    if let Some(ctx) = field_cache().lock().expect("field cache").get(&n) {
        return Ok(Arc::clone(ctx));
    }
    let m = order_of_two(n);
    if m > MAX_EXTENSION_DEGREE {
        return Err(Error::FieldTooLarge {
            n,
            m,
            max: MAX_EXTENSION_DEGREE,
        });
    }
    let modulus = least_primitive(m);
    let order = (1u64 << m) - 1;
    let xi = if m == 1 {
        1
    } else {
        field_pow(2, order / n as u64, modulus, m)
    };
    let mut xi_pow = Vec::with_capacity(n);
    let mut v = 1u64;
    for _ in 0..n {
        xi_pow.push(v);
        v = field_mul(v, xi, modulus, m);
    }
    debug_assert_eq!(v, 1);
    let ctx = Arc::new(FieldContext {
        n,
        m,
        modulus_poly: BinPoly::from_bits(modulus),
        modulus,
        xi_pow,
    });
    field_cache()
        .lock()
        .expect("field cache")
        .insert(n, Arc::clone(&ctx));
    Ok(ctx)
}

/// An irreducible factor of `x^n - 1` over `Z2` with its root exponents.
pub type BinFactor = (BinPoly, Coset);

fn factor_cache() -> &'static Mutex<HashMap<usize, Arc<Vec<BinFactor>>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<BinFactor>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Irreducible factors of `x^n + 1` over `Z2`, one per cyclotomic coset, in
/// coset order. The factor for coset `S` is the product of `x - xi^k`, `k in S`.
pub fn factor_xn1_gf2(n: usize) -> Result<Arc<Vec<BinFactor>>> {
    check_odd(n)?;
    if let Some(f) = factor_cache().lock().expect("factor cache").get(&n) {
        return Ok(Arc::clone(f));
    }
    let ctx = build_field(n)?;
    let mut out = Vec::new();
    for coset in cyclotomic_cosets(n)? {
        // coefficients in GF(2^m), ascending
        let mut poly = vec![1u64];
        for &k in coset.exponents() {
            let root = ctx.xi_pow(k);
            let mut next = vec![0u64; poly.len() + 1];
            for (i, &c) in poly.iter().enumerate() {
                next[i + 1] ^= c;
                next[i] ^= ctx.mul(c, root);
            }
            poly = next;
        }
        if poly.iter().any(|&c| c > 1) {
            return Err(Error::Consistency(format!(
                "factor for coset {coset} has a coefficient outside GF(2)"
            )));
        }
        let factor = BinPoly::new(poly.iter().map(|&c| crate::Z2::new(c as u8)).collect());
        out.push((factor, coset));
    }
    let out = Arc::new(out);
    factor_cache()
        .lock()
        .expect("factor cache")
        .insert(n, Arc::clone(&out));
    Ok(out)
}

/// Indices (into [`factor_xn1_gf2`]) of the irreducible factors of `p`.
///
/// Errors unless `p` divides `x^n + 1`.
pub fn factor_indices(p: &BinPoly, n: usize) -> Result<Vec<usize>> {
    let xn1 = BinPoly::x_n_minus_one(n);
    if p.is_zero() || !p.divides(&xn1) {
        return Err(Error::NotADivisor {
            poly: p.to_string(),
            n,
        });
    }
    let factors = factor_xn1_gf2(n)?;
    Ok(factors
        .iter()
        .enumerate()
        .filter(|(_, (f, _))| f.divides(p))
        .map(|(i, _)| i)
        .collect())
}

/// Root exponents of a divisor `p` of `x^n + 1`.
pub fn root_set(p: &BinPoly, n: usize) -> Result<BTreeSet<usize>> {
    let factors = factor_xn1_gf2(n)?;
    Ok(factor_indices(p, n)?
        .into_iter()
        .flat_map(|i| factors[i].1.exponents().to_vec())
        .collect())
}

/// Product of the irreducible factors of `x^n + 1` whose coset lies in `roots`.
pub fn poly_from_roots(roots: &BTreeSet<usize>, n: usize) -> Result<BinPoly> {
    let factors = factor_xn1_gf2(n)?;
    Ok(BinPoly::product(
        factors
            .iter()
            .filter(|(_, c)| c.exponents().iter().all(|e| roots.contains(e)))
            .map(|(f, _)| f),
    ))
}

/// The root-product operation `p ⊗ p`: the divisor of `x^n + 1` whose roots
/// are all `xi^(i+j)` with `xi^i`, `xi^j` roots of `p` (`i = j` allowed).
pub fn tensor_square(p: &BinPoly, n: usize) -> Result<BinPoly> {
    let s = root_set(p, n)?;
    let t: BTreeSet<usize> = s
        .iter()
        .flat_map(|&i| s.iter().map(move |&j| (i + j) % n))
        .collect();
    poly_from_roots(&t, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(s: &str) -> BinPoly {
        s.parse().unwrap()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd2(&bp("x+1"), &bp("x^2+x+1")), bp("1"));
        assert_eq!(gcd2(&bp("x-1"), &BinPoly::zero()), bp("x+1"));
        assert_eq!(gcd2(&BinPoly::zero(), &BinPoly::zero()), BinPoly::zero());
        assert_eq!(gcd2(&bp("x^7+1"), &bp("x^3+x+1")), bp("x^3+x+1"));
    }

    #[test]
    fn ext_gcd_examples() {
        let (g, s, t) = ext_gcd2(&bp("x+1"), &bp("x^2+x+1")).unwrap();
        assert_eq!((g, s, t), (bp("1"), bp("x"), bp("1")));
        let p = bp("x^3+x+1");
        let (g, s, t) = ext_gcd2(&bp("1"), &p).unwrap();
        assert_eq!((g, s, t), (bp("1"), bp("1"), bp("0")));
        let (a, b) = (bp("x^3+x+1"), bp("x^3+x^2+1"));
        let (g, s, t) = ext_gcd2(&a, &b).unwrap();
        assert!(g.is_one());
        assert_eq!(&(&s * &a) + &(&t * &b), g);
        assert!(matches!(
            ext_gcd2(&BinPoly::zero(), &BinPoly::zero()),
            Err(Error::BothZero)
        ));
    }

    #[test]
    fn field_examples() {
        assert_eq!(build_field(7).unwrap().m, 3);
        let one = build_field(1).unwrap();
        assert_eq!((one.m, one.xi_pow(0)), (1, 1));
        assert_eq!(build_field(15).unwrap().m, 4);
        assert!(matches!(build_field(8), Err(Error::EvenLength(8))));
        assert!(matches!(build_field(0), Err(Error::ZeroLength(0))));
        // ord_n(2) = 100 for n = 101
        assert!(matches!(build_field(101), Err(Error::FieldTooLarge { .. })));
        // least primitive cubic and quartic
        assert_eq!(build_field(7).unwrap().modulus_poly, bp("x^3+x+1"));
        assert_eq!(build_field(15).unwrap().modulus_poly, bp("x^4+x+1"));
    }

    #[test]
    fn coset_examples() {
        let show = |n| {
            cyclotomic_cosets(n)
                .unwrap()
                .iter()
                .map(|c| c.exponents().to_vec())
                .collect::<Vec<_>>()
        };
        assert_eq!(show(7), vec![vec![0], vec![1, 2, 4], vec![3, 5, 6]]);
        assert_eq!(show(1), vec![vec![0]]);
        assert_eq!(show(3), vec![vec![0], vec![1, 2]]);
    }

    #[test]
    fn factor_examples() {
        let f7: Vec<(String, String)> = factor_xn1_gf2(7)
            .unwrap()
            .iter()
            .map(|(p, c)| (p.to_string(), c.to_string()))
            .collect();
        assert_eq!(
            f7,
            [
                ("1+x".into(), "{0}".into()),
                ("1+x+x^3".into(), "{1,2,4}".into()),
                ("1+x^2+x^3".into(), "{3,5,6}".into()),
            ]
        );
        let f1 = factor_xn1_gf2(1).unwrap();
        assert_eq!(f1.len(), 1);
        assert_eq!(f1[0].0, bp("x+1"));
        let f3 = factor_xn1_gf2(3).unwrap();
        assert_eq!(f3[1].0, bp("x^2+x+1"));
    }

    #[test]
    fn tensor_examples() {
        assert_eq!(tensor_square(&bp("x+1"), 7).unwrap(), bp("x+1"));
        let p3 = tensor_square(&bp("x^3+x+1"), 7).unwrap();
        assert_eq!(p3, bp("x^6+x^5+x^4+x^3+x^2+x+1"));
        assert!(!gcd2(&bp("x^3+x^2+1"), &p3).is_one());
        assert_eq!(tensor_square(&bp("x^2+x+1"), 3).unwrap(), bp("x^3+1"));
        assert_eq!(tensor_square(&bp("1"), 7).unwrap(), bp("1"));
        assert!(tensor_square(&bp("x^2+1"), 7).is_err());
    }
}
