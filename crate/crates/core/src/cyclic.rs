//! Z2Z4-additive cyclic codes in standard polynomial form
//! `<(b | 0), (l | fh + 2f)>` and the closed forms for their type, kernel
//! and rank.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::code::{check_ambient, AdditiveCode, CodeType, Word};
use crate::error::{Error, Result, SpecViolation};
use crate::gf2::{self, gcd2, tensor_square};
use crate::poly::as_text;
use crate::ring::{Coefficient, Z4};
use crate::z4::{self, bezout_lift, divisors_of, hensel_lift, lcm4};
use crate::{BinPoly, QuatPoly};

/// A cyclic code `<(b | 0), (ell | f*h + 2f)>` with `f*h*g = x^beta - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclicSpec {
    pub alpha: usize,
    pub beta: usize,
    #[serde(with = "as_text")]
    pub b: BinPoly,
    #[serde(with = "as_text")]
    pub ell: BinPoly,
    #[serde(with = "as_text")]
    pub f: QuatPoly,
    #[serde(with = "as_text")]
    pub h: QuatPoly,
    #[serde(with = "as_text")]
    pub g: QuatPoly,
}

impl fmt::Display for CyclicSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "alpha={} beta={} b={} ell={} f={} h={} g={}",
            self.alpha, self.beta, self.b, self.ell, self.f, self.h, self.g
        )
    }
}

fn invalid(v: SpecViolation) -> Error {
    Error::InvalidSpec(v)
}

fn normalize(p: &QuatPoly, name: &str) -> Result<QuatPoly> {
    p.to_monic().ok_or_else(|| {
        invalid(SpecViolation::NotNormalizable(format!(
            "{name} = {p} has no unit leading coefficient"
        )))
    })
}

/// `p mod m` over `Z2`, where a zero or constant `m` gives 0.
fn rem_or_zero(p: &BinPoly, m: &BinPoly) -> BinPoly {
    match m.degree() {
        None | Some(0) => BinPoly::zero(),
        Some(_) => p.rem(m).expect("nonzero modulus"),
    }
}

fn deg(p: &BinPoly) -> usize {
    p.degree().unwrap_or(0)
}

fn gcd(n: usize, m: usize) -> usize {
    if m == 0 {
        n
    } else {
        gcd(m, n % m)
    }
}

/// Number of shifts that generate every cyclic shift of a word.
fn period(alpha: usize, beta: usize) -> usize {
    match (alpha, beta) {
        (0, b) => b.max(1),
        (a, 0) => a,
        (a, b) => a / gcd(a, b) * b,
    }
}

/// A generator `(x | y)` of a cyclic code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyPair {
    #[serde(with = "as_text")]
    pub x: BinPoly,
    #[serde(with = "as_text")]
    pub y: QuatPoly,
}

impl PolyPair {
    pub fn new(x: BinPoly, y: QuatPoly) -> Self {
        PolyPair { x, y }
    }

    /// The word with coefficients of `x mod x^alpha - 1` and `y mod x^beta - 1`.
    pub fn to_word(&self, alpha: usize, beta: usize) -> Word {
        let x = self.x.mod_cyclic(alpha);
        let y = self.y.mod_cyclic(beta);
        let xs: Vec<u8> = (0..alpha).map(|i| x.coeff(i).value()).collect();
        let ys: Vec<u8> = (0..beta).map(|i| y.coeff(i).value()).collect();
        Word::new(&xs, &ys).expect("ambient checked by the caller")
    }
}

impl fmt::Display for PolyPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} | {})", self.x, self.y)
    }
}

/// The Z4[x]-module generated by a list of pairs.
pub fn materialize_pairs(alpha: usize, beta: usize, pairs: &[PolyPair]) -> Result<AdditiveCode> {
    check_ambient(alpha, beta)?;
    let mut gens = Vec::new();
    for p in pairs {
        let mut w = p.to_word(alpha, beta);
        for _ in 0..period(alpha, beta) {
            gens.push(w);
            w = w.shift();
        }
    }
    AdditiveCode::from_generators(alpha, beta, &gens)
}

impl CyclicSpec {
    /// Parse the seven components from text.
    pub fn parse(alpha: usize, beta: usize, b: &str, ell: &str, f: &str, h: &str, g: &str) -> Result<Self> {
        Ok(CyclicSpec {
            alpha,
            beta,
            b: b.parse()?,
            ell: ell.parse()?,
            f: f.parse()?,
            h: h.parse()?,
            g: g.parse()?,
        })
    }

    /// Check the structural requirements and return the normalized spec:
    /// monic `f`, `h`, `g` and `ell` reduced modulo `b`.
    pub fn validate(&self) -> Result<CyclicSpec> {
        let (alpha, beta) = (self.alpha, self.beta);
        if beta % 2 == 0 {
            return Err(invalid(SpecViolation::OddBetaOnly(beta)));
        }
        check_ambient(alpha, beta)?;
        let f = normalize(&self.f, "f")?;
        let h = normalize(&self.h, "h")?;
        let g = normalize(&self.g, "g")?;
        if &(&f * &h) * &g != QuatPoly::x_n_minus_one(beta) {
            return Err(invalid(SpecViolation::Factorization(format!(
                "f*h*g = {} is not x^{beta}-1",
                &(&f * &h) * &g
            ))));
        }
        if self.b.is_zero() {
            return Err(invalid(SpecViolation::Divisibility("b = 0".into())));
        }
        if alpha == 0 && !self.b.is_one() {
            return Err(invalid(SpecViolation::Divisibility(format!(
                "alpha = 0 requires b = 1, got {}",
                self.b
            ))));
        }
        if alpha > 0 && !self.b.divides(&BinPoly::x_n_minus_one(alpha)) {
            return Err(invalid(SpecViolation::Divisibility(format!(
                "b = {} does not divide x^{alpha}-1",
                self.b
            ))));
        }
        let b = self.b.clone();
        let ell = rem_or_zero(&self.ell, &b);
        let (ft, ht, gt) = (f.reduce(), h.reduce(), g.reduce());
        let hg = &ht * &gt;
        if !b.divides(&(&hg * &gcd2(&b, &ell))) {
            return Err(invalid(SpecViolation::Inconsistent(format!(
                "b = {b} does not divide ((x^{beta}-1)/f~) gcd(b, ell) with ell = {ell}"
            ))));
        }
        if !b.divides(&(&ht * &gcd2(&b, &(&ell * &gt)))) {
            return Err(invalid(SpecViolation::Inconsistent(format!(
                "b = {b} does not divide h~ gcd(b, ell g~) with ell = {ell}"
            ))));
        }
        debug_assert!(ft.divides(&BinPoly::x_n_minus_one(beta)));
        Ok(CyclicSpec {
            alpha,
            beta,
            b,
            ell,
            f,
            h,
            g,
        })
    }

    /// `log2 |C| = alpha - deg b + 2 deg g + deg h`.
    pub fn log2_cardinality(&self) -> usize {
        self.alpha - deg(&self.b) + 2 * self.g.deg() + self.h.deg()
    }

    pub fn cardinality(&self) -> u128 {
        1u128 << self.log2_cardinality()
    }

    /// Type from the degrees of the generator polynomials.
    pub fn type_from_degrees(&self) -> CodeType {
        let gt = self.g.reduce();
        let gb_lg = gcd2(&self.b, &(&self.ell * &gt));
        let gb_l = gcd2(&self.b, &self.ell);
        let delta = self.g.deg();
        let delta1 = deg(&gb_lg) - deg(&gb_l);
        CodeType {
            alpha: self.alpha,
            beta: self.beta,
            gamma: self.alpha - deg(&self.b) + self.h.deg(),
            delta,
            kappa: self.alpha - deg(&gb_lg),
            kappa1: self.alpha - deg(&self.b),
            kappa2: deg(&self.b) - deg(&gb_lg),
            delta1: Some(delta1),
            delta2: Some(delta - delta1),
        }
    }

    /// The two standard generators.
    pub fn generators(&self) -> Vec<PolyPair> {
        let fh = &self.f * &self.h;
        vec![
            PolyPair::new(self.b.clone(), QuatPoly::zero()),
            PolyPair::new(self.ell.clone(), &fh + &self.f.scale(Z4::new(2))),
        ]
    }

    /// The code generated by all shifts of the two generators.
    pub fn materialize(&self) -> Result<AdditiveCode> {
        materialize_pairs(self.alpha, self.beta, &self.generators())
    }

    /// Bezout pair for `h`, `g` and the binary reduction of `mu`.
    fn mu_tilde(&self) -> Result<BinPoly> {
        Ok(bezout_lift(&self.h, &self.g)?.mu.reduce())
    }

    /// `mu~ * ell * g~ mod b`.
    fn mu_ell_g(&self) -> Result<BinPoly> {
        let p = &(&self.mu_tilde()? * &self.ell) * &self.g.reduce();
        Ok(rem_or_zero(&p, &self.b))
    }

    /// `gcd(f~ b / gcd(b, ell g~), g~ (x) g~)`; the Gray image is linear iff it is 1.
    pub fn linearity_witness(&self) -> Result<BinPoly> {
        linearity_witness(&self.b, &self.ell, &self.f.reduce(), &self.g.reduce(), self.beta)
    }

    pub fn gray_linear(&self) -> Result<bool> {
        Ok(self.linearity_witness()?.is_one())
    }

    /// Generators `(b | 0)`, `(mu~ ell g~ mod b | 2f)` of `C_b`.
    pub fn cb_generators(&self) -> Result<Vec<PolyPair>> {
        Ok(vec![
            PolyPair::new(self.b.clone(), QuatPoly::zero()),
            PolyPair::new(self.mu_ell_g()?, self.f.scale(Z4::new(2))),
        ])
    }

    /// Generators `(b | 0)`, `(ell' | fh)`, `(mu~ ell g~ | 2f)` with
    /// `ell' = ell - mu~ ell g~ mod b`.
    pub fn three_gen_form(&self) -> Result<Vec<PolyPair>> {
        let m = self.mu_ell_g()?;
        let ell_prime = rem_or_zero(&(&self.ell - &m), &self.b);
        Ok(vec![
            PolyPair::new(self.b.clone(), QuatPoly::zero()),
            PolyPair::new(ell_prime, &self.f * &self.h),
            PolyPair::new(m, self.f.scale(Z4::new(2))),
        ])
    }

    /// `ell_k = k~ ell + (1 - k~) mu~ ell g~ mod b` for a divisor `k` of `g`.
    pub fn ell_k(&self, k: &QuatPoly) -> Result<BinPoly> {
        if self.g.exact_div(k).is_none() {
            return Err(Error::NotDividingG(k.to_string()));
        }
        let kt = k.reduce();
        let m = self.mu_ell_g()?;
        let p = &(&kt * &self.ell) + &(&(&BinPoly::one() - &kt) * &m);
        Ok(rem_or_zero(&p, &self.b))
    }

    /// The subcode `<(b | 0), (ell_k | fhk + 2f)>` for a divisor `k` of `g`.
    pub fn subcode(&self, k: &QuatPoly) -> Result<CyclicSpec> {
        let ell = self.ell_k(k)?;
        let g = self
            .g
            .exact_div(k)
            .ok_or_else(|| Error::NotDividingG(k.to_string()))?;
        Ok(CyclicSpec {
            alpha: self.alpha,
            beta: self.beta,
            b: self.b.clone(),
            ell,
            f: self.f.clone(),
            h: &self.h * k,
            g,
        })
    }

    /// Divisors `k` of `g` whose subcode has a linear Gray image.
    pub fn linear_subcode_divisors(&self) -> Result<Vec<QuatPoly>> {
        let mut out = Vec::new();
        for k in divisors_of(&self.g, self.beta)? {
            if self.subcode(&k)?.gray_linear()? {
                out.push(k);
            }
        }
        Ok(out)
    }

    /// Qualifying divisors of least degree.
    pub fn minimal_divisors(&self) -> Result<Vec<QuatPoly>> {
        let ks = self.linear_subcode_divisors()?;
        let least = ks.iter().map(QuatPoly::deg).min().unwrap_or(0);
        Ok(ks.into_iter().filter(|k| k.deg() == least).collect())
    }

    /// Maximal cyclic subcodes of the form `subcode(k)` with linear Gray image.
    pub fn maximal_linear_cyclic_subcodes(&self) -> Result<Vec<CyclicSpec>> {
        self.minimal_divisors()?
            .iter()
            .map(|k| self.subcode(k))
            .collect()
    }

    /// Intersection of the subcodes for `k1` and `k2`: the subcode for `lcm(k1, k2)`.
    pub fn intersect_subcodes(&self, k1: &QuatPoly, k2: &QuatPoly) -> Result<CyclicSpec> {
        for k in [k1, k2] {
            if self.g.exact_div(k).is_none() {
                return Err(Error::NotDividingG(k.to_string()));
            }
        }
        self.subcode(&lcm4(&[k1.clone(), k2.clone()], self.beta)?)
    }

    /// Divisor `k` of `g` collecting the factors whose order-four directions
    /// leave the kernel: `pi` belongs to `k` when some root sum over
    /// `Roots(pi) + Roots(g)` is a root of `gcd(f~ e, x^beta - 1)`, with
    /// `e = b / gcd(b, ell g~)`.
    pub fn kernel_divisor(&self) -> Result<QuatPoly> {
        let beta = self.beta;
        let gt = self.g.reduce();
        let e = self.b.exact_div(&gcd2(&self.b, &(&self.ell * &gt))).expect("gcd divides b");
        let blocked = gf2::root_set(&gcd2(&(&self.f.reduce() * &e), &BinPoly::x_n_minus_one(beta)), beta)?;
        let roots_g = gf2::root_set(&gt, beta)?;
        let factors = z4::factor_xn1_z4(beta)?;
        let hits = z4::factor_indices4(&self.g, beta)?.into_iter().filter(|&i| {
            factors[i]
                .1
                .exponents()
                .iter()
                .any(|a| roots_g.iter().any(|b| blocked.contains(&((a + b) % beta))))
        });
        Ok(QuatPoly::product(hits.map(|i| &factors[i].0)))
    }

    /// Generators of the kernel `K(C)`.
    pub fn kernel_spec(&self) -> Result<KernelResult> {
        let minimal = self.minimal_divisors()?;
        let k_prime = self.kernel_divisor()?;
        let spec_k = self.subcode(&k_prime)?;
        Ok(KernelResult {
            dim: spec_k.log2_cardinality(),
            ell_k: spec_k.ell.clone(),
            minimal_divisors: minimal,
            k_prime,
            spec_k,
        })
    }

    /// `lcm` of the least-degree divisors with linear subcode. Agrees with
    /// [`kernel_divisor`](Self::kernel_divisor) for short lengths but can be
    /// too small once `g` has enough factors.
    pub fn minimal_divisor_lcm(&self) -> Result<QuatPoly> {
        lcm4(&self.minimal_divisors()?, self.beta)
    }

    /// Generators of `R(C)`.
    pub fn rank_spec(&self) -> Result<RankResult> {
        let (r, _) = quaternary_rank_spec(&self.f, &self.h, &self.g, self.beta)?;
        let gt = self.g.reduce();
        let ht = self.h.reduce();
        // Part of h~ whose directions pair with no product of g~ directions.
        let h1 = ht
            .exact_div(&gcd2(&ht, &tensor_square(&gt, self.beta)?))
            .expect("gcd divides h~");
        let b_r = gcd2(&self.b, &(&(&gt * &h1) * &self.ell));
        let a = if h1.is_one() {
            BinPoly::zero()
        } else {
            let (d, s, _) = gf2::ext_gcd2(&r.reduce(), &h1)?;
            if !d.is_one() {
                return Err(Error::Consistency(format!("r~ = {} is not invertible mod {h1}", r.reduce())));
            }
            s
        };
        let m = self.mu_ell_g()?;
        let ell_r = rem_or_zero(&(&self.ell + &(&(&a - &BinPoly::one()) * &m)), &b_r);
        let f_r = self.f.exact_div(&r).expect("r divides f");
        let spec_r = CyclicSpec {
            alpha: self.alpha,
            beta: self.beta,
            b: b_r.clone(),
            ell: ell_r.clone(),
            f: f_r,
            h: &self.h * &r,
            g: self.g.clone(),
        };
        Ok(RankResult {
            rank: spec_r.log2_cardinality(),
            r,
            b_r,
            ell_r,
            spec_r,
        })
    }

    /// Generators `(b | 0)`, `(ell | fh + 2f/r)` of `R(C)` as given by the
    /// rank spec, for materialization.
    pub fn rank_generators(&self) -> Result<Vec<PolyPair>> {
        Ok(self.rank_spec()?.spec_r.generators())
    }
}

/// `gcd(f~ b / gcd(b, ell g~), g~ (x) g~)`.
fn linearity_witness(b: &BinPoly, ell: &BinPoly, ft: &BinPoly, gt: &BinPoly, beta: usize) -> Result<BinPoly> {
    let e = b.exact_div(&gcd2(b, &(ell * gt))).expect("gcd divides b");
    Ok(gcd2(&(ft * &e), &tensor_square(gt, beta)?))
}

/// `gcd(f~, g~ (x) g~) = 1`: the Gray image of `<fh + 2f>` is linear.
pub fn quaternary_gray_linear(f: &QuatPoly, h: &QuatPoly, g: &QuatPoly, beta: usize) -> Result<bool> {
    check_factorization(f, h, g, beta)?;
    Ok(gcd2(&f.reduce(), &tensor_square(&g.reduce(), beta)?).is_one())
}

fn check_factorization(f: &QuatPoly, h: &QuatPoly, g: &QuatPoly, beta: usize) -> Result<()> {
    if &(f * h) * g != QuatPoly::x_n_minus_one(beta) {
        return Err(invalid(SpecViolation::Factorization(format!(
            "f*h*g is not x^{beta}-1"
        ))));
    }
    Ok(())
}

/// `r` = Hensel lift of `gcd(f~, g~ (x) g~)` and the generator `fh + 2f/r`
/// of the rank code of `<fh + 2f>`.
pub fn quaternary_rank_spec(f: &QuatPoly, h: &QuatPoly, g: &QuatPoly, beta: usize) -> Result<(QuatPoly, QuatPoly)> {
    check_factorization(f, h, g, beta)?;
    let d = gcd2(&f.reduce(), &tensor_square(&g.reduce(), beta)?);
    let r = hensel_lift(&d, beta)?;
    let f_r = f
        .exact_div(&r)
        .ok_or_else(|| Error::Consistency(format!("r = {r} does not divide f = {f}")))?;
    Ok((r, &(f * h) + &f_r.scale(Z4::new(2))))
}

/// Kernel generators: `K(C) = <(b | 0), (ell_k | fhk + 2f)>`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelResult {
    pub spec_k: CyclicSpec,
    #[serde(with = "as_text")]
    pub k_prime: QuatPoly,
    #[serde(with = "crate::poly::vec_as_text")]
    pub minimal_divisors: Vec<QuatPoly>,
    #[serde(with = "as_text")]
    pub ell_k: BinPoly,
    pub dim: usize,
}

/// Rank generators: `R(C) = <(b_r | 0), (ell_r | fh + 2f/r)>`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankResult {
    pub spec_r: CyclicSpec,
    #[serde(with = "as_text")]
    pub r: QuatPoly,
    #[serde(with = "as_text")]
    pub b_r: BinPoly,
    #[serde(with = "as_text")]
    pub ell_r: BinPoly,
    pub rank: usize,
}

fn check_type_bounds(t: &CodeType) -> Result<()> {
    let ok = t.alpha + t.beta > 0
        && t.gamma + t.delta > 0
        && t.gamma + t.delta <= t.beta + t.kappa
        && t.kappa <= t.alpha.min(t.gamma);
    if !ok {
        return Err(Error::InvalidType(format!(
            "{t} needs 0 < gamma + delta <= beta + kappa and kappa <= min(alpha, gamma)"
        )));
    }
    Ok(())
}

/// Attainable kernel dimensions for (not necessarily cyclic) codes of type `t`.
pub fn kernel_dim_candidates(t: &CodeType) -> Result<BTreeSet<usize>> {
    check_type_bounds(t)?;
    let s = t.beta as isize - (t.gamma as isize - t.kappa as isize) - t.delta as isize;
    let mut kbar = BTreeSet::from([0usize]);
    if s >= 1 {
        kbar.extend((2..=t.delta).filter(|k| s >= 2 || k % 2 == 0));
    }
    Ok(kbar.iter().map(|k| t.gamma + 2 * t.delta - k).collect())
}

/// Attainable ranks for (not necessarily cyclic) codes of type `t`.
pub fn rank_candidates(t: &CodeType) -> Result<BTreeSet<usize>> {
    check_type_bounds(t)?;
    let lo = t.gamma + 2 * t.delta;
    let choose2 = t.delta * t.delta.saturating_sub(1) / 2;
    let hi = (t.beta + t.delta + t.kappa).min(lo + choose2);
    Ok((lo..=hi).collect())
}

/// Type filter `alpha,beta:gamma,delta[:kappa]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TypeFilter {
    pub alpha: usize,
    pub beta: usize,
    pub gamma: usize,
    pub delta: usize,
    pub kappa: Option<usize>,
}

impl TypeFilter {
    pub fn matches(&self, t: &CodeType) -> bool {
        t.alpha == self.alpha
            && t.beta == self.beta
            && t.gamma == self.gamma
            && t.delta == self.delta
            && self.kappa.map_or(true, |k| k == t.kappa)
    }
}

impl FromStr for TypeFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidType(format!("cannot parse type filter {s:?}; expected alpha,beta:gamma,delta[:kappa]"));
        let parts: Vec<&str> = s.split([':', ';']).map(str::trim).collect();
        if parts.len() < 2 || parts.len() > 3 {
            return Err(bad());
        }
        let pair = |p: &str| -> Result<(usize, usize)> {
            let (a, b) = p.split_once(',').ok_or_else(bad)?;
            Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
        };
        let (alpha, beta) = pair(parts[0])?;
        let (gamma, delta) = pair(parts[1])?;
        let kappa = match parts.get(2) {
            Some(k) => Some(k.parse().map_err(|_| bad())?),
            None => None,
        };
        Ok(TypeFilter {
            alpha,
            beta,
            gamma,
            delta,
            kappa,
        })
    }
}

/// A valid spec from an exhaustive enumeration, with the fingerprint of
/// the code it generates.
#[derive(Clone, Debug, Serialize)]
pub struct SpecEntry {
    pub spec: CyclicSpec,
    pub fingerprint: String,
}

/// Largest number of candidate specs [`enumerate_cyclic_specs`] will examine.
pub const MAX_CANDIDATES: u128 = 1 << 24;

/// Divisors of `x^alpha - 1` over `Z2` in canonical order (`[1]` for `alpha = 0`).
pub fn binary_divisors(alpha: usize) -> Result<Vec<BinPoly>> {
    if alpha == 0 {
        return Ok(vec![BinPoly::one()]);
    }
    let odd = alpha >> alpha.trailing_zeros();
    let mult = 1usize << alpha.trailing_zeros();
    let factors = gf2::factor_xn1_gf2(odd)?;
    let mut out = vec![BinPoly::one()];
    for (p, _) in factors.iter() {
        let mut next = Vec::new();
        for d in &out {
            let mut q = d.clone();
            for _ in 0..=mult {
                next.push(q.clone());
                q = &q * p;
            }
        }
        out = next;
    }
    out.sort();
    Ok(out)
}

/// Number of `(b, ell, f, h, g)` tuples before validation.
pub fn candidate_count(alpha: usize, beta: usize) -> Result<u128> {
    let t = z4::factor_xn1_z4(beta)?.len() as u32;
    let per_fhg = 3u128.checked_pow(t).unwrap_or(u128::MAX);
    let ells: u128 = binary_divisors(alpha)?
        .iter()
        .map(|b| 1u128.checked_shl(deg(b) as u32).unwrap_or(u128::MAX))
        .fold(0u128, u128::saturating_add);
    Ok(ells.saturating_mul(per_fhg))
}

/// Every valid spec for `(alpha, beta)`, optionally filtered by type.
///
/// Order: `b` in canonical order, then `(f, h, g)` assignments of the basic
/// irreducible factors (base-3 counter over the factor list), then `ell`.
pub fn enumerate_cyclic_specs(alpha: usize, beta: usize, filter: Option<&TypeFilter>) -> Result<Vec<SpecEntry>> {
    if beta % 2 == 0 {
        return Err(invalid(SpecViolation::OddBetaOnly(beta)));
    }
    check_ambient(alpha, beta)?;
    let total = candidate_count(alpha, beta)?;
    if total > MAX_CANDIDATES {
        return Err(Error::SearchTooLarge(format!(
            "{total} candidate specs for alpha = {alpha}, beta = {beta} (limit {MAX_CANDIDATES})"
        )));
    }
    let factors = z4::factor_xn1_z4(beta)?;
    let t = factors.len();
    let mut out = Vec::new();
    for b in binary_divisors(alpha)? {
        for code in 0..3usize.pow(t as u32) {
            let mut parts = [QuatPoly::one(), QuatPoly::one(), QuatPoly::one()];
            let mut c = code;
            for (p, _) in factors.iter() {
                parts[c % 3] = &parts[c % 3] * p;
                c /= 3;
            }
            let [f, h, g] = parts;
            for bits in 0u64..1 << deg(&b) {
                let ell = BinPoly::from_bits(bits);
                let spec = CyclicSpec {
                    alpha,
                    beta,
                    b: b.clone(),
                    ell,
                    f: f.clone(),
                    h: h.clone(),
                    g: g.clone(),
                };
                let Ok(spec) = spec.validate() else { continue };
                if filter.is_some_and(|flt| !flt.matches(&spec.type_from_degrees())) {
                    continue;
                }
                let fingerprint = spec.materialize()?.fingerprint();
                out.push(SpecEntry { spec, fingerprint });
            }
        }
    }
    Ok(out)
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

    const P3: &str = "x^3+2x^2+x+3";
    const Q3: &str = "x^3+3x^2+2x+3";

    fn inequality_spec() -> CyclicSpec {
        CyclicSpec::parse(1, 3, "x+1", "1", "1", "x-1", "x^2+x+1")
            .unwrap()
            .validate()
            .unwrap()
    }

    #[test]
    fn validation() {
        inequality_spec();
        let g = qp(P3);
        let f = qp(Q3);
        let spec = CyclicSpec {
            alpha: 2,
            beta: 7,
            b: bp("x^2+1"),
            ell: bp("x"),
            f,
            h: qp("x-1"),
            g,
        };
        // Lemma-1 arithmetic: b must divide h~ gcd(b, ell g~)
        let lemma = bp("x^2+1").divides(&(&bp("x+1") * &gcd2(&bp("x^2+1"), &(&bp("x") * &bp("x^3+x+1")))));
        assert_eq!(spec.validate().is_ok(), lemma);
        let even = CyclicSpec::parse(1, 6, "1", "0", "x^6-1", "1", "1").unwrap();
        assert!(matches!(
            even.validate(),
            Err(Error::InvalidSpec(SpecViolation::OddBetaOnly(6)))
        ));
        let bad = CyclicSpec::parse(1, 3, "1", "0", "x-1", "1", "x^2+x+2").unwrap();
        assert!(matches!(
            bad.validate(),
            Err(Error::InvalidSpec(SpecViolation::Factorization(_)))
        ));
        let bad = CyclicSpec::parse(2, 3, "x^2+x+1", "0", "x^3-1", "1", "1").unwrap();
        assert!(matches!(
            bad.validate(),
            Err(Error::InvalidSpec(SpecViolation::Divisibility(_)))
        ));
    }

    #[test]
    fn unit_multiples_are_normalized() {
        let s = CyclicSpec::parse(1, 7, "1", "0", "3x+1", "1", &(&qp(P3) * &qp(Q3)).to_string())
            .unwrap()
            .validate()
            .unwrap();
        assert_eq!(s.f, qp("x-1"));
    }

    #[test]
    fn cardinalities() {
        assert_eq!(inequality_spec().cardinality(), 32);
        let zero = CyclicSpec::parse(2, 3, "x^2-1", "0", "x^3-1", "1", "1").unwrap().validate().unwrap();
        assert_eq!(zero.cardinality(), 1);
        let pq = (&qp(P3) * &qp(Q3)).to_string();
        let s = CyclicSpec::parse(1, 7, "1", "0", "x-1", "1", &pq).unwrap().validate().unwrap();
        assert_eq!(s.log2_cardinality(), 13);
    }

    #[test]
    fn types_from_degrees() {
        let t = inequality_spec().type_from_degrees();
        assert_eq!(t.short(), (1, 3, 1, 2, 1));
        let k2 = CyclicSpec::parse(2, 7, "x-1", "1", Q3, "x-1", P3).unwrap().validate().unwrap();
        assert_eq!(k2.type_from_degrees().short(), (2, 7, 2, 3, 2));
        let l0 = CyclicSpec::parse(2, 7, "x-1", "0", Q3, "x-1", P3).unwrap().validate().unwrap();
        let t = l0.type_from_degrees();
        assert_eq!((t.kappa, t.kappa1, t.kappa2), (1, 1, 0));
    }

    #[test]
    fn linearity() {
        assert!(quaternary_gray_linear(&qp("1"), &qp("x-1"), &qp("x^2+x+1"), 3).unwrap());
        assert!(!quaternary_gray_linear(&qp(Q3), &qp("x-1"), &qp(P3), 7).unwrap());
        let pq = &qp(P3) * &qp(Q3);
        assert!(!quaternary_gray_linear(&qp("x-1"), &qp("1"), &pq, 7).unwrap());
        assert!(!inequality_spec().gray_linear().unwrap());
        assert_eq!(inequality_spec().linearity_witness().unwrap(), bp("x+1"));
    }

    #[test]
    fn generator_forms() {
        let s = inequality_spec();
        let cb = s.cb_generators().unwrap();
        assert_eq!(cb[1], PolyPair::new(bp("1"), qp("2")));
        let three = s.three_gen_form().unwrap();
        assert_eq!(three[1].x, BinPoly::zero());
        assert_eq!(s.ell_k(&s.g).unwrap(), bp("1"));
        assert_eq!(s.ell_k(&qp("1")).unwrap(), s.ell);
        assert!(s.ell_k(&qp("x-1")).is_err());
    }

    #[test]
    fn candidates() {
        let t = CodeType {
            alpha: 2,
            beta: 7,
            gamma: 2,
            delta: 3,
            kappa: 2,
            kappa1: 0,
            kappa2: 0,
            delta1: None,
            delta2: None,
        };
        assert_eq!(kernel_dim_candidates(&t).unwrap(), BTreeSet::from([5, 6, 8]));
        assert_eq!(rank_candidates(&t).unwrap(), BTreeSet::from([8, 9, 10, 11]));
        let t0 = CodeType { delta: 0, gamma: 3, kappa: 1, ..t };
        assert_eq!(kernel_dim_candidates(&t0).unwrap(), BTreeSet::from([3]));
        assert_eq!(rank_candidates(&t0).unwrap(), BTreeSet::from([3]));
        let bad = CodeType { kappa: 3, ..t };
        assert!(kernel_dim_candidates(&bad).is_err());
    }

    #[test]
    fn type_filter_parsing() {
        let f: TypeFilter = "2,7:2,3".parse().unwrap();
        assert_eq!(f.kappa, None);
        let f: TypeFilter = "2,7:2,3:1".parse().unwrap();
        assert_eq!(f.kappa, Some(1));
        assert!("2,7".parse::<TypeFilter>().is_err());
    }

    #[test]
    fn divisors_of_xa1() {
        assert_eq!(binary_divisors(0).unwrap(), vec![bp("1")]);
        assert_eq!(binary_divisors(2).unwrap().len(), 3);
        assert_eq!(binary_divisors(3).unwrap().len(), 4);
        assert_eq!(candidate_count(3, 7).unwrap(), 27 * (1 + 2 + 4 + 8));
    }
}
