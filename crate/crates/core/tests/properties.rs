//! Property tests for the algebraic invariants, checked against naive
//! oracles written directly from the definitions.

use std::collections::BTreeSet;

use proptest::prelude::*;

use z2z4::code::{
    is_gray_linear_bruteforce, is_gray_linear_exhaustive, kernel_bruteforce, kernel_exhaustive,
    span_bruteforce, span_exhaustive, standard_form, AdditiveCode, CodeJson, Word,
};
use z2z4::cyclic::{enumerate_cyclic_specs, kernel_dim_candidates, rank_candidates, CyclicSpec};
use z2z4::gf2::{ext_gcd2, factor_xn1_gf2, gcd2};
use z2z4::verify::{analyze, cross_check, AnalysisReport};
use z2z4::z4::{bezout_lift, factor_xn1_z4, hensel_lift};
use z2z4::{BinPoly, QuatPoly};

const LIMIT: u32 = 24;

fn quat_poly() -> impl Strategy<Value = QuatPoly> {
    prop::collection::vec(-3i64..4, 0..7).prop_map(|c| QuatPoly::from_ints(&c))
}

fn bin_poly() -> impl Strategy<Value = BinPoly> {
    prop::collection::vec(0i64..2, 0..9).prop_map(|c| BinPoly::from_ints(&c))
}

fn word(alpha: usize, beta: usize) -> impl Strategy<Value = Word> {
    (prop::collection::vec(0u8..2, alpha), prop::collection::vec(0u8..4, beta))
        .prop_map(|(x, y)| Word::new(&x, &y).unwrap())
}

/// Ambient and up to four generators.
fn small_code() -> impl Strategy<Value = (usize, usize, Vec<Word>)> {
    (0usize..4, 0usize..4)
        .prop_filter("nonempty ambient", |(a, b)| a + b > 0)
        .prop_flat_map(|(a, b)| (Just(a), Just(b), prop::collection::vec(word(a, b), 0..5)))
}

/// Gray map from the symbol table 0 -> 00, 1 -> 01, 2 -> 11, 3 -> 10: the
/// binary part, then the first bit of every symbol, then the second bit.
fn naive_gray(w: &Word) -> Vec<u8> {
    let table = |s: u8| match s {
        0 => (0, 0),
        1 => (0, 1),
        2 => (1, 1),
        _ => (1, 0),
    };
    let q = w.quaternary_part();
    let mut out = w.binary_part();
    out.extend(q.iter().map(|&s| table(s).0));
    out.extend(q.iter().map(|&s| table(s).1));
    out
}

/// All Z4-combinations of the generators, computed symbol by symbol.
fn naive_closure(alpha: usize, beta: usize, gens: &[Word]) -> BTreeSet<(Vec<u8>, Vec<u8>)> {
    let mut set = BTreeSet::from([(vec![0u8; alpha], vec![0u8; beta])]);
    loop {
        let mut grew = false;
        for (x, y) in set.clone() {
            for g in gens {
                let gx = g.binary_part();
                let gy = g.quaternary_part();
                let nx: Vec<u8> = x.iter().zip(&gx).map(|(a, b)| (a + b) % 2).collect();
                let ny: Vec<u8> = y.iter().zip(&gy).map(|(a, b)| (a + b) % 4).collect();
                grew |= set.insert((nx, ny));
            }
        }
        if !grew {
            return set;
        }
    }
}

/// Rank over GF(2) by elimination on byte vectors.
fn naive_rank(mut rows: Vec<Vec<u8>>) -> usize {
    let mut rank = 0;
    let width = rows.first().map_or(0, Vec::len);
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][col] == 1) else { continue };
        rows.swap(rank, p);
        for i in 0..rows.len() {
            if i != rank && rows[i][col] == 1 {
                let pivot = rows[rank].clone();
                rows[i].iter_mut().zip(&pivot).for_each(|(a, b)| *a ^= b);
            }
        }
        rank += 1;
    }
    rank
}

fn valid_specs() -> Vec<CyclicSpec> {
    let mut out = Vec::new();
    for alpha in 0..=3 {
        for beta in [1, 3, 5, 7] {
            out.extend(enumerate_cyclic_specs(alpha, beta, None).unwrap().into_iter().map(|e| e.spec));
        }
    }
    out
}

fn spec_strategy() -> impl Strategy<Value = CyclicSpec> {
    let specs = valid_specs();
    (0..specs.len()).prop_map(move |i| specs[i].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poly_ring_laws(a in quat_poly(), b in quat_poly(), c in quat_poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        let text = a.to_string();
        prop_assert_eq!(text.parse::<QuatPoly>().unwrap(), a);
    }

    #[test]
    fn division_identity(a in quat_poly(), b in quat_poly()) {
        let b = &b + &QuatPoly::monomial(z2z4::Z4::new(1), b.degree().map_or(0, |d| d + 1));
        let (q, r) = a.div_rem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.degree().map_or(true, |d| d < b.deg()));
    }

    #[test]
    fn extended_gcd(a in bin_poly(), b in bin_poly()) {
        prop_assume!(!(a.is_zero() && b.is_zero()));
        let (d, s, t) = ext_gcd2(&a, &b).unwrap();
        prop_assert_eq!(&(&s * &a) + &(&t * &b), d.clone());
        prop_assert!(d.divides(&a) && d.divides(&b));
        prop_assert_eq!(d, gcd2(&b, &a));
    }

    #[test]
    fn gray_map_matches_table(w in (0usize..5, 0usize..5).prop_flat_map(|(a, b)| word(a, b))) {
        let n = w.alpha() + 2 * w.beta();
        prop_assert_eq!(z2z4::code::bits_to_vec(w.gray(), n), naive_gray(&w));
        prop_assert_eq!(Word::ungray(w.gray(), w.alpha(), w.beta()), w);
    }

    #[test]
    fn gray_identity(pair in (0usize..6, 0usize..6).prop_flat_map(|(a, b)| (word(a, b), word(a, b)))) {
        let (v, w) = pair;
        prop_assert_eq!(v.add(&w).gray(), v.gray() ^ w.gray() ^ v.star2(&w).gray());
        prop_assert_eq!(v.star2(&w), w.star2(&v));
    }

    #[test]
    fn code_matches_naive_closure((alpha, beta, gens) in small_code()) {
        let code = AdditiveCode::from_generators(alpha, beta, &gens).unwrap();
        let naive = naive_closure(alpha, beta, &gens);
        let words = code.enumerate(LIMIT).unwrap();
        prop_assert_eq!(words.len(), naive.len());
        for w in &words {
            prop_assert!(naive.contains(&(w.binary_part(), w.quaternary_part())));
        }
        let t = code.code_type();
        prop_assert_eq!(t.log2_size() as u32, code.log2_size());
        prop_assert_eq!(t.kappa, t.kappa1 + t.kappa2);
        prop_assert!(t.kappa <= t.alpha.min(t.gamma));
    }

    #[test]
    fn canonical_form_is_generator_independent((alpha, beta, gens) in small_code()) {
        let code = AdditiveCode::from_generators(alpha, beta, &gens).unwrap();
        let mut other: Vec<Word> = gens.iter().rev().copied().collect();
        if let [a, b, ..] = gens.as_slice() {
            other.push(a.add(b));
            other.push(a.double());
        }
        let again = AdditiveCode::from_generators(alpha, beta, &other).unwrap();
        prop_assert_eq!(&code, &again);
        prop_assert_eq!(code.fingerprint(), again.fingerprint());
        let json = serde_json::to_string(&CodeJson::from(&code)).unwrap();
        let back: CodeJson = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(AdditiveCode::try_from(back).unwrap(), code);
    }

    #[test]
    fn oracles_agree_with_definitions((alpha, beta, gens) in small_code()) {
        let code = AdditiveCode::from_generators(alpha, beta, &gens).unwrap();
        let kernel = kernel_bruteforce(&code, LIMIT).unwrap();
        prop_assert_eq!(&kernel, &kernel_exhaustive(&code, LIMIT).unwrap());
        let span = span_bruteforce(&code, LIMIT).unwrap();
        prop_assert_eq!(&span.span, &span_exhaustive(&code, LIMIT).unwrap().span);
        let images: Vec<Vec<u8>> = code.iter().map(|w| naive_gray(&w)).collect();
        prop_assert_eq!(span.rank, naive_rank(images));
        prop_assert_eq!(is_gray_linear_bruteforce(&code), is_gray_linear_exhaustive(&code, LIMIT).unwrap());
        prop_assert!(kernel.is_subcode_of(&code) && code.is_subcode_of(&span.lifted));
        let t = code.code_type();
        let kd = kernel.log2_size() as usize;
        prop_assert!(t.gamma + t.delta <= kd && kd <= t.log2_size());
        if t.gamma + t.delta > 0 {
            prop_assert!(kernel_dim_candidates(&t).unwrap().contains(&kd));
            prop_assert!(rank_candidates(&t).unwrap().contains(&span.rank));
        }
    }

    #[test]
    fn standard_form_regenerates((alpha, beta, gens) in small_code()) {
        let code = AdditiveCode::from_generators(alpha, beta, &gens).unwrap();
        let sf = standard_form(&code).unwrap();
        prop_assert_eq!(sf.code().unwrap(), code.clone());
        let t = code.code_type();
        prop_assert_eq!((sf.gamma, sf.delta, sf.kappa1, sf.kappa2), (t.gamma, t.delta, t.kappa1, t.kappa2));
        prop_assert_eq!(sf.matrix().len(), t.gamma + t.delta);
    }

    #[test]
    fn hensel_lift_divides(n in prop::sample::select(vec![1usize, 3, 5, 7, 9, 15, 21]), mask in any::<u32>()) {
        let factors = factor_xn1_gf2(n).unwrap();
        let p = BinPoly::product(factors.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, (f, _))| f));
        let lift = hensel_lift(&p, n).unwrap();
        prop_assert_eq!(lift.reduce(), p);
        prop_assert!(lift.divides(&QuatPoly::x_n_minus_one(n)));
        prop_assert!(lift.is_monic());
    }

    #[test]
    fn bezout_identity(n in prop::sample::select(vec![3usize, 5, 7, 9, 15]), mask in any::<u32>()) {
        let factors = factor_xn1_z4(n).unwrap();
        let pick = |on: bool| QuatPoly::product(factors.iter().enumerate()
            .filter(|(i, _)| (mask >> i & 1 == 1) == on).map(|(_, (f, _))| f));
        let (h, g) = (pick(true), pick(false));
        let bz = bezout_lift(&h, &g).unwrap();
        prop_assert_eq!(&(&bz.lambda * &h) + &(&bz.mu * &g), QuatPoly::one());
    }

    #[test]
    fn cyclic_specs_cross_check(spec in spec_strategy()) {
        let report = cross_check(&spec, LIMIT).unwrap();
        let failures: Vec<_> = report.failures().collect();
        prop_assert!(failures.is_empty(), "{:?}", failures);
        let t = spec.type_from_degrees();
        prop_assert_eq!(t.delta1.unwrap() + t.delta2.unwrap(), t.delta);
        let ks = spec.kernel_spec().unwrap();
        let rs = spec.rank_spec().unwrap();
        prop_assert!(spec.f.exact_div(&rs.r).is_some() && rs.b_r.divides(&spec.b));
        prop_assert!(spec.g.exact_div(&ks.k_prime).is_some());
    }

    #[test]
    fn reports_round_trip(spec in spec_strategy()) {
        let json = serde_json::to_string(&spec).unwrap();
        prop_assert_eq!(serde_json::from_str::<CyclicSpec>(&json).unwrap(), spec.clone());
        let report = analyze(&spec, false, LIMIT).unwrap();
        let text = serde_json::to_string(&report).unwrap();
        let back: AnalysisReport = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, report);
    }
}

#[test]
fn candidate_count_matches_counting_oracle() {
    // Before validation: sum over divisors b of x^3-1 of 3^3 * 2^deg b.
    let degrees = [0u32, 1, 2, 3];
    let expected: u128 = degrees.iter().map(|d| 27 * (1u128 << d)).sum();
    assert_eq!(z2z4::cyclic::candidate_count(3, 7).unwrap(), expected);
}

#[test]
fn factorization_of_x15_minus_1_multiplies_back() {
    let factors = factor_xn1_z4(15).unwrap();
    assert_eq!(factors.len(), 5);
    assert_eq!(QuatPoly::product(factors.iter().map(|(f, _)| f)), QuatPoly::x_n_minus_one(15));
}
