//! Finite subgroups of `Z2^alpha x Z4^beta`.

use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::binary::BinaryCode;
use super::word::{check_ambient, mask, Word};
use super::CodeType;
use crate::error::{Error, Result};

/// Default enumeration guard, as a power of two.
pub const DEFAULT_MAX_LOG2: u32 = 24;

/// A Z2Z4-additive code.
///
/// Stored as order-four representatives `reps` together with the order-two
/// subcode `C_b`. The low bitplanes of the representatives are in reduced
/// row-echelon form and each representative is reduced modulo `C_b`, so the
/// representation is canonical and `==` is set equality. Every codeword is
/// uniquely `sum(e_i * r_i) + c` with `e_i` in `{0,1}` and `c` in `C_b`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AdditiveCode {
    alpha: usize,
    beta: usize,
    reps: Vec<Word>,
    /// `C_b` in packed `x | hi << alpha` coordinates.
    cb: BinaryCode,
}

impl AdditiveCode {
    pub fn zero(alpha: usize, beta: usize) -> Result<Self> {
        check_ambient(alpha, beta)?;
        Ok(AdditiveCode {
            alpha,
            beta,
            reps: Vec::new(),
            cb: BinaryCode::new(alpha + beta),
        })
    }

    /// The subgroup generated by `gens`.
    pub fn from_generators<'a>(
        alpha: usize,
        beta: usize,
        gens: impl IntoIterator<Item = &'a Word>,
    ) -> Result<Self> {
        let mut c = Self::zero(alpha, beta)?;
        for g in gens {
            if g.alpha() != alpha || g.beta() != beta {
                return Err(Error::LengthMismatch {
                    expected: alpha + beta,
                    got: g.alpha() + g.beta(),
                });
            }
            c.insert(*g);
        }
        c.canonicalize();
        Ok(c)
    }

    /// Subtract representatives until `w` has no bits on their pivots.
    fn reduce_lo(&self, mut w: Word) -> Word {
        for r in &self.reps {
            let pivot = r.lo().trailing_zeros();
            if (w.lo() >> pivot) & 1 == 1 {
                w = w.sub(r);
            }
        }
        w
    }

    fn insert(&mut self, w: Word) {
        let w = self.reduce_lo(w);
        if w.lo() == 0 {
            self.cb.insert(w.pack_order2());
            return;
        }
        let pivot = w.lo().trailing_zeros();
        for r in &mut self.reps {
            if (r.lo() >> pivot) & 1 == 1 {
                *r = r.sub(&w);
            }
        }
        self.cb.insert(w.double().pack_order2());
        let at = self
            .reps
            .partition_point(|r| r.lo().trailing_zeros() < pivot);
        self.reps.insert(at, w);
    }

    fn canonicalize(&mut self) {
        let (alpha, beta) = (self.alpha, self.beta);
        for r in &mut self.reps {
            let packed = self.cb.reduce(r.pack_order2());
            *r = Word::from_planes(alpha, beta, packed as u64, r.lo(), (packed >> alpha) as u64);
        }
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn beta(&self) -> usize {
        self.beta
    }

    /// `log2 |C|`.
    pub fn log2_size(&self) -> u32 {
        (self.reps.len() + self.cb.dim()) as u32
    }

    /// `|C|`, saturating at `u128::MAX`.
    pub fn size(&self) -> u128 {
        1u128.checked_shl(self.log2_size()).unwrap_or(u128::MAX)
    }

    /// Number of independent order-four generators.
    pub fn delta(&self) -> usize {
        self.reps.len()
    }

    /// Order-four representatives (canonical).
    pub fn order_four_reps(&self) -> &[Word] {
        &self.reps
    }

    /// Basis of the order-two subcode as words.
    pub fn order_two_basis(&self) -> Vec<Word> {
        self.cb
            .basis()
            .iter()
            .map(|&v| Word::unpack_order2(v, self.alpha, self.beta))
            .collect()
    }

    /// A minimal generating set: order-four representatives, then `C_b`.
    pub fn generators(&self) -> Vec<Word> {
        let mut g = self.reps.clone();
        g.extend(self.order_two_basis());
        g
    }

    pub fn contains(&self, w: &Word) -> bool {
        if w.alpha() != self.alpha || w.beta() != self.beta {
            return false;
        }
        let w = self.reduce_lo(*w);
        w.lo() == 0 && self.cb.contains(w.pack_order2())
    }

    pub fn is_subcode_of(&self, other: &AdditiveCode) -> bool {
        self.alpha == other.alpha
            && self.beta == other.beta
            && self.generators().iter().all(|g| other.contains(g))
    }

    /// Fail with the predicted size when `|C| > 2^limit_log2`.
    pub fn check_size(&self, limit_log2: u32) -> Result<()> {
        if self.log2_size() > limit_log2 {
            return Err(Error::TooLarge {
                log2_size: self.log2_size(),
                limit_log2,
            });
        }
        Ok(())
    }

    /// Iterate over all codewords (Gray-code order over the generators).
    pub fn iter(&self) -> Codewords<'_> {
        Codewords {
            gens: self.generators(),
            current: Word::zero(self.alpha, self.beta),
            index: 0,
            total: 1u128 << self.log2_size(),
            _code: std::marker::PhantomData,
        }
    }

    /// All codewords in lexicographic order.
    pub fn enumerate(&self, limit_log2: u32) -> Result<Vec<Word>> {
        self.check_size(limit_log2)?;
        let mut words: Vec<Word> = self.iter().collect();
        words.sort_unstable();
        Ok(words)
    }

    /// Type `(alpha, beta; gamma, delta; kappa)` with `kappa1`, `kappa2`.
    pub fn code_type(&self) -> CodeType {
        let delta = self.reps.len();
        let gamma = self.cb.dim() - delta;
        let xs = BinaryCode::from_vectors(
            self.alpha,
            self.cb.basis().iter().map(|&v| v & u128::from(mask(self.alpha))),
        );
        let ys = BinaryCode::from_vectors(self.beta, self.cb.basis().iter().map(|&v| v >> self.alpha));
        let kappa = xs.dim();
        let kappa1 = self.cb.dim() - ys.dim();
        CodeType {
            alpha: self.alpha,
            beta: self.beta,
            gamma,
            delta,
            kappa,
            kappa1,
            kappa2: kappa - kappa1,
            delta1: None,
            delta2: None,
        }
    }

    /// `pi(C)`.
    pub fn shift(&self) -> AdditiveCode {
        let gens: Vec<Word> = self.generators().iter().map(Word::shift).collect();
        AdditiveCode::from_generators(self.alpha, self.beta, &gens).expect("same ambient")
    }

    pub fn is_cyclic(&self) -> bool {
        self.generators().iter().all(|g| self.contains(&g.shift()))
    }

    /// `C_b`, the subgroup of words of order at most two.
    pub fn order_two_subcode(&self) -> AdditiveCode {
        AdditiveCode {
            alpha: self.alpha,
            beta: self.beta,
            reps: Vec::new(),
            cb: self.cb.clone(),
        }
    }

    /// `C_0 = {v in C : v' = 0}`.
    pub fn binary_subcode(&self) -> AdditiveCode {
        let ymask = u128::from(mask(self.beta)) << self.alpha;
        // Eliminate the Y coordinates: RREF over a Y-first column order.
        let swap = |v: u128| (v >> self.alpha) | ((v & u128::from(mask(self.alpha))) << self.beta);
        let swapped = BinaryCode::from_vectors(self.alpha + self.beta, self.cb.basis().iter().map(|&v| swap(v)));
        let gens: Vec<Word> = swapped
            .basis()
            .iter()
            .filter(|&&v| v & u128::from(mask(self.beta)) == 0)
            .map(|&v| Word::from_planes(self.alpha, self.beta, (v >> self.beta) as u64, 0, 0))
            .collect();
        debug_assert!(gens.iter().all(|g| g.pack_order2() & ymask == 0));
        AdditiveCode::from_generators(self.alpha, self.beta, &gens).expect("same ambient")
    }

    /// Punctured code on the binary coordinates, in ambient `(alpha, 0)`.
    pub fn project_x(&self) -> AdditiveCode {
        let gens: Vec<Word> = self
            .generators()
            .iter()
            .map(|g| Word::from_planes(self.alpha, 0, g.x(), 0, 0))
            .collect();
        AdditiveCode::from_generators(self.alpha, 0, &gens).expect("smaller ambient")
    }

    /// Punctured code on the quaternary coordinates, in ambient `(0, beta)`.
    pub fn project_y(&self) -> AdditiveCode {
        let gens: Vec<Word> = self
            .generators()
            .iter()
            .map(|g| Word::from_planes(0, self.beta, 0, g.lo(), g.hi()))
            .collect();
        AdditiveCode::from_generators(0, self.beta, &gens).expect("smaller ambient")
    }

    /// Re-embed a code from a block projection into this ambient.
    pub fn embed(&self, alpha: usize, beta: usize) -> Result<AdditiveCode> {
        let gens: Vec<Word> = self
            .generators()
            .iter()
            .map(|g| Word::from_planes(alpha, beta, g.x(), g.lo(), g.hi()))
            .collect();
        AdditiveCode::from_generators(alpha, beta, &gens)
    }

    /// `C = C_X x C_Y`.
    pub fn is_separable(&self) -> bool {
        self.log2_size() == self.project_x().log2_size() + self.project_y().log2_size()
    }

    /// Smallest code containing both.
    pub fn join(&self, other: &AdditiveCode) -> Result<AdditiveCode> {
        let gens: Vec<Word> = self.generators().into_iter().chain(other.generators()).collect();
        AdditiveCode::from_generators(self.alpha, self.beta, &gens)
    }

    /// Set intersection, by enumerating the smaller code.
    pub fn intersection(&self, other: &AdditiveCode, limit_log2: u32) -> Result<AdditiveCode> {
        let (small, big) = if self.log2_size() <= other.log2_size() {
            (self, other)
        } else {
            (other, self)
        };
        small.check_size(limit_log2)?;
        let mut out = AdditiveCode::zero(self.alpha, self.beta)?;
        for w in small.iter() {
            if big.contains(&w) && !out.contains(&w) {
                out.insert(w);
            }
        }
        out.canonicalize();
        Ok(out)
    }

    /// Hex SHA-256 of the canonical representation.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!("{}:{}", self.alpha, self.beta));
        for r in &self.reps {
            h.update(format!(";{r}"));
        }
        for v in self.cb.basis() {
            h.update(format!(";{v:x}"));
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Gray images of the generators' order-two part, as a binary code.
    pub(crate) fn cb_packed(&self) -> &BinaryCode {
        &self.cb
    }
}

impl fmt::Debug for AdditiveCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AdditiveCode({},{}; ", self.alpha, self.beta)?;
        f.debug_list().entries(self.generators()).finish()?;
        f.write_str(")")
    }
}

/// Iterator over the codewords of an [`AdditiveCode`].
pub struct Codewords<'a> {
    gens: Vec<Word>,
    current: Word,
    index: u128,
    total: u128,
    _code: std::marker::PhantomData<&'a AdditiveCode>,
}

impl Iterator for Codewords<'_> {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.index >= self.total {
            return None;
        }
        if self.index > 0 {
            // step i of the reflected Gray code flips bit ctz(i)
            let bit = self.index.trailing_zeros() as usize;
            let gray = self.index ^ (self.index >> 1);
            let g = &self.gens[bit];
            self.current = if (gray >> bit) & 1 == 1 {
                self.current.add(g)
            } else {
                self.current.sub(g)
            };
        }
        self.index += 1;
        Some(self.current)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = usize::try_from(self.total - self.index).unwrap_or(usize::MAX);
        (left, Some(left))
    }
}

/// JSON form of a code: ambient lengths and generator words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeJson {
    pub alpha: usize,
    pub beta: usize,
    pub generators: Vec<Word>,
}

impl From<&AdditiveCode> for CodeJson {
    fn from(c: &AdditiveCode) -> Self {
        CodeJson {
            alpha: c.alpha,
            beta: c.beta,
            generators: c.generators(),
        }
    }
}

impl TryFrom<CodeJson> for AdditiveCode {
    type Error = Error;

    fn try_from(j: CodeJson) -> Result<Self> {
        AdditiveCode::from_generators(j.alpha, j.beta, &j.generators)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn code(alpha: usize, beta: usize, gens: &[&str]) -> AdditiveCode {
        let gens: Vec<Word> = gens.iter().map(|s| w(s)).collect();
        AdditiveCode::from_generators(alpha, beta, &gens).unwrap()
    }

    /// Closure by repeated addition, independent of the canonical form.
    fn closure(alpha: usize, beta: usize, gens: &[Word]) -> BTreeSet<Word> {
        let mut set = BTreeSet::from([Word::zero(alpha, beta)]);
        loop {
            let mut grown = set.clone();
            for a in &set {
                for g in gens {
                    grown.insert(a.add(g));
                }
            }
            if grown.len() == set.len() {
                return set;
            }
            set = grown;
        }
    }

    #[test]
    fn enumeration_matches_closure() {
        let gens = [w("1|200"), w("1|020"), w("1|002")];
        let c = AdditiveCode::from_generators(1, 3, &gens).unwrap();
        let words = c.enumerate(DEFAULT_MAX_LOG2).unwrap();
        assert_eq!(words.len(), 8);
        assert_eq!(words, closure(1, 3, &gens).into_iter().collect::<Vec<_>>());

        let rows = ["100|000", "010|000", "001|200", "000|110", "000|101"];
        let c = code(3, 3, &rows);
        let gens: Vec<Word> = rows.iter().map(|s| w(s)).collect();
        assert_eq!(c.size(), 128);
        assert_eq!(
            c.enumerate(DEFAULT_MAX_LOG2).unwrap(),
            closure(3, 3, &gens).into_iter().collect::<Vec<_>>()
        );
    }

    #[test]
    fn zero_code() {
        let z = code(2, 2, &[]);
        assert_eq!(z.enumerate(DEFAULT_MAX_LOG2).unwrap(), vec![Word::zero(2, 2)]);
        let t = z.code_type();
        assert_eq!((t.gamma, t.delta, t.kappa), (0, 0, 0));
    }

    #[test]
    fn canonical_equality() {
        let a = code(1, 3, &["1|110", "1|011"]);
        let b = code(1, 3, &["0|103", "1|110", "0|202"]);
        assert_eq!(a, b);
        assert_eq!(a.fingerprint(), b.fingerprint());
        assert!(a.contains(&w("1|330")));
        assert!(!a.contains(&w("1|100")));
    }

    #[test]
    fn size_guard() {
        let c = code(0, 3, &["|100", "|010", "|001"]);
        assert!(matches!(
            c.enumerate(5),
            Err(Error::TooLarge { log2_size: 6, limit_log2: 5 })
        ));
    }

    #[test]
    fn types() {
        // <(1 | x+1)> with alpha = 1, beta = 3 and its shifts
        let c = code(1, 3, &["1|110", "1|011", "1|101"]);
        let t = c.code_type();
        assert_eq!(
            (t.alpha, t.beta, t.gamma, t.delta, t.kappa),
            (1, 3, 1, 2, 1)
        );
        let rows = ["100|000", "010|000", "001|200", "000|110", "000|101"];
        let t = code(3, 3, &rows).code_type();
        assert_eq!((t.gamma, t.delta, t.kappa1), (3, 2, 2));
    }

    #[test]
    fn projections_and_separability() {
        let c = code(1, 3, &["1|110", "1|011", "1|101"]);
        assert!(!c.is_separable());
        assert!(c.is_cyclic());
        let sep = code(3, 3, &["110|000", "011|000", "000|310", "000|031"]);
        assert!(sep.is_separable());
        assert_eq!(c.project_x().size(), 2);
    }

    #[test]
    fn intersection_and_join() {
        let a = code(0, 3, &["|110"]);
        let b = code(0, 3, &["|011"]);
        let ab = a.join(&b).unwrap();
        assert_eq!(a.intersection(&ab, 20).unwrap(), a);
        let i = a.intersection(&b, 20).unwrap();
        assert_eq!(i.size(), 1);
    }

    #[test]
    fn json_round_trip() {
        let c = code(1, 3, &["1|110", "1|011"]);
        let j = serde_json::to_string(&CodeJson::from(&c)).unwrap();
        let back: CodeJson = serde_json::from_str(&j).unwrap();
        assert_eq!(AdditiveCode::try_from(back).unwrap(), c);
    }
}
