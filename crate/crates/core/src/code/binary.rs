//! Binary linear codes of length at most 128 in reduced row-echelon form.

use serde::Serialize;

use super::word::bits_to_vec;

/// A binary linear code with a fully reduced basis.
///
/// Every basis row has a pivot (its lowest set bit) that no other row has.
/// Rows are kept sorted by pivot, so equal codes have equal bases.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryCode {
    length: usize,
    basis: Vec<u128>,
}

impl BinaryCode {
    pub fn new(length: usize) -> Self {
        BinaryCode {
            length,
            basis: Vec::new(),
        }
    }

    pub fn from_vectors(length: usize, vs: impl IntoIterator<Item = u128>) -> Self {
        let mut c = BinaryCode::new(length);
        for v in vs {
            c.insert(v);
        }
        c
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[u128] {
        &self.basis
    }

    /// Reduce `v` against the basis.
    pub fn reduce(&self, mut v: u128) -> u128 {
        for &row in &self.basis {
            let pivot = row.trailing_zeros();
            if (v >> pivot) & 1 == 1 {
                v ^= row;
            }
        }
        v
    }

    pub fn contains(&self, v: u128) -> bool {
        self.reduce(v) == 0
    }

    /// Add `v` to the span; returns true when the dimension grew.
    pub fn insert(&mut self, v: u128) -> bool {
        let v = self.reduce(v);
        if v == 0 {
            return false;
        }
        let pivot = v.trailing_zeros();
        for row in &mut self.basis {
            if (*row >> pivot) & 1 == 1 {
                *row ^= v;
            }
        }
        let at = self
            .basis
            .partition_point(|r| r.trailing_zeros() < pivot);
        self.basis.insert(at, v);
        true
    }

    pub fn is_subcode_of(&self, other: &BinaryCode) -> bool {
        self.basis.iter().all(|&r| other.contains(r))
    }

    /// All codewords, in no particular order.
    pub fn iter(&self) -> impl Iterator<Item = u128> + '_ {
        let k = self.basis.len();
        (0u64..1 << k).map(move |m| {
            self.basis
                .iter()
                .enumerate()
                .filter(|(i, _)| (m >> i) & 1 == 1)
                .fold(0u128, |acc, (_, &r)| acc ^ r)
        })
    }

    /// Basis rows as 0/1 lists.
    pub fn rows(&self) -> Vec<Vec<u8>> {
        self.basis
            .iter()
            .map(|&r| bits_to_vec(r, self.length))
            .collect()
    }
}

impl Serialize for BinaryCode {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            length: usize,
            dim: usize,
            basis: Vec<Vec<u8>>,
        }
        Repr {
            length: self.length,
            dim: self.dim(),
            basis: self.rows(),
        }
        .serialize(serializer)
    }
}
