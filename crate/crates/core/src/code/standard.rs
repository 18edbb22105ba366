//! Standard generator matrices.
//!
//! Columns are permuted within the binary block and within the quaternary
//! block only. The row groups, top to bottom, are
//!
//! ```text
//! I_k1  T     T_b1 |  0     0       0
//! 0     I_k2  T_b2 |  2T_2  0       0
//! 0     0     0    |  2T_1  2I_g-k  0
//! 0     0     S'   |  S     R       I_d
//! ```
//!
//! and the coarser form with a single `I_kappa` block is obtained by
//! clearing `T` with the second group.

use std::ops::Range;

use serde::Serialize;

use super::additive::AdditiveCode;
use super::binary::BinaryCode;
use super::word::Word;
use crate::error::{Error, Result};

/// A standard generator matrix with its column permutations.
#[derive(Clone, Debug, Serialize)]
pub struct StandardForm {
    pub alpha: usize,
    pub beta: usize,
    pub gamma: usize,
    pub delta: usize,
    pub kappa: usize,
    pub kappa1: usize,
    pub kappa2: usize,
    /// Column `j` of the binary block is original binary coordinate `x_perm[j]`.
    pub x_perm: Vec<usize>,
    /// Column `j` of the quaternary block is original coordinate `y_perm[j]`.
    pub y_perm: Vec<usize>,
    /// Rows in original coordinates.
    #[serde(skip)]
    rows: Vec<Word>,
}

fn bit(v: u128, i: usize) -> bool {
    (v >> i) & 1 == 1
}

/// Reduce a code's generators to standard form.
pub fn standard_form(code: &AdditiveCode) -> Result<StandardForm> {
    let (alpha, beta) = (code.alpha(), code.beta());
    let ty = code.code_type();
    let (gamma, delta, kappa, kappa1) = (ty.gamma, ty.delta, ty.kappa, ty.kappa1);

    // Order-four rows: I_delta on the pivots of the low bitplanes.
    let mut reps = code.order_four_reps().to_vec();
    let pivots: Vec<usize> = reps.iter().map(|r| r.lo().trailing_zeros() as usize).collect();
    for (r, &p) in reps.iter_mut().zip(&pivots) {
        if r.symbol(p) == 3 {
            *r = r.neg();
        }
    }
    for j in 0..delta {
        for i in 0..delta {
            if i != j && reps[j].symbol(pivots[i]) == 2 {
                reps[j] = reps[j].add(&reps[i].double());
            }
        }
    }

    // Order-two part with zeros on the quaternary pivots.
    let doubled: Vec<u128> = reps.iter().map(|r| r.double().pack_order2()).collect();
    let cb_rest = BinaryCode::from_vectors(
        alpha + beta,
        code.order_two_basis().iter().map(|c| {
            let mut v = c.pack_order2();
            for (d, &p) in doubled.iter().zip(&pivots) {
                if bit(v, alpha + p) {
                    v ^= d;
                }
            }
            v
        }),
    );

    // First group: the binary subcode C_0, reduced on its own pivots.
    let c0 = BinaryCode::from_vectors(
        alpha + beta,
        code.binary_subcode().order_two_basis().iter().map(Word::pack_order2),
    );
    let p1: Vec<usize> = c0.basis().iter().map(|v| v.trailing_zeros() as usize).collect();

    // Remaining order-two rows: reduce on P1, then echelon with the free
    // binary columns first and the quaternary columns after them.
    let free_x: Vec<usize> = (0..alpha).filter(|i| !p1.contains(i)).collect();
    let order: Vec<usize> = free_x
        .iter()
        .copied()
        .chain(alpha..alpha + beta)
        .chain(p1.iter().copied())
        .collect();
    let to_order = |v: u128| {
        order
            .iter()
            .enumerate()
            .fold(0u128, |acc, (k, &i)| acc | (u128::from(bit(v, i)) << k))
    };
    let from_order = |v: u128| {
        order
            .iter()
            .enumerate()
            .fold(0u128, |acc, (k, &i)| acc | (u128::from(bit(v, k)) << i))
    };
    let reordered = BinaryCode::from_vectors(
        alpha + beta,
        cb_rest.basis().iter().map(|&v| {
            let v = c0.reduce(v);
            to_order(v)
        }),
    );
    let mut group2 = Vec::new();
    let mut group3 = Vec::new();
    for &v in reordered.basis() {
        let pivot = v.trailing_zeros() as usize;
        if pivot < free_x.len() {
            group2.push((order[pivot], from_order(v)));
        } else {
            group3.push((order[pivot] - alpha, from_order(v)));
        }
    }
    if p1.len() != kappa1 || group2.len() != kappa - kappa1 || group3.len() != gamma - kappa {
        return Err(Error::Consistency(format!(
            "standard form of {code:?}: row groups do not match the type {ty}"
        )));
    }

    // Fourth group: clear the binary pivots and bring R into {0,1}.
    for r in reps.iter_mut() {
        for &row in c0.basis() {
            if (r.x() >> row.trailing_zeros()) & 1 == 1 {
                *r = r.add(&Word::unpack_order2(row, alpha, beta));
            }
        }
        for &(p, row) in &group2 {
            if (r.x() >> p) & 1 == 1 {
                *r = r.add(&Word::unpack_order2(row, alpha, beta));
            }
        }
        for &(p, row) in &group3 {
            if (r.hi() >> p) & 1 == 1 {
                *r = r.add(&Word::unpack_order2(row, alpha, beta));
            }
        }
    }

    let p2: Vec<usize> = group2.iter().map(|g| g.0).collect();
    let p3: Vec<usize> = group3.iter().map(|g| g.0).collect();
    let x_perm: Vec<usize> = p1
        .iter()
        .chain(&p2)
        .copied()
        .chain((0..alpha).filter(|i| !p1.contains(i) && !p2.contains(i)))
        .collect();
    let y_perm: Vec<usize> = (0..beta)
        .filter(|i| !p3.contains(i) && !pivots.contains(i))
        .chain(p3.iter().copied())
        .chain(pivots.iter().copied())
        .collect();

    let mut rows: Vec<Word> = c0
        .basis()
        .iter()
        .chain(group2.iter().map(|g| &g.1))
        .chain(group3.iter().map(|g| &g.1))
        .map(|&v| Word::unpack_order2(v, alpha, beta))
        .collect();
    rows.extend(reps);

    let sf = StandardForm {
        alpha,
        beta,
        gamma,
        delta,
        kappa,
        kappa1,
        kappa2: kappa - kappa1,
        x_perm,
        y_perm,
        rows,
    };
    if sf.code()? != *code {
        return Err(Error::Consistency(format!(
            "standard form rows do not regenerate {code:?}"
        )));
    }
    Ok(sf)
}

impl StandardForm {
    /// Rows in original coordinates.
    pub fn rows(&self) -> &[Word] {
        &self.rows
    }

    /// The code generated by the rows.
    pub fn code(&self) -> Result<AdditiveCode> {
        AdditiveCode::from_generators(self.alpha, self.beta, &self.rows)
    }

    fn permuted(&self, w: &Word) -> Vec<u8> {
        self.x_perm
            .iter()
            .map(|&i| ((w.x() >> i) & 1) as u8)
            .chain(self.y_perm.iter().map(|&i| w.symbol(i)))
            .collect()
    }

    /// The refined matrix, row-major, columns permuted.
    pub fn matrix(&self) -> Vec<Vec<u8>> {
        self.rows.iter().map(|w| self.permuted(w)).collect()
    }

    /// The coarse form with a single `I_kappa` block.
    pub fn matrix_coarse(&self) -> Vec<Vec<u8>> {
        let group2 = &self.rows[self.kappa1..self.kappa];
        let p2 = &self.x_perm[self.kappa1..self.kappa];
        self.rows
            .iter()
            .enumerate()
            .map(|(i, w)| {
                let mut w = *w;
                if i < self.kappa1 {
                    for (row, &p) in group2.iter().zip(p2) {
                        if (w.x() >> p) & 1 == 1 {
                            w = w.add(row);
                        }
                    }
                }
                self.permuted(&w)
            })
            .collect()
    }

    fn s(&self) -> usize {
        self.beta - (self.gamma - self.kappa) - self.delta
    }

    fn row_group(&self, g: usize) -> Range<usize> {
        match g {
            1 => 0..self.kappa1,
            2 => self.kappa1..self.kappa,
            3 => self.kappa..self.gamma,
            _ => self.gamma..self.gamma + self.delta,
        }
    }

    fn x_rest(&self) -> Range<usize> {
        self.kappa..self.alpha
    }

    fn y_free(&self) -> Range<usize> {
        self.alpha..self.alpha + self.s()
    }

    fn y_two(&self) -> Range<usize> {
        self.alpha + self.s()..self.alpha + self.s() + self.gamma - self.kappa
    }

    fn cut(m: &[Vec<u8>], rows: Range<usize>, cols: Range<usize>, halve: bool) -> Vec<Vec<u8>> {
        m[rows]
            .iter()
            .map(|r| r[cols.clone()].iter().map(|&e| if halve { e / 2 } else { e }).collect())
            .collect()
    }

    /// `T`: first group on the `I_k2` columns.
    pub fn t(&self) -> Vec<Vec<u8>> {
        Self::cut(&self.matrix(), self.row_group(1), self.kappa1..self.kappa, false)
    }

    pub fn t_b1(&self) -> Vec<Vec<u8>> {
        Self::cut(&self.matrix(), self.row_group(1), self.x_rest(), false)
    }

    pub fn t_b2(&self) -> Vec<Vec<u8>> {
        Self::cut(&self.matrix(), self.row_group(2), self.x_rest(), false)
    }

    /// `T_2` with entries in `{0,1}` (the matrix holds `2T_2`).
    pub fn t2(&self) -> Vec<Vec<u8>> {
        Self::cut(&self.matrix(), self.row_group(2), self.y_free(), true)
    }

    /// `T_1` with entries in `{0,1}` (the matrix holds `2T_1`).
    pub fn t1(&self) -> Vec<Vec<u8>> {
        Self::cut(&self.matrix(), self.row_group(3), self.y_free(), true)
    }

    pub fn s_prime(&self) -> Vec<Vec<u8>> {
        Self::cut(&self.matrix(), self.row_group(4), self.x_rest(), false)
    }

    pub fn s_block(&self) -> Vec<Vec<u8>> {
        Self::cut(&self.matrix(), self.row_group(4), self.y_free(), false)
    }

    pub fn r(&self) -> Vec<Vec<u8>> {
        Self::cut(&self.matrix(), self.row_group(4), self.y_two(), false)
    }

    /// `T_b` of the coarse form.
    pub fn t_b(&self) -> Vec<Vec<u8>> {
        Self::cut(&self.matrix_coarse(), 0..self.kappa, self.x_rest(), false)
    }

    /// `T_2` of the coarse form (all `kappa` rows).
    pub fn t2_coarse(&self) -> Vec<Vec<u8>> {
        Self::cut(&self.matrix_coarse(), 0..self.kappa, self.y_free(), true)
    }

    pub fn s_b(&self) -> Vec<Vec<u8>> {
        self.s_prime()
    }

    pub fn s_q(&self) -> Vec<Vec<u8>> {
        self.s_block()
    }

    /// `C'`: generated by the third and fourth row groups.
    pub fn c_prime(&self) -> Result<AdditiveCode> {
        AdditiveCode::from_generators(self.alpha, self.beta, &self.rows[self.kappa..])
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// True when some permutation of the first `alpha` columns and of the last
/// `beta` columns turns `a` into `b`, comparing rows as a multiset.
///
/// Brute force over `alpha! * beta!` permutations; meant for small matrices.
pub fn equivalent_up_to_block_permutation(a: &[Vec<u8>], b: &[Vec<u8>], alpha: usize, beta: usize) -> bool {
    if a.len() != b.len() || a.iter().chain(b).any(|r| r.len() != alpha + beta) {
        return false;
    }
    if alpha > 8 || beta > 8 {
        return false;
    }
    let mut target: Vec<Vec<u8>> = b.to_vec();
    target.sort();
    let xs = permutations(alpha);
    let ys = permutations(beta);
    xs.iter().any(|px| {
        ys.iter().any(|py| {
            let mut m: Vec<Vec<u8>> = a
                .iter()
                .map(|r| {
                    px.iter()
                        .map(|&i| r[i])
                        .chain(py.iter().map(|&i| r[alpha + i]))
                        .collect()
                })
                .collect();
            m.sort();
            m == target
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(alpha: usize, beta: usize, gens: &[&str]) -> AdditiveCode {
        let gens: Vec<Word> = gens.iter().map(|s| s.parse().unwrap()).collect();
        AdditiveCode::from_generators(alpha, beta, &gens).unwrap()
    }

    #[test]
    fn inequality_example_matrices() {
        let c = code(1, 3, &["1|110", "1|011", "1|101"]);
        let sf = standard_form(&c).unwrap();
        let paper = vec![vec![1, 2, 0, 0], vec![0, 3, 1, 0], vec![0, 3, 0, 1]];
        assert!(equivalent_up_to_block_permutation(&sf.matrix_coarse(), &paper, 1, 3));
        let k = code(1, 3, &["1|200", "0|220", "0|202"]);
        let sk = standard_form(&k).unwrap();
        let paper_k = vec![vec![1, 2, 0, 0], vec![0, 2, 2, 0], vec![0, 2, 0, 2]];
        assert!(equivalent_up_to_block_permutation(&sk.matrix_coarse(), &paper_k, 1, 3));
    }

    #[test]
    fn zero_code_has_empty_matrix() {
        let sf = standard_form(&AdditiveCode::zero(2, 3).unwrap()).unwrap();
        assert!(sf.matrix().is_empty());
    }

    #[test]
    fn five_row_example_groups() {
        let c = code(3, 3, &["100|000", "010|000", "001|200", "000|110", "000|101"]);
        let sf = standard_form(&c).unwrap();
        assert_eq!((sf.kappa1, sf.kappa2, sf.gamma, sf.delta), (2, 1, 3, 2));
        assert_eq!(sf.code().unwrap(), c);
        for row in sf.r() {
            assert!(row.iter().all(|&e| e <= 1));
        }
    }

    #[test]
    fn block_permutation_check() {
        let a = vec![vec![1, 0, 2]];
        assert!(equivalent_up_to_block_permutation(&a, &[vec![1, 2, 0]], 1, 2));
        assert!(!equivalent_up_to_block_permutation(&a, &[vec![0, 1, 2]], 1, 2));
    }
}
