//! Exact F₂ linear algebra: a sparse incremental echelon form over arbitrary
//! ordered coordinate keys, and a dense bitset matrix for large ranks.

use std::collections::BTreeSet;

/// An incremental row-echelon basis for a subspace of `F₂^(K)`, with vectors
/// represented sparsely as sets of coordinates. Each stored row has a unique
/// pivot (its smallest coordinate).
#[derive(Debug, Clone, Default)]
pub struct Echelon<K: Ord + Clone> {
    rows: Vec<BTreeSet<K>>,
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[BTreeSet<K>] {
        &self.rows
    }

    /// Reduce `v` against the stored rows (eliminating their pivots).
    pub fn reduce(&self, mut v: BTreeSet<K>) -> BTreeSet<K> {
        loop {
            let Some(pivot) = v.iter().next().cloned() else { return v };
            match self.rows.iter().find(|r| r.iter().next() == Some(&pivot)) {
                Some(row) => v = xor(&v, row),
                None => return v,
            }
        }
    }

    /// Insert `v` if independent of the current span; returns `true` if the
    /// rank grew.
    pub fn insert(&mut self, v: BTreeSet<K>) -> bool {
        let r = self.reduce(v);
        if r.is_empty() {
            false
        } else {
            // Keep rows sorted by pivot so `reduce` terminates in one pass.
            let pos = self
                .rows
                .partition_point(|row| row.iter().next() < r.iter().next());
            self.rows.insert(pos, r);
            true
        }
    }

    pub fn contains(&self, v: BTreeSet<K>) -> bool {
        self.reduce(v).is_empty()
    }
}

/// Symmetric difference of two sparse F₂ vectors.
pub fn xor<K: Ord + Clone>(a: &BTreeSet<K>, b: &BTreeSet<K>) -> BTreeSet<K> {
    a.symmetric_difference(b).cloned().collect()
}

/// A dense F₂ matrix as packed 64-bit words, for bulk rank computations.
#[derive(Debug, Clone)]
pub struct BitMat {
    cols: usize,
    words: usize,
    rows: Vec<Vec<u64>>,
}

impl BitMat {
    pub fn new(cols: usize) -> Self {
        BitMat { cols, words: cols.div_ceil(64), rows: Vec::new() }
    }

    pub fn push_row(&mut self, support: impl IntoIterator<Item = usize>) {
        let mut row = vec![0u64; self.words];
        for c in support {
            debug_assert!(c < self.cols);
            row[c / 64] ^= 1 << (c % 64);
        }
        self.rows.push(row);
    }

    /// Rank by in-place Gaussian elimination (destroys row order).
    pub fn rank(&mut self) -> usize {
        let mut rank = 0;
        for col in 0..self.cols {
            let (w, bit) = (col / 64, 1u64 << (col % 64));
            let Some(pivot) = (rank..self.rows.len()).find(|&r| self.rows[r][w] & bit != 0)
            else {
                continue;
            };
            self.rows.swap(rank, pivot);
            let pivot_row = self.rows[rank].clone();
            for r in 0..self.rows.len() {
                if r != rank && self.rows[r][w] & bit != 0 {
                    for (x, y) in self.rows[r].iter_mut().zip(&pivot_row) {
                        *x ^= y;
                    }
                }
            }
            rank += 1;
            if rank == self.rows.len() {
                break;
            }
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn echelon_rank_and_membership() {
        let mut e: Echelon<u32> = Echelon::new();
        assert!(e.insert(BTreeSet::from([0, 1])));
        assert!(e.insert(BTreeSet::from([1, 2])));
        assert!(!e.insert(BTreeSet::from([0, 2]))); // sum of the first two
        assert_eq!(e.rank(), 2);
        assert!(e.contains(BTreeSet::from([0, 2])));
        assert!(!e.contains(BTreeSet::from([0])));
    }

    #[test]
    fn bitmat_rank() {
        let mut m = BitMat::new(130);
        m.push_row([0, 129]);
        m.push_row([129]);
        m.push_row([0]); // dependent on the first two
        m.push_row([64, 65]);
        assert_eq!(m.rank(), 3);
    }
}
