//! Square integer matrices in sorted triplet form.

use std::collections::BTreeMap;

use crate::error::{domain, Result};

/// A square integer matrix stored as sorted `(row, col, value)` triplets with
/// no zero values and no duplicate positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseIntMatrix {
    size: usize,
    entries: Vec<(usize, usize, i64)>,
}

impl SparseIntMatrix {
    /// Builds a matrix from triplets in any order. Zero values are dropped;
    /// duplicate positions and out-of-range indices are rejected.
    pub fn from_triplets(size: usize, triplets: impl IntoIterator<Item = (usize, usize, i64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (r, c, v) in triplets {
            if r >= size || c >= size {
                return domain(format!("entry ({r}, {c}) outside a {size}x{size} matrix"));
            }
            if map.insert((r, c), v).is_some() {
                return domain(format!("duplicate entry at ({r}, {c})"));
            }
        }
        Ok(Self::from_map(size, map))
    }

    fn from_map(size: usize, map: BTreeMap<(usize, usize), i64>) -> Self {
        let entries = map
            .into_iter()
            .filter(|&(_, v)| v != 0)
            .map(|((r, c), v)| (r, c, v))
            .collect();
        Self { size, entries }
    }

    pub fn identity(size: usize) -> Self {
        Self {
            size,
            entries: (0..size).map(|i| (i, i, 1)).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Entries sorted by row, then column.
    pub fn entries(&self) -> &[(usize, usize, i64)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.entries
            .binary_search_by(|&(r, c, _)| (r, c).cmp(&(row, col)))
            .map(|i| self.entries[i].2)
            .unwrap_or(0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.entries.iter().all(|&(r, c, v)| self.get(c, r) == v)
    }

    /// Entries grouped by row; each row sorted by column.
    pub fn rows(&self) -> Vec<Vec<(usize, i64)>> {
        let mut rows = vec![Vec::new(); self.size];
        for &(r, c, v) in &self.entries {
            rows[r].push((c, v));
        }
        rows
    }

    pub fn row_sums(&self) -> Vec<i64> {
        let mut sums = vec![0; self.size];
        for &(r, _, v) in &self.entries {
            sums[r] += v;
        }
        sums
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut dense = vec![vec![0; self.size]; self.size];
        for &(r, c, v) in &self.entries {
            dense[r][c] = v;
        }
        dense
    }

    /// Kronecker product `self ⊗ other`: index `(a, b)` maps to `a * other.size + b`.
    pub fn kron(&self, other: &Self) -> Self {
        let n = other.size;
        let mut entries = Vec::with_capacity(self.nnz() * other.nnz());
        for &(r1, c1, v1) in &self.entries {
            for &(r2, c2, v2) in &other.entries {
                entries.push((r1 * n + r2, c1 * n + c2, v1 * v2));
            }
        }
        entries.sort_unstable_by_key(|&(r, c, _)| (r, c));
        Self {
            size: self.size * n,
            entries,
        }
    }

    /// Kronecker sum `self ⊗ I + I ⊗ other`.
    pub fn kron_sum(&self, other: &Self) -> Self {
        self.kron(&Self::identity(other.size))
            .add(&Self::identity(self.size).kron(other))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.size, other.size, "matrix sizes differ");
        let mut map = BTreeMap::new();
        for &(r, c, v) in self.entries.iter().chain(&other.entries) {
            *map.entry((r, c)).or_insert(0) += v;
        }
        Self::from_map(self.size, map)
    }

    /// `self + shift * I`.
    pub fn shift_diagonal(&self, shift: i64) -> Self {
        self.add(&Self {
            size: self.size,
            entries: (0..self.size).map(|i| (i, i, shift)).collect(),
        })
    }
}

/// Tridiagonal band matrix with ones on the three central diagonals.
pub fn band(n: usize) -> SparseIntMatrix {
    let triplets = (0..n).flat_map(|i| {
        let lo = i.saturating_sub(1);
        let hi = (i + 1).min(n - 1);
        (lo..=hi).map(move |j| (i, j, 1))
    });
    SparseIntMatrix::from_triplets(n, triplets).expect("band indices are in range")
}

/// Circulant band matrix: ones where `i - j ∈ {-1, 0, 1} (mod n)`. Requires `n >= 3`.
pub fn circulant_band(n: usize) -> SparseIntMatrix {
    assert!(n >= 3, "circulant band needs n >= 3");
    let triplets = (0..n).flat_map(|i| [(i, (i + n - 1) % n, 1), (i, i, 1), (i, (i + 1) % n, 1)]);
    SparseIntMatrix::from_triplets(n, triplets).expect("circulant indices are distinct")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_out_of_range() {
        assert!(SparseIntMatrix::from_triplets(2, [(0, 0, 1), (0, 0, 2)]).is_err());
        assert!(SparseIntMatrix::from_triplets(2, [(2, 0, 1)]).is_err());
    }

    #[test]
    fn triplet_order_does_not_matter() {
        let a = SparseIntMatrix::from_triplets(3, [(0, 1, 1), (2, 2, -1), (1, 0, 4)]).unwrap();
        let b = SparseIntMatrix::from_triplets(3, [(2, 2, -1), (1, 0, 4), (0, 1, 1)]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn band_five_matches_display() {
        let expected = vec![
            vec![1, 1, 0, 0, 0],
            vec![1, 1, 1, 0, 0],
            vec![0, 1, 1, 1, 0],
            vec![0, 0, 1, 1, 1],
            vec![0, 0, 0, 1, 1],
        ];
        assert_eq!(band(5).to_dense(), expected);
    }

    #[test]
    fn kron_block_structure() {
        let b = band(2);
        let k = b.kron(&b);
        assert_eq!(k.to_dense(), vec![vec![1; 4]; 4]);
        let s = band(2).kron_sum(&band(3));
        assert_eq!(s.size(), 6);
        assert_eq!(s.get(0, 0), 2);
        assert!(s.is_symmetric());
    }

    #[test]
    fn circulant_wraps() {
        let c = circulant_band(4);
        assert_eq!(c.get(0, 3), 1);
        assert_eq!(c.get(3, 0), 1);
        assert_eq!(c.get(0, 2), 0);
        assert!(c.row_sums().iter().all(|&s| s == 3));
    }
}
