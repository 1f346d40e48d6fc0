//! Solutions on semi-infinite and infinite boards. Two adjacent given rows
//! and two adjacent given columns fix a quadrant: the equation centred at
//! `(r, c)` has `(r+1, c+1)` as its only unknown once every cell with a
//! smaller coordinate sum is known.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{domain, Result};
use crate::grid::IntGrid;

/// First row and first column of a semi-infinite board (finite prefixes).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequencePair {
    pub row_seq: Vec<BigInt>,
    pub col_seq: Vec<BigInt>,
}

impl SequencePair {
    pub fn new(row_seq: Vec<BigInt>, col_seq: Vec<BigInt>) -> Result<Self> {
        match (row_seq.first(), col_seq.first()) {
            (Some(a), Some(b)) if a == b => Ok(Self { row_seq, col_seq }),
            (Some(a), Some(b)) => domain(format!("corner mismatch: row starts with {a}, column with {b}")),
            _ => domain("sequences must be nonempty"),
        }
    }
}

/// Completes `g` in place. Rows 0 and 1 and columns 0 and 1 are given;
/// every other cell is solved from the equation centred at its upper-left
/// diagonal neighbour, in order of increasing `r + c`.
fn complete_quadrant(g: &mut [Vec<BigInt>]) {
    let h = g.len();
    let w = g.first().map_or(0, Vec::len);
    for s in 4..h + w {
        for r in 2..h {
            let Some(c) = s.checked_sub(r).filter(|&c| (2..w).contains(&c)) else {
                continue;
            };
            let (cr, cc) = (r - 1, c - 1);
            let mut others = BigInt::zero();
            for i in cr - 1..=cr + 1 {
                for j in cc - 1..=cc + 1 {
                    if (i, j) != (cr, cc) && (i, j) != (r, c) {
                        others += &g[i][j];
                    }
                }
            }
            g[r][c] = &g[cr][cc] - others;
        }
    }
}

/// The `rows × cols` window of the semi-infinite solution with the given
/// first row and column.
pub fn fill_semi_infinite(seqs: &SequencePair, rows: usize, cols: usize) -> Result<IntGrid> {
    if rows == 0 || cols == 0 {
        return domain("window must be nonempty");
    }
    if seqs.row_seq.len() < cols || seqs.col_seq.len() < rows {
        return domain(format!(
            "window {rows}x{cols} needs {cols} row terms and {rows} column terms, got {} and {}",
            seqs.row_seq.len(),
            seqs.col_seq.len()
        ));
    }
    // zero phantom row and column ahead of the board
    let mut g = vec![vec![BigInt::zero(); cols + 1]; rows + 1];
    for c in 0..cols {
        g[1][c + 1] = seqs.row_seq[c].clone();
    }
    for r in 0..rows {
        g[r + 1][1] = seqs.col_seq[r].clone();
    }
    complete_quadrant(&mut g);
    Ok(IntGrid::from_fn(rows, cols, |i, j| g[i + 1][j + 1].clone()))
}

/// Four sequences over nonzero indices for an infinite board. With the
/// two central rows numbered 0 (upper) and 1 (lower) and the two central
/// columns 0 (left) and 1 (right), and position `k` on a line mapped to
/// sequence index `k` for `k >= 1` and `k - 1` for `k <= 0`:
/// `a` fills row 1, `c` fills row 0, `b` fills column 1 and `d` column 0.
/// The shared cells force `a₁ = b₁`, `a₋₁ = d₁`, `c₁ = b₋₁`, `c₋₁ = d₋₁`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CrossSpec {
    pub a: BTreeMap<i64, BigInt>,
    pub b: BTreeMap<i64, BigInt>,
    pub c: BTreeMap<i64, BigInt>,
    pub d: BTreeMap<i64, BigInt>,
}

/// Inclusive rectangle of cells in the infinite board's coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub row_min: i64,
    pub row_max: i64,
    pub col_min: i64,
    pub col_max: i64,
}

impl Window {
    /// `rows × cols` cells around the central 2 × 2 block.
    pub fn centred(rows: usize, cols: usize) -> Self {
        let (r, c) = (rows as i64, cols as i64);
        Self {
            row_min: 1 - r / 2,
            row_max: (r + 1) / 2,
            col_min: 1 - c / 2,
            col_max: (c + 1) / 2,
        }
    }

    pub fn rows(&self) -> usize {
        (self.row_max - self.row_min + 1) as usize
    }

    pub fn cols(&self) -> usize {
        (self.col_max - self.col_min + 1) as usize
    }
}

fn seq_index(k: i64) -> i64 {
    if k >= 1 {
        k
    } else {
        k - 1
    }
}

fn lookup<'a>(name: &str, seq: &'a BTreeMap<i64, BigInt>, k: i64) -> Result<&'a BigInt> {
    let idx = seq_index(k);
    seq.get(&idx)
        .ok_or_else(|| crate::Error::Domain(format!("sequence {name} has no term at index {idx}")))
}

impl CrossSpec {
    pub fn validate(&self) -> Result<()> {
        let pairs = [
            ("a", &self.a, 1, "b", &self.b, 1),
            ("a", &self.a, -1, "d", &self.d, 1),
            ("c", &self.c, 1, "b", &self.b, -1),
            ("c", &self.c, -1, "d", &self.d, -1),
        ];
        for (n1, s1, i1, n2, s2, i2) in pairs {
            match (s1.get(&i1), s2.get(&i2)) {
                (Some(x), Some(y)) if x == y => {}
                (Some(x), Some(y)) => return domain(format!("{n1}[{i1}] = {x} but {n2}[{i2}] = {y}")),
                _ => return domain(format!("missing {n1}[{i1}] or {n2}[{i2}]")),
            }
        }
        Ok(())
    }

    /// Value on the central rows/columns, if `(r, c)` lies on one.
    fn line_value(&self, r: i64, c: i64) -> Result<Option<&BigInt>> {
        Ok(match (r, c) {
            (1, _) => Some(lookup("a", &self.a, c)?),
            (0, _) => Some(lookup("c", &self.c, c)?),
            (_, 1) => Some(lookup("b", &self.b, r)?),
            (_, 0) => Some(lookup("d", &self.d, r)?),
            _ => None,
        })
    }
}

/// Solution window on the infinite board. Each quadrant is filled
/// independently from the two central rows and columns next to it.
pub fn fill_infinite(cross: &CrossSpec, window: Window) -> Result<IntGrid> {
    cross.validate()?;
    if window.row_min > window.row_max || window.col_min > window.col_max {
        return domain("window bounds are empty");
    }
    // quadrants as (row direction, col direction); local index i maps to
    // row 0 + i going down or row 1 - i going up (same for columns)
    let row_ext = window.row_max.max(1) - 1;
    let row_ext_up = -window.row_min.min(0);
    let col_ext = window.col_max.max(1) - 1;
    let col_ext_left = -window.col_min.min(0);
    let mut values: BTreeMap<(i64, i64), BigInt> = BTreeMap::new();
    for (down, right) in [(true, true), (true, false), (false, true), (false, false)] {
        let h = 2 + if down { row_ext } else { row_ext_up } as usize;
        let w = 2 + if right { col_ext } else { col_ext_left } as usize;
        let to_row = |i: usize| if down { i as i64 } else { 1 - i as i64 };
        let to_col = |j: usize| if right { j as i64 } else { 1 - j as i64 };
        let mut g = vec![vec![BigInt::zero(); w]; h];
        for (i, row) in g.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                if i < 2 || j < 2 {
                    *cell = cross
                        .line_value(to_row(i), to_col(j))?
                        .expect("central lines are given")
                        .clone();
                }
            }
        }
        complete_quadrant(&mut g);
        for (i, row) in g.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                values.entry((to_row(i), to_col(j))).or_insert(v);
            }
        }
    }
    let grid = IntGrid::from_fn(window.rows(), window.cols(), |i, j| {
        values[&(window.row_min + i as i64, window.col_min + j as i64)].clone()
    });
    Ok(grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn first_diagonal_cells() {
        let seqs = SequencePair::new(ints(&[2, 3, 5, 7, 11, 13]), ints(&[2, 3, 5, 8, 13, 21])).unwrap();
        let g = fill_semi_infinite(&seqs, 6, 6).unwrap();
        assert_eq!(g.get(&[1, 1]), &BigInt::from(-4));
        assert_eq!(g.get(&[1, 2]), &BigInt::from(-3));
    }

    #[test]
    fn zero_sequences_give_zero_window() {
        let seqs = SequencePair::new(ints(&[0; 5]), ints(&[0; 4])).unwrap();
        assert!(fill_semi_infinite(&seqs, 4, 5).unwrap().is_zero());
    }

    #[test]
    fn corner_and_length_checks() {
        assert!(SequencePair::new(ints(&[1, 2]), ints(&[2, 2])).is_err());
        let seqs = SequencePair::new(ints(&[1, 2]), ints(&[1, 2, 3])).unwrap();
        assert!(fill_semi_infinite(&seqs, 3, 3).is_err());
        assert!(fill_semi_infinite(&seqs, 3, 2).is_ok());
    }

    #[test]
    fn centred_window() {
        let w = Window::centred(4, 5);
        assert_eq!((w.row_min, w.row_max, w.col_min, w.col_max), (-1, 2, -1, 3));
        assert_eq!((w.rows(), w.cols()), (4, 5));
    }

    #[test]
    fn cross_constraint_violation() {
        let mut cross = CrossSpec::default();
        for s in [&mut cross.a, &mut cross.b, &mut cross.c, &mut cross.d] {
            for k in [-3i64, -2, -1, 1, 2, 3] {
                s.insert(k, BigInt::zero());
            }
        }
        assert!(fill_infinite(&cross, Window::centred(6, 6)).unwrap().is_zero());
        cross.a.insert(1, 5.into());
        assert!(fill_infinite(&cross, Window::centred(6, 6)).is_err());
    }
}
