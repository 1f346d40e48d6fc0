//! Explicit solutions on finite boards, built as outer products of integer
//! eigenvectors of the per-axis band matrices.

use num_bigint::BigInt;

use crate::error::{domain, Result};
use crate::existence::{exists_neumann_square, exists_rect, exists_torus};
use crate::grid::{build_operator, BoardSpec, IntGrid};
use crate::linalg::{kernel_basis, KernelBasis};

/// `(1, 1, 0, -1, -1, 0, …)`: eigenvector of the flat band matrix for
/// eigenvalue 2 when `3 | (len+1)`.
pub fn period_six(len: usize) -> Vec<i64> {
    (0..len).map(|i| [1, 1, 0, -1, -1, 0][i % 6]).collect()
}

/// `(1, 0, -1, 0, …)`: eigenvalue 1 for the flat band matrix when
/// `2 | (len+1)`, and for the circulant band matrix when `4 | len`.
pub fn period_four(len: usize) -> Vec<i64> {
    (0..len).map(|i| [1, 0, -1, 0][i % 4]).collect()
}

/// `(2, 1, -1, -2, -1, 1, …)`: eigenvalue 2 for the circulant band matrix when `6 | len`.
pub fn period_six_cyclic(len: usize) -> Vec<i64> {
    (0..len).map(|i| [2, 1, -1, -2, -1, 1][i % 6]).collect()
}

fn outer(rows: &[i64], cols: &[i64]) -> IntGrid {
    IntGrid::from_fn(rows.len(), cols.len(), |i, j| BigInt::from(rows[i] * cols[j]))
}

/// The two standard solutions of the `n × n` board: `K1(i, j) = u(i)·w(j)`
/// with `u` the period-6 and `w` the period-4 pattern, and `K2 = K1ᵀ`.
pub fn standard_square_basis(n: usize) -> Result<(IntGrid, IntGrid)> {
    if n < 3 || (n + 1) % 6 != 0 {
        return domain(format!("standard square solutions need 6 | (n+1), got n = {n}"));
    }
    let k1 = outer(&period_six(n), &period_four(n));
    let k2 = k1.transpose();
    Ok((k1, k2))
}

/// A solution on the flat `m × n` board. The period-6 pattern runs along an
/// axis with `3 | (len+1)` and the period-4 pattern along one with
/// `2 | (len+1)`, preferring the period-6 pattern on rows.
pub fn rect_solution(m: usize, n: usize) -> Result<IntGrid> {
    if !exists_rect(m as u64, n as u64)?.exists {
        return domain(format!("no solution exists on a {m}x{n} board"));
    }
    if (m + 1) % 3 == 0 && (n + 1) % 2 == 0 {
        Ok(outer(&period_six(m), &period_four(n)))
    } else {
        Ok(outer(&period_four(m), &period_six(n)))
    }
}

/// A solution on the `m × n` torus: period-4 pattern on the axis divisible
/// by 4, doubled cyclic period-6 pattern on the axis divisible by 6.
pub fn torus_solution(m: usize, n: usize) -> Result<IntGrid> {
    if !exists_torus(m as u64, n as u64)?.exists {
        return domain(format!("no solution exists on a {m}x{n} torus"));
    }
    if m % 4 == 0 && n % 6 == 0 {
        Ok(outer(&period_four(m), &period_six_cyclic(n)))
    } else {
        Ok(outer(&period_six_cyclic(m), &period_four(n)))
    }
}

/// Exact kernel of the flat `n × n` Neumann operator; empty when no
/// solution exists.
pub fn neumann_square_basis(n: usize) -> Result<KernelBasis> {
    let spec = BoardSpec::flat_neumann(vec![n, n])?;
    if !exists_neumann_square(n as u64)?.exists {
        return KernelBasis::span_of(n * n, &[]);
    }
    Ok(kernel_basis(&build_operator(&spec)))
}
