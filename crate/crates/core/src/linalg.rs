//! Exact kernels over the rationals, returned as canonical primitive integer
//! bases. No floating point anywhere on this path.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Result};
use crate::sparse::SparseIntMatrix;

type SparseRow = Vec<(usize, BigInt)>;

/// Canonical basis of a kernel: the reduced row echelon form of the kernel
/// subspace, each row scaled to a primitive integer vector with positive
/// leading entry. Equal subspaces give identical bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelBasis {
    size: usize,
    vectors: Vec<Vec<BigInt>>,
}

impl KernelBasis {
    /// Canonical basis of the span of `vectors` (which may be dependent).
    pub fn span_of(size: usize, vectors: &[Vec<BigInt>]) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != size) {
            return domain(format!("vector of length {} in ambient dimension {size}", v.len()));
        }
        let rational: Vec<Vec<BigRational>> = vectors
            .iter()
            .map(|v| v.iter().cloned().map(BigRational::from_integer).collect())
            .collect();
        Ok(Self {
            size,
            vectors: canonical_rows(rational, size),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<BigInt>] {
        &self.vectors
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Column of the first nonzero entry of each vector (strictly increasing).
    pub fn pivots(&self) -> Vec<usize> {
        self.vectors
            .iter()
            .map(|v| v.iter().position(|x| !x.is_zero()).expect("basis vectors are nonzero"))
            .collect()
    }
}

/// RREF of the given rows, dropped zero rows, each row made primitive.
fn canonical_rows(mut rows: Vec<Vec<BigRational>>, size: usize) -> Vec<Vec<BigInt>> {
    let mut rank = 0;
    for col in 0..size {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].recip();
        for x in rows[rank].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows.into_iter().map(|r| primitive_integer(&r)).collect()
}

fn primitive_integer(v: &[BigRational]) -> Vec<BigInt> {
    let denom = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&denom / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let sign_flip = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    if !g.is_zero() {
        for x in ints.iter_mut() {
            *x = &*x / &g;
            if sign_flip {
                *x = -&*x;
            }
        }
    }
    ints
}

fn make_primitive(row: &mut SparseRow) {
    let g = row.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if !g.is_one() && !g.is_zero() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

/// `a * row - b * pivot` where `a`, `b` are chosen to cancel the shared
/// leading column; the result is made primitive.
fn eliminate(row: &SparseRow, pivot: &SparseRow) -> SparseRow {
    let (lead_r, lead_p) = (&row[0].1, &pivot[0].1);
    let g = lead_r.gcd(lead_p);
    let a = lead_p / &g;
    let b = lead_r / &g;
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        let (col, value) = if ci < cj {
            i += 1;
            (ci, &a * &row[i - 1].1)
        } else if cj < ci {
            j += 1;
            (cj, -(&b * &pivot[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (ci, &a * &row[i - 1].1 - &b * &pivot[j - 1].1)
        };
        if !value.is_zero() {
            out.push((col, value));
        }
    }
    make_primitive(&mut out);
    out
}

/// Row echelon form by fraction-free sparse elimination. Returns pivot rows
/// (sorted by pivot column) and the free columns.
fn echelon(m: &SparseIntMatrix) -> (Vec<SparseRow>, Vec<usize>) {
    let n = m.size();
    let mut buckets: Vec<Vec<SparseRow>> = vec![Vec::new(); n];
    for row in m.rows() {
        if row.is_empty() {
            continue;
        }
        let mut row: SparseRow = row.into_iter().map(|(c, v)| (c, BigInt::from(v))).collect();
        make_primitive(&mut row);
        buckets[row[0].0].push(row);
    }
    let mut pivots = Vec::new();
    let mut free = Vec::new();
    for col in 0..n {
        let mut bucket = std::mem::take(&mut buckets[col]);
        if bucket.is_empty() {
            free.push(col);
            continue;
        }
        // smallest leading entry, then shortest row; ties keep insertion order
        let best = (0..bucket.len())
            .min_by_key(|&i| (bucket[i][0].1.magnitude().bits(), bucket[i].len()))
            .expect("bucket is nonempty");
        let pivot = bucket.swap_remove(best);
        for row in bucket {
            let reduced = eliminate(&row, &pivot);
            if let Some(&(lead, _)) = reduced.first() {
                buckets[lead].push(reduced);
            }
        }
        pivots.push(pivot);
    }
    (pivots, free)
}

/// Canonical basis of `{v : M v = 0}` over the rationals.
pub fn kernel_basis(m: &SparseIntMatrix) -> KernelBasis {
    let n = m.size();
    let (pivots, free) = echelon(m);
    let mut raw = Vec::with_capacity(free.len());
    for &f in &free {
        let mut x = vec![BigRational::zero(); n];
        x[f] = BigRational::one();
        for row in pivots.iter().rev() {
            let (lead_col, lead) = &row[0];
            if *lead_col > f {
                // pivots right of f only see zeros
                continue;
            }
            let mut acc = BigRational::zero();
            for (c, v) in &row[1..] {
                if !x[*c].is_zero() {
                    acc += &x[*c] * BigRational::from_integer(v.clone());
                }
            }
            x[*lead_col] = -acc / BigRational::from_integer(lead.clone());
        }
        raw.push(x);
    }
    KernelBasis {
        size: n,
        vectors: canonical_rows(raw, n),
    }
}

pub fn rank(m: &SparseIntMatrix) -> usize {
    echelon(m).0.len()
}

/// Exact matrix-vector product.
pub fn apply(m: &SparseIntMatrix, v: &[BigInt]) -> Result<Vec<BigInt>> {
    if v.len() != m.size() {
        return domain(format!(
            "vector of length {} against a {}x{} matrix",
            v.len(),
            m.size(),
            m.size()
        ));
    }
    let mut out = vec![BigInt::zero(); m.size()];
    for &(r, c, val) in m.entries() {
        if !v[c].is_zero() {
            out[r] += &v[c] * val;
        }
    }
    Ok(out)
}

/// Whether `v` is a rational combination of the basis vectors.
pub fn in_span(basis: &KernelBasis, v: &[BigInt]) -> Result<bool> {
    if v.len() != basis.size {
        return domain(format!(
            "vector of length {} in ambient dimension {}",
            v.len(),
            basis.size
        ));
    }
    let mut rest = v.to_vec();
    for (b, p) in basis.vectors.iter().zip(basis.pivots()) {
        if rest[p].is_zero() {
            continue;
        }
        let coeff = rest[p].clone();
        let lead = &b[p];
        for (x, y) in rest.iter_mut().zip(b) {
            *x = &*x * lead - &coeff * y;
        }
    }
    Ok(rest.iter().all(Zero::is_zero))
}
