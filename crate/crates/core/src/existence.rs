//! Existence theorems as divisibility rules, cross-checked by exact spectral
//! search and exact kernels.

use std::collections::BTreeSet;

use crate::error::{domain, Error, Result};
use crate::grid::{build_operator, BoardSpec, Boundary, Mode, Neighbourhood};
use crate::linalg::{kernel_basis, KernelBasis};
use crate::norm::g;
use crate::numtheory::{factorize, gcd, totient};
use crate::spectrum::SpectralProblem;

/// Outcome of an existence query. The certificate, when present, is a
/// 1-based eigenvalue-index tuple (one index per axis) satisfying the
/// board's eigen-equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExistenceVerdict {
    pub exists: bool,
    pub rule: String,
    pub certificate: Option<Vec<u64>>,
}

impl ExistenceVerdict {
    fn yes(rule: &str, certificate: Vec<u64>) -> Self {
        Self {
            exists: true,
            rule: rule.to_string(),
            certificate: Some(certificate),
        }
    }

    fn no(rule: &str) -> Self {
        Self {
            exists: false,
            rule: rule.to_string(),
            certificate: None,
        }
    }
}

/// Number of ordered solutions of the hypercube eigen-equation for an `n^d` board.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountRecord {
    pub n: u64,
    pub d: u32,
    pub count: u64,
}

/// Flat `n × n` Moore board: solutions exist iff `6 | (n+1)`.
pub fn exists_square(n: u64) -> Result<ExistenceVerdict> {
    if n < 3 {
        return domain(format!("square boards need n >= 3, got {n}"));
    }
    Ok(if (n + 1) % 6 == 0 {
        ExistenceVerdict::yes("square", vec![(n + 1) / 3, (n + 1) / 2])
    } else {
        ExistenceVerdict::no("square")
    })
}

/// Flat `m × n` Moore board: iff `2 | (m+1)` and `3 | (n+1)`, or vice versa.
pub fn exists_rect(m: u64, n: u64) -> Result<ExistenceVerdict> {
    if m < 2 || n < 2 {
        return domain(format!("rectangles need both sides >= 2, got {m}x{n}"));
    }
    Ok(if (m + 1) % 2 == 0 && (n + 1) % 3 == 0 {
        ExistenceVerdict::yes("rect", vec![(m + 1) / 2, (n + 1) / 3])
    } else if (m + 1) % 3 == 0 && (n + 1) % 2 == 0 {
        ExistenceVerdict::yes("rect", vec![(m + 1) / 3, (n + 1) / 2])
    } else {
        ExistenceVerdict::no("rect")
    })
}

/// Flat `m × 1` strip: iff `m ≡ 2 (mod 3)`. The certificate indexes the
/// `m` axis, then the length-1 axis.
pub fn exists_strip(m: u64) -> Result<ExistenceVerdict> {
    if m < 2 {
        return domain(format!("strips need m >= 2, got {m}"));
    }
    Ok(if m % 3 == 2 {
        ExistenceVerdict::yes("strip", vec![(m + 1) / 3, 1])
    } else {
        ExistenceVerdict::no("strip")
    })
}

/// Toroidal `m × n` Moore board: iff `4 | m` and `6 | n`, or vice versa.
pub fn exists_torus(m: u64, n: u64) -> Result<ExistenceVerdict> {
    if m < 3 || n < 3 {
        return domain(format!("tori need both sides >= 3, got {m}x{n}"));
    }
    Ok(if m % 4 == 0 && n % 6 == 0 {
        ExistenceVerdict::yes("torus", vec![m / 4, n / 6])
    } else if m % 6 == 0 && n % 4 == 0 {
        ExistenceVerdict::yes("torus", vec![m / 6, n / 4])
    } else {
        ExistenceVerdict::no("torus")
    })
}

/// Flat `n × n` Neumann board: iff `5 | (n+1)` or `6 | (n+1)`.
pub fn exists_neumann_square(n: u64) -> Result<ExistenceVerdict> {
    if n < 3 {
        return domain(format!("square boards need n >= 3, got {n}"));
    }
    let k6 = (n + 1) / 6;
    let k5 = (n + 1) / 5;
    Ok(if (n + 1) % 6 == 0 {
        // 2cos(3kπ/6k) + 2cos(2kπ/6k) = 0 + 1
        ExistenceVerdict::yes("neumann-square", vec![3 * k6, 2 * k6])
    } else if (n + 1) % 5 == 0 {
        // 2cos(kπ/5k) + 2cos(3kπ/5k) = 1
        ExistenceVerdict::yes("neumann-square", vec![k5, 3 * k5])
    } else {
        ExistenceVerdict::no("neumann-square")
    })
}

/// Geometries with a matching theorem; anything else is reported as exploratory.
fn covered_by_theorem(spec: &BoardSpec) -> bool {
    let all = |b: Boundary| spec.boundary().iter().all(|&x| x == b);
    match (spec.neighbourhood(), spec.mode()) {
        (Neighbourhood::Moore, _) => all(Boundary::Flat) || (spec.ndim() == 2 && all(Boundary::Periodic)),
        (Neighbourhood::Neumann, Mode::Sum) => all(Boundary::Flat),
        (Neighbourhood::Neumann, Mode::Average) => all(Boundary::Periodic),
    }
}

fn check_searchable(spec: &BoardSpec) -> Result<()> {
    if spec.ndim() != 2 && spec.neighbourhood() != Neighbourhood::Moore {
        return Err(Error::Unsupported(format!(
            "spectral search needs a 2-D board or a Moore board, got a {}-D Neumann board",
            spec.ndim()
        )));
    }
    Ok(())
}

/// Exact search over eigenvalue-index tuples; returns the lexicographically
/// first solving tuple as certificate.
pub fn spectral_search(spec: &BoardSpec) -> Result<ExistenceVerdict> {
    check_searchable(spec)?;
    let rule = if covered_by_theorem(spec) {
        "spectral"
    } else {
        "spectral-exploratory"
    };
    let problem = SpectralProblem::for_spec(spec)?;
    Ok(match problem.first_solution() {
        Some(t) => ExistenceVerdict::yes(rule, t.into_iter().map(|p| p as u64).collect()),
        None => ExistenceVerdict::no(rule),
    })
}

/// Number of ordered index tuples solving the eigen-equation, which is the
/// dimension of the operator's kernel.
pub fn kernel_dimension_via_spectra(spec: &BoardSpec) -> Result<u64> {
    check_searchable(spec)?;
    Ok(SpectralProblem::for_spec(spec)?.count_solutions())
}

/// Exact check that a certificate solves the spec's eigen-equation.
pub fn certificate_holds(spec: &BoardSpec, certificate: &[u64]) -> Result<bool> {
    check_searchable(spec)?;
    if certificate.len() != spec.ndim() {
        return domain(format!(
            "certificate has {} indices for a {}-D board",
            certificate.len(),
            spec.ndim()
        ));
    }
    if certificate
        .iter()
        .zip(spec.dims())
        .any(|(&p, &d)| p == 0 || p > d as u64)
    {
        return domain(format!("certificate {certificate:?} outside board {:?}", spec.dims()));
    }
    let tuple: Vec<usize> = certificate.iter().map(|&p| p as usize).collect();
    Ok(SpectralProblem::for_spec(spec)?.holds(&tuple))
}

/// Existence via the exact kernel of the operator (no certificate).
pub fn kernel_verdict(spec: &BoardSpec) -> ExistenceVerdict {
    let exists = !kernel_basis(&build_operator(spec)).is_empty();
    ExistenceVerdict {
        exists,
        rule: "kernel".to_string(),
        certificate: None,
    }
}

/// `a_n^d`: ordered tuples `(p_1..p_d) ∈ [1, n]^d` with
/// `∏ (1 + 2cos(p_i π/(n+1))) = 2`, counted through value multisets with
/// exact confirmation.
pub fn count_hypercube(n: u64, d: u32) -> Result<CountRecord> {
    if n < 2 || d < 2 {
        return domain(format!("hypercube counts need n >= 2 and d >= 2, got n = {n}, d = {d}"));
    }
    let spec = BoardSpec::flat_moore(vec![n as usize; d as usize])?;
    let count = SpectralProblem::for_spec(&spec)?.count_solutions();
    Ok(CountRecord { n, d, count })
}

/// Necessary condition for any `n^d` solution: `3 | (n+1)`.
pub fn hypercube_necessary(n: u64) -> bool {
    (n + 1) % 3 == 0
}

/// Constructive sufficient condition for `n^3`: `6 | (n+1)` gives
/// `(2k, 3k, 3k)` and `15 | (n+1)` gives `(5k, 3k, 9k)`. Otherwise the verdict
/// is negative under the (unproven) converse.
pub fn hypercube_d3_sufficient(n: u64) -> Result<ExistenceVerdict> {
    if n < 2 {
        return domain(format!("hypercubes need n >= 2, got {n}"));
    }
    Ok(if (n + 1) % 6 == 0 {
        let k = (n + 1) / 6;
        ExistenceVerdict::yes("hypercube-d3-sufficient", vec![2 * k, 3 * k, 3 * k])
    } else if (n + 1) % 15 == 0 {
        let k = (n + 1) / 15;
        ExistenceVerdict::yes("hypercube-d3-sufficient", vec![5 * k, 3 * k, 9 * k])
    } else {
        ExistenceVerdict::no("hypercube-d3-conjecture")
    })
}

/// Searches for moduli `m_i | 2(n+1)` with `∏ g(m_i) = 2` and
/// `Σ φ(m_i)/2 = d`, following the prime-factor construction built on
/// `g(6) = 2`, `g(4) = 1`, `g(p) = (3/p)` and `g(2p) = 1` for `p ≡ 5 (mod 12)`.
/// Returns `None` when the construction does not apply.
pub fn sufficient_decomposition(n: u64, d: u32) -> Result<Option<Vec<u64>>> {
    if n < 2 || d < 2 {
        return domain(format!("decompositions need n >= 2 and d >= 2, got n = {n}, d = {d}"));
    }
    if !hypercube_necessary(n) {
        return Ok(None);
    }
    let factors = factorize(n + 1);
    let moduli = if factors.iter().any(|&(p, _)| p == 2) {
        let mut m = vec![6];
        m.extend(std::iter::repeat_n(4, d as usize - 1));
        Some(m)
    } else {
        // (modulus, length, repetition step) per usable prime
        let parts: Vec<(u64, u64, u64)> = factors
            .iter()
            .filter(|&&(p, _)| p != 3)
            .map(|&(p, _)| {
                let half = (p - 1) / 2;
                match p % 12 {
                    7 => (p, half, 2),
                    5 => (2 * p, half, 1),
                    _ => (p, half, 1),
                }
            })
            .collect();
        let mut reps = vec![0u64; parts.len()];
        search_lengths(&parts, 0, d as u64 - 1, &mut reps).then(|| {
            let mut m = vec![6];
            for (&(modulus, _, _), &r) in parts.iter().zip(&reps) {
                m.extend(std::iter::repeat_n(modulus, r as usize));
            }
            m
        })
    };
    match moduli {
        Some(m) => {
            verify_decomposition(n, d, &m)?;
            Ok(Some(m))
        }
        None => Ok(None),
    }
}

/// Finds repetition counts (multiples of each part's step) whose lengths sum
/// to `remaining`. Smaller primes take as few copies as possible first.
fn search_lengths(parts: &[(u64, u64, u64)], i: usize, remaining: u64, reps: &mut [u64]) -> bool {
    if i == parts.len() {
        return remaining == 0;
    }
    let (_, len, step) = parts[i];
    let mut copies = 0;
    while copies * len <= remaining {
        reps[i] = copies;
        if search_lengths(parts, i + 1, remaining - copies * len, reps) {
            return true;
        }
        copies += step;
    }
    reps[i] = 0;
    false
}

fn verify_decomposition(n: u64, d: u32, moduli: &[u64]) -> Result<()> {
    let mut product = num_bigint::BigInt::from(1);
    let mut length = 0;
    for &m in moduli {
        if (2 * (n + 1)) % m != 0 {
            return Err(Error::Invariant(format!(
                "modulus {m} does not divide 2(n+1) = {}",
                2 * (n + 1)
            )));
        }
        product *= g(m)?;
        length += totient(m) / 2;
    }
    if product != 2.into() || length != d as u64 {
        return Err(Error::Invariant(format!(
            "decomposition {moduli:?} gives product {product}, length {length}"
        )));
    }
    Ok(())
}

/// Best available theorem for the `n^d` Moore hypercube: the necessary
/// condition, the square theorem for `d = 2`, the constructive `d = 3`
/// criterion, the prime-factor decomposition for `d >= 4`, and an exact
/// spectral search when no construction applies.
pub fn hypercube_rule(n: u64, d: u32) -> Result<ExistenceVerdict> {
    if n < 2 || d < 2 {
        return domain(format!("hypercubes need n >= 2 and d >= 2, got n = {n}, d = {d}"));
    }
    if !hypercube_necessary(n) {
        return Ok(ExistenceVerdict::no("hypercube-necessary"));
    }
    match d {
        2 if n >= 3 => exists_square(n),
        3 => hypercube_d3_sufficient(n),
        _ => match sufficient_decomposition(n, d)? {
            Some(moduli) => Ok(ExistenceVerdict::yes(
                "hypercube-decomposition",
                decomposition_indices(n, &moduli),
            )),
            None => spectral_search(&BoardSpec::flat_moore(vec![n as usize; d as usize])?),
        },
    }
}

/// Expands moduli into the eigenvalue-index tuple they stand for: each
/// modulus `m` contributes `p = a·2(n+1)/m` for every reduced `a < m/2`.
pub fn decomposition_indices(n: u64, moduli: &[u64]) -> Vec<u64> {
    let mut out = Vec::new();
    for &m in moduli {
        let scale = 2 * (n + 1) / m;
        out.extend(
            (1..m)
                .take_while(|&a| 2 * a < m)
                .filter(|&a| gcd(a, m) == 1)
                .map(|a| a * scale),
        );
    }
    out
}

/// Kernel of the Neumann-average operator on an `m × n` torus.
pub fn harmonic_torus_kernel(m: u64, n: u64) -> Result<KernelBasis> {
    if m < 3 || n < 3 {
        return domain(format!("tori need both sides >= 3, got {m}x{n}"));
    }
    let spec = BoardSpec::harmonic_torus(m as usize, n as usize)?;
    Ok(kernel_basis(&build_operator(&spec)))
}

/// All `(N, p, q)` with `N <= n_max`, `1 <= p, q < N` and
/// `(1 + 2cos(pπ/N))(1 + 2cos(qπ/N)) = 2` exactly.
pub fn rational_solutions_scan(n_max: u64) -> Vec<(u64, u64, u64)> {
    use rayon::prelude::*;
    (2..=n_max)
        .into_par_iter()
        .flat_map_iter(|n| {
            // angle pπ/N is a 1-D flat spectrum of length N-1
            let axis = BoardSpec::flat_moore(vec![(n - 1) as usize, (n - 1) as usize]).expect("n >= 2");
            let problem = SpectralProblem::for_spec(&axis).expect("2-D Moore boards are searchable");
            let mut found = Vec::new();
            for p in 1..n as usize {
                for q in 1..n as usize {
                    if problem.solves(&[p, q]) {
                        found.push((n, p as u64, q as u64));
                    }
                }
            }
            found
        })
        .collect()
}

/// Reduces `(N, p, q)` solutions to the angle fractions `(p/N, q/N)` in lowest terms.
pub fn reduced_angle_pairs(solutions: &[(u64, u64, u64)]) -> BTreeSet<((u64, u64), (u64, u64))> {
    let reduce = |p: u64, n: u64| {
        let g = gcd(p, n);
        (p / g, n / g)
    };
    solutions
        .iter()
        .map(|&(n, p, q)| (reduce(p, n), reduce(q, n)))
        .collect()
}
