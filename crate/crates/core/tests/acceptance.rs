//! One PASS/FAIL line per acceptance criterion. Criteria that are proven
//! unattainable still print FAIL; the run only aborts if a failure is not
//! accompanied by that proof.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use neighsum::existence::{
    count_hypercube, exists_neumann_square, exists_torus, harmonic_torus_kernel, rational_solutions_scan,
    reduced_angle_pairs, spectral_search,
};
use neighsum::fill::{fill_semi_infinite, SequencePair};
use neighsum::generators::standard_square_basis;
use neighsum::grid::{build_operator, operator_kronecker_form, vectorize, verify_board};
use neighsum::linalg::{apply, in_span, kernel_basis};
use neighsum::norm::{g, g_by_product};
use neighsum::numtheory::{is_prime, legendre};
use neighsum::{BoardSpec, IntGrid, KernelBasis, SparseIntMatrix};

const D3: [u64; 46] = [
    0, 0, 0, 3, 0, 0, 0, 0, 0, 15, 0, 0, 6, 0, 0, 3, 0, 0, 0, 0, 0, 15, 0, 0, 0, 0, 0, 9, 0, 0, 0, 0, 0, 15, 0, 0, 0,
    0, 0, 3, 0, 0, 6, 0, 0, 15,
];
const D4: [u64; 46] = [
    0, 0, 0, 4, 0, 0, 0, 0, 0, 88, 0, 0, 24, 0, 0, 4, 0, 0, 0, 0, 0, 136, 0, 0, 0, 0, 0, 220, 0, 0, 0, 0, 0, 88, 0, 0,
    48, 0, 0, 52, 0, 0, 24, 0, 0, 136,
];
const D5: [u64; 46] = [
    0, 0, 0, 5, 0, 0, 0, 0, 0, 335, 0, 0, 480, 0, 0, 485, 0, 0, 540, 0, 0, 1295, 0, 0, 0, 0, 0, 1865, 0, 0, 0, 0, 0,
    815, 0, 0, 0, 0, 0, 1385, 0, 0, 480, 0, 0, 2255,
];

const SEMI_ROW: [i64; 6] = [2, 3, 5, 7, 11, 13];
const SEMI_COL: [i64; 6] = [2, 3, 5, 8, 13, 21];
const SEMI_INTERIOR: [[i64; 5]; 5] = [
    [-4, -3, 2, -8, -3],
    [-3, -16, 3, 3, -42],
    [1, 3, -15, 37, 29],
    [-8, -1, 42, -86, 99],
    [-7, -46, 29, 121, -428],
];

enum Outcome {
    Pass(String),
    Fail(String),
    /// Fails, with a demonstration that no correct implementation can pass.
    Unattainable(String),
}

fn grid(rows: &[Vec<i64>]) -> IntGrid {
    IntGrid::from_rows(rows).unwrap()
}

fn ac1() -> Outcome {
    let mut bad = Vec::new();
    for n in 3..=30usize {
        let spec = BoardSpec::flat_moore(vec![n, n]).unwrap();
        let dim = kernel_basis(&build_operator(&spec)).dim();
        let expected = if [5, 11, 17, 23, 29].contains(&n) { 2 } else { 0 };
        if dim != expected {
            bad.push(format!("n={n}: dim {dim}, expected {expected}"));
        }
    }
    if bad.is_empty() {
        Outcome::Pass("28 square kernels have the predicted dimension".into())
    } else {
        Outcome::Fail(bad.join("; "))
    }
}

fn ac2() -> Outcome {
    let k1 = grid(&[
        vec![1, 0, -1, 0, 1],
        vec![1, 0, -1, 0, 1],
        vec![0, 0, 0, 0, 0],
        vec![-1, 0, 1, 0, -1],
        vec![-1, 0, 1, 0, -1],
    ]);
    let k2 = k1.transpose();
    let n1 = grid(&[
        vec![0, 1, 1, 0],
        vec![-1, 0, 0, -1],
        vec![-1, 0, 0, -1],
        vec![0, 1, 1, 0],
    ]);
    let n2 = grid(&[
        vec![1, 0, 0, 1],
        vec![1, -1, -1, 1],
        vec![1, -1, -1, 1],
        vec![1, 0, 0, 1],
    ]);
    let moore = BoardSpec::flat_moore(vec![5, 5]).unwrap();
    let neumann = BoardSpec::flat_neumann(vec![4, 4]).unwrap();
    let moore_ker = kernel_basis(&build_operator(&moore));
    let neumann_ker = kernel_basis(&build_operator(&neumann));
    let mut bad = Vec::new();
    for (name, board, spec, ker) in [
        ("K1", &k1, &moore, &moore_ker),
        ("K2", &k2, &moore, &moore_ker),
        ("N1", &n1, &neumann, &neumann_ker),
        ("N2", &n2, &neumann, &neumann_ker),
    ] {
        if !verify_board(board, spec).unwrap().is_empty() {
            bad.push(format!("{name} fails verification"));
        }
        if !in_span(ker, &vectorize(board)).unwrap() {
            bad.push(format!("{name} outside the computed kernel"));
        }
    }
    let pair = KernelBasis::span_of(25, &[vectorize(&k1), vectorize(&k2)]).unwrap();
    if pair != moore_ker {
        bad.push("5x5 pair does not span the kernel".into());
    }
    if standard_square_basis(5).unwrap() != (k1, k2) {
        bad.push("generated 5x5 basis differs from the golden boards".into());
    }
    if bad.is_empty() {
        Outcome::Pass("golden 5x5 and Neumann 4x4 boards verified; 5x5 pair spans the kernel".into())
    } else {
        Outcome::Fail(bad.join("; "))
    }
}

fn ac3() -> Outcome {
    let mut bad = Vec::new();
    for (d, expected) in [(3u32, &D3), (4, &D4), (5, &D5)] {
        for (i, &want) in expected.iter().enumerate() {
            let n = i as u64 + 2;
            let got = count_hypercube(n, d).unwrap().count;
            if got != want {
                bad.push(format!("a_{n}^{d} = {got}, expected {want}"));
            }
        }
    }
    if bad.is_empty() {
        Outcome::Pass("138 sequence values match for d = 3, 4, 5".into())
    } else {
        Outcome::Fail(bad.join("; "))
    }
}

fn ac4() -> Outcome {
    let mut bad = Vec::new();
    for p in (5..=199u64).filter(|&p| is_prime(p)) {
        let l = legendre(3, p).unwrap();
        if g(p).unwrap() != BigInt::from(l) {
            bad.push(format!("g({p}) != ({l})"));
        }
        if p % 12 == 5 && !g(2 * p).unwrap().is_one() {
            bad.push(format!("g({}) != 1", 2 * p));
        }
    }
    for m in 4..=120u64 {
        if g(m).unwrap() != g_by_product(m).unwrap() {
            bad.push(format!("g({m}) routes disagree"));
        }
    }
    if bad.is_empty() {
        Outcome::Pass("g matches the Legendre symbol and the direct product".into())
    } else {
        Outcome::Fail(bad.join("; "))
    }
}

/// Equations of a 6x6 semi-infinite window that can be checked without
/// cells outside it, as `(centre, neighbour sum, centre value)` failures.
fn window_equation_failures(board: &[[i64; 6]; 6]) -> Vec<((usize, usize), i64, i64)> {
    let mut out = Vec::new();
    for r in 0..5usize {
        for c in 0..5usize {
            let mut sum = 0;
            for i in r.saturating_sub(1)..=r + 1 {
                for j in c.saturating_sub(1)..=c + 1 {
                    if (i, j) != (r, c) {
                        sum += board[i][j];
                    }
                }
            }
            if sum != board[r][c] {
                out.push(((r + 1, c + 1), sum, board[r][c]));
            }
        }
    }
    out
}

fn ac5() -> Outcome {
    let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    let seqs = SequencePair::new(ints(&SEMI_ROW), ints(&SEMI_COL)).unwrap();
    let window = fill_semi_infinite(&seqs, 6, 6).unwrap();
    let mut mismatches = Vec::new();
    for r in 1..6 {
        for c in 1..6 {
            let want = BigInt::from(SEMI_INTERIOR[r - 1][c - 1]);
            let got = window.get(&[r, c]);
            if *got != want {
                mismatches.push(format!("({},{}) computed {got} displayed {want}", r + 1, c + 1));
            }
        }
    }
    if mismatches.is_empty() {
        return Outcome::Pass("6x6 window matches cell for cell".into());
    }
    let mut displayed = [[0i64; 6]; 6];
    displayed[0] = SEMI_ROW;
    for r in 0..6 {
        displayed[r][0] = SEMI_COL[r];
    }
    for r in 1..6 {
        displayed[r][1..].copy_from_slice(&SEMI_INTERIOR[r - 1]);
    }
    let broken = window_equation_failures(&displayed);
    let mut computed = [[0i64; 6]; 6];
    for (r, row) in window.rows().iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            computed[r][c] = i64::try_from(v).unwrap();
        }
    }
    let computed_ok = window_equation_failures(&computed).is_empty();
    let detail = format!(
        "mismatches: {}; displayed board breaks its own equations at {}",
        mismatches.join(", "),
        broken
            .iter()
            .map(|((r, c), s, v)| format!("({r},{c}) neighbours {s} != {v}"))
            .collect::<Vec<_>>()
            .join(", ")
    );
    if !broken.is_empty() && computed_ok {
        Outcome::Unattainable(detail)
    } else {
        Outcome::Fail(detail)
    }
}

fn ac6() -> Outcome {
    let mut bad = Vec::new();
    for m in 3..=24usize {
        for n in 3..=24usize {
            let spec = BoardSpec::torus_moore(m, n).unwrap();
            let spectral = spectral_search(&spec).unwrap().exists;
            let rule = exists_torus(m as u64, n as u64).unwrap().exists;
            if spectral != rule {
                bad.push(format!("{m}x{n}: spectral {spectral}, rule {rule}"));
            }
        }
    }
    if bad.is_empty() {
        Outcome::Pass("484 tori agree".into())
    } else {
        Outcome::Fail(bad.join("; "))
    }
}

fn ac7() -> Outcome {
    let mut bad = Vec::new();
    for n in 3..=60usize {
        let spec = BoardSpec::flat_neumann(vec![n, n]).unwrap();
        let spectral = spectral_search(&spec).unwrap().exists;
        let rule = exists_neumann_square(n as u64).unwrap().exists;
        if spectral != rule {
            bad.push(format!("n={n}: spectral {spectral}, rule {rule}"));
        }
    }
    if bad.is_empty() {
        Outcome::Pass("58 Neumann squares agree".into())
    } else {
        Outcome::Fail(bad.join("; "))
    }
}

fn ac8() -> Outcome {
    let mut bad = Vec::new();
    for m in 3..=12u64 {
        for n in 3..=12u64 {
            let ker = harmonic_torus_kernel(m, n).unwrap();
            let ones = vec![BigInt::one(); (m * n) as usize];
            if ker != KernelBasis::span_of((m * n) as usize, &[ones]).unwrap() {
                bad.push(format!("{m}x{n}: dim {}", ker.dim()));
            }
        }
    }
    if bad.is_empty() {
        Outcome::Pass("100 harmonic tori have only constant solutions".into())
    } else {
        Outcome::Fail(bad.join("; "))
    }
}

fn ac9() -> Outcome {
    let pairs = reduced_angle_pairs(&rational_solutions_scan(120));
    let expected: BTreeSet<_> = [((1, 3), (1, 2)), ((1, 2), (1, 3))].into_iter().collect();
    if pairs == expected {
        Outcome::Pass("only (1/3, 1/2) and (1/2, 1/3) up to N = 120".into())
    } else {
        Outcome::Fail(format!("reduced pairs {pairs:?}"))
    }
}

fn random_grid(rng: &mut StdRng, dims: &[usize]) -> IntGrid {
    let len = dims.iter().product();
    IntGrid::new(
        dims.to_vec(),
        (0..len).map(|_| BigInt::from(rng.gen_range(-3..=3))).collect(),
    )
    .unwrap()
}

fn ac10() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut bad = Vec::new();
    let specs: Vec<BoardSpec> = vec![
        BoardSpec::flat_moore(vec![5, 5]).unwrap(),
        BoardSpec::flat_moore(vec![3, 7]).unwrap(),
        BoardSpec::flat_moore(vec![4, 1]).unwrap(),
        BoardSpec::flat_moore(vec![5, 2, 3]).unwrap(),
        BoardSpec::torus_moore(4, 6).unwrap(),
        BoardSpec::torus_moore(5, 7).unwrap(),
        BoardSpec::flat_neumann(vec![4, 4]).unwrap(),
        BoardSpec::flat_neumann(vec![3, 6]).unwrap(),
        BoardSpec::harmonic_torus(3, 5).unwrap(),
    ];
    for spec in &specs {
        let op = build_operator(spec);
        if !op.is_symmetric() {
            bad.push(format!("{:?} operator not symmetric", spec.dims()));
        }
        if spec.ndim() == 2 && operator_kronecker_form(spec).unwrap() != op {
            bad.push(format!("{:?} Kronecker form differs", spec.dims()));
        }
        let ker = kernel_basis(&op);
        let mut samples: Vec<IntGrid> = (0..20).map(|_| random_grid(&mut rng, spec.dims())).collect();
        for v in ker.vectors() {
            samples.push(neighsum::grid::devectorize(v, spec.dims()).unwrap());
        }
        for board in &samples {
            let v = vectorize(board);
            let direct = verify_board(board, spec).unwrap().is_empty();
            let via_op = apply(&op, &v).unwrap().iter().all(Zero::is_zero);
            let via_span = in_span(&ker, &v).unwrap();
            if direct != via_op || direct != via_span {
                bad.push(format!("{:?} verify/kernel disagree", spec.dims()));
            }
        }
        let mut triplets = op.entries().to_vec();
        triplets.shuffle(&mut rng);
        let permuted = SparseIntMatrix::from_triplets(op.size(), triplets).unwrap();
        if kernel_basis(&permuted) != ker {
            bad.push(format!("{:?} basis depends on triplet order", spec.dims()));
        }
    }
    for n in 2..=30u64 {
        let count = count_hypercube(n, 2).unwrap().count as usize;
        let spec = BoardSpec::flat_moore(vec![n as usize, n as usize]).unwrap();
        let dim = kernel_basis(&build_operator(&spec)).dim();
        if count != dim {
            bad.push(format!("a_{n}^2 = {count} but kernel dim {dim}"));
        }
    }
    let seq = |rng: &mut StdRng, corner: i64| {
        let mut v: Vec<BigInt> = (0..8).map(|_| BigInt::from(rng.gen_range(-50..=50))).collect();
        v[0] = BigInt::from(corner);
        v
    };
    for _ in 0..20 {
        let (c1, c2) = (rng.gen_range(-50..=50), rng.gen_range(-50..=50));
        let a = SequencePair::new(seq(&mut rng, c1), seq(&mut rng, c1)).unwrap();
        let b = SequencePair::new(seq(&mut rng, c2), seq(&mut rng, c2)).unwrap();
        let sum = SequencePair::new(
            a.row_seq.iter().zip(&b.row_seq).map(|(x, y)| x + y).collect(),
            a.col_seq.iter().zip(&b.col_seq).map(|(x, y)| x + y).collect(),
        )
        .unwrap();
        let fa = fill_semi_infinite(&a, 8, 8).unwrap();
        let fb = fill_semi_infinite(&b, 8, 8).unwrap();
        if fill_semi_infinite(&sum, 8, 8).unwrap() != fa.add(&fb).unwrap() {
            bad.push("fill superposition fails".into());
            break;
        }
    }
    if bad.is_empty() {
        Outcome::Pass("symmetry, Kronecker form, verify/kernel, counts, superposition, canonical bases".into())
    } else {
        Outcome::Fail(bad.join("; "))
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("AC1", ac1),
        ("AC2", ac2),
        ("AC3", ac3),
        ("AC4", ac4),
        ("AC5", ac5),
        ("AC6", ac6),
        ("AC7", ac7),
        ("AC8", ac8),
        ("AC9", ac9),
        ("AC10", ac10),
    ];
    let mut unexpected = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Outcome::Pass(detail) => println!("{name} PASS ({secs:.2}s) {detail}"),
            Outcome::Unattainable(detail) => println!("{name} FAIL ({secs:.2}s) {detail}"),
            Outcome::Fail(detail) => {
                unexpected += 1;
                println!("{name} FAIL ({secs:.2}s) {detail}");
            }
        }
    }
    if unexpected > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
