//! Exact enumeration of eigenvalue-index tuples. Each axis of a board
//! contributes the spectrum of its band matrix, `1 + 2cos(pπ/(L+1))` for a
//! flat axis of length `L` and `1 + 2cos(2πp/L)` for a periodic one; the
//! operator is singular exactly when some tuple satisfies the combined
//! eigen-equation.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::cyclo::{cosine_sum_equals, product_equals_any};
use crate::error::{Error, Result};
use crate::grid::{BoardSpec, Boundary, Mode, Neighbourhood};
use crate::numtheory::lcm;

/// Tolerance of the floating-point prefilter. Candidates further than this
/// from the target are discarded without exact confirmation.
pub const PREFILTER_TOLERANCE: f64 = 1e-6;

/// Spectrum of one axis: indices `1..=len`, each with an exponent in
/// conductor `conductor` and its floating-point value.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct AxisSpectrum {
    pub len: usize,
    pub boundary: Boundary,
    pub conductor: u64,
}

impl AxisSpectrum {
    pub fn new(len: usize, boundary: Boundary) -> Self {
        let conductor = match boundary {
            Boundary::Flat => 2 * (len as u64 + 1),
            Boundary::Periodic => len as u64,
        };
        Self {
            len,
            boundary,
            conductor,
        }
    }

    /// `2cos(2π·exponent/conductor)` for index `p`.
    pub fn two_cos(&self, p: usize) -> f64 {
        2.0 * (2.0 * PI * p as f64 / self.conductor as f64).cos()
    }

    pub fn value(&self, p: usize) -> f64 {
        1.0 + self.two_cos(p)
    }
}

/// The combined eigen-equation for a board.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Equation {
    /// `∏ λ_i = target` (Moore boards, Kronecker products).
    Product { target: i64 },
    /// `Σ 2cos θ_i = target` (Neumann boards, Kronecker sums).
    CosineSum { target: i64 },
}

#[derive(Debug, Clone)]
pub(crate) struct SpectralProblem {
    pub axes: Vec<AxisSpectrum>,
    pub equation: Equation,
    pub conductor: u64,
}

impl SpectralProblem {
    pub fn for_spec(spec: &BoardSpec) -> Result<Self> {
        let axes: Vec<AxisSpectrum> = spec
            .dims()
            .iter()
            .zip(spec.boundary())
            .map(|(&len, &b)| AxisSpectrum::new(len, b))
            .collect();
        let equation = match spec.neighbourhood() {
            Neighbourhood::Moore => Equation::Product { target: 2 },
            Neighbourhood::Neumann => {
                if spec.ndim() != 2 {
                    return Err(Error::Unsupported(format!(
                        "spectral search covers Neumann boards in 2 dimensions only, got {}",
                        spec.ndim()
                    )));
                }
                let d = spec.ndim() as i64;
                match spec.mode() {
                    Mode::Sum => Equation::CosineSum { target: 1 },
                    Mode::Average => Equation::CosineSum { target: 2 * d },
                }
            }
        };
        let conductor = axes.iter().fold(1, |acc, a| lcm(acc, a.conductor));
        Ok(Self {
            axes,
            equation,
            conductor,
        })
    }

    fn exponents(&self, tuple: &[usize]) -> Vec<u64> {
        tuple
            .iter()
            .zip(&self.axes)
            .map(|(&p, a)| p as u64 * (self.conductor / a.conductor))
            .collect()
    }

    /// Exact check of the eigen-equation for a 1-based index tuple.
    pub fn holds(&self, tuple: &[usize]) -> bool {
        let exps = self.exponents(tuple);
        match self.equation {
            Equation::Product { target } => product_equals_any(self.conductor, &exps, target),
            Equation::CosineSum { target } => cosine_sum_equals(self.conductor, &exps, target),
        }
    }

    fn float_value(&self, tuple: &[usize]) -> f64 {
        match self.equation {
            Equation::Product { .. } => tuple.iter().zip(&self.axes).map(|(&p, a)| a.value(p)).product(),
            Equation::CosineSum { .. } => tuple.iter().zip(&self.axes).map(|(&p, a)| a.two_cos(p)).sum(),
        }
    }

    fn target(&self) -> f64 {
        match self.equation {
            Equation::Product { target } | Equation::CosineSum { target } => target as f64,
        }
    }

    /// Whether discarding candidates at [`PREFILTER_TOLERANCE`] is safe: the
    /// worst-case rounding error of the float evaluation must stay far below it.
    fn prefilter_sound(&self) -> bool {
        let d = self.axes.len() as i32;
        let bound = match self.equation {
            Equation::Product { .. } => 3f64.powi(d) * (2.0 * d as f64 + 2.0) * 4.0 * f64::EPSILON,
            Equation::CosineSum { .. } => 2.0 * d as f64 * 8.0 * f64::EPSILON,
        };
        bound < PREFILTER_TOLERANCE / 10.0
    }

    /// Candidate test: float prefilter (when sound) followed by exact confirmation.
    pub fn solves(&self, tuple: &[usize]) -> bool {
        if self.prefilter_sound() && (self.float_value(tuple) - self.target()).abs() > PREFILTER_TOLERANCE {
            return false;
        }
        self.holds(tuple)
    }

    /// Whether every axis has the same spectrum, so tuples may be
    /// enumerated as multisets.
    fn symmetric(&self) -> bool {
        self.axes.windows(2).all(|w| w[0] == w[1])
    }

    /// First solving tuple in lexicographic order.
    pub fn first_solution(&self) -> Option<Vec<usize>> {
        if self.symmetric() {
            let len = self.axes[0].len;
            let mut found = None;
            visit_multisets(len, self.axes.len(), 1, &mut Vec::new(), &mut |t| {
                if self.solves(t) {
                    found = Some(t.to_vec());
                    true
                } else {
                    false
                }
            });
            return found;
        }
        let mut found = None;
        visit_tuples(&self.axes, &mut Vec::new(), &mut |t| {
            if self.solves(t) {
                found = Some(t.to_vec());
                true
            } else {
                false
            }
        });
        found
    }

    /// Number of ordered solving tuples; equals the kernel dimension.
    pub fn count_solutions(&self) -> u64 {
        let d = self.axes.len();
        if self.symmetric() && d > 1 {
            let len = self.axes[0].len;
            return (1..=len)
                .into_par_iter()
                .map(|first| {
                    let mut total = 0u64;
                    visit_multisets(len, d, first, &mut vec![first], &mut |t| {
                        if self.solves(t) {
                            total += arrangements(t);
                        }
                        false
                    });
                    total
                })
                .sum();
        }
        let mut total = 0;
        visit_tuples(&self.axes, &mut Vec::new(), &mut |t| {
            if self.solves(t) {
                total += 1;
            }
            false
        });
        total
    }
}

/// Visits all tuples in lexicographic order; the visitor returns `true` to stop.
fn visit_tuples(axes: &[AxisSpectrum], prefix: &mut Vec<usize>, visit: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if prefix.len() == axes.len() {
        return visit(prefix);
    }
    for p in 1..=axes[prefix.len()].len {
        prefix.push(p);
        let stop = visit_tuples(axes, prefix, visit);
        prefix.pop();
        if stop {
            return true;
        }
    }
    false
}

/// Visits nondecreasing tuples over `1..=len` of length `d` extending
/// `prefix`, with next entries `>= from`, in lexicographic order.
fn visit_multisets(
    len: usize,
    d: usize,
    from: usize,
    prefix: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if prefix.len() == d {
        return visit(prefix);
    }
    for p in from..=len {
        prefix.push(p);
        let stop = visit_multisets(len, d, p, prefix, visit);
        prefix.pop();
        if stop {
            return true;
        }
    }
    false
}

/// Distinct orderings of a sorted tuple: `d! / ∏ mult!`.
fn arrangements(sorted: &[usize]) -> u64 {
    let mut count: u64 = (1..=sorted.len() as u64).product();
    let mut run = 1u64;
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            run += 1;
            count /= run;
        } else {
            run = 1;
        }
    }
    count
}
