//! Perron root of positive matrices, Saaty's consistency index and ratio, and
//! the spectral radius of comparison graphs.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::ComparisonGraph;
use crate::linalg::Lu;
use crate::pcm::SquareMatrix;
use crate::{Error, Result, ACCEPTABLE_CR};

/// Default tolerance on successive eigenvalue estimates.
pub const DEFAULT_TOL: f64 = 1e-11;
/// Default iteration cap for power iteration.
pub const DEFAULT_MAX_ITER: usize = 100_000;

/// Ratios this close to the 10% threshold count as acceptable.
pub const CR_TIE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EigenResult {
    pub lambda_max: f64,
    pub iterations: usize,
    /// `max_i |(A v)_i - λ v_i|` for the final iterate `v`, normalised to unit
    /// 1-norm.
    pub residual: f64,
}

/// Perron root of a strictly positive matrix by power iteration.
///
/// Iterates are 1-normalised and start from the all-ones vector. Stops once
/// successive estimates differ by at most `tol` and the residual is at most
/// `tol`.
pub fn dominant_eigenvalue(matrix: &SquareMatrix, tol: f64, max_iter: usize) -> Result<EigenResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidTolerance(tol));
    }
    let n = matrix.n();
    let a = matrix.as_slice();
    if n == 0 || a.iter().any(|&x| !(x > 0.0 && x.is_finite())) {
        return Err(Error::NotPositive);
    }
    let mut v = vec![1.0 / n as f64; n];
    let mut y = vec![0.0; n];
    let mut previous = f64::INFINITY;
    for iteration in 1..=max_iter {
        for (yi, row) in y.iter_mut().zip(matrix.rows()) {
            *yi = row.iter().zip(&v).map(|(a, b)| a * b).sum();
        }
        let lambda: f64 = y.iter().sum();
        let residual = y
            .iter()
            .zip(&v)
            .map(|(yi, vi)| (yi - lambda * vi).abs())
            .fold(0.0, f64::max);
        if (lambda - previous).abs() <= tol && residual <= tol {
            return Ok(EigenResult {
                lambda_max: lambda,
                iterations: iteration,
                residual,
            });
        }
        previous = lambda;
        for (vi, yi) in v.iter_mut().zip(&y) {
            *vi = yi / lambda;
        }
    }
    Err(Error::NoConvergence { iterations: max_iter })
}

/// `CI = (λ_max - n) / (n - 1)`.
///
/// Values in `(-1e-9, 0)` caused by rounding are clamped to zero.
pub fn consistency_index(lambda_max: f64, n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidOrder(n));
    }
    let nf = n as f64;
    if lambda_max < nf - 1e-9 {
        return Err(Error::BelowOrder { lambda: lambda_max, n });
    }
    Ok(((lambda_max - nf) / (nf - 1.0)).max(0.0))
}

/// `CR = CI / RI`.
pub fn consistency_ratio(ci: f64, ri: f64) -> Result<f64> {
    if !(ri > 0.0) || !ri.is_finite() {
        return Err(Error::InvalidRandomIndex(ri));
    }
    Ok(ci.max(0.0) / ri)
}

/// Outcome of Saaty's 10% rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "SCREAMING_SNAKE_CASE"))]
pub enum Verdict {
    Acceptable,
    Unacceptable,
    /// Disconnected graph, or a spanning tree whose threshold is undefined.
    NotEvaluable,
}

impl Verdict {
    /// Acceptable iff `cr <= 0.1`, with ties within [`CR_TIE_TOLERANCE`].
    pub fn from_ratio(cr: f64) -> Self {
        if is_acceptable(cr) {
            Verdict::Acceptable
        } else {
            Verdict::Unacceptable
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Acceptable => "ACCEPTABLE",
            Verdict::Unacceptable => "UNACCEPTABLE",
            Verdict::NotEvaluable => "NOT_EVALUABLE",
        }
    }
}

pub(crate) fn is_acceptable(cr: f64) -> bool {
    cr <= ACCEPTABLE_CR + CR_TIE_TOLERANCE
}

/// Largest absolute eigenvalue of the adjacency matrix.
///
/// Power iteration runs on `B + I`: bipartite graphs have `±ρ` in their
/// spectrum, and the shift makes `ρ + 1` strictly dominant. The estimate is
/// the Rayleigh quotient, accurate to the residual norm.
pub fn spectral_radius(graph: &ComparisonGraph) -> f64 {
    let n = graph.n();
    if n == 0 || graph.edge_count() == 0 {
        return 0.0;
    }
    let adjacency: Vec<Vec<usize>> = (0..n)
        .map(|v| (0..n).filter(|&u| graph.has_edge(v, u)).collect())
        .collect();
    let mut x = vec![1.0 / libm::sqrt(n as f64); n];
    let mut y = vec![0.0; n];
    let mut estimate = 0.0;
    for _ in 0..DEFAULT_MAX_ITER {
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = x[i];
            for &j in &adjacency[i] {
                *yi += x[j];
            }
        }
        estimate = x.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>();
        let residual = libm::sqrt(
            x.iter()
                .zip(&y)
                .map(|(a, b)| (b - estimate * a) * (b - estimate * a))
                .sum::<f64>(),
        );
        let norm = libm::sqrt(y.iter().map(|v| v * v).sum::<f64>());
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = yi / norm;
        }
        if residual <= 1e-12 {
            break;
        }
    }
    estimate - 1.0
}

/// Perron pair solver for the completion optimiser.
///
/// Uses Noda's shifted inverse iteration: with `x > 0`, the Collatz–Wielandt
/// bounds `min (Ax)_i / x_i <= λ <= max (Ax)_i / x_i` bracket the Perron root,
/// and the upper bound is a shift for which the Perron root is the nearest
/// eigenvalue. Convergence is quadratic, so warm starts finish in two or three
/// factorisations.
pub(crate) struct Perron {
    n: usize,
    y: Vec<f64>,
    z: Vec<f64>,
    shifted: Vec<f64>,
    lu: Lu,
}

const NODA_MAX_ITER: usize = 200;
const NODA_REL_TOL: f64 = 1e-13;

impl Perron {
    pub(crate) fn new(n: usize) -> Self {
        Perron {
            n,
            y: vec![0.0; n],
            z: vec![0.0; n],
            shifted: vec![0.0; n * n],
            lu: Lu::with_size(n),
        }
    }

    /// Perron root of the positive row-major matrix `a`. `x` holds a positive
    /// starting vector and receives the Perron vector, normalised to sum 1.
    pub(crate) fn solve(&mut self, a: &[f64], x: &mut [f64]) -> Result<f64> {
        let n = self.n;
        normalise(x);
        let mut best_gap = f64::INFINITY;
        for _ in 0..NODA_MAX_ITER {
            for i in 0..n {
                self.y[i] = a[i * n..(i + 1) * n].iter().zip(x.iter()).map(|(p, q)| p * q).sum();
            }
            let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
            for i in 0..n {
                let r = self.y[i] / x[i];
                lo = lo.min(r);
                hi = hi.max(r);
            }
            let gap = hi - lo;
            if gap <= NODA_REL_TOL * hi {
                let lambda: f64 = self.y.iter().sum();
                x.copy_from_slice(&self.y);
                normalise(x);
                return Ok(lambda);
            }
            best_gap = best_gap.min(gap / hi);
            if self.inverse_step(a, hi, x) {
                continue;
            }
            // Shift numerically singular: fall back to a power step.
            x.copy_from_slice(&self.y);
            normalise(x);
        }
        if best_gap <= 1e-9 {
            for i in 0..n {
                self.y[i] = a[i * n..(i + 1) * n].iter().zip(x.iter()).map(|(p, q)| p * q).sum();
            }
            return Ok(self.y.iter().sum());
        }
        Err(Error::NoConvergence { iterations: NODA_MAX_ITER })
    }

    fn inverse_step(&mut self, a: &[f64], shift: f64, x: &mut [f64]) -> bool {
        let n = self.n;
        for (s, &v) in self.shifted.iter_mut().zip(a) {
            *s = -v;
        }
        for i in 0..n {
            self.shifted[i * n + i] += shift;
        }
        if !self.lu.factor(&self.shifted) {
            return false;
        }
        self.lu.solve(x, &mut self.z);
        if self.z.iter().any(|&v| !(v > 0.0 && v.is_finite())) {
            return false;
        }
        x.copy_from_slice(&self.z);
        normalise(x);
        true
    }
}

fn normalise(x: &mut [f64]) {
    let s: f64 = x.iter().sum();
    for v in x.iter_mut() {
        *v /= s;
    }
}
