//! Optimal completion: minimise the dominant eigenvalue over the missing
//! entries of an incomplete pairwise comparison matrix.
//!
//! With `x_k = e^{t_k}` the Perron root of `A(x)` is a convex function of `t`,
//! and for a connected graph of known comparisons the minimiser is unique.
//! The default solver is a projected Newton method in `t` with the exact
//! gradient and Hessian of the Perron root. A cyclic coordinate descent with
//! golden-section line searches is kept as a slower reference solver.

use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::{cholesky_solve, Lu};
use crate::pcm::{IncompletePcm, SquareMatrix};
use crate::spectral::{dominant_eigenvalue, Perron, DEFAULT_MAX_ITER, DEFAULT_TOL};
use crate::{Error, Result};

/// How the completion variables are constrained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "SCREAMING_SNAKE_CASE"))]
pub enum CompletionMethod {
    /// Method 1: any positive value. Numerically capped at `[1e-6, 1e6]`.
    Unconstrained,
    /// Method 2: bounded by the ends of the Saaty scale, `[1/9, 9]`.
    #[default]
    SaatyBounded,
}

/// Cap on `|ln x|` for [`CompletionMethod::Unconstrained`].
pub const UNCONSTRAINED_CAP: f64 = 1e6;
/// Box used by the grid oracle in place of the unbounded problem.
pub const UNCONSTRAINED_GRID_CAP: f64 = 1e4;

impl CompletionMethod {
    /// Bounds on each completion variable.
    pub fn bounds(self) -> (f64, f64) {
        match self {
            CompletionMethod::Unconstrained => (1.0 / UNCONSTRAINED_CAP, UNCONSTRAINED_CAP),
            CompletionMethod::SaatyBounded => (1.0 / 9.0, 9.0),
        }
    }

    fn log_box(self) -> (f64, f64) {
        let (lo, hi) = self.bounds();
        (libm::log(lo), libm::log(hi))
    }

    fn grid_log_box(self) -> (f64, f64) {
        match self {
            CompletionMethod::Unconstrained => {
                let c = libm::log(UNCONSTRAINED_GRID_CAP);
                (-c, c)
            }
            CompletionMethod::SaatyBounded => self.log_box(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CompletionAlgorithm {
    #[default]
    ProjectedNewton,
    /// Cyclic coordinate descent in log space, golden-section search per
    /// coordinate.
    CoordinateDescent,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompletionOptions {
    pub algorithm: CompletionAlgorithm,
    /// Target accuracy of the minimal eigenvalue.
    pub tol: f64,
    /// Newton iterations or coordinate sweeps.
    pub max_iterations: usize,
}

impl Default for CompletionOptions {
    fn default() -> Self {
        CompletionOptions {
            algorithm: CompletionAlgorithm::ProjectedNewton,
            tol: 1e-12,
            max_iterations: 200,
        }
    }
}

impl CompletionOptions {
    /// Settings of the reference coordinate descent solver: sweeps stop once
    /// they improve the eigenvalue by less than `1e-10`, at most 500 sweeps.
    pub fn coordinate_descent() -> Self {
        CompletionOptions {
            algorithm: CompletionAlgorithm::CoordinateDescent,
            tol: 1e-10,
            max_iterations: 500,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompletionResult {
    pub completed: SquareMatrix,
    pub lambda_star: f64,
    /// Optimal values of the missing upper-triangle entries, row-major order.
    pub x_star: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

/// Minimises `λ_max(A(x))` over the missing entries with the default solver.
///
/// Errors with [`Error::Disconnected`] when the known comparisons do not form a
/// connected graph.
pub fn minimize_lambda_max(pcm: &IncompletePcm, method: CompletionMethod, tol: f64) -> Result<CompletionResult> {
    let options = CompletionOptions {
        tol,
        ..CompletionOptions::default()
    };
    Completer::new(pcm.n()).complete(pcm, method, &options)
}

/// Reusable solver state. Keeps scratch buffers between calls, which matters
/// when completing many matrices of the same size.
pub struct Completer {
    n: usize,
    perron: Perron,
    a: Vec<f64>,
    at: Vec<f64>,
    trial: Vec<f64>,
    w: Vec<f64>,
    w_trial: Vec<f64>,
    v: Vec<f64>,
    pairs: Vec<(usize, usize)>,
    lu: Lu,
    inv: Vec<f64>,
    unit: Vec<f64>,
    col: Vec<f64>,
}

struct Outcome {
    lambda: f64,
    t: Vec<f64>,
    iterations: usize,
    converged: bool,
}

impl Completer {
    pub fn new(n: usize) -> Self {
        Completer {
            n,
            perron: Perron::new(n),
            a: vec![0.0; n * n],
            at: vec![0.0; n * n],
            trial: vec![0.0; n * n],
            w: vec![0.0; n],
            w_trial: vec![0.0; n],
            v: vec![0.0; n],
            pairs: Vec::new(),
            lu: Lu::with_size(n),
            inv: vec![0.0; n * n],
            unit: vec![0.0; n],
            col: vec![0.0; n],
        }
    }

    /// Full completion result.
    pub fn complete(
        &mut self,
        pcm: &IncompletePcm,
        method: CompletionMethod,
        options: &CompletionOptions,
    ) -> Result<CompletionResult> {
        let outcome = self.run(pcm, method, options, true)?;
        let x_star: Vec<f64> = outcome.t.iter().map(|&t| libm::exp(t)).collect();
        Ok(CompletionResult {
            completed: pcm.fill(&x_star),
            lambda_star: outcome.lambda,
            x_star,
            iterations: outcome.iterations,
            converged: outcome.converged,
        })
    }

    /// Minimal eigenvalue only; errors if the solver did not converge.
    pub fn lambda_star(
        &mut self,
        pcm: &IncompletePcm,
        method: CompletionMethod,
        options: &CompletionOptions,
    ) -> Result<f64> {
        self.checked_lambda(pcm, method, options, true)
    }

    /// As [`Completer::lambda_star`] for callers that already know the graph
    /// of `pcm` is connected.
    pub(crate) fn lambda_star_connected(
        &mut self,
        pcm: &IncompletePcm,
        method: CompletionMethod,
        options: &CompletionOptions,
    ) -> Result<f64> {
        self.checked_lambda(pcm, method, options, false)
    }

    fn checked_lambda(
        &mut self,
        pcm: &IncompletePcm,
        method: CompletionMethod,
        options: &CompletionOptions,
        check: bool,
    ) -> Result<f64> {
        let outcome = self.run(pcm, method, options, check)?;
        if !outcome.converged {
            return Err(Error::CompletionNoConvergence {
                iterations: outcome.iterations,
            });
        }
        Ok(outcome.lambda)
    }

    fn run(
        &mut self,
        pcm: &IncompletePcm,
        method: CompletionMethod,
        options: &CompletionOptions,
        check_connected: bool,
    ) -> Result<Outcome> {
        if pcm.n() != self.n {
            *self = Completer::new(pcm.n());
        }
        if !(options.tol > 0.0) {
            return Err(Error::InvalidTolerance(options.tol));
        }
        if check_connected && !pcm.representing_graph().is_connected() {
            return Err(Error::Disconnected);
        }
        let n = self.n;
        self.pairs.clear();
        self.pairs.extend(pcm.missing_pairs());
        for i in 0..n {
            for j in 0..n {
                self.a[i * n + j] = pcm.get(i, j).unwrap_or(1.0);
            }
        }
        self.w.fill(1.0 / n as f64);
        let lambda = self.perron.solve(&self.a, &mut self.w)?;
        if self.pairs.is_empty() {
            return Ok(Outcome {
                lambda,
                t: Vec::new(),
                iterations: 0,
                converged: true,
            });
        }
        match options.algorithm {
            CompletionAlgorithm::ProjectedNewton => self.newton(method, options, lambda),
            CompletionAlgorithm::CoordinateDescent => self.coordinate_descent(method, options, lambda),
        }
    }

    /// Evaluates the Perron root with variables `t` into the trial buffers.
    fn trial_lambda(&mut self, t: &[f64]) -> Result<f64> {
        self.trial.copy_from_slice(&self.a);
        set_vars(&mut self.trial, self.n, &self.pairs, t);
        self.w_trial.copy_from_slice(&self.w);
        self.perron.solve(&self.trial, &mut self.w_trial)
    }

    fn accept_trial(&mut self) {
        core::mem::swap(&mut self.a, &mut self.trial);
        core::mem::swap(&mut self.w, &mut self.w_trial);
    }

    fn newton(&mut self, method: CompletionMethod, options: &CompletionOptions, mut lambda: f64) -> Result<Outcome> {
        const ARMIJO: f64 = 1e-4;
        let n = self.n;
        let m = self.pairs.len();
        let (lo, hi) = method.log_box();
        let mut t = vec![0.0; m];
        let mut g = vec![0.0; m];
        let mut h = vec![0.0; m * m];
        let mut d = vec![0.0; m];
        let mut t_new = vec![0.0; m];
        let mut free = vec![true; m];
        self.v.fill(1.0 / n as f64);

        for iteration in 1..=options.max_iterations {
            self.left_vector()?;
            self.gradient(&mut g);
            let stationarity = t
                .iter()
                .zip(&g)
                .map(|(&tk, &gk)| (tk - (tk - gk).clamp(lo, hi)).abs())
                .fold(0.0, f64::max);
            if stationarity <= 1e-15 {
                return Ok(Outcome { lambda, t, iterations: iteration, converged: true });
            }
            self.hessian(lambda, &mut h)?;

            let eps = stationarity.min(1e-3);
            for k in 0..m {
                free[k] = !((t[k] <= lo + eps && g[k] > 0.0) || (t[k] >= hi - eps && g[k] < 0.0));
            }
            let free_idx: Vec<usize> = (0..m).filter(|&k| free[k]).collect();
            let mf = free_idx.len();
            let mut decrement = 0.0;
            if mf > 0 {
                let mut hf = vec![0.0; mf * mf];
                for (a, &ka) in free_idx.iter().enumerate() {
                    for (b, &kb) in free_idx.iter().enumerate() {
                        hf[a * mf + b] = h[ka * m + kb];
                    }
                }
                let rhs: Vec<f64> = free_idx.iter().map(|&k| -g[k]).collect();
                let step = solve_regularised(&mut hf, mf, &rhs);
                for (a, &k) in free_idx.iter().enumerate() {
                    d[k] = step[a];
                    decrement -= g[k] * step[a];
                }
            }
            let mut bound_gain = 0.0;
            for k in 0..m {
                if !free[k] {
                    d[k] = -g[k] / h[k * m + k].max(1e-12);
                    let target = (t[k] + d[k]).clamp(lo, hi);
                    bound_gain += g[k] * (t[k] - target);
                }
            }
            if decrement / 2.0 + bound_gain <= options.tol {
                return Ok(Outcome { lambda, t, iterations: iteration, converged: true });
            }

            let mut alpha = 1.0;
            let mut accepted = false;
            for _ in 0..60 {
                for k in 0..m {
                    t_new[k] = (t[k] + alpha * d[k]).clamp(lo, hi);
                }
                let lambda_new = self.trial_lambda(&t_new)?;
                let mut predicted = 0.0;
                for k in 0..m {
                    if free[k] {
                        predicted += alpha * (-g[k] * d[k]);
                    } else {
                        predicted += g[k] * (t[k] - t_new[k]);
                    }
                }
                if lambda_new <= lambda - ARMIJO * predicted {
                    self.accept_trial();
                    t.copy_from_slice(&t_new);
                    lambda = lambda_new;
                    accepted = true;
                    break;
                }
                alpha *= 0.5;
            }
            if !accepted {
                // No representable decrease left: the iterate is as good as the
                // arithmetic allows.
                let converged = decrement / 2.0 + bound_gain <= 1e-9 * lambda.max(1.0);
                return Ok(Outcome { lambda, t, iterations: iteration, converged });
            }
        }
        Ok(Outcome {
            lambda,
            t,
            iterations: options.max_iterations,
            converged: false,
        })
    }

    /// Left Perron vector of the current matrix, scaled so that `v·w = 1`.
    fn left_vector(&mut self) -> Result<()> {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                self.at[j * n + i] = self.a[i * n + j];
            }
        }
        self.perron.solve(&self.at, &mut self.v)?;
        let vw: f64 = self.v.iter().zip(&self.w).map(|(a, b)| a * b).sum();
        for x in self.v.iter_mut() {
            *x /= vw;
        }
        Ok(())
    }

    /// `∂λ/∂t_k = v_i a_ij w_j - v_j a_ji w_i` for pair `k = (i, j)`.
    fn gradient(&self, g: &mut [f64]) {
        let n = self.n;
        let (a, v, w) = (&self.a, &self.v, &self.w);
        for (gk, &(i, j)) in g.iter_mut().zip(&self.pairs) {
            *gk = v[i] * a[i * n + j] * w[j] - v[j] * a[j * n + i] * w[i];
        }
    }

    /// Exact Hessian of the Perron root in `t`:
    /// `H_kl = δ_kl v^T A_kk w + v^T A_k G A_l w + v^T A_l G A_k w`, with `G` the
    /// group inverse of `λI - A`, computed as `(λI - A + w v^T)^{-1} - w v^T`.
    fn hessian(&mut self, lambda: f64, h: &mut [f64]) -> Result<()> {
        let n = self.n;
        let m = self.pairs.len();
        for i in 0..n {
            for j in 0..n {
                let mut x = -self.a[i * n + j] + self.w[i] * self.v[j];
                if i == j {
                    x += lambda;
                }
                self.at[i * n + j] = x;
            }
        }
        if !self.lu.factor(&self.at) {
            return Err(Error::NoConvergence { iterations: 0 });
        }
        for c in 0..n {
            self.unit.fill(0.0);
            self.unit[c] = 1.0;
            self.lu.solve(&self.unit, &mut self.col);
            for r in 0..n {
                self.inv[r * n + c] = self.col[r] - self.w[r] * self.v[c];
            }
        }
        let (a, v, w, gi) = (&self.a, &self.v, &self.w, &self.inv);
        // Row vector v^T A_k and column vector A_k w, two non-zeros each.
        let terms: Vec<[(usize, f64); 2]> = self
            .pairs
            .iter()
            .map(|&(i, j)| [(j, v[i] * a[i * n + j]), (i, -v[j] * a[j * n + i])])
            .collect();
        let cols: Vec<[(usize, f64); 2]> = self
            .pairs
            .iter()
            .map(|&(i, j)| [(i, a[i * n + j] * w[j]), (j, -a[j * n + i] * w[i])])
            .collect();
        let cross = |k: usize, l: usize| -> f64 {
            let mut s = 0.0;
            for &(p, sv) in &terms[k] {
                for &(q, uv) in &cols[l] {
                    s += sv * gi[p * n + q] * uv;
                }
            }
            s
        };
        for k in 0..m {
            for l in k..m {
                let mut value = cross(k, l) + cross(l, k);
                if k == l {
                    let (i, j) = self.pairs[k];
                    value += v[i] * a[i * n + j] * w[j] + v[j] * a[j * n + i] * w[i];
                }
                h[k * m + l] = value;
                h[l * m + k] = value;
            }
        }
        Ok(())
    }

    fn coordinate_descent(
        &mut self,
        method: CompletionMethod,
        options: &CompletionOptions,
        mut lambda: f64,
    ) -> Result<Outcome> {
        let m = self.pairs.len();
        let (lo, hi) = method.log_box();
        let start = CompletionMethod::SaatyBounded.log_box();
        let mut t = vec![0.0; m];
        for sweep in 1..=options.max_iterations {
            let before = lambda;
            for k in 0..m {
                let (mut a, mut b) = (start.0.max(lo), start.1.min(hi));
                let (best_t, best_lambda) = loop {
                    let (tk, lk) = self.golden_section(&mut t, k, a, b)?;
                    let width = b - a;
                    let mut expanded = false;
                    if tk - a <= 1e-6 && a > lo {
                        a = (a - width).max(lo);
                        expanded = true;
                    }
                    if b - tk <= 1e-6 && b < hi {
                        b = (b + width).min(hi);
                        expanded = true;
                    }
                    if !expanded {
                        break (tk, lk);
                    }
                };
                if best_lambda <= lambda {
                    t[k] = best_t;
                    self.trial_lambda(&t)?;
                    self.accept_trial();
                    lambda = best_lambda;
                }
            }
            if before - lambda < options.tol {
                return Ok(Outcome { lambda, t, iterations: sweep, converged: true });
            }
        }
        Ok(Outcome {
            lambda,
            t,
            iterations: options.max_iterations,
            converged: false,
        })
    }

    /// Golden-section search for coordinate `k` on `[a, b]`, to `1e-12` in `t`.
    fn golden_section(&mut self, t: &mut [f64], k: usize, mut a: f64, mut b: f64) -> Result<(f64, f64)> {
        const INV_PHI: f64 = 0.618_033_988_749_894_9;
        let saved = t[k];
        let eval = |s: f64, this: &mut Self, t: &mut [f64]| -> Result<f64> {
            t[k] = s;
            this.trial_lambda(t)
        };
        let mut c = b - INV_PHI * (b - a);
        let mut d = a + INV_PHI * (b - a);
        let mut fc = eval(c, self, t)?;
        let mut fd = eval(d, self, t)?;
        while b - a > 1e-12 {
            if fc <= fd {
                b = d;
                d = c;
                fd = fc;
                c = b - INV_PHI * (b - a);
                fc = eval(c, self, t)?;
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + INV_PHI * (b - a);
                fd = eval(d, self, t)?;
            }
        }
        // Endpoints are candidates too: the minimum may sit on the bound.
        let mut best = if fc <= fd { (c, fc) } else { (d, fd) };
        for end in [a, b] {
            let fe = eval(end, self, t)?;
            if fe < best.1 {
                best = (end, fe);
            }
        }
        t[k] = saved;
        Ok(best)
    }
}

fn set_vars(a: &mut [f64], n: usize, pairs: &[(usize, usize)], t: &[f64]) {
    for (&(i, j), &tk) in pairs.iter().zip(t) {
        let x = libm::exp(tk);
        a[i * n + j] = x;
        a[j * n + i] = 1.0 / x;
    }
}

/// Solves `H d = rhs`, adding a growing multiple of the identity until the
/// Cholesky factorisation succeeds.
fn solve_regularised(h: &mut [f64], m: usize, rhs: &[f64]) -> Vec<f64> {
    if let Some(d) = cholesky_solve(h, m, rhs) {
        return d;
    }
    let scale = (0..m).map(|k| h[k * m + k].abs()).fold(1e-12, f64::max);
    let mut mu = 1e-10 * scale;
    loop {
        for k in 0..m {
            h[k * m + k] += mu;
        }
        if let Some(d) = cholesky_solve(h, m, rhs) {
            return d;
        }
        mu *= 10.0;
    }
}

const GRID_EVAL_LIMIT: u64 = 100_000_000;

/// Minimum of `λ_max` over a log-uniform grid with `grid_points` values per
/// missing entry. The box is `[1/9, 9]` for Method 2 and `[1e-4, 1e4]` as the
/// surrogate for Method 1. At most 3 missing entries.
///
/// Eigenvalues come from [`dominant_eigenvalue`], not from the optimiser's
/// solver, so this is an independent check on [`minimize_lambda_max`].
pub fn brute_force_lambda(pcm: &IncompletePcm, method: CompletionMethod, grid_points: usize) -> Result<f64> {
    let m = pcm.missing_count();
    let total = (grid_points as u64).checked_pow(m as u32);
    if m > 3 || grid_points < 2 || total.is_none_or(|t| t > GRID_EVAL_LIMIT) {
        return Err(Error::GridTooLarge { variables: m, points: grid_points });
    }
    let (lo, hi) = method.grid_log_box();
    let boxes = vec![(lo, hi); m];
    Ok(grid_minimum(pcm, &boxes, grid_points)?.0)
}

/// Grid search with successive zooming: after each level the box shrinks to
/// three grid spacings around the best point. Every reported value is a grid
/// evaluation, so the result never undercuts the true minimum.
pub fn refined_grid_lambda(
    pcm: &IncompletePcm,
    method: CompletionMethod,
    grid_points: usize,
    levels: usize,
) -> Result<f64> {
    let m = pcm.missing_count();
    let total = (grid_points as u64).checked_pow(m as u32);
    if m > 3 || grid_points < 3 || total.is_none_or(|t| t > GRID_EVAL_LIMIT) {
        return Err(Error::GridTooLarge { variables: m, points: grid_points });
    }
    let (lo, hi) = method.grid_log_box();
    let mut boxes = vec![(lo, hi); m];
    let mut best = f64::INFINITY;
    for _ in 0..levels.max(1) {
        let (value, at) = grid_minimum(pcm, &boxes, grid_points)?;
        best = best.min(value);
        for (b, &centre) in boxes.iter_mut().zip(&at) {
            let spacing = (b.1 - b.0) / (grid_points - 1) as f64;
            *b = ((centre - 3.0 * spacing).max(lo), (centre + 3.0 * spacing).min(hi));
        }
    }
    Ok(best)
}

/// `max_k min_i (A v_k)_i / (v_k)_i` over power iterates `v_k` from the ones
/// vector. Never exceeds the Perron root of a positive matrix.
fn collatz_lower_bound(a: &SquareMatrix, steps: usize) -> f64 {
    let n = a.n();
    let mut v = vec![1.0; n];
    let mut w = vec![0.0; n];
    let mut bound: f64 = 0.0;
    for _ in 0..steps {
        let mut low = f64::INFINITY;
        for (i, wi) in w.iter_mut().enumerate() {
            *wi = a.row(i).iter().zip(&v).map(|(x, y)| x * y).sum();
            low = low.min(*wi / v[i]);
        }
        bound = bound.max(low);
        let norm: f64 = w.iter().sum();
        for (vi, wi) in v.iter_mut().zip(&w) {
            *vi = wi / norm;
        }
    }
    bound
}

fn grid_minimum(pcm: &IncompletePcm, boxes: &[(f64, f64)], points: usize) -> Result<(f64, Vec<f64>)> {
    let m = boxes.len();
    let mut index = vec![0usize; m];
    let mut t = vec![0.0; m];
    // The box centre seeds the incumbent (it is a grid point when `points` is odd).
    let centre: Vec<f64> = boxes.iter().map(|&(a, b)| 0.5 * (a + b)).collect();
    let x: Vec<f64> = centre.iter().map(|&v| libm::exp(v)).collect();
    let mut best = (dominant_eigenvalue(&pcm.fill(&x), DEFAULT_TOL, DEFAULT_MAX_ITER)?.lambda_max, centre);
    loop {
        for k in 0..m {
            let (a, b) = boxes[k];
            t[k] = a + (b - a) * index[k] as f64 / (points - 1) as f64;
        }
        let x: Vec<f64> = t.iter().map(|&v| libm::exp(v)).collect();
        let a = pcm.fill(&x);
        // Far corners of a wide box can stall power iteration; those points
        // are dropped only when a lower bound already rules them out.
        if collatz_lower_bound(&a, 30) <= best.0 {
            let lambda = dominant_eigenvalue(&a, DEFAULT_TOL, DEFAULT_MAX_ITER)?.lambda_max;
            if lambda < best.0 {
                best = (lambda, t.clone());
            }
        }
        // Odometer increment.
        let mut k = 0;
        loop {
            if k == m {
                return Ok(best);
            }
            index[k] += 1;
            if index[k] < points {
                break;
            }
            index[k] = 0;
            k += 1;
        }
    }
}
