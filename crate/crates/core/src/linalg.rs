//! Small dense LU factorisation used by the Perron solver.

use alloc::vec;
use alloc::vec::Vec;

/// In-place LU factorisation with partial pivoting of a row-major `n x n`
/// matrix.
pub(crate) struct Lu {
    n: usize,
    lu: Vec<f64>,
    perm: Vec<usize>,
}

impl Lu {
    pub(crate) fn with_size(n: usize) -> Self {
        Lu {
            n,
            lu: vec![0.0; n * n],
            perm: (0..n).collect(),
        }
    }

    /// Factorises `a`. Returns `false` on an exactly zero or non-finite pivot.
    pub(crate) fn factor(&mut self, a: &[f64]) -> bool {
        let n = self.n;
        self.lu.copy_from_slice(a);
        for (k, p) in self.perm.iter_mut().enumerate() {
            *p = k;
        }
        let lu = &mut self.lu;
        for k in 0..n {
            let mut piv = k;
            let mut best = lu[k * n + k].abs();
            for r in k + 1..n {
                let v = lu[r * n + k].abs();
                if v > best {
                    best = v;
                    piv = r;
                }
            }
            if best == 0.0 || !best.is_finite() {
                return false;
            }
            if piv != k {
                for c in 0..n {
                    lu.swap(k * n + c, piv * n + c);
                }
                self.perm.swap(k, piv);
            }
            let d = lu[k * n + k];
            for r in k + 1..n {
                let f = lu[r * n + k] / d;
                lu[r * n + k] = f;
                if f != 0.0 {
                    for c in k + 1..n {
                        lu[r * n + c] -= f * lu[k * n + c];
                    }
                }
            }
        }
        true
    }

    /// Solves `A x = b`; `x` and `b` may not alias.
    pub(crate) fn solve(&self, b: &[f64], x: &mut [f64]) {
        let n = self.n;
        let lu = &self.lu;
        for i in 0..n {
            let mut s = b[self.perm[i]];
            for j in 0..i {
                s -= lu[i * n + j] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..n {
                s -= lu[i * n + j] * x[j];
            }
            x[i] = s / lu[i * n + i];
        }
    }
}

/// Cholesky solve of a symmetric positive definite `m x m` system. Returns
/// `None` if the matrix is not numerically positive definite.
pub(crate) fn cholesky_solve(h: &[f64], m: usize, rhs: &[f64]) -> Option<Vec<f64>> {
    let mut l = vec![0.0; m * m];
    for i in 0..m {
        for j in 0..=i {
            let mut s = h[i * m + j];
            for k in 0..j {
                s -= l[i * m + k] * l[j * m + k];
            }
            if i == j {
                if s <= 0.0 || !s.is_finite() {
                    return None;
                }
                l[i * m + i] = libm::sqrt(s);
            } else {
                l[i * m + j] = s / l[j * m + j];
            }
        }
    }
    let mut y = vec![0.0; m];
    for i in 0..m {
        let mut s = rhs[i];
        for k in 0..i {
            s -= l[i * m + k] * y[k];
        }
        y[i] = s / l[i * m + i];
    }
    for i in (0..m).rev() {
        let mut s = y[i];
        for k in i + 1..m {
            s -= l[k * m + i] * y[k];
        }
        y[i] = s / l[i * m + i];
    }
    Some(y)
}
