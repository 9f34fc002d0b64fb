//! Incomplete pairwise comparison matrices.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use crate::graph::ComparisonGraph;
use crate::{Error, Result};

/// Dense row-major square matrix of reals.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn filled(n: usize, value: f64) -> Self {
        SquareMatrix {
            n,
            data: vec![value; n * n],
        }
    }

    /// Builds a matrix from rows. Panics if the rows are ragged.
    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n, "matrix rows must all have length {n}");
            data.extend_from_slice(row);
        }
        SquareMatrix { n, data }
    }

    pub fn from_flat(n: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), n * n);
        SquareMatrix { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks(self.n.max(1))
    }
}

impl Index<(usize, usize)> for SquareMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for SquareMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

/// A reciprocal matrix in which some comparisons may be missing.
///
/// The diagonal is always `1`; a known entry `a[i][j]` has its reciprocal at
/// `a[j][i]`, and a missing entry is missing on both sides.
#[derive(Debug, Clone, PartialEq)]
pub struct IncompletePcm {
    n: usize,
    entries: Vec<Option<f64>>,
}

fn check_value(i: usize, j: usize, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositive { i, j, value })
    }
}

impl IncompletePcm {
    /// A matrix with every off-diagonal comparison missing.
    pub fn empty(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSize(n));
        }
        let mut entries = vec![None; n * n];
        for i in 0..n {
            entries[i * n + i] = Some(1.0);
        }
        Ok(IncompletePcm { n, entries })
    }

    /// Builds a matrix from upper-triangle entries `(i, j, value)` with
    /// `i < j`. `None` marks a missing comparison explicitly; pairs that are
    /// not listed are missing as well.
    pub fn new(n: usize, upper: &[(usize, usize, Option<f64>)]) -> Result<Self> {
        let mut pcm = Self::empty(n)?;
        let mut seen = vec![false; n * n];
        for &(i, j, value) in upper {
            if i >= j || j >= n {
                return Err(Error::IndexOutOfRange { i, j, n });
            }
            if core::mem::replace(&mut seen[i * n + j], true) {
                return Err(Error::DuplicatePair { i, j });
            }
            if let Some(v) = value {
                check_value(i, j, v)?;
                pcm.put(i, j, v);
            }
        }
        Ok(pcm)
    }

    /// Wraps a complete matrix; only the upper triangle is read.
    pub fn from_complete(matrix: &SquareMatrix) -> Result<Self> {
        let n = matrix.n();
        let mut upper = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
        for i in 0..n {
            for j in i + 1..n {
                upper.push((i, j, Some(matrix[(i, j)])));
            }
        }
        Self::new(n, &upper)
    }

    fn put(&mut self, i: usize, j: usize, value: f64) {
        let n = self.n;
        self.entries[i * n + j] = Some(value);
        self.entries[j * n + i] = Some(1.0 / value);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        self.entries[i * self.n + j]
    }

    pub fn is_known(&self, i: usize, j: usize) -> bool {
        self.get(i, j).is_some()
    }

    /// Number of missing comparisons above the diagonal.
    pub fn missing_count(&self) -> usize {
        self.missing_pairs().count()
    }

    pub fn known_count(&self) -> usize {
        self.n * (self.n - 1) / 2 - self.missing_count()
    }

    /// Upper-triangle pairs `(i, j)`, `i < j`, in row-major order.
    pub fn upper_pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.n;
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
    }

    /// Missing upper-triangle pairs in row-major order.
    pub fn missing_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.upper_pairs().filter(|&(i, j)| !self.is_known(i, j))
    }

    /// Known upper-triangle comparisons in row-major order.
    pub fn known_entries(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.upper_pairs()
            .filter_map(|(i, j)| self.get(i, j).map(|v| (i, j, v)))
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        if i >= self.n || j >= self.n || i == j {
            Err(Error::IndexOutOfRange { i, j, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Sets `a[i][j] = value` and `a[j][i] = 1 / value`. Either orientation of
    /// the pair is accepted.
    pub fn set_comparison(&mut self, i: usize, j: usize, value: f64) -> Result<()> {
        self.check_pair(i, j)?;
        check_value(i, j, value)?;
        self.put(i, j, value);
        Ok(())
    }

    /// Marks the pair as missing again.
    pub fn clear_comparison(&mut self, i: usize, j: usize) -> Result<()> {
        self.check_pair(i, j)?;
        if !self.is_known(i, j) {
            return Err(Error::AlreadyMissing { i, j });
        }
        let n = self.n;
        self.entries[i * n + j] = None;
        self.entries[j * n + i] = None;
        Ok(())
    }

    /// The complete matrix, if no comparison is missing.
    pub fn to_complete(&self) -> Option<SquareMatrix> {
        let data = self.entries.iter().copied().collect::<Option<Vec<f64>>>()?;
        Some(SquareMatrix::from_flat(self.n, data))
    }

    /// Fills the missing upper-triangle entries with `values` (row-major order
    /// of [`missing_pairs`](Self::missing_pairs)) and their reciprocals below.
    pub fn fill(&self, values: &[f64]) -> SquareMatrix {
        let n = self.n;
        let mut out = SquareMatrix::filled(n, 0.0);
        let mut next = values.iter();
        for i in 0..n {
            out[(i, i)] = 1.0;
            for j in i + 1..n {
                let v = match self.get(i, j) {
                    Some(v) => v,
                    None => *next.next().expect("one value per missing pair"),
                };
                out[(i, j)] = v;
                out[(j, i)] = 1.0 / v;
            }
        }
        out
    }

    /// The undirected graph whose edges are the known comparisons.
    pub fn representing_graph(&self) -> ComparisonGraph {
        ComparisonGraph::from_edges(self.n, self.upper_pairs().filter(|&(i, j)| self.is_known(i, j)))
    }
}
