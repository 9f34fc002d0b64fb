//! The representing graph of known comparisons and its canonical form.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::pcm::SquareMatrix;
use crate::{Error, Result};

/// Largest vertex count accepted by [`canonical_form`].
pub const MAX_CANONICAL_VERTICES: usize = 10;

/// Undirected simple graph; vertices are the alternatives (0-based), edges the
/// known comparisons.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ComparisonGraph {
    n: usize,
    adjacency: Vec<bool>,
    edges: Vec<(usize, usize)>,
}

impl ComparisonGraph {
    /// Builds a graph from unordered pairs. Loops are ignored and repeated
    /// pairs collapse.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adjacency = vec![false; n * n];
        for (a, b) in edges {
            assert!(a < n && b < n, "edge ({a}, {b}) out of range for {n} vertices");
            if a != b {
                adjacency[a * n + b] = true;
                adjacency[b * n + a] = true;
            }
        }
        let edges = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| adjacency[i * n + j])
            .collect();
        ComparisonGraph { n, adjacency, edges }
    }

    pub fn complete(n: usize) -> Self {
        Self::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
    }

    /// The complete graph minus the given pairs.
    pub fn complete_minus(n: usize, missing: &[(usize, usize)]) -> Self {
        let mut g = Self::complete(n);
        for &(a, b) in missing {
            g.adjacency[a * n + b] = false;
            g.adjacency[b * n + a] = false;
        }
        g.edges.retain(|&(i, j)| g.adjacency[i * n + j]);
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i * self.n + j]
    }

    /// Edges `(i, j)` with `i < j`, in row-major order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of vertex pairs that are not edges.
    pub fn missing_count(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2 - self.edges.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v * self.n..(v + 1) * self.n]
            .iter()
            .filter(|&&b| b)
            .count()
    }

    /// Degrees sorted in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// 0/1 adjacency matrix.
    pub fn adjacency_matrix(&self) -> SquareMatrix {
        SquareMatrix::from_flat(
            self.n,
            self.adjacency.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect(),
        )
    }

    /// Every vertex is reachable from vertex 0.
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for u in 0..self.n {
                if self.has_edge(v, u) && !seen[u] {
                    seen[u] = true;
                    reached += 1;
                    stack.push(u);
                }
            }
        }
        reached == self.n
    }

    /// Connected with exactly `n - 1` edges.
    pub fn is_spanning_tree(&self) -> bool {
        self.edge_count() + 1 == self.n && self.is_connected()
    }

    fn masks(&self) -> Vec<u16> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .filter(|&j| self.has_edge(i, j))
                    .fold(0u16, |m, j| m | (1 << j))
            })
            .collect()
    }
}

/// Canonical code of a graph on at most [`MAX_CANONICAL_VERTICES`] vertices.
///
/// The code is the upper triangle of the lexicographically smallest adjacency
/// matrix over all vertex relabellings, read row by row: pair `(0,1)` is the
/// most significant bit, then `(0,2)`, …, `(0,n-1)`, `(1,2)`, … Two graphs are
/// isomorphic exactly when their codes are equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CanonicalCode {
    n: u8,
    bits: u64,
}

impl CanonicalCode {
    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// Number of bits, `n(n-1)/2`.
    pub fn len(&self) -> usize {
        let n = self.n as usize;
        n * n.saturating_sub(1) / 2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn edge_count(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// The code as a string of `0`/`1`, most significant first.
    pub fn bit_string(&self) -> String {
        (0..self.len())
            .rev()
            .map(|k| if self.bits >> k & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    /// Lower-case hex, zero padded to `ceil(len / 4)` digits.
    pub fn to_hex(&self) -> String {
        let width = self.len().div_ceil(4).max(1);
        alloc::format!("{:0width$x}", self.bits, width = width)
    }

    /// Parses the hex form. The value is checked to be in range but not to
    /// be canonical; see [`canonical_form`].
    pub fn from_hex(n: usize, hex: &str) -> Result<Self> {
        if !(1..=MAX_CANONICAL_VERTICES).contains(&n) {
            return Err(Error::GraphTooLarge(n));
        }
        let bits = u64::from_str_radix(hex, 16).map_err(|_| Error::InvalidCode(hex.into()))?;
        let code = CanonicalCode { n: n as u8, bits };
        if code.len() < 64 && bits >> code.len() != 0 {
            return Err(Error::InvalidCode(hex.into()));
        }
        Ok(code)
    }

    /// The graph labelled as in the code.
    pub fn to_graph(&self) -> ComparisonGraph {
        let n = self.n as usize;
        let mut k = self.len();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                k -= 1;
                if self.bits >> k & 1 == 1 {
                    edges.push((i, j));
                }
            }
        }
        ComparisonGraph::from_edges(n, edges)
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Computes the canonical code of `graph`.
///
/// Search over labellings proceeds position by position. Row `k` of the
/// relabelled matrix only depends on which vertex takes position `k` and on the
/// ordered partition of the vertices still unplaced, so each level keeps the
/// candidates with the smallest row and refines the partition by their
/// neighbourhoods. Only ties are branched on.
pub fn canonical_form(graph: &ComparisonGraph) -> Result<CanonicalCode> {
    let n = graph.n();
    if n == 0 || n > MAX_CANONICAL_VERTICES {
        return Err(Error::GraphTooLarge(n));
    }
    let masks = graph.masks();
    let all: u16 = ((1u32 << n) - 1) as u16;
    let mut search = Search {
        masks: &masks,
        total: n * (n - 1) / 2,
        best: None,
    };
    search.descend(&[all], 0, 0);
    Ok(CanonicalCode {
        n: n as u8,
        bits: search.best.expect("search always reaches a leaf"),
    })
}

struct Search<'a> {
    masks: &'a [u16],
    total: usize,
    best: Option<u64>,
}

impl Search<'_> {
    /// `cells`: ordered partition of unplaced vertices. `prefix` holds the
    /// `len` leading bits fixed so far.
    fn descend(&mut self, cells: &[u16], prefix: u64, len: usize) {
        let Some(&first) = cells.first() else {
            if self.best.is_none_or(|b| prefix < b) {
                self.best = Some(prefix);
            }
            return;
        };
        let mut candidates: Vec<(u64, usize, Vec<u16>)> = Vec::new();
        let mut min_row = u64::MAX;
        let mut rest = first;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let nbrs = self.masks[v];
            let mut row = 0u64;
            let mut row_len = 0usize;
            let mut refined = Vec::with_capacity(cells.len() + 1);
            for (idx, &cell) in cells.iter().enumerate() {
                let cell = if idx == 0 { cell & !(1 << v) } else { cell };
                let off = cell & !nbrs;
                let on = cell & nbrs;
                let zeros = off.count_ones() as usize;
                let ones = on.count_ones() as usize;
                row = (row << (zeros + ones)) | ((1u64 << ones) - 1);
                row_len += zeros + ones;
                if off != 0 {
                    refined.push(off);
                }
                if on != 0 {
                    refined.push(on);
                }
            }
            if row < min_row {
                min_row = row;
                candidates.clear();
            }
            if row == min_row {
                candidates.push((row, row_len, refined));
            }
        }
        for (row, row_len, refined) in candidates {
            let new_len = len + row_len;
            let new_prefix = if row_len == 0 { prefix } else { (prefix << row_len) | row };
            if let Some(best) = self.best {
                let best_prefix = if new_len == 0 { 0 } else { best >> (self.total - new_len) };
                if new_prefix > best_prefix {
                    continue;
                }
            }
            self.descend(&refined, new_prefix, new_len);
        }
    }
}
