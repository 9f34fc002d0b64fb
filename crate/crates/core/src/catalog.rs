//! Isomorphism classes of connected comparison graphs with a fixed number of
//! missing edges, and how often each class occurs.

use alloc::vec::Vec;

use crate::graph::{canonical_form, CanonicalCode, ComparisonGraph, MAX_CANONICAL_VERTICES};
use crate::rng::{sample_rng, uniform_below};
use crate::spectral::spectral_radius;
use crate::{Error, Result};

/// Largest number of edge subsets [`enumerate_missing_edge_graphs`] will visit.
pub const ENUMERATION_LIMIT: u64 = 5_000_000;

/// One isomorphism class of connected graphs on `n` vertices with `m` of the
/// `n(n-1)/2` possible edges missing.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphClass {
    pub n: usize,
    pub m: usize,
    /// 1-based position in canonical-code order, when the family was enumerated.
    pub graph_id: Option<usize>,
    pub canonical_code: CanonicalCode,
    pub degree_sequence: Vec<usize>,
    pub spectral_radius: f64,
    /// Number of labelled missing-edge sets that fall into this class.
    pub labeled_count: Option<u64>,
    /// Number of labelled connected graphs in the whole `(n, m)` family.
    pub family_count: Option<u64>,
}

impl GraphClass {
    /// Class of `graph`, without enumeration data.
    pub fn from_graph(graph: &ComparisonGraph) -> Result<Self> {
        let code = canonical_form(graph)?;
        Ok(Self::from_code(code))
    }

    pub fn from_code(code: CanonicalCode) -> Self {
        let graph = code.to_graph();
        GraphClass {
            n: graph.n(),
            m: graph.missing_count(),
            graph_id: None,
            canonical_code: code,
            degree_sequence: graph.degree_sequence(),
            spectral_radius: spectral_radius(&graph),
            labeled_count: None,
            family_count: None,
        }
    }

    /// The fixed labelling used for sampling: the canonical adjacency matrix.
    pub fn representative(&self) -> ComparisonGraph {
        self.canonical_code.to_graph()
    }

    /// Share of labelled connected graphs in this class, if enumerated.
    pub fn exact_probability(&self) -> Option<f64> {
        Some(self.labeled_count? as f64 / self.family_count? as f64)
    }

    /// Whether the missing edges are two disjoint pairs (only meaningful for `m = 2`).
    pub fn has_independent_missing_edges(&self) -> bool {
        let g = self.representative();
        let missing: Vec<(usize, usize)> = (0..self.n)
            .flat_map(|i| (i + 1..self.n).map(move |j| (i, j)))
            .filter(|&(i, j)| !g.has_edge(i, j))
            .collect();
        match missing.as_slice() {
            [(a, b), (c, d)] => a != c && a != d && b != c && b != d,
            _ => false,
        }
    }
}

fn slot_count(n: usize) -> usize {
    n * (n.saturating_sub(1)) / 2
}

fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut r: u64 = 1;
    for i in 0..k {
        r = r.checked_mul(n - i)? / (i + 1);
    }
    Some(r)
}

/// Upper-triangle slots in row-major order.
fn slots(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// Adjacency bitmasks of `K_n` with the slots flagged in `removed` deleted.
fn masks_without(n: usize, slots: &[(usize, usize)], removed: &[usize]) -> [u16; MAX_CANONICAL_VERTICES] {
    let mut masks = [0u16; MAX_CANONICAL_VERTICES];
    let full = (1u16 << n) - 1;
    for (v, mask) in masks.iter_mut().enumerate().take(n) {
        *mask = full & !(1 << v);
    }
    for &s in removed {
        let (i, j) = slots[s];
        masks[i] &= !(1 << j);
        masks[j] &= !(1 << i);
    }
    masks
}

fn masks_connected(n: usize, masks: &[u16]) -> bool {
    let full = (1u16 << n) - 1;
    let mut seen = 1u16;
    let mut frontier = 1u16;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = masks[v] & !seen;
        seen |= new;
        frontier |= new;
    }
    seen == full
}

fn graph_from_masks(n: usize, masks: &[u16]) -> ComparisonGraph {
    ComparisonGraph::from_edges(
        n,
        (0..n).flat_map(|i| (i + 1..n).filter(move |&j| masks[i] >> j & 1 == 1).map(move |j| (i, j))),
    )
}

/// All isomorphism classes of connected graphs on `n` vertices with `m`
/// missing edges, sorted by canonical code; `graph_id` follows that order.
///
/// Every `m`-subset of the `n(n-1)/2` slots is visited, so each class also
/// carries its exact labelled count. Empty if no such connected graph exists.
pub fn enumerate_missing_edge_graphs(n: usize, m: usize) -> Result<Vec<GraphClass>> {
    if n == 0 || n > MAX_CANONICAL_VERTICES {
        return Err(Error::GraphTooLarge(n));
    }
    let slot_list = slots(n);
    let total = slot_list.len();
    if m > total {
        return Ok(Vec::new());
    }
    let size = binomial(total as u64, m as u64).unwrap_or(u64::MAX);
    if size > ENUMERATION_LIMIT {
        return Err(Error::EnumerationTooLarge { size, limit: ENUMERATION_LIMIT });
    }
    let mut found: Vec<(CanonicalCode, u64)> = Vec::new();
    let mut combo: Vec<usize> = (0..m).collect();
    loop {
        let masks = masks_without(n, &slot_list, &combo);
        if masks_connected(n, &masks[..n]) {
            let code = canonical_form(&graph_from_masks(n, &masks))?;
            match found.iter_mut().find(|(c, _)| *c == code) {
                Some((_, count)) => *count += 1,
                None => found.push((code, 1)),
            }
        }
        if !next_combination(&mut combo, total) {
            break;
        }
    }
    found.sort_by_key(|(code, _)| code.bits());
    let family: u64 = found.iter().map(|(_, c)| c).sum();
    Ok(found
        .into_iter()
        .enumerate()
        .map(|(k, (code, count))| GraphClass {
            graph_id: Some(k + 1),
            labeled_count: Some(count),
            family_count: Some(family),
            ..GraphClass::from_code(code)
        })
        .collect())
}

/// Advances a sorted `k`-combination of `0..total` in lexicographic order.
fn next_combination(combo: &mut [usize], total: usize) -> bool {
    let k = combo.len();
    for pos in (0..k).rev() {
        if combo[pos] < total - k + pos {
            combo[pos] += 1;
            for q in pos + 1..k {
                combo[q] = combo[q - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Probability that two uniformly chosen missing slots of an `n × n` matrix
/// are disjoint, given that the remaining graph is connected:
/// `1 - (4n - 8) / (n(n-1) - 2)`, which simplifies to `(n - 3) / (n + 1)`.
/// Evaluated as a single integer ratio, so `n = 4` gives exactly `0.2`.
pub fn independent_edges_probability(n: usize) -> f64 {
    if n < 3 {
        return 0.0;
    }
    (n - 3) as f64 / (n + 1) as f64
}

/// Probability that a uniformly random set of `m` missing slots yields a graph
/// in `class`, conditioned on the graph being connected.
///
/// For `m = 2` the closed form of [`independent_edges_probability`] is used.
/// Otherwise `samples` slot sets are drawn (draw `s` from stream `s` of
/// `seed`) and the class frequency among connected draws is returned.
pub fn occurrence_probability(n: usize, m: usize, class: &GraphClass, samples: u64, seed: u64) -> Result<f64> {
    if n == 0 || n > MAX_CANONICAL_VERTICES {
        return Err(Error::GraphTooLarge(n));
    }
    if class.n != n || class.m != m {
        return Err(Error::NoConnectedGraph { n, m });
    }
    if m == 2 && n >= 4 {
        let p = independent_edges_probability(n);
        return Ok(if class.has_independent_missing_edges() { p } else { 1.0 - p });
    }
    let slot_list = slots(n);
    if m > slot_count(n) {
        return Err(Error::NoConnectedGraph { n, m });
    }
    let draw = |s: u64| -> Result<(u64, u64)> {
        let mut rng = sample_rng(seed, s);
        let mut pool: Vec<usize> = (0..slot_list.len()).collect();
        for k in 0..m {
            let pick = k + uniform_below(&mut rng, (pool.len() - k) as u32) as usize;
            pool.swap(k, pick);
        }
        let masks = masks_without(n, &slot_list, &pool[..m]);
        if !masks_connected(n, &masks[..n]) {
            return Ok((0, 0));
        }
        let graph = graph_from_masks(n, &masks);
        if graph.degree_sequence() != class.degree_sequence {
            return Ok((1, 0));
        }
        Ok((1, u64::from(canonical_form(&graph)? == class.canonical_code)))
    };
    let (connected, hits) = count_draws(samples, &draw)?;
    if connected == 0 {
        return Err(Error::NoConnectedGraph { n, m });
    }
    Ok(hits as f64 / connected as f64)
}

#[cfg(feature = "parallel")]
fn count_draws(samples: u64, draw: &(dyn Fn(u64) -> Result<(u64, u64)> + Sync)) -> Result<(u64, u64)> {
    use rayon::prelude::*;
    (0..samples)
        .into_par_iter()
        .map(draw)
        .try_reduce(|| (0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1)))
}

#[cfg(not(feature = "parallel"))]
fn count_draws(samples: u64, draw: &dyn Fn(u64) -> Result<(u64, u64)>) -> Result<(u64, u64)> {
    (0..samples).try_fold((0, 0), |acc, s| {
        let (c, h) = draw(s)?;
        Ok((acc.0 + c, acc.1 + h))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(n: usize, m: usize) -> usize {
        enumerate_missing_edge_graphs(n, m).unwrap().len()
    }

    #[test]
    fn small_family_counts() {
        assert_eq!(counts(4, 1), 1);
        assert_eq!(counts(4, 2), 2);
        assert_eq!(counts(4, 3), 2); // path and star
        assert_eq!(counts(4, 4), 0);
        assert_eq!(counts(4, 7), 0);
        assert_eq!(counts(3, 0), 1);
    }

    #[test]
    fn ids_and_counts() {
        let classes = enumerate_missing_edge_graphs(4, 2).unwrap();
        assert_eq!(classes[0].graph_id, Some(1));
        assert_eq!(classes[1].graph_id, Some(2));
        assert!(classes[0].canonical_code.bits() < classes[1].canonical_code.bits());
        let total: u64 = classes.iter().map(|c| c.labeled_count.unwrap()).sum();
        assert_eq!(total, 15);
        let independent = classes.iter().find(|c| c.has_independent_missing_edges()).unwrap();
        assert_eq!(independent.labeled_count, Some(3));
        assert_eq!(independent.exact_probability(), Some(0.2));
        assert_eq!(independent_edges_probability(4), 0.2);
        for n in 4..12 {
            let nf = n as f64;
            let literal = 1.0 - (4.0 * nf - 8.0) / (nf * (nf - 1.0) - 2.0);
            assert!((independent_edges_probability(n) - literal).abs() < 1e-15);
        }
        assert_eq!(independent.spectral_radius, 2.0);
    }

    #[test]
    fn closed_form_matches_counts() {
        for n in 4..=7 {
            let classes = enumerate_missing_edge_graphs(n, 2).unwrap();
            assert_eq!(classes.len(), 2);
            for c in &classes {
                let p = occurrence_probability(n, 2, c, 0, 0).unwrap();
                assert!((p - c.exact_probability().unwrap()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn monte_carlo_close_to_exact() {
        let classes = enumerate_missing_edge_graphs(5, 4).unwrap();
        let samples = 20_000;
        for c in &classes {
            let p = occurrence_probability(5, 4, c, samples, 3).unwrap();
            let exact = c.exact_probability().unwrap();
            let se = libm::sqrt(exact * (1.0 - exact) / samples as f64);
            assert!((p - exact).abs() < 4.0 * se + 1e-3, "{p} vs {exact}");
        }
        let again = occurrence_probability(5, 4, &classes[0], samples, 3).unwrap();
        assert_eq!(again, occurrence_probability(5, 4, &classes[0], samples, 3).unwrap());
    }

    #[test]
    fn combinations_cover_all() {
        let mut c = vec![0, 1];
        let mut seen = 1;
        while next_combination(&mut c, 5) {
            seen += 1;
        }
        assert_eq!(seen, 10);
        assert_eq!(binomial(15, 7), Some(6435));
    }
}
