//! Graph-conditioned random indices.
//!
//! For a fixed graph of known comparisons, every known entry is drawn
//! uniformly from the 17 Saaty values, the missing entries are filled by the
//! completion minimising the dominant eigenvalue, and the consistency index of
//! the completed matrix is recorded. The random index is the mean of those
//! consistency indices, either over all `17^edges` assignments or over a
//! seeded Monte Carlo sample.

use alloc::string::String;
use alloc::vec::Vec;

use crate::catalog::GraphClass;
use crate::completion::{Completer, CompletionMethod, CompletionOptions};
use crate::pcm::IncompletePcm;
use crate::rng::{sample_rng, uniform_below};
use crate::scale::SaatyValue;
use crate::spectral::{consistency_index, is_acceptable};
use crate::sum::mean_and_std;
use crate::{Error, Result};
use rand_core::RngCore;

/// Default cap on the number of assignments of [`random_index_exact`].
pub const EXACT_LIMIT: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "SCREAMING_SNAKE_CASE"))]
pub enum Mode {
    Exact,
    MonteCarlo,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "EXACT",
            Mode::MonteCarlo => "MONTE_CARLO",
        }
    }
}

/// Which matrices a random index averages over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sampling {
    /// Every assignment of Saaty values to the known entries.
    Exact,
    MonteCarlo { samples: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RIRecord {
    pub n: usize,
    pub m: usize,
    pub graph_id: Option<usize>,
    /// Hex form of the canonical code.
    pub canonical_code: String,
    pub random_index: f64,
    /// Fraction of generated matrices with `CI / random_index <= 0.1`.
    pub acceptance_ratio: f64,
    pub sample_count: u64,
    pub mode: Mode,
    pub seed: Option<u64>,
    pub spectral_radius: f64,
    pub ci_std: f64,
    /// Occurrence probability of the class, when known exactly.
    pub probability: Option<f64>,
}

impl RIRecord {
    /// Half-width used when comparing this estimate with a reference value:
    /// `3 · ci_std / sqrt(sample_count)`.
    pub fn standard_tolerance(&self) -> f64 {
        3.0 * self.ci_std / libm::sqrt(self.sample_count as f64)
    }
}

/// A matrix with the class's representative graph whose known entries are
/// drawn independently and uniformly from the Saaty scale.
pub fn sample_pcm<R: RngCore + ?Sized>(class: &GraphClass, rng: &mut R) -> IncompletePcm {
    let graph = class.representative();
    let mut pcm = IncompletePcm::empty(class.n).expect("class has at least one vertex");
    for &(i, j) in graph.edges() {
        let v = SaatyValue::ALL[uniform_below(rng, SaatyValue::COUNT as u32) as usize];
        pcm.set_comparison(i, j, v.value()).expect("edge of the representative graph");
    }
    pcm
}

/// Matrix number `index` of the exact enumeration: base-17 digits of `index`
/// over the edges, last edge fastest.
fn exact_pcm(class: &GraphClass, edges: &[(usize, usize)], mut index: u64) -> IncompletePcm {
    let mut pcm = IncompletePcm::empty(class.n).expect("class has at least one vertex");
    for &(i, j) in edges.iter().rev() {
        let digit = (index % SaatyValue::COUNT as u64) as usize;
        index /= SaatyValue::COUNT as u64;
        pcm.set_comparison(i, j, SaatyValue::ALL[digit].value())
            .expect("edge of the representative graph");
    }
    pcm
}

fn edge_count(class: &GraphClass) -> usize {
    class.canonical_code.edge_count()
}

/// Number of matrices behind [`Sampling::Exact`] for `class`, if it fits in a `u64`.
pub fn exact_size(class: &GraphClass) -> Option<u64> {
    (SaatyValue::COUNT as u64).checked_pow(edge_count(class) as u32)
}

/// Consistency index of the optimal completion of every generated matrix, in
/// generation order.
pub fn ci_samples(class: &GraphClass, sampling: Sampling, method: CompletionMethod) -> Result<Vec<f64>> {
    let n = class.n;
    let graph = class.representative();
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    let options = CompletionOptions::default();
    let count = match sampling {
        Sampling::Exact => {
            let size = exact_size(class).unwrap_or(u64::MAX);
            if size > EXACT_LIMIT {
                return Err(Error::EnumerationTooLarge { size, limit: EXACT_LIMIT });
            }
            size
        }
        Sampling::MonteCarlo { samples, .. } => samples,
    };
    if count == 0 {
        return Err(Error::NoSamples);
    }
    let edges = graph.edges().to_vec();
    let one = |completer: &mut Completer, s: u64| -> Result<f64> {
        let pcm = match sampling {
            Sampling::Exact => exact_pcm(class, &edges, s),
            Sampling::MonteCarlo { seed, .. } => sample_pcm(class, &mut sample_rng(seed, s)),
        };
        completer
            .lambda_star_connected(&pcm, method, &options)
            .and_then(|lambda| consistency_index(lambda, n))
            .map_err(|e| Error::Sample { index: s, source: alloc::boxed::Box::new(e) })
    };
    run_samples(n, count, &one)
}

#[cfg(feature = "parallel")]
fn run_samples(n: usize, count: u64, one: &(dyn Fn(&mut Completer, u64) -> Result<f64> + Sync)) -> Result<Vec<f64>> {
    use rayon::prelude::*;
    let results: Vec<Result<f64>> = (0..count)
        .into_par_iter()
        .map_init(|| Completer::new(n), one)
        .collect();
    results.into_iter().collect()
}

#[cfg(not(feature = "parallel"))]
fn run_samples(n: usize, count: u64, one: &dyn Fn(&mut Completer, u64) -> Result<f64>) -> Result<Vec<f64>> {
    let mut completer = Completer::new(n);
    (0..count).map(|s| one(&mut completer, s)).collect()
}

fn fraction_acceptable(cis: &[f64], ri: f64) -> f64 {
    let ok = cis.iter().filter(|&&ci| is_acceptable(ci / ri)).count();
    ok as f64 / cis.len() as f64
}

/// Builds the record for `class` from its CI samples.
pub fn record_from_samples(class: &GraphClass, sampling: Sampling, cis: &[f64]) -> RIRecord {
    let (random_index, ci_std) = mean_and_std(cis);
    let (mode, seed) = match sampling {
        Sampling::Exact => (Mode::Exact, None),
        Sampling::MonteCarlo { seed, .. } => (Mode::MonteCarlo, Some(seed)),
    };
    RIRecord {
        n: class.n,
        m: class.m,
        graph_id: class.graph_id,
        canonical_code: class.canonical_code.to_hex(),
        random_index,
        acceptance_ratio: if random_index > 0.0 { fraction_acceptable(cis, random_index) } else { 1.0 },
        sample_count: cis.len() as u64,
        mode,
        seed,
        spectral_radius: class.spectral_radius,
        ci_std,
        probability: class.exact_probability(),
    }
}

/// Random index over all `17^edges` matrices of the class.
pub fn random_index_exact(class: &GraphClass, method: CompletionMethod) -> Result<RIRecord> {
    let cis = ci_samples(class, Sampling::Exact, method)?;
    Ok(record_from_samples(class, Sampling::Exact, &cis))
}

/// Random index over `samples` seeded random matrices of the class.
pub fn random_index_montecarlo(
    class: &GraphClass,
    method: CompletionMethod,
    samples: u64,
    seed: u64,
) -> Result<RIRecord> {
    let sampling = Sampling::MonteCarlo { samples, seed };
    let cis = ci_samples(class, sampling, method)?;
    Ok(record_from_samples(class, sampling, &cis))
}

/// Exact or Monte Carlo according to `sampling`.
pub fn random_index(class: &GraphClass, sampling: Sampling, method: CompletionMethod) -> Result<RIRecord> {
    let cis = ci_samples(class, sampling, method)?;
    Ok(record_from_samples(class, sampling, &cis))
}

/// Fraction of the class's generated matrices whose consistency ratio against
/// `ri` is at most 0.1. Ties within `1e-9` count as acceptable.
pub fn acceptance_ratio(class: &GraphClass, ri: f64, sampling: Sampling, method: CompletionMethod) -> Result<f64> {
    if !(ri > 0.0) {
        return Err(Error::InvalidRandomIndex(ri));
    }
    let cis = ci_samples(class, sampling, method)?;
    Ok(fraction_acceptable(&cis, ri))
}

/// Number of acceptable matrices among `cis` against `ri`.
pub fn acceptable_count(cis: &[f64], ri: f64) -> u64 {
    cis.iter().filter(|&&ci| is_acceptable(ci / ri)).count() as u64
}

/// Graph-free random index: the mean of per-class random indices weighted by
/// class probability. Takes `(probability, random_index)` pairs.
pub fn naive_random_index(weighted: impl IntoIterator<Item = (f64, f64)>) -> f64 {
    let (mut total, mut weight) = (0.0, 0.0);
    for (p, ri) in weighted {
        total += p * ri;
        weight += p;
    }
    total / weight
}
