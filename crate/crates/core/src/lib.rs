//! Inconsistency thresholds for incomplete pairwise comparison matrices.
//!
//! Saaty's consistency ratio divides the consistency index of a matrix by a
//! *random index*: the mean consistency index of random matrices built from the
//! Saaty scale. For incomplete matrices the random index depends on more than
//! the size and the number of missing entries; it depends on the undirected
//! graph of known comparisons. This crate computes those graph-conditioned
//! random indices:
//!
//! - [`pcm`] and [`scale`]: incomplete pairwise comparison matrices and the
//!   17-value Saaty scale.
//! - [`graph`]: the representing graph of known comparisons, connectivity and
//!   canonical labelling.
//! - [`spectral`]: Perron root, consistency index/ratio, adjacency spectral radius.
//! - [`completion`]: minimisation of the dominant eigenvalue over the missing
//!   entries, with a grid-search oracle.
//! - [`catalog`]: isomorphism classes of connected graphs with a given number
//!   of missing edges, and their occurrence probabilities.
//! - [`randindex`]: exact and Monte Carlo random indices, acceptance ratios.
//! - [`assess`]: one-shot verdict for a single matrix against its threshold.
//!
//! The crate is `no_std` (with `alloc`) when built without the default
//! features. The `parallel` feature fans Monte Carlo work out over rayon;
//! results are bit-identical to serial runs.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod assess;
pub mod catalog;
pub mod completion;
mod error;
pub mod graph;
mod linalg;
pub mod pcm;
pub mod randindex;
pub mod rng;
pub mod scale;
pub mod spectral;
pub mod sum;

pub use assess::{assess, Assessment, ComputedThresholds, ThresholdSource};
pub use catalog::{
    enumerate_missing_edge_graphs, independent_edges_probability, occurrence_probability,
    GraphClass,
};
pub use completion::{
    brute_force_lambda, minimize_lambda_max, refined_grid_lambda, Completer, CompletionAlgorithm,
    CompletionMethod, CompletionOptions, CompletionResult,
};
pub use error::Error;
pub use graph::{canonical_form, CanonicalCode, ComparisonGraph};
pub use pcm::{IncompletePcm, SquareMatrix};
pub use randindex::{
    acceptance_ratio, naive_random_index, random_index, random_index_exact, random_index_montecarlo,
    sample_pcm, Mode, RIRecord, Sampling,
};
pub use scale::SaatyValue;
pub use spectral::{
    consistency_index, consistency_ratio, dominant_eigenvalue, spectral_radius, EigenResult,
    Verdict,
};

/// Saaty's acceptability threshold on the consistency ratio.
pub const ACCEPTABLE_CR: f64 = 0.1;

pub type Result<T, E = Error> = core::result::Result<T, E>;
