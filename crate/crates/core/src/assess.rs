//! Verdict for a single incomplete matrix against its graph-specific random
//! index.

use crate::catalog::GraphClass;
use crate::completion::{Completer, CompletionMethod, CompletionOptions};
use crate::graph::CanonicalCode;
use crate::pcm::IncompletePcm;
use crate::randindex::{exact_size, random_index, RIRecord, Sampling};
use crate::spectral::{consistency_index, spectral_radius, Verdict};
use crate::Result;

/// Supplies the random index of a graph class.
pub trait ThresholdSource {
    fn threshold(&self, class: &GraphClass) -> Result<RIRecord>;
}

/// Computes thresholds on demand: exact enumeration when the class has at most
/// `exact_limit` matrices, Monte Carlo otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComputedThresholds {
    pub method: CompletionMethod,
    pub samples: u64,
    pub seed: u64,
    pub exact_limit: u64,
}

/// Exact mode is used up to `17^5` matrices (all 4×4 classes with missing entries).
pub const DEFAULT_EXACT_LIMIT: u64 = 1_419_857;

impl Default for ComputedThresholds {
    fn default() -> Self {
        ComputedThresholds {
            method: CompletionMethod::SaatyBounded,
            samples: 100_000,
            seed: 42,
            exact_limit: DEFAULT_EXACT_LIMIT,
        }
    }
}

impl ComputedThresholds {
    pub fn sampling_for(&self, class: &GraphClass) -> Sampling {
        match exact_size(class) {
            Some(size) if size <= self.exact_limit => Sampling::Exact,
            _ => Sampling::MonteCarlo {
                samples: self.samples,
                seed: self.seed,
            },
        }
    }
}

impl ThresholdSource for ComputedThresholds {
    fn threshold(&self, class: &GraphClass) -> Result<RIRecord> {
        random_index(class, self.sampling_for(class), self.method)
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Assessment {
    pub n: usize,
    pub m: usize,
    pub connected: bool,
    pub canonical_code: Option<CanonicalCode>,
    pub graph_id: Option<usize>,
    pub spectral_radius: f64,
    pub lambda_star: Option<f64>,
    pub ci: Option<f64>,
    pub ri: Option<f64>,
    pub cr: Option<f64>,
    pub verdict: Verdict,
    /// Optimal values of the missing entries, row-major upper-triangle order.
    pub completion: Option<alloc::vec::Vec<f64>>,
}

/// Completes `pcm`, looks up the random index of its graph and applies the
/// `CR <= 0.1` rule.
///
/// Disconnected graphs have no unique completion and spanning trees always
/// admit a (near-)consistent one; both are reported as not evaluable, with
/// whatever quantities are still defined.
pub fn assess(pcm: &IncompletePcm, method: CompletionMethod, thresholds: &dyn ThresholdSource) -> Result<Assessment> {
    let graph = pcm.representing_graph();
    let mut out = Assessment {
        n: pcm.n(),
        m: pcm.missing_count(),
        connected: graph.is_connected(),
        canonical_code: None,
        graph_id: None,
        spectral_radius: spectral_radius(&graph),
        lambda_star: None,
        ci: None,
        ri: None,
        cr: None,
        verdict: Verdict::NotEvaluable,
        completion: None,
    };
    let class = GraphClass::from_graph(&graph)?;
    out.canonical_code = Some(class.canonical_code);
    if !out.connected {
        return Ok(out);
    }
    let result = Completer::new(pcm.n()).complete(pcm, method, &CompletionOptions::default())?;
    if !result.converged {
        return Err(crate::Error::CompletionNoConvergence {
            iterations: result.iterations,
        });
    }
    let ci = consistency_index(result.lambda_star, pcm.n())?;
    out.lambda_star = Some(result.lambda_star);
    out.ci = Some(ci);
    out.completion = Some(result.x_star);
    if graph.is_spanning_tree() {
        return Ok(out);
    }
    let record = thresholds.threshold(&class)?;
    out.graph_id = record.graph_id;
    out.ri = Some(record.random_index);
    if record.random_index > 0.0 {
        let cr = ci / record.random_index;
        out.cr = Some(cr);
        out.verdict = Verdict::from_ratio(cr);
    }
    Ok(out)
}
