//! CSV exports: graph catalogs, threshold tables and figure data.
//!
//! Floats are written with Rust's shortest round-trip formatting, so files are
//! byte-identical for identical inputs.

use std::io::Write;
use std::ops::RangeInclusive;

use anyhow::{bail, Context};
use pcmri_core::randindex::{random_index, Sampling};
use pcmri_core::{enumerate_missing_edge_graphs, CanonicalCode, CompletionMethod, GraphClass, RIRecord};

pub const CATALOG_HEADER: [&str; 7] = [
    "n",
    "m",
    "graph_id",
    "canonical_code",
    "degree_sequence",
    "spectral_radius",
    "probability",
];

pub const TABLE_HEADER: [&str; 13] = [
    "n",
    "m",
    "graph_id",
    "canonical_code",
    "degree_sequence",
    "spectral_radius",
    "probability",
    "random_index",
    "acceptance_ratio",
    "ci_std",
    "sample_count",
    "mode",
    "seed",
];

/// Parses `"5"` or an inclusive range `"1-5"`. A reversed range is empty.
pub fn parse_range(text: &str) -> anyhow::Result<RangeInclusive<usize>> {
    let text = text.trim();
    let parse = |s: &str| -> anyhow::Result<usize> {
        s.trim().parse().with_context(|| format!("invalid number {s:?} in range {text:?}"))
    };
    match text.split_once('-') {
        Some((a, b)) => Ok(parse(a)?..=parse(b)?),
        None => {
            let v = parse(text)?;
            Ok(v..=v)
        }
    }
}

/// The class of `code` with its catalog data (graph id, labelled counts) when
/// the `(n, m)` family is small enough to enumerate.
pub fn catalog_class(code: CanonicalCode) -> GraphClass {
    let class = GraphClass::from_code(code);
    match enumerate_missing_edge_graphs(class.n, class.m) {
        Ok(family) => family.into_iter().find(|c| c.canonical_code == code).unwrap_or(class),
        Err(_) => class,
    }
}

fn degree_string(class: &GraphClass) -> String {
    class.degree_sequence.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ")
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn check_n(n: usize) -> anyhow::Result<()> {
    if !(2..=9).contains(&n) {
        bail!("n = {n} is outside the supported range 2..=9");
    }
    Ok(())
}

pub fn catalog<W: Write>(out: W, ns: RangeInclusive<usize>, ms: RangeInclusive<usize>) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CATALOG_HEADER)?;
    for n in ns {
        check_n(n)?;
        for m in ms.clone() {
            for class in enumerate_missing_edge_graphs(n, m)? {
                w.write_record([
                    n.to_string(),
                    m.to_string(),
                    opt(class.graph_id),
                    class.canonical_code.to_hex(),
                    degree_string(&class),
                    class.spectral_radius.to_string(),
                    opt(class.exact_probability()),
                ])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

/// Sampling used by the threshold table: full enumeration for `n <= 4`,
/// Monte Carlo otherwise.
pub fn table_sampling(n: usize, samples: u64, seed: u64) -> Sampling {
    if n <= 4 {
        Sampling::Exact
    } else {
        Sampling::MonteCarlo { samples, seed }
    }
}

/// Random-index records for every class of every `(n, m)` in the ranges.
pub fn threshold_records(
    ns: RangeInclusive<usize>,
    ms: RangeInclusive<usize>,
    samples: u64,
    seed: u64,
    method: CompletionMethod,
) -> anyhow::Result<Vec<(GraphClass, RIRecord)>> {
    let mut out = Vec::new();
    for n in ns {
        check_n(n)?;
        for m in ms.clone() {
            for class in enumerate_missing_edge_graphs(n, m)? {
                let record = random_index(&class, table_sampling(n, samples, seed), method)
                    .with_context(|| format!("n = {n}, m = {m}, class {}", class.canonical_code))?;
                out.push((class, record));
            }
        }
    }
    Ok(out)
}

pub fn write_table<W: Write>(out: W, rows: &[(GraphClass, RIRecord)]) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TABLE_HEADER)?;
    for (class, r) in rows {
        w.write_record([
            r.n.to_string(),
            r.m.to_string(),
            opt(r.graph_id),
            r.canonical_code.clone(),
            degree_string(class),
            r.spectral_radius.to_string(),
            opt(r.probability),
            r.random_index.to_string(),
            r.acceptance_ratio.to_string(),
            r.ci_std.to_string(),
            r.sample_count.to_string(),
            r.mode.as_str().to_string(),
            opt(r.seed),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// Spectral radius against random index, `m = 2`, `n = 4..=9`.
    SpectralRadius,
    /// Random index against the share of acceptable matrices, `n = 5, 6`.
    Acceptance,
}

impl Figure {
    /// The `(n, m)` blocks plotted in the figure.
    pub fn blocks(self) -> Vec<(usize, usize)> {
        match self {
            Figure::SpectralRadius => (4..=9).map(|n| (n, 2)).collect(),
            Figure::Acceptance => (2..=5).map(|m| (5, m)).chain((2..=7).map(|m| (6, m))).collect(),
        }
    }
}

pub fn figure<W: Write>(out: W, figure: Figure, samples: u64, seed: u64, method: CompletionMethod) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    match figure {
        Figure::SpectralRadius => {
            w.write_record(["n", "m", "graph_id", "canonical_code", "spectral_radius", "random_index"])?
        }
        Figure::Acceptance => w.write_record([
            "n",
            "m",
            "graph_id",
            "canonical_code",
            "random_index",
            "acceptance_percent",
        ])?,
    }
    for (n, m) in figure.blocks() {
        for (_, r) in threshold_records(n..=n, m..=m, samples, seed, method)? {
            let tail = match figure {
                Figure::SpectralRadius => [r.spectral_radius.to_string(), r.random_index.to_string()],
                Figure::Acceptance => [r.random_index.to_string(), (100.0 * r.acceptance_ratio).to_string()],
            };
            w.write_record([
                r.n.to_string(),
                r.m.to_string(),
                opt(r.graph_id),
                r.canonical_code.clone(),
                tail[0].clone(),
                tail[1].clone(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}
