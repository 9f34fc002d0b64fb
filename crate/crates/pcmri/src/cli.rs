//! Command-line front end.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use pcmri_core::assess::{ComputedThresholds, DEFAULT_EXACT_LIMIT};
use pcmri_core::{assess, CompletionMethod, GraphClass, RIRecord, ThresholdSource, Verdict};

use crate::matrix_file::read_matrix;
use crate::service::{self, ServiceConfig};
use crate::tables::{self, catalog_class, Figure};

#[derive(Debug, Parser)]
#[command(name = "pcmri", version, about = "Graph-specific random indices for incomplete pairwise comparison matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    /// Missing entries may take any positive value.
    Method1,
    /// Missing entries are bounded by [1/9, 9].
    Method2,
}

impl From<MethodArg> for CompletionMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Method1 => CompletionMethod::Unconstrained,
            MethodArg::Method2 => CompletionMethod::SaatyBounded,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureArg {
    /// Spectral radius and random index of the m = 2 classes, n = 4..9.
    Fig2,
    /// Random index and acceptance percentage of the n = 5, 6 classes.
    Fig6,
}

#[derive(Debug, clap::Args)]
pub struct Simulation {
    /// Monte Carlo sample count per graph class.
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = MethodArg::Method2)]
    pub method: MethodArg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the graph classes with n vertices and m missing edges as CSV.
    Enumerate {
        /// Size, or an inclusive range such as 4-6.
        #[arg(long)]
        n: String,
        /// Missing edges, or an inclusive range.
        #[arg(long)]
        m: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the random index of every class with n vertices and m missing edges.
    Ri {
        #[arg(long)]
        n: String,
        #[arg(long)]
        m: String,
        #[command(flatten)]
        sim: Simulation,
    },
    /// Write a threshold table (or figure data) as CSV.
    Table {
        #[arg(long, required_unless_present = "figure")]
        n: Option<String>,
        #[arg(long, required_unless_present = "figure")]
        m: Option<String>,
        #[command(flatten)]
        sim: Simulation,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum)]
        figure: Option<FigureArg>,
    },
    /// Check a matrix file against its graph-specific threshold.
    ///
    /// Exit status: 0 acceptable (or not evaluable), 2 unacceptable, 1 error.
    Check {
        input: PathBuf,
        #[command(flatten)]
        sim: Simulation,
    },
    /// Run the HTTP monitor service.
    Serve {
        #[arg(long, default_value = "127.0.0.1:8080")]
        listen: String,
        #[arg(long, default_value_t = 20_000, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = MethodArg::Method2)]
        method: MethodArg,
        /// Append-only journal of session changes, replayed on start.
        #[arg(long)]
        journal: Option<PathBuf>,
    },
}

fn output(path: Option<&PathBuf>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Caps the worker pool at `PCM_THREADS` when set.
fn configure_threads() -> anyhow::Result<()> {
    if let Ok(value) = std::env::var("PCM_THREADS") {
        let threads: usize = value
            .trim()
            .parse()
            .ok()
            .filter(|&t| t > 0)
            .with_context(|| format!("PCM_THREADS must be a positive integer, got {value:?}"))?;
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    }
    Ok(())
}

struct CatalogThresholds(ComputedThresholds);

impl ThresholdSource for CatalogThresholds {
    fn threshold(&self, class: &GraphClass) -> pcmri_core::Result<RIRecord> {
        self.0.threshold(&catalog_class(class.canonical_code))
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.6}")).unwrap_or_else(|| "-".to_string())
}

fn check(input: &Path, sim: &Simulation) -> anyhow::Result<Verdict> {
    let pcm = read_matrix(input)?;
    let method: CompletionMethod = sim.method.into();
    let graph = pcm.representing_graph();
    if !graph.is_connected() {
        bail!("no unique completion: the known comparisons do not connect all alternatives");
    }
    let source = ComputedThresholds {
        method,
        samples: sim.samples,
        seed: sim.seed,
        exact_limit: DEFAULT_EXACT_LIMIT,
    };
    let record = if graph.is_spanning_tree() {
        None
    } else {
        Some(CatalogThresholds(source).threshold(&GraphClass::from_graph(&graph)?)?)
    };
    let a = assess(&pcm, method, &Prefetched(record.clone()))?;
    let mut out = io::stdout().lock();
    writeln!(out, "n                {}", a.n)?;
    writeln!(out, "m                {}", a.m)?;
    if let Some(code) = a.canonical_code {
        writeln!(out, "canonical_code   {code}")?;
    }
    if let Some(id) = a.graph_id {
        writeln!(out, "graph_id         {id}")?;
    }
    writeln!(out, "spectral_radius  {:.6}", a.spectral_radius)?;
    writeln!(out, "lambda_star      {}", fmt_opt(a.lambda_star))?;
    writeln!(out, "CI               {}", fmt_opt(a.ci))?;
    match &record {
        Some(r) => writeln!(
            out,
            "RI               {:.6} ({}, {} matrices{})",
            r.random_index,
            r.mode.as_str(),
            r.sample_count,
            r.seed.map(|s| format!(", seed {s}")).unwrap_or_default()
        )?,
        None => writeln!(out, "RI               - (spanning tree: a consistent completion exists)")?,
    }
    writeln!(out, "CR               {}", fmt_opt(a.cr))?;
    writeln!(out, "verdict          {}", a.verdict.as_str())?;
    Ok(a.verdict)
}

struct Prefetched(Option<RIRecord>);

impl ThresholdSource for Prefetched {
    fn threshold(&self, _: &GraphClass) -> pcmri_core::Result<RIRecord> {
        self.0.clone().ok_or(pcmri_core::Error::NoSamples)
    }
}

fn ri(n: &str, m: &str, sim: &Simulation) -> anyhow::Result<()> {
    let rows = tables::threshold_records(
        tables::parse_range(n)?,
        tables::parse_range(m)?,
        sim.samples,
        sim.seed,
        sim.method.into(),
    )?;
    let mut out = io::stdout().lock();
    writeln!(
        out,
        "{:>2} {:>2} {:>3}  {:<10} {:<20} {:>8} {:>8} {:>8} {:>9}  mode",
        "n", "m", "id", "code", "degrees", "rho", "RI", "±3se", "accept%"
    )?;
    for (class, r) in rows {
        let degrees = class.degree_sequence.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",");
        writeln!(
            out,
            "{:>2} {:>2} {:>3}  {:<10} {:<20} {:>8.4} {:>8.4} {:>8.4} {:>8.2}%  {}",
            r.n,
            r.m,
            r.graph_id.map(|g| g.to_string()).unwrap_or_default(),
            r.canonical_code,
            degrees,
            r.spectral_radius,
            r.random_index,
            r.standard_tolerance(),
            100.0 * r.acceptance_ratio,
            r.mode.as_str()
        )?;
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    configure_threads()?;
    match cli.command {
        Command::Enumerate { n, m, output: path } => {
            let mut w = output(path.as_ref())?;
            tables::catalog(&mut w, tables::parse_range(&n)?, tables::parse_range(&m)?)?;
            w.flush()?;
        }
        Command::Ri { n, m, sim } => ri(&n, &m, &sim)?,
        Command::Table { n, m, sim, output: path, figure } => {
            let method = sim.method.into();
            let mut w = output(path.as_ref())?;
            match figure {
                Some(f) => {
                    let f = match f {
                        FigureArg::Fig2 => Figure::SpectralRadius,
                        FigureArg::Fig6 => Figure::Acceptance,
                    };
                    tables::figure(&mut w, f, sim.samples, sim.seed, method)?;
                }
                None => {
                    let (n, m) = (n.expect("required by clap"), m.expect("required by clap"));
                    let rows = tables::threshold_records(
                        tables::parse_range(&n)?,
                        tables::parse_range(&m)?,
                        sim.samples,
                        sim.seed,
                        method,
                    )?;
                    tables::write_table(&mut w, &rows)?;
                }
            }
            w.flush()?;
        }
        Command::Check { input, sim } => {
            return Ok(match check(&input, &sim)? {
                Verdict::Unacceptable => ExitCode::from(2),
                _ => ExitCode::SUCCESS,
            })
        }
        Command::Serve { listen, samples, seed, method, journal } => {
            let config = ServiceConfig {
                samples,
                seed,
                method: method.into(),
                journal,
                ..ServiceConfig::default()
            };
            tokio::runtime::Builder::new_multi_thread()
                .enable_all()
                .build()?
                .block_on(service::serve(&listen, config))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
