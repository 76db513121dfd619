//! Command-line front end: generate synthetic graphs, fit block models,
//! select the block count, compare partitions, and run benchmark sweeps.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use wsbm::bench::{rows_to_csv, run_benchmark, BenchmarkConfig, SweepAxis};
use wsbm::baselines::ThresholdPlan;
use wsbm::graph::{load_graph, GraphFormat};
use wsbm::metrics::vi;
use wsbm::selection::select_k;
use wsbm::synth::{generate, GeneratorSpec};
use wsbm::vb::save_fit;
use wsbm::{fit, BlockAssignment, Error, ErrorKind, Family, FitConfig, Result};

#[derive(Parser)]
#[command(name = "wsbm", version, about = "Weighted stochastic block models over dense graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphInput {
    /// Graph file to read.
    graph: PathBuf,
    /// Input layout: "dense" (n x n matrix) or "edge-list" (i j w lines).
    #[arg(long, default_value = "dense")]
    format: String,
    /// Weight assigned to pairs missing from an edge list.
    #[arg(long)]
    fill: Option<f64>,
}

impl GraphInput {
    fn load(&self, family: Family) -> Result<wsbm::WeightedGraph> {
        let format: GraphFormat = self.format.parse()?;
        load_graph(&self.graph, format, Some(family), self.fill)
    }
}

#[derive(Args)]
struct FitFlags {
    /// Weight distribution: bernoulli, poisson, exponential, or normal.
    #[arg(long)]
    family: Family,
    /// Base seed; restart r runs with seed + r.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Independent restarts per fit.
    #[arg(long, default_value_t = 10)]
    restarts: usize,
}

impl FitFlags {
    fn config(&self, k: usize) -> FitConfig {
        let mut config = FitConfig::new(self.family, k);
        config.seed = self.seed;
        config.restarts = self.restarts;
        config
    }
}

#[derive(Subcommand)]
enum Command {
    /// Sample a graph from a generator spec and write it with its labels.
    Generate {
        /// Generator spec JSON (fields n, k, family, bundle_params, seed).
        config: PathBuf,
        /// Output graph path; planted labels go to "<out>.labels".
        out: PathBuf,
    },
    /// Fit a block model and report the evidence bound.
    Fit {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        flags: FitFlags,
        /// Number of blocks.
        #[arg(long)]
        k: usize,
        /// Write the full fit as JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fit every block count in a range and pick the best evidence bound.
    Select {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        flags: FitFlags,
        /// Smallest block count to try.
        #[arg(long)]
        kmin: usize,
        /// Largest block count to try.
        #[arg(long)]
        kmax: usize,
        /// Write the "k,elbo,chosen" table here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the variation of information between two label files.
    Compare {
        /// First labels file (one 1-based block per line).
        a: PathBuf,
        /// Second labels file, same number of lines.
        b: PathBuf,
    },
    /// Sweep one testbed knob and tabulate recovery for every method.
    Benchmark {
        /// Swept knob: k, variance, or n.
        #[arg(long)]
        sweep: SweepAxis,
        /// Datasets per grid value.
        #[arg(long)]
        datasets: Option<usize>,
        /// Base seed for dataset generation.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Grid values, replacing the stock grid for the axis.
        #[arg(long, value_delimiter = ',')]
        values: Option<Vec<f64>>,
        /// Vertices per dataset (fixed axes only).
        #[arg(long)]
        n: Option<usize>,
        /// Blocks per dataset (fixed axes only).
        #[arg(long)]
        k: Option<usize>,
        /// Edge variance (fixed axes only).
        #[arg(long)]
        variance: Option<f64>,
        /// Restarts per fit.
        #[arg(long)]
        restarts: Option<usize>,
        /// Threshold quantiles for the thresholded baseline.
        #[arg(long, value_delimiter = ',')]
        quantiles: Option<Vec<f64>>,
        /// Write the CSV here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn labels_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".labels");
    PathBuf::from(s)
}

fn cmd_generate(config: &Path, out: &Path) -> Result<()> {
    let text = fs::read_to_string(config)?;
    let spec: GeneratorSpec = serde_json::from_str(&text)
        .map_err(|e| Error::InvalidInput(format!("bad generator spec: {e}")))?;
    let (graph, labels) = generate(&spec)?;
    graph.save_dense(out)?;
    labels.save_labels(&labels_path(out))?;
    println!("graph {}", out.display());
    println!("labels {}", labels_path(out).display());
    Ok(())
}

fn cmd_fit(input: &GraphInput, flags: &FitFlags, k: usize, out: Option<&Path>) -> Result<()> {
    let graph = input.load(flags.family)?;
    let result = fit(&graph, &flags.config(k))?;
    if let Some(path) = out {
        save_fit(path, &result)?;
    }
    println!("elbo {}", result.elbo);
    println!("iterations {}", result.iterations);
    Ok(())
}

fn cmd_select(
    input: &GraphInput,
    flags: &FitFlags,
    kmin: usize,
    kmax: usize,
    out: Option<&Path>,
) -> Result<()> {
    let graph = input.load(flags.family)?;
    let report = select_k(&graph, &flags.config(kmin), kmin, kmax)?;
    let csv = report.to_csv();
    match out {
        Some(path) => {
            fs::write(path, &csv)?;
            println!("chosen {}", report.chosen().k);
        }
        None => print!("{csv}"),
    }
    Ok(())
}

fn cmd_compare(a: &Path, b: &Path) -> Result<()> {
    let pa = BlockAssignment::load_labels(a)?;
    let pb = BlockAssignment::load_labels(b)?;
    println!("{}", vi(&pa, &pb)?);
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_benchmark(
    sweep: SweepAxis,
    datasets: Option<usize>,
    seed: u64,
    values: Option<Vec<f64>>,
    n: Option<usize>,
    k: Option<usize>,
    variance: Option<f64>,
    restarts: Option<usize>,
    quantiles: Option<Vec<f64>>,
    out: Option<&Path>,
) -> Result<()> {
    let mut config = BenchmarkConfig::for_axis(sweep);
    config.seed0 = seed;
    if let Some(d) = datasets {
        config.datasets = d;
    }
    if let Some(v) = values {
        config.values = v;
    }
    if let Some(n) = n {
        config.n = n;
    }
    if let Some(k) = k {
        config.k = k;
    }
    if let Some(v) = variance {
        config.variance = v;
    }
    if let Some(r) = restarts {
        config.restarts = r;
    }
    if let Some(q) = quantiles {
        config.plan = ThresholdPlan::Quantiles(q);
    }
    let rows = run_benchmark(&config)?;
    let csv = rows_to_csv(&config, &rows);
    match out {
        Some(path) => fs::write(path, &csv)?,
        None => print!("{csv}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate { config, out } => cmd_generate(&config, &out),
        Command::Fit { input, flags, k, out } => cmd_fit(&input, &flags, k, out.as_deref()),
        Command::Select { input, flags, kmin, kmax, out } => {
            cmd_select(&input, &flags, kmin, kmax, out.as_deref())
        }
        Command::Compare { a, b } => cmd_compare(&a, &b),
        Command::Benchmark {
            sweep,
            datasets,
            seed,
            values,
            n,
            k,
            variance,
            restarts,
            quantiles,
            out,
        } => cmd_benchmark(
            sweep,
            datasets,
            seed,
            values,
            n,
            k,
            variance,
            restarts,
            quantiles,
            out.as_deref(),
        ),
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.kind() {
                ErrorKind::Config => 2,
                ErrorKind::Io => 3,
                ErrorKind::Data => 4,
            })
        }
    }
}
