//! Recovery benchmarks: sweep one generator knob, produce testbed
//! datasets, score every method against the planted labels with variation
//! of information, and aggregate into CSV rows.

use crate::baselines::{fit_thresholded_sbm, hierarchical_labels, kmeans_labels, ThresholdPlan};
use crate::error::{Error, Result};
use crate::family::{Family, MeanParams};
use crate::graph::BundleMap;
use crate::metrics::vi;
use crate::synth::{generate, GeneratorSpec};
use crate::vb::{fit, FitConfig};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    K,
    Variance,
    N,
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepAxis::K => "k",
            SweepAxis::Variance => "variance",
            SweepAxis::N => "n",
        })
    }
}

impl FromStr for SweepAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "k" => Ok(SweepAxis::K),
            "variance" => Ok(SweepAxis::Variance),
            "n" => Ok(SweepAxis::N),
            other => Err(Error::InvalidInput(format!(
                "unknown sweep axis '{other}' (expected k, variance, or n)"
            ))),
        }
    }
}

/// Methods scored in a sweep, in CSV row order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Wsbm,
    ThresholdSbmBest,
    ThresholdSbmMean,
    Kmeans,
    Hierarchical,
}

pub const METHODS: [Method; 5] = [
    Method::Wsbm,
    Method::ThresholdSbmBest,
    Method::ThresholdSbmMean,
    Method::Kmeans,
    Method::Hierarchical,
];

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Wsbm => "wsbm",
            Method::ThresholdSbmBest => "threshold_sbm_best",
            Method::ThresholdSbmMean => "threshold_sbm_mean",
            Method::Kmeans => "kmeans",
            Method::Hierarchical => "hierarchical",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkRow {
    pub sweep: SweepAxis,
    pub value: f64,
    pub method: Method,
    pub mean_vi: f64,
    pub stderr_vi: f64,
    pub datasets: usize,
    pub seed0: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkConfig {
    pub sweep: SweepAxis,
    /// Grid of the swept knob; the other two stay at the fields below.
    pub values: Vec<f64>,
    pub datasets: usize,
    pub n: usize,
    pub k: usize,
    pub variance: f64,
    pub restarts: usize,
    pub seed0: u64,
    pub plan: ThresholdPlan,
}

impl BenchmarkConfig {
    /// The stock grid for an axis: k in 2..=8, variance in
    /// {25, 100, 400, 900, 1600, 2500}, or n in {40, 80, 160, 320}, always
    /// with 30 datasets per point and the other knobs at n=160, k=5,
    /// variance=100.
    pub fn for_axis(sweep: SweepAxis) -> Self {
        let values = match sweep {
            SweepAxis::K => (2..=8).map(|k| k as f64).collect(),
            SweepAxis::Variance => vec![25.0, 100.0, 400.0, 900.0, 1600.0, 2500.0],
            SweepAxis::N => vec![40.0, 80.0, 160.0, 320.0],
        };
        BenchmarkConfig {
            sweep,
            values,
            datasets: 30,
            n: 160,
            k: 5,
            variance: 100.0,
            restarts: 10,
            seed0: 0,
            plan: ThresholdPlan::default_quantiles(),
        }
    }

    fn cell(&self, value: f64) -> Result<(usize, usize, f64)> {
        let bad = |what: &str| {
            Err(Error::InvalidInput(format!(
                "{what} sweep value {value} is not usable"
            )))
        };
        match self.sweep {
            SweepAxis::K => {
                if value < 1.0 || value.fract() != 0.0 {
                    return bad("k");
                }
                Ok((self.n, value as usize, self.variance))
            }
            SweepAxis::Variance => {
                if !value.is_finite() || value <= 0.0 {
                    return bad("variance");
                }
                Ok((self.n, self.k, value))
            }
            SweepAxis::N => {
                if value < 2.0 || value.fract() != 0.0 {
                    return bad("n");
                }
                Ok((value as usize, self.k, self.variance))
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.values.is_empty() {
            return Err(Error::InvalidInput("sweep grid is empty".into()));
        }
        if self.datasets == 0 {
            return Err(Error::InvalidInput("datasets must be at least 1".into()));
        }
        if self.restarts == 0 {
            return Err(Error::InvalidInput("restarts must be at least 1".into()));
        }
        self.plan.validate()?;
        for &v in &self.values {
            let (n, k, variance) = self.cell(v)?;
            if k > n {
                return Err(Error::InvalidInput(format!(
                    "sweep value {v} gives k = {k} > n = {n}"
                )));
            }
            if !variance.is_finite() || variance <= 0.0 {
                return Err(Error::InvalidInput(format!(
                    "variance must be positive, got {variance}"
                )));
            }
        }
        Ok(())
    }
}

/// The testbed pattern at arbitrary k: equal blocks, bundle r (0-based)
/// with normal mean 10(r+1) and shared variance.
fn testbed_at(n: usize, k: usize, variance: f64, seed: u64) -> Result<GeneratorSpec> {
    let bundles = BundleMap::new(k)?;
    Ok(GeneratorSpec {
        n,
        k,
        family: Family::Normal,
        proportions: None,
        bundle_params: (0..bundles.count())
            .map(|r| MeanParams::Normal {
                mean: 10.0 * (r + 1) as f64,
                variance: Some(variance),
            })
            .collect(),
        seed,
    })
}

/// Cheap bit mixer so fit seeds are unrelated to generator seeds.
fn mix(seed: u64, salt: u64) -> u64 {
    let mut z = seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn mean_and_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Runs the full sweep. For each grid value it generates `datasets`
/// testbed graphs (generator seeds `seed0 + value_index * datasets + d`),
/// scores all five methods against the planted labels, and returns one
/// row per (value, method) in grid-then-method order. Deterministic.
pub fn run_benchmark(config: &BenchmarkConfig) -> Result<Vec<BenchmarkRow>> {
    config.validate()?;
    let mut rows = Vec::with_capacity(config.values.len() * METHODS.len());
    for (vi_idx, &value) in config.values.iter().enumerate() {
        let (n, k, variance) = config.cell(value)?;
        let mut scores: Vec<Vec<f64>> = vec![Vec::with_capacity(config.datasets); METHODS.len()];
        for d in 0..config.datasets {
            let gen_seed = config
                .seed0
                .wrapping_add((vi_idx * config.datasets + d) as u64);
            let spec = testbed_at(n, k, variance, gen_seed)?;
            let (graph, truth) = generate(&spec)?;

            let mut wsbm_config = FitConfig::new(Family::Normal, k);
            wsbm_config.restarts = config.restarts;
            wsbm_config.seed = mix(gen_seed, 1);
            let wsbm_fit = fit(&graph, &wsbm_config)?;
            scores[0].push(vi(&wsbm_fit.z, &truth)?);

            let mut sbm_config = FitConfig::new(Family::Bernoulli, k);
            sbm_config.restarts = config.restarts;
            sbm_config.seed = mix(gen_seed, 2);
            let report = fit_thresholded_sbm(&graph, &config.plan, k, &sbm_config)?;
            let mut per_threshold = Vec::with_capacity(report.fits.len());
            for f in &report.fits {
                per_threshold.push(vi(&f.z, &truth)?);
            }
            scores[1].push(per_threshold[report.best]);
            scores[2].push(per_threshold.iter().sum::<f64>() / per_threshold.len() as f64);

            let km = kmeans_labels(&graph, k, config.restarts, mix(gen_seed, 3))?;
            scores[3].push(vi(&km, &truth)?);

            let hc = hierarchical_labels(&graph, k)?;
            scores[4].push(vi(&hc, &truth)?);
        }
        for (m, method) in METHODS.iter().enumerate() {
            let (mean_vi, stderr_vi) = mean_and_stderr(&scores[m]);
            rows.push(BenchmarkRow {
                sweep: config.sweep,
                value,
                method: *method,
                mean_vi,
                stderr_vi,
                datasets: config.datasets,
                seed0: config.seed0,
            });
        }
    }
    Ok(rows)
}

/// Serializes rows with '#' comment lines recording the full configuration
/// so a CSV is self-describing.
pub fn rows_to_csv(config: &BenchmarkConfig, rows: &[BenchmarkRow]) -> String {
    let mut out = String::new();
    out.push_str(&format!("# sweep: {}\n", config.sweep));
    let values: Vec<String> = config.values.iter().map(|v| v.to_string()).collect();
    out.push_str(&format!("# values: {}\n", values.join(",")));
    out.push_str(&format!(
        "# datasets: {} n: {} k: {} variance: {} restarts: {} seed0: {}\n",
        config.datasets, config.n, config.k, config.variance, config.restarts, config.seed0
    ));
    let plan = match &config.plan {
        ThresholdPlan::Absolute(ts) => format!(
            "absolute {}",
            ts.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(",")
        ),
        ThresholdPlan::Quantiles(qs) => format!(
            "quantiles {}",
            qs.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(",")
        ),
    };
    out.push_str(&format!("# thresholds: {plan}\n"));
    out.push_str("sweep,value,method,mean_vi,stderr_vi,datasets,seed0\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            row.sweep, row.value, row.method, row.mean_vi, row.stderr_vi, row.datasets, row.seed0
        ));
    }
    out
}
