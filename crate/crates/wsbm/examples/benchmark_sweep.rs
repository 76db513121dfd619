//! A scaled-down version of the benchmark the `wsbm benchmark` subcommand
//! runs: sweep the edge variance on the five-block testbed and tabulate
//! recovery for the weighted model against all baselines.

use wsbm::bench::{rows_to_csv, run_benchmark, BenchmarkConfig, SweepAxis};

fn main() {
    let mut config = BenchmarkConfig::for_axis(SweepAxis::Variance);
    // The stock grid uses n = 160 and 30 datasets per value; this demo
    // trims both so it finishes in seconds.
    config.n = 60;
    config.datasets = 3;
    config.restarts = 5;
    config.seed0 = 17;

    let rows = run_benchmark(&config).expect("benchmark");
    print!("{}", rows_to_csv(&config, &rows));

    // The same table via the command line:
    //   wsbm benchmark --sweep variance --n 60 --datasets 3 --restarts 5 --seed 17
}
