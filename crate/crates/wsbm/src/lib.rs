//! Weighted stochastic block models with conjugate variational inference.
//!
//! A weighted stochastic block model (WSBM) assigns each of `n` vertices to
//! one of `k` latent blocks and draws every edge weight from an exponential
//! family distribution whose parameter depends only on the (unordered) pair
//! of endpoint blocks. This crate fits such models to dense weighted graphs
//! by variational coordinate ascent under conjugate priors, selects `k` by
//! comparing evidence lower bounds, and benchmarks recovery against
//! threshold-then-fit and geometric clustering baselines.
//!
//! The main entry points:
//!
//! - [`synth::generate`] draws synthetic graphs with planted blocks.
//! - [`vb::fit`] runs multi-restart variational inference and returns a
//!   [`vb::FitResult`].
//! - [`selection::select_k`] fits a range of block counts and picks the one
//!   with the highest evidence bound.
//! - [`metrics::vi`] scores a recovered partition against the planted one.
//! - [`baselines`] holds the thresholding, k-means, and hierarchical
//!   competitors; [`bench::run_benchmark`] sweeps them across a grid.
//!
//! Runnable walkthroughs live in `examples/`:
//!
//! - `generate_and_fit`: plant five blocks, fit, inspect recovered bundles.
//! - `exp_family_tour`: conjugate updates for all four weight families.
//! - `model_selection`: choose the block count by evidence bounds.
//! - `thresholding_pathology`: how binarizing weights destroys structure.
//! - `partition_metrics`: variation of information on small partitions.
//! - `benchmark_sweep`: a miniature recovery-vs-noise sweep.
//!
//! A thin CLI (`wsbm generate|fit|select|compare|benchmark`) wraps the same
//! operations for shell pipelines; see the README for file formats.

pub mod baselines;
pub mod bench;
pub mod error;
pub mod family;
pub mod graph;
pub mod mat;
pub mod metrics;
pub mod selection;
pub mod special;
pub mod synth;
pub mod vb;

pub use error::{Error, ErrorKind, Result};
pub use family::{Family, MeanParams};
pub use graph::{BlockAssignment, BundleMap, WeightedGraph};
pub use mat::Mat;
pub use vb::{fit, FitConfig, FitResult};
