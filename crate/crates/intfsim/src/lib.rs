//! Link-level Monte Carlo simulator for interference-predictive radio
//! resource allocation under ultra-reliability targets.
//!
//! The interference seen by a short-packet link is modeled as a discrete
//! state space Markov chain: the observed interference range is discretized
//! with risk-sensitive square-root spacing, transition probabilities are
//! estimated online, and the next-slot interference is predicted at a
//! configurable confidence level. The predicted SINR then drives a finite
//! blocklength channel-usage allocation. Two reference predictors frame
//! the comparison: a conventional first-order IIR moving average and a
//! genie with perfect next-slot knowledge, the optimum bound.
//!
//! The crate is organized around:
//!
//! - [`channel`]: Rayleigh-faded interferer population and desired link,
//!   with optional Gauss-Markov time correlation;
//! - [`dtmc`]: state-space discretization, transition-matrix estimation and
//!   update, quantile prediction;
//! - [`baseline`]: IIR and genie reference predictors;
//! - [`fbl`]: finite blocklength capacity/dispersion math, Q-function and
//!   its inverse, blocklength allocation and realized error;
//! - [`engine`]: the per-slot predict → allocate → realize → feedback loop
//!   and metric aggregation;
//! - [`config`] / [`report`]: scenario configuration and CSV/JSON emission.
//!
//! Runs are reproducible: one seed fixes the topology, fading, and every
//! metric bit-exactly. See the `examples/` directory for runnable tours of
//! each capability, and the `intfsim` binary for the batch CLI.

pub mod baseline;
pub mod channel;
pub mod config;
pub mod dtmc;
pub mod engine;
pub mod error;
pub mod fbl;
pub mod report;

pub use config::{parse_config, parse_config_str, PredictorKind, ScenarioConfig};
pub use engine::{
    compare_predictors, run_scenario, run_scenario_observed, sweep_eta, RunMetrics, TargetMetrics,
};
pub use error::{Error, Result};
