//! Experiment driver for the direct-product-code artifact: config parsing,
//! sampler and congestion measurements, decode campaigns, reporting, and
//! the concrete outer-decoder geometry on the d = 7 coset complex. The
//! `hdx` binary wraps these in a CLI.

pub mod config;
pub mod congestion;
pub mod experiment;
pub mod outer_kms;
pub mod report;
pub mod sampler;

pub use config::{ChannelSpec, ConfigError, ExperimentConfig, SystemSpec};
pub use congestion::{measure_congestion, CongestionEstimate, HashBadSet};
pub use experiment::{run_and_write, run_experiment, ExperimentError};
pub use outer_kms::KmsOuterLayer;
pub use report::{summarize, ExperimentReport, Summary, TrialRecord};
pub use sampler::{measure_sampler, Bipartite, GapEstimate, SamplerError, SamplerMode};
