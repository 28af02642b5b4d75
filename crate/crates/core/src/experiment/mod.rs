//! Monte Carlo harness: dataset generation, repeated runs and CSV output.
//!
//! Repeat `r` of an experiment draws every random bit from the stream
//! `SeedSpec { master_seed, stream_index: r }`, so output is identical for
//! any number of worker threads.

mod config;
mod distribution;
mod protocol_spec;
mod run;

pub use config::{ExperimentConfig, THREADS_ENV};
pub use distribution::{
    fixed_counts, gen_distribution, sample_dataset, zipf, DistributionSpec, SamplingMode,
};
pub use protocol_spec::{BaseKind, ProtocolSpec};
pub use run::{simulate, simulate_all, write_csv, RunRecord, CSV_HEADER};
