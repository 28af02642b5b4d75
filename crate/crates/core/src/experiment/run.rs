use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;

use super::config::ExperimentConfig;
use super::distribution::{gen_distribution, sample_dataset, SamplingMode};
use crate::domain::Dataset;
use crate::error::{Error, Result};
use crate::metrics::RunErrors;
use crate::seed::SeedSpec;

pub const CSV_HEADER: &str = "run_id,protocol,eps,k,n,dist,alpha,sampling,seed,linf,l1,l2sq,wall_ms";

/// One repeat of an experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub run_id: u64,
    pub protocol: String,
    pub eps: f64,
    pub k: usize,
    pub n: usize,
    pub dist: String,
    pub alpha: Option<f64>,
    pub sampling: SamplingMode,
    pub seed: u64,
    pub linf: f64,
    pub l1: f64,
    pub l2sq: f64,
    pub wall_ms: f64,
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl RunRecord {
    pub fn errors(&self) -> RunErrors {
        RunErrors {
            linf: self.linf,
            l1: self.l1,
            l2sq: self.l2sq,
        }
    }

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.run_id,
            csv_field(&self.protocol),
            self.eps,
            self.k,
            self.n,
            csv_field(&self.dist),
            self.alpha.map(|a| a.to_string()).unwrap_or_default(),
            self.sampling,
            self.seed,
            self.linf,
            self.l1,
            self.l2sq,
            self.wall_ms
        )
    }
}

fn abort(config: &ExperimentConfig, err: Error) -> Error {
    let echoed = serde_json::to_string(config).unwrap_or_default();
    match err {
        Error::Config(msg) => Error::Config(format!("{msg} (config: {echoed})")),
        other => Error::Config(format!("{other} (config: {echoed})")),
    }
}

/// Runs every repeat of `config` and returns the records sorted by `run_id`.
///
/// All preconditions are checked before the first repeat starts; any error
/// aborts the whole experiment with the configuration echoed.
pub fn simulate(config: &ExperimentConfig) -> Result<Vec<RunRecord>> {
    simulate_inner(config).map_err(|e| abort(config, e))
}

fn simulate_inner(config: &ExperimentConfig) -> Result<Vec<RunRecord>> {
    config.validate_fields()?;
    let spec = config.protocol_spec()?;
    let dist_spec = config.distribution_spec()?;
    let mode = config.sampling_mode()?;
    let target = gen_distribution(&dist_spec, config.k)?;
    let protocol = spec.build(config.k, config.epsilon, config.split_cap)?;
    let fixed: Option<Dataset> = match mode {
        SamplingMode::Fixed => {
            // fixed mode draws no randomness
            let mut unused = SeedSpec::new(config.master_seed, u64::MAX).stream();
            Some(sample_dataset(&target, config.n, mode, &mut unused)?)
        }
        SamplingMode::Iid => None,
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.effective_parallelism())
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;

    let name = spec.to_string();
    let dist = dist_spec.to_string();
    let run_one = |r: u64| -> Result<RunRecord> {
        let started = Instant::now();
        let mut stream = SeedSpec::new(config.master_seed, r).stream();
        let sampled;
        let data = match &fixed {
            Some(d) => d,
            None => {
                sampled = sample_dataset(&target, config.n, mode, &mut stream)?;
                &sampled
            }
        };
        let estimate = if config.shuffle_messages {
            protocol.estimate_shuffled(data, &mut stream)?
        } else {
            protocol.estimate(data, &mut stream)?
        };
        let truth = data.empirical_frequencies().padded(estimate.len());
        let keep = if config.include_padding {
            estimate.len()
        } else {
            config.k
        };
        let errors = RunErrors::between(&truth.values()[..keep], &estimate.values()[..keep])?;
        Ok(RunRecord {
            run_id: r,
            protocol: name.clone(),
            eps: config.epsilon,
            k: config.k,
            n: config.n,
            dist: dist.clone(),
            alpha: dist_spec.alpha(),
            sampling: mode,
            seed: config.master_seed,
            linf: errors.linf,
            l1: errors.l1,
            l2sq: errors.l2sq,
            wall_ms: if config.record_timing {
                started.elapsed().as_secs_f64() * 1e3
            } else {
                0.0
            },
        })
    };

    let mut records = pool.install(|| {
        (0..config.repeats as u64)
            .into_par_iter()
            .map(run_one)
            .collect::<Result<Vec<_>>>()
    })?;
    records.sort_by_key(|r| r.run_id);
    Ok(records)
}

/// Runs several experiments in order, concatenating their records.
pub fn simulate_all(configs: &[ExperimentConfig]) -> Result<Vec<RunRecord>> {
    let mut all = Vec::new();
    for c in configs {
        all.extend(simulate(c)?);
    }
    Ok(all)
}

/// Header row plus one row per record, `\n` line endings.
pub fn write_csv<W: Write>(records: &[RunRecord], mut out: W) -> Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(out, "{}", r.to_csv_row())?;
    }
    out.flush()?;
    Ok(())
}
