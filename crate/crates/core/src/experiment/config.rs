use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::distribution::{DistributionSpec, SamplingMode};
use super::protocol_spec::ProtocolSpec;
use crate::error::{Error, Result};

/// Caps the worker count of every simulation.
pub const THREADS_ENV: &str = "LDP_HIST_THREADS";

/// One experiment. JSON keys are the field names.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub protocol: String,
    pub epsilon: f64,
    pub k: usize,
    pub n: usize,
    #[serde(default = "default_distribution")]
    pub distribution: String,
    /// Defaults to `fixed` for point masses and `iid` otherwise.
    #[serde(default)]
    pub sampling: Option<SamplingMode>,
    #[serde(default = "default_repeats")]
    pub repeats: usize,
    #[serde(default)]
    pub master_seed: u64,
    /// Worker threads; `None` uses all cores.
    #[serde(default)]
    pub parallelism: Option<usize>,
    #[serde(default)]
    pub output: Option<PathBuf>,
    /// Cap `L` on the repetitions of `split(<base>)`.
    #[serde(default)]
    pub split_cap: Option<u32>,
    /// Count padding symbols of projective-geometry response in the errors.
    #[serde(default)]
    pub include_padding: bool,
    /// Shuffle the message list before aggregation.
    #[serde(default)]
    pub shuffle_messages: bool,
    /// Fill `wall_ms`; otherwise it is written as 0 so output stays
    /// byte-for-byte reproducible.
    #[serde(default)]
    pub record_timing: bool,
}

fn default_distribution() -> String {
    "point_mass(0)".into()
}

fn default_repeats() -> usize {
    1
}

impl ExperimentConfig {
    pub fn new(protocol: &str, epsilon: f64, k: usize, n: usize) -> Self {
        Self {
            protocol: protocol.into(),
            epsilon,
            k,
            n,
            distribution: default_distribution(),
            sampling: None,
            repeats: default_repeats(),
            master_seed: 0,
            parallelism: None,
            output: None,
            split_cap: None,
            include_padding: false,
            shuffle_messages: false,
            record_timing: false,
        }
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn protocol_spec(&self) -> Result<ProtocolSpec> {
        self.protocol.parse()
    }

    pub fn distribution_spec(&self) -> Result<DistributionSpec> {
        self.distribution.parse()
    }

    pub fn sampling_mode(&self) -> Result<SamplingMode> {
        Ok(self
            .sampling
            .unwrap_or(self.distribution_spec()?.default_sampling()))
    }

    /// Worker threads after applying `LDP_HIST_THREADS`.
    pub fn effective_parallelism(&self) -> usize {
        let requested = self
            .parallelism
            .filter(|&p| p > 0)
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
        let cap = std::env::var(THREADS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&c| c > 0);
        cap.map_or(requested, |c| requested.min(c))
    }

    /// Cheap checks that do not need to build the protocol.
    pub fn validate_fields(&self) -> Result<()> {
        if self.repeats == 0 {
            return Err(Error::Config("repeats must be >= 1".into()));
        }
        if self.n == 0 {
            return Err(Error::Config("n must be >= 1".into()));
        }
        if self.k < 2 {
            return Err(Error::Config(format!("k = {} < 2", self.k)));
        }
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::Config(format!("epsilon must be > 0, got {}", self.epsilon)));
        }
        self.protocol_spec()?;
        self.distribution_spec()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_defaults() {
        let c = ExperimentConfig::from_json(r#"{"protocol":"rappor","epsilon":5,"k":50,"n":20}"#).unwrap();
        assert_eq!(c.repeats, 1);
        assert_eq!(c.distribution, "point_mass(0)");
        assert_eq!(c.sampling_mode().unwrap(), SamplingMode::Fixed);
        let z = ExperimentConfig {
            distribution: "zipf(1)".into(),
            ..c.clone()
        };
        assert_eq!(z.sampling_mode().unwrap(), SamplingMode::Iid);
        assert!(ExperimentConfig::from_json(r#"{"protocol":"rappor","epsilon":5,"k":50,"n":20,"bogus":1}"#).is_err());
    }

    #[test]
    fn field_validation() {
        let mut c = ExperimentConfig::new("krr", 1.0, 4, 10);
        assert!(c.validate_fields().is_ok());
        c.repeats = 0;
        assert!(c.validate_fields().is_err());
        let c = ExperimentConfig::new("nope", 1.0, 4, 10);
        assert!(c.validate_fields().is_err());
    }
}
