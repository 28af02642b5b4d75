//! Error norms and nearest-rank summaries over repeated runs.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Norm {
    /// `max_i |Δ_i|`
    Linf,
    /// `Σ |Δ_i|`
    L1,
    /// `Σ Δ_i²`
    L2Squared,
}

impl Norm {
    pub const ALL: [Norm; 3] = [Norm::Linf, Norm::L1, Norm::L2Squared];
}

pub fn error(truth: &[f64], estimate: &[f64], norm: Norm) -> Result<f64> {
    if truth.len() != estimate.len() {
        return Err(Error::LengthMismatch {
            expected: truth.len(),
            actual: estimate.len(),
        });
    }
    let diffs = truth.iter().zip(estimate).map(|(a, b)| (a - b).abs());
    Ok(match norm {
        Norm::Linf => diffs.fold(0.0, f64::max),
        Norm::L1 => diffs.sum(),
        Norm::L2Squared => diffs.map(|d| d * d).sum(),
    })
}

/// The three losses of one run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunErrors {
    pub linf: f64,
    pub l1: f64,
    pub l2sq: f64,
}

impl RunErrors {
    pub fn between(truth: &[f64], estimate: &[f64]) -> Result<Self> {
        Ok(Self {
            linf: error(truth, estimate, Norm::Linf)?,
            l1: error(truth, estimate, Norm::L1)?,
            l2sq: error(truth, estimate, Norm::L2Squared)?,
        })
    }

    pub fn get(&self, norm: Norm) -> f64 {
        match norm {
            Norm::Linf => self.linf,
            Norm::L1 => self.l1,
            Norm::L2Squared => self.l2sq,
        }
    }
}

/// Nearest-rank order statistic: the value at 1-based position
/// `⌈(x/100)·R⌉` of the ascending sort, clamped to `[1, R]`.
fn nearest_rank(sorted: &[f64], percent: f64) -> f64 {
    let r = sorted.len();
    let raw = (percent / 100.0 * r as f64 - 1e-9).ceil();
    let idx = (raw.max(1.0) as usize).min(r);
    sorted[idx - 1]
}

fn sorted(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

/// `(x, percentile_x(errors))` for every `x` in `grid`.
pub fn percentile_curve(errors: &[f64], grid: &[f64]) -> Result<Vec<(f64, f64)>> {
    if errors.is_empty() {
        return Err(Error::InvalidParameter("no errors to summarize".into()));
    }
    let s = sorted(errors);
    Ok(grid.iter().map(|&x| (x, nearest_rank(&s, x))).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorSummary {
    runs: Vec<RunErrors>,
}

impl ErrorSummary {
    pub fn new(runs: Vec<RunErrors>) -> Result<Self> {
        if runs.is_empty() {
            return Err(Error::InvalidParameter("no runs to summarize".into()));
        }
        Ok(Self { runs })
    }

    pub fn runs(&self) -> &[RunErrors] {
        &self.runs
    }

    pub fn values(&self, norm: Norm) -> Vec<f64> {
        self.runs.iter().map(|r| r.get(norm)).collect()
    }

    pub fn mean(&self, norm: Norm) -> f64 {
        self.values(norm).iter().sum::<f64>() / self.runs.len() as f64
    }

    pub fn percentile(&self, norm: Norm, percent: f64) -> f64 {
        nearest_rank(&sorted(&self.values(norm)), percent)
    }

    pub fn median(&self, norm: Norm) -> f64 {
        self.percentile(norm, 50.0)
    }

    /// `(25th, 50th, 75th)` percentiles.
    pub fn quartiles(&self, norm: Norm) -> (f64, f64, f64) {
        let s = sorted(&self.values(norm));
        (nearest_rank(&s, 25.0), nearest_rank(&s, 50.0), nearest_rank(&s, 75.0))
    }
}

/// Loss used by [`sampling_error`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SamplingLoss {
    L1,
    L2,
    Linf,
}

impl FromStr for SamplingLoss {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "l1" => Ok(Self::L1),
            "l2" => Ok(Self::L2),
            "linf" => Ok(Self::Linf),
            other => Err(Error::InvalidParameter(format!("unknown loss {other:?}"))),
        }
    }
}

impl fmt::Display for SamplingLoss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::L1 => "l1",
            Self::L2 => "l2",
            Self::Linf => "linf",
        })
    }
}
