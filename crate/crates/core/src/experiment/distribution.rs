use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::domain::{Dataset, FrequencyVector};
use crate::error::{Error, Result};

/// Generating distribution for an experiment.
///
/// Parsed from `point_mass(i)`, `uniform`, `zipf(alpha)` or `file(path)`;
/// a file holds nonnegative weights separated by whitespace or commas.
#[derive(Debug, Clone, PartialEq)]
pub enum DistributionSpec {
    PointMass(usize),
    Uniform,
    Zipf(f64),
    File(PathBuf),
}

impl DistributionSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::PointMass(_) => "point_mass",
            Self::Uniform => "uniform",
            Self::Zipf(_) => "zipf",
            Self::File(_) => "file",
        }
    }

    /// Zipf exponent, with `uniform` reported as `0`.
    pub fn alpha(&self) -> Option<f64> {
        match self {
            Self::Zipf(a) => Some(*a),
            Self::Uniform => Some(0.0),
            _ => None,
        }
    }

    pub fn default_sampling(&self) -> SamplingMode {
        match self {
            Self::PointMass(_) => SamplingMode::Fixed,
            _ => SamplingMode::Iid,
        }
    }
}

impl FromStr for DistributionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "uniform" {
            return Ok(Self::Uniform);
        }
        let (head, arg) = s
            .strip_suffix(')')
            .and_then(|rest| rest.split_once('('))
            .ok_or_else(|| Error::Config(format!("cannot parse distribution {s:?}")))?;
        let bad = || Error::Config(format!("bad argument in distribution {s:?}"));
        match head {
            "point_mass" => Ok(Self::PointMass(arg.trim().parse().map_err(|_| bad())?)),
            "zipf" => {
                let alpha: f64 = arg.trim().parse().map_err(|_| bad())?;
                if !(alpha >= 0.0) || !alpha.is_finite() {
                    return Err(Error::Config(format!("zipf exponent must be >= 0, got {alpha}")));
                }
                Ok(Self::Zipf(alpha))
            }
            "file" => Ok(Self::File(PathBuf::from(arg))),
            _ => Err(Error::Config(format!("unknown distribution {head:?}"))),
        }
    }
}

impl fmt::Display for DistributionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::PointMass(i) => write!(f, "point_mass({i})"),
            Self::Uniform => f.write_str("uniform"),
            Self::Zipf(a) => write!(f, "zipf({a})"),
            Self::File(p) => write!(f, "file({})", p.display()),
        }
    }
}

/// Zipf(α) over `0..k`: `p_i ∝ (i+1)^{-α}`, normalized in log space so that
/// huge `α` degenerates to an exact point mass instead of underflowing.
pub fn zipf(alpha: f64, k: usize) -> Result<FrequencyVector> {
    let logs: Vec<f64> = (1..=k).map(|i| -alpha * (i as f64).ln()).collect();
    let max = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lse = max + logs.iter().map(|l| (l - max).exp()).sum::<f64>().ln();
    FrequencyVector::new(logs.into_iter().map(|l| (l - lse).exp()).collect())
}

pub fn gen_distribution(spec: &DistributionSpec, k: usize) -> Result<FrequencyVector> {
    match spec {
        DistributionSpec::PointMass(i) => FrequencyVector::point_mass(k, *i),
        DistributionSpec::Uniform => zipf(0.0, k),
        DistributionSpec::Zipf(alpha) => zipf(*alpha, k),
        DistributionSpec::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
            let weights = text
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<f64>()
                        .ok()
                        .filter(|w| *w >= 0.0 && w.is_finite())
                        .ok_or_else(|| Error::Config(format!("bad weight {t:?} in {}", path.display())))
                })
                .collect::<Result<Vec<f64>>>()?;
            if weights.len() != k {
                return Err(Error::Config(format!(
                    "{} holds {} weights, expected k = {k}",
                    path.display(),
                    weights.len()
                )));
            }
            let total: f64 = weights.iter().sum();
            if total <= 0.0 {
                return Err(Error::Config(format!("{} has zero total weight", path.display())));
            }
            FrequencyVector::new(weights.into_iter().map(|w| w / total).collect())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SamplingMode {
    /// One dataset matching the target frequencies, reused by every repeat.
    Fixed,
    /// A fresh iid sample of `n` symbols per repeat.
    Iid,
}

impl fmt::Display for SamplingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Fixed => "fixed",
            Self::Iid => "iid",
        })
    }
}

impl FromStr for SamplingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fixed" => Ok(Self::Fixed),
            "iid" => Ok(Self::Iid),
            other => Err(Error::Config(format!("unknown sampling mode {other:?}"))),
        }
    }
}

/// Counts `⌊n·p_i⌋` topped up by largest remainder (ties to the lower index).
pub fn fixed_counts(p: &FrequencyVector, n: usize) -> Vec<usize> {
    let scaled: Vec<f64> = p.values().iter().map(|v| v * n as f64).collect();
    let mut counts: Vec<usize> = scaled.iter().map(|v| v.floor() as usize).collect();
    let assigned: usize = counts.iter().sum();
    let mut order: Vec<usize> = (0..counts.len()).collect();
    order.sort_by(|&a, &b| {
        let ra = scaled[a] - scaled[a].floor();
        let rb = scaled[b] - scaled[b].floor();
        rb.total_cmp(&ra).then(a.cmp(&b))
    });
    for &i in order.iter().take(n.saturating_sub(assigned)) {
        counts[i] += 1;
    }
    counts
}

pub fn sample_dataset<R: Rng + ?Sized>(
    p: &FrequencyVector,
    n: usize,
    mode: SamplingMode,
    rng: &mut R,
) -> Result<Dataset> {
    let k = p.len();
    let items = match mode {
        SamplingMode::Fixed => fixed_counts(p, n)
            .into_iter()
            .enumerate()
            .flat_map(|(symbol, c)| std::iter::repeat_n(symbol, c))
            .collect(),
        SamplingMode::Iid => {
            let dist = WeightedIndex::new(p.values())
                .map_err(|e| Error::InvalidParameter(format!("cannot sample from p: {e}")))?;
            (0..n).map(|_| dist.sample(rng)).collect()
        }
    };
    Dataset::new(items, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::SeedSpec;

    #[test]
    fn zipf_shapes() {
        let u = zipf(0.0, 500).unwrap();
        assert!(u.values().iter().all(|v| (v - 1.0 / 500.0).abs() < 1e-15));
        let point = zipf(2000.0, 500).unwrap();
        assert_eq!(point.values()[0], 1.0);
        assert!(point.values()[1..].iter().all(|v| *v == 0.0));
        let z = zipf(1.0, 3).unwrap();
        for (got, want) in z.values().iter().zip([6.0 / 11.0, 3.0 / 11.0, 2.0 / 11.0]) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn parse_specs() {
        assert_eq!("point_mass(3)".parse::<DistributionSpec>().unwrap(), DistributionSpec::PointMass(3));
        assert_eq!("zipf(1.5)".parse::<DistributionSpec>().unwrap(), DistributionSpec::Zipf(1.5));
        assert_eq!("uniform".parse::<DistributionSpec>().unwrap(), DistributionSpec::Uniform);
        assert!("zipf(-1)".parse::<DistributionSpec>().is_err());
        assert!("gauss(1)".parse::<DistributionSpec>().is_err());
        assert!("zipf".parse::<DistributionSpec>().is_err());
        for s in ["point_mass(0)", "uniform", "zipf(2000)"] {
            assert_eq!(s.parse::<DistributionSpec>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn weights_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("w.txt");
        std::fs::write(&path, "1, 1\n2\n").unwrap();
        let p = gen_distribution(&DistributionSpec::File(path.clone()), 3).unwrap();
        assert_eq!(p.values(), &[0.25, 0.25, 0.5]);
        assert!(gen_distribution(&DistributionSpec::File(path), 4).is_err());
    }

    #[test]
    fn fixed_mode_counts() {
        let p = FrequencyVector::new(vec![0.5, 0.3, 0.2]).unwrap();
        assert_eq!(fixed_counts(&p, 10), vec![5, 3, 2]);
        let mut s = SeedSpec::new(0, 0).stream();
        let d = sample_dataset(&FrequencyVector::point_mass(7, 4).unwrap(), 2000, SamplingMode::Fixed, &mut s).unwrap();
        assert!(d.items().iter().all(|&x| x == 4));
        assert_eq!(d.n(), 2000);
        let thirds = FrequencyVector::new(vec![1.0 / 3.0; 3]).unwrap();
        assert_eq!(fixed_counts(&thirds, 4), vec![2, 1, 1]);
    }

    #[test]
    fn iid_binary_counts() {
        let mut s = SeedSpec::new(11, 0).stream();
        let p = FrequencyVector::uniform(2).unwrap();
        let n = 100_000;
        let d = sample_dataset(&p, n, SamplingMode::Iid, &mut s).unwrap();
        let c = d.counts()[0] as f64;
        let sigma = (n as f64 * 0.25).sqrt();
        assert!((c - 50_000.0).abs() < 4.0 * sigma);
    }

    #[test]
    fn iid_uniform_frequencies_within_five_se() {
        let mut s = SeedSpec::new(12, 0).stream();
        let k = 500;
        let d = sample_dataset(&zipf(0.0, k).unwrap(), 1000, SamplingMode::Iid, &mut s).unwrap();
        let q = d.empirical_frequencies();
        let p = 1.0 / k as f64;
        let se = (p * (1.0 - p) / 1000.0).sqrt();
        assert!(q.values().iter().all(|v| (v - p).abs() <= 5.0 * se));
    }
}
