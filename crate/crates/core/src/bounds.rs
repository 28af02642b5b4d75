//! Closed-form bounds on the expected `ℓ∞` error.
//!
//! Curves with explicit constants (`constant_known() == true`) can be checked
//! against simulations. The others are order-of-magnitude shapes with a
//! caller-chosen multiplier (default 1) and are for plotting only.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::metrics::SamplingLoss;

fn check_common(eps: f64, k: usize, n: u64) -> Result<()> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidBudget(format!("epsilon must be > 0, got {eps}")));
    }
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k = {k} < 2")));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    Ok(())
}

/// Sub-Gaussian parameter of a centred Bernoulli(p) (Kearns–Saul):
/// `(2p - 1) / (2 log(p/(1-p)))`, with `1/4` at `p = 1/2` and `0` at the ends.
pub fn kearns_saul_sigma2(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        return 0.0;
    }
    let d = p - 0.5;
    if d.abs() < 1e-6 {
        // series around 1/2: 1/4 - d²/3 + O(d⁴)
        return 0.25 - d * d / 3.0;
    }
    (2.0 * p - 1.0) / (2.0 * (p / (1.0 - p)).ln())
}

/// Classic bound using sub-Gaussian parameter `n/4` for each column sum:
/// `((e^{ε/2}+1)/(e^{ε/2}-1))·sqrt(log k / (2n))`.
pub fn rappor_naive_bound(eps: f64, k: usize, n: u64) -> f64 {
    let h = (eps / 2.0).exp();
    (h + 1.0) / (h - 1.0) * ((k as f64).ln() / (2.0 * n as f64)).sqrt()
}

/// `sqrt(2(e^{ε/2}+1) log k / (n (e^{ε/2}-1) ε))`.
pub fn rappor_subgaussian_bound(eps: f64, k: usize, n: u64) -> f64 {
    let h = (eps / 2.0).exp();
    (2.0 * (h + 1.0) * (k as f64).ln() / (n as f64 * (h - 1.0) * eps)).sqrt()
}

/// Local Glivenko–Cantelli shape for RAPPOR, both terms with multiplier `c`:
/// `sqrt(log(k+1)/n · (h+1)/(h-1)²) + (log n / n)·((h+1)/(h-1))·log(k+1)/log(h+1)`
/// with `h = e^{ε/2}`.
pub fn rappor_local_gc_bound(eps: f64, k: usize, n: u64, c: f64) -> f64 {
    let (first, second) = rappor_local_gc_terms(eps, k, n);
    c * (first + second)
}

pub fn rappor_local_gc_terms(eps: f64, k: usize, n: u64) -> (f64, f64) {
    let h = (eps / 2.0).exp();
    let lk = (k as f64 + 1.0).ln();
    let nf = n as f64;
    let first = (lk / nf * (h + 1.0) / ((h - 1.0) * (h - 1.0))).sqrt();
    let second = nf.ln() / nf * (h + 1.0) / (h - 1.0) * lk / (h + 1.0).ln();
    (first, second)
}

pub fn pgr_upper_terms(eps: f64, k: usize, n: u64) -> (f64, f64) {
    let e = eps.exp();
    let em1 = eps.exp_m1();
    let lk = (k as f64 + 1.0).ln();
    let nf = n as f64;
    let first = (16.0 * (2.0 * e + 1.0).powi(2) * lk / (e * em1 * em1 * nf)).sqrt();
    let second = 4.0 * (2.0 * e + 1.0) * lk * nf.ln() / (em1 * eps * nf);
    (first, second)
}

/// `sqrt(16(2e^ε+1)² log(k+1) / (e^ε (e^ε-1)² n)) + 4(2e^ε+1) log(k+1) log n / ((e^ε-1) ε n)`.
pub fn pgr_upper_bound(eps: f64, k: usize, n: u64) -> f64 {
    let (a, b) = pgr_upper_terms(eps, k, n);
    a + b
}

/// The three explicit minimax lower-bound terms.
pub fn lower_bound_terms(eps: f64, k: usize, n: u64) -> Result<[f64; 3]> {
    if k <= 4 {
        return Err(Error::InvalidParameter(format!(
            "lower bound needs k > 4 (log(k/4) > 0), got k = {k}"
        )));
    }
    let lk = (k as f64 / 4.0).ln();
    let nf = n as f64;
    let c = 1.0 / (8.0 * 2f64.sqrt());
    let em1 = eps.exp_m1();
    Ok([
        c * (lk / (nf * em1 * em1)).sqrt(),
        c * (lk / (nf * eps.exp())).sqrt(),
        lk / (8.0 * nf * eps),
    ])
}

pub fn lower_bound(eps: f64, k: usize, n: u64) -> Result<f64> {
    Ok(lower_bound_terms(eps, k, n)?.into_iter().fold(0.0, f64::max))
}

/// Order of the non-private sampling error: `C·sqrt(k/n)` for `ℓ1`,
/// `C/sqrt(n)` for `ℓ2` and `ℓ∞`.
pub fn sampling_error(loss: SamplingLoss, k: usize, n: u64, c: f64) -> f64 {
    let nf = n as f64;
    match loss {
        SamplingLoss::L1 => c * (k as f64 / nf).sqrt(),
        SamplingLoss::L2 | SamplingLoss::Linf => c / nf.sqrt(),
    }
}

/// Named curve, as exposed by the `bounds` subcommand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundCurve {
    RapporNaive,
    RapporSubgaussian,
    RapporLocalGc { constant: f64 },
    PgrUpper,
    Lower,
    Sampling { loss: SamplingLoss, constant: f64 },
}

impl BoundCurve {
    pub const NAMES: [&'static str; 8] = [
        "rappor-naive",
        "rappor-subgaussian",
        "rappor-local-gc",
        "pgr-upper",
        "lower",
        "sampling-linf",
        "sampling-l1",
        "sampling-l2",
    ];

    pub fn parse(name: &str, constant: f64) -> Result<Self> {
        Ok(match name {
            "rappor-naive" => Self::RapporNaive,
            "rappor-subgaussian" => Self::RapporSubgaussian,
            "rappor-local-gc" => Self::RapporLocalGc { constant },
            "pgr-upper" => Self::PgrUpper,
            "lower" => Self::Lower,
            other => match other.strip_prefix("sampling-") {
                Some(loss) => Self::Sampling {
                    loss: loss.parse()?,
                    constant,
                },
                None => {
                    return Err(Error::InvalidParameter(format!(
                        "unknown curve {other:?}; expected one of {}",
                        Self::NAMES.join(", ")
                    )))
                }
            },
        })
    }

    pub fn name(&self) -> String {
        match self {
            Self::RapporNaive => "rappor-naive".into(),
            Self::RapporSubgaussian => "rappor-subgaussian".into(),
            Self::RapporLocalGc { .. } => "rappor-local-gc".into(),
            Self::PgrUpper => "pgr-upper".into(),
            Self::Lower => "lower".into(),
            Self::Sampling { loss, .. } => format!("sampling-{loss}"),
        }
    }

    pub fn constant_known(&self) -> bool {
        !matches!(self, Self::RapporLocalGc { .. } | Self::Sampling { .. })
    }

    pub fn evaluate(&self, eps: f64, k: usize, n: u64) -> Result<f64> {
        check_common(eps, k, n)?;
        Ok(match *self {
            Self::RapporNaive => rappor_naive_bound(eps, k, n),
            Self::RapporSubgaussian => rappor_subgaussian_bound(eps, k, n),
            Self::RapporLocalGc { constant } => rappor_local_gc_bound(eps, k, n, constant),
            Self::PgrUpper => pgr_upper_bound(eps, k, n),
            Self::Lower => lower_bound(eps, k, n)?,
            Self::Sampling { loss, constant } => sampling_error(loss, k, n, constant),
        })
    }

    /// Whether `(ε, k, n)` lies in the regime the curve was derived for.
    pub fn in_regime(&self, eps: f64, _k: usize, n: u64) -> bool {
        match self {
            Self::RapporLocalGc { .. } => eps >= 1.0 && n >= 21,
            Self::PgrUpper => eps >= 1.0,
            _ => true,
        }
    }
}

impl FromStr for BoundCurve {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s, 1.0)
    }
}

impl fmt::Display for BoundCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// `steps` evenly spaced points from `start` to `end` inclusive.
pub fn linear_grid(start: f64, end: f64, steps: usize) -> Result<Vec<f64>> {
    if !(start.is_finite() && end.is_finite()) || steps == 0 {
        return Err(Error::InvalidParameter(format!(
            "bad grid {start}:{end}:{steps}"
        )));
    }
    if steps == 1 {
        return Ok(vec![start]);
    }
    let step = (end - start) / (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| if i + 1 == steps { end } else { start + step * i as f64 })
        .collect())
}

/// Parses `a:b:steps`.
pub fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let bad = || Error::InvalidParameter(format!("grid must be a:b:steps, got {text:?}"));
    let parts: Vec<&str> = text.split(':').collect();
    let [a, b, steps] = parts[..] else {
        return Err(bad());
    };
    linear_grid(
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
        steps.trim().parse().map_err(|_| bad())?,
    )
}

/// Writes `curve,eps,value,constant_known` rows for every curve and grid point.
pub fn write_curves_csv<W: std::io::Write>(
    curves: &[BoundCurve],
    grid: &[f64],
    k: usize,
    n: u64,
    mut out: W,
) -> Result<()> {
    writeln!(out, "curve,eps,value,constant_known")?;
    for curve in curves {
        for &eps in grid {
            let value = curve.evaluate(eps, k, n)?;
            writeln!(out, "{},{},{},{}", curve.name(), eps, value, curve.constant_known())?;
        }
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(parse_grid("1:2:3").unwrap(), vec![1.0, 1.5, 2.0]);
        assert_eq!(parse_grid("0.5:0.5:1").unwrap(), vec![0.5]);
        assert!(parse_grid("1:2").is_err());
        assert!(parse_grid("1:2:0").is_err());
        let g = linear_grid(0.1, 5.0, 50).unwrap();
        assert_eq!(g.len(), 50);
        assert_eq!(*g.last().unwrap(), 5.0);
    }

    #[test]
    fn csv_rows() {
        let mut buf = Vec::new();
        write_curves_csv(&[BoundCurve::Lower], &[5.0], 5000, 2000, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let row = text.lines().nth(1).unwrap();
        assert!(row.starts_with("lower,5,0.000433"), "{row}");
        assert!(row.ends_with(",true"));
    }

    #[test]
    fn kearns_saul_cases() {
        assert_eq!(kearns_saul_sigma2(0.5), 0.25);
        assert_eq!(kearns_saul_sigma2(0.0), 0.0);
        assert_eq!(kearns_saul_sigma2(1.0), 0.0);
        let eps = 2.0f64;
        let p = 1.0 / ((eps / 2.0).exp() + 1.0);
        let closed = ((eps / 2.0).exp() - 1.0) / (((eps / 2.0).exp() + 1.0) * eps);
        assert!((kearns_saul_sigma2(p) - closed).abs() < 1e-14);
        assert!((kearns_saul_sigma2(p) - 0.2310586).abs() < 1e-7);
    }

    #[test]
    fn kearns_saul_continuous_at_half() {
        for d in [1e-3, 1e-5, 1e-7, 1e-9] {
            assert!((kearns_saul_sigma2(0.5 + d) - 0.25).abs() < 1e-6);
            let a = kearns_saul_sigma2(0.5 - d);
            let b = kearns_saul_sigma2(0.5 + d);
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn lower_bound_domain() {
        assert!(lower_bound(1.0, 4, 100).is_err());
        assert!(lower_bound(1.0, 5, 100).is_ok());
    }

    #[test]
    fn small_epsilon_first_term_dominates() {
        for i in 1..=50 {
            let eps = 0.01 * i as f64;
            let t = lower_bound_terms(eps, 5000, 2000).unwrap();
            assert!(t[0] > t[1] && t[0] > t[2], "eps {eps}");
        }
    }

    #[test]
    fn curve_names_roundtrip() {
        for name in BoundCurve::NAMES {
            assert_eq!(BoundCurve::parse(name, 1.0).unwrap().name(), name);
        }
        assert!(BoundCurve::parse("nope", 1.0).is_err());
        assert!(!BoundCurve::parse("rappor-local-gc", 1.0).unwrap().constant_known());
        assert!(BoundCurve::Lower.constant_known());
    }

    #[test]
    fn sampling_values() {
        assert!((sampling_error(SamplingLoss::Linf, 100, 10_000, 1.0) - 0.01).abs() < 1e-15);
        assert!((sampling_error(SamplingLoss::L1, 100, 10_000, 1.0) - 0.1).abs() < 1e-15);
        assert_eq!(
            sampling_error(SamplingLoss::L2, 100, 10_000, 1.0),
            sampling_error(SamplingLoss::Linf, 100, 10_000, 1.0)
        );
    }
}
