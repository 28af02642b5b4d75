//! Amplification by shuffling.
//!
//! Closed-form calculators only: for single-message protocols the shuffler is
//! a uniform permutation of the reports, which leaves every symmetric
//! aggregate unchanged, so nothing here simulates it.

use crate::error::{Error, Result};
use crate::protocols::ProjectiveGeometryResponse;

fn check_delta(delta: f64) -> Result<()> {
    if delta > 0.0 && delta <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidBudget(format!("delta must lie in (0, 1], got {delta}")))
    }
}

fn check_users(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    Ok(())
}

/// Largest local budget for which the amplification bound applies:
/// `log(n / (16 log(2/δ)))`.
pub fn max_local_epsilon(delta: f64, n: u64) -> f64 {
    (n as f64 / (16.0 * (2.0 / delta).ln())).ln()
}

/// Central `ε` after shuffling `n` reports of an `ε_L`-LDP randomizer:
///
/// `log(1 + 8·(e^{ε_L}-1)/(e^{ε_L}+1)·(sqrt(e^{ε_L}·log(4/δ)/n) + e^{ε_L}/n))`.
pub fn amplified_epsilon(eps_local: f64, delta: f64, n: u64) -> Result<f64> {
    check_delta(delta)?;
    check_users(n)?;
    if !(eps_local >= 0.0) {
        return Err(Error::InvalidBudget(format!(
            "local epsilon must be >= 0, got {eps_local}"
        )));
    }
    let limit = max_local_epsilon(delta, n);
    if eps_local > limit {
        return Err(Error::OutOfRegime {
            message: format!(
                "eps_local = {eps_local} exceeds log(n/(16 log(2/delta))) = {limit} for n = {n}, delta = {delta}"
            ),
            limit: Some(limit),
        });
    }
    let e = eps_local.exp();
    let nf = n as f64;
    let ratio = eps_local.exp_m1() / (e + 1.0);
    let inner = (e * (4.0 / delta).ln() / nf).sqrt() + e / nf;
    Ok((8.0 * ratio * inner).ln_1p())
}

/// Smallest `n` with `ε > 16·sqrt(log(4/δ)/n)`.
pub fn min_users_for(eps_central: f64, delta: f64) -> u64 {
    let threshold = 256.0 * (4.0 / delta).ln() / (eps_central * eps_central);
    threshold.floor() as u64 + 1
}

/// Local budget that shuffling amplifies to at most `(ε, δ)`:
/// `ε_L = log(ε²n / (256 log(4/δ)))`.
pub fn local_epsilon_for(eps_central: f64, delta: f64, n: u64) -> Result<f64> {
    check_delta(delta)?;
    check_users(n)?;
    if !(eps_central > 0.0 && eps_central <= 1.0) {
        return Err(Error::InvalidBudget(format!(
            "central epsilon must lie in (0, 1], got {eps_central}"
        )));
    }
    let log_term = (4.0 / delta).ln();
    let nf = n as f64;
    if eps_central <= 16.0 * (log_term / nf).sqrt() {
        let needed = min_users_for(eps_central, delta);
        return Err(Error::InvalidParameter(format!(
            "eps = {eps_central} needs eps > 16 sqrt(log(4/delta)/n); requires n >= {needed}"
        )));
    }
    Ok((eps_central * eps_central * nf / (256.0 * log_term)).ln())
}

/// A validated shuffle-model target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShuffleBudget {
    pub epsilon_central: f64,
    pub delta: f64,
    pub n: u64,
    pub epsilon_local: f64,
}

impl ShuffleBudget {
    pub fn new(epsilon_central: f64, delta: f64, n: u64) -> Result<Self> {
        let epsilon_local = local_epsilon_for(epsilon_central, delta, n)?;
        Ok(Self {
            epsilon_central,
            delta,
            n,
            epsilon_local,
        })
    }

    /// The amplified central ε actually certified for `epsilon_local`.
    pub fn certified_epsilon(&self) -> Result<f64> {
        amplified_epsilon(self.epsilon_local, self.delta, self.n)
    }
}

/// Users needed for the shuffled projective-geometry regime:
/// `n >= (500/ε²)·log(4/δ)`.
pub fn shuffled_pgr_min_users(eps_central: f64, delta: f64) -> u64 {
    (500.0 * (4.0 / delta).ln() / (eps_central * eps_central)).ceil() as u64
}

#[derive(Debug, Clone)]
pub struct ShuffledPgr {
    pub budget: ShuffleBudget,
    pub protocol: ProjectiveGeometryResponse,
    pub k: usize,
    /// Multiplier of the order-of-magnitude prediction. Not a proven constant.
    pub constant: f64,
}

impl ShuffledPgr {
    /// `C·sqrt(log k · log(1/δ)) / (n ε)`.
    pub fn predicted_error(&self) -> f64 {
        let b = &self.budget;
        self.constant * ((self.k as f64).ln() * (1.0 / b.delta).ln()).sqrt()
            / (b.n as f64 * b.epsilon_central)
    }
}

/// Configures projective-geometry response at the local budget that shuffling
/// amplifies to `(ε, δ)`.
pub fn shuffled_pgr_config(
    eps_central: f64,
    delta: f64,
    n: u64,
    k: usize,
    constant: f64,
) -> Result<ShuffledPgr> {
    check_delta(delta)?;
    if !(eps_central > 0.0 && eps_central <= 1.0) {
        return Err(Error::InvalidBudget(format!(
            "central epsilon must lie in (0, 1], got {eps_central}"
        )));
    }
    let required = shuffled_pgr_min_users(eps_central, delta);
    if n < required {
        return Err(Error::OutOfRegime {
            message: format!(
                "shuffled PGR needs n >= 500 log(4/delta)/eps^2 = {required}, got n = {n}"
            ),
            limit: Some(required as f64),
        });
    }
    let budget = ShuffleBudget::new(eps_central, delta, n)?;
    let protocol = ProjectiveGeometryResponse::for_alphabet(k, budget.epsilon_local)?;
    Ok(ShuffledPgr {
        budget,
        protocol,
        k,
        constant,
    })
}
