//! Shared domain types: frequency vectors, datasets and privacy budgets.

use crate::error::{Error, Result};

/// Tolerance on the total mass of a true frequency vector.
pub const MASS_TOLERANCE: f64 = 1e-9;

/// A histogram over `0..k`.
///
/// True vectors live on the probability simplex. Estimates returned by the
/// aggregators are unbiased and therefore *not* clipped: they may contain
/// negative entries and need not sum to one. Such vectors carry
/// `is_debiased() == true`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyVector {
    values: Vec<f64>,
    debiased: bool,
}

impl FrequencyVector {
    /// Builds a true frequency vector, checking the simplex constraints.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidParameter(format!(
                "frequency vector needs k >= 2, got {}",
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::InvalidParameter(format!(
                "frequency entry {v} outside [0, 1]"
            )));
        }
        let total: f64 = values.iter().sum();
        if (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::InvalidParameter(format!(
                "frequencies sum to {total}, expected 1"
            )));
        }
        Ok(Self {
            values,
            debiased: false,
        })
    }

    /// Wraps an aggregator output. No simplex constraints are enforced.
    pub fn estimate(values: Vec<f64>) -> Self {
        Self {
            values,
            debiased: true,
        }
    }

    /// The point mass `e_i` over `0..k`.
    pub fn point_mass(k: usize, index: usize) -> Result<Self> {
        if index >= k {
            return Err(Error::InvalidParameter(format!(
                "point mass index {index} outside 0..{k}"
            )));
        }
        let mut values = vec![0.0; k];
        values[index] = 1.0;
        Self::new(values)
    }

    pub fn uniform(k: usize) -> Result<Self> {
        Self::new(vec![1.0 / k as f64; k])
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn is_debiased(&self) -> bool {
        self.debiased
    }

    /// Keeps only the first `k` coordinates (drops padding symbols).
    pub fn truncated(&self, k: usize) -> Self {
        Self {
            values: self.values[..k.min(self.values.len())].to_vec(),
            debiased: self.debiased,
        }
    }

    /// Extends with zero-frequency symbols up to length `k`.
    pub fn padded(&self, k: usize) -> Self {
        let mut values = self.values.clone();
        if values.len() < k {
            values.resize(k, 0.0);
        }
        Self {
            values,
            debiased: self.debiased,
        }
    }

    /// Euclidean projection onto the simplex. Optional post-processing; the
    /// aggregators never apply it.
    pub fn project_to_simplex(&self) -> Self {
        let mut sorted = self.values.clone();
        sorted.sort_by(|a, b| b.total_cmp(a));
        let mut cumulative = 0.0;
        let mut theta = 0.0;
        for (i, v) in sorted.iter().enumerate() {
            cumulative += v;
            let candidate = (cumulative - 1.0) / (i + 1) as f64;
            if v - candidate > 0.0 {
                theta = candidate;
            }
        }
        Self {
            values: self.values.iter().map(|v| (v - theta).max(0.0)).collect(),
            debiased: false,
        }
    }
}

/// `n` users' symbols over the alphabet `0..k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dataset {
    items: Vec<usize>,
    k: usize,
}

impl Dataset {
    pub fn new(items: Vec<usize>, k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidDataset(format!("alphabet size {k} < 2")));
        }
        if items.is_empty() {
            return Err(Error::InvalidDataset("dataset has no users".into()));
        }
        if let Some(x) = items.iter().find(|&&x| x >= k) {
            return Err(Error::InvalidDataset(format!("symbol {x} outside 0..{k}")));
        }
        Ok(Self { items, k })
    }

    pub fn items(&self) -> &[usize] {
        &self.items
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.items.len()
    }

    pub fn counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.k];
        for &x in &self.items {
            counts[x] += 1;
        }
        counts
    }

    /// `q_i = count(i) / n`.
    pub fn empirical_frequencies(&self) -> FrequencyVector {
        let n = self.n() as f64;
        FrequencyVector {
            values: self.counts().into_iter().map(|c| c as f64 / n).collect(),
            debiased: false,
        }
    }
}

/// Pure (`delta == 0`) or approximate privacy budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrivacyBudget {
    epsilon: f64,
    delta: f64,
}

impl PrivacyBudget {
    pub fn pure(epsilon: f64) -> Result<Self> {
        Self::approximate(epsilon, 0.0)
    }

    pub fn approximate(epsilon: f64, delta: f64) -> Result<Self> {
        if !(epsilon > 0.0) || epsilon.is_nan() {
            return Err(Error::InvalidBudget(format!("epsilon must be > 0, got {epsilon}")));
        }
        if !(0.0..=1.0).contains(&delta) {
            return Err(Error::InvalidBudget(format!("delta must lie in [0, 1], got {delta}")));
        }
        Ok(Self { epsilon, delta })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }
}
