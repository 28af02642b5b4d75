//! ε-splitting: run a base protocol `T` times at `ε/T` per use.
//!
//! Each user randomizes the same input `T = min(⌈ε⌉, L)` times and sends all
//! reports; the server treats them as `T·n` pseudo-users. Counts scale by `T`
//! and the normalization by `T·n` cancels it, so an unbiased base stays
//! unbiased, and basic composition gives total budget `T·(ε/T) = ε`.

use rand::Rng;

use crate::domain::FrequencyVector;
use crate::error::{Error, Result};
use crate::protocols::{Descriptor, LocalProtocol};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitConfig {
    epsilon: f64,
    cap: Option<u32>,
    repetitions: u32,
}

impl SplitConfig {
    /// `cap = None` means no limit on the number of repetitions.
    pub fn new(epsilon: f64, cap: Option<u32>) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(Error::InvalidBudget(format!("epsilon must be > 0, got {epsilon}")));
        }
        if cap == Some(0) {
            return Err(Error::InvalidParameter("repetition cap must be >= 1".into()));
        }
        let ceil = epsilon.ceil().min(u32::MAX as f64) as u32;
        let repetitions = cap.map_or(ceil, |l| ceil.min(l)).max(1);
        Ok(Self {
            epsilon,
            cap,
            repetitions,
        })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn cap(&self) -> Option<u32> {
        self.cap
    }

    /// `T`.
    pub fn repetitions(&self) -> u32 {
        self.repetitions
    }

    /// `ε' = ε/T`.
    pub fn per_use_epsilon(&self) -> f64 {
        self.epsilon / self.repetitions as f64
    }
}

#[derive(Debug, Clone)]
pub struct Split<P> {
    base: P,
    config: SplitConfig,
}

impl<P: LocalProtocol> Split<P> {
    /// Instantiates the base protocol at `ε/T` through `build`.
    pub fn build(config: SplitConfig, build: impl FnOnce(f64) -> Result<P>) -> Result<Self> {
        let base = build(config.per_use_epsilon())?;
        Self::new(base, config)
    }

    pub fn new(base: P, config: SplitConfig) -> Result<Self> {
        let expected = config.per_use_epsilon();
        if (base.epsilon() - expected).abs() > 1e-12 * expected {
            return Err(Error::InvalidBudget(format!(
                "base runs at eps = {}, split requires {expected}",
                base.epsilon()
            )));
        }
        Ok(Self { base, config })
    }

    pub fn base(&self) -> &P {
        &self.base
    }

    pub fn config(&self) -> &SplitConfig {
        &self.config
    }

    /// Aggregates messages in the flattened layout `T` per user.
    pub fn aggregate_flat(&self, messages: &[P::Message], users: usize) -> Result<FrequencyVector> {
        let expected = users * self.config.repetitions as usize;
        if messages.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                actual: messages.len(),
            });
        }
        self.base.aggregate(messages)
    }
}

impl<P: LocalProtocol> LocalProtocol for Split<P> {
    type Message = Vec<P::Message>;

    fn descriptor(&self) -> Descriptor {
        let base = self.base.descriptor();
        let t = self.config.repetitions;
        Descriptor {
            name: format!("split({})", base.name),
            k: base.k,
            epsilon: self.config.epsilon,
            message_space: format!("({})^{t}", base.message_space),
            message_bits: base.message_bits * t as u64,
            id: crate::protocols::wire::ProtocolId::split(base.id.base),
        }
    }

    fn alphabet_size(&self) -> usize {
        self.base.alphabet_size()
    }

    fn epsilon(&self) -> f64 {
        self.config.epsilon
    }

    fn randomize<R: Rng + ?Sized>(&self, x: usize, rng: &mut R) -> Self::Message {
        (0..self.config.repetitions)
            .map(|_| self.base.randomize(x, rng))
            .collect()
    }

    fn aggregate(&self, messages: &[Self::Message]) -> Result<FrequencyVector> {
        let t = self.config.repetitions as usize;
        if let Some(bad) = messages.iter().find(|m| m.len() != t) {
            return Err(Error::LengthMismatch {
                expected: t,
                actual: bad.len(),
            });
        }
        let flat: Vec<P::Message> = messages.iter().flatten().cloned().collect();
        self.aggregate_flat(&flat, messages.len())
    }

    fn message_space_size(&self) -> Option<usize> {
        self.base
            .message_space_size()?
            .checked_pow(self.config.repetitions)
    }

    /// Mixed radix, first use least significant.
    fn message(&self, mut index: usize) -> Self::Message {
        let m = self.base.message_space_size().expect("enumerable base");
        (0..self.config.repetitions)
            .map(|_| {
                let msg = self.base.message(index % m);
                index /= m;
                msg
            })
            .collect()
    }

    fn output_distribution(&self, x: usize) -> Result<Vec<f64>> {
        let base = self.base.output_distribution(x)?;
        let mut acc = vec![1.0];
        for _ in 0..self.config.repetitions {
            acc = base
                .iter()
                .flat_map(|&p| acc.iter().map(move |&a| a * p))
                .collect();
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocols::{Krr, SubsetSelection};

    #[test]
    fn repetition_counts() {
        let c = SplitConfig::new(0.5, None).unwrap();
        assert_eq!(c.repetitions(), 1);
        assert_eq!(c.per_use_epsilon(), 0.5);
        let c = SplitConfig::new(3.7, Some(10)).unwrap();
        assert_eq!(c.repetitions(), 4);
        assert!((c.per_use_epsilon() - 0.925).abs() < 1e-12);
        let c = SplitConfig::new(8.0, Some(3)).unwrap();
        assert_eq!(c.repetitions(), 3);
        assert!((c.per_use_epsilon() - 8.0 / 3.0).abs() < 1e-12);
        assert!(SplitConfig::new(1.0, Some(0)).is_err());
        assert!(SplitConfig::new(-1.0, None).is_err());
    }

    #[test]
    fn single_use_matches_base() {
        let cfg = SplitConfig::new(0.8, None).unwrap();
        let split = Split::build(cfg, |e| Krr::new(4, e)).unwrap();
        let base = Krr::new(4, 0.8).unwrap();
        let msgs = vec![
            crate::protocols::SymbolMessage(0),
            crate::protocols::SymbolMessage(2),
            crate::protocols::SymbolMessage(2),
        ];
        let wrapped: Vec<_> = msgs.iter().map(|m| vec![*m]).collect();
        assert_eq!(split.aggregate(&wrapped).unwrap(), base.aggregate(&msgs).unwrap());
    }

    #[test]
    fn count_mismatch() {
        let cfg = SplitConfig::new(2.0, None).unwrap();
        let split = Split::build(cfg, |e| Krr::new(4, e)).unwrap();
        let msg = vec![crate::protocols::SymbolMessage(0)];
        assert!(matches!(split.aggregate(std::slice::from_ref(&msg)), Err(Error::LengthMismatch { .. })));
        assert!(split.aggregate_flat(&msg, 1).is_err());
    }

    #[test]
    fn base_rejection_propagates() {
        // per-use eps tiny enough that subsets would cover the alphabet
        let cfg = SplitConfig::new(1e-9, None).unwrap();
        assert!(Split::build(cfg, |e| SubsetSelection::with_subset_size(3, e, 3)).is_err());
    }

    #[test]
    fn wrong_base_budget() {
        let cfg = SplitConfig::new(2.0, None).unwrap();
        assert!(Split::new(Krr::new(4, 2.0).unwrap(), cfg).is_err());
    }
}
