//! k-ary randomized response.

use rand::Rng;

use super::wire::{BaseProtocol, ProtocolId};
use super::{bits_for, check_alphabet, check_epsilon, Descriptor, LocalProtocol};
use crate::domain::FrequencyVector;
use crate::error::{Error, Result};

/// A single output symbol in `0..M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolMessage(pub usize);

/// Reports the true symbol with probability `e^ε/(e^ε + k - 1)`, otherwise a
/// uniformly random other symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct Krr {
    k: usize,
    epsilon: f64,
    keep: f64,
    other: f64,
}

impl Krr {
    pub fn new(k: usize, epsilon: f64) -> Result<Self> {
        check_alphabet(k)?;
        check_epsilon(epsilon)?;
        let e = epsilon.exp();
        let denom = e + (k - 1) as f64;
        Ok(Self {
            k,
            epsilon,
            keep: e / denom,
            other: 1.0 / denom,
        })
    }

    pub fn keep_probability(&self) -> f64 {
        self.keep
    }
}

impl LocalProtocol for Krr {
    type Message = SymbolMessage;

    fn descriptor(&self) -> Descriptor {
        Descriptor {
            name: "krr".into(),
            k: self.k,
            epsilon: self.epsilon,
            message_space: format!("[{}]", self.k),
            message_bits: bits_for(self.k as u64),
            id: ProtocolId::plain(BaseProtocol::Krr),
        }
    }

    fn alphabet_size(&self) -> usize {
        self.k
    }

    fn epsilon(&self) -> f64 {
        self.epsilon
    }

    fn randomize<R: Rng + ?Sized>(&self, x: usize, rng: &mut R) -> SymbolMessage {
        if rng.gen::<f64>() < self.keep {
            SymbolMessage(x)
        } else {
            let y = rng.gen_range(0..self.k - 1);
            SymbolMessage(if y >= x { y + 1 } else { y })
        }
    }

    fn aggregate(&self, messages: &[SymbolMessage]) -> Result<FrequencyVector> {
        if messages.is_empty() {
            return Err(Error::EmptyMessages);
        }
        let mut counts = vec![0u64; self.k];
        for &SymbolMessage(y) in messages {
            if y >= self.k {
                return Err(Error::InvalidParameter(format!("symbol {y} outside 0..{}", self.k)));
            }
            counts[y] += 1;
        }
        let n = messages.len() as f64;
        let spread = self.keep - self.other;
        Ok(FrequencyVector::estimate(
            counts
                .into_iter()
                .map(|c| (c as f64 / n - self.other) / spread)
                .collect(),
        ))
    }

    fn message_space_size(&self) -> Option<usize> {
        Some(self.k)
    }

    fn message(&self, index: usize) -> SymbolMessage {
        SymbolMessage(index)
    }

    fn output_distribution(&self, x: usize) -> Result<Vec<f64>> {
        Ok((0..self.k)
            .map(|y| if y == x { self.keep } else { self.other })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_at_ln3() {
        let r = Krr::new(2, 3f64.ln()).unwrap();
        assert!((r.keep_probability() - 0.75).abs() < 1e-12);
    }

    #[test]
    fn tiny_epsilon_is_nearly_uniform() {
        let r = Krr::new(5, 1e-12).unwrap();
        for p in r.output_distribution(2).unwrap() {
            assert!((p - 0.2).abs() < 1e-11);
        }
    }

    #[test]
    fn k3_ln2_column() {
        let r = Krr::new(3, 2f64.ln()).unwrap();
        let d = r.output_distribution(1).unwrap();
        for (got, want) in d.iter().zip([0.25, 0.5, 0.25]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_out_of_range_symbol() {
        let r = Krr::new(3, 1.0).unwrap();
        assert!(r.aggregate(&[SymbolMessage(3)]).is_err());
        assert_eq!(r.aggregate(&[]), Err(Error::EmptyMessages));
    }
}
