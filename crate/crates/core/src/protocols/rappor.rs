//! Symmetric RAPPOR (unary encoding with per-bit randomized response).

use rand::Rng;

use super::wire::{BaseProtocol, ProtocolId};
use super::{check_alphabet, check_epsilon, Descriptor, LocalProtocol};
use crate::domain::FrequencyVector;
use crate::error::{Error, Result};

/// A `k`-bit vector packed into 64-bit words, bit `j` at word `j / 64`,
/// position `j % 64`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitVectorMessage {
    words: Vec<u64>,
    len: usize,
}

impl BitVectorMessage {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn one_hot(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.toggle(index);
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (j, _) in bits.iter().enumerate().filter(|(_, b)| **b) {
            v.toggle(j);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, j: usize) -> bool {
        self.words[j / 64] >> (j % 64) & 1 == 1
    }

    pub fn toggle(&mut self, j: usize) {
        assert!(j < self.len, "bit {j} out of range for length {}", self.len);
        self.words[j / 64] ^= 1 << (j % 64);
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn from_words(words: Vec<u64>, len: usize) -> Self {
        Self { words, len }
    }

    /// Indices of the set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * 64 + bit)
            })
        })
    }
}

/// Each bit of the one-hot encoding is flipped independently with
/// probability `1/(e^{ε/2} + 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rappor {
    k: usize,
    epsilon: f64,
    flip: f64,
}

impl Rappor {
    pub fn new(k: usize, epsilon: f64) -> Result<Self> {
        check_alphabet(k)?;
        check_epsilon(epsilon)?;
        Ok(Self {
            k,
            epsilon,
            flip: 1.0 / ((epsilon / 2.0).exp() + 1.0),
        })
    }

    pub fn flip_probability(&self) -> f64 {
        self.flip
    }

    /// Debiases a vector of column means `Ȳ`.
    pub fn debias(&self, column_means: &[f64]) -> Vec<f64> {
        let h = (self.epsilon / 2.0).exp();
        let scale = (h + 1.0) / (h - 1.0);
        let shift = 1.0 / (h - 1.0);
        column_means.iter().map(|y| scale * y - shift).collect()
    }
}

impl LocalProtocol for Rappor {
    type Message = BitVectorMessage;

    fn descriptor(&self) -> Descriptor {
        Descriptor {
            name: "rappor".into(),
            k: self.k,
            epsilon: self.epsilon,
            message_space: format!("{{0,1}}^{}", self.k),
            message_bits: self.k as u64,
            id: ProtocolId::plain(BaseProtocol::Rappor),
        }
    }

    fn alphabet_size(&self) -> usize {
        self.k
    }

    fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Flip positions are drawn by geometric skipping, so the cost is
    /// proportional to the number of flips rather than to `k`.
    fn randomize<R: Rng + ?Sized>(&self, x: usize, rng: &mut R) -> BitVectorMessage {
        let mut msg = BitVectorMessage::one_hot(self.k, x);
        let log_keep = (-self.flip).ln_1p();
        let mut pos = 0usize;
        loop {
            // 1 - gen::<f64>() lies in (0, 1]
            let u: f64 = 1.0 - rng.gen::<f64>();
            let gap = (u.ln() / log_keep).floor();
            if !gap.is_finite() || gap >= (self.k - pos) as f64 {
                break;
            }
            pos += gap as usize;
            msg.toggle(pos);
            pos += 1;
            if pos >= self.k {
                break;
            }
        }
        msg
    }

    fn aggregate(&self, messages: &[BitVectorMessage]) -> Result<FrequencyVector> {
        if messages.is_empty() {
            return Err(Error::EmptyMessages);
        }
        let mut sums = vec![0u64; self.k];
        for m in messages {
            if m.len() != self.k {
                return Err(Error::LengthMismatch {
                    expected: self.k,
                    actual: m.len(),
                });
            }
            for j in m.ones() {
                sums[j] += 1;
            }
        }
        let n = messages.len() as f64;
        let means: Vec<f64> = sums.into_iter().map(|s| s as f64 / n).collect();
        Ok(FrequencyVector::estimate(self.debias(&means)))
    }

    fn message_space_size(&self) -> Option<usize> {
        (self.k < usize::BITS as usize - 1).then(|| 1usize << self.k)
    }

    fn message(&self, index: usize) -> BitVectorMessage {
        let bits: Vec<bool> = (0..self.k).map(|j| index >> j & 1 == 1).collect();
        BitVectorMessage::from_bits(&bits)
    }

    fn output_distribution(&self, x: usize) -> Result<Vec<f64>> {
        let size = self.message_space_size().ok_or_else(|| {
            crate::Error::Capability(format!("2^{} messages cannot be enumerated", self.k))
        })?;
        Ok((0..size)
            .map(|m| {
                (0..self.k)
                    .map(|j| {
                        let bit = m >> j & 1 == 1;
                        if bit == (j == x) {
                            1.0 - self.flip
                        } else {
                            self.flip
                        }
                    })
                    .product()
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::SeedSpec;

    #[test]
    fn flip_probability_at_two_ln3() {
        let r = Rappor::new(4, 2.0 * 3f64.ln()).unwrap();
        assert!((r.flip_probability() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn huge_epsilon_gives_one_hot() {
        let r = Rappor::new(50, 200.0).unwrap();
        let mut s = SeedSpec::new(1, 0).stream();
        for x in 0..50 {
            assert_eq!(r.randomize(x, &mut s), BitVectorMessage::one_hot(50, x));
        }
    }

    #[test]
    fn k2_first_outcome_probability() {
        let r = Rappor::new(2, 2.0 * 3f64.ln()).unwrap();
        let dist = r.output_distribution(0).unwrap();
        // index 1 is bits (1, 0)
        assert!((dist[1] - 0.5625).abs() < 1e-12);
        assert!((dist.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn aggregate_extreme_columns() {
        let eps = 3.0;
        let r = Rappor::new(3, eps).unwrap();
        let h = (eps / 2.0).exp();
        let noise = r.debias(&[1.0 / (h + 1.0); 3]);
        assert!(noise.iter().all(|v| v.abs() < 1e-12));
        let signal = r.debias(&[h / (h + 1.0)]);
        assert!((signal[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn aggregate_errors() {
        let r = Rappor::new(3, 1.0).unwrap();
        assert_eq!(r.aggregate(&[]), Err(Error::EmptyMessages));
        assert!(matches!(
            r.aggregate(&[BitVectorMessage::zeros(4)]),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(Rappor::new(3, 0.0).is_err());
        assert!(Rappor::new(3, -1.0).is_err());
    }

    #[test]
    fn ones_iterator() {
        let mut m = BitVectorMessage::zeros(130);
        for j in [0, 63, 64, 129] {
            m.toggle(j);
        }
        assert_eq!(m.ones().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
    }

    #[test]
    fn skipping_matches_flip_rate() {
        let r = Rappor::new(200, 2.0).unwrap();
        let mut s = SeedSpec::new(5, 0).stream();
        let mut ones = 0usize;
        let reps = 2000;
        for _ in 0..reps {
            ones += r.randomize(0, &mut s).ones().filter(|&j| j != 0).count();
        }
        let trials = (199 * reps) as f64;
        let p = r.flip_probability();
        let se = (p * (1.0 - p) / trials).sqrt();
        assert!(((ones as f64 / trials) - p).abs() < 4.0 * se);
    }
}
