//! Subset selection: the exponential mechanism over size-`s` subsets.
//!
//! `P(Y = S | x) ∝ e^ε` if `x ∈ S`, `∝ 1` otherwise, with
//! `s = ⌈k/(e^ε + 1)⌉`.

use rand::seq::index;
use rand::Rng;

use super::wire::{BaseProtocol, ProtocolId};
use super::{bits_for, check_alphabet, check_epsilon, Descriptor, LocalProtocol};
use crate::domain::FrequencyVector;
use crate::error::{Error, Result};

/// Sorted set of `s` distinct symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubsetMessage {
    members: Vec<u32>,
}

impl SubsetMessage {
    /// Sorts and deduplicates-checks `members`.
    pub fn new(mut members: Vec<u32>) -> Result<Self> {
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameter("subset has repeated members".into()));
        }
        Ok(Self { members })
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn contains(&self, j: u32) -> bool {
        self.members.binary_search(&j).is_ok()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubsetSelection {
    k: usize,
    s: usize,
    epsilon: f64,
    /// `P(x ∈ Y | x)`.
    p_true: f64,
    /// `P(j ∈ Y | x)` for `j != x`.
    p_other: f64,
}

/// `C(n, r)` as an exact integer, `None` on overflow.
pub(crate) fn binomial(n: usize, r: usize) -> Option<u64> {
    if r > n {
        return Some(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

impl SubsetSelection {
    pub fn new(k: usize, epsilon: f64) -> Result<Self> {
        check_alphabet(k)?;
        check_epsilon(epsilon)?;
        let s = Self::subset_size_for(k, epsilon);
        Self::with_subset_size(k, epsilon, s)
    }

    /// `⌈k/(e^ε + 1)⌉`. A relative slack of 1e-12 keeps exact quotients such
    /// as `4/(3 + 1)` from rounding up through float error.
    pub fn subset_size_for(k: usize, epsilon: f64) -> usize {
        let raw = k as f64 / (epsilon.exp() + 1.0);
        ((raw * (1.0 - 1e-12)).ceil() as usize).max(1)
    }

    pub fn with_subset_size(k: usize, epsilon: f64, s: usize) -> Result<Self> {
        check_alphabet(k)?;
        check_epsilon(epsilon)?;
        if s == 0 || s >= k {
            return Err(Error::InvalidParameter(format!(
                "subset size {s} outside [1, {}] for k = {k}, eps = {epsilon}",
                k - 1
            )));
        }
        let e = epsilon.exp();
        let (kf, sf) = (k as f64, s as f64);
        // All probabilities divided through by C(k-1, s-1):
        // Z = e^ε C(k-1,s-1) + C(k-1,s)   ->  e^ε + (k-s)/s
        let z = e + (kf - sf) / sf;
        let p_true = e / z;
        let p_other = (e * (sf - 1.0) / (kf - 1.0) + (kf - sf) / (kf - 1.0)) / z;
        Ok(Self {
            k,
            s,
            epsilon,
            p_true,
            p_other,
        })
    }

    pub fn subset_size(&self) -> usize {
        self.s
    }

    /// `(P(x ∈ Y | x), P(j ∈ Y | x))` for `j != x`.
    pub fn membership_probabilities(&self) -> (f64, f64) {
        (self.p_true, self.p_other)
    }

    fn unrank(&self, mut rank: u64) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.s);
        let mut next = 0usize;
        for slot in 0..self.s {
            let remaining = self.s - slot - 1;
            loop {
                let with_next = binomial(self.k - next - 1, remaining).unwrap();
                if rank < with_next {
                    out.push(next as u32);
                    next += 1;
                    break;
                }
                rank -= with_next;
                next += 1;
            }
        }
        out
    }
}

impl LocalProtocol for SubsetSelection {
    type Message = SubsetMessage;

    fn descriptor(&self) -> Descriptor {
        Descriptor {
            name: "ss".into(),
            k: self.k,
            epsilon: self.epsilon,
            message_space: format!("{}-subsets of [{}]", self.s, self.k),
            message_bits: self.s as u64 * bits_for(self.k as u64),
            id: ProtocolId::plain(BaseProtocol::SubsetSelection),
        }
    }

    fn alphabet_size(&self) -> usize {
        self.k
    }

    fn epsilon(&self) -> f64 {
        self.epsilon
    }

    fn randomize<R: Rng + ?Sized>(&self, x: usize, rng: &mut R) -> SubsetMessage {
        let include = rng.gen::<f64>() < self.p_true;
        let others = if include { self.s - 1 } else { self.s };
        let mut members: Vec<u32> = index::sample(rng, self.k - 1, others)
            .into_iter()
            .map(|j| if j >= x { j + 1 } else { j } as u32)
            .collect();
        if include {
            members.push(x as u32);
        }
        members.sort_unstable();
        SubsetMessage { members }
    }

    fn aggregate(&self, messages: &[SubsetMessage]) -> Result<FrequencyVector> {
        if messages.is_empty() {
            return Err(Error::EmptyMessages);
        }
        let mut counts = vec![0u64; self.k];
        for m in messages {
            if m.members.len() != self.s {
                return Err(Error::LengthMismatch {
                    expected: self.s,
                    actual: m.members.len(),
                });
            }
            for &j in &m.members {
                let j = j as usize;
                if j >= self.k {
                    return Err(Error::InvalidParameter(format!("symbol {j} outside 0..{}", self.k)));
                }
                counts[j] += 1;
            }
        }
        let n = messages.len() as f64;
        let spread = self.p_true - self.p_other;
        Ok(FrequencyVector::estimate(
            counts
                .into_iter()
                .map(|c| (c as f64 / n - self.p_other) / spread)
                .collect(),
        ))
    }

    fn message_space_size(&self) -> Option<usize> {
        binomial(self.k, self.s).and_then(|n| usize::try_from(n).ok())
    }

    fn message(&self, index: usize) -> SubsetMessage {
        SubsetMessage {
            members: self.unrank(index as u64),
        }
    }

    fn output_distribution(&self, x: usize) -> Result<Vec<f64>> {
        let size = self
            .message_space_size()
            .ok_or_else(|| Error::Capability("subset space too large to enumerate".into()))?;
        let e = self.epsilon.exp();
        let z = e * binomial(self.k - 1, self.s - 1).unwrap() as f64
            + binomial(self.k - 1, self.s).unwrap() as f64;
        Ok((0..size)
            .map(|i| {
                if self.unrank(i as u64).contains(&(x as u32)) {
                    e / z
                } else {
                    1.0 / z
                }
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_e3_membership() {
        let ss = SubsetSelection::new(4, 3f64.ln()).unwrap();
        assert_eq!(ss.subset_size(), 1);
        let (p1, p0) = ss.membership_probabilities();
        assert!((p1 - 0.5).abs() < 1e-12);
        assert!((p0 - 1.0 / 6.0).abs() < 1e-12);
        // brute force over the four singleton outputs
        let dist = ss.output_distribution(2).unwrap();
        assert!((dist[2] - 0.5).abs() < 1e-12);
        assert!((dist[0] - 1.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn k4_debias_is_three_f_minus_half() {
        let ss = SubsetSelection::new(4, 3f64.ln()).unwrap();
        let msgs: Vec<SubsetMessage> = [0u32, 0, 1, 3]
            .into_iter()
            .map(|j| SubsetMessage::new(vec![j]).unwrap())
            .collect();
        let est = ss.aggregate(&msgs).unwrap();
        for (j, f) in [0.5, 0.25, 0.0, 0.25].into_iter().enumerate() {
            assert!((est.values()[j] - (3.0 * f - 0.5)).abs() < 1e-12);
        }
    }

    #[test]
    fn small_epsilon_k5() {
        let ss = SubsetSelection::new(5, 1e-9).unwrap();
        assert_eq!(ss.subset_size(), 3);
        let (p1, p0) = ss.membership_probabilities();
        assert!((p1 - 0.6).abs() < 1e-8 && (p0 - 0.6).abs() < 1e-8);
    }

    #[test]
    fn subset_size_errors() {
        assert!(SubsetSelection::with_subset_size(5, 1.0, 5).is_err());
        assert!(SubsetSelection::with_subset_size(5, 1.0, 0).is_err());
    }

    #[test]
    fn unrank_lexicographic() {
        let ss = SubsetSelection::with_subset_size(5, 1.0, 2).unwrap();
        let all: Vec<Vec<u32>> = (0..10).map(|i| ss.message(i).members).collect();
        assert_eq!(all[0], vec![0, 1]);
        assert_eq!(all[3], vec![0, 4]);
        assert_eq!(all[4], vec![1, 2]);
        assert_eq!(all[9], vec![3, 4]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), Some(10));
        assert_eq!(binomial(4, 0), Some(1));
        assert_eq!(binomial(3, 4), Some(0));
        assert_eq!(binomial(60, 30), Some(118264581564861424));
    }
}
