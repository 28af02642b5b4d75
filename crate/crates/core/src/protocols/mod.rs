//! ε-LDP randomizers and their unbiased aggregators.
//!
//! Every mechanism implements [`LocalProtocol`]: a client-side `randomize`
//! and a server-side `aggregate`, plus an exact description of the output
//! distribution for enumerable message spaces (used by [`output_matrix`] for
//! privacy audits). [`FrequencyOracle`] is the object-safe view used by the
//! experiment harness.

mod intersection;
mod krr;
mod matrix;
mod rappor;
mod subset;
pub mod wire;

pub use intersection::{HadamardResponse, IntersectionFamily, ProjectiveGeometryResponse};
pub use krr::{Krr, SymbolMessage};
pub use matrix::{output_matrix, OutputMatrix, MAX_MATRIX_ENTRIES};
pub use rappor::{BitVectorMessage, Rappor};
pub use subset::{SubsetMessage, SubsetSelection};

use std::fmt::Debug;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::domain::{Dataset, FrequencyVector};
use crate::error::{Error, Result};
use crate::seed::Stream;

/// Static facts about a configured protocol.
#[derive(Debug, Clone, PartialEq)]
pub struct Descriptor {
    pub name: String,
    /// Number of inputs accepted (includes padding symbols, if any).
    pub k: usize,
    pub epsilon: f64,
    /// Human-readable message space, e.g. `{0,1}^k`.
    pub message_space: String,
    /// Bits needed to send one message.
    pub message_bits: u64,
    /// Tag used by the wire format.
    pub id: wire::ProtocolId,
}

pub trait LocalProtocol: Send + Sync {
    type Message: Clone + Debug + PartialEq + Send + Sync;

    fn descriptor(&self) -> Descriptor;

    /// Inputs are symbols in `0..alphabet_size()`.
    fn alphabet_size(&self) -> usize;

    fn epsilon(&self) -> f64;

    fn randomize<R: Rng + ?Sized>(&self, x: usize, rng: &mut R) -> Self::Message;

    /// Unbiased estimate of the senders' frequency vector, of length
    /// `alphabet_size()`.
    fn aggregate(&self, messages: &[Self::Message]) -> Result<FrequencyVector>;

    /// Number of distinct messages when they can be enumerated.
    fn message_space_size(&self) -> Option<usize>;

    /// The message with the given enumeration index.
    fn message(&self, index: usize) -> Self::Message;

    /// Exact `P(message(i) | x)` for every enumeration index `i`.
    fn output_distribution(&self, x: usize) -> Result<Vec<f64>>;
}

/// Type-erased protocol: randomize an entire dataset and aggregate.
pub trait FrequencyOracle: Send + Sync {
    fn descriptor(&self) -> Descriptor;

    /// Randomizes every user in dataset order with `stream`, then aggregates.
    fn estimate(&self, data: &Dataset, stream: &mut Stream) -> Result<FrequencyVector>;

    /// As [`estimate`](Self::estimate), but the messages pass through a uniform
    /// random shuffle before aggregation.
    fn estimate_shuffled(&self, data: &Dataset, stream: &mut Stream) -> Result<FrequencyVector>;
}

fn randomize_all<P: LocalProtocol>(
    protocol: &P,
    data: &Dataset,
    stream: &mut Stream,
) -> Result<Vec<P::Message>> {
    if data.k() > protocol.alphabet_size() {
        return Err(Error::InvalidDataset(format!(
            "dataset alphabet {} exceeds protocol alphabet {}",
            data.k(),
            protocol.alphabet_size()
        )));
    }
    Ok(data
        .items()
        .iter()
        .map(|&x| protocol.randomize(x, stream))
        .collect())
}

impl<P: LocalProtocol> FrequencyOracle for P {
    fn descriptor(&self) -> Descriptor {
        LocalProtocol::descriptor(self)
    }

    fn estimate(&self, data: &Dataset, stream: &mut Stream) -> Result<FrequencyVector> {
        let messages = randomize_all(self, data, stream)?;
        self.aggregate(&messages)
    }

    fn estimate_shuffled(&self, data: &Dataset, stream: &mut Stream) -> Result<FrequencyVector> {
        let mut messages = randomize_all(self, data, stream)?;
        messages.shuffle(stream);
        self.aggregate(&messages)
    }
}

pub(crate) fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidBudget(format!(
            "epsilon must be finite and > 0, got {epsilon}"
        )))
    }
}

pub(crate) fn check_alphabet(k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("alphabet size {k} < 2")));
    }
    Ok(())
}

/// `⌈log2 m⌉` (0 for `m <= 1`).
pub(crate) fn bits_for(m: u64) -> u64 {
    if m <= 1 {
        0
    } else {
        64 - (m - 1).leading_zeros() as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bit_widths() {
        assert_eq!(bits_for(1), 0);
        assert_eq!(bits_for(2), 1);
        assert_eq!(bits_for(7), 3);
        assert_eq!(bits_for(8), 3);
        assert_eq!(bits_for(9), 4);
        assert_eq!(bits_for(22953), 15);
    }
}
