//! Randomized response over an intersection family.
//!
//! With `D = s·e^ε + M - s`, an input `x` is reported as any `y ∈ S(x)` with
//! probability `e^ε/D` and as any other `y` with probability `1/D`. The
//! estimate is `q̂_x = α·(1/n)·#{i : Y_i ∈ S(x)} + β`.

use rand::Rng;

use super::wire::{BaseProtocol, ProtocolId};
use super::{bits_for, check_epsilon, Descriptor, LocalProtocol, SymbolMessage};
use crate::domain::FrequencyVector;
use crate::error::{Error, Result};
use crate::geometry::{build_pgr_system, HadamardSystem, ProjectiveSpace, SetSystem};

#[derive(Debug, Clone)]
pub struct IntersectionFamily<S> {
    system: S,
    epsilon: f64,
    name: &'static str,
    /// `P(Y ∈ S(x) | x)`.
    inside: f64,
    alpha: f64,
    beta: f64,
}

/// Projective-geometry response over PG(t-1, p).
pub type ProjectiveGeometryResponse = IntersectionFamily<ProjectiveSpace>;
/// Hadamard response over the rows of a Sylvester matrix.
pub type HadamardResponse = IntersectionFamily<HadamardSystem>;

impl<S: SetSystem> IntersectionFamily<S> {
    pub fn new(system: S, epsilon: f64) -> Result<Self> {
        Self::named(system, epsilon, "intersection")
    }

    fn named(system: S, epsilon: f64, name: &'static str) -> Result<Self> {
        check_epsilon(epsilon)?;
        system.validate()?;
        let (m, s, c) = (
            system.universe() as f64,
            system.subset_size() as f64,
            system.intersection() as f64,
        );
        let em1 = epsilon.exp_m1();
        let e = epsilon.exp();
        let d = s * e + m - s;
        Ok(Self {
            inside: s * e / d,
            alpha: (em1 * s + m) / (em1 * (s - c)),
            beta: -(em1 * c + s) / (em1 * (s - c)),
            system,
            epsilon,
            name,
        })
    }

    pub fn system(&self) -> &S {
        &self.system
    }

    /// `(α, β)` of the affine debiasing map.
    pub fn debias_coefficients(&self) -> (f64, f64) {
        (self.alpha, self.beta)
    }

    /// `(P(y | x) for y ∈ S(x), P(y | x) otherwise)`.
    pub fn output_weights(&self) -> (f64, f64) {
        let (m, s) = (self.system.universe() as f64, self.system.subset_size() as f64);
        let e = self.epsilon.exp();
        let d = s * e + m - s;
        (e / d, 1.0 / d)
    }

    /// Probability that the report lands in the sender's own subset.
    pub fn inside_probability(&self) -> f64 {
        self.inside
    }
}

impl ProjectiveGeometryResponse {
    /// Builds the projective system for `k` symbols at budget `ε`; the
    /// alphabet is padded up to the full point count.
    pub fn for_alphabet(k: usize, epsilon: f64) -> Result<Self> {
        check_epsilon(epsilon)?;
        let built = build_pgr_system(k, epsilon)?;
        Self::named(built.space, epsilon, "pgr")
    }

    pub fn from_space(space: ProjectiveSpace, epsilon: f64) -> Result<Self> {
        Self::named(space, epsilon, "pgr")
    }
}

impl HadamardResponse {
    pub fn for_alphabet(k: usize, epsilon: f64) -> Result<Self> {
        Self::named(HadamardSystem::new(k)?, epsilon, "hr")
    }
}

impl<S: SetSystem> LocalProtocol for IntersectionFamily<S> {
    type Message = SymbolMessage;

    fn descriptor(&self) -> Descriptor {
        Descriptor {
            name: self.name.into(),
            k: self.system.inputs(),
            epsilon: self.epsilon,
            message_space: format!(
                "[{}] (s = {}, c = {})",
                self.system.universe(),
                self.system.subset_size(),
                self.system.intersection()
            ),
            message_bits: bits_for(self.system.universe() as u64),
            id: ProtocolId::plain(match self.name {
                "pgr" => BaseProtocol::ProjectiveGeometry,
                "hr" => BaseProtocol::Hadamard,
                _ => BaseProtocol::Intersection,
            }),
        }
    }

    fn alphabet_size(&self) -> usize {
        self.system.inputs()
    }

    fn epsilon(&self) -> f64 {
        self.epsilon
    }

    fn randomize<R: Rng + ?Sized>(&self, x: usize, rng: &mut R) -> SymbolMessage {
        if rng.gen::<f64>() < self.inside {
            SymbolMessage(self.system.sample_member(x, rng))
        } else {
            SymbolMessage(self.system.sample_non_member(x, rng))
        }
    }

    fn aggregate(&self, messages: &[SymbolMessage]) -> Result<FrequencyVector> {
        if messages.is_empty() {
            return Err(Error::EmptyMessages);
        }
        let m = self.system.universe();
        let mut histogram = vec![0u64; m];
        for &SymbolMessage(y) in messages {
            if y >= m {
                return Err(Error::InvalidParameter(format!("symbol {y} outside 0..{m}")));
            }
            histogram[y] += 1;
        }
        let n = messages.len() as f64;
        Ok(FrequencyVector::estimate(
            self.system
                .membership_counts(&histogram)
                .into_iter()
                .map(|c| self.alpha * c as f64 / n + self.beta)
                .collect(),
        ))
    }

    fn message_space_size(&self) -> Option<usize> {
        Some(self.system.universe())
    }

    fn message(&self, index: usize) -> SymbolMessage {
        SymbolMessage(index)
    }

    fn output_distribution(&self, x: usize) -> Result<Vec<f64>> {
        let (hi, lo) = self.output_weights();
        Ok((0..self.system.universe())
            .map(|y| if self.system.contains(x, y) { hi } else { lo })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fano(eps: f64) -> ProjectiveGeometryResponse {
        ProjectiveGeometryResponse::from_space(ProjectiveSpace::new(2, 3).unwrap(), eps).unwrap()
    }

    #[test]
    fn fano_membership_probabilities() {
        let pgr = fano(2f64.ln());
        let dist = pgr.output_distribution(0).unwrap();
        let members = pgr.system().members(0);
        let own: f64 = members.iter().map(|&y| dist[y]).sum();
        assert!((own - 0.6).abs() < 1e-12);
        let other_members = pgr.system().members(3);
        let cross: f64 = other_members.iter().map(|&y| dist[y]).sum();
        assert!((cross - 0.4).abs() < 1e-12);
        assert!((pgr.inside_probability() - 0.6).abs() < 1e-12);
    }

    #[test]
    fn fano_coefficients_and_point_masses() {
        let pgr = fano(2f64.ln());
        let (a, b) = pgr.debias_coefficients();
        assert!((a - 5.0).abs() < 1e-12 && (b + 2.0).abs() < 1e-12);
        assert!((a * 0.6 + b - 1.0).abs() < 1e-12);
        assert!((a * 0.4 + b).abs() < 1e-12);
    }

    #[test]
    fn hadamard_k3_coefficients() {
        let hr = HadamardResponse::for_alphabet(3, 3f64.ln()).unwrap();
        let (a, b) = hr.debias_coefficients();
        assert!((a - 4.0).abs() < 1e-12 && (b + 2.0).abs() < 1e-12);
    }

    #[test]
    fn tiny_epsilon_nearly_uniform() {
        let pgr = fano(1e-12);
        for p in pgr.output_distribution(4).unwrap() {
            assert!((p - 1.0 / 7.0).abs() < 1e-10);
        }
    }

    #[test]
    fn weights_normalize() {
        for eps in [0.1, 1.0, 5.0] {
            let pgr = fano(eps);
            let (hi, lo) = pgr.output_weights();
            assert!((3.0 * hi + 4.0 * lo - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn padded_alphabet() {
        let pgr = ProjectiveGeometryResponse::for_alphabet(10, 1.0).unwrap();
        assert_eq!(pgr.alphabet_size(), 31);
        assert_eq!(LocalProtocol::descriptor(&pgr).message_bits, 5);
    }
}
