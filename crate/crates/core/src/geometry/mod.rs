//! Set systems with constant subset size and constant pairwise intersection.
//!
//! Every input `x` owns a subset `S(x)` of an output universe `0..M` with
//! `|S(x)| = s` and `|S(x) ∩ S(x')| = c` for `x != x'`. Projective-geometry
//! response and Hadamard response are both instances of the same randomizer
//! over such a system; see [`crate::protocols::IntersectionFamily`].

mod hadamard;
mod prime;
mod projective;

pub use hadamard::HadamardSystem;
pub use prime::{is_prime, select_prime};
pub use projective::{alpha_bound_check, build_pgr_system, AlphaCheck, PgrBuild, ProjectiveSpace};

use rand::Rng;

pub trait SetSystem: Send + Sync {
    /// Output universe size `M`.
    fn universe(&self) -> usize;
    /// Number of inputs `k` the system provides subsets for.
    fn inputs(&self) -> usize;
    /// Common subset size `s`.
    fn subset_size(&self) -> usize;
    /// Common pairwise intersection `c`.
    fn intersection(&self) -> usize;

    fn contains(&self, x: usize, y: usize) -> bool;

    /// The `s` members of `S(x)`, ascending.
    fn members(&self, x: usize) -> Vec<usize>;

    /// Uniform draw from `S(x)`.
    fn sample_member<R: Rng + ?Sized>(&self, x: usize, rng: &mut R) -> usize {
        let members = self.members(x);
        members[rng.gen_range(0..members.len())]
    }

    /// Uniform draw from the complement of `S(x)`.
    fn sample_non_member<R: Rng + ?Sized>(&self, x: usize, rng: &mut R) -> usize {
        loop {
            let y = rng.gen_range(0..self.universe());
            if !self.contains(x, y) {
                return y;
            }
        }
    }

    /// For every input `x`, the total weight of `histogram` over `S(x)`.
    fn membership_counts(&self, histogram: &[u64]) -> Vec<u64> {
        (0..self.inputs())
            .map(|x| self.members(x).into_iter().map(|y| histogram[y]).sum())
            .collect()
    }

    /// Rejects systems whose parameters cannot support an unbiased estimator.
    fn validate(&self) -> crate::Result<()> {
        if self.subset_size() <= self.intersection() {
            return Err(crate::Error::InvalidSystem(format!(
                "degenerate system: s = {} must exceed c = {}",
                self.subset_size(),
                self.intersection()
            )));
        }
        if self.subset_size() >= self.universe() {
            return Err(crate::Error::InvalidSystem(format!(
                "subsets of size {} cover the universe of size {}",
                self.subset_size(),
                self.universe()
            )));
        }
        Ok(())
    }
}

/// Exhaustively checks `|S(x)| = s` and `|S(x) ∩ S(x')| = c` on the given
/// pairs, using `contains` as the membership oracle.
pub fn verify_pairs<S: SetSystem>(
    system: &S,
    pairs: impl IntoIterator<Item = (usize, usize)>,
) -> Result<(), String> {
    let m = system.universe();
    let row = |x: usize| -> Vec<bool> { (0..m).map(|y| system.contains(x, y)).collect() };
    for (a, b) in pairs {
        let (ra, rb) = (row(a), row(b));
        let size_a = ra.iter().filter(|v| **v).count();
        if size_a != system.subset_size() {
            return Err(format!("|S({a})| = {size_a}, expected {}", system.subset_size()));
        }
        if a != b {
            let inter = ra.iter().zip(&rb).filter(|(u, v)| **u && **v).count();
            if inter != system.intersection() {
                return Err(format!(
                    "|S({a}) ∩ S({b})| = {inter}, expected {}",
                    system.intersection()
                ));
            }
        }
    }
    Ok(())
}
