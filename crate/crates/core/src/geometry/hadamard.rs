//! Row family of the Sylvester–Hadamard matrix `H_K`.
//!
//! Input `x` uses row `x + 1` (row 0 is all ones and carries no signal) and
//! `S(x) = {y : H[x+1][y] = +1}`, i.e. the `y` for which `(x+1) & y` has even
//! parity. Then `M = K`, `s = K/2` and `c = K/4`.

use rand::Rng;

use super::SetSystem;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HadamardSystem {
    k: usize,
    order: usize,
}

impl HadamardSystem {
    /// `K` is the smallest power of two `>= k + 1`.
    pub fn new(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParameter(format!("k = {k} < 2")));
        }
        let order = (k + 1)
            .checked_next_power_of_two()
            .ok_or_else(|| Error::Capability(format!("k = {k} too large")))?;
        Ok(Self { k, order })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn row(&self, x: usize) -> usize {
        x + 1
    }
}

fn even_parity(v: usize) -> bool {
    v.count_ones().is_multiple_of(2)
}

impl SetSystem for HadamardSystem {
    fn universe(&self) -> usize {
        self.order
    }

    fn inputs(&self) -> usize {
        self.k
    }

    fn subset_size(&self) -> usize {
        self.order / 2
    }

    fn intersection(&self) -> usize {
        self.order / 4
    }

    fn contains(&self, x: usize, y: usize) -> bool {
        even_parity(self.row(x) & y)
    }

    fn members(&self, x: usize) -> Vec<usize> {
        (0..self.order).filter(|&y| self.contains(x, y)).collect()
    }

    // Toggling the lowest set bit of the row index flips parity, which is a
    // bijection between S(x) and its complement.
    fn sample_member<R: Rng + ?Sized>(&self, x: usize, rng: &mut R) -> usize {
        let y = rng.gen_range(0..self.order);
        let row = self.row(x);
        if even_parity(row & y) {
            y
        } else {
            y ^ (row & row.wrapping_neg())
        }
    }

    fn sample_non_member<R: Rng + ?Sized>(&self, x: usize, rng: &mut R) -> usize {
        let y = rng.gen_range(0..self.order);
        let row = self.row(x);
        if even_parity(row & y) {
            y ^ (row & row.wrapping_neg())
        } else {
            y
        }
    }

    /// Fast Walsh–Hadamard transform of the histogram: `W[r] = in(r) - out(r)`
    /// and `in + out = n`.
    fn membership_counts(&self, histogram: &[u64]) -> Vec<u64> {
        let total: i64 = histogram.iter().map(|&h| h as i64).sum();
        let mut w: Vec<i64> = histogram.iter().map(|&h| h as i64).collect();
        let mut h = 1;
        while h < w.len() {
            for block in w.chunks_mut(2 * h) {
                let (lo, hi) = block.split_at_mut(h);
                for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                    let (u, v) = (*a, *b);
                    *a = u + v;
                    *b = u - v;
                }
            }
            h *= 2;
        }
        (0..self.k)
            .map(|x| ((total + w[self.row(x)]) / 2) as u64)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::verify_pairs;
    use rand::SeedableRng;

    fn sylvester(order: usize) -> Vec<Vec<i8>> {
        let mut h = vec![vec![1i8]];
        while h.len() < order {
            let n = h.len();
            let mut next = vec![vec![0i8; 2 * n]; 2 * n];
            for i in 0..n {
                for j in 0..n {
                    next[i][j] = h[i][j];
                    next[i][j + n] = h[i][j];
                    next[i + n][j] = h[i][j];
                    next[i + n][j + n] = -h[i][j];
                }
            }
            h = next;
        }
        h
    }

    #[test]
    fn k3_matches_written_out_h4() {
        let sys = HadamardSystem::new(3).unwrap();
        assert_eq!((sys.universe(), sys.subset_size(), sys.intersection()), (4, 2, 1));
        let h = sylvester(4);
        for x in 0..3 {
            for (y, &v) in h[x + 1].iter().enumerate() {
                assert_eq!(sys.contains(x, y), v == 1);
            }
        }
    }

    #[test]
    fn k7_exhaustive() {
        let sys = HadamardSystem::new(7).unwrap();
        assert_eq!(sys.universe(), 8);
        verify_pairs(&sys, (0..7).flat_map(|a| (0..7).map(move |b| (a, b)))).unwrap();
    }

    #[test]
    fn all_ones_row_unused() {
        let sys = HadamardSystem::new(3).unwrap();
        for x in 0..3 {
            assert!(sys.members(x).len() < sys.universe());
        }
    }

    #[test]
    fn fwht_counts_match_naive() {
        let sys = HadamardSystem::new(12).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let hist: Vec<u64> = (0..sys.universe()).map(|_| rng.gen_range(0..20)).collect();
        let naive: Vec<u64> = (0..12)
            .map(|x| sys.members(x).into_iter().map(|y| hist[y]).sum())
            .collect();
        assert_eq!(sys.membership_counts(&hist), naive);
    }

    #[test]
    fn samplers_respect_membership() {
        let sys = HadamardSystem::new(12).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..2000 {
            let x = rng.gen_range(0..12);
            assert!(sys.contains(x, sys.sample_member(x, &mut rng)));
            assert!(!sys.contains(x, sys.sample_non_member(x, &mut rng)));
        }
    }
}
