//! Points and hyperplanes of the projective space over `F_p^t`.
//!
//! Points are canonical representatives (first nonzero coordinate equal to 1)
//! indexed in ascending lexicographic order. The subset of a point `v` is the
//! hyperplane `{y : <v, y> = 0}`, so `s = (p^{t-1}-1)/(p-1)` and any two
//! hyperplanes meet in `c = (p^{t-2}-1)/(p-1)` points.

use rand::Rng;

use super::{is_prime, select_prime, SetSystem};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectiveSpace {
    p: u64,
    t: u32,
    points: usize,
    inverses: Vec<u64>,
}

/// `(p^e - 1)/(p - 1)`, the number of points of a projective space of
/// vector dimension `e`.
fn projective_count(p: u64, e: u32) -> Option<u64> {
    let pow = p.checked_pow(e)?;
    if pow > i64::MAX as u64 {
        return None;
    }
    debug_assert_eq!((pow - 1) % (p - 1), 0);
    Some((pow - 1) / (p - 1))
}

fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut acc = 1u128;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

impl ProjectiveSpace {
    pub fn new(p: u64, t: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidSystem(format!("{p} is not prime")));
        }
        if t < 3 {
            return Err(Error::InvalidSystem(format!("dimension t = {t} < 3")));
        }
        let points = projective_count(p, t)
            .filter(|&n| n <= usize::MAX as u64 && n <= u32::MAX as u64)
            .ok_or_else(|| Error::Capability(format!("{p}^{t} exceeds the supported range")))?;
        if p > 1 << 24 {
            return Err(Error::Capability(format!("field size {p} too large")));
        }
        let inverses = (0..p)
            .map(|a| if a == 0 { 0 } else { mod_pow(a, p - 2, p) })
            .collect();
        Ok(Self {
            p,
            t,
            points: points as usize,
            inverses,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn point_count(&self) -> usize {
        self.points
    }

    pub fn hyperplane_size(&self) -> usize {
        projective_count(self.p, self.t - 1).unwrap() as usize
    }

    pub fn hyperplane_intersection(&self) -> usize {
        projective_count(self.p, self.t - 2).unwrap() as usize
    }

    /// Canonical representative of the point with the given index.
    pub fn point(&self, index: usize) -> Vec<u64> {
        let mut coords = vec![0u64; self.t as usize];
        write_point(self.p, index as u64, &mut coords);
        coords
    }

    /// Index of the point spanned by a nonzero vector.
    pub fn index_of(&self, coords: &[u64]) -> usize {
        let lead = coords
            .iter()
            .position(|&v| v % self.p != 0)
            .expect("zero vector has no projective point");
        let scale = self.inverses[(coords[lead] % self.p) as usize];
        point_index(self.p, coords.iter().skip(lead + 1).map(|&v| v * scale % self.p))
    }

    pub fn dot(&self, a: &[u64], b: &[u64]) -> u64 {
        a.iter().zip(b).fold(0u64, |acc, (x, y)| (acc + x * y) % self.p)
    }

    /// Lifts a point `free` of the `(t-1)`-dimensional space onto the
    /// hyperplane orthogonal to `normal`. The hyperplane coordinate at the
    /// normal's leading position is solved for; all others are copied from
    /// `free` in order.
    fn lift(&self, normal: &[u64], free: &[u64]) -> Vec<u64> {
        let lead = normal.iter().position(|&v| v != 0).unwrap();
        let mut y = Vec::with_capacity(self.t as usize);
        let mut free_iter = free.iter();
        for j in 0..self.t as usize {
            if j == lead {
                y.push(0);
            } else {
                y.push(*free_iter.next().unwrap());
            }
        }
        // normal[lead] == 1 for canonical representatives
        let rest: u64 = normal
            .iter()
            .zip(&y)
            .fold(0, |acc, (a, b)| (acc + a * b) % self.p);
        y[lead] = (self.p - rest) % self.p;
        y
    }

    fn hyperplane_point(&self, normal: &[u64], free_index: usize) -> usize {
        let mut free = vec![0u64; self.t as usize - 1];
        write_point(self.p, free_index as u64, &mut free);
        self.index_of(&self.lift(normal, &free))
    }
}

/// Writes the canonical representative with the given lexicographic index.
fn write_point(p: u64, mut index: u64, coords: &mut [u64]) {
    let t = coords.len();
    coords.iter_mut().for_each(|c| *c = 0);
    let mut block = 1u64;
    for lead in (0..t).rev() {
        if index < block {
            coords[lead] = 1;
            for slot in coords[lead + 1..].iter_mut().rev() {
                *slot = index % p;
                index /= p;
            }
            return;
        }
        index -= block;
        block *= p;
    }
    panic!("point index out of range");
}

fn point_index(p: u64, tail: impl Iterator<Item = u64>) -> usize {
    let mut offset = 0u64;
    let mut width = 0u32;
    let mut value = 0u64;
    for v in tail {
        value = value * p + v;
        width += 1;
    }
    // blocks with more leading zeros come first; the block for this lead
    // position holds p^width points and is preceded by all narrower blocks
    let mut block = 1u64;
    for _ in 0..width {
        offset += block;
        block *= p;
    }
    (offset + value) as usize
}

impl SetSystem for ProjectiveSpace {
    fn universe(&self) -> usize {
        self.points
    }

    fn inputs(&self) -> usize {
        self.points
    }

    fn subset_size(&self) -> usize {
        self.hyperplane_size()
    }

    fn intersection(&self) -> usize {
        self.hyperplane_intersection()
    }

    fn contains(&self, x: usize, y: usize) -> bool {
        self.dot(&self.point(x), &self.point(y)) == 0
    }

    fn members(&self, x: usize) -> Vec<usize> {
        let normal = self.point(x);
        let mut out: Vec<usize> = (0..self.hyperplane_size())
            .map(|i| self.hyperplane_point(&normal, i))
            .collect();
        out.sort_unstable();
        out
    }

    fn sample_member<R: Rng + ?Sized>(&self, x: usize, rng: &mut R) -> usize {
        let normal = self.point(x);
        self.hyperplane_point(&normal, rng.gen_range(0..self.hyperplane_size()))
    }

    /// Orthogonality is symmetric, so `x` is covered by `y` exactly when
    /// `y ∈ S(x)`; counts are accumulated by walking the hyperplane of every
    /// observed output.
    fn membership_counts(&self, histogram: &[u64]) -> Vec<u64> {
        let mut counts = vec![0u64; self.points];
        for (y, &h) in histogram.iter().enumerate() {
            if h == 0 {
                continue;
            }
            let normal = self.point(y);
            for i in 0..self.hyperplane_size() {
                counts[self.hyperplane_point(&normal, i)] += h;
            }
        }
        counts
    }
}

/// Output of [`build_pgr_system`].
#[derive(Debug, Clone)]
pub struct PgrBuild {
    pub space: ProjectiveSpace,
    /// Requested alphabet size; inputs `k_target..padded_k` are padding.
    pub k_target: usize,
    pub padded_k: usize,
}

/// Chooses `p = select_prime(ε)` and the smallest `t >= 3` whose point count
/// covers `k_target`.
pub fn build_pgr_system(k_target: usize, epsilon: f64) -> Result<PgrBuild> {
    if k_target < 2 {
        return Err(Error::InvalidParameter(format!("k = {k_target} < 2")));
    }
    let p = select_prime(epsilon)?;
    let mut t = 3u32;
    loop {
        let count = projective_count(p, t)
            .ok_or_else(|| Error::Capability(format!("{p}^{t} exceeds the supported range")))?;
        if count >= k_target as u64 {
            break;
        }
        t += 1;
    }
    let space = ProjectiveSpace::new(p, t)?;
    let padded_k = space.point_count();
    Ok(PgrBuild {
        space,
        k_target,
        padded_k,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlphaCheck {
    /// `alpha <= bound` verified.
    Checked { alpha: f64, bound: f64 },
    /// The prime does not satisfy `e^ε + 1 <= p <= 2(e^ε + 1)`, so the
    /// bound does not apply.
    Skipped { alpha: f64 },
}

/// Computes the debiasing scale `alpha` of projective-geometry response and
/// checks `alpha <= 2 + (2 + p)/(e^ε - 1)` when the prime is in range.
pub fn alpha_bound_check(space: &ProjectiveSpace, epsilon: f64) -> Result<AlphaCheck> {
    let em1 = epsilon.exp_m1();
    let (s, c, k) = (
        space.subset_size() as f64,
        space.intersection() as f64,
        space.universe() as f64,
    );
    let alpha = (em1 * s + k) / (em1 * (s - c));
    let p = space.p() as f64;
    let lower = epsilon.exp() + 1.0;
    if p < lower * (1.0 - 1e-12) || p > 2.0 * lower {
        log_skip(space, epsilon);
        return Ok(AlphaCheck::Skipped { alpha });
    }
    let bound = 2.0 + (2.0 + p) / em1;
    if alpha > bound * (1.0 + 1e-12) {
        return Err(Error::InvalidSystem(format!(
            "alpha = {alpha} exceeds {bound} for p = {}, t = {}",
            space.p(),
            space.t()
        )));
    }
    Ok(AlphaCheck::Checked { alpha, bound })
}

fn log_skip(space: &ProjectiveSpace, epsilon: f64) {
    eprintln!(
        "warning: p = {} is outside [e^eps + 1, 2(e^eps + 1)] for eps = {epsilon}; alpha bound not checked",
        space.p()
    );
}
