#![allow(dead_code)]

use ldp_hist::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `E[q̂]` when one user holds `x`: every message weighted by its exact
/// probability and aggregated on its own.
pub fn single_user_expectation<P: LocalProtocol>(p: &P, x: usize) -> Vec<f64> {
    let probs = p.output_distribution(x).unwrap();
    let mut acc = vec![0.0; p.alphabet_size()];
    for (i, &w) in probs.iter().enumerate() {
        if w == 0.0 {
            continue;
        }
        let est = p.aggregate(&[p.message(i)]).unwrap();
        for (a, v) in acc.iter_mut().zip(est.values()) {
            *a += w * v;
        }
    }
    acc
}

/// `E[q̂]` for a population with frequencies `q`, by linearity of the
/// aggregate in the message histogram.
pub fn expected_estimate<P: LocalProtocol>(p: &P, q: &[f64]) -> Vec<f64> {
    let mut acc = vec![0.0; p.alphabet_size()];
    for (x, &qx) in q.iter().enumerate() {
        for (a, v) in acc.iter_mut().zip(single_user_expectation(p, x)) {
            *a += qx * v;
        }
    }
    acc
}

/// `E[q̂]` for the two-user dataset `(x1, x2)`, enumerating every pair of
/// messages.
pub fn pair_expectation<P: LocalProtocol>(p: &P, x1: usize, x2: usize) -> Vec<f64> {
    let a = p.output_distribution(x1).unwrap();
    let b = p.output_distribution(x2).unwrap();
    let mut acc = vec![0.0; p.alphabet_size()];
    for (i, &wa) in a.iter().enumerate() {
        if wa == 0.0 {
            continue;
        }
        for (j, &wb) in b.iter().enumerate() {
            if wb == 0.0 {
                continue;
            }
            let est = p.aggregate(&[p.message(i), p.message(j)]).unwrap();
            for (acc_v, v) in acc.iter_mut().zip(est.values()) {
                *acc_v += wa * wb * v;
            }
        }
    }
    acc
}

/// Random point of the simplex, reproducible per `seed`.
pub fn random_frequencies(k: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw: Vec<f64> = (0..k).map(|_| -rng.gen::<f64>().ln()).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|v| v / total).collect()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Sylvester Hadamard matrix of order `n` built by the doubling recursion.
pub fn sylvester(n: usize) -> Vec<Vec<i8>> {
    let mut h = vec![vec![1i8]];
    while h.len() < n {
        let m = h.len();
        let mut next = vec![vec![0i8; 2 * m]; 2 * m];
        for i in 0..m {
            for j in 0..m {
                next[i][j] = h[i][j];
                next[i][j + m] = h[i][j];
                next[i + m][j] = h[i][j];
                next[i + m][j + m] = -h[i][j];
            }
        }
        h = next;
    }
    h
}

/// Points of PG(t-1, p), one representative per line through the origin,
/// found by scanning all nonzero vectors and keeping the normalized ones.
pub fn projective_points(p: u64, t: usize) -> Vec<Vec<u64>> {
    let total = p.pow(t as u32);
    let mut points = Vec::new();
    for code in 1..total {
        let mut v = Vec::with_capacity(t);
        let mut c = code;
        for _ in 0..t {
            v.push(c % p);
            c /= p;
        }
        v.reverse();
        if v.iter().find(|&&x| x != 0) == Some(&1) {
            points.push(v);
        }
    }
    points.sort();
    points
}

pub fn dot_mod(a: &[u64], b: &[u64], p: u64) -> u64 {
    a.iter().zip(b).map(|(x, y)| x * y % p).sum::<u64>() % p
}
