mod common;

use common::*;
use ldp_hist::geometry::{verify_pairs, HadamardSystem, ProjectiveSpace, SetSystem};
use ldp_hist::prelude::*;

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Q(i128, i128);

impl Q {
    fn new(n: i128, d: i128) -> Self {
        let g = gcd(n, d).max(1) * d.signum();
        Q(n / g, d / g)
    }
    fn add(self, o: Q) -> Q {
        Q::new(self.0 * o.1 + o.0 * self.1, self.1 * o.1)
    }
    fn mul(self, o: Q) -> Q {
        Q::new(self.0 * o.0, self.1 * o.1)
    }
}

// With e^ε = w an integer, the output weights, the probability of landing in
// S(j), and the debiased expectation are all rationals; check them exactly.
fn rational_identities(m: i128, s: i128, c: i128, w: i128) {
    let d = s * w + m - s;
    let inside = Q::new(w, d);
    let outside = Q::new(1, d);
    assert_eq!(inside.mul(Q(s, 1)).add(outside.mul(Q(m - s, 1))), Q(1, 1));

    let p_own = Q::new(s * w, d);
    let p_other = Q::new(c * w + (s - c), d);
    let em1 = w - 1;
    let alpha = Q::new(em1 * s + m, em1 * (s - c));
    let beta = Q::new(-(em1 * c + s), em1 * (s - c));
    assert_eq!(alpha.mul(p_own).add(beta), Q(1, 1), "m={m} s={s} c={c} w={w}");
    assert_eq!(alpha.mul(p_other).add(beta), Q(0, 1), "m={m} s={s} c={c} w={w}");
}

#[test]
fn intersection_family_rationals() {
    for (p, t) in [(2u64, 3u32), (3, 3), (2, 4), (5, 3), (7, 3)] {
        let sp = ProjectiveSpace::new(p, t).unwrap();
        for w in [2, 3, 4, 9] {
            rational_identities(
                sp.universe() as i128,
                sp.subset_size() as i128,
                sp.intersection() as i128,
                w,
            );
        }
    }
    for k in [3, 7, 12, 100] {
        let h = HadamardSystem::new(k).unwrap();
        for w in [2, 3, 5] {
            rational_identities(h.universe() as i128, h.subset_size() as i128, h.intersection() as i128, w);
        }
    }
}

#[test]
fn library_constants_match_rationals() {
    let sp = ProjectiveSpace::new(2, 3).unwrap();
    let pgr = ProjectiveGeometryResponse::from_space(sp, 2f64.ln()).unwrap();
    let (alpha, beta) = pgr.debias_coefficients();
    assert!((alpha - 5.0).abs() < 1e-12);
    assert!((beta + 2.0).abs() < 1e-12);
    let (inside, outside) = pgr.output_weights();
    assert!((inside - 0.2).abs() < 1e-12);
    assert!((outside - 0.1).abs() < 1e-12);
}

#[test]
fn projective_members_match_brute_force() {
    for (p, t) in [(2u64, 3usize), (3, 3), (2, 4), (5, 3), (3, 4)] {
        let sp = ProjectiveSpace::new(p, t as u32).unwrap();
        let points = projective_points(p, t);
        assert_eq!(points.len(), sp.universe());
        for (x, vx) in points.iter().enumerate() {
            assert_eq!(&sp.point(x), vx);
            let want: Vec<usize> = (0..points.len())
                .filter(|&y| dot_mod(vx, &points[y], p) == 0)
                .collect();
            assert_eq!(sp.members(x), want, "p={p} t={t} x={x}");
        }
        let n = sp.inputs();
        verify_pairs(&sp, (0..n).flat_map(|a| (0..n).map(move |b| (a, b)))).unwrap();
    }
}

#[test]
fn hadamard_members_match_sylvester() {
    for k in [3, 7, 12, 31] {
        let sys = HadamardSystem::new(k).unwrap();
        let h = sylvester(sys.universe());
        for x in 0..k {
            let want: Vec<usize> = (0..sys.universe()).filter(|&y| h[x + 1][y] == 1).collect();
            assert_eq!(sys.members(x), want, "k={k} x={x}");
        }
        verify_pairs(&sys, (0..k).flat_map(|a| (0..k).map(move |b| (a, b)))).unwrap();
    }
}

#[test]
fn membership_counts_match_naive() {
    let sp = ProjectiveSpace::new(3, 4).unwrap();
    let hist: Vec<u64> = (0..sp.universe() as u64).map(|v| (v * 7919) % 13).collect();
    let want: Vec<u64> = (0..sp.inputs())
        .map(|x| sp.members(x).iter().map(|&y| hist[y]).sum())
        .collect();
    assert_eq!(sp.membership_counts(&hist), want);
}
