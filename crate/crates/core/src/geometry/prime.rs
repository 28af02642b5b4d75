use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest prime `p` with `e^ε + 1 <= p`. By Bertrand's postulate such a
/// prime also satisfies `p <= 2(e^ε + 1)`.
pub fn select_prime(epsilon: f64) -> Result<u64> {
    if !(epsilon > 0.0) {
        return Err(Error::InvalidBudget(format!("epsilon must be > 0, got {epsilon}")));
    }
    let lower = epsilon.exp() + 1.0;
    if lower > (1u64 << 52) as f64 {
        return Err(Error::Capability(format!(
            "e^eps + 1 = {lower:e} is beyond the supported prime range"
        )));
    }
    // exp(ln 4) lands a few ulps above 4; keep the boundary inclusive.
    let mut p = (lower * (1.0 - 1e-12)).ceil() as u64;
    while !is_prime(p) {
        p += 1;
    }
    Ok(p)
}
