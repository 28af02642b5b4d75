//! Closed-form error curves across ε for a fixed (k, n).

use ldp_hist::bounds::{linear_grid, write_curves_csv, BoundCurve};
use ldp_hist::Result;

fn main() -> Result<()> {
    let (k, n) = (5000, 2000);
    let curves = [
        BoundCurve::Lower,
        BoundCurve::RapporSubgaussian,
        BoundCurve::PgrUpper,
        BoundCurve::RapporLocalGc { constant: 1.0 },
    ];
    let grid = linear_grid(1.0, 8.0, 8)?;
    write_curves_csv(&curves, &grid, k, n, std::io::stdout().lock())
}
