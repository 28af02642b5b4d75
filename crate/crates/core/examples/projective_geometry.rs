//! Projective-geometry response: the underlying set system, the
//! debiasing constants, and an estimate with padding symbols dropped.

use ldp_hist::geometry::{alpha_bound_check, build_pgr_system, AlphaCheck};
use ldp_hist::prelude::*;

fn main() -> Result<()> {
    let k = 1000;
    let eps = 3.0;

    let build = build_pgr_system(k, eps)?;
    let space = &build.space;
    println!(
        "PG({}, {}): {} points, hyperplanes of {} points, pairwise intersections {}",
        space.t() - 1,
        space.p(),
        space.point_count(),
        space.hyperplane_size(),
        space.hyperplane_intersection()
    );
    println!("inputs {}..{} are padding", build.k_target, build.padded_k);
    match alpha_bound_check(space, eps)? {
        AlphaCheck::Checked { alpha, bound } => println!("alpha = {alpha:.4} <= {bound:.4}"),
        AlphaCheck::Skipped { alpha } => println!("alpha = {alpha:.4} (bound not applicable)"),
    }

    let pgr = ProjectiveGeometryResponse::for_alphabet(k, eps)?;
    let (alpha, beta) = pgr.debias_coefficients();
    println!("estimate = {alpha:.4} * fraction + {beta:.4}");

    let items: Vec<usize> = (0..20_000).map(|i| if i % 4 == 0 { 17 } else { i % k }).collect();
    let data = Dataset::new(items, k)?;
    let mut stream = SeedSpec::new(1, 0).stream();
    let estimate = pgr.estimate(&data, &mut stream)?.truncated(k);
    let truth = data.empirical_frequencies();
    println!(
        "symbol 17: true {:.4}, estimated {:.4}",
        truth.values()[17],
        estimate.values()[17]
    );
    let linf = ldp_hist::metrics::error(truth.values(), estimate.values(), Norm::Linf)?;
    println!("max error over {k} symbols = {linf:.4}");
    Ok(())
}
