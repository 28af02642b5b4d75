//! Splitting a large budget into several low-budget reports per user.

use ldp_hist::prelude::*;

fn main() -> Result<()> {
    let k = 200;
    let n = 2000;
    let data = Dataset::new((0..n).map(|i| i % 4).collect(), k)?;
    let truth = data.empirical_frequencies();

    for eps in [2.0, 5.0, 8.0] {
        let cfg = SplitConfig::new(eps, None)?;
        let split = Split::build(cfg, |e| HadamardResponse::for_alphabet(k, e))?;
        let plain = HadamardResponse::for_alphabet(k, eps)?;

        let mut a = SeedSpec::new(11, 0).stream();
        let mut b = SeedSpec::new(11, 1).stream();
        let e_split = split.estimate(&data, &mut a)?;
        let e_plain = plain.estimate(&data, &mut b)?;
        println!(
            "eps = {eps}: {} reports at eps' = {:.3}; max error split {:.4}, plain {:.4}",
            cfg.repetitions(),
            cfg.per_use_epsilon(),
            ldp_hist::metrics::error(truth.values(), e_split.values(), Norm::Linf)?,
            ldp_hist::metrics::error(truth.values(), e_plain.values(), Norm::Linf)?,
        );
    }
    Ok(())
}
