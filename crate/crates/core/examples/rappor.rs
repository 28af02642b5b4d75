//! RAPPOR on a small skewed dataset: one report per user, then the unbiased
//! per-coordinate estimate next to the true frequencies.

use ldp_hist::prelude::*;

fn main() -> Result<()> {
    let k = 8;
    let eps = 2.0;
    let mut items = Vec::new();
    for (symbol, count) in [(0, 4000), (1, 2500), (2, 1500), (5, 1000), (7, 1000)] {
        items.extend(std::iter::repeat_n(symbol, count));
    }
    let data = Dataset::new(items, k)?;

    let rappor = Rappor::new(k, eps)?;
    println!(
        "k = {k}, eps = {eps}, flip probability = {:.4}",
        rappor.flip_probability()
    );

    let mut stream = SeedSpec::new(2024, 0).stream();
    let reports: Vec<_> = data
        .items()
        .iter()
        .map(|&x| rappor.randomize(x, &mut stream))
        .collect();
    let estimate = rappor.aggregate(&reports)?;
    let truth = data.empirical_frequencies();

    println!("{:>6} {:>8} {:>9}", "symbol", "true", "estimate");
    for (i, (t, e)) in truth.values().iter().zip(estimate.values()).enumerate() {
        println!("{i:>6} {t:>8.4} {e:>9.4}");
    }
    let linf = ldp_hist::metrics::error(truth.values(), estimate.values(), Norm::Linf)?;
    println!("max error = {linf:.4}");
    Ok(())
}
