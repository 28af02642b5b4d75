//! Subset selection: subset size, membership probabilities, and an
//! estimate on uniform data.

use ldp_hist::prelude::*;

fn main() -> Result<()> {
    let k = 64;
    for eps in [0.5, 1.0, 2.0, 4.0] {
        let ss = SubsetSelection::new(k, eps)?;
        let (p_true, p_other) = ss.membership_probabilities();
        println!(
            "eps = {eps}: s = {:>2}, P(x in S) = {p_true:.4}, P(j in S) = {p_other:.4}",
            ss.subset_size()
        );
    }

    let ss = SubsetSelection::new(k, 2.0)?;
    let data = Dataset::new((0..32_000).map(|i| i % k).collect(), k)?;
    let mut stream = SeedSpec::new(5, 0).stream();
    let estimate = ss.estimate(&data, &mut stream)?;
    let truth = data.empirical_frequencies();
    let linf = ldp_hist::metrics::error(truth.values(), estimate.values(), Norm::Linf)?;
    println!("uniform data, n = {}: max error = {linf:.4}", data.n());
    Ok(())
}
