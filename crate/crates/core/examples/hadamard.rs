//! Hadamard response with fast Walsh–Hadamard decoding.

use ldp_hist::geometry::HadamardSystem;
use ldp_hist::prelude::*;

fn main() -> Result<()> {
    let k = 100;
    let eps = 1.0;
    let system = HadamardSystem::new(k)?;
    println!(
        "order {} matrix: sets of size {}, pairwise intersection {}",
        system.order(),
        system.subset_size(),
        system.intersection()
    );

    let hr = HadamardResponse::for_alphabet(k, eps)?;
    println!("P(report lands in own set) = {:.4}", hr.inside_probability());

    let items: Vec<usize> = (0..50_000).map(|i| (i * i) % 10).collect();
    let data = Dataset::new(items, k)?;
    let mut stream = SeedSpec::new(99, 0).stream();
    let estimate = hr.estimate(&data, &mut stream)?;
    let truth = data.empirical_frequencies();
    for i in 0..10 {
        println!("{i:>3} {:>8.4} {:>8.4}", truth.values()[i], estimate.values()[i]);
    }
    Ok(())
}
