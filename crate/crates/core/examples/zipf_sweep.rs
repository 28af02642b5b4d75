//! Median maximum error as the Zipf exponent moves from uniform to a
//! point mass.
//!
//! `cargo run --release --example zipf_sweep -- [repeats]`

use ldp_hist::experiment::{simulate, ExperimentConfig};
use ldp_hist::metrics::{ErrorSummary, Norm};
use ldp_hist::Result;

fn main() -> Result<()> {
    let repeats: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(50);
    let alphas = [0.0, 0.5, 1.0, 2.0, 5.0, 2000.0];
    print!("{:<8}", "alpha");
    for a in alphas {
        print!("{a:>9}");
    }
    println!();
    for protocol in ["rappor", "ss", "hr", "pgr"] {
        print!("{protocol:<8}");
        for a in alphas {
            let mut cfg = ExperimentConfig::new(protocol, 5.0, 500, 1000);
            cfg.distribution = format!("zipf({a})");
            cfg.repeats = repeats;
            cfg.master_seed = 2;
            let runs = simulate(&cfg)?
                .iter()
                .map(|r| r.errors())
                .collect();
            print!("{:>9.4}", ErrorSummary::new(runs)?.median(Norm::Linf));
        }
        println!();
    }
    Ok(())
}
