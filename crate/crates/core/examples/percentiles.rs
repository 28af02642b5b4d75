//! Distribution of the maximum error over repeated runs for each protocol.
//!
//! `cargo run --release --example percentiles -- [repeats]`

use ldp_hist::experiment::{simulate, ExperimentConfig};
use ldp_hist::metrics::{percentile_curve, ErrorSummary, Norm, RunErrors};
use ldp_hist::Result;

fn main() -> Result<()> {
    let repeats: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(100);
    let grid = [10.0, 25.0, 50.0, 75.0, 90.0, 100.0];
    println!("eps = 5, k = 5000, n = 2000, point mass, {repeats} runs");
    print!("{:<8}", "");
    for x in grid {
        print!("{:>10}", format!("{x}%"));
    }
    println!("{:>10}", "mean");
    for protocol in ["rappor", "ss", "hr", "pgr"] {
        let mut cfg = ExperimentConfig::new(protocol, 5.0, 5000, 2000);
        cfg.repeats = repeats;
        cfg.master_seed = 1;
        let runs: Vec<RunErrors> = simulate(&cfg)?
            .iter()
            .map(|r| r.errors())
            .collect();
        let summary = ErrorSummary::new(runs)?;
        print!("{protocol:<8}");
        for (_, v) in percentile_curve(&summary.values(Norm::Linf), &grid)? {
            print!("{v:>10.4}");
        }
        println!("{:>10.4}", summary.mean(Norm::Linf));
    }
    Ok(())
}
