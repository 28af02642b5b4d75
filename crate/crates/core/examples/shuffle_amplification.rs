//! Local budgets that shuffling turns into a central (ε, δ) guarantee.

use ldp_hist::shuffle::{amplified_epsilon, local_epsilon_for, min_users_for, shuffled_pgr_config};
use ldp_hist::Result;

fn main() -> Result<()> {
    let delta = 1e-6;
    println!("{:>10} {:>8} {:>10} {:>10}", "n", "eps", "eps_local", "certified");
    for n in [10_000u64, 100_000, 1_000_000, 10_000_000] {
        for eps in [0.25, 0.5, 1.0] {
            match local_epsilon_for(eps, delta, n) {
                Ok(el) => {
                    let back = amplified_epsilon(el, delta, n)?;
                    println!("{n:>10} {eps:>8} {el:>10.4} {back:>10.4}");
                }
                Err(_) => println!(
                    "{n:>10} {eps:>8} {:>10} (needs n >= {})",
                    "-",
                    min_users_for(eps, delta)
                ),
            }
        }
    }

    let cfg = shuffled_pgr_config(1.0, delta, 1_000_000, 5000, 1.0)?;
    println!(
        "shuffled PGR, k = 5000, n = 1e6: local eps {:.3}, predicted error {:.3e} (constant 1)",
        cfg.budget.epsilon_local,
        cfg.predicted_error()
    );
    Ok(())
}
