//! Threshold-adjuster bandit: learning a good arm and recovering after a swap.

use antlion::bandit::{self, BanditConfig};

fn main() -> antlion::Result<()> {
    let config = BanditConfig { alpha: 0.99, p_a: 0.8, p_b: 0.2, horizon: 2000, ..Default::default() };
    let trace = bandit::run_bandit(&config, 1)?;
    println!("correct selections in the last 200 steps: {:.3}", trace.correct_rate_between(1800, 2000));

    let swapped = BanditConfig { swap_at: Some(1000), ..config.clone() };
    for alpha in [0.9, 1.0] {
        let trace = bandit::run_bandit(&BanditConfig { alpha, ..swapped.clone() }, 1)?;
        println!("alpha = {alpha}: adjuster crosses zero at step {:?} after the swap", trace.zero_crossing_after(1000));
    }

    let rows = bandit::sweep_alpha(&swapped, &[0.5, 0.9, 0.99, 1.0], 20, 0, 10)?;
    bandit::sweep_table(&rows).write_csv(std::io::stdout().lock())
}
