//! Distance to the standard normal for exact and simulated walks.

use antlion::analysis::{self, GridSpec, StandardNormal};
use antlion::exact::enumerate_distribution;
use antlion::mc::{self, StorageMode};
use antlion::walk::{Alpha, WalkParams};

fn main() -> antlion::Result<()> {
    let grid = GridSpec::default();
    println!("t=15, exact:");
    for (m, n) in [(1, 10), (1, 2), (9, 10)] {
        let dist = enumerate_distribution(&WalkParams::symmetric(Alpha::exact(m, n)?, 15))?;
        let d = analysis::cvm_distance(&analysis::standardized_exact_cdf(&dist), &StandardNormal, grid);
        println!("  alpha = {m}/{n}: {:.4e}", d.distance);
    }
    let srw = analysis::cvm_distance(&analysis::simple_rw_exact_cdf(15)?, &StandardNormal, grid);
    println!("  simple walk: {:.4e}", srw.distance);

    let reference = analysis::cvm_distance(&analysis::simple_rw_exact_cdf(100)?, &StandardNormal, grid).distance;
    println!("t=100, 50000 walkers (simple walk {reference:.4e}):");
    for a in [0.3, 0.6, 0.65, 0.7, 0.75, 0.9] {
        let batch = mc::simulate(&WalkParams::symmetric(Alpha::real(a)?, 100), 50_000, 1, StorageMode::FinalsOnly)?;
        let ecdf = mc::empirical_cdf(&batch)?.scaled(analysis::standard_scale(a, 100));
        let d = analysis::cvm_distance(&ecdf, &StandardNormal, grid).distance;
        println!("  alpha = {a}: {d:.4e}  lower bound {:.4e}", analysis::cvm_lower_bound(a)?);
    }
    Ok(())
}
