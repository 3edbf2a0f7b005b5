//! Positive-side residence time: binomial for small alpha, flat near one.

use antlion::analysis;
use antlion::exact::Enumerator;
use antlion::mc::{self, StorageMode};
use antlion::walk::{parse_rational, Alpha, WalkParams};

fn main() -> antlion::Result<()> {
    let p = parse_rational("3/10")?;
    let params = WalkParams::new(Alpha::exact(3, 10)?, 0.3, 12)?;
    let pmf = Enumerator::default().residence(&params)?.pmf_exact(&p);
    let tv = analysis::exact_tv_to_binomial(&pmf, &p);
    println!("alpha = 3/10, t = 12: TV distance to B(12, 7/10) = {tv}");

    let params = WalkParams::symmetric(Alpha::real(0.98)?, 100);
    let batch = mc::simulate(&params, 50_000, 3, StorageMode::FullPaths)?;
    let pmf = mc::residence_pmf(&mc::residence_times(&batch)?, 100);
    let summary = analysis::compare_residence_to_binomial(&pmf, 100, 0.5, 0.98)?;
    println!("alpha = 0.98, t = 100: TV {:.3}, condition holds: {}", summary.tv_distance, summary.condition_holds);
    for chunk in pmf.chunks(10) {
        let mass: f64 = chunk.iter().sum();
        println!("{:>6.3} {}", mass, "#".repeat((mass * 300.0) as usize));
    }
    Ok(())
}
