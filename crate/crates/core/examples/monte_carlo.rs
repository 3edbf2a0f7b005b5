//! Simulated X_60 at alpha = 1/2 is close to uniform on (-2, 2).

use antlion::mc::{self, StorageMode};
use antlion::walk::{closed_form_variance, Alpha, WalkParams};

fn main() -> antlion::Result<()> {
    let params = WalkParams::symmetric(Alpha::real(0.5)?, 60);
    let batch = mc::simulate(&params, 50_000, 7, StorageMode::FinalsOnly)?;
    let ecdf = mc::empirical_cdf(&batch)?;
    let finals = batch.finals();
    let mean = finals.iter().sum::<f64>() / finals.len() as f64;
    let var = finals.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (finals.len() - 1) as f64;
    println!("sample mean {mean:.4}, variance {var:.4} (closed form {:.4})", closed_form_variance(&params));
    println!("sup distance to U(-2, 2): {:.4}", ecdf.sup_distance(|x| ((x + 2.0) / 4.0).clamp(0.0, 1.0)));

    let paths = mc::simulate(&WalkParams::symmetric(Alpha::real(0.9)?, 20), 3, 1, StorageMode::FullPaths)?;
    for w in 0..3 {
        let path = paths.path(w).unwrap();
        println!("walker {w}: {:?}", path.iter().map(|x| (x * 100.0).round() / 100.0).collect::<Vec<_>>());
    }
    Ok(())
}
