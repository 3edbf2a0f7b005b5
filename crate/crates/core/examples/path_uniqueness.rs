//! Rational alpha never merges paths; the golden ratio does.

use antlion::exact::Enumerator;
use antlion::walk::parse_rational;

fn main() -> antlion::Result<()> {
    let enumerator = Enumerator::default();
    for a in ["1/10", "1/3", "2/3", "9/10"] {
        let report = enumerator.uniqueness_exact(&parse_rational(a)?, 16)?;
        println!("alpha = {a:>5}: {} collisions among 2^16 paths", report.len());
    }
    let golden = (5f64.sqrt() - 1.0) / 2.0;
    let report = enumerator.uniqueness_real(golden, 3, 1e-9)?;
    for c in &report.collisions {
        let fmt = |p: &[antlion::Step]| p.iter().map(|s| s.value().to_string()).collect::<Vec<_>>().join(",");
        println!("golden ratio: ({}) and ({}) meet at {:.2e}", fmt(&c.path_a), fmt(&c.path_b), c.shared_position);
    }
    Ok(())
}
