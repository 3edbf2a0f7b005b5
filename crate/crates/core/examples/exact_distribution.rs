//! Exact law of X_5 for alpha = 9/10: 32 equally likely positions.

use antlion::exact::Enumerator;
use antlion::walk::{Alpha, WalkParams};

fn main() -> antlion::Result<()> {
    let params = WalkParams::new(Alpha::exact(9, 10)?, 0.5, 5)?;
    let dist = Enumerator::default().distribution(&params)?;
    println!("support size {}", dist.support_size());
    for point in dist.points().take(5) {
        println!("x = {:>8.4}  S = {:>7}  P = {}", point.position, point.scaled.scaled_value, point.probability);
    }
    println!("F(0) = {}", dist.cdf(0.0));
    dist.write_csv(std::io::stdout().lock())
}
