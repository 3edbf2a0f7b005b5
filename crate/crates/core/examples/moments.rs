//! Closed-form moments against exact enumeration.

use antlion::exact::enumerate_distribution;
use antlion::walk::{self, parse_rational, Alpha, WalkParams};

fn main() -> antlion::Result<()> {
    let alpha = parse_rational("2/3")?;
    let p = parse_rational("3/10")?;
    println!("{:>3} {:>12} {:>12} {:>8}", "t", "mean", "variance", "4p(1-p)t");
    for t in 1..=12 {
        let params = WalkParams::new(Alpha::from_rational(alpha.clone())?, 0.3, t)?;
        let (m, v) = enumerate_distribution(&params)?.moments_exact(&p);
        assert_eq!(m, walk::closed_form_mean_exact(&alpha, &p, t));
        assert_eq!(v, walk::closed_form_variance_exact(&alpha, &p, t));
        println!("{t:>3} {:>12.6} {:>12.6} {:>8.2}", walk::closed_form_mean(&params), walk::closed_form_variance(&params), 0.84 * t as f64);
    }
    Ok(())
}
