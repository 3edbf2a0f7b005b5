//! Central gaps below alpha = 1/2 and constructive witnesses above it.

use antlion::reach::{self, ReachQuery};
use antlion::walk::parse_rational;

fn main() -> antlion::Result<()> {
    for a in [0.1, 0.3, 0.45, 0.5] {
        println!("alpha = {a}: central gap {:?}", reach::central_gap(a)?);
    }
    let two_sevenths = parse_rational("2/7")?;
    let query = ReachQuery::exact(parse_rational("3/10")?, two_sevenths.clone(), two_sevenths)?;
    let res = reach::is_eps_reachable(&query);
    println!("alpha = 0.3, r = eps = 2/7: reachable {} certificate {:?}", res.reachable, res.certificate);

    let res = reach::is_eps_reachable(&ReachQuery::new(0.5, 1.37, 1e-3)?);
    let witness: Vec<i32> = res.witness.as_deref().unwrap_or(&[]).iter().map(|s| s.value()).collect();
    println!("alpha = 0.5, r = 1.37: witness {witness:?} lands at {}", antlion::walk::replay(0.5, res.witness.as_deref().unwrap_or(&[])));

    let rows = reach::reach_sweep(&[0.2, 0.4, 0.6], &[0.0, 0.3, 0.6, 0.9], &[1e-2])?;
    reach::write_sweep_csv(&rows, std::io::stdout().lock())
}
