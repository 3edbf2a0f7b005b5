//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use antlion::analysis::{self, GridSpec, StandardNormal};
use antlion::bandit::{self, Arm, BanditConfig, SignalSource};
use antlion::exact::Enumerator;
use antlion::mc::{self, StorageMode};
use antlion::reach::{self, Certificate, ReachQuery};
use antlion::walk::{self, parse_exact_number, rational_to_f64, Alpha, Rational, Step, WalkParams};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

const WALKERS: usize = 50_000;
const MC_SEED: u64 = 20_240_601;

fn q(s: &str) -> Rational {
    parse_exact_number(s).unwrap()
}

fn exact_alpha(s: &str) -> Alpha {
    Alpha::from_rational(q(s)).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

const ALPHA_SET: [&str; 5] = ["1/10", "1/3", "1/2", "2/3", "9/10"];

fn uniform_support() -> Outcome {
    let half = q("1/2");
    let target = q("1/32");
    for a in ["1/10", "1/2", "9/10"] {
        let params = WalkParams::new(exact_alpha(a), 0.5, 5).map_err(err)?;
        let d = Enumerator::default().distribution(&params).map_err(err)?;
        ensure(d.support_size() == 32, || format!("alpha={a}: {} points", d.support_size()))?;
        for i in 0..d.len() {
            ensure(d.probability_exact(i, &half) == target, || format!("alpha={a}: point {i} mass differs"))?;
        }
    }
    Ok("32 points of mass 1/32 for alpha in {1/10, 1/2, 9/10}".into())
}

fn moment_oracle() -> Outcome {
    let enumerator = Enumerator::default();
    let mut checked = 0;
    let mut worst_real = 0.0f64;
    for a in ALPHA_SET {
        let alpha = q(a);
        for p in ["0", "0.3", "0.5", "0.7", "1"] {
            let p_exact = q(p);
            let p_real = rational_to_f64(&p_exact);
            for t in 1..=15 {
                let params = WalkParams::new(exact_alpha(a), p_real, t).map_err(err)?;
                let d = enumerator.distribution(&params).map_err(err)?;
                let (m, v) = d.moments_exact(&p_exact);
                ensure(m == walk::closed_form_mean_exact(&alpha, &p_exact, t), || format!("mean alpha={a} p={p} t={t}"))?;
                ensure(v == walk::closed_form_variance_exact(&alpha, &p_exact, t), || {
                    format!("variance alpha={a} p={p} t={t}")
                })?;
                let (mf, vf) = d.moments();
                let dm = (mf - walk::closed_form_mean(&params)).abs();
                let dv = (vf - walk::closed_form_variance(&params)).abs();
                worst_real = worst_real.max(dm).max(dv);
                ensure(dm <= 1e-12 && dv <= 1e-12, || format!("real p alpha={a} p={p} t={t}: {dm:e} {dv:e}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} cases exact; worst real-p deviation {worst_real:e}"))
}

fn path_uniqueness() -> Outcome {
    let enumerator = Enumerator::default();
    for a in ALPHA_SET {
        for t in 1..=16 {
            let d = enumerator.distribution(&WalkParams::symmetric(exact_alpha(a), t)).map_err(err)?;
            ensure(d.support_size() == 1 << t, || format!("alpha={a} t={t}: support {}", d.support_size()))?;
        }
    }
    let golden = (5f64.sqrt() - 1.0) / 2.0;
    let report = enumerator.uniqueness_real(golden, 3, 1e-9).map_err(err)?;
    let a = [Step::Plus, Step::Plus, Step::Minus];
    let b = [Step::Minus, Step::Minus, Step::Plus];
    ensure(report.contains_pair(&a, &b), || format!("golden collision missing: {:?}", report.collisions))?;
    let c = report.collisions.iter().find(|c| c.path_a == a || c.path_b == a).unwrap();
    ensure(c.shared_position.abs() < 1e-9, || format!("shared position {}", c.shared_position))?;
    let shorter = enumerator.uniqueness_real(golden, 2, 1e-9).map_err(err)?;
    Ok(format!(
        "support 2^t for t<=16; golden ratio collides at t=3 at {:.1e} ({} collision(s) at t=2)",
        c.shared_position,
        shorter.len()
    ))
}

fn bounds_and_boundary() -> Outcome {
    let one = Rational::one();
    for a in ALPHA_SET {
        let alpha = q(a);
        let d = Enumerator::default().distribution(&WalkParams::symmetric(exact_alpha(a), 20)).map_err(err)?;
        let (lo, hi) = d.extremes_exact().ok_or("empty support")?;
        let edge = (&one - num_traits::pow(alpha.clone(), 20)) / (&one - &alpha);
        ensure(hi == edge && lo == -edge.clone(), || format!("alpha={a}: extremes differ"))?;
    }
    for a in [0.5, 0.7, 0.9] {
        let r = 1.0 / (1.0 - a) - 1e-6;
        let res = reach::is_eps_reachable(&ReachQuery::new(a, r, 1e-3).map_err(err)?);
        let w = res.witness.as_deref().unwrap_or(&[]);
        ensure(res.reachable && reach::witness_lands(a, r, 1e-3, w), || format!("alpha={a}: {res:?}"))?;
    }
    Ok("extremes +-(1-a^20)/(1-a) exact; upper edge reachable for alpha in {0.5, 0.7, 0.9}".into())
}

fn phase_transition() -> Outcome {
    let one = Rational::one();
    let two = &one + &one;
    for a in ["0.1", "0.2", "0.3", "0.4"] {
        let alpha = q(a);
        let r = (&one - &two * &alpha) / (&two * (&one - &alpha));
        let res = reach::is_eps_reachable(&ReachQuery::exact(alpha.clone(), r.clone(), r.clone()).map_err(err)?);
        ensure(!res.reachable && res.decided, || format!("alpha={a}: {res:?}"))?;
        match &res.certificate {
            Some(Certificate::Gap { lower, upper, .. }) => {
                let rf = rational_to_f64(&r);
                ensure(*lower < rf && rf < *upper, || format!("alpha={a}: r outside certified gap"))?;
            }
            other => return Err(format!("alpha={a}: certificate {other:?}")),
        }
        let d = Enumerator::default().distribution(&WalkParams::symmetric(exact_alpha(a), 16)).map_err(err)?;
        let near = (0..d.len()).filter(|&i| (d.position_exact(i) - &r).abs() < r).count();
        ensure(near == 0, || format!("alpha={a}: {near} support points within epsilon"))?;
    }
    let eps = 2f64.powi(-12);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(MC_SEED);
    let mut deepest = 0;
    for a in [0.5, 0.6, 0.7, 0.8, 0.9] {
        let b = 1.0 / (1.0 - a);
        for _ in 0..200 {
            let r = rng.random_range(-b..b);
            let res = reach::is_eps_reachable(&ReachQuery::new(a, r, eps).map_err(err)?);
            let w = res.witness.as_deref().unwrap_or(&[]);
            ensure(res.reachable && reach::witness_lands(a, r, eps, w), || format!("alpha={a} r={r}: {res:?}"))?;
            deepest = deepest.max(w.len());
        }
    }
    Ok(format!("gaps certified for alpha<1/2; 1000 targets reached, longest witness {deepest}"))
}

fn residence_law() -> Outcome {
    let enumerator = Enumerator::default();
    let check = |a: &str, p: &str, t: usize| -> Result<(), String> {
        let p_exact = q(p);
        let params = WalkParams::new(exact_alpha(a), rational_to_f64(&p_exact), t).map_err(err)?;
        let counts = enumerator.residence(&params).map_err(err)?;
        let tv = analysis::exact_tv_to_binomial(&counts.pmf_exact(&p_exact), &p_exact);
        ensure(analysis::residence_condition(rational_to_f64(&q(a)), t), || format!("condition fails alpha={a} t={t}"))?;
        ensure(tv.is_zero(), || format!("alpha={a} p={p} t={t}: TV={}", rational_to_f64(&tv)))
    };
    let mut cases = 0;
    for a in ["1/10", "3/10", "1/2"] {
        for p in ["3/10", "1/2", "7/10"] {
            for t in 1..=14 {
                check(a, p, t)?;
                cases += 1;
            }
        }
    }
    let t_max_06 = (1..).take_while(|&t| 0.6f64.powi(t) - 2.0 * 0.6 + 1.0 > 0.0).last().unwrap() as usize;
    for p in ["3/10", "1/2", "7/10"] {
        check("9/10", p, 2)?;
        for t in 1..=t_max_06 {
            check("3/5", p, t)?;
            cases += 1;
        }
        cases += 1;
    }
    Ok(format!("TV = 0 exactly in {cases} cases (alpha=0.6 up to t={t_max_06})"))
}

fn histogram_ratio(alpha: f64) -> Result<f64, String> {
    let params = WalkParams::new(Alpha::real(alpha).map_err(err)?, 0.5, 100).map_err(err)?;
    let batch = mc::simulate(&params, WALKERS, MC_SEED, StorageMode::FullPaths).map_err(err)?;
    let pmf = mc::residence_pmf(&mc::residence_times(&batch).map_err(err)?, 100);
    let window = &pmf[10..=90];
    let max = window.iter().cloned().fold(f64::MIN, f64::max);
    let min = window.iter().cloned().fold(f64::MAX, f64::min);
    Ok(if min > 0.0 { max / min } else { f64::INFINITY })
}

fn quasi_uniform_residence() -> Outcome {
    let flat = histogram_ratio(0.98)?;
    let peaked = histogram_ratio(0.5)?;
    ensure(flat < 3.0, || format!("alpha=0.98 ratio {flat}"))?;
    ensure(peaked > 10.0, || format!("alpha=0.5 ratio {peaked}"))?;
    Ok(format!("max/min over T+ in [10,90]: {flat:.3} at alpha=0.98, {peaked:.3e} at alpha=0.5"))
}

fn exact_arw_distance(a: &str, t: usize) -> Result<f64, String> {
    let d = Enumerator::default().distribution(&WalkParams::symmetric(exact_alpha(a), t)).map_err(err)?;
    Ok(analysis::cvm_distance(&analysis::standardized_exact_cdf(&d), &StandardNormal, GridSpec::default()).distance)
}

fn exact_srw_distance(t: usize) -> Result<f64, String> {
    Ok(analysis::cvm_distance(&analysis::simple_rw_exact_cdf(t).map_err(err)?, &StandardNormal, GridSpec::default()).distance)
}

fn mc_arw_distance(alpha: f64, t: usize) -> Result<f64, String> {
    let params = WalkParams::symmetric(Alpha::real(alpha).map_err(err)?, t);
    let batch = mc::simulate(&params, WALKERS, MC_SEED, StorageMode::FinalsOnly).map_err(err)?;
    let e = mc::empirical_cdf(&batch).map_err(err)?.scaled(analysis::standard_scale(alpha, t));
    Ok(analysis::cvm_distance(&e, &StandardNormal, GridSpec::default()).distance)
}

fn early_ordering() -> Outcome {
    let d9 = exact_arw_distance("9/10", 15)?;
    let d5 = exact_arw_distance("1/2", 15)?;
    let ds = exact_srw_distance(15)?;
    ensure(d9 < d5 && d9 < ds, || format!("d(0.9)={d9} d(0.5)={d5} d(R)={ds}"))?;
    Ok(format!("d(A^0.9)={d9:.3e} < d(A^0.5)={d5:.3e}, d(R)={ds:.3e}"))
}

fn alpha_sweep() -> Outcome {
    let coarse: Vec<f64> = (1..=9).map(|i| i as f64 / 10.0).collect();
    let dc: Vec<f64> = coarse.iter().map(|&a| mc_arw_distance(a, 100)).collect::<Result<_, _>>()?;
    let violations: Vec<(usize, f64)> = dc
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[1] > w[0])
        .map(|(i, w)| (i, (w[1] - w[0]) / w[0]))
        .collect();
    ensure(violations.len() <= 1 && violations.iter().all(|v| v.1 <= 0.10), || {
        format!("monotonicity violations {violations:?} in {dc:?}")
    })?;
    let reference = exact_srw_distance(100)?;
    let fine: Vec<f64> = (1..=99).map(|i| i as f64 / 100.0).collect();
    let df: Vec<f64> = fine.iter().map(|&a| mc_arw_distance(a, 100)).collect::<Result<_, _>>()?;
    let idx = df.iter().position(|&d| d < reference).ok_or("no crossing in (0, 1)")?;
    ensure(idx > 0, || "sweep starts below the reference".into())?;
    let (a0, a1, d0, d1) = (fine[idx - 1], fine[idx], df[idx - 1], df[idx]);
    let crossing = a0 + (a1 - a0) * (d0 - reference) / (d0 - d1);
    ensure((0.61..=0.75).contains(&crossing), || format!("crossing at {crossing}"))?;
    Ok(format!("{} small violation(s); crossing with d(R_100)={reference:.3e} at alpha={crossing:.3}", violations.len()))
}

fn non_convergence() -> Outcome {
    for a in ["3/10", "1/2", "9/10"] {
        let af = rational_to_f64(&q(a));
        let floor = analysis::standardized_support_floor(af);
        for t in 1..=20 {
            let d = Enumerator::default().distribution(&WalkParams::symmetric(exact_alpha(a), t)).map_err(err)?;
            let lowest = d.positions()[0] * analysis::standard_scale(af, t);
            ensure(lowest > floor, || format!("alpha={a} t={t}: {lowest} <= {floor}"))?;
        }
    }
    let d60 = mc_arw_distance(0.5, 60)?;
    let d100 = mc_arw_distance(0.5, 100)?;
    ensure((d100 - d60).abs() <= 0.1 * d60, || format!("d(A_60)={d60} d(A_100)={d100}"))?;
    let rs: Vec<f64> = (15..=60).map(exact_srw_distance).collect::<Result<_, _>>()?;
    if let Some(i) = rs.windows(2).position(|w| w[1] >= w[0]) {
        return Err(format!("d(R_t) does not decrease at t={}", 16 + i));
    }
    let (r15, r60) = (rs[0], rs[45]);
    let lower = analysis::cvm_lower_bound(0.5).map_err(err)?;
    Ok(format!(
        "support floors hold; d(A_60)={d60:.4e}, d(A_100)={d100:.4e} (tail bound {lower:.2e}); d(R_t) strictly decreasing on 15..60, {r15:.3e} to {r60:.3e}"
    ))
}

fn uniform_limit() -> Outcome {
    let params = WalkParams::symmetric(Alpha::real(0.5).map_err(err)?, 60);
    let batch = mc::simulate(&params, WALKERS, MC_SEED, StorageMode::FinalsOnly).map_err(err)?;
    let e = mc::empirical_cdf(&batch).map_err(err)?;
    let sup = e.sup_distance(|x| ((x + 2.0) / 4.0).clamp(0.0, 1.0));
    ensure(sup <= 0.015, || format!("sup distance {sup}"))?;
    Ok(format!("sup |F_n - U(-2,2)| = {sup:.4}"))
}

fn bandit_reduction() -> Outcome {
    let horizon = 100_000;
    let config = BanditConfig {
        k: 1.0,
        alpha: 1.0,
        delta: 1.0,
        omega: 1.0,
        p_a: 0.5,
        p_b: 0.5,
        horizon,
        signal: SignalSource::UniformInt { lo: -5, hi: 5 },
        swap_at: None,
    };
    let trace = bandit::run_bandit(&config, MC_SEED).map_err(err)?;
    let mut prev = 0.0;
    for s in &trace.steps {
        ensure(s.x.fract() == 0.0 && (s.x - prev).abs() == 1.0 && s.theta == s.x, || format!("step {}", s.step))?;
        prev = s.x;
    }
    // the selection frequency of one run is an occupation time of a recurrent
    // walk, so its spread is measured across independent replicates
    let reps = 32;
    let freqs: Vec<f64> = (0..reps)
        .map(|i| bandit::run_bandit(&config, MC_SEED + 1 + i).map(|t| t.arm_a_frequency()))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let mean = freqs.iter().sum::<f64>() / reps as f64;
    let sd = (freqs.iter().map(|f| (f - mean).powi(2)).sum::<f64>() / (reps - 1) as f64).sqrt();
    let single = trace.arm_a_frequency();
    let se = sd / (reps as f64).sqrt();
    ensure((single - 0.5).abs() <= 3.0 * sd, || format!("single run {single} vs sd {sd}"))?;
    ensure((mean - 0.5).abs() <= 3.0 * se, || format!("mean {mean} vs se {se}"))?;
    let a_count = trace.steps.iter().filter(|s| s.arm == Arm::A).count();
    Ok(format!(
        "unit integer steps over {horizon}; arm A in {a_count} steps ({single:.3}); replicate mean {mean:.3}, sd {sd:.3}"
    ))
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "uniform support at t=5", budget: Duration::from_secs(1), run: uniform_support },
        Criterion { id: 2, name: "moment oracle", budget: Duration::from_secs(30), run: moment_oracle },
        Criterion { id: 3, name: "path uniqueness", budget: Duration::from_secs(60), run: path_uniqueness },
        Criterion { id: 4, name: "bounds and boundary reachability", budget: Duration::from_secs(10), run: bounds_and_boundary },
        Criterion { id: 5, name: "phase transition", budget: Duration::from_secs(120), run: phase_transition },
        Criterion { id: 6, name: "residence-time law", budget: Duration::from_secs(60), run: residence_law },
        Criterion { id: 7, name: "quasi-uniform residence", budget: Duration::from_secs(60), run: quasi_uniform_residence },
        Criterion { id: 8, name: "CvM early-time ordering", budget: Duration::from_secs(60), run: early_ordering },
        Criterion { id: 9, name: "CvM alpha sweep and crossing", budget: Duration::from_secs(300), run: alpha_sweep },
        Criterion { id: 10, name: "non-convergence witness", budget: Duration::from_secs(300), run: non_convergence },
        Criterion { id: 11, name: "uniform limit at alpha=1/2", budget: Duration::from_secs(10), run: uniform_limit },
        Criterion { id: 12, name: "bandit simple-walk reduction", budget: Duration::from_secs(10), run: bandit_reduction },
    ];
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for c in criteria.iter().filter(|c| filter.is_empty() || filter.contains(&c.id)) {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > c.budget => Err(format!("{detail}; over budget {:?}", c.budget)),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS [{:>2}] {}: {} ({:.2}s)", c.id, c.name, detail, elapsed.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL [{:>2}] {}: {} ({:.2}s)", c.id, c.name, why, elapsed.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
