//! Standardization, CDF evaluators, the fixed-grid Cramér–von Mises
//! distance, and residence-time comparisons against the binomial law.

use std::io::Write;

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::exact::ExactDistribution;
use crate::mc::Ecdf;
use crate::table::Table;
use crate::walk::Rational;

/// A point-evaluable, right-continuous cumulative distribution function.
pub trait Cdf {
    fn cdf(&self, x: f64) -> f64;
}

impl<F: Fn(f64) -> f64> Cdf for F {
    fn cdf(&self, x: f64) -> f64 {
        self(x)
    }
}

impl Cdf for Ecdf {
    fn cdf(&self, x: f64) -> f64 {
        self.eval(x)
    }
}

impl Cdf for ExactDistribution {
    fn cdf(&self, x: f64) -> f64 {
        ExactDistribution::cdf(self, x)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct StandardNormal;

impl Cdf for StandardNormal {
    fn cdf(&self, x: f64) -> f64 {
        normal_cdf(x)
    }
}

/// CDF of a finite discrete law given by sorted atoms and cumulative masses.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteCdf {
    atoms: Vec<f64>,
    cumulative: Vec<f64>,
}

impl DiscreteCdf {
    /// Builds from `(atom, mass)` pairs in any order.
    pub fn new(mut masses: Vec<(f64, f64)>) -> Result<Self> {
        if masses.is_empty() {
            return invalid("discrete law needs at least one atom");
        }
        masses.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut acc = 0.0;
        let (atoms, cumulative) = masses
            .into_iter()
            .map(|(x, m)| {
                acc += m;
                (x, acc)
            })
            .unzip();
        Ok(DiscreteCdf { atoms, cumulative })
    }

    fn from_sorted(atoms: Vec<f64>, cumulative: Vec<f64>) -> Self {
        DiscreteCdf { atoms, cumulative }
    }

    pub fn atoms(&self) -> &[f64] {
        &self.atoms
    }
}

impl Cdf for DiscreteCdf {
    fn cdf(&self, x: f64) -> f64 {
        let idx = self.atoms.partition_point(|&v| v <= x);
        if idx == 0 {
            0.0
        } else if idx == self.atoms.len() {
            1.0
        } else {
            self.cumulative[idx - 1]
        }
    }
}

/// `sqrt((1 - alpha^2) / (1 - alpha^(2t)))`, the factor giving the symmetric
/// walk unit variance.
pub fn arw_scale(alpha: f64, t: usize) -> f64 {
    ((1.0 - alpha * alpha) / (1.0 - alpha.powi(2 * t as i32))).sqrt()
}

/// Multiplier taking `X_t` to unit variance at `p = 1/2`: [`arw_scale`] for
/// `alpha < 1`, `1/sqrt t` at `alpha = 1`, and 1 at `t = 0`.
pub fn standard_scale(alpha: f64, t: usize) -> f64 {
    if t == 0 {
        1.0
    } else if alpha >= 1.0 {
        1.0 / (t as f64).sqrt()
    } else {
        arw_scale(alpha, t)
    }
}

pub fn standardize_arw(x: f64, alpha: f64, t: usize) -> f64 {
    arw_scale(alpha, t) * x
}

pub fn standardize_srw(s: f64, t: usize) -> f64 {
    s / (t as f64).sqrt()
}

/// Lower edge of the standardized support: `-sqrt((1 + alpha)/(1 - alpha))`.
pub fn standardized_support_floor(alpha: f64) -> f64 {
    -((1.0 + alpha) / (1.0 - alpha)).sqrt()
}

/// Standard normal CDF, `0.5 * erfc(-x / sqrt 2)` with the fdlibm `erfc`.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

/// CDF of `A_t` from an exact enumeration.
pub fn standardized_exact_cdf(dist: &ExactDistribution) -> DiscreteCdf {
    let c = standard_scale(crate::walk::rational_to_f64(dist.alpha()), dist.t());
    let atoms = dist.positions().iter().map(|x| x * c).collect();
    let cumulative = (0..dist.len()).map(|i| dist.cdf(dist.positions()[i])).collect();
    DiscreteCdf::from_sorted(atoms, cumulative)
}

/// Largest horizon accepted by [`simple_rw_exact_cdf`].
pub const SIMPLE_RW_EXACT_MAX_T: usize = 1000;

/// Exact CDF of `R_t = S_t / sqrt t` for the symmetric simple walk.
pub fn simple_rw_exact_cdf(t: usize) -> Result<DiscreteCdf> {
    if t == 0 || t > SIMPLE_RW_EXACT_MAX_T {
        return invalid(format!("simple walk horizon must lie in 1..={SIMPLE_RW_EXACT_MAX_T}"));
    }
    let total = BigUint::one() << t;
    let mut coef = BigUint::one();
    let mut running = BigUint::zero();
    let mut atoms = Vec::with_capacity(t + 1);
    let mut cumulative = Vec::with_capacity(t + 1);
    for k in 0..=t {
        running += &coef;
        atoms.push(standardize_srw(2.0 * k as f64 - t as f64, t));
        cumulative.push(crate::walk::rational_to_f64(&Rational::new(running.clone().into(), total.clone().into())));
        coef = coef * BigUint::from(t - k) / BigUint::from(k + 1);
    }
    Ok(DiscreteCdf::from_sorted(atoms, cumulative))
}

/// Evaluation grid `u_k = m1 + (m2 - m1) k / n`, `k = 1..=n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GridSpec {
    pub m1: f64,
    pub m2: f64,
    pub n: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { m1: -3.0, m2: 3.0, n: 600 }
    }
}

impl GridSpec {
    pub fn new(m1: f64, m2: f64, n: usize) -> Result<Self> {
        if m1.is_nan() || m2.is_nan() || m1 >= m2 || n == 0 {
            return invalid(format!("grid needs m1 < m2 and n >= 1, got ({m1}, {m2}, {n})"));
        }
        Ok(GridSpec { m1, m2, n })
    }

    pub fn width(&self) -> f64 {
        (self.m2 - self.m1) / self.n as f64
    }

    pub fn point(&self, k: usize) -> f64 {
        self.m1 + (self.m2 - self.m1) * k as f64 / self.n as f64
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (1..=self.n).map(move |k| self.point(k))
    }

    pub fn tabulate<C: Cdf + ?Sized>(&self, cdf: &C) -> CdfGrid {
        CdfGrid { grid: *self, values: self.points().map(|u| cdf.cdf(u)).collect() }
    }
}

/// A CDF tabulated on a [`GridSpec`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CdfGrid {
    pub grid: GridSpec,
    pub values: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CvmResult {
    pub distance: f64,
    pub grid: GridSpec,
    pub label_u: String,
    pub label_v: String,
}

/// `((m2 - m1)/n) * sum_k (F_U(u_k) - F_V(u_k))^2`, summed in grid order.
pub fn cvm_distance<U, V>(cdf_u: &U, cdf_v: &V, grid: GridSpec) -> CvmResult
where
    U: Cdf + ?Sized,
    V: Cdf + ?Sized,
{
    cvm_distance_labeled(cdf_u, "U", cdf_v, "V", grid)
}

pub fn cvm_distance_labeled<U, V>(cdf_u: &U, label_u: &str, cdf_v: &V, label_v: &str, grid: GridSpec) -> CvmResult
where
    U: Cdf + ?Sized,
    V: Cdf + ?Sized,
{
    let sum: f64 = grid
        .points()
        .map(|u| {
            let d = cdf_u.cdf(u) - cdf_v.cdf(u);
            d * d
        })
        .sum();
    CvmResult { distance: grid.width() * sum, grid, label_u: label_u.into(), label_v: label_v.into() }
}

/// Grid tabulation of two CDFs with the squared difference per point.
pub fn cvm_table<U, V>(cdf_u: &U, cdf_v: &V, grid: GridSpec) -> Table
where
    U: Cdf + ?Sized,
    V: Cdf + ?Sized,
{
    let mut table = Table::new(["u_k", "F_U", "F_V", "squared_difference"]);
    for u in grid.points() {
        let (a, b) = (cdf_u.cdf(u), cdf_v.cdf(u));
        table.push_row([u.to_string(), a.to_string(), b.to_string(), ((a - b) * (a - b)).to_string()]);
    }
    table
}

/// `C(t, k) q^k (1 - q)^(t - k)`.
pub fn binomial_pmf(t: usize, q: f64, k: usize) -> f64 {
    if k > t {
        return 0.0;
    }
    let k_small = k.min(t - k);
    let mut coef = 1.0;
    for i in 1..=k_small {
        coef *= (t - k_small + i) as f64 / i as f64;
    }
    coef * q.powi(k as i32) * (1.0 - q).powi((t - k) as i32)
}

/// CDF of `B(t, q)` on the integers `0..=t`.
pub fn binomial_cdf(t: usize, q: f64) -> DiscreteCdf {
    let mut acc = 0.0;
    let (atoms, cumulative) = (0..=t)
        .map(|k| {
            acc += binomial_pmf(t, q, k);
            (k as f64, acc.min(1.0))
        })
        .unzip();
    DiscreteCdf::from_sorted(atoms, cumulative)
}

pub fn binomial_pmf_exact(t: usize, q: &Rational, k: usize) -> Rational {
    if k > t {
        return Rational::zero();
    }
    let c = num_integer::binomial(BigUint::from(t), BigUint::from(k));
    Rational::from_integer(c.into())
        * num_traits::pow(q.clone(), k)
        * num_traits::pow(Rational::one() - q, t - k)
}

/// Sufficient condition under which `T_+(t)` is exactly `B(t, 1 - p)`.
pub fn residence_condition(alpha: f64, t: usize) -> bool {
    alpha <= 0.5 || alpha.powi(t as i32) - 2.0 * alpha + 1.0 > 0.0
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidenceSummary {
    pub t: usize,
    pub pmf: Vec<f64>,
    /// Success probability of the reference binomial, `1 - p`.
    pub binomial_q: f64,
    pub reference: Vec<f64>,
    pub tv_distance: f64,
    pub condition_holds: bool,
}

impl ResidenceSummary {
    pub fn to_table(&self) -> Table {
        let mut table = Table::new(["t_plus", "pmf", "binomial", "tv_distance", "condition"]);
        for (k, (a, b)) in self.pmf.iter().zip(&self.reference).enumerate() {
            table.push_row([
                k.to_string(),
                a.to_string(),
                b.to_string(),
                self.tv_distance.to_string(),
                self.condition_holds.to_string(),
            ]);
        }
        table
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        self.to_table().write_csv(w)
    }
}

pub fn compare_residence_to_binomial(pmf: &[f64], t: usize, p: f64, alpha: f64) -> Result<ResidenceSummary> {
    if pmf.len() != t + 1 {
        return invalid(format!("residence pmf must have t + 1 = {} entries, got {}", t + 1, pmf.len()));
    }
    let q = 1.0 - p;
    let reference: Vec<f64> = (0..=t).map(|k| binomial_pmf(t, q, k)).collect();
    let tv = 0.5 * pmf.iter().zip(&reference).map(|(a, b)| (a - b).abs()).sum::<f64>();
    Ok(ResidenceSummary {
        t,
        pmf: pmf.to_vec(),
        binomial_q: q,
        reference,
        tv_distance: tv.min(1.0),
        condition_holds: residence_condition(alpha, t),
    })
}

/// Total-variation distance to `B(t, 1 - p)` in exact arithmetic.
pub fn exact_tv_to_binomial(pmf: &[Rational], p: &Rational) -> Rational {
    let t = pmf.len() - 1;
    let q = Rational::one() - p;
    let sum = pmf
        .iter()
        .enumerate()
        .map(|(k, v)| (v - binomial_pmf_exact(t, &q, k)).abs())
        .fold(Rational::zero(), |a, b| a + b);
    sum / Rational::from_integer(2.into())
}

#[allow(clippy::too_many_arguments)]
fn trapezoid_rec<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let fm = f(m);
    let left = 0.5 * (m - a) * (fa + fm);
    let right = 0.5 * (b - m) * (fm + fb);
    let err = left + right - whole;
    if depth == 0 || err.abs() <= 3.0 * tol {
        return left + right + err / 3.0;
    }
    trapezoid_rec(f, a, m, fa, fm, left, 0.5 * tol, depth - 1)
        + trapezoid_rec(f, m, b, fm, fb, right, 0.5 * tol, depth - 1)
}

/// Adaptive trapezoid rule with interval bisection and a Richardson
/// correction on accepted panels.
pub fn adaptive_trapezoid<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    // seed with a coarse partition so narrow features are not skipped
    let panels = 64;
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|i| {
            let (x0, x1) = (a + i as f64 * h, a + (i + 1) as f64 * h);
            let (f0, f1) = (f(x0), f(x1));
            trapezoid_rec(&f, x0, x1, f0, f1, 0.5 * h * (f0 + f1), tol / panels as f64, 40)
        })
        .sum()
}

/// Left edge of the integration range; `Phi(-40)^2` is far below any tolerance.
const TAIL_CUTOFF: f64 = -40.0;

/// `2 * integral_{-inf}^{limit} Phi(u)^2 du`.
pub fn tail_cvm_bound(limit: f64) -> f64 {
    2.0 * adaptive_trapezoid(|u| normal_cdf(u).powi(2), TAIL_CUTOFF, limit, 1e-12)
}

/// `2 * integral_{-inf}^{-1/sqrt(1-alpha)} Phi(u)^2 du`.
pub fn cvm_lower_bound(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return invalid("alpha must lie in (0, 1)");
    }
    Ok(tail_cvm_bound(-1.0 / (1.0 - alpha).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::enumerate_distribution;
    use crate::walk::{Alpha, WalkParams};
    use proptest::prelude::*;

    fn q(m: i64, n: i64) -> Rational {
        Rational::new(m.into(), n.into())
    }

    /// Composite Simpson integration of the normal density.
    fn simpson_phi(a: f64, b: f64, n: usize) -> f64 {
        let h = (b - a) / n as f64;
        let pdf = |x: f64| (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt();
        let mut s = pdf(a) + pdf(b);
        for i in 1..n {
            let x = a + i as f64 * h;
            s += if i % 2 == 1 { 4.0 } else { 2.0 } * pdf(x);
        }
        s * h / 3.0
    }

    #[test]
    fn standardization_examples() {
        assert_eq!(standardize_arw(0.0, 0.4, 9), 0.0);
        assert!((standardize_arw(1.0, 0.5, 1) - 1.0).abs() < 1e-15);
        assert_eq!(standardize_srw(0.0, 7), 0.0);
        assert_eq!(standardize_srw(2.0, 4), 1.0);
        assert_eq!(standardize_srw(-10.0, 100), -1.0);
    }

    #[test]
    fn standardized_variance_is_one_exactly() {
        let t = 12;
        let d = enumerate_distribution(&WalkParams::new(Alpha::exact(9, 10).unwrap(), 0.5, t).unwrap()).unwrap();
        let (_, var) = d.moments_exact(&q(1, 2));
        // c^2 = (1 - a^2)/(1 - a^(2t)) in rationals
        let a = q(9, 10);
        let one = Rational::one();
        let c2 = (&one - &a * &a) / (&one - num_traits::pow(a, 2 * t));
        assert_eq!(var * c2, one);
    }

    #[test]
    fn normal_cdf_values() {
        assert_eq!(normal_cdf(0.0), 0.5);
        let oracle = 0.5 + simpson_phi(0.0, 1.96, 20_000);
        assert!((normal_cdf(1.96) - oracle).abs() < 1e-12);
        assert!((normal_cdf(1.96) - 0.9750021048517795).abs() < 1e-7);
        assert!(normal_cdf(-8.0) < 1e-15);
        let tail_bound = (-32.0f64).exp() / (2.0 * std::f64::consts::PI).sqrt() / 8.0;
        assert!(normal_cdf(-8.0) <= tail_bound);
        for x in [-7.5, -3.0, -1.0, 0.3, 2.2, 5.0] {
            let o = 0.5 + simpson_phi(0.0, x, 40_000);
            assert!((normal_cdf(x) - o).abs() < 1e-10, "x={x}");
        }
    }

    #[test]
    fn identical_cdfs_have_zero_distance() {
        let r = cvm_distance(&StandardNormal, &StandardNormal, GridSpec::default());
        assert_eq!(r.distance, 0.0);
        let e = simple_rw_exact_cdf(9).unwrap();
        assert_eq!(cvm_distance(&e, &e, GridSpec::default()).distance, 0.0);
    }

    #[test]
    fn cvm_hand_computed() {
        // step at 0 versus 0.5 everywhere: (0.5)^2 on every grid point, width 1
        let step = |x: f64| if x >= 0.0 { 1.0 } else { 0.0 };
        let half = |_x: f64| 0.5;
        let grid = GridSpec::new(-2.0, 2.0, 4).unwrap();
        let r = cvm_distance(&step, &half, grid);
        assert_eq!(r.distance, 4.0 * 0.25);
        assert!(GridSpec::new(1.0, 1.0, 3).is_err());
        assert!(GridSpec::new(0.0, 1.0, 0).is_err());
        let points: Vec<f64> = GridSpec::default().points().take(2).collect();
        assert!((points[0] + 2.99).abs() < 1e-12 && (points[1] + 2.98).abs() < 1e-12);
    }

    #[test]
    fn early_time_ordering() {
        let grid = GridSpec::default();
        let d_for = |m, n| {
            let dist = enumerate_distribution(&WalkParams::new(Alpha::exact(m, n).unwrap(), 0.5, 15).unwrap()).unwrap();
            cvm_distance(&standardized_exact_cdf(&dist), &StandardNormal, grid).distance
        };
        let d9 = d_for(9, 10);
        let srw = cvm_distance(&simple_rw_exact_cdf(15).unwrap(), &StandardNormal, grid).distance;
        assert!(d9 < srw, "{d9} vs {srw}");
    }

    #[test]
    fn simple_rw_cdf_examples() {
        let c = simple_rw_exact_cdf(1).unwrap();
        assert_eq!(c.cdf(-1.0), 0.5);
        assert_eq!(c.cdf(-1.0001), 0.0);
        assert_eq!(c.cdf(1.0), 1.0);
        let c = simple_rw_exact_cdf(2).unwrap();
        let r2 = standardize_srw(2.0, 2);
        assert!((r2 - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(c.cdf(-r2), 0.25);
        assert_eq!(c.cdf(-r2 - 1e-9), 0.0);
        assert_eq!(c.cdf(0.0), 0.75);
        assert_eq!(c.cdf(r2), 1.0);
        assert_eq!(c.cdf(f64::INFINITY), 1.0);
        assert!(simple_rw_exact_cdf(0).is_err());
    }

    #[test]
    fn simple_rw_distance_decreases() {
        let grid = GridSpec::default();
        let d = |t| cvm_distance(&simple_rw_exact_cdf(t).unwrap(), &StandardNormal, grid).distance;
        assert!(d(60) < d(15));
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial_pmf(7, 0.0, 0), 1.0);
        assert!((binomial_pmf(10, 0.5, 5) - 63.0 / 256.0).abs() < 1e-15);
        let s: f64 = (0..=30).map(|k| binomial_pmf(30, 0.37, k)).sum();
        assert!((s - 1.0).abs() < 1e-12);
        assert_eq!(binomial_pmf_exact(10, &q(1, 2), 5), q(63, 256));
    }

    #[test]
    fn binomial_cdf_values() {
        let c = binomial_cdf(4, 0.5);
        assert_eq!(c.cdf(-0.5), 0.0);
        assert_eq!(c.cdf(0.0), 1.0 / 16.0);
        assert_eq!(c.cdf(2.0), 11.0 / 16.0);
        assert_eq!(c.cdf(4.0), 1.0);
        let d = cvm_distance(&c, &binomial_cdf(4, 0.5), GridSpec::new(-1.0, 5.0, 60).unwrap());
        assert_eq!(d.distance, 0.0);
    }

    #[test]
    fn symmetric_walk_is_symmetric() {
        for (m, n, t) in [(1, 3, 7), (1, 2, 10), (9, 10, 12)] {
            let dist = enumerate_distribution(&WalkParams::new(Alpha::exact(m, n).unwrap(), 0.5, t).unwrap()).unwrap();
            let a = standardized_exact_cdf(&dist);
            let below = a.cdf(-1e-300);
            let above = 1.0 - a.cdf(0.0);
            assert!((below - above).abs() < 1e-12, "{m}/{n} t={t}");
        }
    }

    #[test]
    fn residence_comparison_examples() {
        let pmf: Vec<f64> = (0..=10).map(|k| binomial_pmf(10, 0.5, k)).collect();
        let s = compare_residence_to_binomial(&pmf, 10, 0.5, 0.5).unwrap();
        assert_eq!(s.tv_distance, 0.0);
        assert!(s.condition_holds);
        assert!(residence_condition(0.9, 2));
        assert!(!residence_condition(0.9, 3));
        assert!(compare_residence_to_binomial(&pmf, 9, 0.5, 0.5).is_err());
    }

    #[test]
    fn lower_bound_quadrature() {
        // trapezoid oracle at two step sizes on [-40, -1]
        let trap = |n: usize| {
            let (a, b) = (-40.0, -1.0);
            let h = (b - a) / n as f64;
            let f = |u: f64| normal_cdf(u).powi(2);
            let mut s = 0.5 * (f(a) + f(b));
            for i in 1..n {
                s += f(a + i as f64 * h);
            }
            2.0 * s * h
        };
        let (coarse, fine) = (trap(200_000), trap(400_000));
        assert!((coarse - fine).abs() < 1e-9);
        let near_zero = tail_cvm_bound(-1.0);
        assert!((near_zero - fine).abs() < 1e-8, "{near_zero} vs {fine}");
        assert!((cvm_lower_bound(1e-9).unwrap() - fine).abs() < 1e-8);
        assert!(cvm_lower_bound(0.99).unwrap() < 1e-6);
        assert!(cvm_lower_bound(1.0).is_err());
    }

    proptest! {
        #[test]
        fn cvm_symmetric(a in -1.0f64..1.0, s in 0.5f64..2.0) {
            let u = move |x: f64| normal_cdf((x - a) / s);
            let grid = GridSpec::default();
            let d1 = cvm_distance(&u, &StandardNormal, grid).distance;
            let d2 = cvm_distance(&StandardNormal, &u, grid).distance;
            prop_assert_eq!(d1, d2);
            prop_assert!(d1 >= 0.0);
        }

        #[test]
        fn lower_bound_nonincreasing(a in 0.01f64..0.9, d in 0.001f64..0.09) {
            prop_assert!(cvm_lower_bound(a + d).unwrap() <= cvm_lower_bound(a).unwrap() + 1e-12);
        }
    }
}
