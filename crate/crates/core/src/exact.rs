//! Exact distribution of `X_t` for rational `alpha = m/n`.
//!
//! Every path is enumerated in integer form. Multiplying
//! `X_t = sum_s alpha^(t-s) xi_s` by `n^(t-1)` gives the scaled value
//! `S_t = sum_s m^(t-s) n^(s-1) xi_s`, which obeys
//! `S_t = m * S_(t-1) + n^(t-1) * xi_t`. Equality of positions is then
//! equality of integers, so collisions can be certified without rounding.
//!
//! The engine picks the narrowest integer type whose range covers
//! `max |S_t|` (`i64`, `i128`, or `BigInt`), enumerates depth-first inside
//! parallel prefix blocks, and merges blocks in prefix order so results do not
//! depend on the thread schedule.

use std::fmt::Debug;
use std::io::Write;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::table::Table;
use crate::walk::{rational_to_f64, Alpha, Rational, Step, WalkParams};

/// Default largest horizon accepted by the enumerators (2^24 paths).
pub const DEFAULT_ENUMERATION_CAP: usize = 24;
/// Hard ceiling on any configured cap; path indices are stored in a `u64`.
pub const MAX_ENUMERATION_CAP: usize = 40;
/// Default tolerance of the floating-point collision scan.
pub const DEFAULT_COLLISION_TOLERANCE: f64 = 1e-9;

const PREFIX_BITS: usize = 10;

/// Integer representation used while walking the path tree.
trait ScaledInt: Clone + Ord + Send + Sync + Debug {
    fn from_big(b: &BigInt) -> Self;
    fn to_big(&self) -> BigInt;
    /// `self * m + c` or `self * m - c`.
    fn step(&self, m: &Self, c: &Self, plus: bool) -> Self;
    fn is_nonneg(&self) -> bool;
    /// The value as a double when it converts without rounding.
    fn exact_f64(&self) -> Option<f64>;
}

const F64_EXACT: i64 = 1 << 53;

impl ScaledInt for i64 {
    fn from_big(b: &BigInt) -> Self {
        b.to_i64().expect("range checked before enumeration")
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    #[inline]
    fn step(&self, m: &Self, c: &Self, plus: bool) -> Self {
        if plus {
            self * m + c
        } else {
            self * m - c
        }
    }
    fn is_nonneg(&self) -> bool {
        *self >= 0
    }
    fn exact_f64(&self) -> Option<f64> {
        (self.abs() <= F64_EXACT).then_some(*self as f64)
    }
}

impl ScaledInt for i128 {
    fn from_big(b: &BigInt) -> Self {
        b.to_i128().expect("range checked before enumeration")
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    #[inline]
    fn step(&self, m: &Self, c: &Self, plus: bool) -> Self {
        if plus {
            self * m + c
        } else {
            self * m - c
        }
    }
    fn is_nonneg(&self) -> bool {
        *self >= 0
    }
    fn exact_f64(&self) -> Option<f64> {
        (self.abs() <= F64_EXACT as i128).then_some(*self as f64)
    }
}

impl ScaledInt for BigInt {
    fn from_big(b: &BigInt) -> Self {
        b.clone()
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn step(&self, m: &Self, c: &Self, plus: bool) -> Self {
        if plus {
            self * m + c
        } else {
            self * m - c
        }
    }
    fn is_nonneg(&self) -> bool {
        !self.is_negative()
    }
    fn exact_f64(&self) -> Option<f64> {
        self.to_i64().and_then(|v| v.exact_f64())
    }
}

/// `m`, and `n^(d)` for `d = 0..t`, in the working integer type.
struct Coefs<I> {
    m: I,
    npow: Vec<I>,
    t: usize,
}

impl<I: ScaledInt> Coefs<I> {
    fn new(m: &BigInt, n: &BigInt, t: usize) -> Self {
        let mut npow = Vec::with_capacity(t);
        let mut acc = BigInt::one();
        for _ in 0..t {
            npow.push(I::from_big(&acc));
            acc *= n;
        }
        Coefs { m: I::from_big(m), npow, t }
    }
}

/// Sum of `m^(t-s) n^(s-1)` over `s = 1..t`: the scaled all-plus position.
fn scaled_extreme(m: &BigInt, n: &BigInt, t: usize) -> BigInt {
    let mut s = BigInt::zero();
    for d in 0..t {
        s = s * m + num_traits::pow(n.clone(), d);
    }
    s
}

enum Width {
    Small,
    Medium,
    Big,
}

fn width_for(m: &BigInt, n: &BigInt, t: usize) -> Width {
    let bound = scaled_extreme(m, n, t);
    if bound <= BigInt::from(i64::MAX) {
        Width::Small
    } else if bound <= BigInt::from(i128::MAX) {
        Width::Medium
    } else {
        Width::Big
    }
}

/// Leaf data reported by the tree walk: final scaled value, path index, and
/// the number of visited times `s >= 1` with `X_s >= 0`.
fn walk_block<I, F>(c: &Coefs<I>, prefix_len: usize, prefix: u64, visit: &mut F)
where
    I: ScaledInt,
    F: FnMut(&I, u64, u32),
{
    let mut s = I::from_big(&BigInt::zero());
    let mut res = 0u32;
    for d in 0..prefix_len {
        let minus = (prefix >> (prefix_len - 1 - d)) & 1 == 1;
        s = s.step(&c.m, &c.npow[d], !minus);
        res += s.is_nonneg() as u32;
    }
    dfs(c, prefix_len, &s, prefix, res, visit);
}

fn dfs<I, F>(c: &Coefs<I>, depth: usize, s: &I, path: u64, res: u32, visit: &mut F)
where
    I: ScaledInt,
    F: FnMut(&I, u64, u32),
{
    if depth == c.t {
        visit(s, path, res);
        return;
    }
    // bit 0 is a +1 step, bit 1 a -1 step; first step is the most significant bit
    for minus in [false, true] {
        let next = s.step(&c.m, &c.npow[depth], !minus);
        let r = res + next.is_nonneg() as u32;
        dfs(c, depth + 1, &next, (path << 1) | minus as u64, r, visit);
    }
}

fn prefix_len(t: usize) -> usize {
    t.min(PREFIX_BITS)
}

/// All `(S_t, path)` pairs sorted by scaled value, then path index.
fn enumerate_sorted<I: ScaledInt>(m: &BigInt, n: &BigInt, t: usize) -> Vec<(I, u64)> {
    let c = Coefs::<I>::new(m, n, t);
    let h = prefix_len(t);
    let mut leaves: Vec<(I, u64)> = (0..1u64 << h)
        .into_par_iter()
        .flat_map_iter(|prefix| {
            let mut out = Vec::with_capacity(1 << (t - h));
            walk_block(&c, h, prefix, &mut |s: &I, path, _| out.push((s.clone(), path)));
            out
        })
        .collect();
    leaves.par_sort_unstable();
    leaves
}

/// Converts a path index back to its increment sequence `xi_1..xi_t`.
pub fn path_steps(path: u64, t: usize) -> Vec<Step> {
    (0..t)
        .map(|d| {
            if (path >> (t - 1 - d)) & 1 == 1 {
                Step::Minus
            } else {
                Step::Plus
            }
        })
        .collect()
}

/// Scaled integer form of a support point: `X_t = scaled_value / n^scale_exponent`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ScaledPosition {
    #[serde(serialize_with = "ser_display")]
    pub scaled_value: BigInt,
    pub scale_exponent: u32,
}

fn ser_display<S: serde::Serializer, T: std::fmt::Display>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl ScaledPosition {
    pub fn to_rational(&self, alpha: &Rational) -> Rational {
        let scale = num_traits::pow(alpha.denom().clone(), self.scale_exponent as usize);
        Rational::new(self.scaled_value.clone(), scale)
    }
}

enum ScaledSupport {
    Small(Vec<i64>),
    Medium(Vec<i128>),
    Big(Vec<BigInt>),
}

impl ScaledSupport {
    fn get(&self, i: usize) -> BigInt {
        match self {
            ScaledSupport::Small(v) => BigInt::from(v[i]),
            ScaledSupport::Medium(v) => BigInt::from(v[i]),
            ScaledSupport::Big(v) => v[i].clone(),
        }
    }
}

/// One entry of an [`ExactDistribution`].
#[derive(Clone, Debug, Serialize)]
pub struct SupportPoint {
    pub position: f64,
    pub scaled: ScaledPosition,
    pub minus_steps: u32,
    pub multiplicity: u64,
    pub probability: f64,
}

/// Exact law of `X_t` for rational `alpha`.
///
/// Entries are sorted by position and keyed by `(scaled value, number of -1
/// steps)`; the probability of an entry is `multiplicity * p^k (1-p)^(t-k)`.
pub struct ExactDistribution {
    t: usize,
    alpha: Rational,
    p: f64,
    scaled: ScaledSupport,
    minus_steps: Vec<u32>,
    multiplicity: Vec<u64>,
    positions: Vec<f64>,
    cumulative: Vec<f64>,
    distinct: usize,
}

impl ExactDistribution {
    fn build<I: ScaledInt>(
        leaves: Vec<(I, u64)>,
        wrap: fn(Vec<I>) -> ScaledSupport,
        alpha: &Rational,
        p: f64,
        t: usize,
    ) -> Self {
        let denom = num_traits::pow(alpha.denom().clone(), t.saturating_sub(1));
        let mut pairs: Vec<(I, u32)> = leaves.into_iter().map(|(s, path)| (s, path.count_ones())).collect();
        pairs.par_sort_unstable();
        let mut keys: Vec<(I, u32, u64)> = Vec::with_capacity(pairs.len());
        for (s, k) in pairs {
            match keys.last_mut() {
                Some(last) if last.0 == s && last.1 == k => last.2 += 1,
                _ => keys.push((s, k, 1)),
            }
        }

        let mut distinct = 0;
        for i in 0..keys.len() {
            if i == 0 || keys[i].0 != keys[i - 1].0 {
                distinct += 1;
            }
        }
        // S_t = m^(t-1) xi_1 mod n, so S_t / n^(t-1) is already in lowest terms
        let denom_f64 = denom.exact_f64();
        let positions: Vec<f64> = keys
            .par_iter()
            .map(|(s, _, _)| match (s.exact_f64(), denom_f64) {
                (Some(num), Some(den)) => num / den,
                _ => rational_to_f64(&Rational::new_raw(s.to_big(), denom.clone())),
            })
            .collect();
        let mut scaled = Vec::with_capacity(keys.len());
        let mut minus_steps = Vec::with_capacity(keys.len());
        let mut multiplicity = Vec::with_capacity(keys.len());
        for (s, k, mult) in keys {
            scaled.push(s);
            minus_steps.push(k);
            multiplicity.push(mult);
        }
        let mut dist = ExactDistribution {
            t,
            alpha: alpha.clone(),
            p,
            scaled: wrap(scaled),
            minus_steps,
            multiplicity,
            positions,
            cumulative: Vec::new(),
            distinct,
        };
        let probs: Vec<f64> = (0..dist.len()).map(|i| dist.probability_at(i)).collect();
        let mut acc = 0.0;
        dist.cumulative = probs
            .iter()
            .map(|q| {
                acc += q;
                acc
            })
            .collect();
        dist
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Number of stored `(position, k)` entries.
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Number of distinct support points.
    pub fn support_size(&self) -> usize {
        self.distinct
    }

    pub fn positions(&self) -> &[f64] {
        &self.positions
    }

    pub fn scaled(&self, i: usize) -> ScaledPosition {
        ScaledPosition {
            scaled_value: self.scaled.get(i),
            scale_exponent: self.t.saturating_sub(1) as u32,
        }
    }

    pub fn position_exact(&self, i: usize) -> Rational {
        self.scaled(i).to_rational(&self.alpha)
    }

    pub fn minus_steps(&self, i: usize) -> u32 {
        self.minus_steps[i]
    }

    pub fn multiplicity(&self, i: usize) -> u64 {
        self.multiplicity[i]
    }

    pub fn probability_at(&self, i: usize) -> f64 {
        let k = self.minus_steps[i] as i32;
        let t = self.t as i32;
        self.multiplicity[i] as f64 * self.p.powi(k) * (1.0 - self.p).powi(t - k)
    }

    /// Exact probability of entry `i` under a rational step parameter.
    pub fn probability_exact(&self, i: usize, p: &Rational) -> Rational {
        let k = self.minus_steps[i] as usize;
        let q = Rational::one() - p;
        Rational::from_integer(self.multiplicity[i].into())
            * num_traits::pow(p.clone(), k)
            * num_traits::pow(q, self.t - k)
    }

    pub fn points(&self) -> impl Iterator<Item = SupportPoint> + '_ {
        (0..self.len()).map(move |i| SupportPoint {
            position: self.positions[i],
            scaled: self.scaled(i),
            minus_steps: self.minus_steps[i],
            multiplicity: self.multiplicity[i],
            probability: self.probability_at(i),
        })
    }

    /// `P(X_t <= x)`.
    pub fn cdf(&self, x: f64) -> f64 {
        let idx = self.positions.partition_point(|&v| v <= x);
        if idx == 0 {
            0.0
        } else if idx == self.len() {
            1.0
        } else {
            self.cumulative[idx - 1]
        }
    }

    fn k_sums(&self) -> Vec<(BigInt, BigInt, BigInt)> {
        // per k: total multiplicity, sum of S, sum of S^2
        let mut sums = vec![(BigInt::zero(), BigInt::zero(), BigInt::zero()); self.t + 1];
        for i in 0..self.len() {
            let s = self.scaled.get(i);
            let mult = BigInt::from(self.multiplicity[i]);
            let e = &mut sums[self.minus_steps[i] as usize];
            e.0 += &mult;
            e.2 += &s * &s * &mult;
            e.1 += s * mult;
        }
        sums
    }

    /// Total probability mass under rational `p`; equals one exactly.
    pub fn total_probability_exact(&self, p: &Rational) -> Rational {
        let q = Rational::one() - p;
        self.k_sums()
            .into_iter()
            .enumerate()
            .map(|(k, (count, _, _))| {
                Rational::from_integer(count)
                    * num_traits::pow(p.clone(), k)
                    * num_traits::pow(q.clone(), self.t - k)
            })
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// Mean and variance in exact rational arithmetic.
    pub fn moments_exact(&self, p: &Rational) -> (Rational, Rational) {
        let q = Rational::one() - p;
        let denom = num_traits::pow(self.alpha.denom().clone(), self.t.saturating_sub(1));
        let mut first = Rational::zero();
        let mut second = Rational::zero();
        for (k, (_, s1, s2)) in self.k_sums().into_iter().enumerate() {
            let w = num_traits::pow(p.clone(), k) * num_traits::pow(q.clone(), self.t - k);
            first += &w * Rational::from_integer(s1);
            second += w * Rational::from_integer(s2);
        }
        let first = first / Rational::from_integer(denom.clone());
        let second = second / Rational::from_integer(&denom * &denom);
        let var = &second - &first * &first;
        (first, var)
    }

    /// Mean and variance for the distribution's own `p`, computed exactly
    /// from the binary value of `p` and rounded once.
    pub fn moments(&self) -> (f64, f64) {
        let p = Rational::from_float(self.p).expect("p is finite");
        let (m, v) = self.moments_exact(&p);
        (rational_to_f64(&m), rational_to_f64(&v))
    }

    /// Smallest and largest support points, exactly.
    pub fn extremes_exact(&self) -> Option<(Rational, Rational)> {
        if self.is_empty() {
            return None;
        }
        Some((self.position_exact(0), self.position_exact(self.len() - 1)))
    }

    pub fn to_table(&self) -> Table {
        let mut table = Table::new(["position_real", "scaled_value", "k_minus_steps", "probability"]);
        for pt in self.points() {
            table.push_row([
                pt.position.to_string(),
                pt.scaled.scaled_value.to_string(),
                pt.minus_steps.to_string(),
                pt.probability.to_string(),
            ]);
        }
        table
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        self.to_table().write_csv(w)
    }

    pub fn to_json(&self) -> Result<String> {
        #[derive(Serialize)]
        struct Doc {
            alpha: String,
            p: f64,
            t: usize,
            support_size: usize,
            points: Vec<SupportPoint>,
        }
        let doc = Doc {
            alpha: format!("{}/{}", self.alpha.numer(), self.alpha.denom()),
            p: self.p,
            t: self.t,
            support_size: self.distinct,
            points: self.points().collect(),
        };
        Ok(serde_json::to_string_pretty(&doc)?)
    }
}

/// Two increment sequences of equal length that land on the same point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Collision {
    pub path_a: Vec<Step>,
    pub path_b: Vec<Step>,
    pub shared_position: f64,
    pub time: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CollisionReport {
    pub collisions: Vec<Collision>,
}

impl CollisionReport {
    pub fn is_empty(&self) -> bool {
        self.collisions.is_empty()
    }

    pub fn len(&self) -> usize {
        self.collisions.len()
    }

    pub fn contains_pair(&self, a: &[Step], b: &[Step]) -> bool {
        self.collisions.iter().any(|c| {
            (c.path_a == a && c.path_b == b) || (c.path_a == b && c.path_b == a)
        })
    }
}

/// Joint path counts of the positive-side residence time and the number of
/// `-1` steps: `counts[r][k]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidenceCounts {
    pub t: usize,
    pub counts: Vec<Vec<u64>>,
}

impl ResidenceCounts {
    /// `P(T_+ = r)` for `r = 0..=t`.
    pub fn pmf(&self, p: f64) -> Vec<f64> {
        let t = self.t as i32;
        self.counts
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .map(|(k, &c)| c as f64 * p.powi(k as i32) * (1.0 - p).powi(t - k as i32))
                    .sum()
            })
            .collect()
    }

    pub fn pmf_exact(&self, p: &Rational) -> Vec<Rational> {
        let q = Rational::one() - p;
        self.counts
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .map(|(k, &c)| {
                        Rational::from_integer(c.into())
                            * num_traits::pow(p.clone(), k)
                            * num_traits::pow(q.clone(), self.t - k)
                    })
                    .fold(Rational::zero(), |a, b| a + b)
            })
            .collect()
    }
}

/// Exact enumerators sharing a horizon cap.
#[derive(Clone, Copy, Debug)]
pub struct Enumerator {
    cap: usize,
}

impl Default for Enumerator {
    fn default() -> Self {
        Enumerator { cap: DEFAULT_ENUMERATION_CAP }
    }
}

impl Enumerator {
    pub fn with_cap(cap: usize) -> Result<Self> {
        if cap > MAX_ENUMERATION_CAP {
            return invalid(format!("enumeration cap {cap} exceeds {MAX_ENUMERATION_CAP}"));
        }
        Ok(Enumerator { cap })
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn check(&self, t: usize) -> Result<()> {
        if t > self.cap {
            return Err(Error::HorizonTooLarge { t, cap: self.cap });
        }
        Ok(())
    }

    fn exact_alpha(params: &WalkParams) -> Result<&Rational> {
        params
            .alpha
            .as_rational()
            .ok_or_else(|| Error::InvalidParameter("exact enumeration needs a rational alpha (m/n)".into()))
    }

    pub fn distribution(&self, params: &WalkParams) -> Result<ExactDistribution> {
        let alpha = Self::exact_alpha(params)?;
        self.check(params.t)?;
        let (m, n) = (alpha.numer(), alpha.denom());
        let t = params.t;
        Ok(match width_for(m, n, t) {
            Width::Small => ExactDistribution::build(
                enumerate_sorted::<i64>(m, n, t),
                ScaledSupport::Small,
                alpha,
                params.p,
                t,
            ),
            Width::Medium => ExactDistribution::build(
                enumerate_sorted::<i128>(m, n, t),
                ScaledSupport::Medium,
                alpha,
                params.p,
                t,
            ),
            Width::Big => ExactDistribution::build(
                enumerate_sorted::<BigInt>(m, n, t),
                ScaledSupport::Big,
                alpha,
                params.p,
                t,
            ),
        })
    }

    pub fn uniqueness_exact(&self, alpha: &Rational, t: usize) -> Result<CollisionReport> {
        Alpha::from_rational(alpha.clone())?;
        self.check(t)?;
        let (m, n) = (alpha.numer(), alpha.denom());
        Ok(match width_for(m, n, t) {
            Width::Small => exact_collisions(enumerate_sorted::<i64>(m, n, t), alpha, t),
            Width::Medium => exact_collisions(enumerate_sorted::<i128>(m, n, t), alpha, t),
            Width::Big => exact_collisions(enumerate_sorted::<BigInt>(m, n, t), alpha, t),
        })
    }

    pub fn uniqueness_real(&self, alpha: f64, t: usize, tolerance: f64) -> Result<CollisionReport> {
        if tolerance.is_nan() || tolerance <= 0.0 {
            return invalid("collision tolerance must be positive");
        }
        Alpha::real(alpha)?;
        self.check(t)?;
        let h = prefix_len(t);
        let mut leaves: Vec<(f64, u64)> = (0..1u64 << h)
            .into_par_iter()
            .flat_map_iter(|prefix| {
                let mut x = 0.0;
                for d in 0..h {
                    let minus = (prefix >> (h - 1 - d)) & 1 == 1;
                    x = alpha * x + if minus { -1.0 } else { 1.0 };
                }
                let mut out = Vec::with_capacity(1 << (t - h));
                real_dfs(alpha, t, h, x, prefix, &mut out);
                out
            })
            .collect();
        leaves.par_sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        let mut collisions = Vec::new();
        for i in 0..leaves.len() {
            let mut j = i + 1;
            while j < leaves.len() && leaves[j].0 - leaves[i].0 < tolerance {
                collisions.push(Collision {
                    path_a: path_steps(leaves[i].1, t),
                    path_b: path_steps(leaves[j].1, t),
                    shared_position: 0.5 * (leaves[i].0 + leaves[j].0),
                    time: t,
                });
                j += 1;
            }
        }
        Ok(CollisionReport { collisions })
    }

    pub fn residence(&self, params: &WalkParams) -> Result<ResidenceCounts> {
        let alpha = Self::exact_alpha(params)?;
        self.check(params.t)?;
        let (m, n) = (alpha.numer(), alpha.denom());
        let t = params.t;
        Ok(match width_for(m, n, t) {
            Width::Small => residence_counts::<i64>(m, n, t),
            Width::Medium => residence_counts::<i128>(m, n, t),
            Width::Big => residence_counts::<BigInt>(m, n, t),
        })
    }
}

fn real_dfs(alpha: f64, t: usize, depth: usize, x: f64, path: u64, out: &mut Vec<(f64, u64)>) {
    if depth == t {
        out.push((x, path));
        return;
    }
    real_dfs(alpha, t, depth + 1, alpha * x + 1.0, path << 1, out);
    real_dfs(alpha, t, depth + 1, alpha * x - 1.0, (path << 1) | 1, out);
}

fn exact_collisions<I: ScaledInt>(leaves: Vec<(I, u64)>, alpha: &Rational, t: usize) -> CollisionReport {
    let denom = num_traits::pow(alpha.denom().clone(), t.saturating_sub(1));
    let mut collisions = Vec::new();
    let mut start = 0;
    while start < leaves.len() {
        let mut end = start + 1;
        while end < leaves.len() && leaves[end].0 == leaves[start].0 {
            end += 1;
        }
        if end - start > 1 {
            let x = rational_to_f64(&Rational::new(leaves[start].0.to_big(), denom.clone()));
            for a in start..end {
                for b in a + 1..end {
                    collisions.push(Collision {
                        path_a: path_steps(leaves[a].1, t),
                        path_b: path_steps(leaves[b].1, t),
                        shared_position: x,
                        time: t,
                    });
                }
            }
        }
        start = end;
    }
    CollisionReport { collisions }
}

fn residence_counts<I: ScaledInt>(m: &BigInt, n: &BigInt, t: usize) -> ResidenceCounts {
    let c = Coefs::<I>::new(m, n, t);
    let h = prefix_len(t);
    let blank = || vec![vec![0u64; t + 1]; t + 1];
    let counts = (0..1u64 << h)
        .into_par_iter()
        .map(|prefix| {
            let mut table = blank();
            walk_block(&c, h, prefix, &mut |_: &I, path, res| {
                table[res as usize][path.count_ones() as usize] += 1;
            });
            table
        })
        .reduce(blank, |mut a, b| {
            for (ra, rb) in a.iter_mut().zip(b) {
                for (x, y) in ra.iter_mut().zip(rb) {
                    *x += y;
                }
            }
            a
        });
    ResidenceCounts { t, counts }
}

/// Exact law of `X_t` under the default cap.
pub fn enumerate_distribution(params: &WalkParams) -> Result<ExactDistribution> {
    Enumerator::default().distribution(params)
}

pub fn support_size(dist: &ExactDistribution) -> usize {
    dist.support_size()
}

pub fn check_path_uniqueness_exact(alpha: &Rational, t: usize) -> Result<CollisionReport> {
    Enumerator::default().uniqueness_exact(alpha, t)
}

pub fn check_path_uniqueness_real(alpha: f64, t: usize, tolerance: f64) -> Result<CollisionReport> {
    Enumerator::default().uniqueness_real(alpha, t, tolerance)
}

pub fn exact_cdf(dist: &ExactDistribution, x: f64) -> f64 {
    dist.cdf(x)
}

pub fn exact_moments(dist: &ExactDistribution) -> (f64, f64) {
    dist.moments()
}

/// Exact path counts behind the law of `T_+(t)`; see [`ResidenceCounts::pmf`].
pub fn exact_residence_distribution(params: &WalkParams) -> Result<ResidenceCounts> {
    Enumerator::default().residence(params)
}
