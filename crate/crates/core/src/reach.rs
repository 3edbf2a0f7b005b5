//! Position bounds, the central gap, and constructive ε-reachability.
//!
//! For `alpha >= 1/2` a greedy inverse path steers toward the target and the
//! reversed sequence is returned as a forward witness. Below one half the
//! attainable set has holes, so the inverse tree is searched exactly: a
//! subtree is pruned once the interval enclosing all of its positions lies
//! at least `epsilon` from `r`, and a node with both children pruned yields
//! a gap certificate.

use std::io::Write;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::table::Table;
use crate::walk::{evolve, rational_to_f64, replay, Rational, Step};

/// Hard limit on witness length for the greedy construction.
pub const MAX_GREEDY_DEPTH: usize = 100_000;
/// Depth limit of the exact tree search.
pub const MAX_SEARCH_DEPTH: usize = 512;
/// Node budget of the exact tree search.
pub const MAX_SEARCH_NODES: usize = 1 << 22;

/// Open interval `(-(1-2a)/(1-a), (1-2a)/(1-a))` avoided by every `X_t`,
/// `t >= 1`, when `alpha < 1/2`.
pub fn central_gap(alpha: f64) -> Result<Option<(f64, f64)>> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return invalid("alpha must lie in (0, 1)");
    }
    if alpha >= 0.5 {
        return Ok(None);
    }
    let g = (1.0 - 2.0 * alpha) / (1.0 - alpha);
    Ok(Some((-g, g)))
}

/// Inverse-path partial sum `Y_T = sum_s alpha^(s-1) zeta_s`.
pub fn inverse_path_value(alpha: f64, zeta: &[Step]) -> f64 {
    let mut pow = 1.0;
    let mut y = 0.0;
    for z in zeta {
        y += pow * z.as_f64();
        pow *= alpha;
    }
    y
}

/// An inverse path `zeta_1..zeta_T`; `zeta_1` is the last forward step.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InversePath {
    pub alpha: f64,
    pub zeta: Vec<Step>,
}

impl InversePath {
    pub fn partial_sums(&self) -> Vec<f64> {
        let mut pow = 1.0;
        let mut y = 0.0;
        self.zeta
            .iter()
            .map(|z| {
                y += pow * z.as_f64();
                pow *= self.alpha;
                y
            })
            .collect()
    }

    pub fn value(&self) -> f64 {
        inverse_path_value(self.alpha, &self.zeta)
    }

    pub fn forward(&self) -> Vec<Step> {
        self.zeta.iter().rev().copied().collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReachQuery {
    alpha: Rational,
    r: Rational,
    epsilon: Rational,
}

impl ReachQuery {
    /// Float inputs are converted to the rationals they represent exactly.
    pub fn new(alpha: f64, r: f64, epsilon: f64) -> Result<Self> {
        let conv = |v: f64, name: &str| Rational::from_float(v).ok_or_else(|| crate::Error::InvalidParameter(format!("{name} must be finite")));
        Self::exact(conv(alpha, "alpha")?, conv(r, "r")?, conv(epsilon, "epsilon")?)
    }

    pub fn exact(alpha: Rational, r: Rational, epsilon: Rational) -> Result<Self> {
        if !(alpha.is_positive() && alpha < Rational::one()) {
            return invalid("reachability needs alpha in (0, 1)");
        }
        if !epsilon.is_positive() {
            return invalid("epsilon must be positive");
        }
        Ok(ReachQuery { alpha, r, epsilon })
    }

    pub fn alpha(&self) -> f64 {
        rational_to_f64(&self.alpha)
    }

    pub fn r(&self) -> f64 {
        rational_to_f64(&self.r)
    }

    pub fn epsilon(&self) -> f64 {
        rational_to_f64(&self.epsilon)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// `r` is at least `epsilon` beyond `(-1/(1-a), 1/(1-a))`.
    OutsideBounds { lower: f64, upper: f64 },
    /// Every walk ending in the inverse prefix `zeta` avoids `(lower, upper)`,
    /// and every other branch stays at least `epsilon` from `r`.
    Gap { lower: f64, upper: f64, zeta: Vec<Step> },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReachResult {
    pub reachable: bool,
    /// Forward increments `xi_1..xi_T` ending within `epsilon` of `r`.
    pub witness: Option<Vec<Step>>,
    pub certificate: Option<Certificate>,
    /// False when a depth or node budget ran out before a verdict.
    pub decided: bool,
}

impl ReachResult {
    fn found(witness: Vec<Step>) -> Self {
        ReachResult { reachable: true, witness: Some(witness), certificate: None, decided: true }
    }

    fn refuted(certificate: Certificate) -> Self {
        ReachResult { reachable: false, witness: None, certificate: Some(certificate), decided: true }
    }

    fn undecided() -> Self {
        ReachResult { reachable: false, witness: None, certificate: None, decided: false }
    }

    pub fn witness_depth(&self) -> Option<usize> {
        self.witness.as_ref().map(Vec::len)
    }
}

/// Decides whether some `X_t`, `t >= 1`, lands in `(r - epsilon, r + epsilon)`
/// with positive probability.
pub fn is_eps_reachable(query: &ReachQuery) -> ReachResult {
    let one = Rational::one();
    let bound = &one / (&one - &query.alpha);
    let excess = query.r.abs() - &bound;
    if excess >= query.epsilon {
        let b = rational_to_f64(&bound);
        return ReachResult::refuted(Certificate::OutsideBounds { lower: -b, upper: b });
    }
    if query.alpha >= Rational::new(1.into(), 2.into()) {
        greedy(query.alpha(), query.r(), query.epsilon())
    } else {
        Search::new(query).run()
    }
}

/// Depth `ceil(ln(eps (1-a)) / ln a)` after which the greedy path is within
/// `epsilon` of any target inside the bounds.
pub fn greedy_depth_bound(alpha: f64, epsilon: f64) -> usize {
    let v = (epsilon * (1.0 - alpha)).ln() / alpha.ln();
    if v.is_finite() && v > 1.0 {
        v.ceil() as usize
    } else {
        1
    }
}

fn greedy(alpha: f64, r: f64, eps: f64) -> ReachResult {
    let cap = greedy_depth_bound(alpha, eps).saturating_add(64).min(MAX_GREEDY_DEPTH);
    let mut zeta = Vec::new();
    let mut y = 0.0;
    let mut pow = 1.0;
    for _ in 0..cap {
        let z = if y < r { Step::Plus } else { Step::Minus };
        y += pow * z.as_f64();
        pow *= alpha;
        zeta.push(z);
        if (y - r).abs() < eps {
            let forward: Vec<Step> = zeta.iter().rev().copied().collect();
            if (replay(alpha, &forward) - r).abs() < eps {
                return ReachResult::found(forward);
            }
        }
    }
    ReachResult::undecided()
}

struct Search<'a> {
    q: &'a ReachQuery,
    half_width_factor: Rational,
    gap_factor: Rational,
    zeta: Vec<Step>,
    nodes: usize,
    exhausted: bool,
    best_gap: Option<(Rational, Certificate)>,
}

impl<'a> Search<'a> {
    fn new(q: &'a ReachQuery) -> Self {
        let one = Rational::one();
        let two = &one + &one;
        Search {
            q,
            half_width_factor: &q.alpha / (&one - &q.alpha),
            gap_factor: (&one - &two * &q.alpha) / (&one - &q.alpha),
            zeta: Vec::new(),
            nodes: 0,
            exhausted: false,
            best_gap: None,
        }
    }

    fn run(mut self) -> ReachResult {
        if self.visit(&Rational::zero(), &Rational::one()) {
            return ReachResult::found(self.zeta.iter().rev().copied().collect());
        }
        if self.exhausted {
            return ReachResult::undecided();
        }
        match self.best_gap {
            Some((_, cert)) => ReachResult::refuted(cert),
            None => ReachResult::undecided(),
        }
    }

    /// Explores the children of the node with partial sum `y` at depth
    /// `k = zeta.len()`, where `pow = alpha^k`.
    fn visit(&mut self, y: &Rational, pow: &Rational) -> bool {
        self.nodes += 1;
        if self.zeta.len() >= MAX_SEARCH_DEPTH || self.nodes > MAX_SEARCH_NODES {
            self.exhausted = true;
            return false;
        }
        let h = pow * &self.half_width_factor;
        let mut children: Vec<(Rational, Step, Rational)> = [Step::Plus, Step::Minus]
            .into_iter()
            .map(|z| {
                let c = if z == Step::Plus { y + pow } else { y - pow };
                let off = (&c - &self.q.r).abs();
                (off, z, c)
            })
            .collect();
        children.sort_by(|a, b| a.0.cmp(&b.0));
        let next_pow = pow * &self.q.alpha;
        let mut any_viable = false;
        for (off, z, c) in children {
            let dist = if off > h { &off - &h } else { Rational::zero() };
            if dist >= self.q.epsilon {
                continue;
            }
            any_viable = true;
            self.zeta.push(z);
            if off < self.q.epsilon || self.visit(&c, &next_pow) {
                return true;
            }
            self.zeta.pop();
        }
        if !any_viable {
            self.record_gap(y, pow);
        }
        false
    }

    fn record_gap(&mut self, y: &Rational, pow: &Rational) {
        let half = pow * &self.gap_factor;
        let lo = y - &half;
        let hi = y + &half;
        let r = &self.q.r;
        let miss = if r <= &lo {
            &lo - r
        } else if r >= &hi {
            r - &hi
        } else {
            Rational::zero()
        };
        if self.best_gap.as_ref().is_some_and(|(m, _)| *m <= miss) {
            return;
        }
        let cert = Certificate::Gap { lower: rational_to_f64(&lo), upper: rational_to_f64(&hi), zeta: self.zeta.clone() };
        self.best_gap = Some((miss, cert));
    }
}

/// Forward replay check used by callers that want to audit a witness.
pub fn witness_lands(alpha: f64, r: f64, epsilon: f64, witness: &[Step]) -> bool {
    let x = witness.iter().fold(0.0, |x, &s| evolve(x, alpha, s));
    !witness.is_empty() && (x - r).abs() < epsilon
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReachRow {
    pub alpha: f64,
    pub r: f64,
    pub epsilon: f64,
    pub reachable: bool,
    pub witness_depth: Option<usize>,
}

/// Runs every combination of the given alphas, targets and tolerances.
pub fn reach_sweep(alphas: &[f64], targets: &[f64], epsilons: &[f64]) -> Result<Vec<ReachRow>> {
    let mut rows = Vec::with_capacity(alphas.len() * targets.len() * epsilons.len());
    for &alpha in alphas {
        for &r in targets {
            for &epsilon in epsilons {
                let res = is_eps_reachable(&ReachQuery::new(alpha, r, epsilon)?);
                rows.push(ReachRow { alpha, r, epsilon, reachable: res.reachable, witness_depth: res.witness_depth() });
            }
        }
    }
    Ok(rows)
}

pub fn sweep_table(rows: &[ReachRow]) -> Table {
    let mut table = Table::new(["alpha", "r", "epsilon", "reachable", "witness_depth"]);
    for row in rows {
        table.push_row([
            row.alpha.to_string(),
            row.r.to_string(),
            row.epsilon.to_string(),
            row.reachable.to_string(),
            row.witness_depth.map(|d| d.to_string()).unwrap_or_default(),
        ]);
    }
    table
}

pub fn write_sweep_csv<W: Write>(rows: &[ReachRow], w: W) -> Result<()> {
    sweep_table(rows).write_csv(w)
}
