//! Two-armed bandit decision-maker driven by an antlion walk.
//!
//! At step `t` a signal `s_t` is compared with the current threshold
//! `theta_{t-1} = k [X_{t-1}]`: arm A is played when `s_t >= theta_{t-1}`,
//! arm B otherwise. The outcome moves the adjuster by
//!
//! | arm | rewarded | `xi_t`  |
//! |-----|----------|---------|
//! | A   | yes      | `-Δ`    |
//! | A   | no       | `+Ω`    |
//! | B   | yes      | `+Δ`    |
//! | B   | no       | `-Ω`    |
//!
//! and `X_t = alpha X_{t-1} + xi_t`, `X_0 = 0`.

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::table::Table;

/// Nearest integer with halves rounded away from zero.
pub fn nearest_integer(x: f64) -> i64 {
    x.round() as i64
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SignalSource {
    /// Uniform over the integers `lo..=hi`.
    UniformInt { lo: i64, hi: i64 },
    /// I.i.d. standard normal.
    Normal,
    /// Stationary unit-variance Gaussian AR(1) with lag-one correlation `coef`.
    Ar1Gaussian { coef: f64 },
}

impl Default for SignalSource {
    fn default() -> Self {
        SignalSource::UniformInt { lo: -5, hi: 5 }
    }
}

impl SignalSource {
    fn validate(&self) -> Result<()> {
        match *self {
            SignalSource::UniformInt { lo, hi } if lo > hi => invalid(format!("empty signal range {lo}..={hi}")),
            SignalSource::Ar1Gaussian { coef } if !(coef > -1.0 && coef < 1.0) => {
                invalid("autoregressive coefficient must lie in (-1, 1)")
            }
            _ => Ok(()),
        }
    }
}

struct SignalState {
    source: SignalSource,
    prev: Option<f64>,
}

impl SignalState {
    fn next<R: Rng>(&mut self, rng: &mut R) -> f64 {
        match self.source {
            SignalSource::UniformInt { lo, hi } => rng.random_range(lo..=hi) as f64,
            SignalSource::Normal => rng.sample(StandardNormal),
            SignalSource::Ar1Gaussian { coef } => {
                let z: f64 = rng.sample(StandardNormal);
                let s = match self.prev {
                    None => z,
                    Some(p) => coef * p + (1.0 - coef * coef).sqrt() * z,
                };
                self.prev = Some(s);
                s
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Arm {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BanditConfig {
    pub k: f64,
    pub alpha: f64,
    pub delta: f64,
    pub omega: f64,
    pub p_a: f64,
    pub p_b: f64,
    pub horizon: usize,
    pub signal: SignalSource,
    /// Step from which the two reward probabilities are exchanged.
    pub swap_at: Option<usize>,
}

impl Default for BanditConfig {
    fn default() -> Self {
        BanditConfig {
            k: 1.0,
            alpha: 1.0,
            delta: 1.0,
            omega: 1.0,
            p_a: 0.5,
            p_b: 0.5,
            horizon: 1000,
            signal: SignalSource::default(),
            swap_at: None,
        }
    }
}

impl BanditConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("k", self.k), ("delta", self.delta), ("omega", self.omega)] {
            if !(v > 0.0 && v.is_finite()) {
                return invalid(format!("{name} must be positive"));
            }
        }
        if !(0.0..=1.0).contains(&self.alpha) {
            return invalid("alpha must lie in [0, 1]");
        }
        for (name, v) in [("p_a", self.p_a), ("p_b", self.p_b)] {
            if !(0.0..=1.0).contains(&v) {
                return invalid(format!("{name} must lie in [0, 1]"));
            }
        }
        if self.horizon == 0 {
            return invalid("horizon must be at least 1");
        }
        self.signal.validate()
    }

    /// Reward probabilities in force at step `t` (1-based).
    pub fn probabilities_at(&self, t: usize) -> (f64, f64) {
        match self.swap_at {
            Some(s) if t >= s => (self.p_b, self.p_a),
            _ => (self.p_a, self.p_b),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BanditStep {
    pub step: usize,
    pub signal: f64,
    /// `theta_t = k [X_t]` after the update.
    pub theta: f64,
    pub arm: Arm,
    pub reward: bool,
    pub xi: f64,
    pub x: f64,
    pub correct: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BanditTrace {
    pub config: BanditConfig,
    pub seed: u64,
    pub steps: Vec<BanditStep>,
}

fn is_correct(arm: Arm, p_a: f64, p_b: f64) -> bool {
    match arm {
        Arm::A => p_a >= p_b,
        Arm::B => p_b >= p_a,
    }
}

pub fn run_bandit(config: &BanditConfig, seed: u64) -> Result<BanditTrace> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut signal = SignalState { source: config.signal, prev: None };
    let mut x = 0.0;
    let mut theta = 0.0;
    let mut steps = Vec::with_capacity(config.horizon);
    for t in 1..=config.horizon {
        let s = signal.next(&mut rng);
        let arm = if s >= theta { Arm::A } else { Arm::B };
        let (p_a, p_b) = config.probabilities_at(t);
        let p = if arm == Arm::A { p_a } else { p_b };
        let reward = rng.random::<f64>() < p;
        let xi = match (arm, reward) {
            (Arm::A, true) => -config.delta,
            (Arm::A, false) => config.omega,
            (Arm::B, true) => config.delta,
            (Arm::B, false) => -config.omega,
        };
        x = config.alpha * x + xi;
        theta = config.k * nearest_integer(x) as f64;
        steps.push(BanditStep { step: t, signal: s, theta, arm, reward, xi, x, correct: is_correct(arm, p_a, p_b) });
    }
    Ok(BanditTrace { config: config.clone(), seed, steps })
}

impl BanditTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn positions(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.x).collect()
    }

    /// Fraction of correct selections over steps `from..to` (0-based, half-open).
    pub fn correct_rate_between(&self, from: usize, to: usize) -> f64 {
        let window = &self.steps[from.min(self.len())..to.min(self.len())];
        if window.is_empty() {
            return f64::NAN;
        }
        window.iter().filter(|s| s.correct).count() as f64 / window.len() as f64
    }

    pub fn correct_rate(&self) -> f64 {
        self.correct_rate_between(0, self.len())
    }

    /// Running fraction of correct selections after each step.
    pub fn correct_rate_trajectory(&self) -> Vec<f64> {
        let mut hits = 0usize;
        self.steps
            .iter()
            .enumerate()
            .map(|(i, s)| {
                hits += s.correct as usize;
                hits as f64 / (i + 1) as f64
            })
            .collect()
    }

    pub fn arm_a_frequency(&self) -> f64 {
        self.steps.iter().filter(|s| s.arm == Arm::A).count() as f64 / self.len() as f64
    }

    /// First step after `after` whose position has left the sign of `X_after`
    /// (reaching zero counts).
    pub fn zero_crossing_after(&self, after: usize) -> Option<usize> {
        let x0 = if after == 0 { 0.0 } else { self.steps.get(after - 1)?.x };
        self.steps[after.min(self.len())..]
            .iter()
            .find(|s| s.x == 0.0 || s.x.signum() != x0.signum())
            .map(|s| s.step)
    }

    pub fn to_table(&self) -> Table {
        let mut table = Table::new(["step", "s_t", "theta", "arm", "reward", "xi", "X_t"]);
        for s in &self.steps {
            table.push_row([
                s.step.to_string(),
                s.signal.to_string(),
                s.theta.to_string(),
                format!("{:?}", s.arm),
                (s.reward as u8).to_string(),
                s.xi.to_string(),
                s.x.to_string(),
            ]);
        }
        table
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        self.to_table().write_csv(w)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub alpha: f64,
    pub seeds: usize,
    pub mean_correct_rate: f64,
    /// Mean correct-selection rate over the last tenth of the horizon.
    pub late_correct_rate: f64,
    /// Mean correct-selection rate within each of `bins` equal windows.
    pub trajectory: Vec<f64>,
}

fn binned_rates(trace: &BanditTrace, bins: usize) -> Vec<f64> {
    let n = trace.len();
    (0..bins).map(|b| trace.correct_rate_between(b * n / bins, (b + 1) * n / bins)).collect()
}

/// Runs `seeds` replicates (seeds `seed_base..seed_base + seeds`) for every
/// alpha and averages the correct-selection statistics.
pub fn sweep_alpha(template: &BanditConfig, alphas: &[f64], seeds: usize, seed_base: u64, bins: usize) -> Result<Vec<SweepRow>> {
    if alphas.is_empty() || seeds == 0 {
        return invalid("sweep needs at least one alpha and one seed");
    }
    let bins = bins.clamp(1, template.horizon);
    alphas
        .iter()
        .map(|&alpha| {
            let config = BanditConfig { alpha, ..template.clone() };
            config.validate()?;
            let per_seed: Vec<(f64, f64, Vec<f64>)> = (0..seeds as u64)
                .into_par_iter()
                .map(|i| {
                    let trace = run_bandit(&config, seed_base + i)?;
                    let n = trace.len();
                    Ok((trace.correct_rate(), trace.correct_rate_between(n - n.div_ceil(10), n), binned_rates(&trace, bins)))
                })
                .collect::<Result<_>>()?;
            let m = seeds as f64;
            let mut trajectory = vec![0.0; bins];
            for (_, _, tr) in &per_seed {
                for (acc, v) in trajectory.iter_mut().zip(tr) {
                    *acc += v / m;
                }
            }
            Ok(SweepRow {
                alpha,
                seeds,
                mean_correct_rate: per_seed.iter().map(|r| r.0).sum::<f64>() / m,
                late_correct_rate: per_seed.iter().map(|r| r.1).sum::<f64>() / m,
                trajectory,
            })
        })
        .collect()
}

pub fn write_sweep_json<W: Write>(rows: &[SweepRow], w: W) -> Result<()> {
    serde_json::to_writer_pretty(w, rows)?;
    Ok(())
}

pub fn sweep_table(rows: &[SweepRow]) -> Table {
    let mut table = Table::new(["alpha", "seeds", "mean_correct_rate", "late_correct_rate"]);
    for r in rows {
        table.push_row([r.alpha.to_string(), r.seeds.to_string(), r.mean_correct_rate.to_string(), r.late_correct_rate.to_string()]);
    }
    table
}
