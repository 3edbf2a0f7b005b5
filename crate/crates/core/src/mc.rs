//! Seeded Monte Carlo simulation of antlion and simple random walks.
//!
//! Every walker owns a ChaCha8 stream seeded with
//! `splitmix64(seed + GOLDEN * (walker + 1))`, the `(walker + 1)`-th output of
//! a SplitMix64 sequence started at `seed`. Walkers never share generator
//! state, so the output is bit-identical under any rayon thread count.

use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::table::Table;
use crate::walk::{evolve, sample_step, Alpha, WalkParams};

/// Walker count used by the reference figures.
pub const DEFAULT_WALKERS: usize = 50_000;
/// Largest `n_walkers * (t + 1)` accepted for full-path storage.
pub const MAX_STORED_CELLS: u128 = 1 << 27;
/// Largest `n_walkers * t` accepted for any simulation.
pub const MAX_STEP_WORK: u128 = 1 << 38;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output function.
pub fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn walker_seed(seed: u64, walker: u64) -> u64 {
    splitmix64(seed.wrapping_add(GOLDEN_GAMMA.wrapping_mul(walker.wrapping_add(1))))
}

pub fn walker_rng(seed: u64, walker: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(walker_seed(seed, walker))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StorageMode {
    FinalsOnly,
    FullPaths,
}

/// Simulated walkers: either `n_walkers` final positions or a row-major
/// `n_walkers x (t + 1)` array of paths including `X_0 = 0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrajectoryBatch {
    pub params: WalkParams,
    pub n_walkers: usize,
    pub seed: u64,
    pub mode: StorageMode,
    positions: Vec<f64>,
}

impl TrajectoryBatch {
    pub fn positions(&self) -> &[f64] {
        &self.positions
    }

    pub fn row_len(&self) -> usize {
        match self.mode {
            StorageMode::FinalsOnly => 1,
            StorageMode::FullPaths => self.params.t + 1,
        }
    }

    pub fn path(&self, walker: usize) -> Option<&[f64]> {
        match self.mode {
            StorageMode::FinalsOnly => None,
            StorageMode::FullPaths => {
                let w = self.row_len();
                self.positions.get(walker * w..(walker + 1) * w)
            }
        }
    }

    pub fn finals(&self) -> Vec<f64> {
        let w = self.row_len();
        self.positions.chunks(w).map(|row| row[w - 1]).collect()
    }

    pub fn to_table(&self) -> Table {
        match self.mode {
            StorageMode::FinalsOnly => {
                let mut table = Table::new(["walker_id", "position"]);
                for (i, x) in self.positions.iter().enumerate() {
                    table.push_row([i.to_string(), x.to_string()]);
                }
                table
            }
            StorageMode::FullPaths => {
                let mut table = Table::new(["walker_id", "step", "position"]);
                for (i, row) in self.positions.chunks(self.row_len()).enumerate() {
                    for (s, x) in row.iter().enumerate() {
                        table.push_row([i.to_string(), s.to_string(), x.to_string()]);
                    }
                }
                table
            }
        }
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        self.to_table().write_csv(w)
    }
}

fn check_resources(n_walkers: usize, t: usize, mode: StorageMode) -> Result<()> {
    if n_walkers == 0 {
        return invalid("n_walkers must be at least 1");
    }
    let work = n_walkers as u128 * t.max(1) as u128;
    if work > MAX_STEP_WORK {
        return Err(Error::ResourceLimit { requested: work, limit: MAX_STEP_WORK });
    }
    if mode == StorageMode::FullPaths {
        let cells = n_walkers as u128 * (t as u128 + 1);
        if cells > MAX_STORED_CELLS {
            return Err(Error::ResourceLimit { requested: cells, limit: MAX_STORED_CELLS });
        }
    }
    Ok(())
}

/// Runs `n_walkers` independent walks of `params.t` steps from `X_0 = 0`.
pub fn simulate(params: &WalkParams, n_walkers: usize, seed: u64, mode: StorageMode) -> Result<TrajectoryBatch> {
    check_resources(n_walkers, params.t, mode)?;
    let alpha = params.alpha.as_f64();
    let (p, t) = (params.p, params.t);
    let positions = match mode {
        StorageMode::FinalsOnly => {
            let mut out = vec![0.0; n_walkers];
            out.par_iter_mut().enumerate().for_each(|(i, slot)| {
                let mut rng = walker_rng(seed, i as u64);
                let mut x = 0.0;
                for _ in 0..t {
                    x = evolve(x, alpha, sample_step(p, &mut rng));
                }
                *slot = x;
            });
            out
        }
        StorageMode::FullPaths => {
            let mut out = vec![0.0; n_walkers * (t + 1)];
            out.par_chunks_mut(t + 1).enumerate().for_each(|(i, row)| {
                let mut rng = walker_rng(seed, i as u64);
                for s in 1..=t {
                    row[s] = evolve(row[s - 1], alpha, sample_step(p, &mut rng));
                }
            });
            out
        }
    };
    Ok(TrajectoryBatch { params: params.clone(), n_walkers, seed, mode, positions })
}

/// Symmetric simple random walk `S_t` (final positions only).
pub fn simulate_simple_rw(t: usize, n_walkers: usize, seed: u64) -> Result<TrajectoryBatch> {
    let params = WalkParams::new(Alpha::Real(1.0), 0.5, t)?;
    simulate(&params, n_walkers, seed, StorageMode::FinalsOnly)
}

/// Empirical CDF of a sample: `F(x) = #{v <= x} / n`.
#[derive(Clone, Debug, PartialEq)]
pub struct Ecdf {
    sorted: Vec<f64>,
}

impl Ecdf {
    pub fn new(mut samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptySample);
        }
        if samples.iter().any(|v| v.is_nan()) {
            return invalid("sample contains NaN");
        }
        samples.par_sort_unstable_by(f64::total_cmp);
        Ok(Ecdf { sorted: samples })
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.sorted.partition_point(|&v| v <= x) as f64 / self.sorted.len() as f64
    }

    /// Returns a copy with every sample multiplied by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Ecdf {
        Ecdf { sorted: self.sorted.iter().map(|v| v * factor).collect() }
    }

    /// Supremum distance to a continuous CDF, checked on both sides of each jump.
    pub fn sup_distance<F: Fn(f64) -> f64>(&self, cdf: F) -> f64 {
        let n = self.sorted.len() as f64;
        self.sorted
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let f = cdf(x);
                (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
            })
            .fold(0.0, f64::max)
    }
}

pub fn empirical_cdf(batch: &TrajectoryBatch) -> Result<Ecdf> {
    Ecdf::new(batch.finals())
}

/// Per walker, the number of times `s = 1..t` with `X_s >= 0`.
pub fn residence_times(batch: &TrajectoryBatch) -> Result<Vec<u32>> {
    if batch.mode != StorageMode::FullPaths {
        return Err(Error::FinalsOnlyBatch);
    }
    Ok(batch
        .positions
        .par_chunks(batch.row_len())
        .map(|row| row[1..].iter().filter(|&&x| x >= 0.0).count() as u32)
        .collect())
}

/// Normalized histogram of residence times over `0..=t`.
pub fn residence_pmf(times: &[u32], t: usize) -> Vec<f64> {
    let mut counts = vec![0u64; t + 1];
    for &r in times {
        counts[r as usize] += 1;
    }
    let n = times.len().max(1) as f64;
    counts.into_iter().map(|c| c as f64 / n).collect()
}
