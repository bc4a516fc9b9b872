use std::f64::consts::TAU;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::run::{evolve, lambda_of, run_qaoa, AngleSchedule, SimResult};
use crate::mixers::MixerSpec;
use crate::problems::CostSpectrum;
use crate::{Error, Limits, Result};

/// Largest number of schedules a grid search may evaluate.
const MAX_GRID_POINTS: u128 = 1 << 22;

/// Improvements smaller than this are ignored by coordinate descent.
const IMPROVEMENT: f64 = 1e-12;

/// Smallest step coordinate descent refines to.
const MIN_STEP: f64 = 1e-4;

const MAX_SWEEPS: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "strategy", rename_all = "kebab-case")]
pub enum Strategy {
    /// Every schedule on a grid of `resolution` points per angle over `[0, 2 pi)`.
    Grid { resolution: usize },
    /// Coordinate descent from `restarts` seeded random starts.
    MultistartCoordinateDescent { restarts: usize },
}

fn check_limits(c: &CostSpectrum, p: usize, limits: &Limits) -> Result<()> {
    if p > limits.optimizer_rounds {
        return Err(Error::Limit {
            what: "round count for angle optimization",
            size: p,
            limit: limits.optimizer_rounds,
        });
    }
    if c.feasible().n() > limits.optimizer_qubits {
        return Err(Error::Limit {
            what: "qubit count for angle optimization",
            size: c.feasible().n(),
            limit: limits.optimizer_qubits,
        });
    }
    Ok(())
}

fn score(c: &CostSpectrum, m: &MixerSpec, s: &AngleSchedule, limits: &Limits) -> Result<f64> {
    lambda_of(&evolve(c, m, s, limits)?, c)
}

/// Keeps the higher score; ties go to the lower index so the result does not
/// depend on evaluation order.
fn better(a: (f64, usize), b: (f64, usize)) -> (f64, usize) {
    if a.0 > b.0 || (a.0 == b.0 && a.1 <= b.1) {
        a
    } else {
        b
    }
}

fn grid_point(idx: u128, resolution: usize, p: usize) -> AngleSchedule {
    let step = TAU / resolution as f64;
    let mut x = Vec::with_capacity(2 * p);
    let mut rest = idx;
    for _ in 0..2 * p {
        x.push((rest % resolution as u128) as f64 * step);
        rest /= resolution as u128;
    }
    AngleSchedule::from_flat(&x)
}

fn coordinate_descent(
    c: &CostSpectrum,
    m: &MixerSpec,
    start: AngleSchedule,
    limits: &Limits,
) -> Result<(f64, AngleSchedule)> {
    let mut x = start.flat();
    let mut best = score(c, m, &start, limits)?;
    let mut h = TAU / 8.0;
    for _ in 0..MAX_SWEEPS {
        let mut improved = false;
        for i in 0..x.len() {
            for dir in [1.0, -1.0] {
                let mut y = x.clone();
                y[i] += dir * h;
                let v = score(c, m, &AngleSchedule::from_flat(&y), limits)?;
                if v > best + IMPROVEMENT {
                    best = v;
                    x = y;
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            h /= 2.0;
            if h < MIN_STEP {
                break;
            }
        }
    }
    Ok((best, AngleSchedule::from_flat(&x)))
}

fn optimize_from(
    c: &CostSpectrum,
    m: &MixerSpec,
    p: usize,
    strategy: Strategy,
    seed: u64,
    warm: Option<&AngleSchedule>,
    limits: &Limits,
) -> Result<AngleSchedule> {
    if p == 0 {
        return Ok(AngleSchedule::zeros(0));
    }
    match strategy {
        Strategy::Grid { resolution } => {
            if resolution == 0 {
                return Err(Error::invalid("grid resolution must be positive"));
            }
            let total = (resolution as u128).checked_pow(2 * p as u32).unwrap_or(u128::MAX);
            if total > MAX_GRID_POINTS {
                return Err(Error::Limit {
                    what: "grid points for angle optimization",
                    size: total.min(usize::MAX as u128) as usize,
                    limit: MAX_GRID_POINTS as usize,
                });
            }
            let scores: Vec<f64> = (0..total)
                .into_par_iter()
                .map(|i| score(c, m, &grid_point(i, resolution, p), limits))
                .collect::<Result<_>>()?;
            let (_, best) = scores
                .iter()
                .enumerate()
                .map(|(i, &v)| (v, i))
                .reduce(better)
                .expect("nonempty grid");
            let mut s = grid_point(best as u128, resolution, p);
            if let Some(w) = warm {
                if score(c, m, w, limits)? > scores[best] {
                    s = w.clone();
                }
            }
            Ok(s)
        }
        Strategy::MultistartCoordinateDescent { restarts } => {
            if restarts == 0 && warm.is_none() {
                return Err(Error::invalid("at least one restart is needed"));
            }
            let mut starts: Vec<AngleSchedule> = warm.into_iter().cloned().collect();
            for r in 0..restarts {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(r as u64);
                starts.push(AngleSchedule::random(p, &mut rng));
            }
            let results: Vec<(f64, AngleSchedule)> = starts
                .into_par_iter()
                .map(|s| coordinate_descent(c, m, s, limits))
                .collect::<Result<_>>()?;
            let (_, best) = results
                .iter()
                .enumerate()
                .map(|(i, r)| (r.0, i))
                .reduce(better)
                .expect("nonempty starts");
            Ok(results[best].1.clone())
        }
    }
}

/// Best-effort search for angles maximizing the approximation ratio at `p`
/// rounds. Deterministic under `seed`. The returned ratio is a lower bound on
/// the true optimum.
pub fn optimize_angles(
    c: &CostSpectrum,
    m: &MixerSpec,
    p: usize,
    strategy: Strategy,
    seed: u64,
    limits: &Limits,
) -> Result<(AngleSchedule, SimResult)> {
    check_limits(c, p, limits)?;
    m.check_compatible(c.feasible())?;
    let s = optimize_from(c, m, p, strategy, seed, None, limits)?;
    let r = run_qaoa(c, m, &s, limits)?;
    Ok((s, r))
}

/// Optimizes `p = 0..=p_max` in turn, warm-starting each level from the
/// previous best padded with a zero-angle round. Padding embeds the smaller
/// schedule, so the ratio never decreases with `p`.
pub fn optimize_nested(
    c: &CostSpectrum,
    m: &MixerSpec,
    p_max: usize,
    strategy: Strategy,
    seed: u64,
    limits: &Limits,
) -> Result<Vec<(AngleSchedule, SimResult)>> {
    check_limits(c, p_max, limits)?;
    m.check_compatible(c.feasible())?;
    let mut out: Vec<(AngleSchedule, SimResult)> = Vec::with_capacity(p_max + 1);
    for p in 0..=p_max {
        let warm = out.last().map(|(s, _)| s.padded(p));
        let s = optimize_from(c, m, p, strategy, seed, warm.as_ref(), limits)?;
        let r = run_qaoa(c, m, &s, limits)?;
        out.push((s, r));
    }
    Ok(out)
}
