use std::f64::consts::TAU;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::state::{init_uniform, StateVector};
use crate::mixers::MixerSpec;
use crate::problems::{CostSpectrum, SearchSet};
use crate::tolerance;
use crate::{Error, Limits, Result};

/// Reduces an angle into `[0, 2 pi)`.
pub(crate) fn reduce_angle(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    // rem_euclid can round up to exactly 2 pi for tiny negative inputs
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Phase-separator angles `gamma` and mixer angles `beta`, one pair per round,
/// stored reduced into `[0, 2 pi)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSchedule")]
pub struct AngleSchedule {
    gammas: Vec<f64>,
    betas: Vec<f64>,
}

#[derive(Deserialize)]
struct RawSchedule {
    gammas: Vec<f64>,
    betas: Vec<f64>,
}

impl TryFrom<RawSchedule> for AngleSchedule {
    type Error = Error;
    fn try_from(r: RawSchedule) -> Result<Self> {
        AngleSchedule::new(r.gammas, r.betas)
    }
}

impl AngleSchedule {
    pub fn new(gammas: Vec<f64>, betas: Vec<f64>) -> Result<Self> {
        if gammas.len() != betas.len() {
            return Err(Error::DimensionMismatch {
                expected: gammas.len(),
                actual: betas.len(),
            });
        }
        if gammas.iter().chain(&betas).any(|a| !a.is_finite()) {
            return Err(Error::invalid("angles must be finite"));
        }
        Ok(AngleSchedule {
            gammas: gammas.into_iter().map(reduce_angle).collect(),
            betas: betas.into_iter().map(reduce_angle).collect(),
        })
    }

    /// `p` rounds of zero angles.
    pub fn zeros(p: usize) -> Self {
        AngleSchedule {
            gammas: vec![0.0; p],
            betas: vec![0.0; p],
        }
    }

    /// Uniformly random angles.
    pub fn random<R: Rng>(p: usize, rng: &mut R) -> Self {
        let gammas = (0..p).map(|_| rng.random_range(0.0..TAU)).collect();
        let betas = (0..p).map(|_| rng.random_range(0.0..TAU)).collect();
        AngleSchedule { gammas, betas }
    }

    pub fn p(&self) -> usize {
        self.gammas.len()
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn betas(&self) -> &[f64] {
        &self.betas
    }

    /// `sum_j |beta_j| + |gamma_j|`, the annealing time of the matching
    /// bang-bang schedule.
    pub fn annealing_time(&self) -> f64 {
        self.gammas.iter().chain(&self.betas).map(|a| a.abs()).sum()
    }

    /// The same schedule with zero-angle rounds appended up to `p`.
    pub fn padded(&self, p: usize) -> Self {
        let mut s = self.clone();
        s.gammas.resize(p.max(self.p()), 0.0);
        s.betas.resize(p.max(self.p()), 0.0);
        s
    }

    /// All angles as one vector, gammas first.
    pub(crate) fn flat(&self) -> Vec<f64> {
        self.gammas.iter().chain(&self.betas).copied().collect()
    }

    pub(crate) fn from_flat(x: &[f64]) -> Self {
        let p = x.len() / 2;
        AngleSchedule {
            gammas: x[..p].iter().copied().map(reduce_angle).collect(),
            betas: x[p..].iter().copied().map(reduce_angle).collect(),
        }
    }
}

/// `p` rounds of Grover's algorithm: every angle is `pi`.
pub fn grover_fixed_schedule(p: usize) -> Result<AngleSchedule> {
    if p == 0 {
        return Err(Error::invalid("Grover schedules need p >= 1"));
    }
    let pi = std::f64::consts::PI;
    AngleSchedule::new(vec![pi; p], vec![pi; p])
}

/// Observables of a final QAOA state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimResult {
    pub p: usize,
    pub mixer: String,
    /// `<H_C>_p / C_max`; 1 when `C_max = 0`.
    pub lambda: f64,
    pub expected_cost: f64,
    pub c_max: u64,
    /// `<H_0>_p`.
    pub h0_expectation: f64,
    /// `|<psi0|psi_p>|^2`.
    pub overlap_sq: f64,
    /// `<X_j>_p` per qubit (transverse-field runs).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_expectations: Option<Vec<f64>>,
    /// Probability of measuring a string with `C(z) = C_max`.
    pub success_probability: f64,
}

impl SimResult {
    pub fn sum_x(&self) -> Option<f64> {
        self.x_expectations.as_ref().map(|x| x.iter().sum())
    }
}

fn check_sim_limits(c: &CostSpectrum, limits: &Limits) -> Result<()> {
    let f = c.feasible();
    if f.is_full() && f.n() > limits.sim_qubits {
        return Err(Error::Limit {
            what: "qubit count for simulation",
            size: f.n(),
            limit: limits.sim_qubits,
        });
    }
    if f.len() > 1usize << limits.sim_qubits {
        return Err(Error::Limit {
            what: "feasible set size for simulation",
            size: f.len(),
            limit: 1 << limits.sim_qubits,
        });
    }
    Ok(())
}

/// The final state `|psi_p>`.
pub fn evolve(
    c: &CostSpectrum,
    mixer: &MixerSpec,
    schedule: &AngleSchedule,
    limits: &Limits,
) -> Result<StateVector> {
    check_sim_limits(c, limits)?;
    mixer.check_compatible(c.feasible())?;
    let mut s = init_uniform(c.feasible())?;
    for (&g, &b) in schedule.gammas().iter().zip(schedule.betas()) {
        s.apply_phase_separator(c, g)?;
        match mixer {
            MixerSpec::Grover { .. } => s.apply_grover_mixer(b),
            MixerSpec::TransverseField { .. } => s.apply_tf_mixer(b)?,
        }
    }
    Ok(s)
}

/// `<H_C> / C_max` of a state.
pub(crate) fn lambda_of(s: &StateVector, c: &CostSpectrum) -> Result<f64> {
    let e = s.cost_expectation(c)?;
    Ok(if c.c_max() == 0 { 1.0 } else { e / c.c_max() as f64 })
}

/// Extracts every observable the a-posteriori bounds consume.
pub fn observe(s: &StateVector, c: &CostSpectrum, mixer: &MixerSpec, p: usize) -> Result<SimResult> {
    let expected_cost = s.cost_expectation(c)?;
    let c_max = c.c_max();
    let lambda = if c_max == 0 { 1.0 } else { expected_cost / c_max as f64 };
    let f = c.feasible();
    let values = c.values();
    let success_probability = s.mass_where(|z| {
        f.position(z).is_some_and(|i| values[i] == c_max)
    });
    let x_expectations = match mixer {
        MixerSpec::TransverseField { .. } => Some(s.x_expectations()?),
        MixerSpec::Grover { .. } => None,
    };
    Ok(SimResult {
        p,
        mixer: mixer.label().to_string(),
        lambda,
        expected_cost,
        c_max,
        h0_expectation: mixer.expectation(s)?,
        overlap_sq: s.uniform_overlap_sq(),
        x_expectations,
        success_probability,
    })
}

/// Runs the schedule and extracts the observables.
pub fn run_qaoa(
    c: &CostSpectrum,
    mixer: &MixerSpec,
    schedule: &AngleSchedule,
    limits: &Limits,
) -> Result<SimResult> {
    let s = evolve(c, mixer, schedule, limits)?;
    observe(&s, c, mixer, schedule.p())
}

/// One line of the JSON-lines run log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub instance: String,
    pub schedule: AngleSchedule,
    pub result: SimResult,
}

impl RunRecord {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

/// Per-qubit check of `<X_j> <= 2 sqrt(lambda(1-lambda))`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct XjReport {
    /// Probability mass on the marked strings.
    pub lambda: f64,
    pub threshold: f64,
    pub x_expectations: Vec<f64>,
    /// `threshold - <X_j>`, non-negative when the bound holds.
    pub margins: Vec<f64>,
    pub holds: bool,
}

/// Checks the transverse-field expectation bound used by the search
/// corollaries. Requires marked strings with no two one flip apart and
/// success probability above one half.
pub fn xj_bound_check(s: &StateVector, marked: &SearchSet) -> Result<XjReport> {
    if !s.feasible().is_full() || s.feasible().n() != marked.n() {
        return Err(Error::invalid("the check needs a full-space state on the search qubits"));
    }
    if !marked.is_flip_disjoint() {
        return Err(Error::NotApplicable {
            formula: "xj-bound",
            reason: "two marked strings are one bit flip apart".into(),
        });
    }
    let lambda = s.mass_where(|z| marked.contains(z));
    if lambda <= 0.5 {
        return Err(Error::NotApplicable {
            formula: "xj-bound",
            reason: format!("success probability {lambda} must exceed 1/2"),
        });
    }
    let threshold = 2.0 * (lambda * (1.0 - lambda)).max(0.0).sqrt();
    let x = s.x_expectations()?;
    let margins: Vec<f64> = x.iter().map(|v| threshold - v).collect();
    let holds = margins.iter().all(|m| *m >= -tolerance::ABS);
    Ok(XjReport {
        lambda,
        threshold,
        x_expectations: x,
        margins,
        holds,
    })
}
