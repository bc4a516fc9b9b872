//! End-to-end invariant harness: closed forms against numeric routes, and
//! a-posteriori bounds against simulated runs.
//!
//! Every check is seeded from [`CorpusConfig::seed`] and the summary contains
//! no timings, so a rerun with the same configuration produces identical
//! bytes.

use std::f64::consts::PI;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bounds::{self, BoundInputs, BoundReport, Mode, Provenance, Route};
use crate::mixers::{
    self, commutator_norm, grover_commutator_dense, CostInput, MixerSpec, TfSpectrumCommutator,
};
use crate::pauli;
use crate::problems::{
    cost_stats_bruteforce, cost_stats_from_coefficients, gen_dist3_set, gen_hamming_k_set, maxcut_cost,
    maximizing_string, search_cost, CostSpectrum, FeasibleSet, Graph, KLocalCost, SearchSet, SearchTag,
};
use crate::sim::{evolve, grover_fixed_schedule, observe, run_qaoa, AngleSchedule, SimResult};
use crate::spectra;
use crate::tolerance;
use crate::{Limits, Result};

/// Slack allowed when comparing a bound against the round count.
pub const SOUNDNESS_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusConfig {
    pub seed: u64,
    /// Random spectra, graphs and k-local costs per family.
    pub instances: usize,
    /// Simulated runs in the soundness sweep.
    pub sweep_runs: usize,
    /// Multiplies every closed-form `sigma_C` before comparison. Only for
    /// checking that the harness catches a wrong closed form.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corrupt_sigma: Option<f64>,
    pub limits: Limits,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            seed: 2024,
            instances: 30,
            sweep_runs: 100,
            corrupt_sigma: None,
            limits: Limits::default(),
        }
    }
}

/// Result of one invariant suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub cases: usize,
    pub passed: bool,
    /// Largest deviation observed (error or bound excess).
    pub worst: f64,
    /// First failing case.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reproducer: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertifySummary {
    pub schema: u32,
    pub config: CorpusConfig,
    pub checks: Vec<CheckOutcome>,
    pub passed: bool,
}

impl CertifySummary {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

struct Tally {
    name: &'static str,
    cases: usize,
    worst: f64,
    reproducer: Option<Value>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            cases: 0,
            worst: 0.0,
            reproducer: None,
        }
    }

    /// Records a case whose deviation is `err`; the case fails when `!ok`.
    fn record(&mut self, err: f64, ok: bool, case: impl FnOnce() -> Value) {
        self.cases += 1;
        if err.is_nan() || err > self.worst {
            self.worst = err;
        }
        if (!ok || err.is_nan()) && self.reproducer.is_none() {
            self.reproducer = Some(case());
        }
    }

    fn finish(self) -> CheckOutcome {
        CheckOutcome {
            name: self.name.into(),
            cases: self.cases,
            passed: self.reproducer.is_none(),
            worst: self.worst,
            reproducer: self.reproducer,
        }
    }
}

fn rng_for(cfg: &CorpusConfig, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(stream);
    rng
}

/// Random integer cost spectrum on the full space of `n` qubits.
pub fn random_spectrum<R: Rng>(n: usize, max_value: u64, rng: &mut R) -> Result<CostSpectrum> {
    let f = FeasibleSet::full(n)?;
    let values = (0..f.len()).map(|_| rng.random_range(0..=max_value)).collect();
    CostSpectrum::new(f, values)
}

/// Closed-form `sigma_C` against the dense commutator eigensolve.
pub fn check_grover_closed_form(cfg: &CorpusConfig) -> Result<CheckOutcome> {
    let mut t = Tally::new("grover-commutator-closed-form");
    let mut rng = rng_for(cfg, 1);
    for i in 0..cfg.instances {
        let n = 1 + i % 8;
        let c = random_spectrum(n, 1 + rng.random_range(0..20), &mut rng)?;
        let closed = mixers::grover_commutator_norm(&c)? * cfg.corrupt_sigma.unwrap_or(1.0);
        let dense = grover_commutator_dense(&c, &cfg.limits)?.spectral_norm()?;
        let err = (closed - dense).abs();
        t.record(err, err <= 1e-9, || {
            json!({"n": n, "values": c.values(), "closed_form": closed, "dense": dense})
        });
    }
    Ok(t.finish())
}

/// Max-Cut mean `|E|/2` and variance `|E|/4`, exactly.
pub fn check_maxcut_stats(cfg: &CorpusConfig) -> Result<CheckOutcome> {
    let mut t = Tally::new("maxcut-statistics");
    let mut rng = rng_for(cfg, 2);
    for i in 0..cfg.instances {
        let n = 2 + i % 11;
        let g = Graph::random_gnp(n, rng.random_range(0.2..0.9), &mut rng);
        let (_, spec) = maxcut_cost(&g, &cfg.limits)?;
        let spec = spec.expect("small graph");
        let e = g.n_edges() as i128;
        let avg_ok = spec.c_avg_exact()? == Ratio::new(e, 2);
        let var_ok = spec.variance_exact()? == Ratio::new(e, 4);
        let s = cost_stats_bruteforce(&spec)?;
        let err = (s.sigma - (e as f64).sqrt() / 2.0).abs();
        t.record(err, avg_ok && var_ok, || json!({"graph": g.to_edge_list()}));
    }
    Ok(t.finish())
}

/// Coefficient statistics against enumeration for random k-local costs.
pub fn check_coefficient_stats(cfg: &CorpusConfig) -> Result<CheckOutcome> {
    let mut t = Tally::new("coefficient-statistics");
    let mut rng = rng_for(cfg, 3);
    for i in 0..cfg.instances {
        let n = 2 + i % 9;
        let k = 1 + rng.random_range(0..n.min(4));
        let h = KLocalCost::random_integer(n, k, 1 + rng.random_range(0..8), 5, &mut rng)?;
        let spec = h.spectrum(&cfg.limits)?;
        let brute = cost_stats_bruteforce(&spec)?;
        let (avg, sigma) = cost_stats_from_coefficients(&h)?;
        let sigma = sigma * cfg.corrupt_sigma.unwrap_or(1.0);
        let exact = spec.c_avg_exact()?;
        let avg_ok = (avg * *exact.denom() as f64 - *exact.numer() as f64).abs() <= 1e-9;
        let err = (sigma - brute.sigma).abs();
        t.record(err, err <= 1e-9 && avg_ok, || {
            json!({"cost": serde_json::from_str::<Value>(&h.to_json()).unwrap_or(Value::Null)})
        });
    }
    Ok(t.finish())
}

/// Star and layer radii, and transverse-field search commutator norms,
/// against dense eigensolves.
pub fn check_search_spectra(cfg: &CorpusConfig) -> Result<CheckOutcome> {
    let mut t = Tally::new("search-commutator-spectra");
    let dense_max = cfg.limits.dense_qubits.min(10);
    for n in 1..=dense_max {
        let star = spectra::spectral_radius(&spectra::star_adjacency(n));
        let err = (star - spectra::star_radius(n)).abs();
        t.record(err, err <= 1e-8, || json!({"star": n}));
        for k in 1..n {
            let dense = spectra::layer_radius_dense(n, k, &cfg.limits)?;
            let err = (dense - spectra::layer_radius(n, k)?).abs();
            t.record(err, err <= 1e-8, || json!({"layer": [n, k]}));
        }
    }
    for n in 1..=dense_max.min(8) {
        for k in 1..n {
            let s = gen_hamming_k_set(n, k as u32)?;
            let c = search_cost(&s, &cfg.limits)?;
            let dense = TfSpectrumCommutator::new(&c)?.to_dense(&cfg.limits)?.spectral_norm()?;
            let err = (dense - mixers::tf_hamming_k_norm(n, k)?).abs();
            t.record(err, err <= 1e-8, || json!({"hamming": [n, k]}));
        }
        for m in 1..=4 {
            let out = gen_dist3_set(n, m, cfg.seed ^ (n * 8 + m) as u64)?;
            let c = search_cost(&out.set, &cfg.limits)?;
            let dense = TfSpectrumCommutator::new(&c)?.to_dense(&cfg.limits)?.spectral_norm()?;
            let err = (dense - mixers::tf_search_dist3_norm(n)?).abs();
            t.record(err, err <= 1e-8, || json!({"dist3": {"n": n, "marked": out.set.marked()}}));
        }
    }
    Ok(t.finish())
}

/// Fixed-angle Grover at `n = 10`, `m = 1`, `p = 25`.
pub fn check_grover_fixed(cfg: &CorpusConfig) -> Result<CheckOutcome> {
    let mut t = Tally::new("grover-fixed-angle");
    let s = SearchSet::new(10, vec![0b1011001110], SearchTag::Generic)?;
    let c = search_cost(&s, &cfg.limits)?;
    let g = MixerSpec::grover(FeasibleSet::full(10)?);
    let theta = (1.0f64 / 32.0).asin();
    for p in 1..=25 {
        let r = run_qaoa(&c, &g, &grover_fixed_schedule(p)?, &cfg.limits)?;
        let want = ((2 * p + 1) as f64 * theta).sin().powi(2);
        let err = (r.success_probability - want).abs();
        let via_sigma = bounds::grover_search_bound(r.lambda, 1024, 1)?.p_lower;
        let via_overlap = bounds::search_overlap_bound(r.lambda, 1024, 1)?.p_lower;
        let ok = err <= 1e-6 && via_sigma <= p as f64 && via_overlap <= p as f64 && (p < 25 || r.success_probability >= 0.999);
        t.record(err, ok, || json!({"p": p, "success": r.success_probability, "closed_form": want}));
    }
    Ok(t.finish())
}

/// A cost instance in the soundness sweep.
#[derive(Debug, Clone)]
pub enum SweepInstance {
    MaxCut { graph: Graph, cost: KLocalCost, spectrum: CostSpectrum },
    Search { set: SearchSet, spectrum: CostSpectrum },
}

impl SweepInstance {
    pub fn maxcut(graph: Graph, limits: &Limits) -> Result<Self> {
        let (cost, spec) = maxcut_cost(&graph, limits)?;
        let spectrum = spec.ok_or_else(|| crate::Error::invalid("graph too large to enumerate"))?;
        Ok(SweepInstance::MaxCut { graph, cost, spectrum })
    }

    pub fn search(set: SearchSet, limits: &Limits) -> Result<Self> {
        let spectrum = search_cost(&set, limits)?;
        Ok(SweepInstance::Search { set, spectrum })
    }

    pub fn spectrum(&self) -> &CostSpectrum {
        match self {
            SweepInstance::MaxCut { spectrum, .. } | SweepInstance::Search { spectrum, .. } => spectrum,
        }
    }

    pub fn n(&self) -> usize {
        self.spectrum().feasible().n()
    }

    fn cost_input(&self) -> CostInput<'_> {
        match self {
            SweepInstance::MaxCut { cost, .. } => CostInput::KLocal(cost),
            SweepInstance::Search { set, .. } => CostInput::Search(set),
        }
    }

    pub fn describe(&self) -> Value {
        match self {
            SweepInstance::MaxCut { graph, .. } => json!({"maxcut": graph.to_edge_list()}),
            SweepInstance::Search { set, .. } => serde_json::from_str::<Value>(&set.to_json())
                .map(|v| json!({"search": v}))
                .unwrap_or(Value::Null),
        }
    }
}

/// Every a-posteriori bound that applies to a finished run. `comm` is
/// `||[H_C, H_0]||` for the run's mixer.
pub fn applicable_bounds(
    inst: &SweepInstance,
    mixer: &MixerSpec,
    comm: f64,
    r: &SimResult,
) -> Result<Vec<BoundReport>> {
    let spec = inst.spectrum();
    let stats = cost_stats_bruteforce(spec)?;
    let lambda = r.lambda.clamp(0.0, 1.0);
    let sigma = stats.sigma;
    let mut out = Vec::new();
    let base = BoundInputs::new(lambda, Mode::APosteriori)
        .with_stats(stats.c_max, stats.c_avg, sigma, Provenance::new(Route::Enumerated, ""))
        .with_comm_norm(comm, Provenance::new(Route::Numeric, ""))
        .with_h0_expectation(r.h0_expectation)
        .with_overlap_sq(r.overlap_sq.min(1.0))
        .with_n(inst.n());
    if comm > 0.0 {
        out.push(bounds::qaoa_round_bound(&base)?);
        let delta = lambda * stats.c_max - stats.c_avg;
        out.push(bounds::rescaled_bound(r.h0_expectation, delta, comm)?);
    }
    if sigma > 0.0 {
        // the initial-state projector commutes with both mixers
        out.push(bounds::overlap_bound(r.overlap_sq.min(1.0), 1.0, sigma)?);
    }
    match mixer {
        MixerSpec::Grover { .. } => {
            if sigma > 0.0 {
                out.push(bounds::grover_objective_bound(&base)?);
            }
            if let SweepInstance::MaxCut { graph, cost, .. } = inst {
                if cost.sum_alpha_sq() > 0.0 {
                    out.push(bounds::grover_klocal_bound(&base, cost)?);
                }
                if graph.is_unweighted() && graph.n_edges() > 0 {
                    out.push(bounds::maxcut_grover_bound(
                        lambda,
                        stats.c_max,
                        graph.n_edges() as u64,
                        Some(r.overlap_sq.min(1.0)),
                    )?);
                }
            }
            if let SweepInstance::Search { set, .. } = inst {
                out.push(bounds::grover_search_bound(lambda, set.space_size(), set.m())?);
            }
        }
        MixerSpec::TransverseField { .. } => {
            let sum_x = r.sum_x().unwrap_or(inst.n() as f64);
            if comm > 0.0 {
                out.push(bounds::tf_objective_bound(&base.clone().with_sum_x(sum_x))?);
            }
            if let SweepInstance::Search { set, .. } = inst {
                if lambda > 0.5 {
                    match set.tag() {
                        SearchTag::Dist3 => {
                            out.push(bounds::tf_search_dist3_bound(lambda, set.n(), set.m())?)
                        }
                        SearchTag::HammingWeight(k) if k > 0 && (k as usize) < set.n() => out.push(
                            bounds::tf_search_hamming_bound(lambda, set.n(), k as usize, set.m())?,
                        ),
                        _ => {}
                    }
                }
            }
        }
    }
    if let SweepInstance::Search { set, .. } = inst {
        out.push(bounds::search_overlap_bound(lambda, set.space_size(), set.m())?);
    }
    Ok(out)
}

/// The default sweep corpus: Max-Cut on `n <= 10` and search on `n <= 12`.
pub fn sweep_instances(cfg: &CorpusConfig) -> Result<Vec<SweepInstance>> {
    let lim = &cfg.limits;
    let mut rng = rng_for(cfg, 6);
    let mut out = Vec::new();
    for n in [4usize, 5, 6, 7, 8, 9, 10] {
        let g = if n % 2 == 0 {
            Graph::random_regular(n, 3, &mut rng)?
        } else {
            Graph::random_gnp(n, 0.5, &mut rng)
        };
        if g.n_edges() > 0 {
            out.push(SweepInstance::maxcut(g, lim)?);
        }
    }
    out.push(SweepInstance::maxcut(Graph::complete_bipartite(3, 3), lim)?);
    out.push(SweepInstance::maxcut(Graph::cycle(5)?, lim)?);
    out.push(SweepInstance::maxcut(Graph::path(3), lim)?);
    for n in [2usize, 4, 6, 8, 10, 12] {
        let z = rng.random_range(0..1u64 << n);
        out.push(SweepInstance::search(SearchSet::new(n, vec![z], SearchTag::Generic)?, lim)?);
    }
    for (n, m) in [(6usize, 2usize), (8, 4), (10, 3)] {
        out.push(SweepInstance::search(gen_dist3_set(n, m, rng.random())?.set, lim)?);
    }
    out.push(SweepInstance::search(gen_hamming_k_set(6, 2)?, lim)?);
    Ok(out)
}

/// One simulated run of the sweep and its worst bound excess over `p`.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRun {
    pub instance: usize,
    pub mixer: String,
    pub schedule: AngleSchedule,
    pub result: SimResult,
    pub bounds: Vec<BoundReport>,
    /// `max(bound) - p`; the run is sound when this is at most zero.
    pub excess: f64,
}

/// Simulates `runs` seeded random schedules (p in 1..=5) over the corpus with
/// both mixers and evaluates every applicable bound.
pub fn soundness_sweep(cfg: &CorpusConfig, instances: &[SweepInstance], runs: usize) -> Result<Vec<SweepRun>> {
    let lim = cfg.limits;
    let mixers: Vec<[MixerSpec; 2]> = instances
        .iter()
        .map(|i| {
            let f = i.spectrum().feasible().clone();
            [MixerSpec::grover(f), MixerSpec::tf(i.n())]
        })
        .collect();
    let norms: Vec<[f64; 2]> = instances
        .par_iter()
        .zip(mixers.par_iter())
        .map(|(inst, ms)| -> Result<[f64; 2]> {
            Ok([
                commutator_norm(inst.cost_input(), &ms[0], &lim)?.value,
                commutator_norm(inst.cost_input(), &ms[1], &lim)?.value,
            ])
        })
        .collect::<Result<_>>()?;
    (0..runs)
        .into_par_iter()
        .map(|r| {
            let idx = r % instances.len();
            let which = (r / instances.len()) % 2;
            let p = 1 + r % 5;
            let mut rng = rng_for(cfg, 1000 + r as u64);
            let schedule = AngleSchedule::random(p, &mut rng);
            let inst = &instances[idx];
            let mixer = &mixers[idx][which];
            let state = evolve(inst.spectrum(), mixer, &schedule, &lim)?;
            let result = observe(&state, inst.spectrum(), mixer, p)?;
            let bounds = applicable_bounds(inst, mixer, norms[idx][which], &result)?;
            let excess = bounds
                .iter()
                .map(|b| b.p_lower - p as f64)
                .fold(f64::NEG_INFINITY, f64::max);
            Ok(SweepRun {
                instance: idx,
                mixer: mixer.label().into(),
                schedule,
                result,
                bounds,
                excess,
            })
        })
        .collect()
}

fn check_soundness(cfg: &CorpusConfig) -> Result<CheckOutcome> {
    let mut t = Tally::new("bound-soundness");
    let instances = sweep_instances(cfg)?;
    for run in soundness_sweep(cfg, &instances, cfg.sweep_runs)? {
        t.record(run.excess.max(0.0), run.excess <= SOUNDNESS_SLACK, || {
            json!({
                "instance": instances[run.instance].describe(),
                "mixer": run.mixer,
                "schedule": run.schedule,
                "bounds": run.bounds,
            })
        });
    }
    Ok(t.finish())
}

/// Transverse-field bounds on 3-regular Max-Cut are trivial, and the
/// witness chain `||[H_C, H_TF]|| >= witness >= ||H_C'||` holds.
pub fn check_triviality(cfg: &CorpusConfig) -> Result<CheckOutcome> {
    let mut t = Tally::new("tf-triviality-and-witness");
    let mut rng = rng_for(cfg, 7);
    for i in 0..10 {
        let n = [4usize, 6, 8, 10, 12][i % 5];
        let g = Graph::random_regular(n, 3, &mut rng)?;
        let (h, spec) = maxcut_cost(&g, &cfg.limits)?;
        let spec = spec.expect("small graph");
        let stats = cost_stats_bruteforce(&spec)?;
        let comm = pauli::spectral_norm(&mixers::tf_commutator(&h)?, &cfg.limits)?.value;
        let b = bounds::tf_objective_bound(
            &BoundInputs::new(1.0, Mode::APriori)
                .with_stats(stats.c_max, stats.c_avg, stats.sigma, Provenance::new(Route::Enumerated, ""))
                .with_comm_norm(comm, Provenance::new(Route::Numeric, ""))
                .with_n(n),
        )?;
        let (s, traceless) = maximizing_string(&h, &cfg.limits)?;
        let w = mixers::s_star_witness(&h, s, 2)?;
        let tol = tolerance::NORM_REL * comm.max(1.0);
        let chain = comm >= w.value - tol && w.value >= traceless - 1e-9;
        let eq = (w.value - traceless).abs();
        t.record(eq, b.p_lower < 1.0 && chain && eq <= 1e-9, || {
            json!({"graph": g.to_edge_list(), "comm": comm, "witness": w.value, "traceless": traceless, "bound": b.p_lower})
        });
    }
    Ok(t.finish())
}

/// Scaling the cost by an integer and dividing the phase angles by the same
/// factor leaves the final state unchanged; the rescaled bound's endpoint
/// maximum matches a ratio scan.
pub fn check_rescaling(cfg: &CorpusConfig) -> Result<CheckOutcome> {
    let mut t = Tally::new("rescaling-invariance");
    let mut rng = rng_for(cfg, 8);
    let lim = cfg.limits;
    for i in 0..20 {
        let n = 3 + i % 6;
        let g = Graph::random_gnp(n, 0.6, &mut rng);
        let (_, spec) = maxcut_cost(&g, &lim)?;
        let spec = spec.expect("small graph");
        let mixer = if i % 2 == 0 {
            MixerSpec::tf(n)
        } else {
            MixerSpec::grover(spec.feasible().clone())
        };
        let sched = AngleSchedule::random(1 + i % 4, &mut rng);
        let a = evolve(&spec, &mixer, &sched, &lim)?;
        for alpha in [2u64, 3, 5] {
            let scaled = spec.scaled(alpha)?;
            let gammas: Vec<f64> = sched.gammas().iter().map(|g| g / alpha as f64).collect();
            let s2 = AngleSchedule::new(gammas, sched.betas().to_vec())?;
            let b = evolve(&scaled, &mixer, &s2, &lim)?;
            let ov = a.inner(&b)?.norm();
            t.record(1.0 - ov, ov >= 1.0 - 1e-10, || {
                json!({"graph": g.to_edge_list(), "alpha": alpha, "schedule": sched, "overlap": ov})
            });
        }
        let (h0, d1, c) = (rng.random_range(0.0..3.0), rng.random_range(0.0..3.0), rng.random_range(0.1..2.0));
        let end = bounds::rescaled_bound(h0, d1, c)?.raw;
        let (scan, _) = bounds::rescaled_ratio_scan(h0, d1, c, 10_000);
        // the scan stops at ratios 1e-6 and 1e6, so it can fall short of the
        // endpoint by at most |h0 - d1| * 1e-6 / (2 pi c)
        let resolution = (h0 - d1).abs() * 1e-6 / (2.0 * PI * c) + 1e-15;
        let gap = end - scan;
        t.record(gap.abs(), (-1e-15..=resolution).contains(&gap), || {
            json!({"h0": h0, "h1_delta": d1, "comm": c, "endpoint": end, "scan": scan})
        });
    }
    Ok(t.finish())
}

/// Bipartite Max-Cut with worst-cased overlap gives `(2 lambda - 1) sqrt|E| / (4 pi)`.
pub fn check_bipartite(_cfg: &CorpusConfig) -> Result<CheckOutcome> {
    let mut t = Tally::new("bipartite-maxcut");
    for e in [100u64, 10_000] {
        for lambda in [0.5, 0.75, 1.0] {
            let r = bounds::maxcut_grover_bound(lambda, e as f64, e, None)?;
            let want = (2.0 * lambda - 1.0) * (e as f64).sqrt() / (4.0 * PI);
            let err = (r.p_lower - want).abs();
            t.record(err, err <= 1e-12, || json!({"edges": e, "lambda": lambda}));
        }
    }
    Ok(t.finish())
}

/// Grover runs on search indicators keep equal amplitudes within the marked
/// and unmarked classes.
pub fn check_fair_sampling(cfg: &CorpusConfig) -> Result<CheckOutcome> {
    let mut t = Tally::new("grover-fair-sampling");
    let mut rng = rng_for(cfg, 9);
    for i in 0..cfg.instances.min(20) {
        let n = 2 + i % 8;
        let m = 1 + rng.random_range(0..(1usize << n) / 2);
        let mut marked: Vec<u64> = (0..1u64 << n).collect();
        for j in 0..m {
            let k = rng.random_range(j..marked.len());
            marked.swap(j, k);
        }
        marked.truncate(m);
        let set = SearchSet::new(n, marked, SearchTag::Generic)?;
        let spec = search_cost(&set, &cfg.limits)?;
        let sched = AngleSchedule::random(1 + i % 5, &mut rng);
        let mixer = MixerSpec::grover(spec.feasible().clone());
        let s = evolve(&spec, &mixer, &sched, &cfg.limits)?;
        let amps = s.amplitudes();
        let first_m = amps[set.marked()[0] as usize];
        let first_u = (0..amps.len()).find(|z| !set.contains(*z as u64)).map(|z| amps[z]);
        let mut err = 0.0f64;
        for (z, a) in amps.iter().enumerate() {
            let reference = if set.contains(z as u64) { Some(first_m) } else { first_u };
            if let Some(r) = reference {
                err = err.max((a - r).norm());
            }
        }
        let r = observe(&s, &spec, &mixer, sched.p())?;
        // overlap from the two class amplitudes
        let (nn, mm) = (set.space_size() as f64, set.m() as f64);
        let ov_pred = match first_u {
            Some(u) => ((first_m * mm + u * (nn - mm)) / nn.sqrt()).norm_sqr(),
            None => (first_m * mm / nn.sqrt()).norm_sqr(),
        };
        err = err.max((ov_pred - r.overlap_sq).abs());
        t.record(err, err <= 1e-10, || json!({"n": n, "marked": set.marked(), "schedule": sched}));
    }
    Ok(t.finish())
}

/// Runs every suite.
pub fn run_certify(cfg: &CorpusConfig) -> Result<CertifySummary> {
    let checks = vec![
        check_grover_closed_form(cfg)?,
        check_maxcut_stats(cfg)?,
        check_coefficient_stats(cfg)?,
        check_search_spectra(cfg)?,
        check_grover_fixed(cfg)?,
        check_soundness(cfg)?,
        check_triviality(cfg)?,
        check_rescaling(cfg)?,
        check_bipartite(cfg)?,
        check_fair_sampling(cfg)?,
    ];
    let passed = checks.iter().all(|c| c.passed);
    Ok(CertifySummary {
        schema: 1,
        config: cfg.clone(),
        checks,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> CorpusConfig {
        CorpusConfig {
            instances: 6,
            sweep_runs: 20,
            ..CorpusConfig::default()
        }
    }

    #[test]
    fn corrupted_sigma_is_caught() {
        let cfg = CorpusConfig {
            corrupt_sigma: Some(1.01),
            ..small()
        };
        let out = check_grover_closed_form(&cfg).unwrap();
        assert!(!out.passed);
        assert!(out.reproducer.unwrap().get("values").is_some());
        assert!(check_grover_closed_form(&small()).unwrap().passed);
    }

    #[test]
    fn cheap_suites_pass() {
        let cfg = small();
        for c in [
            check_maxcut_stats(&cfg).unwrap(),
            check_coefficient_stats(&cfg).unwrap(),
            check_bipartite(&cfg).unwrap(),
            check_fair_sampling(&cfg).unwrap(),
        ] {
            assert!(c.passed, "{c:?}");
        }
    }
}
