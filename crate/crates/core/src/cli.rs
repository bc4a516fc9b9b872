//! Command-line front end: `stats`, `bound`, `simulate` and `certify`.
//!
//! Exit codes: 0 ok, 1 usage or input error, 2 invariant violation,
//! 3 resource limit.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{self, BoundInputs, BoundReport, Formula, Mode, Provenance, Route};
use crate::certify::{run_certify, CorpusConfig};
use crate::mixers::{commutator_norm, CommutatorNorm, CostInput, MixerSpec};
use crate::problems::{
    cost_stats_bruteforce, cost_stats_from_coefficients, maxcut_cost, min_pairwise_distance, search_cost, CostSpectrum, FeasibleSet,
    Graph, KLocalCost, SearchSet, SearchTag,
};
use crate::sim::{
    grover_fixed_schedule, optimize_angles, optimize_nested, run_qaoa, AngleSchedule, RunRecord, SimResult,
    Strategy,
};
use crate::{Error, Limits, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVARIANT: i32 = 2;
pub const EXIT_LIMITS: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "qaoa-bounds", version, about = "Lower bounds on QAOA round counts")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub limits: LimitArgs,
}

#[derive(Debug, Args)]
pub struct LimitArgs {
    /// Largest qubit count for dense eigensolves.
    #[arg(long, global = true, default_value_t = Limits::default().dense_qubits)]
    pub dense_qubits: usize,
    /// Largest qubit count for cost enumeration.
    #[arg(long, global = true, default_value_t = Limits::default().enumeration_qubits)]
    pub enum_qubits: usize,
    /// Largest round count for angle optimization.
    #[arg(long, global = true, default_value_t = Limits::default().optimizer_rounds)]
    pub optimizer_rounds: usize,
}

impl LimitArgs {
    pub fn limits(&self) -> Limits {
        Limits {
            dense_qubits: self.dense_qubits,
            enumeration_qubits: self.enum_qubits,
            optimizer_rounds: self.optimizer_rounds,
            ..Limits::default()
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Objective statistics and, with --mixer, the commutator norm.
    Stats(StatsArgs),
    /// Evaluate lower bounds on the round count.
    Bound(BoundArgs),
    /// Simulate QAOA and write a JSON-lines run log.
    Simulate(SimulateArgs),
    /// Run every invariant suite.
    Certify(CertifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MixerArg {
    Grover,
    Tf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Apriori,
    Aposteriori,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    /// Edge list, k-local JSON, search JSON or spectrum JSON.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub mixer: Option<MixerArg>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub mixer: MixerArg,
    /// Formula name; repeat for several. Defaults to every applicable one.
    #[arg(long)]
    pub formula: Vec<String>,
    /// Target approximation ratio.
    #[arg(long, conflicts_with = "lambda_grid")]
    pub lambda: Option<f64>,
    /// `start:stop:count` or a comma-separated list.
    #[arg(long)]
    pub lambda_grid: Option<String>,
    #[arg(long, value_enum, default_value_t = ModeArg::Apriori)]
    pub mode: ModeArg,
    /// Rounds of the simulated run (a-posteriori mode).
    #[arg(long)]
    pub p: Option<usize>,
    /// Angle schedule JSON for the simulated run; optimized when absent.
    #[arg(long)]
    pub schedule: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub mixer: MixerArg,
    /// Largest round count; every p in 0..=P is logged.
    #[arg(long)]
    pub p: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Run this schedule once instead of optimizing.
    #[arg(long, conflicts_with = "grover_fixed")]
    pub schedule: Option<PathBuf>,
    /// Use gamma = beta = pi at every round.
    #[arg(long)]
    pub grover_fixed: bool,
    /// Grid resolution per angle; multistart coordinate descent when absent.
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long, default_value_t = 8)]
    pub restarts: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long, default_value_t = CorpusConfig::default().seed)]
    pub seed: u64,
    #[arg(long, default_value_t = CorpusConfig::default().instances)]
    pub instances: usize,
    #[arg(long, default_value_t = CorpusConfig::default().sweep_runs)]
    pub runs: usize,
    /// Multiply every closed-form sigma by this factor (harness self-test).
    #[arg(long, hide = true)]
    pub corrupt_sigma: Option<f64>,
    #[command(flatten)]
    pub output: Output,
}

/// A parsed instance with whichever representations are available.
#[derive(Debug, Clone)]
pub enum Instance {
    Graph {
        graph: Graph,
        cost: KLocalCost,
        spectrum: Option<CostSpectrum>,
    },
    KLocal {
        cost: KLocalCost,
        spectrum: Option<CostSpectrum>,
        /// Why enumeration was skipped.
        skipped: Option<String>,
    },
    Search {
        set: SearchSet,
        spectrum: Option<CostSpectrum>,
    },
    Spectrum(CostSpectrum),
}

impl Instance {
    /// Parses an edge list or one of the JSON forms: `{"terms": ...}` for a
    /// k-local cost, `{"marked": ...}` or `{"generator": ...}` for search,
    /// and `{"n": .., "values": [...]}` for an explicit spectrum.
    pub fn parse(text: &str, limits: &Limits) -> Result<Self> {
        if !text.trim_start().starts_with('{') {
            let graph = Graph::parse(text)?;
            let (cost, spectrum) = maxcut_cost(&graph, limits)?;
            return Ok(Instance::Graph { graph, cost, spectrum });
        }
        let v: Value = serde_json::from_str(text)?;
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse { line: 1, msg: "expected a JSON object".into() })?;
        if obj.contains_key("terms") {
            let cost = KLocalCost::from_json(text)?;
            let (spectrum, skipped) = match cost.spectrum(limits) {
                Ok(s) => (Some(s), None),
                Err(e @ (Error::Limit { .. } | Error::Invalid(_) | Error::NotApplicable { .. })) => {
                    (None, Some(e.to_string()))
                }
                Err(e) => return Err(e),
            };
            Ok(Instance::KLocal { cost, spectrum, skipped })
        } else if obj.contains_key("marked") || obj.contains_key("generator") {
            let set = SearchSet::from_json(text)?;
            let spectrum = if set.n() <= limits.enumeration_qubits {
                Some(search_cost(&set, limits)?)
            } else {
                None
            };
            Ok(Instance::Search { set, spectrum })
        } else if obj.contains_key("values") {
            #[derive(serde::Deserialize)]
            struct SpectrumJson {
                n: usize,
                values: Vec<u64>,
                #[serde(default)]
                feasible: Option<FeasibleSet>,
            }
            let s: SpectrumJson = serde_json::from_value(v)?;
            let f = match s.feasible {
                Some(f) => f,
                None => FeasibleSet::full(s.n)?,
            };
            Ok(Instance::Spectrum(CostSpectrum::new(f, s.values)?))
        } else {
            Err(Error::Parse {
                line: 1,
                msg: "unrecognized JSON instance: expected `terms`, `marked`, `generator` or `values`".into(),
            })
        }
    }

    pub fn load(path: &Path, limits: &Limits) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Instance::parse(&text, limits)
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Graph { .. } => "maxcut",
            Instance::KLocal { .. } => "k-local",
            Instance::Search { .. } => "search",
            Instance::Spectrum(_) => "spectrum",
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Instance::Graph { graph, .. } => graph.n_vertices(),
            Instance::KLocal { cost, .. } => cost.n(),
            Instance::Search { set, .. } => set.n(),
            Instance::Spectrum(s) => s.feasible().n(),
        }
    }

    pub fn spectrum(&self) -> Option<&CostSpectrum> {
        match self {
            Instance::Graph { spectrum, .. }
            | Instance::KLocal { spectrum, .. }
            | Instance::Search { spectrum, .. } => spectrum.as_ref(),
            Instance::Spectrum(s) => Some(s),
        }
    }

    pub fn feasible(&self) -> Result<FeasibleSet> {
        match self {
            Instance::KLocal { cost, .. } => Ok(cost.domain().clone()),
            Instance::Spectrum(s) => Ok(s.feasible().clone()),
            _ => FeasibleSet::full(self.n()),
        }
    }

    fn cost_input(&self) -> CostInput<'_> {
        match self {
            Instance::Graph { cost, .. } | Instance::KLocal { cost, .. } => CostInput::KLocal(cost),
            Instance::Search { set, .. } => CostInput::Search(set),
            Instance::Spectrum(s) => CostInput::Spectrum(s),
        }
    }

    fn mixer(&self, m: MixerArg) -> Result<MixerSpec> {
        let spec = match m {
            MixerArg::Grover => MixerSpec::grover(self.feasible()?),
            MixerArg::Tf => MixerSpec::tf(self.n()),
        };
        spec.check_compatible(&self.feasible()?)?;
        Ok(spec)
    }

    fn label(&self) -> String {
        match self {
            Instance::Graph { graph, .. } => format!("maxcut n={} edges={}", graph.n_vertices(), graph.n_edges()),
            Instance::KLocal { cost, .. } => format!("k-local n={} terms={}", cost.n(), cost.terms().len()),
            Instance::Search { set, .. } => format!("search n={} m={}", set.n(), set.m()),
            Instance::Spectrum(s) => format!("spectrum n={} states={}", s.feasible().n(), s.len()),
        }
    }
}

/// Statistics of one route.
#[derive(Debug, Clone, Serialize)]
pub struct RouteStats {
    pub route: Route,
    pub c_avg: f64,
    pub sigma: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_avg_exact: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variance_exact: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct StatsReport {
    pub schema: u32,
    pub instance: String,
    pub kind: &'static str,
    pub n: usize,
    pub feasible_states: Option<usize>,
    pub c_max: f64,
    pub c_max_provenance: Provenance,
    pub c_avg: f64,
    pub sigma: f64,
    pub routes: Vec<RouteStats>,
    /// Whether all routes agree; absent with a single route.
    pub agreement: Option<bool>,
    pub flags: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub commutator_norm: Option<CommutatorNorm>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mixer: Option<&'static str>,
}

/// Computes every available statistics route for an instance.
pub fn instance_stats(inst: &Instance, mixer: Option<MixerArg>, limits: &Limits) -> Result<StatsReport> {
    let mut routes = Vec::new();
    let mut flags = Vec::new();
    let mut c_max = None;
    if let Some(spec) = inst.spectrum() {
        let s = cost_stats_bruteforce(spec)?;
        c_max = Some((s.c_max, Provenance::new(Route::Enumerated, "")));
        routes.push(RouteStats {
            route: Route::Enumerated,
            c_avg: s.c_avg,
            sigma: s.sigma,
            c_avg_exact: Some(spec.c_avg_exact()?.to_string()),
            variance_exact: Some(spec.variance_exact()?.to_string()),
        });
    }
    match inst {
        Instance::Graph { cost, .. } | Instance::KLocal { cost, .. } if cost.is_unconstrained() => {
            let (avg, sigma) = cost_stats_from_coefficients(cost)?;
            routes.push(RouteStats {
                route: Route::ClosedForm,
                c_avg: avg,
                sigma,
                c_avg_exact: None,
                variance_exact: None,
            });
        }
        Instance::Search { set, .. } => {
            let s = set.closed_form_stats();
            routes.push(RouteStats {
                route: Route::ClosedForm,
                c_avg: s.c_avg,
                sigma: s.sigma,
                c_avg_exact: None,
                variance_exact: None,
            });
            c_max.get_or_insert((1.0, Provenance::new(Route::ClosedForm, "indicator")));
        }
        _ => {}
    }
    if let Instance::KLocal { cost, skipped, .. } = inst {
        if let Some(why) = skipped {
            flags.push(format!("enumeration skipped: {why}"));
            flags.push("coefficient statistics only".into());
        }
        if c_max.is_none() {
            c_max = Some((
                cost.c_max_upper_bound(),
                Provenance::new(Route::UpperBound, "sum of constant and |alpha|"),
            ));
        }
    }
    let first = routes
        .first()
        .ok_or_else(|| Error::NoRoute("no statistics route for this instance".into()))?
        .clone();
    let agreement = (routes.len() > 1).then(|| {
        routes.iter().all(|r| {
            (r.c_avg - first.c_avg).abs() <= 1e-9 * first.c_avg.abs().max(1.0)
                && (r.sigma - first.sigma).abs() <= 1e-9 * first.sigma.max(1.0)
        })
    });
    let (c_max, c_max_provenance) = c_max.expect("set by every route");
    let (commutator_norm, mixer_label) = match mixer {
        Some(m) => {
            let spec = inst.mixer(m)?;
            (Some(commutator_norm(inst.cost_input(), &spec, limits)?), Some(spec.label()))
        }
        None => (None, None),
    };
    Ok(StatsReport {
        schema: 1,
        instance: inst.label(),
        kind: inst.kind(),
        n: inst.n(),
        feasible_states: inst.spectrum().map(|s| s.len()),
        c_max,
        c_max_provenance,
        c_avg: first.c_avg,
        sigma: first.sigma,
        routes,
        agreement,
        flags,
        commutator_norm,
        mixer: mixer_label,
    })
}

/// Quantities a bound may need, gathered once per instance and mixer.
pub struct BoundContext<'a> {
    pub inst: &'a Instance,
    pub mixer: MixerSpec,
    pub mode: Mode,
    pub c_max: f64,
    pub c_avg: f64,
    pub sigma: f64,
    pub stats_provenance: Provenance,
    pub comm: std::result::Result<CommutatorNorm, String>,
    /// Simulated run for a-posteriori bounds.
    pub run: Option<SimResult>,
}

impl<'a> BoundContext<'a> {
    pub fn new(inst: &'a Instance, mixer: MixerArg, mode: Mode, limits: &Limits) -> Result<Self> {
        let stats = instance_stats(inst, None, limits)?;
        let mixer = inst.mixer(mixer)?;
        let comm = commutator_norm(inst.cost_input(), &mixer, limits).map_err(|e| e.to_string());
        let route = stats.routes[0].route;
        Ok(BoundContext {
            inst,
            mixer,
            mode,
            c_max: stats.c_max,
            c_avg: stats.c_avg,
            sigma: stats.sigma,
            stats_provenance: Provenance::new(route, ""),
            comm,
            run: None,
        })
    }

    fn comm(&self) -> Result<&CommutatorNorm> {
        self.comm.as_ref().map_err(|e| Error::NoRoute(e.clone()))
    }

    fn inputs(&self, lambda: f64) -> Result<BoundInputs> {
        let mut b = BoundInputs::new(lambda, self.mode)
            .with_stats(self.c_max, self.c_avg, self.sigma, self.stats_provenance.clone())
            .with_n(self.inst.n())
            .constrained(!self.inst.feasible()?.is_full());
        if let Ok(c) = &self.comm {
            b = b.with_comm_norm(c.value, c.provenance.clone());
        }
        if let Some(r) = &self.run {
            b = b.with_h0_expectation(r.h0_expectation).with_overlap_sq(r.overlap_sq.min(1.0));
            if let Some(sx) = r.sum_x() {
                b = b.with_sum_x(sx);
            }
        }
        Ok(b)
    }

    fn not_applicable(f: Formula, why: &str) -> Error {
        Error::NotApplicable {
            formula: f.name(),
            reason: why.into(),
        }
    }

    fn search(&self, f: Formula) -> Result<&SearchSet> {
        match self.inst {
            Instance::Search { set, .. } => Ok(set),
            _ => Err(Self::not_applicable(f, "needs a search instance")),
        }
    }

    fn need_grover(&self, f: Formula) -> Result<()> {
        match self.mixer {
            MixerSpec::Grover { .. } => Ok(()),
            _ => Err(Self::not_applicable(f, "needs the Grover mixer")),
        }
    }

    fn need_tf(&self, f: Formula) -> Result<()> {
        match self.mixer {
            MixerSpec::TransverseField { .. } => Ok(()),
            _ => Err(Self::not_applicable(f, "needs the transverse-field mixer")),
        }
    }

    fn h0_term(&self) -> f64 {
        match (&self.mode, &self.run) {
            (Mode::APosteriori, Some(r)) => r.h0_expectation,
            _ => 0.0,
        }
    }

    /// Evaluates one formula at `lambda`.
    pub fn evaluate(&self, f: Formula, lambda: f64) -> Result<BoundReport> {
        let b = self.inputs(lambda)?;
        match f {
            Formula::AnnealingTime => {
                let c = self.comm()?.value;
                let r = bounds::annealing_time_bound(
                    self.h0_term(),
                    self.c_max - self.c_avg,
                    self.c_max * (1.0 - lambda),
                    c,
                )?;
                Ok(BoundReport { mode: self.mode, ..r })
            }
            Formula::QaoaRound => bounds::qaoa_round_bound(&b),
            Formula::Rescaled => {
                let c = self.comm()?.value;
                let r = bounds::rescaled_bound(self.h0_term(), lambda * self.c_max - self.c_avg, c)?;
                Ok(BoundReport { mode: self.mode, ..r })
            }
            Formula::GroverObjective => {
                self.need_grover(f)?;
                bounds::grover_objective_bound(&b)
            }
            Formula::GroverKlocal => {
                self.need_grover(f)?;
                match self.inst {
                    Instance::Graph { cost, .. } | Instance::KLocal { cost, .. } => {
                        bounds::grover_klocal_bound(&b, cost)
                    }
                    _ => Err(Self::not_applicable(f, "needs a k-local cost")),
                }
            }
            Formula::MaxcutGrover => {
                self.need_grover(f)?;
                match self.inst {
                    Instance::Graph { graph, .. } if graph.is_unweighted() => bounds::maxcut_grover_bound(
                        lambda,
                        self.c_max,
                        graph.n_edges() as u64,
                        self.run.as_ref().map(|r| r.overlap_sq.min(1.0)),
                    ),
                    _ => Err(Self::not_applicable(f, "needs an unweighted Max-Cut instance")),
                }
            }
            Formula::TfObjective => {
                self.need_tf(f)?;
                bounds::tf_objective_bound(&b)
            }
            Formula::GroverSearch => {
                self.need_grover(f)?;
                let s = self.search(f)?;
                bounds::grover_search_bound(lambda, s.space_size(), s.m())
            }
            Formula::TfSearchDist3 => {
                self.need_tf(f)?;
                let s = self.search(f)?;
                let spread = min_pairwise_distance(s.marked()).is_none_or(|d| d >= 3);
                if s.tag() != SearchTag::Dist3 && !spread {
                    return Err(Self::not_applicable(f, "needs a distance-3 marked set"));
                }
                bounds::tf_search_dist3_bound(lambda, s.n(), s.m())
            }
            Formula::TfSearchHamming => {
                self.need_tf(f)?;
                let s = self.search(f)?;
                match s.tag() {
                    SearchTag::HammingWeight(k) => {
                        bounds::tf_search_hamming_bound(lambda, s.n(), k as usize, s.m())
                    }
                    _ => Err(Self::not_applicable(f, "needs a complete Hamming layer")),
                }
            }
            Formula::Overlap => {
                let r = self.run.as_ref().ok_or_else(|| {
                    Self::not_applicable(f, "needs the final overlap (a-posteriori mode)")
                })?;
                bounds::overlap_bound(r.overlap_sq.min(1.0), 1.0, self.sigma)
            }
            Formula::SearchOverlap => {
                let s = self.search(f)?;
                bounds::search_overlap_bound(lambda, s.space_size(), s.m())
            }
        }
    }
}

/// One row of a bound report: a value or the reason it is unavailable.
#[derive(Debug, Clone, Serialize)]
pub struct BoundRow {
    pub formula: Formula,
    pub lambda: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<BoundReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Parses `start:stop:count` or `a,b,c`.
pub fn parse_lambda_grid(s: &str) -> Result<Vec<f64>> {
    let bad = || Error::invalid(format!("bad lambda grid {s:?}: use start:stop:count or a,b,c"));
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad());
    let parts: Vec<&str> = s.split(':').collect();
    let grid = match parts.len() {
        1 => s.split(',').map(num).collect::<Result<Vec<_>>>()?,
        3 => {
            let (a, b) = (num(parts[0])?, num(parts[1])?);
            let count: usize = parts[2].trim().parse().map_err(|_| bad())?;
            match count {
                0 => return Err(bad()),
                1 => vec![a],
                _ => (0..count).map(|i| a + (b - a) * i as f64 / (count - 1) as f64).collect(),
            }
        }
        _ => return Err(bad()),
    };
    if grid.iter().any(|l| !(0.0..=1.0).contains(l)) {
        return Err(Error::invalid(format!("lambda grid {s:?} leaves [0, 1]")));
    }
    Ok(grid)
}

fn rows_to_csv(rows: &[BoundRow]) -> String {
    let mut s = String::from("lambda,formula,p_lower,raw,trivial,mode,error\n");
    for r in rows {
        match &r.report {
            Some(b) => {
                let mode = serde_json::to_value(b.mode).ok();
                let mode = mode.as_ref().and_then(Value::as_str).unwrap_or("");
                let _ = writeln!(s, "{},{},{},{},{},{},", r.lambda, r.formula.name(), b.p_lower, b.raw, b.trivial, mode);
            }
            None => {
                let err = r.error.as_deref().unwrap_or("").replace('"', "'");
                let _ = writeln!(s, "{},{},,,,,\"{err}\"", r.lambda, r.formula.name());
            }
        }
    }
    s
}

fn strategy(grid: Option<usize>, restarts: usize) -> Strategy {
    match grid {
        Some(resolution) => Strategy::Grid { resolution },
        None => Strategy::MultistartCoordinateDescent { restarts },
    }
}

fn load_schedule(path: &Path) -> Result<AngleSchedule> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

fn need_spectrum<'a>(inst: &'a Instance, what: &str, limits: &Limits) -> Result<&'a CostSpectrum> {
    if let Some(s) = inst.spectrum() {
        return Ok(s);
    }
    if inst.n() > limits.enumeration_qubits {
        return Err(Error::Limit {
            what: "qubit count for enumeration",
            size: inst.n(),
            limit: limits.enumeration_qubits,
        });
    }
    Err(Error::invalid(format!("{what} needs an integer, non-negative cost")))
}

/// Outcome of a subcommand: the rendered report and the exit code.
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: EXIT_OK }
    }
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn cmd_stats(a: &StatsArgs, limits: &Limits) -> Result<Outcome> {
    let inst = Instance::load(&a.input, limits)?;
    let r = instance_stats(&inst, a.mixer, limits)?;
    let text = match a.output.format {
        Format::Json => pretty(&r),
        Format::Csv => {
            let mut s = String::from("route,c_max,c_avg,sigma\n");
            for rt in &r.routes {
                let route = serde_json::to_value(rt.route).ok();
                let _ = writeln!(
                    s,
                    "{},{},{},{}",
                    route.as_ref().and_then(Value::as_str).unwrap_or(""),
                    r.c_max,
                    rt.c_avg,
                    rt.sigma
                );
            }
            s
        }
    };
    let code = if r.agreement == Some(false) { EXIT_INVARIANT } else { EXIT_OK };
    Ok(Outcome { text, code })
}

pub fn cmd_bound(a: &BoundArgs, limits: &Limits) -> Result<Outcome> {
    let inst = Instance::load(&a.input, limits)?;
    let mode = match a.mode {
        ModeArg::Apriori => Mode::APriori,
        ModeArg::Aposteriori => Mode::APosteriori,
    };
    let mut ctx = BoundContext::new(&inst, a.mixer, mode, limits)?;
    let mut schedule = None;
    let lambdas = if mode == Mode::APosteriori {
        let spec = need_spectrum(&inst, "a-posteriori evaluation", limits)?;
        let (sched, result) = match (&a.schedule, a.p) {
            (Some(path), _) => {
                let s = load_schedule(path)?;
                let r = run_qaoa(spec, &ctx.mixer, &s, limits)?;
                (s, r)
            }
            (None, Some(p)) => optimize_angles(spec, &ctx.mixer, p, strategy(None, 8), a.seed, limits)?,
            (None, None) => return Err(Error::invalid("a-posteriori mode needs --p or --schedule")),
        };
        if a.lambda.is_some() || a.lambda_grid.is_some() {
            return Err(Error::invalid("a-posteriori mode takes lambda from the simulated run"));
        }
        let lambda = result.lambda.clamp(0.0, 1.0);
        ctx.run = Some(result);
        schedule = Some(sched);
        vec![lambda]
    } else {
        match (&a.lambda, &a.lambda_grid) {
            (Some(l), _) => vec![*l],
            (None, Some(g)) => parse_lambda_grid(g)?,
            (None, None) => return Err(Error::invalid("a-priori mode needs --lambda or --lambda-grid")),
        }
    };
    let explicit = !a.formula.is_empty();
    let formulas: Vec<Formula> = if explicit {
        a.formula
            .iter()
            .map(|f| Formula::parse(f).ok_or_else(|| Error::invalid(format!("unknown formula {f:?}"))))
            .collect::<Result<_>>()?
    } else {
        Formula::ALL.to_vec()
    };
    let mut rows = Vec::new();
    for &lambda in &lambdas {
        for &f in &formulas {
            match ctx.evaluate(f, lambda) {
                Ok(report) => rows.push(BoundRow {
                    formula: f,
                    lambda,
                    report: Some(report),
                    error: None,
                }),
                Err(e @ Error::Limit { .. }) => return Err(e),
                Err(Error::NotApplicable { .. }) | Err(Error::MissingIngredient(_)) if !explicit => {}
                Err(e) => rows.push(BoundRow {
                    formula: f,
                    lambda,
                    report: None,
                    error: Some(e.to_string()),
                }),
            }
        }
    }
    let grid = lambdas.len() > 1;
    let text = if a.output.format == Format::Csv || grid {
        rows_to_csv(&rows)
    } else {
        pretty(&json!({
            "schema": 1,
            "instance": inst.label(),
            "mixer": ctx.mixer.label(),
            "commutator_norm": ctx.comm.as_ref().ok(),
            "schedule": schedule,
            "run": ctx.run,
            "bounds": rows,
        }))
    };
    Ok(Outcome::ok(text))
}

pub fn cmd_simulate(a: &SimulateArgs, limits: &Limits) -> Result<Outcome> {
    let inst = Instance::load(&a.input, limits)?;
    let mixer = inst.mixer(a.mixer)?;
    let spec = need_spectrum(&inst, "simulation", limits)?;
    let runs: Vec<(AngleSchedule, SimResult)> = if let Some(path) = &a.schedule {
        let s = load_schedule(path)?;
        let r = run_qaoa(spec, &mixer, &s, limits)?;
        vec![(s, r)]
    } else if a.grover_fixed {
        (0..=a.p)
            .map(|p| {
                let s = if p == 0 { AngleSchedule::zeros(0) } else { grover_fixed_schedule(p)? };
                let r = run_qaoa(spec, &mixer, &s, limits)?;
                Ok((s, r))
            })
            .collect::<Result<_>>()?
    } else {
        optimize_nested(spec, &mixer, a.p, strategy(a.grid, a.restarts), a.seed, limits)?
    };
    let label = inst.label();
    let text = match a.output.format {
        Format::Json => runs
            .into_iter()
            .map(|(schedule, result)| {
                let mut line = RunRecord {
                    instance: label.clone(),
                    schedule,
                    result,
                }
                .to_json_line();
                line.push('\n');
                line
            })
            .collect(),
        Format::Csv => {
            let mut s = String::from("p,lambda,expected_cost,success_probability,overlap_sq,h0_expectation\n");
            for (_, r) in runs {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    r.p, r.lambda, r.expected_cost, r.success_probability, r.overlap_sq, r.h0_expectation
                );
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}

pub fn cmd_certify(a: &CertifyArgs, limits: &Limits) -> Result<Outcome> {
    let cfg = CorpusConfig {
        seed: a.seed,
        instances: a.instances,
        sweep_runs: a.runs,
        corrupt_sigma: a.corrupt_sigma,
        limits: *limits,
    };
    let summary = run_certify(&cfg)?;
    let text = match a.output.format {
        Format::Json => {
            let mut s = summary.to_json();
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from("check,cases,passed,worst\n");
            for c in &summary.checks {
                let _ = writeln!(s, "{},{},{},{:e}", c.name, c.cases, c.passed, c.worst);
            }
            s
        }
    };
    let code = if summary.passed { EXIT_OK } else { EXIT_INVARIANT };
    Ok(Outcome { text, code })
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Limit { .. } | Error::NoConvergence(_) => EXIT_LIMITS,
        Error::NonNormal(_) | Error::NonHermitian => EXIT_INVARIANT,
        _ => EXIT_USAGE,
    }
}

/// Runs the command line `args` (program name first), writing the report to
/// `stdout` or the `--out` file and diagnostics to `stderr`. Returns the exit
/// code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(stderr, "{}", e.render())
            } else {
                write!(stdout, "{}", e.render())
            };
            return code;
        }
    };
    let limits = cli.limits.limits();
    let (result, out) = match &cli.command {
        Command::Stats(a) => (cmd_stats(a, &limits), &a.output.out),
        Command::Bound(a) => (cmd_bound(a, &limits), &a.output.out),
        Command::Simulate(a) => (cmd_simulate(a, &limits), &a.output.out),
        Command::Certify(a) => (cmd_certify(a, &limits), &a.output.out),
    };
    match result {
        Ok(o) => {
            let written = match out {
                Some(path) => std::fs::write(path, &o.text),
                None => stdout.write_all(o.text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_USAGE;
            }
            if o.code == EXIT_INVARIANT {
                let _ = writeln!(stderr, "error: invariant violation");
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}
