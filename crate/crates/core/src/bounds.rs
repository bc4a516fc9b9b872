//! Lower bounds on the number of QAOA rounds.
//!
//! Every bound has the shape `p >= numerator / denominator` where the
//! denominator is `2 pi` or `4 pi` times a commutator spectral norm. Values
//! below zero are clamped, and the raw value is kept. A bound below one round
//! is flagged as trivial but still reported.
//!
//! State-dependent numerator terms (`<H_0>_p`, the overlap with the initial
//! state, `sum_j <X_j>_p`) are read from the inputs in [`Mode::APosteriori`]
//! and replaced by their worst case in [`Mode::APriori`].

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::problems::{binomial, KLocalCost};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// State-dependent terms take their worst-case values.
    APriori,
    /// State-dependent terms come from an actual final state.
    APosteriori,
}

/// Identifier of each bound expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Formula {
    AnnealingTime,
    QaoaRound,
    Rescaled,
    GroverObjective,
    GroverKlocal,
    MaxcutGrover,
    TfObjective,
    GroverSearch,
    TfSearchDist3,
    TfSearchHamming,
    Overlap,
    SearchOverlap,
}

impl Formula {
    pub const ALL: [Formula; 12] = [
        Formula::AnnealingTime,
        Formula::QaoaRound,
        Formula::Rescaled,
        Formula::GroverObjective,
        Formula::GroverKlocal,
        Formula::MaxcutGrover,
        Formula::TfObjective,
        Formula::GroverSearch,
        Formula::TfSearchDist3,
        Formula::TfSearchHamming,
        Formula::Overlap,
        Formula::SearchOverlap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Formula::AnnealingTime => "annealing-time",
            Formula::QaoaRound => "qaoa-round",
            Formula::Rescaled => "rescaled",
            Formula::GroverObjective => "grover-objective",
            Formula::GroverKlocal => "grover-klocal",
            Formula::MaxcutGrover => "maxcut-grover",
            Formula::TfObjective => "tf-objective",
            Formula::GroverSearch => "grover-search",
            Formula::TfSearchDist3 => "tf-search-dist3",
            Formula::TfSearchHamming => "tf-search-hamming",
            Formula::Overlap => "overlap",
            Formula::SearchOverlap => "search-overlap",
        }
    }

    pub fn parse(s: &str) -> Option<Formula> {
        Formula::ALL.into_iter().find(|f| f.name() == s)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How an ingredient was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    ClosedForm,
    Enumerated,
    Numeric,
    UserSupplied,
    /// A valid upper bound used in place of the exact value.
    UpperBound,
    Simulated,
    WorstCase,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub route: Route,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Provenance {
    pub fn new(route: Route, detail: impl Into<String>) -> Self {
        Provenance {
            route,
            detail: detail.into(),
        }
    }
}

/// Ingredients for the objective bounds. Optional fields are only read by
/// formulas that need them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundInputs {
    pub lambda: f64,
    pub mode: Mode,
    pub c_max: Option<f64>,
    pub c_avg: Option<f64>,
    pub sigma: Option<f64>,
    pub comm_norm: Option<f64>,
    /// `<H_0>_p`.
    pub h0_expectation: Option<f64>,
    /// `|<psi0|psi_p>|^2`.
    pub overlap_sq: Option<f64>,
    /// `sum_j <X_j>_p`.
    pub sum_x_expectations: Option<f64>,
    pub n: Option<usize>,
    /// True when the feasible set is not the full space.
    #[serde(default)]
    pub constrained: bool,
    #[serde(default)]
    pub provenance: BTreeMap<String, Provenance>,
}

impl BoundInputs {
    pub fn new(lambda: f64, mode: Mode) -> Self {
        BoundInputs {
            lambda,
            mode,
            c_max: None,
            c_avg: None,
            sigma: None,
            comm_norm: None,
            h0_expectation: None,
            overlap_sq: None,
            sum_x_expectations: None,
            n: None,
            constrained: false,
            provenance: BTreeMap::new(),
        }
    }

    fn note(mut self, key: &str, p: Provenance) -> Self {
        self.provenance.insert(key.to_string(), p);
        self
    }

    pub fn with_stats(self, c_max: f64, c_avg: f64, sigma: f64, p: Provenance) -> Self {
        BoundInputs {
            c_max: Some(c_max),
            c_avg: Some(c_avg),
            sigma: Some(sigma),
            ..self
        }
        .note("stats", p)
    }

    pub fn with_c_max(self, c_max: f64, p: Provenance) -> Self {
        BoundInputs {
            c_max: Some(c_max),
            ..self
        }
        .note("c_max", p)
    }

    pub fn with_comm_norm(self, v: f64, p: Provenance) -> Self {
        BoundInputs {
            comm_norm: Some(v),
            ..self
        }
        .note("comm_norm", p)
    }

    pub fn with_h0_expectation(self, v: f64) -> Self {
        BoundInputs {
            h0_expectation: Some(v),
            ..self
        }
    }

    pub fn with_overlap_sq(self, v: f64) -> Self {
        BoundInputs {
            overlap_sq: Some(v),
            ..self
        }
    }

    pub fn with_sum_x(self, v: f64) -> Self {
        BoundInputs {
            sum_x_expectations: Some(v),
            ..self
        }
    }

    pub fn with_n(self, n: usize) -> Self {
        BoundInputs { n: Some(n), ..self }
    }

    pub fn constrained(self, constrained: bool) -> Self {
        BoundInputs {
            constrained,
            ..self
        }
    }

    fn check_lambda(&self) -> Result<()> {
        check_lambda(self.lambda)
    }

    /// The state-dependent term `name` in a-posteriori mode, or `worst` in
    /// a-priori mode.
    fn state_term(
        &self,
        value: Option<f64>,
        name: &'static str,
        worst: f64,
        prov: &mut BTreeMap<String, Provenance>,
    ) -> Result<f64> {
        match self.mode {
            Mode::APriori => {
                prov.insert(name.into(), Provenance::new(Route::WorstCase, ""));
                Ok(worst)
            }
            Mode::APosteriori => {
                let v = value.ok_or(Error::MissingIngredient(name))?;
                prov.entry(name.into())
                    .or_insert_with(|| Provenance::new(Route::Simulated, ""));
                Ok(v)
            }
        }
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::invalid(format!("lambda = {lambda} is outside [0, 1]")));
    }
    Ok(())
}

fn need(v: Option<f64>, name: &'static str) -> Result<f64> {
    v.ok_or(Error::MissingIngredient(name))
}

/// An evaluated bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub formula: Formula,
    /// `max(raw, 0)`.
    pub p_lower: f64,
    pub raw: f64,
    /// Additive numerator terms.
    pub numerator: BTreeMap<String, f64>,
    pub denominator: f64,
    pub mode: Mode,
    pub provenance: BTreeMap<String, Provenance>,
    /// Set when `p_lower < 1`.
    pub trivial: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl BoundReport {
    fn build(
        formula: Formula,
        mode: Mode,
        terms: &[(&str, f64)],
        denominator: f64,
        provenance: BTreeMap<String, Provenance>,
    ) -> Result<Self> {
        if denominator <= 0.0 || !denominator.is_finite() {
            return Err(Error::ZeroDenominator(formula.name()));
        }
        let numerator: BTreeMap<String, f64> =
            terms.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        let total: f64 = terms.iter().map(|(_, v)| v).sum();
        let raw = total / denominator;
        let p_lower = raw.max(0.0);
        Ok(BoundReport {
            formula,
            p_lower,
            raw,
            numerator,
            denominator,
            mode,
            provenance,
            trivial: p_lower < 1.0,
            note: None,
        })
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn numerator_total(&self) -> f64 {
        self.numerator.values().sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

/// Annealing-time bound `T >= (<H_0>_T + <H_1>_0 - <H_1>_T) / ||[H_1, H_0]||`
/// for a run starting in the ground state of `H_0`.
pub fn annealing_time_bound(h0_tf: f64, h1_0: f64, h1_tf: f64, comm_norm: f64) -> Result<BoundReport> {
    BoundReport::build(
        Formula::AnnealingTime,
        Mode::APosteriori,
        &[("<H0>_T", h0_tf), ("<H1>_0", h1_0), ("-<H1>_T", -h1_tf)],
        comm_norm,
        BTreeMap::new(),
    )
}

/// `p >= (<H_0>_p + lambda C_max - C_avg) / (4 pi ||[H_C, H_0]||)`.
pub fn qaoa_round_bound(b: &BoundInputs) -> Result<BoundReport> {
    b.check_lambda()?;
    let mut prov = b.provenance.clone();
    let c_max = need(b.c_max, "c_max")?;
    let c_avg = need(b.c_avg, "c_avg")?;
    let comm = need(b.comm_norm, "comm_norm")?;
    let h0 = b.state_term(b.h0_expectation, "h0_expectation", 0.0, &mut prov)?;
    BoundReport::build(
        Formula::QaoaRound,
        b.mode,
        &[("<H0>_p", h0), ("lambda*C_max", b.lambda * c_max), ("-C_avg", -c_avg)],
        4.0 * PI * comm,
        prov,
    )
}

/// Endpoint which maximizes the rescaled bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Endpoint {
    /// The mixer dominates (`alpha_0 >> alpha_1`).
    Mixer,
    /// The phase separator dominates (`alpha_0 << alpha_1`).
    Phase,
}

/// Best rescaling: the bound
/// `(a0 h0 + a1 dh1) / (2 pi (a0 + a1) ||[H_1, H_0]||)` is a weighted mean of
/// its two endpoint values, so its maximum over `a0, a1 > 0` is
/// `max(h0, dh1) / (2 pi ||[H_1, H_0]||)`.
pub fn rescaled_bound(h0_term: f64, h1_delta: f64, comm_norm: f64) -> Result<BoundReport> {
    let (winner, value) = if h0_term >= h1_delta {
        (Endpoint::Mixer, h0_term)
    } else {
        (Endpoint::Phase, h1_delta)
    };
    let name = match winner {
        Endpoint::Mixer => "<H0>_p",
        Endpoint::Phase => "<H1>_0-<H1>_p",
    };
    Ok(BoundReport::build(
        Formula::Rescaled,
        Mode::APosteriori,
        &[(name, value)],
        2.0 * PI * comm_norm,
        BTreeMap::new(),
    )?
    .with_note(match winner {
        Endpoint::Mixer => "endpoint: mixer-dominated",
        Endpoint::Phase => "endpoint: phase-dominated",
    }))
}

/// The rescaled bound at `alpha_1 / alpha_0 = ratio`.
pub fn rescaled_at_ratio(h0_term: f64, h1_delta: f64, comm_norm: f64, ratio: f64) -> f64 {
    (h0_term + ratio * h1_delta) / (2.0 * PI * (1.0 + ratio) * comm_norm)
}

/// Scans `points` log-spaced ratios in `[1e-6, 1e6]`, returning the best
/// value and the ratio that produced it.
pub fn rescaled_ratio_scan(h0_term: f64, h1_delta: f64, comm_norm: f64, points: usize) -> (f64, f64) {
    let points = points.max(2);
    let (lo, hi) = (-6.0f64, 6.0f64);
    (0..points)
        .map(|i| {
            let r = 10f64.powf(lo + (hi - lo) * i as f64 / (points - 1) as f64);
            (rescaled_at_ratio(h0_term, h1_delta, comm_norm, r), r)
        })
        .fold((f64::NEG_INFINITY, 0.0), |best, cur| if cur.0 > best.0 { cur } else { best })
}

fn grover_objective_with_sigma(
    b: &BoundInputs,
    sigma: f64,
    c_avg: f64,
    formula: Formula,
    mut prov: BTreeMap<String, Provenance>,
) -> Result<BoundReport> {
    b.check_lambda()?;
    let c_max = need(b.c_max, "c_max")?;
    if sigma <= 0.0 {
        return Err(Error::ZeroDenominator(formula.name()));
    }
    let overlap = b.state_term(b.overlap_sq, "overlap_sq", 1.0, &mut prov)?;
    if !(-1e-12..=1.0 + 1e-12).contains(&overlap) {
        return Err(Error::invalid(format!("overlap {overlap} is outside [0, 1]")));
    }
    BoundReport::build(
        formula,
        b.mode,
        &[
            ("1-overlap", 1.0 - overlap),
            ("lambda*C_max", b.lambda * c_max),
            ("-C_avg", -c_avg),
        ],
        4.0 * PI * sigma,
        prov,
    )
}

/// Grover mixer: `p >= (1 - |<psi0|psi_p>|^2 + lambda C_max - C_avg) / (4 pi sigma_C)`.
/// On a constrained feasible set the uniform state over `F` plays the role
/// of `|+>^n` and the report is labelled as a constrained extension.
pub fn grover_objective_bound(b: &BoundInputs) -> Result<BoundReport> {
    let sigma = need(b.sigma, "sigma")?;
    let c_avg = need(b.c_avg, "c_avg")?;
    let r = grover_objective_with_sigma(b, sigma, c_avg, Formula::GroverObjective, b.provenance.clone())?;
    Ok(if b.constrained {
        r.with_note("constrained extension")
    } else {
        r
    })
}

/// The Grover bound with `C_avg` and `sigma_C = sqrt(sum alpha^2)` read off
/// the Pauli-Z coefficients of an unconstrained k-local cost.
pub fn grover_klocal_bound(b: &BoundInputs, h: &KLocalCost) -> Result<BoundReport> {
    if !h.is_unconstrained() || b.constrained {
        return Err(Error::NotApplicable {
            formula: "grover-klocal",
            reason: "the coefficient form of sigma_C needs the full space".into(),
        });
    }
    let mut prov = b.provenance.clone();
    prov.insert(
        "stats".into(),
        Provenance::new(Route::ClosedForm, "C_avg = constant, sigma_C = sqrt(sum alpha^2)"),
    );
    grover_objective_with_sigma(
        b,
        h.sum_alpha_sq().sqrt(),
        h.constant(),
        Formula::GroverKlocal,
        prov,
    )
}

/// Unweighted Max-Cut with the Grover mixer:
/// `p >= (1 - overlap + lambda C_max - |E|/2) / (2 pi sqrt|E|)`.
/// `overlap_sq = None` worst-cases the overlap to 1.
pub fn maxcut_grover_bound(
    lambda: f64,
    c_max: f64,
    e_count: u64,
    overlap_sq: Option<f64>,
) -> Result<BoundReport> {
    check_lambda(lambda)?;
    if e_count == 0 {
        return Err(Error::ZeroDenominator("maxcut-grover"));
    }
    let mut prov = BTreeMap::new();
    let (mode, overlap) = match overlap_sq {
        None => {
            prov.insert("overlap_sq".into(), Provenance::new(Route::WorstCase, ""));
            (Mode::APriori, 1.0)
        }
        Some(o) => (Mode::APosteriori, o),
    };
    prov.insert(
        "stats".into(),
        Provenance::new(Route::ClosedForm, "C_avg = |E|/2, sigma_C = sqrt|E|/2"),
    );
    let e = e_count as f64;
    BoundReport::build(
        Formula::MaxcutGrover,
        mode,
        &[
            ("1-overlap", 1.0 - overlap),
            ("lambda*C_max", lambda * c_max),
            ("-C_avg", -e / 2.0),
        ],
        2.0 * PI * e.sqrt(),
        prov,
    )
}

/// Transverse-field mixer:
/// `p >= (n/2 - sum_j <X_j>/2 + lambda C_max - C_avg) / (4 pi ||[H_C, H_TF]||)`.
pub fn tf_objective_bound(b: &BoundInputs) -> Result<BoundReport> {
    b.check_lambda()?;
    let mut prov = b.provenance.clone();
    let n = b.n.ok_or(Error::MissingIngredient("n"))? as f64;
    let c_max = need(b.c_max, "c_max")?;
    let c_avg = need(b.c_avg, "c_avg")?;
    let comm = need(b.comm_norm, "comm_norm")?;
    let sum_x = b.state_term(b.sum_x_expectations, "sum_x_expectations", n, &mut prov)?;
    BoundReport::build(
        Formula::TfObjective,
        b.mode,
        &[
            ("<H0>_p", n / 2.0 - sum_x / 2.0),
            ("lambda*C_max", b.lambda * c_max),
            ("-C_avg", -c_avg),
        ],
        4.0 * PI * comm,
        prov,
    )
}

fn check_search(n_states: u64, m: u64) -> Result<()> {
    if m == 0 {
        return Err(Error::invalid("search needs at least one marked string"));
    }
    if m > n_states {
        return Err(Error::invalid(format!("m = {m} exceeds N = {n_states}")));
    }
    Ok(())
}

fn search_prov() -> BTreeMap<String, Provenance> {
    let mut prov = BTreeMap::new();
    prov.insert(
        "stats".into(),
        Provenance::new(Route::ClosedForm, "C_max = 1, C_avg = m/N, sigma_C = sqrt(m(N-m))/N"),
    );
    prov
}

/// Grover-mixer search with the largest overlap compatible with success
/// probability `lambda` folded in:
/// `p >= (lambda/2pi) sqrt((N-m)/m) - (1/2pi) sqrt(lambda(1-lambda))`.
pub fn grover_search_bound(lambda: f64, n_states: u64, m: u64) -> Result<BoundReport> {
    check_lambda(lambda)?;
    check_search(n_states, m)?;
    let (nn, mm) = (n_states as f64, m as f64);
    BoundReport::build(
        Formula::GroverSearch,
        Mode::APriori,
        &[
            ("lambda*sqrt((N-m)/m)", lambda * ((nn - mm) / mm).sqrt()),
            ("-sqrt(lambda(1-lambda))", -(lambda * (1.0 - lambda)).sqrt()),
        ],
        2.0 * PI,
        search_prov(),
    )
}

fn tf_search_numerator(lambda: f64, n: usize, m: u64) -> Vec<(&'static str, f64)> {
    let nf = n as f64;
    let big_n = 2f64.powi(n as i32);
    vec![
        ("n(1-2sqrt(lambda(1-lambda)))", nf * (1.0 - 2.0 * (lambda * (1.0 - lambda)).sqrt())),
        ("2*lambda", 2.0 * lambda),
        ("-2m/N", -2.0 * m as f64 / big_n),
    ]
}

fn check_half(lambda: f64, formula: &'static str) -> Result<()> {
    check_lambda(lambda)?;
    if lambda <= 0.5 {
        return Err(Error::NotApplicable {
            formula,
            reason: format!("lambda = {lambda} must exceed 1/2"),
        });
    }
    Ok(())
}

/// `N = 2^n` as a float, so the arithmetic bounds work past 64 qubits.
fn search_space(n: usize, m: u64) -> Result<f64> {
    if n == 0 || n > 1000 {
        return Err(Error::invalid(format!("search needs 1..=1000 qubits, got {n}")));
    }
    let big_n = 2f64.powi(n as i32);
    if m == 0 {
        return Err(Error::invalid("search needs at least one marked string"));
    }
    if m as f64 > big_n {
        return Err(Error::invalid(format!("m = {m} exceeds N = 2^{n}")));
    }
    Ok(big_n)
}

/// Transverse field, marked strings pairwise at Hamming distance at least 3:
/// `p >= (n(1 - 2 sqrt(lambda(1-lambda))) + 2 lambda - 2m/N) / (4 pi sqrt n)`.
pub fn tf_search_dist3_bound(lambda: f64, n: usize, m: u64) -> Result<BoundReport> {
    check_half(lambda, "tf-search-dist3")?;
    search_space(n, m)?;
    let mut prov = search_prov();
    prov.insert(
        "comm_norm".into(),
        Provenance::new(Route::ClosedForm, "star K_{1,n}: sqrt(n)/2"),
    );
    prov.insert(
        "sum_x_expectations".into(),
        Provenance::new(Route::WorstCase, "<X_j> <= 2 sqrt(lambda(1-lambda))"),
    );
    BoundReport::build(
        Formula::TfSearchDist3,
        Mode::APriori,
        &tf_search_numerator(lambda, n, m),
        4.0 * PI * (n as f64).sqrt(),
        prov,
    )
}

/// Transverse field, every string of Hamming weight `k` marked:
/// `p >= (n(1 - 2 sqrt(lambda(1-lambda))) + 2 lambda - 2m/N) / (4 pi sqrt(2k(n-k)+n))`.
pub fn tf_search_hamming_bound(lambda: f64, n: usize, k: usize, m: u64) -> Result<BoundReport> {
    check_half(lambda, "tf-search-hamming")?;
    search_space(n, m)?;
    if k == 0 || k >= n {
        return Err(Error::invalid(format!("weight {k} needs 0 < k < n = {n}")));
    }
    let layer = binomial(n as u64, k as u64);
    if m as u128 != layer {
        return Err(Error::invalid(format!("m = {m} but the weight-{k} layer has {layer} strings")));
    }
    let mut prov = search_prov();
    prov.insert(
        "comm_norm".into(),
        Provenance::new(Route::ClosedForm, "hypercube layers: sqrt(2k(n-k)+n)/2"),
    );
    prov.insert(
        "sum_x_expectations".into(),
        Provenance::new(Route::WorstCase, "<X_j> <= 2 sqrt(lambda(1-lambda))"),
    );
    BoundReport::build(
        Formula::TfSearchHamming,
        Mode::APriori,
        &tf_search_numerator(lambda, n, m),
        4.0 * PI * ((2 * k * (n - k) + n) as f64).sqrt(),
        prov,
    )
}

/// For a projector `P_0` commuting with the mixer:
/// `p >= |<P_0>_p - <P_0>_0| / (2 pi ||[P_0, H_C]||)`.
pub fn overlap_bound(p0_final: f64, p0_initial: f64, comm_norm: f64) -> Result<BoundReport> {
    for v in [p0_final, p0_initial] {
        if !(-1e-12..=1.0 + 1e-12).contains(&v) {
            return Err(Error::invalid(format!("projector expectation {v} is outside [0, 1]")));
        }
    }
    BoundReport::build(
        Formula::Overlap,
        Mode::APosteriori,
        &[("|<P0>_p-<P0>_0|", (p0_final - p0_initial).abs())],
        2.0 * PI * comm_norm,
        BTreeMap::new(),
    )
}

/// Search through the projector onto the initial state, with the largest
/// overlap compatible with success probability `lambda`:
/// `p >= (lambda(N-2m) + m - 2 sqrt(lambda(1-lambda) m (N-m))) / (2 pi sqrt(m(N-m)))`.
pub fn search_overlap_bound(lambda: f64, n_states: u64, m: u64) -> Result<BoundReport> {
    check_lambda(lambda)?;
    check_search(n_states, m)?;
    let (nn, mm) = (n_states as f64, m as f64);
    if m == n_states {
        return Ok(BoundReport {
            formula: Formula::SearchOverlap,
            p_lower: 0.0,
            raw: 0.0,
            numerator: BTreeMap::new(),
            denominator: 0.0,
            mode: Mode::APriori,
            provenance: search_prov(),
            trivial: true,
            note: Some("every string is marked".into()),
        });
    }
    BoundReport::build(
        Formula::SearchOverlap,
        Mode::APriori,
        &[
            ("lambda(N-2m)", lambda * (nn - 2.0 * mm)),
            ("m", mm),
            (
                "-2sqrt(lambda(1-lambda)m(N-m))",
                -2.0 * (lambda * (1.0 - lambda) * mm * (nn - mm)).sqrt(),
            ),
        ],
        2.0 * PI * (mm * (nn - mm)).sqrt(),
        search_prov(),
    )
}

/// Largest `|<psi0|psi>|^2` over states whose success probability is
/// `lambda`: `(sqrt(lambda m/N) + sqrt((1-lambda)(N-m)/N))^2`.
pub fn max_search_overlap(lambda: f64, n_states: u64, m: u64) -> f64 {
    let (nn, mm) = (n_states as f64, m as f64);
    ((lambda * mm / nn).sqrt() + ((1.0 - lambda) * (nn - mm) / nn).sqrt()).powi(2)
}
