//! Mixing Hamiltonians and the commutator norms `||[H_C, H_0]||`.
//!
//! Both mixers have integer spectra with a zero ground-state energy, so their
//! evolutions are `2 pi` periodic:
//!
//! - Grover: `I - |psi0><psi0|` with `|psi0>` uniform over `F`.
//! - Transverse field: `n/2 - sum_j X_j / 2`.
//!
//! Sign convention: with `H_C = c - sum alpha S` over Z products `S`,
//! [`tf_commutator`] returns `+i sum alpha sum_{l in S} Y_l Z_{S - l}`.
//! Norms do not depend on the overall phase.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{Provenance, Route};
use crate::pauli::{self, DenseOperator, LinearOperator, NormMethod, PauliString, PauliSum, PowerConfig};
use crate::problems::{check_enumerable, CostSpectrum, FeasibleSet, KLocalCost, SearchSet, SearchTag};
use crate::sim::StateVector;
use crate::{Error, Limits, Result};

/// Choice of mixing Hamiltonian.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MixerSpec {
    Grover { feasible: FeasibleSet },
    #[serde(rename = "tf")]
    TransverseField { n: usize },
}

impl MixerSpec {
    pub fn grover(feasible: FeasibleSet) -> Self {
        MixerSpec::Grover { feasible }
    }

    pub fn tf(n: usize) -> Self {
        MixerSpec::TransverseField { n }
    }

    pub fn n(&self) -> usize {
        match self {
            MixerSpec::Grover { feasible } => feasible.n(),
            MixerSpec::TransverseField { n } => *n,
        }
    }

    /// Both mixers have integer spectra.
    pub fn period(&self) -> f64 {
        2.0 * std::f64::consts::PI
    }

    pub fn label(&self) -> &'static str {
        match self {
            MixerSpec::Grover { .. } => "grover",
            MixerSpec::TransverseField { .. } => "tf",
        }
    }

    /// The mixer appropriate for a cost's feasible set.
    pub fn for_feasible(kind: &str, f: &FeasibleSet) -> Result<Self> {
        match kind {
            "grover" => Ok(MixerSpec::grover(f.clone())),
            "tf" => {
                if !f.is_full() {
                    return Err(Error::NotApplicable {
                        formula: "transverse-field mixer",
                        reason: format!("the transverse field does not preserve {}", f.label()),
                    });
                }
                Ok(MixerSpec::tf(f.n()))
            }
            other => Err(Error::invalid(format!("unknown mixer {other:?}"))),
        }
    }

    /// Checks the mixer acts on the cost's feasible set.
    pub fn check_compatible(&self, f: &FeasibleSet) -> Result<()> {
        match self {
            MixerSpec::Grover { feasible } if feasible == f => Ok(()),
            MixerSpec::Grover { feasible } => Err(Error::invalid(format!(
                "Grover mixer over {} applied to {}",
                feasible.label(),
                f.label()
            ))),
            MixerSpec::TransverseField { n } if !f.is_full() => Err(Error::NotApplicable {
                formula: "transverse-field mixer",
                reason: format!("the transverse field on {n} qubits does not preserve {}", f.label()),
            }),
            MixerSpec::TransverseField { n } if *n != f.n() => Err(Error::QubitMismatch(*n, f.n())),
            MixerSpec::TransverseField { .. } => Ok(()),
        }
    }

    /// `<H_0>` in a state.
    pub fn expectation(&self, s: &StateVector) -> Result<f64> {
        self.check_compatible(s.feasible())?;
        match self {
            MixerSpec::Grover { .. } => Ok(1.0 - s.uniform_overlap_sq()),
            MixerSpec::TransverseField { n } => {
                let sum: f64 = s.x_expectations()?.iter().sum();
                Ok(*n as f64 / 2.0 - sum / 2.0)
            }
        }
    }
}

/// `sigma_C = sqrt(N beta - alpha^2) / N` with `alpha = sum C`, `beta = sum C^2`,
/// which is the norm of `[H_C, I - |psi0><psi0|]`.
pub fn grover_commutator_norm(c: &CostSpectrum) -> Result<f64> {
    if c.is_empty() {
        return Err(Error::EmptyFeasibleSet);
    }
    Ok((c.variance_numerator() as f64).sqrt() / c.len() as f64)
}

/// The same closed form from the sums alone.
pub fn grover_commutator_norm_from_sums(n_states: u128, sum: u128, sum_sq: u128) -> Result<f64> {
    if n_states == 0 {
        return Err(Error::EmptyFeasibleSet);
    }
    let num = n_states as i128 * sum_sq as i128 - (sum as i128) * (sum as i128);
    if num < 0 {
        return Err(Error::invalid("sums are inconsistent: negative variance"));
    }
    Ok((num as f64).sqrt() / n_states as f64)
}

fn check_dense_states(d: usize, limits: &Limits) -> Result<()> {
    if d > 1usize << limits.dense_qubits {
        return Err(Error::Limit {
            what: "feasible set size for dense operators",
            size: d,
            limit: 1 << limits.dense_qubits,
        });
    }
    Ok(())
}

/// Dense `[H_C, I - |psi0><psi0|]` over `F`.
pub fn grover_commutator_dense(c: &CostSpectrum, limits: &Limits) -> Result<DenseOperator> {
    let d = c.len();
    check_dense_states(d, limits)?;
    if d == 0 {
        return Err(Error::EmptyFeasibleSet);
    }
    let diag = DMatrix::from_fn(d, d, |i, j| {
        if i == j {
            Complex64::new(c.values()[i] as f64, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let inv = 1.0 / d as f64;
    let grover = DMatrix::from_fn(d, d, |i, j| {
        Complex64::new(if i == j { 1.0 - inv } else { -inv }, 0.0)
    });
    DenseOperator::new(diag)?.commutator(&DenseOperator::new(grover)?)
}

/// `[H_C, H_TF]` for an unconstrained Z-product cost.
pub fn tf_commutator(h: &KLocalCost) -> Result<PauliSum> {
    if !h.is_unconstrained() {
        return Err(Error::NotApplicable {
            formula: "transverse-field commutator",
            reason: format!("domain {} is constrained", h.domain().label()),
        });
    }
    let n = h.n();
    let mut out = PauliSum::zero(n);
    for t in h.terms() {
        for l in (0..n).filter(|l| t.support >> l & 1 == 1) {
            // Y on l (both mask bits), Z on the rest of the support
            out.add_string(PauliString::new(n, 1 << l, t.support, Complex64::new(0.0, t.alpha))?)?;
        }
    }
    Ok(out)
}

/// `[diag(C), H_TF]` on the full space, applied without storing a matrix:
/// entry `(y, x)` is `(C(x) - C(y)) / 2` when `x, y` differ in one bit.
pub struct TfSpectrumCommutator<'a> {
    n: usize,
    values: &'a [u64],
}

impl<'a> TfSpectrumCommutator<'a> {
    pub fn new(c: &'a CostSpectrum) -> Result<Self> {
        if !c.feasible().is_full() {
            return Err(Error::NotApplicable {
                formula: "transverse-field commutator",
                reason: format!("domain {} is constrained", c.feasible().label()),
            });
        }
        Ok(TfSpectrumCommutator {
            n: c.feasible().n(),
            values: c.values(),
        })
    }

    /// Dense matrix, refused beyond the dense limit.
    pub fn to_dense(&self, limits: &Limits) -> Result<DenseOperator> {
        if self.n > limits.dense_qubits {
            return Err(Error::Limit {
                what: "qubit count for dense operators",
                size: self.n,
                limit: limits.dense_qubits,
            });
        }
        let d = 1usize << self.n;
        let mut m = DMatrix::<f64>::zeros(d, d);
        for y in 0..d {
            for j in 0..self.n {
                let x = y ^ (1 << j);
                m[(y, x)] = (self.values[x] as f64 - self.values[y] as f64) / 2.0;
            }
        }
        DenseOperator::from_real(&m)
    }
}

impl LinearOperator for TfSpectrumCommutator<'_> {
    fn dim(&self) -> usize {
        1usize << self.n
    }

    fn apply(&self, v: &[Complex64], out: &mut [Complex64]) {
        out.par_iter_mut().enumerate().for_each(|(y, o)| {
            let cy = self.values[y] as f64;
            *o = (0..self.n)
                .map(|j| {
                    let x = y ^ (1 << j);
                    v[x] * ((self.values[x] as f64 - cy) / 2.0)
                })
                .sum();
        });
    }

    fn apply_adjoint(&self, v: &[Complex64], out: &mut [Complex64]) {
        // real antisymmetric
        self.apply(v, out);
        out.par_iter_mut().for_each(|o| *o = -*o);
    }
}

/// `sqrt(n)/2`: for marked strings pairwise at distance at least 3 the
/// commutator is a disjoint union of stars `K_{1,n}` scaled by one half.
pub fn tf_search_dist3_norm(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    Ok((n as f64).sqrt() / 2.0)
}

/// `sqrt(2k(n-k) + n)/2` for the complete weight-`k` layer.
pub fn tf_hamming_k_norm(n: usize, k: usize) -> Result<f64> {
    Ok(crate::spectra::layer_radius(n, k)? / 2.0)
}

/// Product state built from a maximizing string, together with the
/// commutator expectation it witnesses.
#[derive(Debug, Clone)]
pub struct Witness {
    /// One `(a0, a1)` pair per qubit.
    pub qubits: Vec<[Complex64; 2]>,
    /// `|<s*|[H_C, H_TF]|s*>|`.
    pub value: f64,
    /// `||H_C'|| sqrt(k) ((k-1)/k)^((k-1)/2)` with `||H_C'|| = |C(s) - C_avg|`.
    pub predicted: f64,
    /// `|C(s) - C_avg|`.
    pub traceless_value: f64,
}

impl Witness {
    pub fn state(&self) -> Result<StateVector> {
        StateVector::product(&self.qubits)
    }
}

/// Builds `|s*>` from a string `s` of an unconstrained, strictly k-local
/// cost, rotating each qubit by `theta = -arctan(sqrt(1/(k-1)))/2` away from
/// `|s_j>`, so `<Y_j> = <Z_j>_s / sqrt(k)` and
/// `<Z_j> = sqrt((k-1)/k) <Z_j>_s`.
pub fn s_star_witness(h: &KLocalCost, s: u64, k: usize) -> Result<Witness> {
    if k < 2 {
        return Err(Error::invalid("the witness needs k >= 2"));
    }
    if !h.is_strictly_k_local(k) {
        return Err(Error::invalid(format!("cost is not strictly {k}-local")));
    }
    if s >> h.n() != 0 {
        return Err(Error::invalid(format!("string {s:#b} does not fit in {} bits", h.n())));
    }
    let theta = -0.5 * (1.0 / (k as f64 - 1.0)).sqrt().atan();
    let (c, sn) = (Complex64::new(theta.cos(), 0.0), Complex64::new(0.0, -theta.sin()));
    let qubits: Vec<[Complex64; 2]> = (0..h.n())
        .map(|j| if s >> j & 1 == 0 { [c, sn] } else { [sn, c] })
        .collect();
    let value = tf_commutator(h)?.product_expectation(&qubits)?.norm();
    let kf = k as f64;
    let traceless_value = h.traceless_part().evaluate(s).abs();
    let predicted = traceless_value * kf.sqrt() * ((kf - 1.0) / kf).powf((kf - 1.0) / 2.0);
    Ok(Witness {
        qubits,
        value,
        predicted,
        traceless_value,
    })
}

/// Cost description accepted by [`commutator_norm`].
#[derive(Debug, Clone, Copy)]
pub enum CostInput<'a> {
    Spectrum(&'a CostSpectrum),
    KLocal(&'a KLocalCost),
    Search(&'a SearchSet),
}

/// A commutator norm with the route that produced it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommutatorNorm {
    pub value: f64,
    pub provenance: Provenance,
}

fn closed(value: f64, detail: &str) -> CommutatorNorm {
    CommutatorNorm {
        value,
        provenance: Provenance::new(Route::ClosedForm, detail),
    }
}

fn numeric(value: f64, method: NormMethod) -> CommutatorNorm {
    let detail = match method {
        NormMethod::Dense => "dense eigensolve".to_string(),
        NormMethod::Iterative { iterations } => format!("power iteration, {iterations} steps"),
    };
    CommutatorNorm {
        value,
        provenance: Provenance::new(Route::Numeric, detail),
    }
}

/// `||[H_C, H_0]||`, through a closed form when the structure allows and a
/// numeric route otherwise.
pub fn commutator_norm(cost: CostInput<'_>, mixer: &MixerSpec, limits: &Limits) -> Result<CommutatorNorm> {
    match (mixer, cost) {
        (MixerSpec::Grover { feasible }, CostInput::Spectrum(c)) => {
            mixer.check_compatible(c.feasible())?;
            let _ = feasible;
            Ok(closed(grover_commutator_norm(c)?, "sigma_C from enumerated sums"))
        }
        (MixerSpec::Grover { feasible }, CostInput::KLocal(h)) => {
            mixer.check_compatible(h.domain())?;
            if h.is_unconstrained() {
                Ok(closed(h.sum_alpha_sq().sqrt(), "sigma_C = sqrt(sum alpha^2)"))
            } else {
                check_enumerable(feasible, limits)?;
                let c = h.spectrum(limits)?;
                Ok(closed(grover_commutator_norm(&c)?, "sigma_C from enumerated sums"))
            }
        }
        (MixerSpec::Grover { feasible }, CostInput::Search(s)) => {
            if !feasible.is_full() || feasible.n() != s.n() {
                return Err(Error::invalid("search runs over the full space"));
            }
            Ok(closed(s.closed_form_stats().sigma, "sigma_C = sqrt(m(N-m))/N"))
        }
        (MixerSpec::TransverseField { n }, CostInput::Search(s)) => {
            if *n != s.n() {
                return Err(Error::QubitMismatch(*n, s.n()));
            }
            match s.tag() {
                SearchTag::HammingWeight(k) if k > 0 && (k as usize) < s.n() => Ok(closed(
                    tf_hamming_k_norm(s.n(), k as usize)?,
                    "hypercube layers: sqrt(2k(n-k)+n)/2",
                )),
                SearchTag::Dist3 | SearchTag::HammingWeight(_) => {
                    Ok(closed(tf_search_dist3_norm(s.n())?, "stars K_{1,n}: sqrt(n)/2"))
                }
                SearchTag::Generic if s.m() == 1 => {
                    Ok(closed(tf_search_dist3_norm(s.n())?, "stars K_{1,n}: sqrt(n)/2"))
                }
                SearchTag::Generic => {
                    let c = crate::problems::search_cost(s, limits)?;
                    tf_spectrum_norm(&c, limits)
                }
            }
        }
        (MixerSpec::TransverseField { n }, CostInput::KLocal(h)) => {
            if *n != h.n() {
                return Err(Error::QubitMismatch(*n, h.n()));
            }
            if h.n() > limits.sim_qubits {
                return Err(Error::NoRoute(format!(
                    "no closed form for a generic cost under the transverse field and n = {} exceeds the numeric limit {}",
                    h.n(),
                    limits.sim_qubits
                )));
            }
            let est = pauli::spectral_norm(&tf_commutator(h)?, limits)?;
            Ok(numeric(est.value, est.method))
        }
        (MixerSpec::TransverseField { n }, CostInput::Spectrum(c)) => {
            mixer.check_compatible(c.feasible())?;
            let _ = n;
            tf_spectrum_norm(c, limits)
        }
    }
}

fn tf_spectrum_norm(c: &CostSpectrum, limits: &Limits) -> Result<CommutatorNorm> {
    let op = TfSpectrumCommutator::new(c)?;
    let n = c.feasible().n();
    if n <= limits.dense_qubits {
        Ok(numeric(op.to_dense(limits)?.spectral_norm()?, NormMethod::Dense))
    } else if n <= limits.sim_qubits {
        let est = pauli::power_norm(&op, &PowerConfig::default())?;
        Ok(numeric(est.value, est.method))
    } else {
        Err(Error::NoRoute(format!("n = {n} exceeds the numeric limit {}", limits.sim_qubits)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::commutator;
    use crate::problems::{gen_hamming_k_set, maxcut_cost, maximizing_string, search_cost, Graph, ZTerm};

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn grover_norms() {
        let f = FeasibleSet::full(3).unwrap();
        let constant = CostSpectrum::from_fn(f.clone(), |_| 4).unwrap();
        assert_eq!(grover_commutator_norm(&constant).unwrap(), 0.0);

        let (_, p3) = maxcut_cost(&Graph::path(3), &lim()).unwrap();
        let p3 = p3.unwrap();
        let closed = grover_commutator_norm(&p3).unwrap();
        let dense = grover_commutator_dense(&p3, &lim()).unwrap().spectral_norm().unwrap();
        assert!((closed - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((dense - closed).abs() < 1e-12);

        let s = SearchSet::new(2, vec![1], SearchTag::Generic).unwrap();
        let c = search_cost(&s, &lim()).unwrap();
        let dense = grover_commutator_dense(&c, &lim()).unwrap().spectral_norm().unwrap();
        assert!((dense - 3f64.sqrt() / 4.0).abs() < 1e-12);
        assert_eq!(
            grover_commutator_norm_from_sums(4, 1, 1).unwrap(),
            grover_commutator_norm(&c).unwrap()
        );
    }

    #[test]
    fn tf_commutator_matches_generic_commutator() {
        let (h, _) = maxcut_cost(&Graph::path(3), &lim()).unwrap();
        let direct = tf_commutator(&h).unwrap();
        assert_eq!(direct.len(), 4);
        let generic = commutator(&h.to_pauli_sum(), &PauliSum::transverse_field(3)).unwrap();
        assert_eq!(direct, generic);

        let single = KLocalCost::new(1, 1.0, [ZTerm { alpha: 1.0, support: 1 }]).unwrap();
        let c = tf_commutator(&single).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(pauli::spectral_norm(&c, &lim()).unwrap().value, 1.0);
    }

    #[test]
    fn tf_search_norms_dense() {
        let s = SearchSet::new(4, vec![6], SearchTag::Generic).unwrap();
        let c = search_cost(&s, &lim()).unwrap();
        let op = TfSpectrumCommutator::new(&c).unwrap();
        let dense = op.to_dense(&lim()).unwrap().spectral_norm().unwrap();
        assert!((dense - 1.0).abs() < 1e-12);
        assert_eq!(tf_search_dist3_norm(4).unwrap(), 1.0);
        assert_eq!(tf_search_dist3_norm(9).unwrap(), 1.5);
        assert_eq!(tf_search_dist3_norm(1).unwrap(), 0.5);

        let h = gen_hamming_k_set(4, 2).unwrap();
        let c = search_cost(&h, &lim()).unwrap();
        let dense = TfSpectrumCommutator::new(&c).unwrap().to_dense(&lim()).unwrap().spectral_norm().unwrap();
        assert!((dense - 12f64.sqrt() / 2.0).abs() < 1e-10);
        assert!((tf_hamming_k_norm(4, 2).unwrap() - 3f64.sqrt()).abs() < 1e-15);
        assert_eq!(tf_hamming_k_norm(2, 1).unwrap(), 1.0);
        assert!(tf_hamming_k_norm(4, 4).is_err());
    }

    #[test]
    fn matrix_free_agrees_with_dense() {
        let h = gen_hamming_k_set(6, 2).unwrap();
        let c = search_cost(&h, &lim()).unwrap();
        let op = TfSpectrumCommutator::new(&c).unwrap();
        let dense = op.to_dense(&lim()).unwrap().spectral_norm().unwrap();
        let iter = pauli::power_norm(&op, &PowerConfig::default()).unwrap().value;
        assert!((dense - iter).abs() < 1e-8 * dense, "{dense} vs {iter}");
    }

    #[test]
    fn witness_k2_and_k3() {
        let (h, _) = maxcut_cost(&Graph::path(3), &lim()).unwrap();
        let (s, norm) = maximizing_string(&h, &lim()).unwrap();
        assert_eq!(norm, 1.0);
        let w = s_star_witness(&h, s, 2).unwrap();
        assert!((w.value - 1.0).abs() < 1e-12);
        assert!((w.predicted - 1.0).abs() < 1e-12);
        let dense = pauli::spectral_norm(&tf_commutator(&h).unwrap(), &lim()).unwrap().value;
        assert!(dense >= w.value - 1e-12);

        // per-qubit Y expectation for k = 2
        let y = PauliSum::from_strings(3, [PauliString::from_label("YII", Complex64::new(1.0, 0.0)).unwrap()]).unwrap();
        let ey = y.product_expectation(&w.qubits).unwrap().re;
        let zs = if s & 1 == 0 { 1.0 } else { -1.0 };
        assert!((ey - zs / 2f64.sqrt()).abs() < 1e-12);

        let t = KLocalCost::new(3, 0.0, [ZTerm { alpha: 1.0, support: 0b111 }]).unwrap();
        let w3 = s_star_witness(&t, 0, 3).unwrap();
        assert!((w3.value - 3f64.sqrt() * 2.0 / 3.0).abs() < 1e-12);
        assert!(s_star_witness(&t, 0, 1).is_err());
        assert!(s_star_witness(&h, 0, 3).is_err());
    }

    #[test]
    fn dispatch() {
        let (h, spec) = maxcut_cost(&Graph::path(3), &lim()).unwrap();
        let spec = spec.unwrap();
        let g = MixerSpec::grover(FeasibleSet::full(3).unwrap());
        let r = commutator_norm(CostInput::Spectrum(&spec), &g, &lim()).unwrap();
        assert_eq!(r.provenance.route, Route::ClosedForm);
        let r2 = commutator_norm(CostInput::KLocal(&h), &g, &lim()).unwrap();
        assert!((r.value - r2.value).abs() < 1e-15);

        let d3 = SearchSet::new(5, vec![0, 7], SearchTag::Dist3).unwrap();
        let r = commutator_norm(CostInput::Search(&d3), &MixerSpec::tf(5), &lim()).unwrap();
        assert_eq!(r.value, 5f64.sqrt() / 2.0);

        let tf = commutator_norm(CostInput::KLocal(&h), &MixerSpec::tf(3), &lim()).unwrap();
        assert_eq!(tf.provenance.route, Route::Numeric);
        let via_spec = commutator_norm(CostInput::Spectrum(&spec), &MixerSpec::tf(3), &lim()).unwrap();
        assert!((tf.value - via_spec.value).abs() < 1e-10);
        let w = s_star_witness(&h, 0, 2).unwrap();
        assert!(tf.value >= w.value - 1e-12);
    }

    #[test]
    fn mixer_json() {
        let m: MixerSpec = serde_json::from_str(r#"{"kind":"tf","n":4}"#).unwrap();
        assert_eq!(m, MixerSpec::tf(4));
        let g: MixerSpec =
            serde_json::from_str(r#"{"kind":"grover","feasible":{"n":3,"kind":"full"}}"#).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(
            serde_json::to_string(&MixerSpec::tf(2)).unwrap(),
            r#"{"kind":"tf","n":2}"#
        );
    }
}
