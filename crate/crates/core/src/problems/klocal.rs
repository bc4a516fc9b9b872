use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{CostSpectrum, FeasibleSet, Graph};
use crate::pauli::{PauliString, PauliSum};
use crate::tolerance;
use crate::{Error, Limits, Result};

/// One `alpha * Z_{j1} Z_{j2} ...` term. The cost Hamiltonian subtracts it:
/// `H_C = constant - sum alpha_nu H_nu`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZTerm {
    pub alpha: f64,
    pub support: u64,
}

/// A diagonal cost written as a constant plus weighted Z products.
#[derive(Debug, Clone, PartialEq)]
pub struct KLocalCost {
    n: usize,
    constant: f64,
    terms: Vec<ZTerm>,
    domain: FeasibleSet,
}

impl KLocalCost {
    /// Terms with the same support are merged; vanishing terms are dropped.
    pub fn new(n: usize, constant: f64, terms: impl IntoIterator<Item = ZTerm>) -> Result<Self> {
        let domain = FeasibleSet::full(n)?;
        let mut merged: BTreeMap<u64, f64> = BTreeMap::new();
        for t in terms {
            if t.support == 0 {
                return Err(Error::invalid("term support must be nonempty"));
            }
            if t.support >> n != 0 {
                return Err(Error::invalid(format!(
                    "support {:#b} does not fit in {n} qubits",
                    t.support
                )));
            }
            if !t.alpha.is_finite() {
                return Err(Error::invalid("term weight must be finite"));
            }
            *merged.entry(t.support).or_insert(0.0) += t.alpha;
        }
        let terms = merged
            .into_iter()
            .filter(|(_, a)| *a != 0.0)
            .map(|(support, alpha)| ZTerm { alpha, support })
            .collect();
        Ok(KLocalCost {
            n,
            constant,
            terms,
            domain,
        })
    }

    /// Restricts the cost to a constrained feasible set.
    pub fn with_domain(mut self, domain: FeasibleSet) -> Result<Self> {
        if domain.n() != self.n {
            return Err(Error::QubitMismatch(self.n, domain.n()));
        }
        self.domain = domain;
        Ok(self)
    }

    /// Random integer-valued cost: a weighted sum of `clauses` conjunctions of
    /// at most `k` literals, each clause worth a weight in `1..=max_weight`.
    /// Expanding the conjunctions gives Z-product terms with dyadic weights.
    pub fn random_integer<R: Rng>(
        n: usize,
        k: usize,
        clauses: usize,
        max_weight: u64,
        rng: &mut R,
    ) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::invalid(format!("locality {k} invalid for {n} qubits")));
        }
        let mut constant = 0.0;
        let mut terms = Vec::new();
        for _ in 0..clauses {
            let size = rng.random_range(1..=k);
            let mut vars: Vec<usize> = (0..n).collect();
            // partial Fisher-Yates for `size` distinct variables
            for i in 0..size {
                let j = rng.random_range(i..n);
                vars.swap(i, j);
            }
            let support = vars[..size].iter().fold(0u64, |m, &v| m | (1 << v));
            let wanted: u64 = rng.random_range(0..(1u64 << n)) & support;
            let w = rng.random_range(1..=max_weight) as f64;
            let scale = w / (1u64 << size) as f64;
            constant += scale;
            // every nonempty subset of the support
            let mut sub = support;
            while sub != 0 {
                let sign = if (wanted & sub).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
                terms.push(ZTerm {
                    alpha: -scale * sign,
                    support: sub,
                });
                sub = (sub - 1) & support;
            }
        }
        KLocalCost::new(n, constant, terms)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    pub fn terms(&self) -> &[ZTerm] {
        &self.terms
    }

    pub fn domain(&self) -> &FeasibleSet {
        &self.domain
    }

    pub fn is_unconstrained(&self) -> bool {
        self.domain.is_full()
    }

    /// Largest support size.
    pub fn locality(&self) -> usize {
        self.terms
            .iter()
            .map(|t| t.support.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Largest number of terms any single qubit participates in.
    pub fn max_occurrence(&self) -> usize {
        (0..self.n)
            .map(|j| self.terms.iter().filter(|t| (t.support >> j) & 1 == 1).count())
            .max()
            .unwrap_or(0)
    }

    /// True when every term touches exactly `k` qubits.
    pub fn is_strictly_k_local(&self, k: usize) -> bool {
        !self.terms.is_empty() && self.terms.iter().all(|t| t.support.count_ones() as usize == k)
    }

    pub fn sum_alpha_sq(&self) -> f64 {
        self.terms.iter().map(|t| t.alpha * t.alpha).sum()
    }

    pub fn sum_abs_alpha(&self) -> f64 {
        self.terms.iter().map(|t| t.alpha.abs()).sum()
    }

    /// `C(z) = constant - sum alpha (-1)^{|z & S|}`.
    pub fn evaluate(&self, z: u64) -> f64 {
        self.constant
            - self
                .terms
                .iter()
                .map(|t| {
                    if (z & t.support).count_ones().is_multiple_of(2) {
                        t.alpha
                    } else {
                        -t.alpha
                    }
                })
                .sum::<f64>()
    }

    /// Upper bound on `C_max` for unconstrained problems: the constant plus
    /// the sum of absolute term weights.
    pub fn c_max_upper_bound(&self) -> f64 {
        self.constant + self.sum_abs_alpha()
    }

    /// Enumerates the cost over its domain, checking every value is a
    /// non-negative integer.
    pub fn spectrum(&self, limits: &Limits) -> Result<CostSpectrum> {
        check_enumerable(&self.domain, limits)?;
        let values = self
            .domain
            .iter()
            .map(|z| {
                let v = self.evaluate(z);
                let r = v.round();
                if (v - r).abs() > tolerance::INTEGRALITY * v.abs().max(1.0) || r < 0.0 {
                    Err(Error::invalid(format!(
                        "cost at {z:#b} is {v}, not a non-negative integer"
                    )))
                } else {
                    Ok(r as u64)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        CostSpectrum::new(self.domain.clone(), values)
    }

    /// `H_C` as a Pauli sum.
    pub fn to_pauli_sum(&self) -> PauliSum {
        let mut s = PauliSum::identity(self.n, self.constant);
        for t in &self.terms {
            s.add_string(PauliString {
                n: self.n,
                x_mask: 0,
                z_mask: t.support,
                coeff: Complex64::new(-t.alpha, 0.0),
            })
            .expect("validated support");
        }
        s
    }

    /// `H_C'`, the cost without its identity component.
    pub fn traceless_part(&self) -> KLocalCost {
        KLocalCost {
            constant: 0.0,
            ..self.clone()
        }
    }
}

pub(crate) fn check_enumerable(f: &FeasibleSet, limits: &Limits) -> Result<()> {
    if f.is_full() {
        if f.n() > limits.enumeration_qubits {
            return Err(Error::Limit {
                what: "qubit count for enumeration",
                size: f.n(),
                limit: limits.enumeration_qubits,
            });
        }
    } else if f.len() > limits.enumeration_states {
        return Err(Error::Limit {
            what: "feasible set size for enumeration",
            size: f.len(),
            limit: limits.enumeration_states,
        });
    }
    Ok(())
}

/// `(C_avg, sigma_C)` read off the coefficients: the constant is the mean and
/// the standard deviation is the root of the summed squared weights. Only
/// valid on the full space.
pub fn cost_stats_from_coefficients(h: &KLocalCost) -> Result<(f64, f64)> {
    if !h.is_unconstrained() {
        return Err(Error::NotApplicable {
            formula: "coefficient statistics",
            reason: format!("domain {} is constrained", h.domain().label()),
        });
    }
    Ok((h.constant, h.sum_alpha_sq().sqrt()))
}

/// Max-Cut of `g`: constant `W/2` and one term `w_e/2` per edge. The spectrum
/// is enumerated when the graph is small enough.
pub fn maxcut_cost(g: &Graph, limits: &Limits) -> Result<(KLocalCost, Option<CostSpectrum>)> {
    let n = g.n_vertices();
    let terms = g.edges().iter().map(|e| ZTerm {
        alpha: e.weight as f64 / 2.0,
        support: (1u64 << e.u) | (1u64 << e.v),
    });
    let h = KLocalCost::new(n, g.total_weight() as f64 / 2.0, terms)?;
    let spectrum = if n <= limits.enumeration_qubits {
        Some(CostSpectrum::from_fn(FeasibleSet::full(n)?, |z| g.cut_value(z))?)
    } else {
        None
    };
    Ok((h, spectrum))
}

/// `(s, ||H_C'||)` where `s` maximizes `|C(s) - C_avg|` over the full space;
/// ties go to the smallest bitstring.
pub fn maximizing_string(h: &KLocalCost, limits: &Limits) -> Result<(u64, f64)> {
    if h.n() > limits.enumeration_qubits {
        return Err(Error::Limit {
            what: "qubit count for enumeration",
            size: h.n(),
            limit: limits.enumeration_qubits,
        });
    }
    let traceless = h.traceless_part();
    let mut best = (0u64, traceless.evaluate(0).abs());
    for z in 1..(1u64 << h.n()) {
        let v = traceless.evaluate(z).abs();
        if v > best.1 + tolerance::ABS * best.1.max(1.0) {
            best = (z, v);
        }
    }
    Ok(best)
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    alpha: f64,
    qubits: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct KLocalJson {
    n: usize,
    constant: f64,
    terms: Vec<TermJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    feasible: Option<FeasibleSet>,
}

impl KLocalCost {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: KLocalJson = serde_json::from_str(text)?;
        let mut terms = Vec::with_capacity(raw.terms.len());
        for t in raw.terms {
            let mut support = 0u64;
            for q in t.qubits {
                if q >= raw.n || q >= 64 {
                    return Err(Error::invalid(format!("qubit {q} out of range for n={}", raw.n)));
                }
                if support >> q & 1 == 1 {
                    return Err(Error::invalid(format!("qubit {q} repeated in a term")));
                }
                support |= 1 << q;
            }
            terms.push(ZTerm {
                alpha: t.alpha,
                support,
            });
        }
        let h = KLocalCost::new(raw.n, raw.constant, terms)?;
        match raw.feasible {
            Some(f) => h.with_domain(f),
            None => Ok(h),
        }
    }

    pub fn to_json(&self) -> String {
        let raw = KLocalJson {
            n: self.n,
            constant: self.constant,
            terms: self
                .terms
                .iter()
                .map(|t| TermJson {
                    alpha: t.alpha,
                    qubits: (0..self.n).filter(|j| t.support >> j & 1 == 1).collect(),
                })
                .collect(),
            feasible: (!self.domain.is_full()).then(|| self.domain.clone()),
        };
        serde_json::to_string(&raw).expect("serializable")
    }
}
