use num_complex::Complex64;
use rayon::prelude::*;

use crate::problems::{CostSpectrum, FeasibleSet};
use crate::tolerance;
use crate::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Largest qubit count for which a constrained state is expanded to the full
/// `2^n` space.
const FULL_SPACE_QUBITS: usize = 26;

/// Unit-norm amplitudes indexed by the members of a feasible set.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    feasible: FeasibleSet,
    amps: Vec<Complex64>,
}

/// The uniform superposition over `F`, the ground state of both mixers.
pub fn init_uniform(f: &FeasibleSet) -> Result<StateVector> {
    if f.is_empty() {
        return Err(Error::EmptyFeasibleSet);
    }
    let a = Complex64::new(1.0 / (f.len() as f64).sqrt(), 0.0);
    Ok(StateVector {
        feasible: f.clone(),
        amps: vec![a; f.len()],
    })
}

impl StateVector {
    /// Checks the dimension and that the norm is one.
    pub fn new(feasible: FeasibleSet, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != feasible.len() {
            return Err(Error::DimensionMismatch {
                expected: feasible.len(),
                actual: amps.len(),
            });
        }
        let s = StateVector { feasible, amps };
        let norm = s.norm_sqr();
        if (norm - 1.0).abs() > tolerance::ABS {
            return Err(Error::invalid(format!("state has squared norm {norm}")));
        }
        Ok(s)
    }

    /// Computational basis state `|z>`.
    pub fn basis(feasible: &FeasibleSet, z: u64) -> Result<Self> {
        let i = feasible
            .position(z)
            .ok_or_else(|| Error::invalid(format!("{z:#b} is not feasible")))?;
        let mut amps = vec![ZERO; feasible.len()];
        amps[i] = Complex64::new(1.0, 0.0);
        Ok(StateVector {
            feasible: feasible.clone(),
            amps,
        })
    }

    /// Tensor product of single-qubit states `(a0, a1)`, qubit 0 first.
    pub fn product(qubits: &[[Complex64; 2]]) -> Result<Self> {
        let f = FeasibleSet::full(qubits.len())?;
        let amps = (0..f.len())
            .map(|z| {
                qubits
                    .iter()
                    .enumerate()
                    .map(|(j, q)| q[(z >> j) & 1])
                    .product()
            })
            .collect();
        StateVector::new(f, amps)
    }

    pub fn feasible(&self) -> &FeasibleSet {
        &self.feasible
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.par_iter().map(|a| a.norm_sqr()).sum()
    }

    /// `|<z|psi>|^2`, zero for infeasible `z`.
    pub fn probability(&self, z: u64) -> f64 {
        self.feasible
            .position(z)
            .map_or(0.0, |i| self.amps[i].norm_sqr())
    }

    /// Amplitudes on all `2^n` strings, zero outside `F`.
    pub fn to_full_space(&self) -> Result<Vec<Complex64>> {
        if self.feasible.is_full() {
            return Ok(self.amps.clone());
        }
        let n = self.feasible.n();
        if n > FULL_SPACE_QUBITS {
            return Err(Error::Limit {
                what: "qubit count for full-space expansion",
                size: n,
                limit: FULL_SPACE_QUBITS,
            });
        }
        let mut out = vec![ZERO; 1 << n];
        for (i, z) in self.feasible.iter().enumerate() {
            out[z as usize] = self.amps[i];
        }
        Ok(out)
    }

    fn check_same_space(&self, other: &FeasibleSet) -> Result<()> {
        if &self.feasible != other {
            return Err(Error::invalid(format!(
                "feasible sets differ: {} vs {}",
                self.feasible.label(),
                other.label()
            )));
        }
        Ok(())
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        self.check_same_space(&other.feasible)?;
        Ok(self
            .amps
            .par_iter()
            .zip(other.amps.par_iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Equality up to global phase: `|<a|b>| >= 1 - ABS`.
    pub fn same_ray(&self, other: &StateVector) -> Result<bool> {
        Ok(self.inner(other)?.norm() >= 1.0 - tolerance::ABS)
    }

    /// `|<psi0|psi>|^2` with the uniform state over `F`.
    pub fn uniform_overlap_sq(&self) -> f64 {
        let s: Complex64 = self.amps.par_iter().sum();
        s.norm_sqr() / self.amps.len() as f64
    }

    /// `sum_z |a_z|^2 C(z)`.
    pub fn cost_expectation(&self, c: &CostSpectrum) -> Result<f64> {
        self.check_same_space(c.feasible())?;
        Ok(self
            .amps
            .par_iter()
            .zip(c.values().par_iter())
            .map(|(a, &v)| a.norm_sqr() * v as f64)
            .sum())
    }

    /// Probability mass on strings where `pred` holds.
    pub fn mass_where(&self, pred: impl Fn(u64) -> bool + Sync) -> f64 {
        self.amps
            .par_iter()
            .enumerate()
            .filter(|(i, _)| pred(self.feasible.get(*i)))
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    /// `<X_j>` for every qubit, by pairing each amplitude with its partner
    /// across bit `j`. Full space only.
    pub fn x_expectations(&self) -> Result<Vec<f64>> {
        self.require_full("X expectations")?;
        let n = self.feasible.n();
        Ok((0..n)
            .map(|j| {
                let bit = 1usize << j;
                2.0 * self
                    .amps
                    .par_iter()
                    .enumerate()
                    .filter(|(z, _)| z & bit == 0)
                    .map(|(z, a)| (a.conj() * self.amps[z | bit]).re)
                    .sum::<f64>()
            })
            .collect())
    }

    fn require_full(&self, what: &'static str) -> Result<()> {
        if !self.feasible.is_full() {
            return Err(Error::NotApplicable {
                formula: what,
                reason: format!(
                    "the transverse field does not preserve {}",
                    self.feasible.label()
                ),
            });
        }
        Ok(())
    }

    /// Multiplies `|z>` by `exp(-i gamma (C_max - C(z)))`, the evolution under
    /// `H_1 = C_max - H_C`.
    pub fn apply_phase_separator(&mut self, c: &CostSpectrum, gamma: f64) -> Result<()> {
        self.check_same_space(c.feasible())?;
        let c_max = c.c_max();
        self.amps
            .par_iter_mut()
            .zip(c.values().par_iter())
            .for_each(|(a, &v)| {
                let phase = -gamma * (c_max - v) as f64;
                *a *= Complex64::from_polar(1.0, phase);
            });
        Ok(())
    }

    /// `exp(-i beta (I - |psi0><psi0|))`: keeps the uniform component and
    /// multiplies its complement by `e^{-i beta}`.
    pub fn apply_grover_mixer(&mut self, beta: f64) {
        let n = self.amps.len() as f64;
        let mean: Complex64 = self.amps.par_iter().sum::<Complex64>() / n;
        let e = Complex64::from_polar(1.0, -beta);
        let shift = (Complex64::new(1.0, 0.0) - e) * mean;
        self.amps.par_iter_mut().for_each(|a| *a = e * *a + shift);
    }

    /// `exp(-i beta (n/2 - sum_j X_j / 2))`, one qubit rotation at a time.
    pub fn apply_tf_mixer(&mut self, beta: f64) -> Result<()> {
        self.require_full("transverse-field mixer")?;
        let n = self.feasible.n();
        let phase = Complex64::from_polar(1.0, -beta / 2.0);
        let c = phase * (beta / 2.0).cos();
        let s = phase * Complex64::new(0.0, (beta / 2.0).sin());
        for j in 0..n {
            let half = 1usize << j;
            self.amps.par_chunks_mut(2 * half).for_each(|chunk| {
                let (lo, hi) = chunk.split_at_mut(half);
                for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                    let (x, y) = (*a, *b);
                    *a = c * x + s * y;
                    *b = s * x + c * y;
                }
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{search_cost, SearchSet, SearchTag};
    use crate::Limits;
    use std::f64::consts::PI;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn uniform_states() {
        let s = init_uniform(&FeasibleSet::full(1).unwrap()).unwrap();
        let h = 0.5f64.sqrt();
        assert!(s.amplitudes().iter().all(|&a| close(a, Complex64::new(h, 0.0))));
        let w = init_uniform(&FeasibleSet::hamming_weight(3, 1).unwrap()).unwrap();
        assert_eq!(w.dim(), 3);
        assert!((w.amplitudes()[0].re - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert!((w.uniform_overlap_sq() - 1.0).abs() < 1e-14);
        assert!(init_uniform(&FeasibleSet::explicit(2, vec![]).unwrap()).is_err());
    }

    #[test]
    fn grover_mixer_cases() {
        let f = FeasibleSet::full(3).unwrap();
        let psi0 = init_uniform(&f).unwrap();
        let mut s = psi0.clone();
        s.apply_grover_mixer(1.234);
        assert!(s.same_ray(&psi0).unwrap());

        let mut b = StateVector::basis(&f, 5).unwrap();
        let before = b.clone();
        b.apply_grover_mixer(2.0 * PI);
        assert!(b.same_ray(&before).unwrap());

        // beta = pi is 2|psi0><psi0| - I
        let mut d = StateVector::basis(&f, 5).unwrap();
        d.apply_grover_mixer(PI);
        for (i, a) in d.amplitudes().iter().enumerate() {
            let want = 2.0 / 8.0 - if i == 5 { 1.0 } else { 0.0 };
            assert!(close(*a, Complex64::new(want, 0.0)), "{i}: {a}");
        }
    }

    #[test]
    fn tf_mixer_cases() {
        let f = FeasibleSet::full(3).unwrap();
        let zero = StateVector::basis(&f, 0).unwrap();
        let mut s = zero.clone();
        s.apply_tf_mixer(0.0).unwrap();
        assert_eq!(s, zero);
        s.apply_tf_mixer(PI).unwrap();
        assert!((s.probability(0b111) - 1.0).abs() < 1e-14);
        let mut t = zero.clone();
        t.apply_tf_mixer(2.0 * PI).unwrap();
        assert!(t.same_ray(&zero).unwrap());

        let mut u = init_uniform(&f).unwrap();
        u.apply_tf_mixer(0.7).unwrap();
        assert!(u.same_ray(&init_uniform(&f).unwrap()).unwrap());

        let mut c = init_uniform(&FeasibleSet::hamming_weight(3, 1).unwrap()).unwrap();
        assert!(c.apply_tf_mixer(1.0).is_err());
    }

    #[test]
    fn phase_separator_cases() {
        let lim = Limits::default();
        let set = SearchSet::new(2, vec![2], SearchTag::Generic).unwrap();
        let c = search_cost(&set, &lim).unwrap();
        let psi0 = init_uniform(c.feasible()).unwrap();
        let mut s = psi0.clone();
        s.apply_phase_separator(&c, 0.0).unwrap();
        assert_eq!(s, psi0);
        s.apply_phase_separator(&c, 2.0 * PI).unwrap();
        assert!(s.same_ray(&psi0).unwrap());
        let mut o = psi0.clone();
        o.apply_phase_separator(&c, PI).unwrap();
        // unmarked strings pick up -1 relative to the marked one
        let a = o.amplitudes();
        assert!(close(a[0], -a[2]) && close(a[1], -a[2]) && close(a[3], -a[2]));
    }

    #[test]
    fn x_expectations_by_pairing() {
        let f = FeasibleSet::full(2).unwrap();
        let plus = init_uniform(&f).unwrap();
        assert!(plus.x_expectations().unwrap().iter().all(|x| (x - 1.0).abs() < 1e-14));
        let b = StateVector::basis(&f, 1).unwrap();
        assert_eq!(b.x_expectations().unwrap(), vec![0.0, 0.0]);
        let h = 0.5f64.sqrt();
        let minus = StateVector::product(&[
            [Complex64::new(h, 0.0), Complex64::new(-h, 0.0)],
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        ])
        .unwrap();
        let x = minus.x_expectations().unwrap();
        assert!((x[0] + 1.0).abs() < 1e-14 && x[1].abs() < 1e-14);
    }

    #[test]
    fn full_space_expansion() {
        let f = FeasibleSet::hamming_weight(3, 2).unwrap();
        let s = init_uniform(&f).unwrap();
        let full = s.to_full_space().unwrap();
        assert_eq!(full.len(), 8);
        assert_eq!(full[0], ZERO);
        assert!(full[3].re > 0.0 && full[5].re > 0.0 && full[6].re > 0.0);
    }
}
