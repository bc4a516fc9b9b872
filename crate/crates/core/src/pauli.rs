//! Bit-mask Pauli algebra and the spectral-norm machinery built on it.
//!
//! A Pauli string on `n` qubits is stored as a pair of masks `(x, z)` plus a
//! complex coefficient. Qubit `j` carries `I`, `X`, `Z` or `Y` when the bit pair
//! `(x_j, z_j)` is `(0,0)`, `(1,0)`, `(0,1)` or `(1,1)`. The basis element for a
//! mask pair is always the Hermitian tensor product of those single-qubit
//! Paulis, so any phase produced by multiplication is folded into the
//! coefficient and a sum is Hermitian exactly when every coefficient is real.
//!
//! Sign convention for commutators: `[A, B] = AB - BA` with `[Z, X] = 2iY`.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::sim::StateVector;
use crate::tolerance;
use crate::{Error, Limits, Result};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// `i^k` for `k` taken mod 4.
fn i_pow(k: u32) -> Complex64 {
    match k & 3 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

fn mask_for(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn check_masks(n: usize, x: u64, z: u64) -> Result<()> {
    if n > 64 {
        return Err(Error::invalid(format!("at most 64 qubits are supported, got {n}")));
    }
    let m = mask_for(n);
    if x & !m != 0 || z & !m != 0 {
        return Err(Error::invalid(format!(
            "Pauli masks x={x:#b} z={z:#b} do not fit in {n} qubits"
        )));
    }
    Ok(())
}

/// Phase `i^e` such that `P(x1,z1) P(x2,z2) = i^e P(x1^x2, z1^z2)`.
fn product_phase(x1: u64, z1: u64, x2: u64, z2: u64) -> u32 {
    let x3 = x1 ^ x2;
    let z3 = z1 ^ z2;
    let e = (x1 & z1).count_ones() + (x2 & z2).count_ones() + 2 * (z1 & x2).count_ones();
    // subtract |x3 & z3| mod 4
    e.wrapping_sub((x3 & z3).count_ones()) & 3
}

fn anticommutes(x1: u64, z1: u64, x2: u64, z2: u64) -> bool {
    ((x1 & z2).count_ones() + (z1 & x2).count_ones()) & 1 == 1
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliString {
    pub n: usize,
    pub x_mask: u64,
    pub z_mask: u64,
    pub coeff: Complex64,
}

impl PauliString {
    pub fn new(n: usize, x_mask: u64, z_mask: u64, coeff: Complex64) -> Result<Self> {
        check_masks(n, x_mask, z_mask)?;
        Ok(PauliString {
            n,
            x_mask,
            z_mask,
            coeff,
        })
    }

    pub fn identity(n: usize, coeff: Complex64) -> Self {
        PauliString {
            n,
            x_mask: 0,
            z_mask: 0,
            coeff,
        }
    }

    /// Parses a label such as `"XIZY"`; the first character is qubit 0.
    pub fn from_label(label: &str, coeff: Complex64) -> Result<Self> {
        let (mut x, mut z) = (0u64, 0u64);
        for (j, ch) in label.chars().enumerate() {
            match ch {
                'I' => {}
                'X' => x |= 1 << j,
                'Z' => z |= 1 << j,
                'Y' => {
                    x |= 1 << j;
                    z |= 1 << j;
                }
                other => return Err(Error::invalid(format!("bad Pauli letter {other:?}"))),
            }
        }
        PauliString::new(label.chars().count(), x, z, coeff)
    }

    pub fn is_identity(&self) -> bool {
        self.x_mask == 0 && self.z_mask == 0
    }

    pub fn weight(&self) -> u32 {
        (self.x_mask | self.z_mask).count_ones()
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        !anticommutes(self.x_mask, self.z_mask, other.x_mask, other.z_mask)
    }

    /// Letter on each qubit, qubit 0 first.
    pub fn label(&self) -> String {
        (0..self.n)
            .map(|j| match ((self.x_mask >> j) & 1, (self.z_mask >> j) & 1) {
                (0, 0) => 'I',
                (1, 0) => 'X',
                (0, 1) => 'Z',
                _ => 'Y',
            })
            .collect()
    }

    /// Single-qubit factor on qubit `j` as a 2x2 matrix `[[m00, m01], [m10, m11]]`.
    fn factor(&self, j: usize) -> [[Complex64; 2]; 2] {
        let i = Complex64::new(0.0, 1.0);
        match ((self.x_mask >> j) & 1, (self.z_mask >> j) & 1) {
            (0, 0) => [[ONE, ZERO], [ZERO, ONE]],
            (1, 0) => [[ZERO, ONE], [ONE, ZERO]],
            (0, 1) => [[ONE, ZERO], [ZERO, -ONE]],
            _ => [[ZERO, -i], [i, ZERO]],
        }
    }
}

/// Product of two Pauli strings with the phase folded into the coefficient.
pub fn multiply(a: &PauliString, b: &PauliString) -> Result<PauliString> {
    if a.n != b.n {
        return Err(Error::QubitMismatch(a.n, b.n));
    }
    let phase = i_pow(product_phase(a.x_mask, a.z_mask, b.x_mask, b.z_mask));
    Ok(PauliString {
        n: a.n,
        x_mask: a.x_mask ^ b.x_mask,
        z_mask: a.z_mask ^ b.z_mask,
        coeff: a.coeff * b.coeff * phase,
    })
}

/// A linear combination of Pauli strings in canonical form: one entry per mask
/// pair, no negligible coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    n: usize,
    terms: BTreeMap<(u64, u64), Complex64>,
}

impl PauliSum {
    pub fn zero(n: usize) -> Self {
        PauliSum {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize, coeff: f64) -> Self {
        let mut s = PauliSum::zero(n);
        s.add_string(PauliString::identity(n, Complex64::new(coeff, 0.0)))
            .expect("identity fits");
        s
    }

    pub fn from_strings<I: IntoIterator<Item = PauliString>>(n: usize, strings: I) -> Result<Self> {
        let mut s = PauliSum::zero(n);
        for p in strings {
            s.add_string(p)?;
        }
        Ok(s)
    }

    /// `coeff * Z_{j1} Z_{j2} ...` over the qubits set in `support`.
    pub fn z_product(n: usize, support: u64, coeff: f64) -> Result<Self> {
        PauliSum::from_strings(
            n,
            [PauliString::new(n, 0, support, Complex64::new(coeff, 0.0))?],
        )
    }

    /// `n/2 - 1/2 sum_j X_j`, the transverse-field mixer.
    pub fn transverse_field(n: usize) -> Self {
        let mut s = PauliSum::identity(n, n as f64 / 2.0);
        for j in 0..n {
            s.add_string(PauliString {
                n,
                x_mask: 1 << j,
                z_mask: 0,
                coeff: Complex64::new(-0.5, 0.0),
            })
            .expect("single-qubit X fits");
        }
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn strings(&self) -> impl Iterator<Item = PauliString> + '_ {
        self.terms.iter().map(move |(&(x, z), &c)| PauliString {
            n: self.n,
            x_mask: x,
            z_mask: z,
            coeff: c,
        })
    }

    pub fn coeff(&self, x_mask: u64, z_mask: u64) -> Complex64 {
        self.terms.get(&(x_mask, z_mask)).copied().unwrap_or(ZERO)
    }

    pub fn add_string(&mut self, p: PauliString) -> Result<()> {
        if p.n != self.n {
            return Err(Error::QubitMismatch(self.n, p.n));
        }
        check_masks(p.n, p.x_mask, p.z_mask)?;
        let key = (p.x_mask, p.z_mask);
        let c = self.terms.get(&key).copied().unwrap_or(ZERO) + p.coeff;
        if c.norm() <= tolerance::PRUNE {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, c);
        }
        Ok(())
    }

    pub fn add(&self, other: &PauliSum) -> Result<PauliSum> {
        if self.n != other.n {
            return Err(Error::QubitMismatch(self.n, other.n));
        }
        let mut out = self.clone();
        for p in other.strings() {
            out.add_string(p)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: Complex64) -> PauliSum {
        let mut out = PauliSum::zero(self.n);
        for p in self.strings() {
            out.add_string(PauliString {
                coeff: p.coeff * c,
                ..p
            })
            .expect("same qubit count");
        }
        out
    }

    pub fn adjoint(&self) -> PauliSum {
        PauliSum {
            n: self.n,
            terms: self.terms.iter().map(|(&k, c)| (k, c.conj())).collect(),
        }
    }

    pub fn mul(&self, other: &PauliSum) -> Result<PauliSum> {
        if self.n != other.n {
            return Err(Error::QubitMismatch(self.n, other.n));
        }
        let mut out = PauliSum::zero(self.n);
        for a in self.strings() {
            for b in other.strings() {
                out.add_string(multiply(&a, &b)?)?;
            }
        }
        Ok(out)
    }

    /// Largest imaginary part among the coefficients (zero for Hermitian sums).
    fn max_imag(&self) -> f64 {
        self.terms.values().map(|c| c.im.abs()).fold(0.0, f64::max)
    }

    fn max_real(&self) -> f64 {
        self.terms.values().map(|c| c.re.abs()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self) -> bool {
        self.max_imag() <= tolerance::ABS
    }

    pub fn is_anti_hermitian(&self) -> bool {
        self.max_real() <= tolerance::ABS
    }

    /// Normality via the Pauli algebra: `[A, A^dagger]` must vanish.
    pub fn normality_defect(&self) -> f64 {
        if self.is_hermitian() || self.is_anti_hermitian() {
            return 0.0;
        }
        let c = commutator(self, &self.adjoint()).expect("same qubit count");
        c.terms.values().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Sum of coefficient magnitudes, an upper bound on the spectral norm.
    pub fn coefficient_l1(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).sum()
    }

    /// Dense `2^n x 2^n` matrix, refused above `limits.dense_qubits`.
    pub fn to_dense(&self, limits: &Limits) -> Result<DenseOperator> {
        if self.n > limits.dense_qubits {
            return Err(Error::Limit {
                what: "qubit count for dense operators",
                size: self.n,
                limit: limits.dense_qubits,
            });
        }
        let dim = 1usize << self.n;
        let mut m = DMatrix::<Complex64>::zeros(dim, dim);
        for p in self.strings() {
            let base = p.coeff * i_pow((p.x_mask & p.z_mask).count_ones());
            for col in 0..dim {
                let row = col ^ p.x_mask as usize;
                let sign = if (p.z_mask & col as u64).count_ones() & 1 == 1 {
                    -1.0
                } else {
                    1.0
                };
                m[(row, col)] += base * sign;
            }
        }
        Ok(DenseOperator { matrix: m })
    }

    /// `<psi|A|psi>` for a full-space amplitude vector.
    pub fn expectation_complex(&self, amps: &[Complex64]) -> Result<Complex64> {
        let dim = 1usize << self.n;
        if amps.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: amps.len(),
            });
        }
        let mut total = ZERO;
        for p in self.strings() {
            let base = p.coeff * i_pow((p.x_mask & p.z_mask).count_ones());
            let x = p.x_mask as usize;
            let acc: Complex64 = (0..dim)
                .into_par_iter()
                .map(|b| {
                    let sign = if (p.z_mask & b as u64).count_ones() & 1 == 1 {
                        -1.0
                    } else {
                        1.0
                    };
                    amps[b ^ x].conj() * amps[b] * sign
                })
                .sum();
            total += base * acc;
        }
        Ok(total)
    }

    /// Expectation in a product state given as one `(a0, a1)` pair per qubit.
    pub fn product_expectation(&self, qubits: &[[Complex64; 2]]) -> Result<Complex64> {
        if qubits.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: qubits.len(),
            });
        }
        let mut total = ZERO;
        for p in self.strings() {
            let mut v = p.coeff;
            for (j, q) in qubits.iter().enumerate() {
                let f = p.factor(j);
                // <q| f |q>
                let fq0 = f[0][0] * q[0] + f[0][1] * q[1];
                let fq1 = f[1][0] * q[0] + f[1][1] * q[1];
                v *= q[0].conj() * fq0 + q[1].conj() * fq1;
            }
            total += v;
        }
        Ok(total)
    }
}

impl LinearOperator for PauliSum {
    fn dim(&self) -> usize {
        1usize << self.n
    }

    fn apply(&self, v: &[Complex64], out: &mut [Complex64]) {
        let terms: Vec<(u64, u64, Complex64)> = self
            .strings()
            .map(|p| {
                (
                    p.x_mask,
                    p.z_mask,
                    p.coeff * i_pow((p.x_mask & p.z_mask).count_ones()),
                )
            })
            .collect();
        out.par_iter_mut().enumerate().for_each(|(row, o)| {
            let mut acc = ZERO;
            for &(x, z, base) in &terms {
                let col = row ^ x as usize;
                let sign = if (z & col as u64).count_ones() & 1 == 1 {
                    -1.0
                } else {
                    1.0
                };
                acc += base * v[col] * sign;
            }
            *o = acc;
        });
    }

    fn apply_adjoint(&self, v: &[Complex64], out: &mut [Complex64]) {
        self.adjoint().apply(v, out)
    }
}

/// `ab - ba` in canonical form. Only anticommuting pairs contribute, so
/// identity components cancel exactly.
pub fn commutator(a: &PauliSum, b: &PauliSum) -> Result<PauliSum> {
    if a.n != b.n {
        return Err(Error::QubitMismatch(a.n, b.n));
    }
    let mut out = PauliSum::zero(a.n);
    for p in a.strings() {
        for q in b.strings() {
            if anticommutes(p.x_mask, p.z_mask, q.x_mask, q.z_mask) {
                let mut r = multiply(&p, &q)?;
                r.coeff *= 2.0;
                out.add_string(r)?;
            }
        }
    }
    Ok(out)
}

/// `<s|a|s>` for a Hermitian Pauli sum.
pub fn expectation(a: &PauliSum, s: &StateVector) -> Result<f64> {
    if !a.is_hermitian() {
        return Err(Error::NonHermitian);
    }
    if s.feasible().n() != a.n() {
        return Err(Error::QubitMismatch(a.n(), s.feasible().n()));
    }
    let full = s.to_full_space()?;
    let v = a.expectation_complex(&full)?;
    debug_assert!(v.im.abs() <= 1e-8 * v.re.abs().max(1.0));
    Ok(v.re)
}

/// Anything that can be applied to a vector, along with its adjoint.
pub trait LinearOperator: Sync {
    fn dim(&self) -> usize;
    fn apply(&self, v: &[Complex64], out: &mut [Complex64]);
    fn apply_adjoint(&self, v: &[Complex64], out: &mut [Complex64]);
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    pub matrix: DMatrix<Complex64>,
}

impl DenseOperator {
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::invalid("dense operators must be square"));
        }
        Ok(DenseOperator { matrix })
    }

    pub fn from_real(matrix: &DMatrix<f64>) -> Result<Self> {
        DenseOperator::new(matrix.map(|v| Complex64::new(v, 0.0)))
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn adjoint(&self) -> DenseOperator {
        DenseOperator {
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn commutator(&self, other: &DenseOperator) -> Result<DenseOperator> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: other.dim(),
            });
        }
        Ok(DenseOperator {
            matrix: &self.matrix * &other.matrix - &other.matrix * &self.matrix,
        })
    }

    fn max_abs(m: &DMatrix<Complex64>) -> f64 {
        m.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest elementwise deviation from Hermiticity.
    pub fn hermitian_defect(&self) -> f64 {
        DenseOperator::max_abs(&(&self.matrix - self.matrix.adjoint()))
    }

    pub fn anti_hermitian_defect(&self) -> f64 {
        DenseOperator::max_abs(&(&self.matrix + self.matrix.adjoint()))
    }

    pub fn normality_defect(&self) -> f64 {
        let a = &self.matrix;
        let ad = a.adjoint();
        DenseOperator::max_abs(&(a * &ad - &ad * a))
    }

    /// Eigenvalues of a Hermitian operator, ascending.
    pub fn hermitian_eigenvalues(&self) -> Result<Vec<f64>> {
        let scale = DenseOperator::max_abs(&self.matrix).max(1.0);
        if self.hermitian_defect() > tolerance::ABS * scale {
            return Err(Error::NonHermitian);
        }
        let herm = (&self.matrix + self.matrix.adjoint()) * Complex64::new(0.5, 0.0);
        let d = herm.nrows();
        let mut ev: Vec<f64> = if herm.iter().all(|z| z.im == 0.0) {
            DMatrix::from_fn(d, d, |r, c| herm[(r, c)].re)
                .symmetric_eigenvalues()
                .iter()
                .copied()
                .collect()
        } else {
            herm.clone().symmetric_eigenvalues().iter().copied().collect()
        };
        if ev.iter().any(|v| !v.is_finite()) {
            // [[Re, -Im], [Im, Re]] has every eigenvalue of `herm` twice; a
            // diagonal shift moves the QR iteration off the failing path
            let mut found = None;
            for shift in [0.0, 0.3719 * scale, -0.5813 * scale] {
                let embed = DMatrix::from_fn(2 * d, 2 * d, |r, c| {
                    let z = herm[(r % d, c % d)];
                    let diag = if r == c { shift } else { 0.0 };
                    diag + match (r < d, c < d) {
                        (true, true) | (false, false) => z.re,
                        (true, false) => -z.im,
                        (false, true) => z.im,
                    }
                });
                let mut all: Vec<f64> = embed.symmetric_eigenvalues().iter().map(|v| v - shift).collect();
                if all.iter().all(|v| v.is_finite()) {
                    all.sort_by(|a, b| a.total_cmp(b));
                    found = Some(all.into_iter().step_by(2).collect());
                    break;
                }
            }
            ev = found.ok_or(Error::NoConvergence(3))?;
        }
        ev.sort_by(|a, b| a.total_cmp(b));
        Ok(ev)
    }

    /// Spectral norm by exact eigensolve; the operator must be normal.
    pub fn spectral_norm(&self) -> Result<f64> {
        if self.dim() == 0 {
            return Ok(0.0);
        }
        let scale = DenseOperator::max_abs(&self.matrix).max(1.0);
        let tol = tolerance::ABS * scale;
        if self.hermitian_defect() <= tol {
            let ev = self.hermitian_eigenvalues()?;
            return Ok(ev.iter().map(|v| v.abs()).fold(0.0, f64::max));
        }
        if self.anti_hermitian_defect() <= tol {
            let herm = DenseOperator {
                matrix: &self.matrix * Complex64::new(0.0, 1.0),
            };
            let ev = herm.hermitian_eigenvalues()?;
            return Ok(ev.iter().map(|v| v.abs()).fold(0.0, f64::max));
        }
        let defect = self.normality_defect();
        if defect > tol * scale {
            return Err(Error::NonNormal(defect));
        }
        let sv = self.matrix.clone().singular_values();
        Ok(sv.iter().copied().fold(0.0, f64::max))
    }
}

impl LinearOperator for DenseOperator {
    fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    fn apply(&self, v: &[Complex64], out: &mut [Complex64]) {
        let d = self.dim();
        for (r, o) in out.iter_mut().enumerate().take(d) {
            *o = (0..d).map(|c| self.matrix[(r, c)] * v[c]).sum();
        }
    }

    fn apply_adjoint(&self, v: &[Complex64], out: &mut [Complex64]) {
        let d = self.dim();
        for (r, o) in out.iter_mut().enumerate().take(d) {
            *o = (0..d).map(|c| self.matrix[(c, r)].conj() * v[c]).sum();
        }
    }
}

/// How a norm was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormMethod {
    Dense,
    Iterative { iterations: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    pub value: f64,
    pub method: NormMethod,
}

#[derive(Debug, Clone, Copy)]
pub struct PowerConfig {
    pub tol: f64,
    pub max_iters: usize,
    pub seed: u64,
}

impl Default for PowerConfig {
    fn default() -> Self {
        PowerConfig {
            tol: tolerance::POWER_TOL,
            max_iters: tolerance::POWER_MAX_ITERS,
            seed: tolerance::POWER_SEED,
        }
    }
}

fn norm2(v: &[Complex64]) -> f64 {
    v.par_iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest singular value by power iteration on `A^dagger A` from a seeded
/// random unit vector. Stops when the Rayleigh quotient changes by less than
/// `cfg.tol` relative to its value.
pub fn power_norm<O: LinearOperator + ?Sized>(op: &O, cfg: &PowerConfig) -> Result<NormEstimate> {
    let dim = op.dim();
    if dim == 0 {
        return Ok(NormEstimate {
            value: 0.0,
            method: NormMethod::Iterative { iterations: 0 },
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut v: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let nv = norm2(&v);
    v.iter_mut().for_each(|c| *c /= nv);
    let mut w = vec![ZERO; dim];
    let mut u = vec![ZERO; dim];
    let mut prev = f64::NAN;
    for it in 1..=cfg.max_iters {
        op.apply(&v, &mut w);
        op.apply_adjoint(&w, &mut u);
        // Rayleigh quotient of A^dagger A at unit v is |Av|^2.
        let rq = w.par_iter().map(|c| c.norm_sqr()).sum::<f64>();
        let nu = norm2(&u);
        if nu == 0.0 || rq == 0.0 {
            return Ok(NormEstimate {
                value: 0.0,
                method: NormMethod::Iterative { iterations: it },
            });
        }
        if (rq - prev).abs() <= cfg.tol * rq {
            return Ok(NormEstimate {
                value: rq.sqrt(),
                method: NormMethod::Iterative { iterations: it },
            });
        }
        prev = rq;
        v.par_iter_mut().zip(u.par_iter()).for_each(|(a, b)| *a = *b / nu);
    }
    Err(Error::NoConvergence(cfg.max_iters))
}

/// Spectral norm of a normal Pauli sum: dense eigensolve when the qubit count
/// allows it, power iteration otherwise.
pub fn spectral_norm(a: &PauliSum, limits: &Limits) -> Result<NormEstimate> {
    if a.is_empty() {
        return Ok(NormEstimate {
            value: 0.0,
            method: NormMethod::Dense,
        });
    }
    if a.len() == 1 {
        // A single Pauli string is unitary up to its coefficient.
        let c = a.strings().next().expect("one term").coeff.norm();
        return Ok(NormEstimate {
            value: c,
            method: NormMethod::Dense,
        });
    }
    let defect = a.normality_defect();
    if defect > tolerance::ABS * a.coefficient_l1().max(1.0) {
        return Err(Error::NonNormal(defect));
    }
    if a.n() <= limits.dense_qubits {
        let value = a.to_dense(limits)?.spectral_norm()?;
        Ok(NormEstimate {
            value,
            method: NormMethod::Dense,
        })
    } else {
        power_norm(a, &PowerConfig::default())
    }
}

#[derive(Serialize, Deserialize)]
struct PauliTermJson {
    x_mask: u64,
    z_mask: u64,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct PauliSumJson {
    n: usize,
    terms: Vec<PauliTermJson>,
}

impl Serialize for PauliSum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PauliSumJson {
            n: self.n,
            terms: self
                .strings()
                .map(|p| PauliTermJson {
                    x_mask: p.x_mask,
                    z_mask: p.z_mask,
                    re: p.coeff.re,
                    im: p.coeff.im,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PauliSum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PauliSumJson::deserialize(d)?;
        let strings = raw
            .terms
            .into_iter()
            .map(|t| PauliString::new(raw.n, t.x_mask, t.z_mask, Complex64::new(t.re, t.im)))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        PauliSum::from_strings(raw.n, strings).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ps(label: &str, coeff: Complex64) -> PauliString {
        PauliString::from_label(label, coeff).unwrap()
    }

    #[test]
    fn single_qubit_table() {
        let z = ps("Z", ONE);
        let x = ps("X", ONE);
        let zx = multiply(&z, &x).unwrap();
        assert_eq!((zx.x_mask, zx.z_mask), (1, 1));
        assert_eq!(zx.coeff, c(0.0, 1.0));
        let xz = multiply(&x, &z).unwrap();
        assert_eq!(xz.coeff, c(0.0, -1.0));
        let y = ps("Y", ONE);
        assert_eq!(multiply(&y, &y).unwrap().coeff, ONE);
        // XY = iZ
        let xy = multiply(&x, &y).unwrap();
        assert_eq!((xy.x_mask, xy.z_mask, xy.coeff), (0, 1, c(0.0, 1.0)));
    }

    #[test]
    fn identity_and_involution() {
        let p = ps("XYZI", c(2.0, -1.0));
        let id = PauliString::identity(4, ONE);
        assert_eq!(multiply(&id, &p).unwrap(), p);
        let zz = ps("ZZ", ONE);
        let sq = multiply(&zz, &zz).unwrap();
        assert!(sq.is_identity());
        assert_eq!(sq.coeff, ONE);
    }

    #[test]
    fn qubit_mismatch_is_an_error() {
        let a = ps("Z", ONE);
        let b = ps("ZZ", ONE);
        assert!(matches!(multiply(&a, &b), Err(Error::QubitMismatch(1, 2))));
        let sa = PauliSum::from_strings(1, [a]).unwrap();
        let sb = PauliSum::from_strings(2, [b]).unwrap();
        assert!(commutator(&sa, &sb).is_err());
    }

    #[test]
    fn masks_must_fit() {
        assert!(PauliString::new(2, 0b100, 0, ONE).is_err());
    }

    #[test]
    fn commutator_z_x() {
        let z = PauliSum::from_strings(1, [ps("Z", ONE)]).unwrap();
        let x = PauliSum::from_strings(1, [ps("X", c(0.5, 0.0))]).unwrap();
        let k = commutator(&z, &x).unwrap();
        assert_eq!(k.len(), 1);
        assert_eq!(k.coeff(1, 1), c(0.0, 1.0));
        assert!(commutator(&z, &z).unwrap().is_empty());
    }

    #[test]
    fn maxcut_edge_against_tf() {
        let hc = PauliSum::from_strings(2, [ps("ZZ", -ONE)]).unwrap();
        let tf = PauliSum::transverse_field(2);
        let k = commutator(&hc, &tf).unwrap();
        // i (Y1 Z2 + Z1 Y2)
        assert_eq!(k.len(), 2);
        assert_eq!(k.coeff(0b01, 0b11), c(0.0, 1.0));
        assert_eq!(k.coeff(0b10, 0b11), c(0.0, 1.0));
        let lim = Limits::default();
        let dense = hc.to_dense(&lim).unwrap().commutator(&tf.to_dense(&lim).unwrap()).unwrap();
        let diff = &dense.matrix - &k.to_dense(&lim).unwrap().matrix;
        assert!(diff.iter().all(|v| v.norm() < 1e-12));
    }

    #[test]
    fn dense_basics() {
        let lim = Limits::default();
        let id = PauliSum::identity(2, 3.0).to_dense(&lim).unwrap();
        assert_eq!(id.matrix, DMatrix::identity(4, 4) * c(3.0, 0.0));
        let z = PauliSum::z_product(1, 1, 1.0).unwrap().to_dense(&lim).unwrap();
        assert_eq!(z.matrix[(0, 0)], ONE);
        assert_eq!(z.matrix[(1, 1)], -ONE);
        let tf = PauliSum::transverse_field(2).to_dense(&lim).unwrap();
        let ev = tf.hermitian_eigenvalues().unwrap();
        for (a, b) in ev.iter().zip([0.0, 1.0, 1.0, 2.0]) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn dense_limit_is_enforced() {
        let lim = Limits {
            dense_qubits: 3,
            ..Limits::default()
        };
        assert!(matches!(
            PauliSum::identity(4, 1.0).to_dense(&lim),
            Err(Error::Limit { .. })
        ));
    }

    #[test]
    fn pauli_string_norm_is_coefficient() {
        let lim = Limits::default();
        let zz = PauliSum::z_product(3, 0b011, 1.0).unwrap();
        assert_eq!(spectral_norm(&zz, &lim).unwrap().value, 1.0);
        let y = PauliSum::from_strings(3, [ps("YXZ", c(0.0, -2.5))]).unwrap();
        assert_eq!(spectral_norm(&y, &lim).unwrap().value, 2.5);
    }

    #[test]
    fn non_normal_is_rejected() {
        // X + iZ is neither Hermitian nor anti-Hermitian and not normal.
        let a = PauliSum::from_strings(1, [ps("X", ONE), ps("Z", c(0.0, 1.0))]).unwrap();
        assert!(matches!(spectral_norm(&a, &Limits::default()), Err(Error::NonNormal(_))));
        let dense = a.to_dense(&Limits::default()).unwrap();
        assert!(matches!(dense.spectral_norm(), Err(Error::NonNormal(_))));
    }

    #[test]
    fn iterative_matches_dense_on_tf() {
        let tf = PauliSum::transverse_field(5);
        let lim = Limits::default();
        let d = tf.to_dense(&lim).unwrap().spectral_norm().unwrap();
        let it = power_norm(&tf, &PowerConfig::default()).unwrap();
        assert!((d - 5.0).abs() < 1e-10);
        assert!((d - it.value).abs() < 1e-8);
    }

    #[test]
    fn product_expectations() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let plus = [c(s, 0.0), c(s, 0.0)];
        let z = PauliSum::z_product(3, 0b010, 1.0).unwrap();
        assert!(z.product_expectation(&[plus; 3]).unwrap().norm() < 1e-15);
        let tf = PauliSum::transverse_field(3);
        assert!(tf.product_expectation(&[plus; 3]).unwrap().norm() < 1e-15);
    }

    #[test]
    fn json_round_trip() {
        let a = PauliSum::from_strings(3, [ps("XYZ", c(1.5, -0.5)), ps("IIZ", c(2.0, 0.0))])
            .unwrap();
        let text = serde_json::to_string(&a).unwrap();
        assert!(text.contains("\"x_mask\""));
        let back: PauliSum = serde_json::from_str(&text).unwrap();
        assert_eq!(a, back);
        let bad = r#"{"n":1,"terms":[{"x_mask":4,"z_mask":0,"re":1.0,"im":0.0}]}"#;
        assert!(serde_json::from_str::<PauliSum>(bad).is_err());
    }
}
