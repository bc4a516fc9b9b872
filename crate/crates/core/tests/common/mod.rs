//! Reference implementations used as test oracles. Everything here is built
//! from matrix definitions, independently of the library's fast paths.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMat = DMatrix<Complex64>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn pauli(ch: char) -> CMat {
    let o = c(0.0, 0.0);
    let l = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    match ch {
        'I' => CMat::from_row_slice(2, 2, &[l, o, o, l]),
        'X' => CMat::from_row_slice(2, 2, &[o, l, l, o]),
        'Y' => CMat::from_row_slice(2, 2, &[o, -i, i, o]),
        'Z' => CMat::from_row_slice(2, 2, &[l, o, o, -l]),
        _ => panic!("not a Pauli letter: {ch}"),
    }
}

/// Dense matrix of a label whose first character acts on qubit 0, the
/// least significant bit of the basis index.
pub fn label_matrix(label: &str) -> CMat {
    let mut m = CMat::from_element(1, 1, c(1.0, 0.0));
    for ch in label.chars() {
        // qubit j is bit j, so later qubits are more significant
        m = pauli(ch).kronecker(&m);
    }
    m
}

pub fn diag(values: &[f64]) -> CMat {
    CMat::from_diagonal(&DVector::from_iterator(values.len(), values.iter().map(|&v| c(v, 0.0))))
}

/// `n/2 - sum_j X_j / 2`, built from single-qubit operators.
pub fn tf_mixer(n: usize) -> CMat {
    let d = 1 << n;
    let mut m = CMat::identity(d, d) * c(n as f64 / 2.0, 0.0);
    for j in 0..n {
        let label: String = (0..n).map(|q| if q == j { 'X' } else { 'I' }).collect();
        m -= label_matrix(&label) * c(0.5, 0.0);
    }
    m
}

/// `I - |u><u|` with `|u>` uniform over `d` states.
pub fn grover_mixer(d: usize) -> CMat {
    let u = CMat::from_element(d, 1, c(1.0 / (d as f64).sqrt(), 0.0));
    CMat::identity(d, d) - &u * u.adjoint()
}

pub fn commutator(a: &CMat, b: &CMat) -> CMat {
    a * b - b * a
}

/// Largest singular value.
pub fn op_norm(m: &CMat) -> f64 {
    m.clone().singular_values().iter().copied().fold(0.0, f64::max)
}

/// Largest |eigenvalue| of a real symmetric matrix.
pub fn sym_radius(m: &DMatrix<f64>) -> f64 {
    m.clone().symmetric_eigenvalues().iter().map(|v| v.abs()).fold(0.0, f64::max)
}

/// `||[diag(C), n/2 - sum X_j/2]||` through the real matrix `M^T M`.
pub fn tf_commutator_norm(values: &[f64]) -> f64 {
    let d = values.len();
    let n = d.trailing_zeros() as usize;
    let mut m = DMatrix::<f64>::zeros(d, d);
    for y in 0..d {
        for j in 0..n {
            let x = y ^ (1 << j);
            // [C, -X_j/2] has (y, x) entry -(C(y) - C(x))/2
            m[(y, x)] = -(values[y] - values[x]) / 2.0;
        }
    }
    let mtm = m.transpose() * &m;
    sym_radius(&mtm).sqrt()
}

/// `exp(-i t H)` for a real symmetric `H`.
pub fn expm_real_sym(h: &DMatrix<f64>, t: f64) -> CMat {
    let e = h.clone().symmetric_eigen();
    let d = h.nrows();
    let v = e.eigenvectors.map(|x| c(x, 0.0));
    let mid = CMat::from_diagonal(&DVector::from_iterator(
        d,
        e.eigenvalues.iter().map(|&l| Complex64::from_polar(1.0, -t * l)),
    ));
    &v * mid * v.adjoint()
}

pub fn real_part(m: &CMat) -> DMatrix<f64> {
    m.map(|z| z.re)
}

/// QAOA from the uniform state with `exp(-i gamma (C_max - C))` and
/// `exp(-i beta H_M)`, by dense matrices.
pub fn dense_qaoa(values: &[f64], mixer: &CMat, gammas: &[f64], betas: &[f64]) -> DVector<Complex64> {
    let d = values.len();
    let cmax = values.iter().copied().fold(f64::MIN, f64::max);
    let mut psi = DVector::from_element(d, c(1.0 / (d as f64).sqrt(), 0.0));
    let hm = real_part(mixer);
    for (g, b) in gammas.iter().zip(betas) {
        for (a, v) in psi.iter_mut().zip(values) {
            *a *= Complex64::from_polar(1.0, -g * (cmax - v));
        }
        psi = expm_real_sym(&hm, *b) * psi;
    }
    psi
}

/// Max-Cut values by direct edge counting.
pub fn cut_values(n: usize, edges: &[(usize, usize, u64)]) -> Vec<u64> {
    (0..1u64 << n)
        .map(|z| {
            edges
                .iter()
                .filter(|&&(u, v, _)| (z >> u & 1) != (z >> v & 1))
                .map(|e| e.2)
                .sum()
        })
        .collect()
}

/// `(mean, population variance)` as exact fractions `num / den`.
pub fn exact_mean_var(values: &[u64]) -> ((i128, i128), (i128, i128)) {
    let n = values.len() as i128;
    let s: i128 = values.iter().map(|&v| v as i128).sum();
    let s2: i128 = values.iter().map(|&v| (v as i128) * (v as i128)).sum();
    ((s, n), (n * s2 - s * s, n * n))
}

pub fn mean_sigma(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let m = values.iter().sum::<f64>() / n;
    let v = values.iter().map(|x| (x - m).powi(2)).sum::<f64>() / n;
    (m, v.sqrt())
}

pub fn hamming(a: u64, b: u64) -> u32 {
    (a ^ b).count_ones()
}
