//! Spectral radii of the hypercube subgraphs behind the transverse-field
//! search commutators: stars `K_{1,n}` and the subgraph of `Q_n` induced by
//! Hamming-weight layers `k-1`, `k`, `k+1`.

use nalgebra::DMatrix;

use crate::problems::weight_layer;
use crate::{Error, Limits, Result};

/// `sqrt(n)`, the spectral radius of `K_{1,n}`.
pub fn star_radius(n: usize) -> f64 {
    (n as f64).sqrt()
}

/// `sqrt(2k(n-k) + n)`, the spectral radius of `Q_n[V_{k-1} + V_k + V_{k+1}]`.
pub fn layer_radius(n: usize, k: usize) -> Result<f64> {
    if k == 0 || k >= n {
        return Err(Error::invalid(format!("layer {k} needs 0 < k < n = {n}")));
    }
    Ok(((2 * k * (n - k) + n) as f64).sqrt())
}

/// Adjacency matrix of `K_{1,n}`, center first.
pub fn star_adjacency(n: usize) -> DMatrix<f64> {
    let mut a = DMatrix::zeros(n + 1, n + 1);
    for leaf in 1..=n {
        a[(0, leaf)] = 1.0;
        a[(leaf, 0)] = 1.0;
    }
    a
}

/// Adjacency matrix of the subgraph of `Q_n` induced by `vertices`.
pub fn induced_hypercube_subgraph(vertices: &[u64]) -> DMatrix<f64> {
    let d = vertices.len();
    let mut a = DMatrix::zeros(d, d);
    for (i, &u) in vertices.iter().enumerate() {
        for (j, &v) in vertices.iter().enumerate() {
            if (u ^ v).count_ones() == 1 {
                a[(i, j)] = 1.0;
            }
        }
    }
    a
}

/// Vertices of weight `k-1`, `k` and `k+1` in `Q_n`.
pub fn three_layer_vertices(n: usize, k: usize) -> Vec<u64> {
    let mut v = Vec::new();
    for w in k.saturating_sub(1)..=(k + 1).min(n) {
        v.extend(weight_layer(n, w as u32));
    }
    v
}

/// Largest eigenvalue magnitude of a symmetric matrix.
pub fn spectral_radius(a: &DMatrix<f64>) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    a.clone()
        .symmetric_eigenvalues()
        .iter()
        .fold(0.0f64, |m, e| m.max(e.abs()))
}

/// Dense radius of the three-layer subgraph, refused beyond the dense limit.
pub fn layer_radius_dense(n: usize, k: usize, limits: &Limits) -> Result<f64> {
    if n > limits.dense_qubits {
        return Err(Error::Limit {
            what: "qubit count for dense layer subgraphs",
            size: n,
            limit: limits.dense_qubits,
        });
    }
    Ok(spectral_radius(&induced_hypercube_subgraph(&three_layer_vertices(n, k))))
}
