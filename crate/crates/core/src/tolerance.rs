//! Floating-point tolerance policy. Every numeric comparison in the crate goes
//! through one of these constants.

/// Absolute tolerance for unit-scale quantities (amplitudes, expectations,
/// Hermiticity and normality defects).
pub const ABS: f64 = 1e-10;

/// Relative tolerance for spectral norms.
pub const NORM_REL: f64 = 1e-8;

/// Coefficients below this magnitude are dropped when a Pauli sum is simplified.
pub const PRUNE: f64 = 1e-14;

/// Power iteration stops once the Rayleigh quotient changes by less than this
/// (relative).
pub const POWER_TOL: f64 = 1e-10;

/// Iteration cap for power iteration.
pub const POWER_MAX_ITERS: usize = 10_000;

/// Seed for the power-iteration start vector.
pub const POWER_SEED: u64 = 0x5eed_0f90;

/// Distance from an integer tolerated when checking integer-valued costs.
pub const INTEGRALITY: f64 = 1e-9;

/// Returns true when `a` and `b` agree to [`NORM_REL`] relative to their scale.
pub fn norms_agree(a: f64, b: f64) -> bool {
    (a - b).abs() <= NORM_REL * a.abs().max(b.abs()).max(1.0)
}
