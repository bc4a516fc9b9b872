//! Exact statevector simulation of p-round QAOA.
//!
//! A run starts in the uniform state over `F`, then alternates the phase
//! separator `exp(-i gamma_j H_1)` with `H_1 = C_max - H_C` and the mixer
//! `exp(-i beta_j H_0)`.

mod optimize;
mod run;
mod state;

pub use optimize::{optimize_angles, optimize_nested, Strategy};
pub use run::{
    evolve, grover_fixed_schedule, observe, run_qaoa, xj_bound_check, AngleSchedule, RunRecord,
    SimResult, XjReport,
};
pub use state::{init_uniform, StateVector};
