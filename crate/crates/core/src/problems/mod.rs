//! Cost functions and their objective statistics.
//!
//! Costs are integer valued on a feasible set `F`. [`CostSpectrum`] holds the
//! enumerated values; [`KLocalCost`] holds the Pauli-Z expansion
//! `H_C = constant - sum alpha_nu Z_{S_nu}`, from which the mean and standard
//! deviation over the full space can be read off directly.

mod feasible;
mod graph;
mod klocal;
mod search;
mod spectrum;

pub use feasible::{binomial, FeasibleKind, FeasibleSet};
pub use graph::{Edge, Graph};
pub use klocal::{cost_stats_from_coefficients, maxcut_cost, maximizing_string, KLocalCost, ZTerm};
pub use search::{
    format_bitstring, gen_dist3_set, gen_hamming_k_set, min_pairwise_distance, parse_bitstring,
    search_cost, Dist3Outcome, SearchSet, SearchTag,
};
pub use spectrum::{cost_stats_bruteforce, CostSpectrum, CostStats};

pub(crate) use feasible::weight_layer;
pub(crate) use klocal::check_enumerable;
