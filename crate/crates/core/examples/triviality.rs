//! On 3-regular Max-Cut the transverse-field commutator is large enough
//! that the a-priori bound stays below one round. The product-state witness
//! certifies the norm from below.

use qaoa_bounds::bounds::{tf_objective_bound, BoundInputs, Mode, Provenance, Route};
use qaoa_bounds::mixers::{s_star_witness, tf_commutator};
use qaoa_bounds::pauli::spectral_norm;
use qaoa_bounds::problems::{cost_stats_bruteforce, maxcut_cost, maximizing_string, Graph};
use qaoa_bounds::Limits;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> qaoa_bounds::Result<()> {
    let limits = Limits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in [4usize, 6, 8, 10, 12] {
        let g = Graph::random_regular(n, 3, &mut rng)?;
        let (h, spec) = maxcut_cost(&g, &limits)?;
        let stats = cost_stats_bruteforce(&spec.expect("small"))?;
        let comm = spectral_norm(&tf_commutator(&h)?, &limits)?;
        let b = tf_objective_bound(
            &BoundInputs::new(1.0, Mode::APriori)
                .with_stats(stats.c_max, stats.c_avg, stats.sigma, Provenance::new(Route::Enumerated, ""))
                .with_comm_norm(comm.value, Provenance::new(Route::Numeric, ""))
                .with_n(n),
        )?;
        let (s, traceless) = maximizing_string(&h, &limits)?;
        let w = s_star_witness(&h, s, 2)?;
        println!(
            "n={n:>2} ||[H_C,H_TF]||={:.6} witness={:.6} ||H_C'||={:.6} bound={:.6} trivial={}",
            comm.value, w.value, traceless, b.p_lower, b.trivial
        );
    }
    Ok(())
}
