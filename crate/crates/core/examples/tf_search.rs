//! Transverse-field QAOA on a distance-3 search problem: optimized runs,
//! the per-qubit `<X_j>` check and the dist-3 round bound.

use qaoa_bounds::bounds::tf_search_dist3_bound;
use qaoa_bounds::mixers::MixerSpec;
use qaoa_bounds::problems::{gen_dist3_set, search_cost};
use qaoa_bounds::sim::{evolve, optimize_nested, xj_bound_check, Strategy};
use qaoa_bounds::Limits;

fn main() -> qaoa_bounds::Result<()> {
    let limits = Limits::default();
    let out = gen_dist3_set(6, 3, 5)?;
    let set = out.set;
    println!("marked: {:?}", set.marked());
    let cost = search_cost(&set, &limits)?;
    let mixer = MixerSpec::tf(6);
    let runs = optimize_nested(&cost, &mixer, 4, Strategy::MultistartCoordinateDescent { restarts: 6 }, 3, &limits)?;
    for (sched, r) in runs {
        if r.lambda <= 0.5 {
            println!("p={} lambda={:.6} (bounds need lambda > 1/2)", r.p, r.lambda);
            continue;
        }
        let state = evolve(&cost, &mixer, &sched, &limits)?;
        let xj = xj_bound_check(&state, &set)?;
        let bound = tf_search_dist3_bound(r.lambda, 6, set.m())?;
        println!(
            "p={} lambda={:.6} max <X_j>={:.6} threshold={:.6} holds={} bound={:.6}",
            r.p,
            r.lambda,
            xj.x_expectations.iter().cloned().fold(f64::MIN, f64::max),
            xj.threshold,
            xj.holds,
            bound.p_lower
        );
    }
    Ok(())
}
