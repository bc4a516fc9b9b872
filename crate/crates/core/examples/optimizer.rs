//! Nested and independent angle optimization on a small Max-Cut instance.

use qaoa_bounds::mixers::MixerSpec;
use qaoa_bounds::problems::{maxcut_cost, Graph};
use qaoa_bounds::sim::{optimize_angles, optimize_nested, Strategy};
use qaoa_bounds::Limits;

fn main() -> qaoa_bounds::Result<()> {
    let limits = Limits::default();
    let g = Graph::cycle(6)?;
    let spec = maxcut_cost(&g, &limits)?.1.expect("small");
    let mixer = MixerSpec::tf(6);
    let strategy = Strategy::MultistartCoordinateDescent { restarts: 8 };
    let nested = optimize_nested(&spec, &mixer, 4, strategy, 17, &limits)?;
    for (sched, r) in &nested {
        let (_, fresh) = optimize_angles(&spec, &mixer, r.p, strategy, 17, &limits)?;
        println!("p={} nested lambda={:.6} independent lambda={:.6} gammas={:?}",
            r.p, r.lambda, fresh.lambda, sched.gammas().iter().map(|g| (g * 1e3).round() / 1e3).collect::<Vec<_>>());
    }
    let (_, grid) = optimize_angles(&spec, &mixer, 1, Strategy::Grid { resolution: 64 }, 0, &limits)?;
    println!("p=1 grid (64 x 64) lambda={:.6}", grid.lambda);
    Ok(())
}
