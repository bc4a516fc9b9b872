//! Scaling the cost by an integer while dividing the phase angles leaves
//! the state unchanged; the best rescaled bound sits at an endpoint.

use qaoa_bounds::bounds::{rescaled_bound, rescaled_ratio_scan};
use qaoa_bounds::mixers::MixerSpec;
use qaoa_bounds::problems::{maxcut_cost, Graph};
use qaoa_bounds::sim::{evolve, AngleSchedule};
use qaoa_bounds::Limits;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> qaoa_bounds::Result<()> {
    let limits = Limits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let g = Graph::random_gnp(6, 0.5, &mut rng);
    let spec = maxcut_cost(&g, &limits)?.1.expect("small");
    let mixer = MixerSpec::tf(6);
    let sched = AngleSchedule::random(3, &mut rng);
    let base = evolve(&spec, &mixer, &sched, &limits)?;
    for alpha in [2u64, 3, 5] {
        let gammas = sched.gammas().iter().map(|g| g / alpha as f64).collect();
        let scaled = AngleSchedule::new(gammas, sched.betas().to_vec())?;
        let other = evolve(&spec.scaled(alpha)?, &mixer, &scaled, &limits)?;
        println!("alpha={alpha}: |<a|b>| = {:.15}", base.inner(&other)?.norm());
    }
    let (h0, dh1, c) = (0.8, 2.5, 1.7);
    let end = rescaled_bound(h0, dh1, c)?;
    let (scan, ratio) = rescaled_ratio_scan(h0, dh1, c, 10_000);
    println!("endpoint {:.12} ({}), scan {scan:.12} at ratio {ratio:.3e}", end.p_lower, end.note.unwrap_or_default());
    Ok(())
}
