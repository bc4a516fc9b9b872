//! Fixed-angle Grover (gamma = beta = pi) on 10 qubits with one marked
//! string, compared with the search bounds at each round.

use qaoa_bounds::bounds::{grover_search_bound, search_overlap_bound};
use qaoa_bounds::mixers::MixerSpec;
use qaoa_bounds::problems::{search_cost, FeasibleSet, SearchSet, SearchTag};
use qaoa_bounds::sim::{grover_fixed_schedule, run_qaoa};
use qaoa_bounds::Limits;

fn main() -> qaoa_bounds::Result<()> {
    let limits = Limits::default();
    let set = SearchSet::new(10, vec![0b1100101001], SearchTag::Generic)?;
    let cost = search_cost(&set, &limits)?;
    let mixer = MixerSpec::grover(FeasibleSet::full(10)?);
    let theta = (1.0f64 / 32.0).asin();
    println!("{:>3} {:>12} {:>12} {:>10} {:>10}", "p", "success", "rotation", "grover", "overlap");
    for p in (1..=25).step_by(4) {
        let r = run_qaoa(&cost, &mixer, &grover_fixed_schedule(p)?, &limits)?;
        let closed = ((2 * p + 1) as f64 * theta).sin().powi(2);
        let g = grover_search_bound(r.lambda, 1024, 1)?.p_lower;
        let o = search_overlap_bound(r.lambda, 1024, 1)?.p_lower;
        println!("{p:>3} {:>12.10} {closed:>12.10} {g:>10.6} {o:>10.6}", r.success_probability);
    }
    Ok(())
}
