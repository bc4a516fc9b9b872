//! Objective statistics of a Max-Cut instance, a random k-local cost and a
//! search indicator, each through every available route.

use qaoa_bounds::problems::{
    cost_stats_bruteforce, cost_stats_from_coefficients, maxcut_cost, search_cost, Graph, KLocalCost, SearchSet,
    SearchTag,
};
use qaoa_bounds::Limits;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> qaoa_bounds::Result<()> {
    let limits = Limits::default();

    let k3 = Graph::parse("3 3\n0 1\n1 2\n0 2\n")?;
    let (cost, spec) = maxcut_cost(&k3, &limits)?;
    let spec = spec.expect("3 vertices enumerate");
    println!("K3 Max-Cut");
    println!("  enumerated : C_max={} C_avg={} var={}", spec.c_max(), spec.c_avg_exact()?, spec.variance_exact()?);
    let (avg, sigma) = cost_stats_from_coefficients(&cost)?;
    println!("  coefficient: C_avg={avg} sigma={sigma:.6}");

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let h = KLocalCost::random_integer(8, 3, 6, 4, &mut rng)?;
    let brute = cost_stats_bruteforce(&h.spectrum(&limits)?)?;
    let (avg, sigma) = cost_stats_from_coefficients(&h)?;
    println!("random 3-local cost on 8 qubits ({} terms)", h.terms().len());
    println!("  enumerated : C_avg={:.6} sigma={:.6} C_max={}", brute.c_avg, brute.sigma, brute.c_max);
    println!("  coefficient: C_avg={avg:.6} sigma={sigma:.6}");

    let s = SearchSet::new(10, vec![3, 512, 700], SearchTag::Generic)?;
    let closed = s.closed_form_stats();
    let brute = cost_stats_bruteforce(&search_cost(&s, &limits)?)?;
    println!("search n=10 m=3");
    println!("  closed form: C_avg={:.6} sigma={:.6}", closed.c_avg, closed.sigma);
    println!("  enumerated : C_avg={:.6} sigma={:.6}", brute.c_avg, brute.sigma);
    Ok(())
}
