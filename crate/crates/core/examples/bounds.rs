//! A-priori round-count bounds for search and Max-Cut targets.

use qaoa_bounds::bounds::{
    grover_search_bound, max_search_overlap, maxcut_grover_bound, search_overlap_bound, tf_search_dist3_bound,
    tf_search_hamming_bound,
};

fn main() -> qaoa_bounds::Result<()> {
    println!("{:>6} {:>12} {:>12} {:>12}", "lambda", "grover", "overlap", "tf-dist3");
    for lambda in [0.6, 0.75, 0.9, 0.99, 1.0] {
        let g = grover_search_bound(lambda, 1 << 20, 1)?;
        let o = search_overlap_bound(lambda, 1 << 20, 1)?;
        let t = tf_search_dist3_bound(lambda, 20, 1)?;
        println!("{lambda:>6} {:>12.6} {:>12.6} {:>12.6}", g.p_lower, o.p_lower, t.p_lower);
    }

    let h = tf_search_hamming_bound(1.0, 16, 8, 12870)?;
    println!("Hamming layer n=16 k=8 at lambda=1: {:.7} (trivial: {})", h.p_lower, h.trivial);

    for e in [100u64, 10_000] {
        let b = maxcut_grover_bound(1.0, e as f64, e, None)?;
        println!("bipartite Max-Cut |E|={e}: p >= {:.5}", b.p_lower);
    }

    let ov = max_search_overlap(0.9, 1 << 10, 1);
    println!("largest uniform overlap with success 0.9 at N=1024: {ov:.6}");
    Ok(())
}
