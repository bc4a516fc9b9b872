//! Commutator norms for both mixers: closed forms next to numeric
//! eigensolves.

use qaoa_bounds::mixers::{
    commutator_norm, grover_commutator_dense, grover_commutator_norm, tf_commutator, tf_hamming_k_norm,
    tf_search_dist3_norm, CostInput, MixerSpec, TfSpectrumCommutator,
};
use qaoa_bounds::pauli::spectral_norm;
use qaoa_bounds::problems::{gen_dist3_set, gen_hamming_k_set, maxcut_cost, search_cost, Graph};
use qaoa_bounds::spectra::{layer_radius, layer_radius_dense, star_radius};
use qaoa_bounds::Limits;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> qaoa_bounds::Result<()> {
    let limits = Limits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let g = Graph::random_regular(8, 3, &mut rng)?;
    let (h, spec) = maxcut_cost(&g, &limits)?;
    let spec = spec.expect("8 vertices enumerate");

    let closed = grover_commutator_norm(&spec)?;
    let dense = grover_commutator_dense(&spec, &limits)?.spectral_norm()?;
    println!("3-regular n=8, Grover: sigma_C={closed:.10} dense={dense:.10}");

    let tf = spectral_norm(&tf_commutator(&h)?, &limits)?;
    println!("3-regular n=8, transverse field: {:.10} ({:?})", tf.value, tf.method);

    for n in [4usize, 6, 8] {
        let k = n / 2;
        println!("star radius n={n}: {:.10}; layer radius k={k}: {:.10} dense {:.10}",
            star_radius(n), layer_radius(n, k)?, layer_radius_dense(n, k, &limits)?);
    }

    let out = gen_dist3_set(8, 4, 11)?;
    let c = search_cost(&out.set, &limits)?;
    let dense = TfSpectrumCommutator::new(&c)?.to_dense(&limits)?.spectral_norm()?;
    println!("dist-3 set n=8 m={}: closed {:.10} dense {:.10}", out.set.m(), tf_search_dist3_norm(8)?, dense);

    let layer = gen_hamming_k_set(8, 3)?;
    let c = search_cost(&layer, &limits)?;
    let dense = TfSpectrumCommutator::new(&c)?.to_dense(&limits)?.spectral_norm()?;
    println!("Hamming layer n=8 k=3: closed {:.10} dense {:.10}", tf_hamming_k_norm(8, 3)?, dense);

    let dispatched = commutator_norm(CostInput::Search(&layer), &MixerSpec::tf(8), &limits)?;
    println!("dispatch picks {:?}: {:.10}", dispatched.provenance.route, dispatched.value);
    Ok(())
}
