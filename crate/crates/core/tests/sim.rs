mod common;

use std::f64::consts::PI;

use common::*;
use nalgebra::DVector;
use proptest::prelude::*;
use qaoa_bounds::mixers::MixerSpec;
use qaoa_bounds::problems::{gen_dist3_set, CostSpectrum, FeasibleSet, SearchSet, SearchTag};
use qaoa_bounds::sim::{
    evolve, grover_fixed_schedule, optimize_angles, optimize_nested, run_qaoa, xj_bound_check, AngleSchedule,
    StateVector, Strategy,
};
use qaoa_bounds::{Complex64, Limits};

fn spectrum(n: usize, values: &[u64]) -> CostSpectrum {
    CostSpectrum::new(FeasibleSet::full(n).unwrap(), values[..1 << n].to_vec()).unwrap()
}

fn max_diff(a: &[Complex64], b: &DVector<Complex64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

#[test]
fn zero_rounds_give_the_average() {
    let lim = Limits::default();
    let spec = spectrum(3, &[0, 1, 2, 3, 4, 5, 6, 7]);
    let r = run_qaoa(&spec, &MixerSpec::tf(3), &AngleSchedule::zeros(0), &lim).unwrap();
    assert!((r.lambda - 3.5 / 7.0).abs() < 1e-15);
    assert!((r.overlap_sq - 1.0).abs() < 1e-15);
    assert!(r.h0_expectation.abs() < 1e-15);
    let flat = spectrum(2, &[0, 0, 0, 0]);
    let r = run_qaoa(&flat, &MixerSpec::tf(2), &AngleSchedule::zeros(0), &lim).unwrap();
    assert_eq!(r.lambda, 1.0);
}

#[test]
fn schedule_validation_and_json() {
    assert!(AngleSchedule::new(vec![0.1], vec![]).is_err());
    assert!(grover_fixed_schedule(0).is_err());
    let s = AngleSchedule::new(vec![0.1, 7.0], vec![-1.0, 2.0]).unwrap();
    let back: AngleSchedule = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
    assert_eq!(back, s);
    assert!(s.gammas().iter().chain(s.betas()).all(|a| (0.0..2.0 * PI).contains(a)));
    assert!(serde_json::from_str::<AngleSchedule>(r#"{"gammas":[1.0],"betas":[]}"#).is_err());
}

#[test]
fn transverse_field_refused_on_constrained_set() {
    let f = FeasibleSet::hamming_weight(4, 2).unwrap();
    let spec = CostSpectrum::new(f.clone(), vec![1; f.len()]).unwrap();
    let sched = AngleSchedule::new(vec![0.3], vec![0.2]).unwrap();
    assert!(run_qaoa(&spec, &MixerSpec::tf(4), &sched, &Limits::default()).is_err());
    assert!(run_qaoa(&spec, &MixerSpec::grover(f), &sched, &Limits::default()).is_ok());
}

#[test]
fn simulation_limit() {
    let spec = spectrum(3, &[0; 8]);
    let lim = Limits { sim_qubits: 2, ..Limits::default() };
    assert!(run_qaoa(&spec, &MixerSpec::tf(3), &AngleSchedule::zeros(1), &lim).is_err());
}

#[test]
fn grover_rotation_closed_form() {
    let lim = Limits::default();
    for n in [4usize, 6, 8] {
        let set = SearchSet::new(n, vec![1], SearchTag::Generic).unwrap();
        let spec = qaoa_bounds::problems::search_cost(&set, &lim).unwrap();
        let mixer = MixerSpec::grover(FeasibleSet::full(n).unwrap());
        let theta = (2f64.powf(-(n as f64) / 2.0)).asin();
        for p in 1..6 {
            let r = run_qaoa(&spec, &mixer, &grover_fixed_schedule(p).unwrap(), &lim).unwrap();
            let want = ((2 * p + 1) as f64 * theta).sin().powi(2);
            assert!((r.success_probability - want).abs() < 1e-12);
        }
    }
}

#[test]
fn optimizer_is_deterministic_and_nested_is_monotone() {
    let lim = Limits::default();
    let spec = spectrum(4, &[0, 2, 1, 3, 3, 1, 2, 4, 0, 1, 1, 2, 2, 3, 1, 0]);
    let mixer = MixerSpec::tf(4);
    let strat = Strategy::MultistartCoordinateDescent { restarts: 4 };
    let a = optimize_nested(&spec, &mixer, 3, strat, 9, &lim).unwrap();
    let b = optimize_nested(&spec, &mixer, 3, strat, 9, &lim).unwrap();
    assert_eq!(a, b);
    for w in a.windows(2) {
        assert!(w[1].1.lambda >= w[0].1.lambda - 1e-12);
    }
    assert!(a.iter().all(|(_, r)| r.lambda <= 1.0 + 1e-12));
    let (_, g) = optimize_angles(&spec, &mixer, 1, Strategy::Grid { resolution: 24 }, 0, &lim).unwrap();
    assert!(g.lambda > a[0].1.lambda);
    let too_deep = Limits { optimizer_rounds: 2, ..lim };
    assert!(optimize_angles(&spec, &mixer, 3, strat, 0, &too_deep).is_err());
}

#[test]
fn xj_check_holds_on_optimized_dist3_runs() {
    let lim = Limits::default();
    let set = gen_dist3_set(5, 2, 3).unwrap().set;
    let spec = qaoa_bounds::problems::search_cost(&set, &lim).unwrap();
    let mixer = MixerSpec::tf(5);
    let runs = optimize_nested(&spec, &mixer, 4, Strategy::MultistartCoordinateDescent { restarts: 4 }, 1, &lim).unwrap();
    let mut checked = 0;
    for (s, r) in runs {
        if r.lambda > 0.5 {
            let state = evolve(&spec, &mixer, &s, &lim).unwrap();
            assert!(xj_bound_check(&state, &set).unwrap().holds);
            checked += 1;
        }
    }
    assert!(checked > 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn matches_dense_evolution(
        n in 1usize..6,
        values in proptest::collection::vec(0u64..6, 32),
        angles in proptest::collection::vec(-7.0..7.0f64, 6),
        p in 0usize..4,
        grover in any::<bool>(),
    ) {
        let lim = Limits::default();
        let spec = spectrum(n, &values);
        let vf: Vec<f64> = spec.values().iter().map(|&v| v as f64).collect();
        let (gammas, betas) = (angles[..p].to_vec(), angles[3..3 + p].to_vec());
        let sched = AngleSchedule::new(gammas.clone(), betas.clone()).unwrap();
        let (mixer, dense_mixer) = if grover {
            (MixerSpec::grover(FeasibleSet::full(n).unwrap()), grover_mixer(1 << n))
        } else {
            (MixerSpec::tf(n), tf_mixer(n))
        };
        let state = evolve(&spec, &mixer, &sched, &lim).unwrap();
        let want = dense_qaoa(&vf, &dense_mixer, &gammas, &betas);
        prop_assert!(max_diff(state.amplitudes(), &want) < 1e-10);

        let r = run_qaoa(&spec, &mixer, &sched, &lim).unwrap();
        let cost: f64 = want.iter().zip(&vf).map(|(a, v)| a.norm_sqr() * v).sum();
        prop_assert!((r.expected_cost - cost).abs() < 1e-10);
        let h0 = (want.adjoint() * &dense_mixer * &want)[(0, 0)].re;
        prop_assert!((r.h0_expectation - h0).abs() < 1e-10);
        let u = DVector::from_element(1 << n, c(1.0 / ((1 << n) as f64).sqrt(), 0.0));
        prop_assert!((r.overlap_sq - u.dotc(&want).norm_sqr()).abs() < 1e-10);
        if let Some(x) = &r.x_expectations {
            for (j, xj) in x.iter().enumerate() {
                let label: String = (0..n).map(|q| if q == j { 'X' } else { 'I' }).collect();
                let want_x = (want.adjoint() * label_matrix(&label) * &want)[(0, 0)].re;
                prop_assert!((xj - want_x).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn constrained_grover_matches_dense(values in proptest::collection::vec(0u64..6, 20), g in -4.0..4.0f64, b in -4.0..4.0f64) {
        let lim = Limits::default();
        let f = FeasibleSet::hamming_weight(6, 3).unwrap();
        let spec = CostSpectrum::new(f.clone(), values.clone()).unwrap();
        let sched = AngleSchedule::new(vec![g, g / 2.0], vec![b, -b]).unwrap();
        let state = evolve(&spec, &MixerSpec::grover(f), &sched, &lim).unwrap();
        let vf: Vec<f64> = values.iter().map(|&v| v as f64).collect();
        let want = dense_qaoa(&vf, &grover_mixer(20), &[g, g / 2.0], &[b, -b]);
        prop_assert!(max_diff(state.amplitudes(), &want) < 1e-10);
    }

    #[test]
    fn phase_angles_are_two_pi_periodic(values in proptest::collection::vec(0u64..9, 16), g in 0.0..6.0f64, b in 0.0..6.0f64) {
        let lim = Limits::default();
        let spec = spectrum(4, &values);
        let a = evolve(&spec, &MixerSpec::tf(4), &AngleSchedule::new(vec![g], vec![b]).unwrap(), &lim).unwrap();
        let shifted = AngleSchedule::new(vec![g + 2.0 * PI], vec![b - 2.0 * PI]).unwrap();
        let s = evolve(&spec, &MixerSpec::tf(4), &shifted, &lim).unwrap();
        prop_assert!(a.same_ray(&s).unwrap());
        prop_assert!((a.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn xj_inequality_on_random_states(seed in 0u64..500, target in 0.51..0.999f64, re in proptest::collection::vec(-1.0..1.0f64, 64), im in proptest::collection::vec(-1.0..1.0f64, 64)) {
        let n = 6;
        let set = gen_dist3_set(n, 4, seed).unwrap().set;
        let mut amps: Vec<Complex64> = re.iter().zip(&im).map(|(a, b)| c(*a, *b)).collect();
        let mass = |pred: &dyn Fn(u64) -> bool, a: &[Complex64]| -> f64 {
            a.iter().enumerate().filter(|(z, _)| pred(*z as u64)).map(|(_, x)| x.norm_sqr()).sum()
        };
        let mm = mass(&|z| set.contains(z), &amps);
        let uu = mass(&|z| !set.contains(z), &amps);
        prop_assume!(mm > 1e-6 && uu > 1e-6);
        for (z, a) in amps.iter_mut().enumerate() {
            let scale = if set.contains(z as u64) { (target / mm).sqrt() } else { ((1.0 - target) / uu).sqrt() };
            *a *= scale;
        }
        let state = StateVector::new(FeasibleSet::full(n).unwrap(), amps).unwrap();
        let report = xj_bound_check(&state, &set).unwrap();
        prop_assert!(report.holds, "{:?}", report);
    }
}
