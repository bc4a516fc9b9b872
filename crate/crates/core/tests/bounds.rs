use std::f64::consts::PI;

use proptest::prelude::*;
use qaoa_bounds::bounds::*;
use qaoa_bounds::problems::{maxcut_cost, Graph};
use qaoa_bounds::{Error, Limits};

fn prov() -> Provenance {
    Provenance::new(Route::UserSupplied, "")
}

fn inputs(lambda: f64, c_max: f64, c_avg: f64, sigma: f64, comm: f64) -> BoundInputs {
    BoundInputs::new(lambda, Mode::APriori)
        .with_stats(c_max, c_avg, sigma, prov())
        .with_comm_norm(comm, prov())
        .with_n(4)
}

/// Grover objective bound with the overlap maximized at success `lambda`.
fn grover_search_oracle(lambda: f64, nn: f64, m: f64) -> f64 {
    let ov = ((lambda * m / nn).sqrt() + ((1.0 - lambda) * (nn - m) / nn).sqrt()).powi(2);
    let sigma = (m * (nn - m)).sqrt() / nn;
    (1.0 - ov + lambda - m / nn) / (4.0 * PI * sigma)
}

fn search_overlap_oracle(lambda: f64, nn: f64, m: f64) -> f64 {
    let ov = ((lambda * m / nn).sqrt() + ((1.0 - lambda) * (nn - m) / nn).sqrt()).powi(2);
    let sigma = (m * (nn - m)).sqrt() / nn;
    (1.0 - ov) / (2.0 * PI * sigma)
}

/// Transverse-field objective bound with `<X_j> <= 2 sqrt(lambda(1-lambda))`.
fn tf_search_oracle(lambda: f64, n: f64, m: f64, comm: f64) -> f64 {
    let big_n = 2f64.powf(n);
    let h0 = n / 2.0 - n * (lambda * (1.0 - lambda)).sqrt();
    (h0 + lambda - m / big_n) / (4.0 * PI * comm)
}

#[test]
fn reference_values() {
    let cases = [
        (grover_search_bound(0.5, 1024, 1).unwrap().p_lower, 2.4656579),
        (grover_search_bound(1.0, 1024, 1).unwrap().p_lower, 5.0904708),
        (search_overlap_bound(1.0, 1024, 1).unwrap().p_lower, 5.0904708),
        (tf_search_dist3_bound(1.0, 16, 1).unwrap().p_lower, 0.3580980),
        (tf_search_dist3_bound(1.0, 100, 1).unwrap().p_lower, 0.8116902),
        (tf_search_hamming_bound(1.0, 16, 8, 12870).unwrap().p_lower, 0.1167616),
        (maxcut_grover_bound(1.0, 100.0, 100, None).unwrap().p_lower, 0.7957747),
        (qaoa_round_bound(&inputs(1.0, 2.0, 1.5, 0.75f64.sqrt(), 0.75f64.sqrt())).unwrap().p_lower, 0.0459441),
    ];
    for (got, want) in cases {
        assert!((got - want).abs() < 1e-7, "{got} vs {want}");
    }
}

#[test]
fn derived_search_values() {
    for &(lambda, n, m) in &[(0.5, 10u32, 1u64), (0.9, 12, 3), (0.99, 20, 5), (1.0, 8, 2)] {
        let nn = 2f64.powi(n as i32);
        let g = grover_search_bound(lambda, 1 << n, m).unwrap().raw;
        assert!((g - grover_search_oracle(lambda, nn, m as f64)).abs() < 1e-10);
        let o = search_overlap_bound(lambda, 1 << n, m).unwrap().raw;
        assert!((o - search_overlap_oracle(lambda, nn, m as f64)).abs() < 1e-10);
        if lambda > 0.5 {
            let t = tf_search_dist3_bound(lambda, n as usize, m).unwrap().raw;
            assert!((t - tf_search_oracle(lambda, n as f64, m as f64, (n as f64).sqrt() / 2.0)).abs() < 1e-10);
        }
    }
}

#[test]
fn applicability_errors() {
    assert!(matches!(tf_search_dist3_bound(0.5, 10, 1), Err(Error::NotApplicable { .. })));
    assert!(matches!(tf_search_hamming_bound(0.4, 10, 3, 120), Err(Error::NotApplicable { .. })));
    assert!(tf_search_hamming_bound(0.9, 10, 3, 100).is_err());
    assert!(tf_search_hamming_bound(0.9, 10, 0, 1).is_err());
    assert!(grover_search_bound(1.5, 16, 1).is_err());
    assert!(grover_search_bound(0.5, 16, 0).is_err());
    assert!(qaoa_round_bound(&inputs(-0.1, 1.0, 0.5, 0.5, 0.5)).is_err());
    assert!(matches!(
        qaoa_round_bound(&BoundInputs::new(0.5, Mode::APriori)),
        Err(Error::MissingIngredient(_))
    ));
    assert!(matches!(
        qaoa_round_bound(&inputs(0.5, 1.0, 0.5, 0.5, 0.5).with_comm_norm(0.0, prov())),
        Err(Error::ZeroDenominator(_))
    ));
    let post = BoundInputs::new(0.5, Mode::APosteriori).with_stats(1.0, 0.5, 0.5, prov()).with_comm_norm(1.0, prov());
    assert!(matches!(qaoa_round_bound(&post), Err(Error::MissingIngredient("h0_expectation"))));
}

#[test]
fn every_string_marked_is_trivial() {
    let r = search_overlap_bound(0.7, 16, 16).unwrap();
    assert_eq!(r.p_lower, 0.0);
    assert!(r.trivial);
}

#[test]
fn formula_names_round_trip() {
    for f in Formula::ALL {
        assert_eq!(Formula::parse(f.name()), Some(f));
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, format!("\"{}\"", f.name()));
    }
    assert_eq!(Formula::parse("nope"), None);
}

#[test]
fn a_priori_reports_worst_case_provenance() {
    let r = tf_objective_bound(&inputs(1.0, 3.0, 1.5, 1.0, 2.0)).unwrap();
    assert_eq!(r.provenance["sum_x_expectations"].route, Route::WorstCase);
    let r = grover_objective_bound(&inputs(1.0, 3.0, 1.5, 1.0, 1.0)).unwrap();
    assert_eq!(r.provenance["overlap_sq"].route, Route::WorstCase);
    assert_eq!(r.mode, Mode::APriori);
}

#[test]
fn maxcut_grover_agrees_with_klocal_form() {
    let lim = Limits::default();
    let g = Graph::cycle(7).unwrap();
    let (h, spec) = maxcut_cost(&g, &lim).unwrap();
    let c_max = spec.unwrap().c_max() as f64;
    for lambda in [0.5, 0.8, 1.0] {
        let a = maxcut_grover_bound(lambda, c_max, 7, Some(0.3)).unwrap();
        let b = BoundInputs::new(lambda, Mode::APosteriori)
            .with_c_max(c_max, prov())
            .with_overlap_sq(0.3);
        let k = grover_klocal_bound(&b, &h).unwrap();
        assert!((a.raw - k.raw).abs() < 1e-12);
    }
}

proptest! {
    #[test]
    fn reports_are_clamped(lambda in 0.0..=1.0f64, c_max in 1.0..50.0f64, avg_frac in 0.0..1.0f64, sigma in 0.01..10.0f64, comm in 0.01..10.0f64) {
        let r = qaoa_round_bound(&inputs(lambda, c_max, avg_frac * c_max, sigma, comm)).unwrap();
        prop_assert_eq!(r.p_lower, r.raw.max(0.0));
        prop_assert_eq!(r.trivial, r.p_lower < 1.0);
        prop_assert!((r.raw - r.numerator_total() / r.denominator).abs() < 1e-12);
        let want = (lambda * c_max - avg_frac * c_max) / (4.0 * PI * comm);
        prop_assert!((r.raw - want).abs() < 1e-9);
    }

    #[test]
    fn objective_bounds_grow_with_lambda(a in 0.0..=1.0f64, b in 0.0..=1.0f64, c_max in 1.0..50.0f64, sigma in 0.01..10.0f64, comm in 0.01..10.0f64) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let at = |l: f64| {
            let i = inputs(l, c_max, c_max / 2.0, sigma, comm);
            [
                qaoa_round_bound(&i).unwrap().raw,
                grover_objective_bound(&i).unwrap().raw,
                tf_objective_bound(&i).unwrap().raw,
            ]
        };
        for (x, y) in at(lo).iter().zip(at(hi)) {
            prop_assert!(*x <= y + 1e-12);
        }
    }

    #[test]
    fn rescaled_endpoint_dominates_equal_weights(h0 in 0.0..5.0f64, dh in -2.0..5.0f64, comm in 0.01..5.0f64, ratio in 1e-3..1e3f64) {
        let end = rescaled_bound(h0, dh, comm).unwrap().raw;
        prop_assert!(end + 1e-12 >= rescaled_at_ratio(h0, dh, comm, ratio));
        prop_assert!(end + 1e-12 >= (h0 + dh) / (4.0 * PI * comm));
        let (scan, _) = rescaled_ratio_scan(h0, dh, comm, 2000);
        prop_assert!(scan <= end + 1e-12);
    }

    #[test]
    fn search_corollaries_are_compositions(lambda in 0.0..=1.0f64, n in 2u32..30, m_frac in 0.0..0.5f64) {
        let nn = 1u64 << n;
        let m = ((m_frac * nn as f64) as u64).max(1);
        let sigma = ((m * (nn - m)) as f64).sqrt() / nn as f64;
        let ov = max_search_overlap(lambda, nn, m);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&ov));
        let g = grover_search_bound(lambda, nn, m).unwrap();
        let via3 = grover_objective_bound(
            &BoundInputs::new(lambda, Mode::APosteriori)
                .with_stats(1.0, m as f64 / nn as f64, sigma, prov())
                .with_overlap_sq(ov.min(1.0)),
        ).unwrap();
        prop_assert!((g.raw - via3.raw).abs() < 1e-7 * (1.0 + g.raw.abs()));
        let o = search_overlap_bound(lambda, nn, m).unwrap();
        let via10 = overlap_bound(ov.min(1.0), 1.0, sigma).unwrap();
        prop_assert!((o.p_lower - via10.p_lower).abs() < 1e-7 * (1.0 + o.p_lower));
    }

    #[test]
    fn grover_search_grows_past_one_half(a in 0.5..=1.0f64, b in 0.5..=1.0f64, n in 2u32..40) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let f = |l: f64| grover_search_bound(l, 1u64 << n, 1).unwrap().raw;
        prop_assert!(f(lo) <= f(hi) + 1e-12);
    }
}
