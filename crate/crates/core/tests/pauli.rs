mod common;

use common::*;
use proptest::prelude::*;
use qaoa_bounds::pauli::{self, commutator, multiply, power_norm, PauliString, PauliSum, PowerConfig};
use qaoa_bounds::problems::FeasibleSet;
use qaoa_bounds::sim::StateVector;
use qaoa_bounds::{Complex64, Limits};

fn label_strategy(n: usize) -> impl Strategy<Value = String> {
    proptest::collection::vec(prop_oneof![Just('I'), Just('X'), Just('Y'), Just('Z')], n)
        .prop_map(|v| v.into_iter().collect())
}

fn sum_strategy(n: usize) -> impl Strategy<Value = Vec<(String, f64, f64)>> {
    proptest::collection::vec((label_strategy(n), -2.0..2.0f64, -2.0..2.0f64), 1..5)
}

fn build(n: usize, terms: &[(String, f64, f64)]) -> PauliSum {
    PauliSum::from_strings(
        n,
        terms
            .iter()
            .map(|(l, re, im)| PauliString::from_label(l, Complex64::new(*re, *im)).unwrap()),
    )
    .unwrap()
}

fn oracle(terms: &[(String, f64, f64)]) -> CMat {
    let d = 1 << terms[0].0.len();
    terms
        .iter()
        .fold(CMat::zeros(d, d), |acc, (l, re, im)| acc + label_matrix(l) * c(*re, *im))
}

fn close(a: &CMat, b: &CMat) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[test]
fn single_qubit_products() {
    let x = PauliString::from_label("X", c(1.0, 0.0)).unwrap();
    let y = PauliString::from_label("Y", c(1.0, 0.0)).unwrap();
    let z = PauliString::from_label("Z", c(1.0, 0.0)).unwrap();
    let xz = multiply(&x, &z).unwrap();
    assert_eq!(xz.label(), "Y");
    assert_eq!(xz.coeff, c(0.0, -1.0));
    let xy = multiply(&x, &y).unwrap();
    assert_eq!(xy.label(), "Z");
    assert_eq!(xy.coeff, c(0.0, 1.0));
    let yy = multiply(&y, &y).unwrap();
    assert!(yy.is_identity());
    assert_eq!(yy.coeff, c(1.0, 0.0));
}

#[test]
fn transverse_field_matches_definition() {
    let lim = Limits::default();
    let d = PauliSum::transverse_field(3).to_dense(&lim).unwrap();
    assert!(close(&d.matrix, &tf_mixer(3)) < 1e-14);
}

#[test]
fn qubit_count_mismatch_is_an_error() {
    let a = PauliSum::transverse_field(2);
    let b = PauliSum::transverse_field(3);
    assert!(a.mul(&b).is_err());
    assert!(commutator(&a, &b).is_err());
}

#[test]
fn power_iteration_agrees_with_dense() {
    let lim = Limits::default();
    let h = PauliSum::from_strings(
        4,
        ["ZZII", "IZZI", "IIZZ", "ZIIZ"]
            .iter()
            .map(|l| PauliString::from_label(l, c(0.5, 0.0)).unwrap()),
    )
    .unwrap();
    let comm = commutator(&h, &PauliSum::transverse_field(4)).unwrap();
    let dense = comm.to_dense(&lim).unwrap().spectral_norm().unwrap();
    let iter = power_norm(&comm.to_dense(&lim).unwrap(), &PowerConfig::default()).unwrap();
    assert!((dense - iter.value).abs() <= 1e-6 * dense, "{dense} vs {}", iter.value);
    let small = Limits { dense_qubits: 2, ..lim };
    let routed = pauli::spectral_norm(&comm, &small).unwrap();
    assert!((routed.value - dense).abs() <= 1e-6 * dense);
}

#[test]
fn expectation_of_z_on_basis_states() {
    let f = FeasibleSet::full(3).unwrap();
    let s = StateVector::basis(&f, 0b010).unwrap();
    let z1 = PauliSum::z_product(3, 0b010, 1.0).unwrap();
    let z0 = PauliSum::z_product(3, 0b001, 1.0).unwrap();
    assert_eq!(pauli::expectation(&z1, &s).unwrap(), -1.0);
    assert_eq!(pauli::expectation(&z0, &s).unwrap(), 1.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dense_form_matches_kronecker_oracle(terms in sum_strategy(3)) {
        let lim = Limits::default();
        let d = build(3, &terms).to_dense(&lim).unwrap();
        prop_assert!(close(&d.matrix, &oracle(&terms)) < 1e-12);
    }

    #[test]
    fn product_matches_matrix_product(a in sum_strategy(3), b in sum_strategy(3)) {
        let lim = Limits::default();
        let p = build(3, &a).mul(&build(3, &b)).unwrap().to_dense(&lim).unwrap();
        prop_assert!(close(&p.matrix, &(oracle(&a) * oracle(&b))) < 1e-10);
    }

    #[test]
    fn commutator_matches_matrix_commutator(a in sum_strategy(3), b in sum_strategy(3)) {
        let lim = Limits::default();
        let k = commutator(&build(3, &a), &build(3, &b)).unwrap().to_dense(&lim).unwrap();
        prop_assert!(close(&k.matrix, &common::commutator(&oracle(&a), &oracle(&b))) < 1e-10);
    }

    #[test]
    fn commutator_is_antisymmetric(a in sum_strategy(4), b in sum_strategy(4)) {
        let (a, b) = (build(4, &a), build(4, &b));
        let ab = commutator(&a, &b).unwrap();
        let ba = commutator(&b, &a).unwrap();
        let total = ab.add(&ba).unwrap();
        prop_assert!(total.strings().all(|s| s.coeff.norm() < 1e-12));
    }

    #[test]
    fn product_is_associative(a in label_strategy(5), b in label_strategy(5), cc in label_strategy(5)) {
        let one = c(1.0, 0.0);
        let (a, b, cc) = (
            PauliString::from_label(&a, one).unwrap(),
            PauliString::from_label(&b, one).unwrap(),
            PauliString::from_label(&cc, one).unwrap(),
        );
        let left = multiply(&multiply(&a, &b).unwrap(), &cc).unwrap();
        let right = multiply(&a, &multiply(&b, &cc).unwrap()).unwrap();
        prop_assert_eq!(left.label(), right.label());
        prop_assert!((left.coeff - right.coeff).norm() < 1e-15);
    }

    #[test]
    fn commutation_test_agrees_with_product_order(a in label_strategy(6), b in label_strategy(6)) {
        let one = c(1.0, 0.0);
        let (a, b) = (PauliString::from_label(&a, one).unwrap(), PauliString::from_label(&b, one).unwrap());
        let ab = multiply(&a, &b).unwrap();
        let ba = multiply(&b, &a).unwrap();
        let same = (ab.coeff - ba.coeff).norm() < 1e-15;
        prop_assert_eq!(a.commutes_with(&b), same);
    }

    #[test]
    fn hermitian_sums_have_hermitian_adjoint(terms in sum_strategy(3)) {
        let s = build(3, &terms);
        let h = s.add(&s.adjoint()).unwrap();
        prop_assert!(h.is_hermitian());
        let k = commutator(&h, &PauliSum::transverse_field(3)).unwrap();
        prop_assert!(k.is_anti_hermitian());
    }

    #[test]
    fn norm_is_bounded_by_coefficient_l1(terms in sum_strategy(3)) {
        let lim = Limits::default();
        let s = build(3, &terms);
        let h = s.add(&s.adjoint()).unwrap();
        let n = pauli::spectral_norm(&h, &lim).unwrap().value;
        prop_assert!(n <= h.coefficient_l1() + 1e-9);
        prop_assert!((n - op_norm(&oracle_of(&h))).abs() < 1e-8);
    }
}

fn oracle_of(s: &PauliSum) -> CMat {
    let terms: Vec<(String, f64, f64)> = s.strings().map(|p| (p.label(), p.coeff.re, p.coeff.im)).collect();
    if terms.is_empty() {
        let d = 1 << s.n();
        return CMat::zeros(d, d);
    }
    // labels carry the i^{|x&z|} phase only through Y, which the oracle
    // reproduces from the Pauli matrices
    oracle(&terms)
}
