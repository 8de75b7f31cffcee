//! Invariants of the correlation and entanglement measures.

use fixpur::matrixcore::{haar_unitary, random_density, DensityMatrix};
use fixpur::measures::*;
use fixpur::rng::RngStream;
use fixpur::sampler::{sample_density, SampleConfig};
use proptest::prelude::*;

const TOL: f64 = 1e-9;

/// Two-qubit state: either unconstrained (Hilbert–Schmidt) or at a fixed purity.
fn two_qubit_state() -> impl Strategy<Value = DensityMatrix> {
    prop_oneof![
        any::<u64>().prop_map(|s| random_density(4, &mut RngStream::new(s, 0)).unwrap()),
        (any::<u64>(), 0.2501f64..1.0).prop_map(|(s, mu)| {
            let mut cfg = SampleConfig::new(4, mu, 1, s);
            cfg.emit_matrix = true;
            sample_density(&cfg).unwrap().states().unwrap().remove(0)
        }),
    ]
}

fn local_unitary(seed: u64) -> fixpur::matrixcore::ComplexMatrix {
    let mut rng = RngStream::new(seed, 1);
    let ua = haar_unitary(2, &mut rng).unwrap();
    let ub = haar_unitary(2, &mut rng).unwrap();
    ua.kron(&ub)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn concurrence_is_bounded_and_agrees_with_ppt(rho in two_qubit_state()) {
        let split = BipartiteSplit::qubits();
        let c = concurrence(&rho).unwrap();
        let neg = negativity(&rho, split).unwrap();
        prop_assert!((-TOL..=1.0 + TOL).contains(&c));
        prop_assert!((-TOL..=0.5 + TOL).contains(&neg));
        if c > 1e-6 { prop_assert!(neg > 0.0, "C={c} but N={neg}"); }
        if neg > 1e-6 { prop_assert!(c > 0.0, "N={neg} but C={c}"); }
        let ln = log_negativity(&rho, split).unwrap();
        prop_assert!((ln - (1.0 + 2.0 * neg).log2()).abs() < TOL);
    }

    #[test]
    fn local_unitaries_leave_entanglement_and_qmi_unchanged(rho in two_qubit_state(), seed in any::<u64>()) {
        let split = BipartiteSplit::qubits();
        let sigma = rho.conjugate(&local_unitary(seed)).unwrap();
        prop_assert!((concurrence(&rho).unwrap() - concurrence(&sigma).unwrap()).abs() < 1e-8);
        prop_assert!((negativity(&rho, split).unwrap() - negativity(&sigma, split).unwrap()).abs() < 1e-8);
        prop_assert!((qmi(&rho, split).unwrap() - qmi(&sigma, split).unwrap()).abs() < 1e-8);
        let pa = |r: &DensityMatrix| partial_trace(r, split, Keep::A).unwrap().purity();
        prop_assert!((pa(&rho) - pa(&sigma)).abs() < 1e-10);
    }

    #[test]
    fn classical_correlations_stay_inside_the_triangle(rho in two_qubit_state()) {
        let split = BipartiteSplit::qubits();
        let x = cmi_zx(&rho, split).unwrap();
        let y = qmi(&rho, split).unwrap();
        prop_assert!(x >= -TOL);
        prop_assert!(y >= x - TOL, "QMI {y} < CMI_ZX {x}");
        prop_assert!(y <= 2.0 + TOL);
        prop_assert!(y <= max_qmi_curve(rho.purity()).unwrap() + 1e-8);
    }

    #[test]
    fn entropy_respects_the_purity_bound(seed in any::<u64>(), n in 2usize..=6) {
        let rho = random_density(n, &mut RngStream::new(seed, 0)).unwrap();
        let s = vn_entropy(&rho);
        prop_assert!(s >= s_min_bound(rho.purity(), n).unwrap() - TOL);
        prop_assert!(s <= (n as f64).log2() + TOL);
    }

    #[test]
    fn werner_numerics_match_closed_forms(d in 2usize..=3, p in 0.0f64..=1.0) {
        let spec = WernerSpec::new(d, p).unwrap();
        let rho = werner_state(spec).unwrap();
        let split = BipartiteSplit::new(d, d).unwrap();
        prop_assert!((negativity(&rho, split).unwrap() - werner_negativity(spec).unwrap()).abs() < 1e-10);
        prop_assert!((log_negativity(&rho, split).unwrap() - werner_ln(spec).unwrap()).abs() < 1e-10);
        let mu = werner_purity(spec).unwrap();
        prop_assert!((rho.purity() - mu).abs() < 1e-12);
        prop_assert!((werner_p_of_mu(d, mu).unwrap() - p).abs() < 1e-9);
        let separable = mu <= werner_mu_star(d).unwrap();
        prop_assert_eq!(werner_negativity(spec).unwrap() == 0.0, separable);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn discord_splits_the_mutual_information(rho in two_qubit_state()) {
        let split = BipartiteSplit::qubits();
        let d = discord_and_classical(&rho, split).unwrap();
        prop_assert!(d.discord >= -1e-8);
        prop_assert!(d.classical >= -1e-8);
        prop_assert!((d.discord + d.classical - d.qmi).abs() < 1e-9);
        prop_assert!((d.qmi - qmi(&rho, split).unwrap()).abs() < 1e-9);
    }
}

#[test]
fn product_states_carry_no_correlations() {
    let mut rng = RngStream::new(8, 0);
    let a = random_density(2, &mut rng).unwrap();
    let b = random_density(3, &mut rng).unwrap();
    let rho = a.kron(&b);
    let split = BipartiteSplit::new(2, 3).unwrap();
    assert!(qmi(&rho, split).unwrap().abs() < 1e-10);
    assert!(negativity(&rho, split).unwrap().abs() < 1e-10);
    let ra = partial_trace(&rho, split, Keep::A).unwrap();
    let rb = partial_trace(&rho, split, Keep::B).unwrap();
    assert!(ra.matrix().max_abs_diff(a.matrix()) < 1e-14);
    assert!(rb.matrix().max_abs_diff(b.matrix()) < 1e-14);
}
