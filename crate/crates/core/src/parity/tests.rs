// Copyright 2026 The qaclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use super::*;
use crate::circuit::{
    classify_simplification, parity3_circuit, random_circuit, Circuit, MultiQubitGate,
    RandomCircuitSpec, SimplificationOutcome,
};
use crate::numerics::seeded_rng;
use crate::state::{random_state, tensor, QubitSet};
use proptest::prelude::*;
use rand::Rng;

fn tol() -> Tolerance {
    Tolerance::default()
}

fn set(labels: &[usize]) -> QubitSet {
    labels.iter().copied().collect()
}

fn none() -> StateVector {
    StateVector::zeros(0).unwrap()
}

#[test]
fn parity_basis_examples() {
    assert_eq!(parity_basis(2, false), ["00", "11"]);
    assert_eq!(parity_basis(2, true), ["01", "10"]);
    for r in 1..=10 {
        for b in [false, true] {
            let basis = parity_basis(r, b);
            assert_eq!(basis.len(), 1 << (r - 1));
            assert!(basis.windows(2).all(|w| w[0] < w[1]));
            assert!(basis.iter().all(|s| (s.matches('1').count() % 2 == 1) == b));
        }
    }
}

#[test]
fn pure_parity_examples() {
    let t = tol();
    let zz = StateVector::from_bitstring("00").unwrap();
    assert!(has_pure_parity(&zz, false, &t) && !has_pure_parity(&zz, true, &t));
    let h = Scalar::frac_1_sqrt_2();
    let bell = StateVector::new(2, vec![h, Scalar::zero(), Scalar::zero(), h]).unwrap();
    assert!(has_pure_parity(&bell, false, &t));
    let plus_zero = tensor(
        &StateVector::plus(),
        &StateVector::from_bitstring("0").unwrap(),
        set(&[0]),
    )
    .unwrap();
    assert!(!has_pure_parity(&plus_zero, false, &t) && !has_pure_parity(&plus_zero, true, &t));
    assert!((parity_residual(&plus_zero, false) - 0.5f64.sqrt()).abs() < 1e-15);
    assert!((parity_residual(&plus_zero, true) - 0.5f64.sqrt()).abs() < 1e-15);
}

#[test]
fn operator_tensor_matches_gates() {
    let hh = Operator::tensor(&[OneQubitGate::h(), OneQubitGate::x()]);
    let psi = StateVector::from_bitstring("00").unwrap();
    let out = hh.apply(&psi).unwrap();
    // H|0⟩ ⊗ X|0⟩ = (|01⟩ + |11⟩)/√2.
    let want = [0.0, 0.5f64.sqrt(), 0.0, 0.5f64.sqrt()];
    for (a, w) in out.to_complex().iter().zip(want) {
        assert!((a - w).norm() < 1e-15);
    }
    let mut rng = seeded_rng(1);
    let u = Operator::random(3, &mut rng);
    assert!(Operator::new(3, u.data().to_vec(), &tol()).is_ok());
    let mut bad = u.data().to_vec();
    bad[0] += 0.1;
    assert!(matches!(
        Operator::new(3, bad, &tol()),
        Err(ParityError::NonUnitary(_))
    ));
}

#[test]
fn kill_parity_examples() {
    let t = tol();
    let psi = kill_parity_state(2, &[Operator::identity(2)], false, &t).unwrap();
    assert!(psi.distance(&StateVector::from_bitstring("00").unwrap().to_float()) < 1e-15);
    let hh = Operator::tensor(&[OneQubitGate::h(), OneQubitGate::h()]);
    let psi = kill_parity_state(2, std::slice::from_ref(&hh), true, &t).unwrap();
    let h = 0.5f64.sqrt();
    let want =
        StateVector::from_complex(2, &[0.0.into(), h.into(), (-h).into(), 0.0.into()]).unwrap();
    assert!(psi.distance_up_to_phase(&want) < 1e-15);
    assert!(kill_residual(&[hh], &psi) < 1e-15);
}

#[test]
fn unitaries_file_round_trip() {
    let text = "# two constraints\nqubits 2\nunitary\ntensor H X\nunitary\nrow 1 0 0 0 0 0 0 0\nrow 0 0 0 1 0 0 0 0\nrow 0 0 0 0 1 0 0 0\nrow 0 0 0 0 0 0 -1 0\n";
    let (r, units) = parse_unitaries(text).unwrap();
    assert_eq!((r, units.len()), (2, 2));
    assert_eq!(
        units[0],
        Operator::tensor(&[OneQubitGate::h(), OneQubitGate::x()])
    );
    assert_eq!(units[1].entry(1, 1), Complex64::new(0.0, 1.0));
    assert_eq!(units[1].entry(3, 3), Complex64::new(-1.0, 0.0));
    let mut rng = seeded_rng(31);
    let random: Vec<Operator> = (0..3).map(|_| Operator::random(3, &mut rng)).collect();
    let (r, back) = parse_unitaries(&format_unitaries(3, &random)).unwrap();
    assert_eq!(r, 3);
    assert_eq!(back, random);
}

#[test]
fn malformed_unitaries_are_rejected() {
    let cases = [
        ("unitary\n", 1),
        ("qubits 1\nrow 1 0 0 0\n", 2),
        ("qubits 1\nunitary\ntensor H H\n", 3),
        ("qubits 1\nunitary\ntensor Q\n", 3),
        ("qubits 1\nunitary\nrow 1 0 0 0\n", 3),
        ("qubits 1\nunitary\nrow 1 0 1 0\nrow 0 0 1 0\n", 3),
        ("qubits 1\nunitary\nunitary\ntensor H\n", 3),
        ("qubits 1\nqubits 1\n", 2),
        ("qubits 1\nbogus\n", 2),
        ("qubits 1\nunitary\nrow 1 0 x 0\n", 3),
    ];
    for (text, line) in cases {
        match parse_unitaries(text) {
            Err(ParityError::UnitaryParse { line: got, .. }) => assert_eq!(got, line, "{text:?}"),
            other => panic!("{text:?}: {other:?}"),
        }
    }
}

#[test]
fn kill_parity_rejects_too_many_constraints() {
    let t = tol();
    let units = vec![Operator::identity(2); 2];
    assert_eq!(
        kill_parity_state(2, &units, false, &t),
        Err(ParityError::TooManyConstraints { k: 2, limit: 2 })
    );
    let mut rng = seeded_rng(2);
    let units: Vec<Operator> = (0..8).map(|_| Operator::random(4, &mut rng)).collect();
    assert!(matches!(
        kill_parity_state(4, &units, true, &t),
        Err(ParityError::TooManyConstraints { k: 8, limit: 8 })
    ));
    assert!(matches!(
        kill_parity_state(3, &units[..1], true, &t),
        Err(ParityError::OperatorSize {
            expected: 3,
            got: 4
        })
    ));
}

#[test]
fn kill_parity_random_r4_k7() {
    let t = tol();
    let mut rng = seeded_rng(3);
    let units: Vec<Operator> = (0..7).map(|_| Operator::random(4, &mut rng)).collect();
    for b in [false, true] {
        let psi = kill_parity_state(4, &units, b, &t).unwrap();
        assert!(kill_residual(&units, &psi) <= 1e-10);
        assert!(parity_residual(&psi, b) <= 1e-10);
        assert!((psi.norm() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn killer_states_switch_off_enclosing_gates() {
    let t = tol();
    let mut rng = seeded_rng(4);
    for _ in 0..100 {
        let r = rng.random_range(1..=3);
        let k = rng.random_range(0..1usize << (r - 1));
        let units: Vec<Operator> = (0..k).map(|_| Operator::random(r, &mut rng)).collect();
        let b = rng.random_bool(0.5);
        let psi = kill_parity_state(r, &units, b, &t).unwrap();
        for u in &units {
            let moved = u.apply(&psi).unwrap();
            for _ in 0..5 {
                let extra = rng.random_range(1..=3);
                let sigma = random_state(extra, &mut rng).unwrap();
                let whole = tensor(&moved, &sigma, QubitSet::full(r)).unwrap();
                let s = QubitSet::full(r)
                    .union(&(r..r + extra).filter(|_| rng.random_bool(0.5)).collect());
                assert_eq!(
                    classify_simplification(s, &whole, &t),
                    SimplificationOutcome::Disappears
                );
            }
        }
    }
}

fn dressed(n: usize, m: usize, depth: usize, gate: OneQubitGate) -> Circuit {
    let mut c = Circuit::new(n, m, depth).unwrap();
    for j in 0..=depth {
        for q in 0..c.qubits() {
            c.set_single(j, q, gate).unwrap();
        }
    }
    c
}

#[test]
fn depth1_switch_off_example() {
    let t = tol();
    let mut c = dressed(2, 0, 1, OneQubitGate::h());
    c.add_multi(1, MultiQubitGate::cz(set(&[0, 1, 2]))).unwrap();
    let cert = refute_depth1(&c, &none(), &t).unwrap();
    assert_eq!(cert.kind, CertificateKind::ParityMismatch);
    assert_eq!(cert.parities, [false, true]);
    let gap = cert.targets[0]
        .iter()
        .zip(&cert.targets[1])
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    assert!(gap < 1e-12);
    verify_certificate(&cert, &t).unwrap();
}

#[test]
fn depth1_topology_example() {
    let t = tol();
    let mut c = dressed(2, 0, 1, OneQubitGate::h());
    c.add_multi(1, MultiQubitGate::cz(set(&[0, 1]))).unwrap();
    let cert = refute_depth1(&c, &none(), &t).unwrap();
    assert_eq!(cert.kind, CertificateKind::TargetIndependence { qubit: 2 });
    verify_certificate(&cert, &t).unwrap();
}

#[test]
fn depth1_random_circuits() {
    let t = tol();
    let mut rng = seeded_rng(5);
    for _ in 0..100 {
        let n = rng.random_range(2..=3);
        let m = rng.random_range(0..=2);
        let mut spec = RandomCircuitSpec::new(n, m, 1);
        spec.max_gate_size = n + m + 1;
        let c = random_circuit(&spec, &mut rng);
        let anc = random_state(m, &mut rng).unwrap();
        let cert = refute_depth1(&c, &anc, &t).unwrap();
        verify_certificate(&cert, &t).unwrap();
        let doc = cert.to_document();
        let back = parse_certificate(&doc).unwrap();
        verify_certificate(&back, &t).unwrap();
        assert_eq!(back.to_document(), doc);
    }
}

#[test]
fn depth1_shape_errors() {
    let t = tol();
    assert!(matches!(
        refute_depth1(&parity3_circuit(), &none(), &t),
        Err(ParityError::Shape(_))
    ));
    let c = Circuit::new(1, 0, 1).unwrap();
    assert!(matches!(
        refute_depth1(&c, &none(), &t),
        Err(ParityError::Shape(_))
    ));
    let c = Circuit::new(2, 1, 1).unwrap();
    assert!(matches!(
        refute_depth1(&c, &none(), &t),
        Err(ParityError::Shape(_))
    ));
}

#[test]
fn depth2_three_input_case1() {
    let t = tol();
    let mut c = dressed(3, 0, 2, OneQubitGate::h());
    c.add_multi(1, MultiQubitGate::cz(set(&[1, 2, 3]))).unwrap();
    c.add_multi(2, MultiQubitGate::cz(set(&[0, 1, 2]))).unwrap();
    let Depth2Outcome::Refuted {
        certificate,
        tactic,
    } = refute_depth2_structural(&c, &none(), &t).unwrap()
    else {
        panic!("expected a certificate");
    };
    assert_eq!(tactic, Tactic::ThreeInputsOneUnreached);
    assert_eq!(
        certificate.kind,
        CertificateKind::TargetIndependence { qubit: 3 }
    );
}

#[test]
fn depth2_three_input_case2() {
    let t = tol();
    let mut rng = seeded_rng(6);
    let mut c = random_circuit(
        &RandomCircuitSpec {
            cz_probability: 0.0,
            ..RandomCircuitSpec::new(4, 1, 2)
        },
        &mut rng,
    );
    c.add_multi(1, MultiQubitGate::cz(set(&[1, 2, 3, 5])))
        .unwrap();
    c.add_multi(2, MultiQubitGate::cz(set(&[0, 1, 2, 3])))
        .unwrap();
    let anc = random_state(1, &mut rng).unwrap();
    let Depth2Outcome::Refuted {
        certificate,
        tactic,
    } = refute_depth2_structural(&c, &anc, &t).unwrap()
    else {
        panic!("expected a certificate");
    };
    assert_eq!(tactic, Tactic::ThreeInputsBothOff);
    assert_eq!(certificate.kind, CertificateKind::ParityMismatch);
}

#[test]
fn depth2_target_gate_two_inputs() {
    let t = tol();
    let mut rng = seeded_rng(7);
    for _ in 0..50 {
        let n = rng.random_range(3..=4);
        let mut c = random_circuit(
            &RandomCircuitSpec {
                cz_probability: 0.0,
                ..RandomCircuitSpec::new(n, 1, 2)
            },
            &mut rng,
        );
        c.add_multi(1, MultiQubitGate::cz(set(&[0, 1, 2]))).unwrap();
        let s: QubitSet = (1..c.qubits())
            .filter(|_| rng.random_bool(0.5))
            .chain([0])
            .collect();
        c.add_multi(2, MultiQubitGate::cz(s)).unwrap();
        let anc = random_state(1, &mut rng).unwrap();
        match refute_depth2_structural(&c, &anc, &t).unwrap() {
            Depth2Outcome::Refuted {
                certificate,
                tactic,
            } => {
                assert!(matches!(
                    tactic,
                    Tactic::TargetGateTwoInputs | Tactic::ClassicalCounterexample
                ));
                verify_certificate(&certificate, &t).unwrap();
            }
            Depth2Outcome::NotApplicable => panic!("tactic should apply"),
        }
    }
}

#[test]
fn parity3_is_not_applicable() {
    assert_eq!(
        refute_depth2_structural(&parity3_circuit(), &none(), &tol()).unwrap(),
        Depth2Outcome::NotApplicable
    );
}

#[test]
fn tampered_certificates_are_rejected() {
    let t = tol();
    let mut c = dressed(2, 0, 1, OneQubitGate::h());
    c.add_multi(1, MultiQubitGate::cz(set(&[0, 1, 2]))).unwrap();
    let cert = refute_depth1(&c, &none(), &t).unwrap();
    let mut wrong_parity = cert.clone();
    wrong_parity.parities = vec![true, true];
    assert!(matches!(
        verify_certificate(&wrong_parity, &t),
        Err(ParityError::Rejected(_))
    ));
    let mut forged = cert.clone();
    forged.targets[1][0] += Complex64::new(1e-3, 0.0);
    assert!(verify_certificate(&forged, &t).is_err());
    let mut other_circuit = cert.clone();
    other_circuit.circuit = parity3_circuit().delete_layer(2).unwrap();
    assert!(verify_certificate(&other_circuit, &t).is_err());
    // A circuit that does compute parity admits no mismatch certificate.
    let mut honest = cert;
    honest.circuit = parity3_circuit();
    honest.inputs = vec![
        StateVector::from_bitstring("000").unwrap(),
        StateVector::from_bitstring("100").unwrap(),
    ];
    assert!(verify_certificate(&honest, &t).is_err());
    assert!(parse_certificate("kind=unknown\n").is_err());
    assert!(parse_certificate("no equals sign\n").is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn kill_parity_constraints_hold(seed in any::<u64>(), r in 1usize..=5, b in any::<bool>(), frac in 0.0f64..1.0) {
        let mut rng = seeded_rng(seed);
        let limit = 1usize << (r - 1);
        let k = ((limit as f64) * frac) as usize;
        let units: Vec<Operator> = (0..k).map(|_| Operator::random(r, &mut rng)).collect();
        let psi = kill_parity_state(r, &units, b, &tol()).unwrap();
        prop_assert!(kill_residual(&units, &psi) <= 1e-10);
        prop_assert!(parity_residual(&psi, b) <= 1e-10);
        prop_assert!((psi.norm() - 1.0).abs() <= 1e-12);
    }
}
