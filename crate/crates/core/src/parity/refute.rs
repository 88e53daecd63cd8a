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

//! Refuters for depth-1 and structurally constrained depth-2 circuits.

use super::certificate::{verify_certificate, CertificateKind, RefutationCertificate};
use super::{kill_parity_state, Operator, ParityError};
use crate::circuit::{
    classify_simplification, computes_parity_on_basis, simulate_through, Circuit, Layer,
    SimplificationOutcome,
};
use crate::numerics::Tolerance;
use crate::state::{tensor, QubitSet, StateVector};

/// The argument a certificate came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tactic {
    /// Some input shares no layer-1 gate with the target.
    Disconnected,
    /// A parity-`b` state on two inputs switches off the target's gate.
    SwitchOffTargetGate,
    /// A layer-1 gate meets three inputs and one of them misses the target's
    /// layer-2 gate.
    ThreeInputsOneUnreached,
    /// A layer-1 gate meets three inputs that all sit in the target's
    /// layer-2 gate; both gates are switched off.
    ThreeInputsBothOff,
    /// The target's layer-1 gate meets two inputs; the layer-2 gate then
    /// either acts alike for both parities or disappears for any third input.
    TargetGateTwoInputs,
    /// A classical input on which the target is not the parity.
    ClassicalCounterexample,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Depth2Outcome {
    Refuted {
        certificate: RefutationCertificate,
        tactic: Tactic,
    },
    NotApplicable,
}

/// An `n`-qubit input register with `block_state` on input labels `block`
/// (ascending) and the other inputs set from the `n`-bit value `bits`.
pub fn input_state(
    n: usize,
    block: &[usize],
    block_state: &StateVector,
    bits: usize,
) -> Result<StateVector, ParityError> {
    let placement: QubitSet = block.iter().map(|&q| q - 1).collect();
    if placement.len() != block_state.qubits() || block.iter().any(|&q| q == 0 || q > n) {
        return Err(ParityError::Shape(format!(
            "block {block:?} does not fit {n} inputs"
        )));
    }
    let rest: Vec<usize> = placement.complement(n).to_vec();
    let rest_bits = rest
        .iter()
        .fold(0usize, |acc, &p| acc << 1 | (bits >> (n - 1 - p) & 1));
    let others = StateVector::basis(rest.len(), rest_bits)?;
    if block.is_empty() {
        return Ok(others);
    }
    if rest.is_empty() {
        return Ok(block_state.clone());
    }
    Ok(tensor(block_state, &others, placement)?)
}

fn check_shape(c: &Circuit, ancilla: &StateVector, depth: usize) -> Result<(), ParityError> {
    if c.depth() != depth {
        return Err(ParityError::Shape(format!(
            "expected depth {depth}, got {}",
            c.depth()
        )));
    }
    if c.inputs() < 2 {
        return Err(ParityError::Shape(format!(
            "need at least 2 inputs, got {}",
            c.inputs()
        )));
    }
    if ancilla.qubits() != c.ancillas() {
        return Err(ParityError::Shape(format!(
            "ancilla has {} qubits, circuit has {} ancillas",
            ancilla.qubits(),
            c.ancillas()
        )));
    }
    Ok(())
}

fn layer_gates(c: &Circuit, j: usize, qubits: &[usize]) -> Operator {
    Operator::tensor(&qubits.iter().map(|&q| *c.single(j, q)).collect::<Vec<_>>())
}

fn certified(
    kind: CertificateKind,
    c: &Circuit,
    ancilla: &StateVector,
    inputs: Vec<(StateVector, bool)>,
    tol: &Tolerance,
) -> Result<RefutationCertificate, ParityError> {
    let cert = RefutationCertificate::record(kind, c, ancilla, inputs)?;
    verify_certificate(&cert, tol).map_err(|e| ParityError::LemmaViolation(e.to_string()))?;
    Ok(cert)
}

fn flip_pair(
    c: &Circuit,
    qubit: usize,
    base: StateVector,
    base_parity: bool,
) -> Vec<(StateVector, bool)> {
    let bit = 1usize << (c.inputs() - qubit);
    let mut flipped = base.clone();
    flipped.apply_permutation(|i| i ^ bit);
    vec![(base, base_parity), (flipped, !base_parity)]
}

/// Inputs of both parities on `pair`, each switching off every gate that
/// contains `pair` right after `units`; other inputs are `|0⟩`.
fn killer_inputs(
    c: &Circuit,
    pair: &[usize],
    units: &[Operator],
    tol: &Tolerance,
) -> Result<Vec<(StateVector, bool)>, ParityError> {
    [false, true]
        .into_iter()
        .map(|b| {
            let psi = kill_parity_state(pair.len(), units, b, tol)?;
            Ok((input_state(c.inputs(), pair, &psi, 0)?, b))
        })
        .collect()
}

/// A verified certificate that the depth-1 circuit `c` with ancilla state
/// `ancilla` does not weakly compute parity.
pub fn refute_depth1(
    c: &Circuit,
    ancilla: &StateVector,
    tol: &Tolerance,
) -> Result<RefutationCertificate, ParityError> {
    check_shape(c, ancilla, 1)?;
    let t = c
        .gate_at(1, 0)
        .map_or(QubitSet::singleton(0), |g| g.qubits());
    if let Some(j) = (1..=c.inputs()).find(|&j| !t.contains(j)) {
        let base = StateVector::zeros(c.inputs())?;
        return certified(
            CertificateKind::TargetIndependence { qubit: j },
            c,
            ancilla,
            flip_pair(c, j, base, false),
            tol,
        );
    }
    let inputs = killer_inputs(c, &[1, 2], &[layer_gates(c, 0, &[1, 2])], tol)?;
    certified(CertificateKind::ParityMismatch, c, ancilla, inputs, tol)
}

/// Tries the structural depth-2 tactics in order; every returned
/// certificate has been re-verified by simulation.
pub fn refute_depth2_structural(
    c: &Circuit,
    ancilla: &StateVector,
    tol: &Tolerance,
) -> Result<Depth2Outcome, ParityError> {
    check_shape(c, ancilla, 2)?;
    let inputs = c.input_qubits();
    let s = c.gate_at(2, 0).map_or(QubitSet::EMPTY, |g| g.qubits());
    for g in c.multi_layer(1) {
        let touched = g.qubits().intersection(&inputs).to_vec();
        if touched.len() < 3 {
            continue;
        }
        let triple = [touched[0], touched[1], touched[2]];
        if let Some(&lone) = triple.iter().find(|q| !s.contains(**q)) {
            let pair: Vec<usize> = triple.iter().copied().filter(|&q| q != lone).collect();
            let psi = kill_parity_state(2, &[layer_gates(c, 0, &pair)], false, tol)?;
            let base = input_state(c.inputs(), &pair, &psi, 0)?;
            let certificate = certified(
                CertificateKind::TargetIndependence { qubit: lone },
                c,
                ancilla,
                flip_pair(c, lone, base, false),
                tol,
            )?;
            return Ok(Depth2Outcome::Refuted {
                certificate,
                tactic: Tactic::ThreeInputsOneUnreached,
            });
        }
        let u1 = layer_gates(c, 0, &triple);
        let u2 = layer_gates(c, 1, &triple).product(&u1);
        let states = killer_inputs(c, &triple, &[u1, u2], tol)?;
        let certificate = certified(CertificateKind::ParityMismatch, c, ancilla, states, tol)?;
        return Ok(Depth2Outcome::Refuted {
            certificate,
            tactic: Tactic::ThreeInputsBothOff,
        });
    }
    let t = c.gate_at(1, 0).map_or(QubitSet::EMPTY, |g| g.qubits());
    let touched = t.intersection(&inputs).to_vec();
    if touched.len() < 2 {
        return Ok(Depth2Outcome::NotApplicable);
    }
    let pair = [touched[0], touched[1]];
    let states = killer_inputs(c, &pair, &[layer_gates(c, 0, &pair)], tol)?;
    // Either the layer-2 gate acts alike on both parities...
    let cert =
        RefutationCertificate::record(CertificateKind::ParityMismatch, c, ancilla, states.clone())?;
    if verify_certificate(&cert, tol).is_ok() {
        return Ok(Depth2Outcome::Refuted {
            certificate: cert,
            tactic: Tactic::TargetGateTwoInputs,
        });
    }
    // ...or it disappears for one parity, and then for every state of the
    // remaining qubits, so a third input cannot reach the target.
    for (x, b) in &states {
        let phi = simulate_through(c, &full_state(x, ancilla)?, Layer::single(1))?;
        if classify_simplification(s, &phi, tol) != SimplificationOutcome::Disappears {
            continue;
        }
        for j in (1..=c.inputs()).filter(|j| !pair.contains(j)) {
            let cert = RefutationCertificate::record(
                CertificateKind::TargetIndependence { qubit: j },
                c,
                ancilla,
                flip_pair(c, j, x.clone(), *b),
            )?;
            if verify_certificate(&cert, tol).is_ok() {
                return Ok(Depth2Outcome::Refuted {
                    certificate: cert,
                    tactic: Tactic::TargetGateTwoInputs,
                });
            }
        }
    }
    // Both branches fail only when the circuit already errs on a classical input.
    let check = computes_parity_on_basis(c, ancilla, tol)?;
    if let Some(x) = check.counterexample {
        let input = StateVector::basis(c.inputs(), x)?;
        let certificate = certified(
            CertificateKind::WrongOutput,
            c,
            ancilla,
            vec![(input, x.count_ones() % 2 == 1)],
            tol,
        )?;
        return Ok(Depth2Outcome::Refuted {
            certificate,
            tactic: Tactic::ClassicalCounterexample,
        });
    }
    Ok(Depth2Outcome::NotApplicable)
}

fn full_state(inputs: &StateVector, ancilla: &StateVector) -> Result<StateVector, ParityError> {
    let head = tensor(&StateVector::zeros(1)?, inputs, QubitSet::singleton(0))?;
    if ancilla.qubits() == 0 {
        return Ok(head.scale(ancilla.amp(0)));
    }
    Ok(tensor(&head, ancilla, QubitSet::full(head.qubits()))?)
}
