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

//! Reference circuits, classical reversible gates used as specification
//! targets, and random circuit generators.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;

use super::{Circuit, MultiQubitGate, NamedGate, OneQubitGate};
use crate::numerics::{Scalar, SeededRng};
use crate::state::{QubitSet, StateVector};

fn flip_if(psi: &mut StateVector, condition: impl Fn(usize) -> bool, target: usize) {
    let r = psi.qubits();
    let bit = 1usize << (r - 1 - target);
    psi.apply_permutation(|i| if condition(i) { i ^ bit } else { i });
}

fn bit_of(i: usize, q: usize, r: usize) -> bool {
    i >> (r - 1 - q) & 1 == 1
}

/// `|c, t⟩ ↦ |c, t ⊕ c⟩`.
pub fn apply_cnot(psi: &StateVector, control: usize, target: usize) -> StateVector {
    let r = psi.qubits();
    let mut out = psi.clone();
    flip_if(&mut out, |i| bit_of(i, control, r), target);
    out
}

/// `F_k|c, x₁, …⟩ = |c, c ⊕ x₁, …⟩`.
pub fn apply_fanout(psi: &StateVector, control: usize, targets: &[usize]) -> StateVector {
    targets
        .iter()
        .fold(psi.clone(), |acc, &t| apply_cnot(&acc, control, t))
}

/// `⊕_k|t, x₁, …⟩ = |t ⊕ x₁ ⊕ ⋯, x₁, …⟩`.
pub fn apply_parity_gate(psi: &StateVector, target: usize, sources: &[usize]) -> StateVector {
    let r = psi.qubits();
    let mut out = psi.clone();
    flip_if(
        &mut out,
        |i| sources.iter().filter(|&&s| bit_of(i, s, r)).count() % 2 == 1,
        target,
    );
    out
}

/// The depth-2, 4-qubit circuit computing `⊕₃` into qubit 0.
pub fn parity3_circuit() -> Circuit {
    let mut c = Circuit::new(3, 0, 2).expect("4 qubits fit");
    let set = |qs: &[usize]| qs.iter().copied().collect::<QubitSet>();
    c.set_single(0, 0, OneQubitGate::h()).expect("in range");
    c.set_single(0, 2, OneQubitGate::h()).expect("in range");
    c.add_multi(1, MultiQubitGate::cz(set(&[0, 1])))
        .expect("disjoint");
    c.add_multi(1, MultiQubitGate::cz(set(&[2, 3])))
        .expect("disjoint");
    c.set_single(1, 2, OneQubitGate::h()).expect("in range");
    c.add_multi(2, MultiQubitGate::cz(set(&[0, 2])))
        .expect("disjoint");
    c.set_single(2, 0, OneQubitGate::h()).expect("in range");
    c
}

/// The same map written with CNOTs: `1 → 0`, `3 → 2`, then `2 → 0`.
pub fn parity3_cnot_form(psi: &StateVector) -> StateVector {
    let s = apply_cnot(psi, 1, 0);
    let s = apply_cnot(&s, 3, 2);
    apply_cnot(&s, 2, 0)
}

fn unit(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

/// A Haar-random 2×2 unitary.
pub fn random_one_qubit_gate(rng: &mut SeededRng) -> OneQubitGate {
    let alpha: f64 = rng.random_range(0.0..TAU);
    let beta: f64 = rng.random_range(0.0..TAU);
    let delta: f64 = rng.random_range(0.0..TAU);
    // cos γ uniform on [-1, 1] gives the Haar marginal of the rotation angle.
    let gamma = (1.0 - 2.0 * rng.random::<f64>()).clamp(-1.0, 1.0).acos();
    let (c, s) = ((gamma / 2.0).cos(), (gamma / 2.0).sin());
    let g = unit(alpha);
    let m = [
        g * unit(-(beta + delta) / 2.0) * c,
        -g * unit(-(beta - delta) / 2.0) * s,
        g * unit((beta - delta) / 2.0) * s,
        g * unit((beta + delta) / 2.0) * c,
    ];
    OneQubitGate {
        m: m.map(Scalar::Float),
    }
}

/// A random diagonal or antidiagonal unitary.
pub fn random_semiclassical_gate(rng: &mut SeededRng) -> OneQubitGate {
    let p = Scalar::Float(unit(rng.random_range(0.0..TAU)));
    let q = Scalar::Float(unit(rng.random_range(0.0..TAU)));
    let o = Scalar::zero();
    let m = if rng.random_bool(0.5) {
        [p, o, o, q]
    } else {
        [o, p, q, o]
    };
    OneQubitGate { m }
}

/// Shape and gate mix of a random circuit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RandomCircuitSpec {
    pub inputs: usize,
    pub ancillas: usize,
    pub depth: usize,
    /// Chance that a block of two or more qubits becomes a CZ gate.
    pub cz_probability: f64,
    /// Largest block drawn when partitioning a layer.
    pub max_gate_size: usize,
}

impl RandomCircuitSpec {
    pub fn new(inputs: usize, ancillas: usize, depth: usize) -> Self {
        Self {
            inputs,
            ancillas,
            depth,
            cz_probability: 0.8,
            max_gate_size: 4,
        }
    }
}

/// 1-qubit slots draw the identity, a named gate or a Haar unitary; each
/// multiqubit layer partitions a shuffled register into blocks.
pub fn random_circuit(spec: &RandomCircuitSpec, rng: &mut SeededRng) -> Circuit {
    let mut c = Circuit::new(spec.inputs, spec.ancillas, spec.depth)
        .expect("caller keeps the register small");
    let r = c.qubits();
    for j in 0..=spec.depth {
        for q in 0..r {
            let roll: f64 = rng.random();
            let g = if roll < 0.2 {
                OneQubitGate::identity()
            } else if roll < 0.45 {
                OneQubitGate::named(NamedGate::ALL[rng.random_range(1..NamedGate::ALL.len())])
            } else {
                random_one_qubit_gate(rng)
            };
            c.set_single(j, q, g).expect("in range");
        }
    }
    for l in 1..=spec.depth {
        let mut order: Vec<usize> = (0..r).collect();
        order.shuffle(rng);
        let mut rest = &order[..];
        while !rest.is_empty() {
            let size = rng
                .random_range(1..=spec.max_gate_size.max(1))
                .min(rest.len());
            let (block, tail) = rest.split_at(size);
            rest = tail;
            if size >= 2 && rng.random_bool(spec.cz_probability) {
                c.add_multi(l, MultiQubitGate::cz(block.iter().copied().collect()))
                    .expect("blocks are disjoint");
            }
        }
    }
    c
}

/// A random depth-2 circuit whose target meets no multiqubit gate on layer
/// 2 other than, sometimes, a gate on the target alone.
pub fn target_idle_fixture(inputs: usize, ancillas: usize, rng: &mut SeededRng) -> Circuit {
    let mut c = random_circuit(&RandomCircuitSpec::new(inputs, ancillas, 2), rng);
    let last = std::mem::take(&mut c.multis[1]);
    for g in last {
        let rest = g.qubits().difference(&QubitSet::singleton(0));
        if !rest.is_empty() {
            c.add_multi(2, g.on(rest))
                .expect("subsets of disjoint gates stay disjoint");
        }
    }
    if rng.random_bool(0.5) {
        c.add_multi(2, MultiQubitGate::cz(QubitSet::singleton(0)))
            .expect("target was freed");
    }
    c
}

/// A random depth-2 circuit that copies one input into the target on layer 1
/// and ends the target with a semiclassical gate after a layer-2 CZ.
///
/// The layer-2 target gate touches other qubits unless the random partner
/// set comes out empty.
pub fn pass_through_fixture(inputs: usize, ancillas: usize, rng: &mut SeededRng) -> Circuit {
    let mut c = random_circuit(&RandomCircuitSpec::new(inputs, ancillas, 2), rng);
    let j = rng.random_range(1..=inputs);
    let pair: QubitSet = [0, j].into_iter().collect();
    c.multis[0].retain(|g| g.qubits().is_disjoint(&pair));
    c.add_multi(1, MultiQubitGate::cz(pair))
        .expect("pair was freed");
    c.set_single(0, 0, OneQubitGate::h()).expect("in range");
    c.set_single(0, j, OneQubitGate::identity())
        .expect("in range");
    c.set_single(1, 0, OneQubitGate::h()).expect("in range");
    let partners: QubitSet = (1..c.qubits()).filter(|_| rng.random_bool(0.5)).collect();
    let gate = partners.union(&QubitSet::singleton(0));
    c.multis[1].retain(|g| g.qubits().is_disjoint(&gate));
    c.add_multi(2, MultiQubitGate::cz(gate))
        .expect("gate qubits were freed");
    c.set_single(2, 0, random_semiclassical_gate(rng))
        .expect("in range");
    c
}
