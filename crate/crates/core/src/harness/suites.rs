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

//! One check per suite instance.

use std::collections::BTreeSet;

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;

use super::{Backend, Suite, SuiteConfig, Violation};
use crate::circuit::{
    apply_gate, classify_simplification, depth_reduce, parity3_circuit, parity3_cnot_form,
    pass_through_fixture, random_circuit, random_one_qubit_gate, reduction_case, serialize_circuit,
    simulate, simulate_through, target_idle_fixture, Circuit, Gate, Layer, MultiQubitGate,
    NamedGate, OneQubitGate, RandomCircuitSpec, SimplificationOutcome,
};
use crate::numerics::{random_phase, seeded_rng, Scalar, SeededRng, Tolerance};
use crate::parity::{
    kill_parity_state, kill_residual, parity_residual, parse_certificate, refute_depth1,
    verify_certificate, Operator, ParityError,
};
use crate::poly::{
    bipartition_rank_oracle, build_family_p, check_family_hypotheses, decompose_with,
    find_justifying_assignment, is_justifying, is_zero_at, sv_partition_test,
    two_zeros_explicit_assignment, BipartitionOracle, BitString, Block, BlockCoeffs, BlockSpec,
    LemmaShape, Monomial, MultilinearPoly, Split, VarId, IDENTITY_TEST_TRIALS,
};
use crate::state::{
    bipartitions, format_state, is_s_separable, ones_projection_norm, random_state,
    reduced_density, separates_at, tensor, Bipartition, QubitSet, StateVector,
};

/// Stream id for the suite-wide η values, far from any instance index.
const ETA_STREAM: usize = usize::MAX;

/// Fresh partners tried against the zero side of a disappearing product.
const NZD_PARTNERS: usize = 50;

struct Failure {
    instance: String,
    message: String,
}

/// `Ok(true)` when the instance met the property's premise, `Ok(false)`
/// when it was vacuous.
type Check = Result<bool, Failure>;

fn fail(instance: impl Into<String>, message: impl Into<String>) -> Failure {
    Failure {
        instance: instance.into(),
        message: message.into(),
    }
}

fn one_line(text: &str) -> String {
    text.trim_end().replace('\n', "; ")
}

fn circuit_line(c: &Circuit) -> String {
    serialize_circuit(c).trim_end().replace('\n', "|")
}

/// Shared per-run state: the configuration and the suite-wide η values.
pub(super) struct SuiteContext {
    cfg: SuiteConfig,
    tol: Tolerance,
    etas: [Scalar; 3],
}

impl SuiteContext {
    pub(super) fn new(cfg: &SuiteConfig) -> Self {
        let mut rng = seeded_rng(cfg.instance_seed(ETA_STREAM));
        let etas = [
            random_phase(&mut rng),
            random_phase(&mut rng),
            random_phase(&mut rng),
        ];
        Self {
            cfg: *cfg,
            tol: cfg.tolerance(),
            etas,
        }
    }

    /// The violation, if any, and whether the premise was met.
    pub(super) fn run_instance(&self, index: usize) -> (Option<Violation>, bool) {
        let seed = self.cfg.instance_seed(index);
        let mut rng = seeded_rng(seed);
        let outcome = match self.cfg.suite {
            Suite::EntanglementLemma => self.entanglement(index, &mut rng),
            Suite::SimplifyLemma => self.simplify(index, &mut rng),
            Suite::NoZeroDivisors => self.no_zero_divisors(&mut rng),
            Suite::IrreducibilityFamily => self.irreducibility(index, &mut rng),
            Suite::SvVsRank => self.sv_vs_rank(&mut rng),
            Suite::KillParity => self.kill_parity(&mut rng),
            Suite::Depth1Refute => self.depth1(&mut rng),
            Suite::TightParity3 => self.tight_parity3(index),
            Suite::Topology6Qubit => self.topology(&mut rng),
            Suite::DepthReduce => self.depth_reduce(index, &mut rng),
        };
        match outcome {
            Ok(exercised) => (None, exercised),
            Err(f) => {
                let v = Violation {
                    index,
                    seed,
                    instance: one_line(&format!(
                        "suite={} index={index} seed={seed} {}",
                        self.cfg.suite, f.instance
                    )),
                    message: one_line(&f.message),
                };
                (Some(v), true)
            }
        }
    }

    /// CZ on every fourth instance, otherwise one of the three η gates.
    fn gate_for(&self, index: usize, s: QubitSet) -> MultiQubitGate {
        match index % 4 {
            0 => MultiQubitGate::cz(s),
            k => MultiQubitGate::geta(self.etas[k - 1], s, &self.tol)
                .expect("η is a unit phase other than 1"),
        }
    }

    fn entanglement(&self, index: usize, rng: &mut SeededRng) -> Check {
        let r = rng.random_range(2..=self.cfg.max_qubits);
        let s = random_subset(rng, r, 2);
        let p = splitting_bipartition(rng, r, s);
        let psi = pinned_product(rng, &p, 0.15);
        let gate = self.gate_for(index, s);
        let describe = || {
            format!(
                "r={r} S={s} A={} B={} gate={} psi={}",
                p.a,
                p.b,
                gate_label(&gate),
                one_line(&format_state(&psi))
            )
        };
        if classify_simplification(s, &psi, &self.tol) != SimplificationOutcome::NoSimplification {
            return Ok(false);
        }
        let phi =
            apply_gate(&Gate::Multi(gate), &psi).map_err(|e| fail(describe(), e.to_string()))?;
        match is_s_separable(&phi, s, &self.tol).map_err(|e| fail(describe(), e.to_string()))? {
            Some(at) => Err(fail(
                describe(),
                format!("gate does not simplify but the output separates at {at}"),
            )),
            None => Ok(true),
        }
    }

    fn simplify(&self, index: usize, rng: &mut SeededRng) -> Check {
        let r = rng.random_range(2..=self.cfg.max_qubits);
        let s = random_subset(rng, r, 2);
        let p = any_bipartition(rng, r);
        let psi = pinned_product(rng, &p, 0.4);
        let gate = self.gate_for(index, s);
        let describe = || {
            format!(
                "r={r} S={s} A={} B={} gate={} psi={}",
                p.a,
                p.b,
                gate_label(&gate),
                one_line(&format_state(&psi))
            )
        };
        let phi =
            apply_gate(&Gate::Multi(gate), &psi).map_err(|e| fail(describe(), e.to_string()))?;
        let separating: Vec<Bipartition> = bipartitions(r)
            .into_iter()
            .filter(|cd| separates_at(&phi, cd, &self.tol))
            .collect();
        let outcome = classify_simplification(s, &psi, &self.tol);
        let remaining = match outcome {
            SimplificationOutcome::Disappears => return Ok(!separating.is_empty()),
            SimplificationOutcome::SimplifiesTo(t) => t,
            SimplificationOutcome::NoSimplification => s,
        };
        for cd in &separating {
            if ![p.a, p.b, cd.a, cd.b]
                .iter()
                .any(|side| remaining.is_subset(side))
            {
                return Err(fail(
                    describe(),
                    format!("output separates at {cd} but {outcome:?} leaves {remaining}, inside none of A, B, C, D"),
                ));
            }
        }
        Ok(!separating.is_empty())
    }

    fn no_zero_divisors(&self, rng: &mut SeededRng) -> Check {
        let r = rng.random_range(2..=self.cfg.max_qubits);
        let s = random_subset(rng, r, 1);
        let p = any_bipartition(rng, r);
        let psi_a = pinned_state(rng, p.a.len(), 0.35);
        let psi_b = pinned_state(rng, p.b.len(), 0.35);
        let psi = tensor(&psi_a, &psi_b, p.a).expect("sides cover the register");
        let describe = || {
            format!(
                "r={r} S={s} A={} B={} psi_a={} psi_b={}",
                p.a,
                p.b,
                one_line(&format_state(&psi_a)),
                one_line(&format_state(&psi_b))
            )
        };
        if classify_simplification(s, &psi, &self.tol) != SimplificationOutcome::Disappears {
            return Ok(false);
        }
        let (sa, sb) = (local_set(s, p.a), local_set(s, p.b));
        let cut = self.tol.threshold(1.0);
        let (na, nb) = (
            ones_projection_norm(&psi_a, sa),
            ones_projection_norm(&psi_b, sb),
        );
        let zero_a = na <= cut;
        if !zero_a && nb > cut {
            return Err(fail(
                describe(),
                format!("gate disappears but neither side vanishes ({na:e}, {nb:e})"),
            ));
        }
        for _ in 0..NZD_PARTNERS {
            let fresh = if zero_a {
                tensor(&psi_a, &random_state(p.b.len(), rng).expect("small"), p.a)
            } else {
                tensor(&random_state(p.a.len(), rng).expect("small"), &psi_b, p.a)
            }
            .expect("sides cover the register");
            if classify_simplification(s, &fresh, &self.tol) != SimplificationOutcome::Disappears {
                let side = if zero_a { "A" } else { "B" };
                return Err(fail(
                    describe(),
                    format!("side {side} vanishes on S but a fresh partner switches the gate on"),
                ));
            }
        }
        Ok(true)
    }

    fn irreducibility(&self, index: usize, rng: &mut SeededRng) -> Check {
        let shape = LemmaShape::ALL[index % LemmaShape::ALL.len()];
        let spec = random_block_spec(rng, shape, self.cfg.max_qubits);
        let exact = self.cfg.backend == Backend::Exact;
        let (c, d) = loop {
            let (c1, c2) = spec.c_dims();
            let (d1, d2) = spec.d_dims();
            let (c, d) = if exact {
                (
                    BlockCoeffs::random_small_int(rng, c1, c2, 2),
                    BlockCoeffs::random_small_int(rng, d1, d2, 2),
                )
            } else {
                (
                    BlockCoeffs::random_gaussian(rng, c1, c2),
                    BlockCoeffs::random_gaussian(rng, d1, d2),
                )
            };
            if check_family_hypotheses(&spec, &c, &d).all_hold() {
                break (c, d);
            }
        };
        let alpha = if exact {
            Scalar::int([-2, -1, 1, 2, 3][rng.random_range(0..5)])
        } else {
            crate::numerics::random_scalar(rng)
        };
        let p = build_family_p(&spec, &c, &d, alpha)
            .map_err(|e| fail(format!("shape={shape}"), e.to_string()))?;
        let describe = || {
            format!(
                "shape={shape} spec={spec:?} alpha={alpha} P={}",
                crate::poly::format_poly(&p)
            )
        };
        let oracle =
            BipartitionOracle::new(&p, self.tol).map_err(|e| fail(describe(), e.to_string()))?;
        if let Some(mask) = oracle.minimal_class() {
            let class: Vec<String> = oracle.set_of(mask).iter().map(|v| v.to_string()).collect();
            return Err(fail(
                describe(),
                format!("coefficient matrix has rank ≤ 1 at {{{}}}", class.join(",")),
            ));
        }
        if shape == LemmaShape::AllContactTwoZeros {
            let point = two_zeros_explicit_assignment(&spec, &c, &d, alpha)
                .map_err(|e| fail(describe(), e.to_string()))?;
            let zero = is_zero_at(&p, &point.point, &self.tol)
                .map_err(|e| fail(describe(), e.to_string()))?;
            let a_ok = (0..=4).any(|a| point.a_value == Scalar::int(a));
            if !zero || !a_ok || !is_justifying(&p, &point.point, &self.tol) {
                return Err(fail(
                    describe(),
                    format!(
                        "explicit assignment A={} B={} is not a justifying zero",
                        point.a_value, point.b_value
                    ),
                ));
            }
        }
        Ok(true)
    }

    fn sv_vs_rank(&self, rng: &mut SeededRng) -> Check {
        let exact = self.cfg.backend == Backend::Exact;
        let f = random_factored_poly(rng, self.cfg.max_qubits, exact);
        let describe = || format!("f={}", crate::poly::format_poly(&f));
        let err = |e: crate::poly::PolyError| fail(describe(), e.to_string());
        let a = find_justifying_assignment(&f, rng, 64).map_err(err)?;
        let classes: Vec<BTreeSet<VarId>> = decompose_with(&f, &self.tol)
            .map_err(err)?
            .iter()
            .map(|g| g.variables())
            .filter(|v| !v.is_empty())
            .collect();
        let vars: Vec<VarId> = f.variables().into_iter().collect();
        for mask in 0u64..1 << vars.len() {
            let set: BTreeSet<VarId> = vars
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, v)| *v)
                .collect();
            let member = classes
                .iter()
                .all(|c| c.is_subset(&set) || c.is_disjoint(&set));
            let sv = sv_partition_test(&f, &a, &set, IDENTITY_TEST_TRIALS, rng).map_err(err)?;
            let rank = bipartition_rank_oracle(&f, &set);
            if sv != member || rank != member {
                let names: Vec<String> = set.iter().map(|v| v.to_string()).collect();
                return Err(fail(
                    describe(),
                    format!("I={{{}}}: classes say {member}, sv test says {sv}, rank oracle says {rank}", names.join(",")),
                ));
            }
        }
        Ok(true)
    }

    fn kill_parity(&self, rng: &mut SeededRng) -> Check {
        let r = rng.random_range(2..=self.cfg.max_qubits);
        let limit = 1usize << (r - 1);
        let k = rng.random_range(0..limit);
        let b = rng.random_bool(0.5);
        let units: Vec<Operator> = (0..k).map(|_| Operator::random(r, rng)).collect();
        let describe = format!("r={r} k={k} b={}", u8::from(b));
        let bound = self.tol.abs_eps;
        let psi = kill_parity_state(r, &units, b, &self.tol)
            .map_err(|e| fail(describe.clone(), e.to_string()))?;
        let (kill, parity) = (kill_residual(&units, &psi), parity_residual(&psi, b));
        if kill > bound || parity > bound || (psi.norm() - 1.0).abs() > bound {
            return Err(fail(
                describe,
                format!(
                    "constraint residual {kill:e}, parity residual {parity:e}, norm {}",
                    psi.norm()
                ),
            ));
        }
        let too_many = vec![Operator::identity(r); limit];
        match kill_parity_state(r, &too_many, b, &self.tol) {
            Err(ParityError::TooManyConstraints { .. }) => Ok(true),
            other => Err(fail(
                describe,
                format!("k = 2^(r-1) was not rejected: {other:?}"),
            )),
        }
    }

    fn depth1(&self, rng: &mut SeededRng) -> Check {
        let n = rng.random_range(2..=3.min(self.cfg.max_qubits - 1));
        let m = rng.random_range(0..=2.min(self.cfg.max_qubits - 1 - n));
        let mut spec = RandomCircuitSpec::new(n, m, 1);
        spec.max_gate_size = n + m + 1;
        let c = random_circuit(&spec, rng);
        let anc = random_state(m, rng).expect("small");
        let describe = || {
            format!(
                "circuit={} ancilla={}",
                circuit_line(&c),
                ancilla_line(&anc)
            )
        };
        let cert =
            refute_depth1(&c, &anc, &self.tol).map_err(|e| fail(describe(), e.to_string()))?;
        verify_certificate(&cert, &self.tol).map_err(|e| fail(describe(), e.to_string()))?;
        let back =
            parse_certificate(&cert.to_document()).map_err(|e| fail(describe(), e.to_string()))?;
        verify_certificate(&back, &self.tol)
            .map_err(|e| fail(describe(), format!("reparsed certificate: {e}")))?;
        Ok(true)
    }

    fn tight_parity3(&self, index: usize) -> Check {
        let c = parity3_circuit();
        let x = index % 16;
        let describe = format!("basis={x:04b} backend={}", self.cfg.backend);
        let mut init = StateVector::basis(4, x).expect("4 qubits");
        if self.cfg.backend == Backend::Float {
            init = init.to_float();
        }
        let out = simulate(&c, &init).map_err(|e| fail(describe.clone(), e.to_string()))?;
        let want = parity3_cnot_form(&init);
        let target = x.count_ones() % 2 == 1;
        let wrong: Vec<&Scalar> = out
            .amps()
            .iter()
            .enumerate()
            .filter(|(i, _)| out.bit(*i, 0) != target)
            .map(|(_, a)| a)
            .collect();
        let agree = match self.cfg.backend {
            Backend::Exact => out.is_exact() && out == want && wrong.iter().all(|a| a.is_zero()),
            Backend::Float => {
                let residual = wrong.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
                out.distance(&want) <= self.tol.threshold(1.0)
                    && residual <= self.tol.threshold(1.0)
            }
        };
        if agree {
            Ok(true)
        } else {
            Err(fail(
                describe,
                format!(
                    "output {} differs from the CNOT form",
                    one_line(&format_state(&out))
                ),
            ))
        }
    }

    fn topology(&self, rng: &mut SeededRng) -> Check {
        let set = |qs: &[usize]| qs.iter().copied().collect::<QubitSet>();
        let mut c = Circuit::new(5, 0, 2).expect("6 qubits fit");
        for j in 0..2 {
            for q in 0..6 {
                let g = if rng.random_bool(0.3) {
                    OneQubitGate::named(NamedGate::ALL[rng.random_range(0..NamedGate::ALL.len())])
                } else {
                    random_one_qubit_gate(rng)
                };
                c.set_single(j, q, g).expect("in range");
            }
        }
        let middle = set(&[1, 2, 3]);
        c.add_multi(1, MultiQubitGate::cz(set(&[0, 1, 2])))
            .expect("disjoint");
        c.add_multi(1, MultiQubitGate::cz(set(&[3, 4, 5])))
            .expect("disjoint");
        c.add_multi(2, MultiQubitGate::cz(middle))
            .expect("disjoint");
        let x = rng.random_range(0..64);
        let describe = || format!("basis={x:06b} circuit={}", circuit_line(&c));
        let err = |e: crate::circuit::CircuitError| fail(describe(), e.to_string());
        let init = StateVector::basis(6, x).expect("6 qubits");
        let psi = simulate_through(&c, &init, Layer::single(1)).map_err(err)?;
        let halves = Bipartition::new(set(&[0, 1, 2]), set(&[3, 4, 5]), 6).expect("valid");
        if !separates_at(&psi, &halves, &self.tol) {
            return Err(fail(
                describe(),
                "state after layer 1.5 does not separate at {{0,1,2},{3,4,5}}",
            ));
        }
        if classify_simplification(middle, &psi, &self.tol)
            != SimplificationOutcome::NoSimplification
        {
            return Ok(false);
        }
        let phi = simulate_through(&c, &init, Layer::multi(2)).map_err(err)?;
        let right = Bipartition::new(set(&[0, 1]), set(&[2, 3, 4, 5]), 6).expect("valid");
        if separates_at(&phi, &right, &self.tol) {
            return Err(fail(
                describe(),
                "middle gate does not simplify yet the state separates at {0,1},{2,3,4,5}",
            ));
        }
        Ok(true)
    }

    fn depth_reduce(&self, index: usize, rng: &mut SeededRng) -> Check {
        let room = self.cfg.max_qubits - 1;
        let n = rng.random_range(1..=3.min(room));
        let m = rng.random_range(0..=2.min(room - n));
        let c = if index.is_multiple_of(2) {
            target_idle_fixture(n, m, rng)
        } else {
            pass_through_fixture(n, m, rng)
        };
        let anc = random_state(m, rng).expect("small");
        let describe = || {
            format!(
                "circuit={} ancilla={}",
                circuit_line(&c),
                ancilla_line(&anc)
            )
        };
        let err = |e: crate::circuit::CircuitError| fail(describe(), e.to_string());
        if reduction_case(&c, &self.tol).is_none() {
            return Err(fail(
                describe(),
                "fixture does not meet the reduction preconditions",
            ));
        }
        let reduced = depth_reduce(&c, &self.tol).map_err(err)?;
        for x in 0..1usize << n {
            let init = c.initial_state(x, &anc).map_err(err)?;
            let before =
                reduced_density(&simulate(&c, &init).map_err(err)?, QubitSet::singleton(0));
            let after = reduced_density(
                &simulate(&reduced, &init).map_err(err)?,
                QubitSet::singleton(0),
            );
            let gap = before
                .iter()
                .zip(&after)
                .map(|(p, q)| (p - q).norm())
                .fold(0.0, f64::max);
            if gap > self.tol.abs_eps {
                return Err(fail(
                    describe(),
                    format!("input {x}: target density differs by {gap:e}"),
                ));
            }
        }
        Ok(true)
    }
}

fn gate_label(g: &MultiQubitGate) -> String {
    let eta: Complex64 = g.phase().to_complex();
    if g.phase() == -Scalar::one() {
        "cz".into()
    } else {
        format!("geta({:?},{:?})", eta.re, eta.im)
    }
}

fn ancilla_line(anc: &StateVector) -> String {
    if anc.qubits() == 0 {
        "none".into()
    } else {
        one_line(&format_state(anc))
    }
}

/// A uniformly random subset of `0..r` with at least `min` elements.
fn random_subset(rng: &mut SeededRng, r: usize, min: usize) -> QubitSet {
    loop {
        let s: QubitSet = (0..r).filter(|_| rng.random_bool(0.5)).collect();
        if s.len() >= min {
            return s;
        }
    }
}

fn any_bipartition(rng: &mut SeededRng, r: usize) -> Bipartition {
    loop {
        let a: QubitSet = (0..r).filter(|_| rng.random_bool(0.5)).collect();
        if !a.is_empty() && a.len() < r {
            return Bipartition::from_side(a, r).expect("both sides nonempty");
        }
    }
}

/// A random bipartition with both sides meeting `s`.
fn splitting_bipartition(rng: &mut SeededRng, r: usize, s: QubitSet) -> Bipartition {
    let mut members = s.to_vec();
    members.shuffle(rng);
    let mut a = QubitSet::singleton(members[0]);
    for q in (0..r).filter(|&q| q != members[0] && q != members[1]) {
        if rng.random_bool(0.5) {
            a.insert(q);
        }
    }
    Bipartition::from_side(a, r).expect("members[1] stays on the other side")
}

/// A random `k`-qubit state with each qubit pinned to a basis value with
/// probability `pin`.
fn pinned_state(rng: &mut SeededRng, k: usize, pin: f64) -> StateVector {
    let mut psi = random_state(k, rng).expect("small");
    for q in 0..k {
        if rng.random_bool(pin) {
            let bit = 1usize << (k - 1 - q);
            if rng.random_bool(0.5) {
                psi.apply_permutation(|i| i & !bit);
            } else {
                psi.apply_permutation(|i| i | bit);
            }
        }
    }
    // Pinning folds amplitude pairs together, so the norm changes.
    psi.normalized()
        .expect("a random state keeps weight on every pinned branch")
}

fn pinned_product(rng: &mut SeededRng, p: &Bipartition, pin: f64) -> StateVector {
    let a = pinned_state(rng, p.a.len(), pin);
    let b = pinned_state(rng, p.b.len(), pin);
    tensor(&a, &b, p.a).expect("sides cover the register")
}

/// `s ∩ side` relabelled by position within `side`.
fn local_set(s: QubitSet, side: QubitSet) -> QubitSet {
    side.iter()
        .enumerate()
        .filter(|(_, q)| s.contains(*q))
        .map(|(i, _)| i)
        .collect()
}

fn random_split(rng: &mut SeededRng, tails: bool) -> Split {
    Split::new(
        rng.random_range(1..=3),
        if tails { rng.random_range(0..=2) } else { 0 },
    )
}

/// A block spec of the given shape with at most `cap` variables.
fn random_block_spec(rng: &mut SeededRng, shape: LemmaShape, cap: usize) -> BlockSpec {
    let tails = shape.is_most_general();
    loop {
        let (x, y, z, w) = (
            random_split(rng, tails),
            random_split(rng, tails),
            random_split(rng, tails),
            random_split(rng, tails),
        );
        let spec = match shape.extra_blocks() {
            0 => BlockSpec::two_blocks(x, z),
            1 => BlockSpec::three_blocks(x, z, w),
            _ => BlockSpec::four_blocks(x, y, z, w),
        };
        if spec.shape() == shape && spec.variable_count() <= cap {
            return spec;
        }
    }
}

/// A product of one to three random factors on disjoint variable groups,
/// so decomposable and indecomposable inputs both occur.
fn random_factored_poly(rng: &mut SeededRng, cap: usize, exact: bool) -> MultilinearPoly {
    loop {
        let n = rng.random_range(1..=cap);
        let mut vars: Vec<VarId> = (0..n as u32)
            .map(|i| VarId::new(Block::X, BitString::new(i, 4)))
            .collect();
        vars.shuffle(rng);
        let groups = rng.random_range(1..=3.min(n));
        let mut cuts: Vec<usize> = (1..n).collect();
        cuts.shuffle(rng);
        let mut cuts: Vec<usize> = cuts.into_iter().take(groups - 1).collect();
        cuts.sort_unstable();
        let mut f = MultilinearPoly::constant(Scalar::one());
        let mut start = 0;
        for end in cuts.into_iter().chain([n]) {
            let group = &vars[start..end];
            start = end;
            let terms = rng.random_range(1..=4);
            let mut g = MultilinearPoly::zero();
            for _ in 0..terms {
                let m = Monomial::new(group.iter().copied().filter(|_| rng.random_bool(0.5)));
                let c = if exact {
                    Scalar::int(rng.random_range(-3..=3))
                } else {
                    crate::numerics::random_scalar(rng)
                };
                g.add_term(m, c);
            }
            f = f.mul(&g).expect("groups are disjoint");
        }
        if f.as_constant().is_none() {
            return f;
        }
    }
}
