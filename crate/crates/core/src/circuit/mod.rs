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

//! QAC circuits: layers of arbitrary 1-qubit gates alternating with layers of
//! disjoint multiqubit C-SIGN (or `G_η`) gates.
//!
//! Qubit 0 is the target, qubits `1..=n` are inputs and the remaining `m`
//! qubits are ancillas. Layers are numbered `0.5, 1, 1.5, …, d + 0.5`; the
//! depth `d` counts only the integer (multiqubit) layers.

mod fixtures;
mod text;

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::numerics::{Scalar, Tolerance};
use crate::state::{tensor, QubitSet, StateError, StateVector, MAX_QUBITS};

pub use fixtures::{
    apply_cnot, apply_fanout, apply_parity_gate, parity3_circuit, parity3_cnot_form,
    pass_through_fixture, random_circuit, random_one_qubit_gate, random_semiclassical_gate,
    target_idle_fixture, RandomCircuitSpec,
};
pub use text::{parse_circuit, serialize_circuit, ParseError, ParseErrorKind};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CircuitError {
    #[error("{r} qubits exceed the cap of {cap}")]
    TooManyQubits { r: usize, cap: usize },
    #[error("qubit {q} is outside a register of {r} qubits")]
    QubitOutOfRange { q: usize, r: usize },
    #[error("layer {layer} does not exist in a depth-{depth} circuit")]
    LayerOutOfRange { layer: Layer, depth: usize },
    #[error("multiqubit gates in a layer need at least one qubit")]
    EmptyGate,
    #[error("layer disjointness violated: qubit {q} is touched twice on layer {layer}")]
    LayerDisjointness { layer: Layer, q: usize },
    #[error("GEta modulus must be 1, got {0}")]
    GEtaModulus(f64),
    #[error("GEta phase must differ from 1")]
    GEtaTrivial,
    #[error("matrix is not unitary (deviation {0:e})")]
    NonUnitary(f64),
    #[error("expected a {expected}-qubit state, got {got} qubits")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A layer position stored as twice its index, so `1.5` is `Layer(3)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Layer(u32);

impl Layer {
    /// The 1-qubit layer `j + 0.5`.
    pub fn single(j: usize) -> Self {
        Layer(2 * j as u32 + 1)
    }

    /// The multiqubit layer `l`.
    pub fn multi(l: usize) -> Self {
        Layer(2 * l as u32)
    }

    pub fn from_doubled(v: u32) -> Self {
        Layer(v)
    }

    pub fn doubled(&self) -> u32 {
        self.0
    }

    pub fn is_multi(&self) -> bool {
        self.0.is_multiple_of(2)
    }

    /// Parses `"2"` or `"1.5"`; other fractions and non-positive values fail.
    pub fn parse(s: &str) -> Option<Self> {
        let doubled = match s.split_once('.') {
            None => 2 * s.parse::<u32>().ok()?,
            Some((whole, "5")) => 2 * whole.parse::<u32>().ok()? + 1,
            Some((whole, frac)) if !frac.is_empty() && frac.bytes().all(|b| b == b'0') => {
                2 * whole.parse::<u32>().ok()?
            }
            _ => return None,
        };
        (doubled > 0).then_some(Layer(doubled))
    }
}

impl fmt::Display for Layer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_multi() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}.5", self.0 / 2)
        }
    }
}

/// Names of the exactly represented Pauli and Hadamard gates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedGate {
    I,
    X,
    Y,
    Z,
    H,
}

impl NamedGate {
    pub const ALL: [NamedGate; 5] = [
        NamedGate::I,
        NamedGate::X,
        NamedGate::Y,
        NamedGate::Z,
        NamedGate::H,
    ];

    pub fn symbol(&self) -> &'static str {
        match self {
            NamedGate::I => "I",
            NamedGate::X => "X",
            NamedGate::Y => "Y",
            NamedGate::Z => "Z",
            NamedGate::H => "H",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        NamedGate::ALL.into_iter().find(|g| g.symbol() == s)
    }

    pub fn matrix(&self) -> [Scalar; 4] {
        let (o, l) = (Scalar::zero(), Scalar::one());
        match self {
            NamedGate::I => [l, o, o, l],
            NamedGate::X => [o, l, l, o],
            NamedGate::Y => [o, -Scalar::i(), Scalar::i(), o],
            NamedGate::Z => [l, o, o, -l],
            NamedGate::H => {
                let h = Scalar::frac_1_sqrt_2();
                [h, h, h, -h]
            }
        }
    }
}

/// A 2×2 unitary, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OneQubitGate {
    m: [Scalar; 4],
}

impl OneQubitGate {
    pub fn named(g: NamedGate) -> Self {
        Self { m: g.matrix() }
    }

    pub fn identity() -> Self {
        Self::named(NamedGate::I)
    }

    pub fn x() -> Self {
        Self::named(NamedGate::X)
    }

    pub fn y() -> Self {
        Self::named(NamedGate::Y)
    }

    pub fn z() -> Self {
        Self::named(NamedGate::Z)
    }

    pub fn h() -> Self {
        Self::named(NamedGate::H)
    }

    /// Checks `UᴴU = I` entrywise against `tol` (exactly for exact entries).
    pub fn from_matrix(m: [Scalar; 4], tol: &Tolerance) -> Result<Self, CircuitError> {
        let g = Self { m };
        let p = g.adjoint().product(&g);
        let id = NamedGate::I.matrix();
        let all_exact = p.m.iter().all(Scalar::is_exact);
        let dev =
            p.m.iter()
                .zip(&id)
                .map(|(a, b)| (a.to_complex() - b.to_complex()).norm())
                .fold(0.0, f64::max);
        let ok = if all_exact {
            p.m == id
        } else {
            m.iter().all(|z| z.to_complex().is_finite()) && dev <= tol.threshold(1.0)
        };
        if ok {
            Ok(g)
        } else {
            Err(CircuitError::NonUnitary(dev))
        }
    }

    /// `diag(1, phase)`.
    pub fn phase(phase: Scalar) -> Self {
        Self {
            m: [Scalar::one(), Scalar::zero(), Scalar::zero(), phase],
        }
    }

    pub fn matrix(&self) -> &[Scalar; 4] {
        &self.m
    }

    pub fn name(&self) -> Option<NamedGate> {
        NamedGate::ALL.into_iter().find(|g| g.matrix() == self.m)
    }

    pub fn is_identity(&self) -> bool {
        self.name() == Some(NamedGate::I)
    }

    pub fn is_exact(&self) -> bool {
        self.m.iter().all(Scalar::is_exact)
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.m;
        Self {
            m: [m[0].conj(), m[2].conj(), m[1].conj(), m[3].conj()],
        }
    }

    /// The matrix product `self · first`, so `first` acts before `self`.
    pub fn product(&self, first: &Self) -> Self {
        let (a, b) = (&self.m, &first.m);
        Self {
            m: [
                a[0] * b[0] + a[1] * b[2],
                a[0] * b[1] + a[1] * b[3],
                a[2] * b[0] + a[3] * b[2],
                a[2] * b[1] + a[3] * b[3],
            ],
        }
    }

    /// Applies `self` first, then `next`.
    pub fn then(&self, next: &Self) -> Self {
        next.product(self)
    }

    pub fn to_complex(&self) -> [Complex64; 4] {
        self.m.map(|z| z.to_complex())
    }
}

/// A multiqubit phase gate: `CZ_S` flips the sign of basis states that are 1
/// on all of `S`; `G_η` multiplies them by `η`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MultiQubitGate {
    kind: MultiKind,
    qubits: QubitSet,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MultiKind {
    Cz,
    GEta(Scalar),
}

impl MultiQubitGate {
    /// `CZ_S`; `CZ_∅ = −I`.
    pub fn cz(qubits: QubitSet) -> Self {
        Self {
            kind: MultiKind::Cz,
            qubits,
        }
    }

    pub fn geta(eta: Scalar, qubits: QubitSet, tol: &Tolerance) -> Result<Self, CircuitError> {
        let modulus = eta.abs();
        let unit = if eta.is_exact() {
            eta * eta.conj() == Scalar::one()
        } else {
            (modulus - 1.0).abs() <= tol.threshold(1.0)
        };
        if !unit {
            return Err(CircuitError::GEtaModulus(modulus));
        }
        let trivial = if eta.is_exact() {
            eta == Scalar::one()
        } else {
            (eta.to_complex() - 1.0).norm() <= tol.threshold(1.0)
        };
        if trivial {
            return Err(CircuitError::GEtaTrivial);
        }
        Ok(Self {
            kind: MultiKind::GEta(eta),
            qubits,
        })
    }

    pub fn kind(&self) -> MultiKind {
        self.kind
    }

    pub fn qubits(&self) -> QubitSet {
        self.qubits
    }

    /// The factor applied to the all-ones amplitudes.
    pub fn phase(&self) -> Scalar {
        match self.kind {
            MultiKind::Cz => -Scalar::one(),
            MultiKind::GEta(eta) => eta,
        }
    }

    /// The same gate kind acting on a different set.
    pub fn on(&self, qubits: QubitSet) -> Self {
        Self {
            kind: self.kind,
            qubits,
        }
    }
}

/// A gate applied on its own, outside a circuit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Gate {
    Single { qubit: usize, gate: OneQubitGate },
    Multi(MultiQubitGate),
}

pub fn apply_gate(g: &Gate, psi: &StateVector) -> Result<StateVector, CircuitError> {
    let mut out = psi.clone();
    apply_gate_in_place(g, &mut out)?;
    Ok(out)
}

fn apply_gate_in_place(g: &Gate, psi: &mut StateVector) -> Result<(), CircuitError> {
    match g {
        Gate::Single { qubit, gate } => {
            if !gate.is_identity() {
                psi.apply_single(*qubit, gate.matrix())?;
            } else if *qubit >= psi.qubits() {
                return Err(CircuitError::QubitOutOfRange {
                    q: *qubit,
                    r: psi.qubits(),
                });
            }
        }
        Gate::Multi(m) => psi.apply_phase_on_ones(m.qubits, m.phase())?,
    }
    Ok(())
}

/// A circuit on `1 + inputs + ancillas` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    inputs: usize,
    ancillas: usize,
    /// `singles[j][q]` is the gate on qubit `q` in layer `j + 0.5`.
    singles: Vec<Vec<OneQubitGate>>,
    /// `multis[l - 1]` holds the gates of layer `l`.
    multis: Vec<Vec<MultiQubitGate>>,
}

impl Circuit {
    /// A depth-`depth` circuit whose gates are all identities.
    pub fn new(inputs: usize, ancillas: usize, depth: usize) -> Result<Self, CircuitError> {
        let r = 1 + inputs + ancillas;
        if r > MAX_QUBITS {
            return Err(CircuitError::TooManyQubits { r, cap: MAX_QUBITS });
        }
        Ok(Self {
            inputs,
            ancillas,
            singles: vec![vec![OneQubitGate::identity(); r]; depth + 1],
            multis: vec![Vec::new(); depth],
        })
    }

    pub fn qubits(&self) -> usize {
        1 + self.inputs + self.ancillas
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn ancillas(&self) -> usize {
        self.ancillas
    }

    pub fn depth(&self) -> usize {
        self.multis.len()
    }

    pub fn input_qubits(&self) -> QubitSet {
        (1..=self.inputs).collect()
    }

    pub fn ancilla_qubits(&self) -> QubitSet {
        (self.inputs + 1..self.qubits()).collect()
    }

    /// All layers in application order.
    pub fn layers(&self) -> Vec<Layer> {
        (1..=2 * self.depth() as u32 + 1).map(Layer).collect()
    }

    fn check_qubit(&self, q: usize) -> Result<(), CircuitError> {
        if q >= self.qubits() {
            return Err(CircuitError::QubitOutOfRange {
                q,
                r: self.qubits(),
            });
        }
        Ok(())
    }

    /// The gate on qubit `q` in layer `j + 0.5` (identity when unset).
    pub fn single(&self, j: usize, q: usize) -> &OneQubitGate {
        &self.singles[j][q]
    }

    pub fn set_single(&mut self, j: usize, q: usize, g: OneQubitGate) -> Result<(), CircuitError> {
        self.check_qubit(q)?;
        if j > self.depth() {
            return Err(CircuitError::LayerOutOfRange {
                layer: Layer::single(j),
                depth: self.depth(),
            });
        }
        self.singles[j][q] = g;
        Ok(())
    }

    pub fn multi_layer(&self, l: usize) -> &[MultiQubitGate] {
        &self.multis[l - 1]
    }

    pub fn add_multi(&mut self, l: usize, g: MultiQubitGate) -> Result<(), CircuitError> {
        if l == 0 || l > self.depth() {
            return Err(CircuitError::LayerOutOfRange {
                layer: Layer::multi(l),
                depth: self.depth(),
            });
        }
        if g.qubits.is_empty() {
            return Err(CircuitError::EmptyGate);
        }
        if let Some(q) = g.qubits.max_label() {
            self.check_qubit(q)?;
        }
        for other in &self.multis[l - 1] {
            if let Some(q) = other.qubits.intersection(&g.qubits).iter().next() {
                return Err(CircuitError::LayerDisjointness {
                    layer: Layer::multi(l),
                    q,
                });
            }
        }
        // Kept sorted by lowest label so equal circuits serialize identically.
        let layer = &mut self.multis[l - 1];
        let at = layer.partition_point(|o| o.qubits.iter().next() < g.qubits.iter().next());
        layer.insert(at, g);
        Ok(())
    }

    /// The multiqubit gate on layer `l` touching `q`, if any.
    pub fn gate_at(&self, l: usize, q: usize) -> Option<&MultiQubitGate> {
        self.multis[l - 1].iter().find(|g| g.qubits.contains(q))
    }

    /// The gates of `layer` as standalone gates.
    pub fn gates_in(&self, layer: Layer) -> Vec<Gate> {
        let v = layer.doubled() as usize;
        if layer.is_multi() {
            self.multis[v / 2 - 1]
                .iter()
                .map(|g| Gate::Multi(*g))
                .collect()
        } else {
            self.singles[v / 2]
                .iter()
                .enumerate()
                .filter(|(_, g)| !g.is_identity())
                .map(|(qubit, gate)| Gate::Single { qubit, gate: *gate })
                .collect()
        }
    }

    /// Removes multiqubit layer `l`, merging the 1-qubit layers on either side.
    pub fn delete_layer(&self, l: usize) -> Result<Circuit, CircuitError> {
        if l == 0 || l > self.depth() {
            return Err(CircuitError::LayerOutOfRange {
                layer: Layer::multi(l),
                depth: self.depth(),
            });
        }
        let mut out = self.clone();
        let after = out.singles.remove(l);
        for (g, a) in out.singles[l - 1].iter_mut().zip(after) {
            *g = g.then(&a);
        }
        out.multis.remove(l - 1);
        Ok(out)
    }

    fn check_state(&self, psi: &StateVector) -> Result<(), CircuitError> {
        if psi.qubits() != self.qubits() {
            return Err(CircuitError::DimensionMismatch {
                expected: self.qubits(),
                got: psi.qubits(),
            });
        }
        Ok(())
    }

    /// `|0⟩ ⊗ |x⟩ ⊗ ancilla` where bit `i − 1` from the left of the
    /// `inputs`-bit value `x` sets input qubit `i`.
    pub fn initial_state(
        &self,
        x: usize,
        ancilla: &StateVector,
    ) -> Result<StateVector, CircuitError> {
        if ancilla.qubits() != self.ancillas {
            return Err(CircuitError::DimensionMismatch {
                expected: self.ancillas,
                got: ancilla.qubits(),
            });
        }
        let head = StateVector::basis(1 + self.inputs, x)?;
        if self.ancillas == 0 {
            return Ok(head.scale(ancilla.amp(0)));
        }
        Ok(tensor(&head, ancilla, QubitSet::full(1 + self.inputs))?)
    }
}

/// Applies every layer in order.
pub fn simulate(c: &Circuit, initial: &StateVector) -> Result<StateVector, CircuitError> {
    simulate_through(c, initial, Layer::single(c.depth()))
}

/// Applies layers `0.5` through `last` inclusive.
pub fn simulate_through(
    c: &Circuit,
    initial: &StateVector,
    last: Layer,
) -> Result<StateVector, CircuitError> {
    c.check_state(initial)?;
    let mut psi = initial.clone();
    for layer in c.layers().into_iter().take_while(|l| *l <= last) {
        for g in c.gates_in(layer) {
            apply_gate_in_place(&g, &mut psi)?;
        }
    }
    Ok(psi)
}

/// The state after each layer, in order.
pub fn simulate_with_trace(
    c: &Circuit,
    initial: &StateVector,
) -> Result<Vec<(Layer, StateVector)>, CircuitError> {
    c.check_state(initial)?;
    let mut psi = initial.clone();
    let mut trace = Vec::with_capacity(c.layers().len());
    for layer in c.layers() {
        for g in c.gates_in(layer) {
            apply_gate_in_place(&g, &mut psi)?;
        }
        trace.push((layer, psi.clone()));
    }
    Ok(trace)
}

/// How a phase gate on `S` acts on a particular state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimplificationOutcome {
    /// The state has no weight on basis states that are 1 throughout `S`.
    Disappears,
    /// The gate acts as the same gate on `T ⊊ S`; `T = ∅` is a global phase.
    SimplifiesTo(QubitSet),
    NoSimplification,
}

fn negligible_norm(psi: &StateVector, keep: impl Fn(usize) -> bool, tol: &Tolerance) -> bool {
    let selected = psi.amps().iter().enumerate().filter(|(i, _)| keep(*i));
    if psi.is_exact() {
        let mut sel = selected;
        return sel.all(|(_, a)| a.is_zero());
    }
    let norm = selected.map(|(_, a)| a.norm_sqr()).sum::<f64>().sqrt();
    norm <= tol.threshold(psi.norm())
}

/// Disappears when the all-ones-on-`S` projection vanishes; otherwise drops
/// every qubit of `S` pinned to `|1⟩` and reports the minimal remaining set.
pub fn classify_simplification(
    s: QubitSet,
    psi: &StateVector,
    tol: &Tolerance,
) -> SimplificationOutcome {
    let r = psi.qubits();
    let mask = s.index_mask(r);
    if negligible_norm(psi, |i| i & mask == mask, tol) {
        return SimplificationOutcome::Disappears;
    }
    let pinned: QubitSet = s
        .iter()
        .filter(|&q| negligible_norm(psi, |i| !psi.bit(i, q), tol))
        .collect();
    if pinned.is_empty() {
        SimplificationOutcome::NoSimplification
    } else {
        SimplificationOutcome::SimplifiesTo(s.difference(&pinned))
    }
}

/// The replacement prescribed by `outcome` for gate `g`, applied to `psi`.
pub fn apply_simplified(
    outcome: SimplificationOutcome,
    g: &MultiQubitGate,
    psi: &StateVector,
) -> Result<StateVector, CircuitError> {
    match outcome {
        SimplificationOutcome::Disappears => Ok(psi.clone()),
        SimplificationOutcome::SimplifiesTo(t) => apply_gate(&Gate::Multi(g.on(t)), psi),
        SimplificationOutcome::NoSimplification => apply_gate(&Gate::Multi(*g), psi),
    }
}

/// Diagonal or antidiagonal within `tol` (exactly for exact matrices).
pub fn is_semiclassical(g: &OneQubitGate, tol: &Tolerance) -> bool {
    let m = g.matrix();
    let zero = |z: &Scalar| {
        if z.is_exact() {
            z.is_zero()
        } else {
            z.abs() <= tol.threshold(1.0)
        }
    };
    (zero(&m[1]) && zero(&m[2])) || (zero(&m[0]) && zero(&m[3]))
}

/// Whether the target's final 1-qubit gate is semiclassical.
pub fn target_is_pass_through(c: &Circuit, tol: &Tolerance) -> bool {
    is_semiclassical(c.single(c.depth(), 0), tol)
}

/// Which proof case a depth reduction follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionCase {
    /// The target meets no multiqubit gate on the last layer.
    TargetIdle,
    /// The target's final gate is semiclassical.
    PassThrough,
}

/// The target's last-layer gate if it acts on the target alone.
fn last_target_local(c: &Circuit) -> Option<OneQubitGate> {
    match c.gate_at(c.depth(), 0) {
        None => Some(OneQubitGate::identity()),
        Some(g) if g.qubits == QubitSet::singleton(0) => Some(OneQubitGate::phase(g.phase())),
        Some(_) => None,
    }
}

pub fn reduction_case(c: &Circuit, tol: &Tolerance) -> Option<ReductionCase> {
    if c.depth() < 2 {
        return None;
    }
    if last_target_local(c).is_some() {
        Some(ReductionCase::TargetIdle)
    } else if target_is_pass_through(c, tol) {
        Some(ReductionCase::PassThrough)
    } else {
        None
    }
}

/// A depth-`(d − 1)` circuit with the same final target behaviour.
///
/// When the target is idle on layer `d`, the gates after layer `d − 1` on
/// other qubits are dropped and the target's last three local gates fuse.
/// When the target is pass-through, layer `d` and the other qubits' final
/// gates are dropped and the target's two outer gates fuse; the target value
/// is preserved whenever the original circuit computes a Boolean function.
pub fn depth_reduce(c: &Circuit, tol: &Tolerance) -> Result<Circuit, CircuitError> {
    let d = c.depth();
    if d < 2 {
        return Err(CircuitError::Precondition(format!(
            "depth reduction needs depth ≥ 2, got {d}"
        )));
    }
    let middle = match reduction_case(c, tol) {
        Some(ReductionCase::TargetIdle) => last_target_local(c).expect("case checked"),
        Some(ReductionCase::PassThrough) => OneQubitGate::identity(),
        None => {
            return Err(CircuitError::Precondition(
                "target meets a multiqubit gate on the last layer and is not pass-through".into(),
            ))
        }
    };
    let mut out = c.clone();
    let last = out.singles.pop().expect("depth ≥ 2");
    out.multis.pop();
    let fused = out.singles[d - 1][0].then(&middle).then(&last[0]);
    out.singles[d - 1][0] = fused;
    Ok(out)
}

/// Result of checking that a circuit leaves `|⊕x⟩` on the target.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParityCheck {
    /// The first input whose final target is not `|⊕x⟩`.
    pub counterexample: Option<usize>,
    /// Largest norm of the wrong-parity target component over all inputs.
    pub max_residual: f64,
}

impl ParityCheck {
    pub fn computes(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Norm of the component of `psi` with target qubit equal to `bit`.
pub fn target_component_norm(psi: &StateVector, bit: bool) -> f64 {
    psi.amps()
        .iter()
        .enumerate()
        .filter(|(i, _)| psi.bit(*i, 0) == bit)
        .map(|(_, a)| a.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Simulates `|0⟩⊗|x⟩⊗ancilla` for every classical `x`; exact states must
/// put exactly zero weight on the wrong target value.
pub fn computes_parity_on_basis(
    c: &Circuit,
    ancilla: &StateVector,
    tol: &Tolerance,
) -> Result<ParityCheck, CircuitError> {
    let mut check = ParityCheck {
        counterexample: None,
        max_residual: 0.0,
    };
    for x in 0..1usize << c.inputs() {
        let out = simulate(c, &c.initial_state(x, ancilla)?)?;
        let parity = x.count_ones() % 2 == 1;
        let wrong = |i: usize| out.bit(i, 0) != parity;
        let residual = target_component_norm(&out, !parity);
        check.max_residual = check.max_residual.max(residual);
        let ok = if out.is_exact() {
            out.amps()
                .iter()
                .enumerate()
                .all(|(i, a)| !wrong(i) || a.is_zero())
        } else {
            residual <= tol.threshold(out.norm())
        };
        if !ok && check.counterexample.is_none() {
            check.counterexample = Some(x);
        }
    }
    Ok(check)
}
