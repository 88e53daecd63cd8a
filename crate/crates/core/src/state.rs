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

//! State vectors over labeled qubits and their separability structure.
//!
//! Qubit 0 is the most significant bit of a basis index, so for `r` qubits
//! qubit `q` lives at bit `r − 1 − q`.

use std::collections::HashMap;
use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{numerical_rank, top_singular_triplet};
use crate::numerics::{random_complex, ExactScalar, Scalar, SeededRng, Tolerance};

/// Largest register handled anywhere in the toolkit.
pub const MAX_QUBITS: usize = 12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StateError {
    #[error("expected {expected} amplitudes, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("{r} qubits exceed the cap of {cap}")]
    TooManyQubits { r: usize, cap: usize },
    #[error("qubit {q} is outside a register of {r} qubits")]
    QubitOutOfRange { q: usize, r: usize },
    #[error("invalid bipartition: {0}")]
    InvalidBipartition(String),
    #[error("S-separability needs |S| ≥ 2, got {0}")]
    SetTooSmall(usize),
    #[error("state has zero norm")]
    ZeroState,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A set of qubit labels stored as a bitmask (bit `q` = label `q`).
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QubitSet(u32);

impl QubitSet {
    pub const EMPTY: QubitSet = QubitSet(0);

    pub fn from_mask(mask: u32) -> Self {
        QubitSet(mask)
    }

    pub fn mask(&self) -> u32 {
        self.0
    }

    pub fn singleton(q: usize) -> Self {
        QubitSet(1 << q)
    }

    /// `{0, …, r−1}`.
    pub fn full(r: usize) -> Self {
        QubitSet(if r >= 32 { u32::MAX } else { (1u32 << r) - 1 })
    }

    pub fn contains(&self, q: usize) -> bool {
        q < 32 && self.0 >> q & 1 == 1
    }

    pub fn insert(&mut self, q: usize) {
        self.0 |= 1 << q;
    }

    pub fn remove(&mut self, q: usize) {
        self.0 &= !(1 << q);
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    /// Labels in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..32).filter(move |q| self.contains(*q))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union(&self, other: &Self) -> Self {
        QubitSet(self.0 | other.0)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        QubitSet(self.0 & other.0)
    }

    pub fn difference(&self, other: &Self) -> Self {
        QubitSet(self.0 & !other.0)
    }

    /// Complement within a register of `r` qubits.
    pub fn complement(&self, r: usize) -> Self {
        QubitSet::full(r).difference(self)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn max_label(&self) -> Option<usize> {
        (self.0 != 0).then(|| 31 - self.0.leading_zeros() as usize)
    }

    /// Mask over basis indices of an `r`-qubit register selecting these qubits.
    pub fn index_mask(&self, r: usize) -> usize {
        self.iter().fold(0usize, |acc, q| acc | 1 << (r - 1 - q))
    }
}

impl FromIterator<usize> for QubitSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = QubitSet::EMPTY;
        for q in iter {
            s.insert(q);
        }
        s
    }
}

impl fmt::Display for QubitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.iter().map(|q| q.to_string()).collect();
        write!(f, "{{{}}}", labels.join(","))
    }
}

impl fmt::Debug for QubitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Extracts the bits of `qubits` (increasing label order, first label most
/// significant) from a basis index of an `r`-qubit register.
pub fn gather_bits(index: usize, qubits: &[usize], r: usize) -> usize {
    qubits
        .iter()
        .fold(0, |acc, &q| (acc << 1) | (index >> (r - 1 - q) & 1))
}

/// Inverse of [`gather_bits`]: places `value` onto `qubits`.
pub fn scatter_bits(value: usize, qubits: &[usize], r: usize) -> usize {
    let k = qubits.len();
    qubits.iter().enumerate().fold(0, |acc, (i, &q)| {
        acc | ((value >> (k - 1 - i) & 1) << (r - 1 - q))
    })
}

/// A vector of `2^r` amplitudes. Usually unit norm; intermediate results may
/// be unnormalized, which [`StateVector::is_normalized`] reports.
#[derive(Clone, PartialEq)]
pub struct StateVector {
    r: usize,
    amps: Vec<Scalar>,
}

impl StateVector {
    pub fn new(r: usize, amps: Vec<Scalar>) -> Result<Self, StateError> {
        if r > MAX_QUBITS {
            return Err(StateError::TooManyQubits { r, cap: MAX_QUBITS });
        }
        if amps.len() != 1 << r {
            return Err(StateError::SizeMismatch {
                expected: 1 << r,
                got: amps.len(),
            });
        }
        Ok(Self { r, amps })
    }

    pub fn from_complex(r: usize, amps: &[Complex64]) -> Result<Self, StateError> {
        Self::new(r, amps.iter().map(|&z| Scalar::Float(z)).collect())
    }

    /// The computational basis state `|index⟩`.
    pub fn basis(r: usize, index: usize) -> Result<Self, StateError> {
        let mut amps = vec![Scalar::zero(); 1 << r.min(MAX_QUBITS + 1)];
        if index >= amps.len() {
            return Err(StateError::SizeMismatch {
                expected: amps.len(),
                got: index,
            });
        }
        amps[index] = Scalar::one();
        Self::new(r, amps)
    }

    /// `|bits⟩` from a string such as `"0110"`.
    pub fn from_bitstring(bits: &str) -> Result<Self, StateError> {
        let r = bits.len();
        let mut index = 0usize;
        for (i, ch) in bits.chars().enumerate() {
            index = (index << 1)
                | match ch {
                    '0' => 0,
                    '1' => 1,
                    _ => {
                        return Err(StateError::Parse {
                            line: 1,
                            message: format!("bad bit `{ch}` at position {i}"),
                        })
                    }
                };
        }
        Self::basis(r, index)
    }

    /// `|0…0⟩`.
    pub fn zeros(r: usize) -> Result<Self, StateError> {
        Self::basis(r, 0)
    }

    /// `(|0⟩ + |1⟩)/√2` with exact amplitudes.
    pub fn plus() -> Self {
        Self {
            r: 1,
            amps: vec![Scalar::frac_1_sqrt_2(); 2],
        }
    }

    pub fn qubits(&self) -> usize {
        self.r
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Scalar] {
        &self.amps
    }

    pub fn amp(&self, index: usize) -> Scalar {
        self.amps[index]
    }

    pub fn is_exact(&self) -> bool {
        self.amps.iter().all(Scalar::is_exact)
    }

    pub fn to_float(&self) -> Self {
        Self {
            r: self.r,
            amps: self
                .amps
                .iter()
                .map(|a| Scalar::Float(a.to_complex()))
                .collect(),
        }
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.amps.iter().map(Scalar::to_complex).collect()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(Scalar::norm_sqr).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_normalized(&self, tol: &Tolerance) -> bool {
        (self.norm() - 1.0).abs() <= tol.threshold(1.0)
    }

    /// Unit vector in the same direction (floating point unless already unit).
    pub fn normalized(&self) -> Result<Self, StateError> {
        let n = self.norm();
        if n == 0.0 {
            return Err(StateError::ZeroState);
        }
        if self.is_exact() && (n - 1.0).abs() < 1e-15 {
            return Ok(self.clone());
        }
        Ok(Self {
            r: self.r,
            amps: self
                .amps
                .iter()
                .map(|a| Scalar::Float(a.to_complex() / n))
                .collect(),
        })
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.to_complex().conj() * b.to_complex())
            .sum()
    }

    /// `min_θ ‖self − e^{iθ} other‖` for vectors of equal norm.
    pub fn distance_up_to_phase(&self, other: &Self) -> f64 {
        let overlap = other.inner(self);
        let phase = if overlap.norm() > 0.0 {
            overlap / overlap.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a.to_complex() - phase * b.to_complex()).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `‖self − other‖`.
    pub fn distance(&self, other: &Self) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a.to_complex() - b.to_complex()).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn scale(&self, s: Scalar) -> Self {
        Self {
            r: self.r,
            amps: self.amps.iter().map(|a| *a * s).collect(),
        }
    }

    /// Bit of qubit `q` in basis index `index`.
    pub fn bit(&self, index: usize, q: usize) -> bool {
        index >> (self.r - 1 - q) & 1 == 1
    }

    fn check_qubit(&self, q: usize) -> Result<(), StateError> {
        if q >= self.r {
            return Err(StateError::QubitOutOfRange { q, r: self.r });
        }
        Ok(())
    }

    /// Applies the row-major 2×2 matrix `m` to qubit `q`.
    pub fn apply_single(&mut self, q: usize, m: &[Scalar; 4]) -> Result<(), StateError> {
        self.check_qubit(q)?;
        let stride = 1usize << (self.r - 1 - q);
        for base in 0..self.amps.len() {
            if base & stride != 0 {
                continue;
            }
            let (a0, a1) = (self.amps[base], self.amps[base | stride]);
            self.amps[base] = m[0] * a0 + m[1] * a1;
            self.amps[base | stride] = m[2] * a0 + m[3] * a1;
        }
        Ok(())
    }

    /// Multiplies every amplitude whose bits are 1 on all of `s` by `phase`.
    /// With `s = ∅` every amplitude qualifies.
    pub fn apply_phase_on_ones(&mut self, s: QubitSet, phase: Scalar) -> Result<(), StateError> {
        if let Some(q) = s.max_label() {
            self.check_qubit(q)?;
        }
        let mask = s.index_mask(self.r);
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & mask == mask {
                *a *= phase;
            }
        }
        Ok(())
    }

    /// Applies the classical permutation `index ↦ f(index)` to basis states.
    pub fn apply_permutation(&mut self, f: impl Fn(usize) -> usize) {
        let mut out = vec![Scalar::zero(); self.amps.len()];
        for (i, a) in self.amps.iter().enumerate() {
            out[f(i)] = *a;
        }
        self.amps = out;
    }

    /// Amplitude matrix with rows indexed by `rows` bits and columns by the
    /// remaining qubits, row-major.
    pub fn reshape(&self, rows: QubitSet) -> (usize, usize, Vec<Scalar>) {
        let a = rows.to_vec();
        let b = rows.complement(self.r).to_vec();
        let (nr, nc) = (1usize << a.len(), 1usize << b.len());
        let mut m = vec![Scalar::zero(); nr * nc];
        for (i, amp) in self.amps.iter().enumerate() {
            m[gather_bits(i, &a, self.r) * nc + gather_bits(i, &b, self.r)] = *amp;
        }
        (nr, nc, m)
    }
}

impl fmt::Debug for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .amps
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| format!("({a})|{i:0w$b}⟩", w = self.r))
            .collect();
        if parts.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&parts.join(" + "))
    }
}

/// `u ⊗ v` with `u` placed on the qubits of `placement` and `v` on the rest.
pub fn tensor(
    u: &StateVector,
    v: &StateVector,
    placement: QubitSet,
) -> Result<StateVector, StateError> {
    let r = u.r + v.r;
    if r > MAX_QUBITS {
        return Err(StateError::TooManyQubits { r, cap: MAX_QUBITS });
    }
    if placement.len() != u.r || placement.max_label().is_some_and(|q| q >= r) {
        return Err(StateError::SizeMismatch {
            expected: u.r,
            got: placement.len(),
        });
    }
    let a = placement.to_vec();
    let b = placement.complement(r).to_vec();
    let mut amps = vec![Scalar::zero(); 1 << r];
    for (i, x) in u.amps.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let hi = scatter_bits(i, &a, r);
        for (j, y) in v.amps.iter().enumerate() {
            amps[hi | scatter_bits(j, &b, r)] = *x * *y;
        }
    }
    StateVector::new(r, amps)
}

/// A split of the register into two nonempty complementary sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Bipartition {
    pub a: QubitSet,
    pub b: QubitSet,
}

impl Bipartition {
    pub fn new(a: QubitSet, b: QubitSet, r: usize) -> Result<Self, StateError> {
        if a.is_empty() || b.is_empty() {
            return Err(StateError::InvalidBipartition(
                "both sides must be nonempty".into(),
            ));
        }
        if !a.is_disjoint(&b) {
            return Err(StateError::InvalidBipartition(format!(
                "{a} and {b} overlap"
            )));
        }
        if a.union(&b) != QubitSet::full(r) {
            return Err(StateError::InvalidBipartition(format!(
                "{a} ∪ {b} does not cover {r} qubits"
            )));
        }
        Ok(Self { a, b })
    }

    /// `{A, Ā}` in a register of `r` qubits.
    pub fn from_side(a: QubitSet, r: usize) -> Result<Self, StateError> {
        Self::new(a, a.complement(r), r)
    }

    pub fn swapped(&self) -> Self {
        Self {
            a: self.b,
            b: self.a,
        }
    }

    /// True when both sides meet `s`.
    pub fn splits(&self, s: QubitSet) -> bool {
        !self.a.is_disjoint(&s) && !self.b.is_disjoint(&s)
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.a, self.b)
    }
}

/// Every unordered bipartition of `r` qubits, once each, ordered by `|A|`
/// and then lexicographically by the sorted labels of `A`. When both sides
/// have equal size, `A` is the side containing qubit 0.
pub fn bipartitions(r: usize) -> Vec<Bipartition> {
    let mut out = Vec::new();
    for size in 1..=r / 2 {
        let mut sides: Vec<QubitSet> = (1u32..(1 << r))
            .map(QubitSet::from_mask)
            .filter(|s| s.len() == size && (2 * size < r || s.contains(0)))
            .collect();
        sides.sort_by_key(|s| s.to_vec());
        out.extend(sides.into_iter().map(|a| Bipartition {
            a,
            b: a.complement(r),
        }));
    }
    out
}

// Exact rank ≤ 1 test on a dense matrix; None on overflow.
fn exact_rank_le1(nr: usize, nc: usize, m: &[Scalar]) -> Option<bool> {
    let Some(p) = m.iter().position(|x| !x.is_zero()) else {
        return Some(true);
    };
    let (r0, c0) = (p / nc, p % nc);
    let pv = m[p].as_exact()?;
    for r in 0..nr {
        let a = m[r * nc + c0].as_exact()?;
        for c in 0..nc {
            let v = m[r * nc + c].as_exact()?;
            let b = m[r0 * nc + c].as_exact()?;
            if v.checked_mul(&pv)? != a.checked_mul(&b)? {
                return Some(false);
            }
        }
    }
    Some(true)
}

fn rank_le1(psi: &StateVector, side: QubitSet, tol: &Tolerance) -> bool {
    let (nr, nc, m) = psi.reshape(side);
    if psi.is_exact() {
        if let Some(ans) = exact_rank_le1(nr, nc, &m) {
            return ans;
        }
    }
    let data: Vec<Complex64> = m.iter().map(Scalar::to_complex).collect();
    numerical_rank(nr, nc, &data, tol) <= 1
}

/// Whether `psi` is a product across `p` (Schmidt rank one).
///
/// Exact states are decided exactly; float states use the singular value
/// threshold `rel_eps·s₁ + abs_eps`. The zero vector does not separate.
pub fn separates_at(psi: &StateVector, p: &Bipartition, tol: &Tolerance) -> bool {
    psi.norm_sqr() > 0.0 && rank_le1(psi, p.a, tol)
}

/// Unit factors `(ψ_A, ψ_B)` with `psi ≈ ψ_A ⊗ ψ_B` up to a global phase,
/// when `psi` separates at `p`.
pub fn split_at(
    psi: &StateVector,
    p: &Bipartition,
    tol: &Tolerance,
) -> Option<(StateVector, StateVector)> {
    if !separates_at(psi, p, tol) {
        return None;
    }
    let (nr, nc, m) = psi.reshape(p.a);
    let data: Vec<Complex64> = m.iter().map(Scalar::to_complex).collect();
    let (sigma, u, v) = top_singular_triplet(nr, nc, &data);
    // Attach the singular value to the left factor so the product has psi's norm.
    let left: Vec<Complex64> = u.iter().map(|z| z * sigma).collect();
    let right: Vec<Complex64> = v.iter().map(|z| z.conj()).collect();
    let fa = StateVector::from_complex(p.a.len(), &left).ok()?;
    let fb = StateVector::from_complex(p.b.len(), &right).ok()?;
    Some((fa, fb))
}

/// The first bipartition (in [`bipartitions`] order) that splits `s` and at
/// which `psi` separates; `None` means `psi` is `S`-entangled.
pub fn is_s_separable(
    psi: &StateVector,
    s: QubitSet,
    tol: &Tolerance,
) -> Result<Option<Bipartition>, StateError> {
    if s.len() < 2 {
        return Err(StateError::SetTooSmall(s.len()));
    }
    if let Some(q) = s.max_label().filter(|&q| q >= psi.r) {
        return Err(StateError::QubitOutOfRange { q, r: psi.r });
    }
    Ok(bipartitions(psi.r)
        .into_iter()
        .filter(|p| p.splits(s))
        .find(|p| separates_at(psi, p, tol)))
}

/// Projection onto basis states with 1 on every qubit of `s` (unnormalized).
pub fn ones_projection(psi: &StateVector, s: QubitSet) -> StateVector {
    let mask = s.index_mask(psi.r);
    let amps = psi
        .amps
        .iter()
        .enumerate()
        .map(|(i, a)| if i & mask == mask { *a } else { Scalar::zero() })
        .collect();
    StateVector { r: psi.r, amps }
}

pub fn ones_projection_norm(psi: &StateVector, s: QubitSet) -> f64 {
    ones_projection(psi, s).norm()
}

/// Normalized complex Gaussian amplitudes.
pub fn random_state(r: usize, rng: &mut SeededRng) -> Result<StateVector, StateError> {
    if r > MAX_QUBITS {
        return Err(StateError::TooManyQubits { r, cap: MAX_QUBITS });
    }
    let amps: Vec<Complex64> = (0..1usize << r).map(|_| random_complex(rng)).collect();
    StateVector::from_complex(r, &amps)?.normalized()
}

/// `ψ_A ⊗ ψ_B` with independent random factors.
pub fn random_product_state(
    p: &Bipartition,
    rng: &mut SeededRng,
) -> Result<StateVector, StateError> {
    let fa = random_state(p.a.len(), rng)?;
    let fb = random_state(p.b.len(), rng)?;
    tensor(&fa, &fb, p.a)
}

/// Reduced density matrix on `keep` (row-major, `2^|keep|` square).
pub fn reduced_density(psi: &StateVector, keep: QubitSet) -> Vec<Complex64> {
    let (nr, nc, m) = psi.reshape(keep);
    let data: Vec<Complex64> = m.iter().map(Scalar::to_complex).collect();
    let mut rho = vec![Complex64::new(0.0, 0.0); nr * nr];
    for i in 0..nr {
        for j in 0..nr {
            rho[i * nr + j] = (0..nc)
                .map(|c| data[i * nc + c] * data[j * nc + c].conj())
                .sum();
        }
    }
    rho
}

/// Exact reduced density matrix, when every product stays in the ring.
pub fn reduced_density_exact(psi: &StateVector, keep: QubitSet) -> Option<Vec<ExactScalar>> {
    let (nr, nc, m) = psi.reshape(keep);
    let mut rho = vec![ExactScalar::ZERO; nr * nr];
    for i in 0..nr {
        for j in 0..nr {
            let mut acc = ExactScalar::ZERO;
            for c in 0..nc {
                let x = m[i * nc + c].as_exact()?;
                let y = m[j * nc + c].as_exact()?.conj();
                acc = acc.checked_add(&x.checked_mul(&y)?)?;
            }
            rho[i * nr + j] = acc;
        }
    }
    Some(rho)
}

pub(crate) fn format_number_pair(a: &Scalar) -> String {
    if let Scalar::Exact(e) = a {
        let (x, b, y, d, k) = e.parts();
        if b == 0 && d == 0 && k == 0 {
            return format!("{x} {y}");
        }
    }
    let z = a.to_complex();
    format!("{:?} {:?}", z.re, z.im)
}

/// One `bitstring re im` line per nonzero amplitude, in basis order.
pub fn format_state(psi: &StateVector) -> String {
    let mut out = String::new();
    for (i, a) in psi.amps.iter().enumerate() {
        if !a.is_zero() {
            out.push_str(&format!("{i:0w$b} {}\n", format_number_pair(a), w = psi.r));
        }
    }
    if psi.r == 0 && out.is_empty() {
        out.push_str(" 0 0\n");
    }
    out
}

/// Parses the dump format; integer pairs load as exact values.
pub fn parse_state(text: &str) -> Result<StateVector, StateError> {
    let mut r: Option<usize> = None;
    let mut entries: HashMap<usize, Scalar> = HashMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |message: String| StateError::Parse { line, message };
        let toks: Vec<&str> = content.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(err(format!(
                "expected `bitstring re im`, found {} fields",
                toks.len()
            )));
        }
        let bits = toks[0];
        if bits.chars().any(|c| c != '0' && c != '1') {
            return Err(err(format!("bad bitstring `{bits}`")));
        }
        if bits.len() > MAX_QUBITS {
            return Err(err(format!(
                "{} qubits exceed the cap of {MAX_QUBITS}",
                bits.len()
            )));
        }
        match r {
            None => r = Some(bits.len()),
            Some(n) if n != bits.len() => {
                return Err(err(format!(
                    "bitstring length {} differs from {n}",
                    bits.len()
                )))
            }
            _ => {}
        }
        let index = usize::from_str_radix(bits, 2).map_err(|e| err(e.to_string()))?;
        let value = match (toks[1].parse::<i64>(), toks[2].parse::<i64>()) {
            (Ok(a), Ok(b)) => Scalar::Exact(ExactScalar::gaussian(a, b)),
            _ => {
                let num = |s: &str| {
                    s.parse::<f64>()
                        .ok()
                        .filter(|v| v.is_finite())
                        .ok_or_else(|| err(format!("bad number `{s}`")))
                };
                Scalar::float(num(toks[1])?, num(toks[2])?)
            }
        };
        if entries.insert(index, value).is_some() {
            return Err(err(format!("basis state {bits} listed twice")));
        }
    }
    let r = r.ok_or(StateError::Parse {
        line: 0,
        message: "no amplitudes".into(),
    })?;
    let mut amps = vec![Scalar::zero(); 1 << r];
    for (i, v) in entries {
        amps[i] = v;
    }
    StateVector::new(r, amps)
}
