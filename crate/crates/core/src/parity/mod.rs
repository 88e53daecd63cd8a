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

//! Parity subspaces, states that switch off C-SIGN gates while keeping a
//! pure input parity, and refuters for shallow circuits claimed to compute
//! parity.

mod certificate;
mod refute;
mod text;

use num_complex::Complex64;
use thiserror::Error;

use crate::circuit::{CircuitError, OneQubitGate};
use crate::linalg::{null_vector, random_unitary};
use crate::numerics::{Scalar, SeededRng, Tolerance};
use crate::state::{StateError, StateVector, MAX_QUBITS};

pub use certificate::{
    parse_certificate, verify_certificate, CertificateKind, RefutationCertificate,
};
pub use refute::{input_state, refute_depth1, refute_depth2_structural, Depth2Outcome, Tactic};
pub use text::{format_unitaries, parse_unitaries};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParityError {
    #[error("kill-parity needs k < 2^(r-1) = {limit} constraints, got {k}")]
    TooManyConstraints { k: usize, limit: usize },
    #[error("constraint residual {residual:e} exceeds tolerance")]
    Degenerate { residual: f64 },
    #[error("operator acts on {got} qubits, expected {expected}")]
    OperatorSize { expected: usize, got: usize },
    #[error("operator is not unitary (deviation {0:e})")]
    NonUnitary(f64),
    #[error("circuit shape: {0}")]
    Shape(String),
    #[error("constructed certificate failed verification: {0}")]
    LemmaViolation(String),
    #[error("certificate rejected: {0}")]
    Rejected(String),
    #[error("certificate line {line}: {message}")]
    CertificateParse { line: usize, message: String },
    #[error("unitaries line {line}: {message}")]
    UnitaryParse { line: usize, message: String },
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    State(#[from] StateError),
}

fn parity_of(x: usize) -> bool {
    x.count_ones() % 2 == 1
}

/// Basis indices of `𝒫_b` on `r` qubits, ascending.
pub fn parity_basis_indices(r: usize, b: bool) -> Vec<usize> {
    (0..1usize << r).filter(|&x| parity_of(x) == b).collect()
}

/// Bitstrings spanning `𝒫_b`, sorted.
pub fn parity_basis(r: usize, b: bool) -> Vec<String> {
    parity_basis_indices(r, b)
        .into_iter()
        .map(|x| format!("{x:0r$b}"))
        .collect()
}

/// Norm of the component of `psi` outside `𝒫_b`.
pub fn parity_residual(psi: &StateVector, b: bool) -> f64 {
    psi.amps()
        .iter()
        .enumerate()
        .filter(|(i, _)| parity_of(*i) != b)
        .map(|(_, a)| a.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// `psi ∈ 𝒫_b`: exactly for exact states, else within `tol` of `‖psi‖`.
pub fn has_pure_parity(psi: &StateVector, b: bool, tol: &Tolerance) -> bool {
    if psi.is_exact() {
        return psi
            .amps()
            .iter()
            .enumerate()
            .all(|(i, a)| parity_of(i) == b || a.is_zero());
    }
    parity_residual(psi, b) <= tol.threshold(psi.norm())
}

/// A dense `2^r × 2^r` unitary, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    r: usize,
    data: Vec<Complex64>,
}

impl Operator {
    pub fn new(r: usize, data: Vec<Complex64>, tol: &Tolerance) -> Result<Self, ParityError> {
        if r > MAX_QUBITS {
            return Err(StateError::TooManyQubits { r, cap: MAX_QUBITS }.into());
        }
        let dim = 1usize << r;
        if data.len() != dim * dim {
            return Err(StateError::SizeMismatch {
                expected: dim * dim,
                got: data.len(),
            }
            .into());
        }
        let op = Self { r, data };
        let dev = op.unitarity_deviation();
        if !dev.is_finite() || dev > tol.threshold(1.0) {
            return Err(ParityError::NonUnitary(dev));
        }
        Ok(op)
    }

    pub fn identity(r: usize) -> Self {
        let dim = 1usize << r;
        let data = (0..dim * dim)
            .map(|k| {
                if k / dim == k % dim {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        Self { r, data }
    }

    /// `g₀ ⊗ g₁ ⊗ ⋯` with `g₀` on the most significant qubit.
    pub fn tensor(gates: &[OneQubitGate]) -> Self {
        gates.iter().fold(Self::identity(0), |acc, g| {
            let m = g.to_complex();
            let (da, r) = (1usize << acc.r, acc.r + 1);
            let dim = 2 * da;
            let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
            for i in 0..dim {
                for j in 0..dim {
                    data[i * dim + j] =
                        acc.data[(i >> 1) * da + (j >> 1)] * m[(i & 1) * 2 + (j & 1)];
                }
            }
            Self { r, data }
        })
    }

    /// Haar-random unitary on `r` qubits.
    pub fn random(r: usize, rng: &mut SeededRng) -> Self {
        Self {
            r,
            data: random_unitary(1 << r, rng),
        }
    }

    pub fn qubits(&self) -> usize {
        self.r
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * (1 << self.r) + col]
    }

    /// `self · first`: `first` acts before `self`.
    pub fn product(&self, first: &Self) -> Self {
        let dim = 1usize << self.r;
        let data = (0..dim * dim)
            .map(|k| {
                let (i, j) = (k / dim, k % dim);
                (0..dim)
                    .map(|t| self.data[i * dim + t] * first.data[t * dim + j])
                    .sum()
            })
            .collect();
        Self { r: self.r, data }
    }

    fn unitarity_deviation(&self) -> f64 {
        let dim = 1usize << self.r;
        let mut worst: f64 = 0.0;
        for i in 0..dim {
            for j in 0..dim {
                let dot: Complex64 = (0..dim)
                    .map(|t| self.data[t * dim + i].conj() * self.data[t * dim + j])
                    .sum();
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - want).norm());
            }
        }
        worst
    }

    pub fn apply(&self, psi: &StateVector) -> Result<StateVector, ParityError> {
        if psi.qubits() != self.r {
            return Err(ParityError::OperatorSize {
                expected: psi.qubits(),
                got: self.r,
            });
        }
        let dim = 1usize << self.r;
        let v = psi.to_complex();
        let out: Vec<Complex64> = (0..dim)
            .map(|i| (0..dim).map(|j| self.data[i * dim + j] * v[j]).sum())
            .collect();
        Ok(StateVector::from_complex(self.r, &out)?)
    }
}

/// Largest `|⟨1^r|U_i|psi⟩|` over `units`.
pub fn kill_residual(units: &[Operator], psi: &StateVector) -> f64 {
    let v = psi.to_complex();
    units
        .iter()
        .map(|u| {
            let last = (1usize << u.r) - 1;
            v.iter()
                .enumerate()
                .map(|(j, a)| u.entry(last, j) * a)
                .sum::<Complex64>()
                .norm()
        })
        .fold(0.0, f64::max)
}

/// A unit state of pure parity `b` with `⟨1^r|U_i|ψ⟩ = 0` for every `U_i`.
///
/// Solves the `k × 2^(r−1)` system of rows `⟨1^r|U_i` restricted to the
/// `𝒫_b` basis; the free variable chosen is the last free column.
pub fn kill_parity_state(
    r: usize,
    units: &[Operator],
    b: bool,
    tol: &Tolerance,
) -> Result<StateVector, ParityError> {
    if r == 0 || r > MAX_QUBITS {
        return Err(ParityError::Shape(format!(
            "kill-parity needs 1 ≤ r ≤ {MAX_QUBITS}, got {r}"
        )));
    }
    let limit = 1usize << (r - 1);
    if units.len() >= limit {
        return Err(ParityError::TooManyConstraints {
            k: units.len(),
            limit,
        });
    }
    if let Some(u) = units.iter().find(|u| u.r != r) {
        return Err(ParityError::OperatorSize {
            expected: r,
            got: u.r,
        });
    }
    let basis = parity_basis_indices(r, b);
    let last = (1usize << r) - 1;
    let rows: Vec<Complex64> = units
        .iter()
        .flat_map(|u| basis.iter().map(move |&x| u.entry(last, x)))
        .collect();
    let coeffs =
        null_vector(units.len(), basis.len(), &rows, tol).ok_or(ParityError::Degenerate {
            residual: f64::INFINITY,
        })?;
    let mut amps = vec![Scalar::zero(); 1 << r];
    for (&x, c) in basis.iter().zip(coeffs) {
        amps[x] = Scalar::Float(c);
    }
    let psi = StateVector::new(r, amps)?;
    let residual = kill_residual(units, &psi);
    if residual > tol.threshold(1.0) {
        return Err(ParityError::Degenerate { residual });
    }
    Ok(psi)
}

#[cfg(test)]
mod tests;
