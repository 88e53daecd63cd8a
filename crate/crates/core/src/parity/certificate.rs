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

//! Self-verifying refutation certificates and their key=value documents.

use std::fmt::Write as _;

use num_complex::Complex64;

use super::{has_pure_parity, ParityError};
use crate::circuit::{parse_circuit, serialize_circuit, simulate, Circuit};
use crate::numerics::Tolerance;
use crate::state::{format_state, parse_state, reduced_density, tensor, QubitSet, StateVector};

/// What a certificate demonstrates about a circuit and ancilla state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateKind {
    /// Flipping input `qubit` leaves the final target state unchanged.
    TargetIndependence { qubit: usize },
    /// Two inputs of opposite pure parity give the same final target state.
    ParityMismatch,
    /// A classical input whose final target is not its parity.
    WrongOutput,
}

impl CertificateKind {
    fn tag(&self) -> &'static str {
        match self {
            CertificateKind::TargetIndependence { .. } => "target-independence",
            CertificateKind::ParityMismatch => "parity-mismatch",
            CertificateKind::WrongOutput => "wrong-output",
        }
    }
}

/// Input-register states, their claimed parities, and the recorded final
/// target density matrices (row-major 2×2).
#[derive(Clone, Debug, PartialEq)]
pub struct RefutationCertificate {
    pub kind: CertificateKind,
    pub circuit: Circuit,
    pub ancilla: StateVector,
    pub inputs: Vec<StateVector>,
    pub parities: Vec<bool>,
    pub targets: Vec<[Complex64; 4]>,
}

fn target_density(final_state: &StateVector) -> [Complex64; 4] {
    let rho = reduced_density(final_state, QubitSet::singleton(0));
    [rho[0], rho[1], rho[2], rho[3]]
}

impl RefutationCertificate {
    /// Simulates each input and records the final target states.
    pub(crate) fn record(
        kind: CertificateKind,
        circuit: &Circuit,
        ancilla: &StateVector,
        inputs: Vec<(StateVector, bool)>,
    ) -> Result<Self, ParityError> {
        let mut targets = Vec::with_capacity(inputs.len());
        for (x, _) in &inputs {
            let init = join(x, ancilla)?;
            targets.push(target_density(&simulate(circuit, &init)?));
        }
        let (inputs, parities) = inputs.into_iter().unzip();
        Ok(Self {
            kind,
            circuit: circuit.clone(),
            ancilla: ancilla.clone(),
            inputs,
            parities,
            targets,
        })
    }

    /// Line-oriented `key=value` text; multi-line values use `|` separators.
    pub fn to_document(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "kind={}", self.kind.tag());
        if let CertificateKind::TargetIndependence { qubit } = self.kind {
            let _ = writeln!(out, "qubit={qubit}");
        }
        let _ = writeln!(
            out,
            "circuit={}",
            serialize_circuit(&self.circuit)
                .trim_end()
                .replace('\n', "|")
        );
        let ancilla = if self.ancilla.qubits() == 0 {
            "none".to_string()
        } else {
            joined_state(&self.ancilla)
        };
        let _ = writeln!(out, "ancilla={ancilla}");
        let _ = writeln!(out, "inputs={}", self.inputs.len());
        for (i, ((x, p), rho)) in self
            .inputs
            .iter()
            .zip(&self.parities)
            .zip(&self.targets)
            .enumerate()
        {
            let _ = writeln!(out, "input.{i}.parity={}", u8::from(*p));
            let _ = writeln!(out, "input.{i}.state={}", joined_state(x));
            let nums: Vec<String> = rho
                .iter()
                .flat_map(|z| [format!("{:?}", z.re), format!("{:?}", z.im)])
                .collect();
            let _ = writeln!(out, "input.{i}.target={}", nums.join(" "));
        }
        out
    }
}

fn joined_state(psi: &StateVector) -> String {
    format_state(psi).trim_end().replace('\n', "|")
}

/// `|0⟩ ⊗ inputs ⊗ ancilla`.
fn join(inputs: &StateVector, ancilla: &StateVector) -> Result<StateVector, ParityError> {
    let head = tensor(&StateVector::zeros(1)?, inputs, QubitSet::singleton(0))?;
    if ancilla.qubits() == 0 {
        return Ok(head.scale(ancilla.amp(0)));
    }
    Ok(tensor(&head, ancilla, QubitSet::full(head.qubits()))?)
}

pub fn parse_certificate(text: &str) -> Result<RefutationCertificate, ParityError> {
    let mut fields: Vec<(usize, &str, &str)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| ParityError::CertificateParse {
                line: idx + 1,
                message: format!("expected key=value, got `{line}`"),
            })?;
        fields.push((idx + 1, k.trim(), v.trim()));
    }
    let get = |key: &str| -> Result<(usize, &str), ParityError> {
        fields
            .iter()
            .find(|(_, k, _)| *k == key)
            .map(|(l, _, v)| (*l, *v))
            .ok_or_else(|| ParityError::CertificateParse {
                line: 0,
                message: format!("missing key `{key}`"),
            })
    };
    let perr = |line: usize, message: String| ParityError::CertificateParse { line, message };
    let (kl, kind_text) = get("kind")?;
    let kind = match kind_text {
        "target-independence" => {
            let (ql, q) = get("qubit")?;
            CertificateKind::TargetIndependence {
                qubit: q
                    .parse()
                    .map_err(|_| perr(ql, format!("bad qubit `{q}`")))?,
            }
        }
        "parity-mismatch" => CertificateKind::ParityMismatch,
        "wrong-output" => CertificateKind::WrongOutput,
        other => return Err(perr(kl, format!("unknown kind `{other}`"))),
    };
    let (cl, circuit_text) = get("circuit")?;
    let circuit =
        parse_circuit(&circuit_text.replace('|', "\n")).map_err(|e| perr(cl, e.to_string()))?;
    let (al, anc) = get("ancilla")?;
    let ancilla = if anc == "none" {
        StateVector::zeros(0)?
    } else {
        parse_state(&anc.replace('|', "\n")).map_err(|e| perr(al, e.to_string()))?
    };
    let (nl, count) = get("inputs")?;
    let count: usize = count
        .parse()
        .map_err(|_| perr(nl, format!("bad input count `{count}`")))?;
    let mut inputs = Vec::with_capacity(count);
    let mut parities = Vec::with_capacity(count);
    let mut targets = Vec::with_capacity(count);
    for i in 0..count {
        let (pl, p) = get(&format!("input.{i}.parity"))?;
        parities.push(match p {
            "0" => false,
            "1" => true,
            _ => return Err(perr(pl, format!("bad parity `{p}`"))),
        });
        let (sl, s) = get(&format!("input.{i}.state"))?;
        inputs.push(parse_state(&s.replace('|', "\n")).map_err(|e| perr(sl, e.to_string()))?);
        let (tl, t) = get(&format!("input.{i}.target"))?;
        let nums: Vec<f64> = t
            .split_whitespace()
            .map(|w| w.parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|_| perr(tl, "bad number".into()))?;
        if nums.len() != 8 {
            return Err(perr(tl, format!("expected 8 numbers, got {}", nums.len())));
        }
        targets.push([0, 1, 2, 3].map(|k| Complex64::new(nums[2 * k], nums[2 * k + 1])));
    }
    Ok(RefutationCertificate {
        kind,
        circuit,
        ancilla,
        inputs,
        parities,
        targets,
    })
}

fn max_gap(a: &[Complex64; 4], b: &[Complex64; 4]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Re-simulates every recorded input and checks the claim of `cert.kind`.
pub fn verify_certificate(
    cert: &RefutationCertificate,
    tol: &Tolerance,
) -> Result<(), ParityError> {
    let reject = |m: String| Err(ParityError::Rejected(m));
    let c = &cert.circuit;
    let n = c.inputs();
    let eps = tol.threshold(1.0);
    if cert.ancilla.qubits() != c.ancillas() {
        return reject(format!(
            "ancilla has {} qubits, circuit has {} ancillas",
            cert.ancilla.qubits(),
            c.ancillas()
        ));
    }
    if cert.inputs.len() != cert.parities.len() || cert.inputs.len() != cert.targets.len() {
        return reject("input, parity and target counts differ".into());
    }
    let want = match cert.kind {
        CertificateKind::WrongOutput => 1,
        _ => 2,
    };
    if cert.inputs.len() != want {
        return reject(format!(
            "{} needs {want} inputs, got {}",
            cert.kind.tag(),
            cert.inputs.len()
        ));
    }
    for (i, ((x, &p), recorded)) in cert
        .inputs
        .iter()
        .zip(&cert.parities)
        .zip(&cert.targets)
        .enumerate()
    {
        if x.qubits() != n {
            return reject(format!(
                "input {i} has {} qubits, circuit has {n} inputs",
                x.qubits()
            ));
        }
        if (x.norm() - 1.0).abs() > eps {
            return reject(format!("input {i} has norm {}", x.norm()));
        }
        if !has_pure_parity(x, p, tol) {
            return reject(format!(
                "input {i} does not have pure parity {}",
                u8::from(p)
            ));
        }
        let head = tensor(&StateVector::zeros(1)?, x, QubitSet::singleton(0))?;
        let init = if c.ancillas() == 0 {
            head.scale(cert.ancilla.amp(0))
        } else {
            tensor(&head, &cert.ancilla, QubitSet::full(1 + n))?
        };
        let out = simulate(c, &init)?;
        let rho = reduced_density(&out, QubitSet::singleton(0));
        let fresh = [rho[0], rho[1], rho[2], rho[3]];
        if max_gap(&fresh, recorded) > eps {
            return reject(format!(
                "input {i}: recorded target state differs from simulation by {:e}",
                max_gap(&fresh, recorded)
            ));
        }
    }
    match cert.kind {
        CertificateKind::WrongOutput => {
            let x = &cert.inputs[0];
            let support: Vec<usize> = (0..x.dim()).filter(|&i| x.amp(i).abs() > eps).collect();
            if support.len() != 1 {
                return reject("wrong-output input must be a classical basis state".into());
            }
            let rho = &cert.targets[0];
            let wrong = if cert.parities[0] {
                rho[0].re
            } else {
                rho[3].re
            };
            if wrong <= eps {
                return reject(format!(
                    "target equals the parity (wrong-value weight {wrong:e})"
                ));
            }
        }
        kind => {
            if cert.parities[0] == cert.parities[1] {
                return reject("inputs must have opposite parities".into());
            }
            let gap = max_gap(&cert.targets[0], &cert.targets[1]);
            if gap > eps {
                return reject(format!("final target states differ by {gap:e}"));
            }
            if let CertificateKind::TargetIndependence { qubit } = kind {
                if qubit == 0 || qubit > n {
                    return reject(format!("qubit {qubit} is not an input"));
                }
                let bit = 1usize << (n - qubit);
                let mut flipped = cert.inputs[0].clone();
                flipped.apply_permutation(|i| i ^ bit);
                if flipped.distance(&cert.inputs[1]) > eps {
                    return reject(format!("inputs do not differ by flipping qubit {qubit}"));
                }
            }
        }
    }
    Ok(())
}
