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

//! Text format for lists of `r`-qubit unitaries.
//!
//! ```text
//! qubits 2
//! unitary
//! tensor H X
//! unitary
//! row 1 0 0 0 0 0 0 0
//! ...
//! ```
//!
//! A `tensor` line names one gate per qubit, most significant first. A
//! dense unitary is `2^r` `row` lines of `2^r` complex entries as `re im`
//! pairs. `#` starts a comment.

use num_complex::Complex64;

use super::{Operator, ParityError};
use crate::circuit::{NamedGate, OneQubitGate};
use crate::numerics::Tolerance;
use crate::state::MAX_QUBITS;

fn err(line: usize, message: impl Into<String>) -> ParityError {
    ParityError::UnitaryParse {
        line,
        message: message.into(),
    }
}

enum Pending {
    None,
    Rows {
        start: usize,
        data: Vec<Complex64>,
        rows: usize,
    },
}

/// Parses the register size and the unitaries in file order.
pub fn parse_unitaries(text: &str) -> Result<(usize, Vec<Operator>), ParityError> {
    let tol = Tolerance::default();
    let mut r: Option<usize> = None;
    let mut units = Vec::new();
    let mut pending = Pending::None;
    let mut open = false;
    let mut last_line = 0;
    let flush =
        |pending: &mut Pending, r: usize, units: &mut Vec<Operator>| -> Result<(), ParityError> {
            if let Pending::Rows { start, data, rows } = std::mem::replace(pending, Pending::None) {
                let dim = 1usize << r;
                if rows != dim {
                    return Err(err(
                        start,
                        format!("unitary has {rows} rows, expected {dim}"),
                    ));
                }
                units.push(Operator::new(r, data, &tol).map_err(|e| err(start, e.to_string()))?);
            }
            Ok(())
        };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        let mut tokens = content.split_whitespace();
        let Some(head) = tokens.next() else { continue };
        let rest: Vec<&str> = tokens.collect();
        match head {
            "qubits" => {
                if r.is_some() {
                    return Err(err(line, "duplicate qubits header"));
                }
                let [v] = rest[..] else {
                    return Err(err(line, "qubits takes one integer"));
                };
                let v: usize = v
                    .parse()
                    .map_err(|_| err(line, format!("bad qubit count '{v}'")))?;
                if v == 0 || v > MAX_QUBITS {
                    return Err(err(
                        line,
                        format!("qubit count must be in 1..={MAX_QUBITS}"),
                    ));
                }
                r = Some(v);
            }
            "unitary" => {
                let r = r.ok_or_else(|| err(line, "unitary before the qubits header"))?;
                if !rest.is_empty() {
                    return Err(err(line, "unitary takes no arguments"));
                }
                if open && matches!(pending, Pending::None) {
                    return Err(err(line, "previous unitary is empty"));
                }
                flush(&mut pending, r, &mut units)?;
                open = true;
            }
            "tensor" => {
                let r = r.ok_or_else(|| err(line, "tensor before the qubits header"))?;
                if !open || !matches!(pending, Pending::None) {
                    return Err(err(line, "tensor must directly follow unitary"));
                }
                if rest.len() != r {
                    return Err(err(
                        line,
                        format!("tensor needs {r} gates, got {}", rest.len()),
                    ));
                }
                let gates = rest
                    .iter()
                    .map(|g| {
                        NamedGate::from_symbol(g)
                            .map(OneQubitGate::named)
                            .ok_or_else(|| err(line, format!("unknown gate '{g}'")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                units.push(Operator::tensor(&gates));
                open = false;
            }
            "row" => {
                let r = r.ok_or_else(|| err(line, "row before the qubits header"))?;
                if !open {
                    return Err(err(line, "row outside a unitary"));
                }
                let dim = 1usize << r;
                if rest.len() != 2 * dim {
                    return Err(err(
                        line,
                        format!("row needs {} numbers, got {}", 2 * dim, rest.len()),
                    ));
                }
                let nums = rest
                    .iter()
                    .map(|t| {
                        t.parse::<f64>()
                            .ok()
                            .filter(|x| x.is_finite())
                            .ok_or_else(|| err(line, format!("bad number '{t}'")))
                    })
                    .collect::<Result<Vec<f64>, _>>()?;
                let entries = nums.chunks(2).map(|p| Complex64::new(p[0], p[1]));
                match &mut pending {
                    Pending::None => {
                        pending = Pending::Rows {
                            start: line,
                            data: entries.collect(),
                            rows: 1,
                        }
                    }
                    Pending::Rows { data, rows, .. } => {
                        data.extend(entries);
                        *rows += 1;
                    }
                }
            }
            other => return Err(err(line, format!("unknown directive '{other}'"))),
        }
    }
    let r = r.ok_or_else(|| err(last_line.max(1), "missing qubits header"))?;
    if open && matches!(pending, Pending::None) {
        return Err(err(last_line, "last unitary is empty"));
    }
    flush(&mut pending, r, &mut units)?;
    Ok((r, units))
}

/// Dense rendering that [`parse_unitaries`] reads back exactly.
pub fn format_unitaries(r: usize, units: &[Operator]) -> String {
    let mut out = format!("qubits {r}\n");
    let dim = 1usize << r;
    for u in units {
        out.push_str("unitary\n");
        for i in 0..dim {
            let row: Vec<String> = (0..dim)
                .map(|j| u.entry(i, j))
                .map(|z| format!("{:?} {:?}", z.re, z.im))
                .collect();
            out.push_str(&format!("row {}\n", row.join(" ")));
        }
    }
    out
}
