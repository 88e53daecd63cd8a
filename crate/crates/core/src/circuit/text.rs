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

//! Line-oriented circuit files.
//!
//! ```text
//! qubits 4
//! inputs 3
//! ancillas 0
//! layer 0.5
//! u 0 H
//! layer 1
//! cz 0 1
//! geta 0 1 2 3
//! layer 1.5
//! u 2 matrix 0 0 1 0 1 0 0 0
//! ```
//!
//! `#` starts a comment. Headers come first; layers appear in increasing
//! order and the depth is the highest integer layer reached. Integer number
//! pairs load as exact values.

use std::fmt;

use thiserror::Error;

use super::{Circuit, CircuitError, Layer, MultiKind, MultiQubitGate, NamedGate, OneQubitGate};
use crate::numerics::{ExactScalar, Scalar, Tolerance};
use crate::state::{format_number_pair, QubitSet, MAX_QUBITS};

/// The class of a circuit file error.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParseErrorKind {
    EmptyInput,
    UnknownDirective,
    MissingHeader,
    DuplicateHeader,
    HeaderAfterLayer,
    BadInteger,
    BadNumber,
    MissingArgument,
    TrailingTokens,
    QubitCountMismatch,
    TooManyQubits,
    QubitOutOfRange,
    BadLayerIndex,
    LayerOrder,
    GateOutsideLayer,
    WrongLayerKind,
    UnknownGate,
    NonUnitary,
    DuplicateSingle,
    LayerDisjointness,
    GEtaModulus,
    GEtaTrivial,
    EmptyGate,
    DuplicateQubit,
}

impl ParseErrorKind {
    pub const ALL: [ParseErrorKind; 24] = [
        ParseErrorKind::EmptyInput,
        ParseErrorKind::UnknownDirective,
        ParseErrorKind::MissingHeader,
        ParseErrorKind::DuplicateHeader,
        ParseErrorKind::HeaderAfterLayer,
        ParseErrorKind::BadInteger,
        ParseErrorKind::BadNumber,
        ParseErrorKind::MissingArgument,
        ParseErrorKind::TrailingTokens,
        ParseErrorKind::QubitCountMismatch,
        ParseErrorKind::TooManyQubits,
        ParseErrorKind::QubitOutOfRange,
        ParseErrorKind::BadLayerIndex,
        ParseErrorKind::LayerOrder,
        ParseErrorKind::GateOutsideLayer,
        ParseErrorKind::WrongLayerKind,
        ParseErrorKind::UnknownGate,
        ParseErrorKind::NonUnitary,
        ParseErrorKind::DuplicateSingle,
        ParseErrorKind::LayerDisjointness,
        ParseErrorKind::GEtaModulus,
        ParseErrorKind::GEtaTrivial,
        ParseErrorKind::EmptyGate,
        ParseErrorKind::DuplicateQubit,
    ];

    pub fn description(&self) -> &'static str {
        match self {
            ParseErrorKind::EmptyInput => "empty input",
            ParseErrorKind::UnknownDirective => "unknown directive",
            ParseErrorKind::MissingHeader => "missing header",
            ParseErrorKind::DuplicateHeader => "duplicate header",
            ParseErrorKind::HeaderAfterLayer => "header after layer",
            ParseErrorKind::BadInteger => "bad integer",
            ParseErrorKind::BadNumber => "bad number",
            ParseErrorKind::MissingArgument => "missing argument",
            ParseErrorKind::TrailingTokens => "trailing tokens",
            ParseErrorKind::QubitCountMismatch => "qubit count mismatch",
            ParseErrorKind::TooManyQubits => "too many qubits",
            ParseErrorKind::QubitOutOfRange => "qubit out of range",
            ParseErrorKind::BadLayerIndex => "bad layer index",
            ParseErrorKind::LayerOrder => "layer order",
            ParseErrorKind::GateOutsideLayer => "gate outside layer",
            ParseErrorKind::WrongLayerKind => "wrong layer kind",
            ParseErrorKind::UnknownGate => "unknown gate",
            ParseErrorKind::NonUnitary => "non-unitary matrix",
            ParseErrorKind::DuplicateSingle => "duplicate 1-qubit gate",
            ParseErrorKind::LayerDisjointness => "layer disjointness violated",
            ParseErrorKind::GEtaModulus => "GEta modulus",
            ParseErrorKind::GEtaTrivial => "GEta trivial phase",
            ParseErrorKind::EmptyGate => "empty gate",
            ParseErrorKind::DuplicateQubit => "duplicate qubit",
        }
    }
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.description())
    }
}

/// A located error; `line` and `column` are 1-based.
#[derive(Clone, Debug, Error, PartialEq)]
#[error("line {line}, column {column}: {kind}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
    pub message: String,
}

#[derive(Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let content = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (col, (byte, ch)) in content.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some((byte, col + 1)),
            (true, Some((b, c))) => {
                out.push(Token {
                    text: &content[b..byte],
                    column: c,
                });
                start = None;
            }
            _ => {}
        }
    }
    if let Some((b, c)) = start {
        out.push(Token {
            text: &content[b..],
            column: c,
        });
    }
    out
}

struct Cursor<'a> {
    line: usize,
    end_column: usize,
    tokens: Vec<Token<'a>>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, column: usize, kind: ParseErrorKind, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column,
            kind,
            message: message.into(),
        }
    }

    fn next(&mut self, what: &str) -> Result<Token<'a>, ParseError> {
        let t = self.tokens.get(self.pos).copied();
        self.pos += 1;
        t.ok_or_else(|| {
            self.err(
                self.end_column,
                ParseErrorKind::MissingArgument,
                format!("expected {what}"),
            )
        })
    }

    fn has_more(&self) -> bool {
        self.pos < self.tokens.len()
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.tokens.get(self.pos) {
            Some(t) => Err(self.err(
                t.column,
                ParseErrorKind::TrailingTokens,
                format!("unexpected `{}`", t.text),
            )),
            None => Ok(()),
        }
    }

    fn integer(&mut self, what: &str) -> Result<(usize, usize), ParseError> {
        let t = self.next(what)?;
        let v = t.text.parse::<usize>().map_err(|_| {
            self.err(
                t.column,
                ParseErrorKind::BadInteger,
                format!("`{}` is not a {what}", t.text),
            )
        })?;
        Ok((v, t.column))
    }

    fn number_pair(&mut self) -> Result<(Scalar, usize), ParseError> {
        let re = self.next("real part")?;
        let im = self.next("imaginary part")?;
        if let (Ok(a), Ok(b)) = (re.text.parse::<i64>(), im.text.parse::<i64>()) {
            return Ok((Scalar::Exact(ExactScalar::gaussian(a, b)), re.column));
        }
        let num = |t: Token<'_>| {
            t.text
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| {
                    self.err(
                        t.column,
                        ParseErrorKind::BadNumber,
                        format!("`{}` is not a finite number", t.text),
                    )
                })
        };
        Ok((Scalar::float(num(re)?, num(im)?), re.column))
    }
}

#[derive(Default)]
struct Header {
    qubits: Option<(usize, usize, usize)>,
    inputs: Option<usize>,
    ancillas: Option<usize>,
}

enum Entry {
    Single {
        j: usize,
        q: usize,
        gate: OneQubitGate,
    },
    Multi {
        l: usize,
        gate: MultiQubitGate,
        line: usize,
        column: usize,
    },
}

/// Parses and validates a circuit file.
pub fn parse_circuit(text: &str) -> Result<Circuit, ParseError> {
    let tol = Tolerance::default();
    let mut header = Header::default();
    let mut current: Option<Layer> = None;
    let mut r: Option<usize> = None;
    let mut entries: Vec<Entry> = Vec::new();
    let mut singles_seen: Vec<(usize, usize)> = Vec::new();
    let mut saw_content = false;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        last_line = idx + 1;
        let tokens = tokenize(raw);
        if tokens.is_empty() {
            continue;
        }
        saw_content = true;
        let end_column = raw.split('#').next().unwrap_or("").chars().count() + 1;
        let mut cur = Cursor {
            line: idx + 1,
            end_column,
            tokens,
            pos: 0,
        };
        let head = cur.next("directive")?;
        match head.text {
            "qubits" | "inputs" | "ancillas" => {
                if current.is_some() {
                    return Err(cur.err(
                        head.column,
                        ParseErrorKind::HeaderAfterLayer,
                        format!("`{}` must precede every layer", head.text),
                    ));
                }
                let (v, col) = cur.integer("count")?;
                cur.finish()?;
                let slot_taken = match head.text {
                    "qubits" => header.qubits.replace((v, idx + 1, col)).is_some(),
                    "inputs" => header.inputs.replace(v).is_some(),
                    _ => header.ancillas.replace(v).is_some(),
                };
                if slot_taken {
                    return Err(cur.err(
                        head.column,
                        ParseErrorKind::DuplicateHeader,
                        format!("`{}` given twice", head.text),
                    ));
                }
                if head.text == "qubits" && v > MAX_QUBITS {
                    return Err(cur.err(
                        col,
                        ParseErrorKind::TooManyQubits,
                        format!("{v} qubits exceed the cap of {MAX_QUBITS}"),
                    ));
                }
            }
            "layer" => {
                if r.is_none() {
                    r = Some(check_header(&header, &cur, head.column)?);
                }
                let t = cur.next("layer index")?;
                let layer = Layer::parse(t.text).ok_or_else(|| {
                    cur.err(
                        t.column,
                        ParseErrorKind::BadLayerIndex,
                        format!("`{}` is not a positive multiple of 0.5", t.text),
                    )
                })?;
                if current.is_some_and(|c| c >= layer) {
                    return Err(cur.err(
                        t.column,
                        ParseErrorKind::LayerOrder,
                        format!("layer {layer} after layer {}", current.unwrap()),
                    ));
                }
                cur.finish()?;
                current = Some(layer);
            }
            "u" | "cz" | "geta" => {
                let Some(layer) = current else {
                    return Err(cur.err(
                        head.column,
                        ParseErrorKind::GateOutsideLayer,
                        "gates must follow a `layer` line",
                    ));
                };
                let r = r.expect("set with the first layer");
                let wants_multi = head.text != "u";
                if layer.is_multi() != wants_multi {
                    let kind = if wants_multi {
                        "a 1-qubit"
                    } else {
                        "a multiqubit"
                    };
                    return Err(cur.err(
                        head.column,
                        ParseErrorKind::WrongLayerKind,
                        format!("`{}` inside {kind} layer {layer}", head.text),
                    ));
                }
                if head.text == "u" {
                    let (q, qcol) = cur.integer("qubit")?;
                    check_range(&cur, q, qcol, r)?;
                    let gate = parse_single(&mut cur, &tol)?;
                    cur.finish()?;
                    let j = layer.doubled() as usize / 2;
                    if singles_seen.contains(&(j, q)) {
                        return Err(cur.err(
                            qcol,
                            ParseErrorKind::DuplicateSingle,
                            format!("qubit {q} already has a gate on layer {layer}"),
                        ));
                    }
                    singles_seen.push((j, q));
                    entries.push(Entry::Single { j, q, gate });
                } else {
                    let eta = if head.text == "geta" {
                        Some(cur.number_pair()?)
                    } else {
                        None
                    };
                    let mut set = QubitSet::EMPTY;
                    while cur.has_more() {
                        let (q, qcol) = cur.integer("qubit")?;
                        check_range(&cur, q, qcol, r)?;
                        if set.contains(q) {
                            return Err(cur.err(
                                qcol,
                                ParseErrorKind::DuplicateQubit,
                                format!("qubit {q} listed twice"),
                            ));
                        }
                        set.insert(q);
                    }
                    if set.is_empty() {
                        return Err(cur.err(
                            head.column,
                            ParseErrorKind::EmptyGate,
                            "multiqubit gate without qubits",
                        ));
                    }
                    let gate = match eta {
                        None => MultiQubitGate::cz(set),
                        Some((eta, col)) => {
                            MultiQubitGate::geta(eta, set, &tol).map_err(|e| match e {
                                CircuitError::GEtaTrivial => cur.err(
                                    col,
                                    ParseErrorKind::GEtaTrivial,
                                    "eta must differ from 1",
                                ),
                                other => {
                                    cur.err(col, ParseErrorKind::GEtaModulus, other.to_string())
                                }
                            })?
                        }
                    };
                    entries.push(Entry::Multi {
                        l: layer.doubled() as usize / 2,
                        gate,
                        line: idx + 1,
                        column: head.column,
                    });
                }
            }
            other => {
                return Err(cur.err(
                    head.column,
                    ParseErrorKind::UnknownDirective,
                    format!("`{other}`"),
                ));
            }
        }
    }
    if !saw_content {
        return Err(ParseError {
            line: 1,
            column: 1,
            kind: ParseErrorKind::EmptyInput,
            message: "no directives".into(),
        });
    }
    let eof = Cursor {
        line: last_line + 1,
        end_column: 1,
        tokens: Vec::new(),
        pos: 0,
    };
    if r.is_none() {
        check_header(&header, &eof, 1)?;
    }
    let depth = current.map_or(0, |l| l.doubled() as usize / 2);
    let mut c = Circuit::new(
        header.inputs.unwrap_or(0),
        header.ancillas.unwrap_or(0),
        depth,
    )
    .expect("header validated");
    for e in entries {
        match e {
            Entry::Single { j, q, gate } => {
                c.set_single(j, q, gate).expect("validated while parsing")
            }
            Entry::Multi {
                l,
                gate,
                line,
                column,
            } => c.add_multi(l, gate).map_err(|e| match e {
                CircuitError::LayerDisjointness { .. } => ParseError {
                    line,
                    column,
                    kind: ParseErrorKind::LayerDisjointness,
                    message: e.to_string(),
                },
                other => unreachable!("validated while parsing: {other}"),
            })?,
        }
    }
    Ok(c)
}

fn check_header(h: &Header, cur: &Cursor<'_>, column: usize) -> Result<usize, ParseError> {
    let missing: Vec<&str> = [
        ("qubits", h.qubits.is_none()),
        ("inputs", h.inputs.is_none()),
        ("ancillas", h.ancillas.is_none()),
    ]
    .into_iter()
    .filter(|(_, m)| *m)
    .map(|(n, _)| n)
    .collect();
    if !missing.is_empty() {
        return Err(cur.err(
            column,
            ParseErrorKind::MissingHeader,
            format!("missing {}", missing.join(", ")),
        ));
    }
    let (r, line, col) = h.qubits.expect("checked");
    let (n, m) = (h.inputs.expect("checked"), h.ancillas.expect("checked"));
    if r != 1 + n + m {
        return Err(ParseError {
            line,
            column: col,
            kind: ParseErrorKind::QubitCountMismatch,
            message: format!("qubits {r} but 1 + inputs + ancillas = {}", 1 + n + m),
        });
    }
    Ok(r)
}

fn check_range(cur: &Cursor<'_>, q: usize, column: usize, r: usize) -> Result<(), ParseError> {
    if q >= r {
        return Err(cur.err(
            column,
            ParseErrorKind::QubitOutOfRange,
            format!("qubit {q} in a {r}-qubit circuit"),
        ));
    }
    Ok(())
}

fn parse_single(cur: &mut Cursor<'_>, tol: &Tolerance) -> Result<OneQubitGate, ParseError> {
    let t = cur.next("gate name")?;
    if t.text == "matrix" {
        let mut m = [Scalar::zero(); 4];
        for slot in &mut m {
            *slot = cur.number_pair()?.0;
        }
        return OneQubitGate::from_matrix(m, tol)
            .map_err(|e| cur.err(t.column, ParseErrorKind::NonUnitary, e.to_string()));
    }
    NamedGate::from_symbol(t.text)
        .map(OneQubitGate::named)
        .ok_or_else(|| {
            cur.err(
                t.column,
                ParseErrorKind::UnknownGate,
                format!("`{}` is not one of I, X, Y, Z, H or matrix", t.text),
            )
        })
}

fn qubit_list(s: QubitSet) -> String {
    s.iter()
        .map(|q| q.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Canonical text: headers, every integer layer, and each nonempty
/// 1-qubit layer; identities are omitted.
pub fn serialize_circuit(c: &Circuit) -> String {
    let mut out = format!(
        "qubits {}\ninputs {}\nancillas {}\n",
        c.qubits(),
        c.inputs(),
        c.ancillas()
    );
    for layer in c.layers() {
        let j = layer.doubled() as usize / 2;
        if layer.is_multi() {
            out.push_str(&format!("layer {layer}\n"));
            for g in c.multi_layer(j) {
                match g.kind() {
                    MultiKind::Cz => out.push_str(&format!("cz {}\n", qubit_list(g.qubits()))),
                    MultiKind::GEta(eta) => out.push_str(&format!(
                        "geta {} {}\n",
                        format_number_pair(&eta),
                        qubit_list(g.qubits())
                    )),
                }
            }
            continue;
        }
        let gates: Vec<(usize, &OneQubitGate)> = (0..c.qubits())
            .map(|q| (q, c.single(j, q)))
            .filter(|(_, g)| !g.is_identity())
            .collect();
        if gates.is_empty() {
            continue;
        }
        out.push_str(&format!("layer {layer}\n"));
        for (q, g) in gates {
            match g.name() {
                Some(n) => out.push_str(&format!("u {q} {}\n", n.symbol())),
                None => {
                    let entries: Vec<String> = g.matrix().iter().map(format_number_pair).collect();
                    out.push_str(&format!("u {q} matrix {}\n", entries.join(" ")));
                }
            }
        }
    }
    out
}
