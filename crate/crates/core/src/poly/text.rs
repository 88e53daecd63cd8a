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

//! Line-oriented polynomial text format.
//!
//! ```text
//! # comment
//! 1 0 : x[0],z[0]
//! -0.5 0.25 : x[1],z[1]
//! 3 0 :
//! ```
//!
//! Each line is `re im : var,var,...`. Integer coefficient pairs load as exact
//! Gaussian integers, anything else as floating point. An empty variable
//! list is the constant term. Repeated monomials accumulate.

use super::{BitString, Block, Monomial, MultilinearPoly, PolyError, VarId};
use crate::numerics::Scalar;

fn parse_var(tok: &str, line: usize) -> Result<VarId, PolyError> {
    let err = |message: String| PolyError::Parse { line, message };
    let mut chars = tok.chars();
    let block = chars
        .next()
        .and_then(Block::from_letter)
        .ok_or_else(|| err(format!("unknown variable block in `{tok}`")))?;
    let rest = chars.as_str();
    let bits = rest
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| {
            err(format!(
                "variable `{tok}` must look like {}[bits]",
                block.letter()
            ))
        })?;
    let index =
        BitString::parse(bits).ok_or_else(|| err(format!("bad bitstring `{bits}` in `{tok}`")))?;
    Ok(VarId::new(block, index))
}

fn parse_coeff(re: &str, im: &str, line: usize) -> Result<Scalar, PolyError> {
    if let (Ok(a), Ok(b)) = (re.parse::<i64>(), im.parse::<i64>()) {
        return Ok(Scalar::Exact(crate::numerics::ExactScalar::gaussian(a, b)));
    }
    let parse = |s: &str| {
        s.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| PolyError::Parse {
                line,
                message: format!("bad number `{s}`"),
            })
    };
    Ok(Scalar::float(parse(re)?, parse(im)?))
}

pub fn parse_poly(text: &str) -> Result<MultilinearPoly, PolyError> {
    let mut p = MultilinearPoly::zero();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (coeff, vars) = content.split_once(':').ok_or_else(|| PolyError::Parse {
            line,
            message: "expected `re im : vars`".into(),
        })?;
        let nums: Vec<&str> = coeff.split_whitespace().collect();
        if nums.len() != 2 {
            return Err(PolyError::Parse {
                line,
                message: format!("expected two coefficient numbers, found {}", nums.len()),
            });
        }
        let c = parse_coeff(nums[0], nums[1], line)?;
        let mut mono = Vec::new();
        for tok in vars.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let v = parse_var(tok, line)?;
            if mono.contains(&v) {
                return Err(PolyError::Parse {
                    line,
                    message: format!("variable {v} repeated in one monomial"),
                });
            }
            mono.push(v);
        }
        p.add_term(Monomial::new(mono), c);
    }
    Ok(p)
}

fn format_coeff(c: &Scalar) -> String {
    if let Scalar::Exact(e) = c {
        let (a, b, cc, d, k) = e.parts();
        if b == 0 && d == 0 && k == 0 {
            return format!("{a} {cc}");
        }
    }
    let z = c.to_complex();
    format!("{:?} {:?}", z.re, z.im)
}

/// Writes one term per line in monomial order.
pub fn format_poly(f: &MultilinearPoly) -> String {
    let mut out = String::new();
    for (m, c) in f.terms() {
        let vars: Vec<String> = m.vars().iter().map(VarId::to_string).collect();
        out.push_str(&format_coeff(c));
        out.push_str(" : ");
        out.push_str(&vars.join(","));
        out.push('\n');
    }
    out
}
