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

//! Text and machine renderings of a [`SuiteReport`].
//!
//! The machine format is one `key=value` pair per line in a fixed order.
//! Values never contain newlines, and wall time is left out so identical
//! runs give byte-identical documents.

use std::fmt::Write;
use std::time::Duration;

use super::{HarnessError, SuiteConfig, SuiteReport, Violation};
use crate::numerics::Tolerance;

const FORMAT_TAG: &str = "qaclab-report-1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Machine,
}

impl std::str::FromStr for ReportFormat {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(ReportFormat::Text),
            "machine" => Ok(ReportFormat::Machine),
            _ => Err(HarnessError::InvalidConfig(format!(
                "unknown report format '{s}', expected text or machine"
            ))),
        }
    }
}

fn tolerance_value(t: Option<Tolerance>) -> String {
    match t {
        None => "default".into(),
        Some(t) => format!("{:?},{:?}", t.abs_eps, t.rel_eps),
    }
}

pub fn emit_report(r: &SuiteReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Text => emit_text(r),
        ReportFormat::Machine => emit_machine(r),
    }
}

fn emit_machine(r: &SuiteReport) -> String {
    let c = &r.config;
    let mut out = String::new();
    let mut put = |k: &str, v: &dyn std::fmt::Display| {
        writeln!(out, "{k}={v}").expect("writing to a string");
    };
    put("format", &FORMAT_TAG);
    put("suite", &c.suite);
    put("trials", &c.trials);
    put("max_qubits", &c.max_qubits);
    put("seed", &c.seed);
    put("backend", &c.backend);
    put("tolerance", &tolerance_value(c.tolerance));
    put("instances", &r.instances);
    put("exercised", &r.exercised);
    put("violations", &r.violations.len());
    for (i, v) in r.violations.iter().enumerate() {
        put(&format!("violation.{i}.index"), &v.index);
        put(&format!("violation.{i}.seed"), &v.seed);
        put(&format!("violation.{i}.instance"), &v.instance);
        put(&format!("violation.{i}.message"), &v.message);
        put(&format!("violation.{i}.replay"), &c.replay_command(v.index));
    }
    put("status", &if r.passed() { "pass" } else { "fail" });
    out
}

fn emit_text(r: &SuiteReport) -> String {
    let c = &r.config;
    let mut out = String::new();
    let status = if r.passed() { "PASS" } else { "FAIL" };
    let tol = c.tolerance();
    let _ = writeln!(
        out,
        "{}: {status}, {} instances ({} exercised), {} violations, {:.3} s",
        c.suite,
        r.instances,
        r.exercised,
        r.violations.len(),
        r.wall_time.as_secs_f64()
    );
    let _ =
        writeln!(
        out,
        "  config: trials {}, max qubits {}, seed {}, backend {}, tolerance abs {:e} rel {:e}{}",
        c.trials,
        c.max_qubits,
        c.seed,
        c.backend,
        tol.abs_eps,
        tol.rel_eps,
        if c.tolerance.is_some() { " (override)" } else { "" }
    );
    for v in &r.violations {
        let _ = writeln!(
            out,
            "  violation at instance {} (seed {}): {}",
            v.index, v.seed, v.message
        );
        let _ = writeln!(out, "    instance: {}", v.instance);
        let _ = writeln!(out, "    replay: {}", c.replay_command(v.index));
    }
    out
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn err(line: usize, message: impl Into<String>) -> HarnessError {
        HarnessError::ReportParse {
            line,
            message: message.into(),
        }
    }

    /// The value of the next line, which must carry `key`.
    fn expect(&mut self, key: &str) -> Result<(usize, &'a str), HarnessError> {
        let (i, line) = self
            .inner
            .next()
            .ok_or_else(|| Self::err(0, format!("missing '{key}'")))?;
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Self::err(i + 1, "expected key=value"))?;
        if k != key {
            return Err(Self::err(i + 1, format!("expected '{key}', found '{k}'")));
        }
        Ok((i + 1, v))
    }

    fn number<T: std::str::FromStr>(&mut self, key: &str) -> Result<T, HarnessError> {
        let (line, v) = self.expect(key)?;
        v.parse()
            .map_err(|_| Self::err(line, format!("'{key}' is not a valid number: {v}")))
    }
}

/// Parses the machine format back into a report with zero wall time.
pub fn parse_machine_report(text: &str) -> Result<SuiteReport, HarnessError> {
    let mut lines = Lines {
        inner: text.lines().enumerate(),
    };
    let (line, tag) = lines.expect("format")?;
    if tag != FORMAT_TAG {
        return Err(Lines::err(line, format!("unsupported format '{tag}'")));
    }
    let suite = lines.expect("suite")?.1.parse()?;
    let trials = lines.number("trials")?;
    let max_qubits = lines.number("max_qubits")?;
    let seed = lines.number("seed")?;
    let backend = lines.expect("backend")?.1.parse()?;
    let (line, tol) = lines.expect("tolerance")?;
    let tolerance = match tol {
        "default" => None,
        _ => {
            let bad = || Lines::err(line, format!("bad tolerance '{tol}'"));
            let (a, r) = tol.split_once(',').ok_or_else(bad)?;
            let (a, r) = (a.parse().map_err(|_| bad())?, r.parse().map_err(|_| bad())?);
            Some(Tolerance::new(a, r).map_err(|_| bad())?)
        }
    };
    let config = SuiteConfig {
        suite,
        trials,
        max_qubits,
        seed,
        tolerance,
        backend,
    };
    let instances = lines.number("instances")?;
    let exercised = lines.number("exercised")?;
    let count: usize = lines.number("violations")?;
    let mut violations = Vec::with_capacity(count.min(1024));
    for i in 0..count {
        let index = lines.number(&format!("violation.{i}.index"))?;
        let seed = lines.number(&format!("violation.{i}.seed"))?;
        let instance = lines
            .expect(&format!("violation.{i}.instance"))?
            .1
            .to_string();
        let message = lines
            .expect(&format!("violation.{i}.message"))?
            .1
            .to_string();
        let (line, replay) = lines.expect(&format!("violation.{i}.replay"))?;
        if replay != config.replay_command(index) {
            return Err(Lines::err(
                line,
                "replay command does not match the configuration",
            ));
        }
        violations.push(Violation {
            index,
            seed,
            instance,
            message,
        });
    }
    let (line, status) = lines.expect("status")?;
    let expected = if violations.is_empty() {
        "pass"
    } else {
        "fail"
    };
    if status != expected {
        return Err(Lines::err(
            line,
            format!("status '{status}' contradicts {count} violations"),
        ));
    }
    if let Some((i, _)) = lines.inner.find(|(_, l)| !l.trim().is_empty()) {
        return Err(Lines::err(i + 1, "trailing content after status"));
    }
    Ok(SuiteReport {
        config,
        instances,
        exercised,
        violations,
        wall_time: Duration::ZERO,
    })
}
