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

//! Acceptance gate: one line per criterion, nonzero exit if any fails.

use std::time::{Duration, Instant};

use qaclab_core::circuit::{
    parity3_circuit, parity3_cnot_form, parse_circuit, serialize_circuit, simulate, ParseErrorKind,
};
use qaclab_core::harness::{run_suite, Suite, SuiteConfig, SuiteReport};
use qaclab_core::state::StateVector;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn run(suite: Suite, trials: usize) -> Result<SuiteReport, String> {
    let mut cfg = SuiteConfig::new(suite);
    cfg.trials = trials;
    let report = run_suite(&cfg).map_err(|e| e.to_string())?;
    if report.instances != trials {
        return Err(format!(
            "{suite}: ran {} of {trials} instances",
            report.instances
        ));
    }
    if let Some(v) = report.violations.first() {
        return Err(format!(
            "{suite}: {} violations, first: {}",
            report.violations.len(),
            v.message
        ));
    }
    Ok(report)
}

fn summary(r: &SuiteReport) -> String {
    format!(
        "{}: {} instances, {} exercised, 0 violations, {:.2?}",
        r.config.suite, r.instances, r.exercised, r.wall_time
    )
}

fn within(limit: Duration, elapsed: Duration, what: &str) -> Result<(), String> {
    if elapsed < limit {
        Ok(())
    } else {
        Err(format!("{what} took {elapsed:.2?}, limit {limit:?}"))
    }
}

fn tight_parity3() -> Outcome {
    let start = Instant::now();
    let c = parity3_circuit();
    for x in 0..16 {
        let init = StateVector::basis(4, x).map_err(|e| e.to_string())?;
        let out = simulate(&c, &init).map_err(|e| e.to_string())?;
        if !out.is_exact() {
            return Err(format!("input {x:04b}: output left the exact ring"));
        }
        let parity = (x & 0b111).count_ones() % 2 == 1;
        let want = ((x >> 3) & 1 == 1) ^ parity;
        // Non-target qubits may hold garbage; every amplitude with the wrong target bit must be exactly 0.
        let wrong = out
            .amps()
            .iter()
            .enumerate()
            .filter(|(i, _)| out.bit(*i, 0) != want)
            .any(|(_, a)| !a.is_zero());
        if wrong {
            return Err(format!("input {x:04b}: target is not the parity"));
        }
        if out != parity3_cnot_form(&init) {
            return Err(format!("input {x:04b}: differs from the CNOT form"));
        }
    }
    let report = run(Suite::TightParity3, 16)?;
    within(Duration::from_secs(1), start.elapsed(), "tight example")?;
    Ok(format!(
        "16 exact basis inputs, zero residual, {:.2?}; {}",
        start.elapsed(),
        summary(&report)
    ))
}

fn entanglement() -> Outcome {
    let r = run(Suite::EntanglementLemma, 1000)?;
    within(Duration::from_secs(30), r.wall_time, "entanglement suite")?;
    Ok(summary(&r))
}

fn simplify_and_nzd() -> Outcome {
    let a = run(Suite::SimplifyLemma, 500)?;
    let b = run(Suite::NoZeroDivisors, 500)?;
    Ok(format!("{}; {}", summary(&a), summary(&b)))
}

fn suite(s: Suite, trials: usize, limit: Option<Duration>) -> Outcome {
    let r = run(s, trials)?;
    if let Some(limit) = limit {
        within(limit, r.wall_time, s.name())?;
    }
    Ok(summary(&r))
}

/// Malformed circuit files with the error class, line and column each must report.
fn malformed_fixtures() -> Vec<(String, ParseErrorKind, usize, usize)> {
    use ParseErrorKind::*;
    const H: &str = "qubits 3\ninputs 2\nancillas 0\n";
    vec![
        (String::new(), EmptyInput, 1, 1),
        ("# only a comment\n".into(), EmptyInput, 1, 1),
        (format!("{H}gate 1\n"), UnknownDirective, 4, 1),
        ("qubits 3\ninputs 2\nlayer 1\n".into(), MissingHeader, 3, 1),
        (
            "qubits 3\ninputs 2\nancillas 0\ninputs 2\n".into(),
            DuplicateHeader,
            4,
            1,
        ),
        (format!("{H}layer 1\nqubits 3\n"), HeaderAfterLayer, 5, 1),
        ("qubits three\n".into(), BadInteger, 1, 8),
        (format!("{H}layer 1\ngeta 0.5 x 0 1\n"), BadNumber, 5, 10),
        (format!("{H}layer 0.5\nu 1\n"), MissingArgument, 5, 4),
        ("qubits 3 4\n".into(), TrailingTokens, 1, 10),
        (
            "qubits 4\ninputs 2\nancillas 0\nlayer 1\n".into(),
            QubitCountMismatch,
            1,
            8,
        ),
        ("qubits 13\n".into(), TooManyQubits, 1, 8),
        (format!("{H}layer 1\ncz 0 3\n"), QubitOutOfRange, 5, 6),
        (format!("{H}layer 1.25\n"), BadLayerIndex, 4, 7),
        (format!("{H}layer 2\nlayer 1.5\n"), LayerOrder, 5, 7),
        (format!("{H}u 0 H\n"), GateOutsideLayer, 4, 1),
        (format!("{H}layer 1\nu 0 H\n"), WrongLayerKind, 5, 1),
        (format!("{H}layer 0.5\nu 0 T\n"), UnknownGate, 5, 5),
        (
            format!("{H}layer 0.5\nu 0 matrix 1 0 1 0 0 0 1 0\n"),
            NonUnitary,
            5,
            5,
        ),
        (
            format!("{H}layer 0.5\nu 0 H\nu 0 X\n"),
            DuplicateSingle,
            6,
            3,
        ),
        (
            format!("{H}layer 1\ncz 0 1\ncz 1 2\n"),
            LayerDisjointness,
            6,
            1,
        ),
        (format!("{H}layer 1\ngeta 2 0 0 1\n"), GEtaModulus, 5, 6),
        (format!("{H}layer 1\ngeta 1 0 0 1\n"), GEtaTrivial, 5, 6),
        (format!("{H}layer 1\ncz\n"), EmptyGate, 5, 1),
        (format!("{H}layer 1\ncz 1 1\n"), DuplicateQubit, 5, 6),
    ]
}

fn parser() -> Outcome {
    let golden = include_str!("fixtures/parity3.qac");
    let c = parse_circuit(golden).map_err(|e| e.to_string())?;
    if c != parity3_circuit() {
        return Err("golden file does not describe the parity circuit".into());
    }
    if serialize_circuit(&c) != golden {
        return Err("golden file does not round-trip byte-exact".into());
    }
    let fixtures = malformed_fixtures();
    for (text, kind, line, column) in &fixtures {
        match parse_circuit(text) {
            Ok(_) => return Err(format!("{text:?} parsed")),
            Err(e) if (e.kind, e.line, e.column) != (*kind, *line, *column) => {
                return Err(format!(
                    "{text:?}: got {e}, want {kind:?} at {line}:{column}"
                ));
            }
            Err(e) if !e.to_string().contains(kind.description()) => {
                return Err(format!(
                    "{text:?}: message {e} lacks {:?}",
                    kind.description()
                ));
            }
            Err(_) => {}
        }
    }
    Ok(format!(
        "golden round trip byte-exact, {} malformed inputs classified",
        fixtures.len()
    ))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("tight parity-3 example", Box::new(tight_parity3)),
        ("entanglement lemma", Box::new(entanglement)),
        (
            "simplify and no-zero-divisors lemmas",
            Box::new(simplify_and_nzd),
        ),
        (
            "irreducibility family",
            Box::new(|| {
                suite(
                    Suite::IrreducibilityFamily,
                    1200,
                    Some(Duration::from_secs(60)),
                )
            }),
        ),
        (
            "sv test versus rank oracle",
            Box::new(|| suite(Suite::SvVsRank, 500, None)),
        ),
        (
            "kill parity",
            Box::new(|| suite(Suite::KillParity, 500, None)),
        ),
        (
            "depth-1 refutation",
            Box::new(|| suite(Suite::Depth1Refute, 100, None)),
        ),
        (
            "depth reduction",
            Box::new(|| suite(Suite::DepthReduce, 50, None)),
        ),
        (
            "six-qubit topology",
            Box::new(|| suite(Suite::Topology6Qubit, 200, None)),
        ),
        ("circuit parser", Box::new(parser)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail}", i + 1),
            Err(reason) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {reason}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
