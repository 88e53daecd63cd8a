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

use super::*;

fn small(suite: Suite, trials: usize) -> SuiteConfig {
    SuiteConfig {
        trials,
        ..SuiteConfig::new(suite)
    }
}

#[test]
fn suite_names_round_trip() {
    for s in Suite::ALL {
        assert_eq!(s.name().parse::<Suite>().unwrap(), s);
    }
    assert_eq!(
        "nope".parse::<Suite>(),
        Err(HarnessError::UnknownSuite("nope".into()))
    );
    assert_eq!("float".parse::<Backend>().unwrap(), Backend::Float);
    assert!("double".parse::<Backend>().is_err());
}

#[test]
fn config_validation() {
    let ok = SuiteConfig::new(Suite::KillParity);
    assert!(ok.validate().is_ok());
    assert!(matches!(
        SuiteConfig { trials: 0, ..ok }.validate(),
        Err(HarnessError::InvalidConfig(_))
    ));
    assert!(matches!(
        SuiteConfig {
            max_qubits: 13,
            ..ok
        }
        .validate(),
        Err(HarnessError::InvalidConfig(_))
    ));
    assert!(matches!(
        SuiteConfig {
            trials: MAX_TRIALS + 1,
            ..ok
        }
        .validate(),
        Err(HarnessError::BudgetExceeded { .. })
    ));
    let topo = SuiteConfig {
        max_qubits: 5,
        ..SuiteConfig::new(Suite::Topology6Qubit)
    };
    assert!(matches!(
        run_suite(&topo),
        Err(HarnessError::InvalidConfig(_))
    ));
}

#[test]
fn every_suite_passes_a_short_run() {
    for s in Suite::ALL {
        let cfg = small(s, 12);
        let report = run_suite(&cfg).unwrap();
        assert_eq!(report.instances, 12);
        assert!(
            report.passed(),
            "{}",
            emit_report(&report, ReportFormat::Text)
        );
    }
}

#[test]
fn float_backend_short_runs() {
    for s in [
        Suite::TightParity3,
        Suite::IrreducibilityFamily,
        Suite::SvVsRank,
    ] {
        let cfg = SuiteConfig {
            backend: Backend::Float,
            ..small(s, 12)
        };
        let report = run_suite(&cfg).unwrap();
        assert!(
            report.passed(),
            "{}",
            emit_report(&report, ReportFormat::Text)
        );
    }
}

#[test]
fn tight_parity3_default_covers_all_basis_states() {
    let report = run_suite(&SuiteConfig::new(Suite::TightParity3)).unwrap();
    assert_eq!(report.instances, 16);
    assert!(report.passed());
}

#[test]
fn machine_reports_are_deterministic() {
    for s in [
        Suite::EntanglementLemma,
        Suite::SvVsRank,
        Suite::Depth1Refute,
    ] {
        let cfg = SuiteConfig {
            seed: 99,
            ..small(s, 20)
        };
        let a = emit_report(&run_suite(&cfg).unwrap(), ReportFormat::Machine);
        let b = emit_report(&run_suite(&cfg).unwrap(), ReportFormat::Machine);
        assert_eq!(a, b);
    }
}

#[test]
fn passing_report_round_trips() {
    let report = run_suite(&small(Suite::Topology6Qubit, 10)).unwrap();
    let doc = emit_report(&report, ReportFormat::Machine);
    assert!(doc.lines().any(|l| l == "violations=0"));
    assert!(doc.lines().any(|l| l == "status=pass"));
    assert_eq!(parse_machine_report(&doc).unwrap(), report);
}

// A zero tolerance makes the kill-parity residual checks fail, which gives
// genuine violations to replay.
fn failing_config() -> SuiteConfig {
    SuiteConfig {
        tolerance: Some(Tolerance::uniform(0.0).unwrap()),
        ..small(Suite::KillParity, 20)
    }
}

#[test]
fn failing_report_embeds_replay_and_round_trips() {
    let cfg = failing_config();
    let report = run_suite(&cfg).unwrap();
    assert!(!report.passed());
    let doc = emit_report(&report, ReportFormat::Machine);
    let first = &report.violations[0];
    let replay = format!("violation.0.replay={}", cfg.replay_command(first.index));
    assert!(doc.lines().any(|l| l == replay), "{doc}");
    assert!(replay.contains("--instance") && replay.contains("--abs-tol 0.0"));
    assert_eq!(parse_machine_report(&doc).unwrap(), report);
    assert!(emit_report(&report, ReportFormat::Text).contains("replay: qaclab verify kill-parity"));
}

#[test]
fn violations_replay_standalone() {
    let cfg = failing_config();
    let report = run_suite(&cfg).unwrap();
    for v in &report.violations {
        assert_eq!(replay_instance(&cfg, v.index).unwrap().as_ref(), Some(v));
    }
    assert!(replay_instance(&cfg, cfg.trials).is_err());
}

#[test]
fn malformed_reports_are_rejected() {
    let doc = emit_report(
        &run_suite(&small(Suite::TightParity3, 2)).unwrap(),
        ReportFormat::Machine,
    );
    let cases = [
        doc.replace("format=qaclab-report-1", "format=other"),
        doc.replace("trials=2", "trials=two"),
        doc.replace("status=pass", "status=fail"),
        doc.replace("backend=exact\n", ""),
        format!("{doc}extra=1\n"),
        doc.replace("violations=0", "violations=1"),
    ];
    for bad in cases {
        assert!(
            matches!(
                parse_machine_report(&bad),
                Err(HarnessError::ReportParse { .. })
            ),
            "{bad}"
        );
    }
}

#[test]
fn instance_seeds_do_not_depend_on_trial_count() {
    let a = small(Suite::NoZeroDivisors, 5);
    let b = small(Suite::NoZeroDivisors, 50);
    assert_eq!(a.instance_seed(3), b.instance_seed(3));
    assert_ne!(a.instance_seed(3), a.instance_seed(4));
}
