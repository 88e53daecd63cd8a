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

//! `qaclab`: simulate and analyse QAC circuit files, build pure parity
//! killer states, refute shallow parity circuits and run the verification
//! suites.
//!
//! Exit codes: 0 success, 1 a negative result (violation, rejected
//! certificate, circuit that does not compute parity), 2 usage or input
//! error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};

use qaclab_core::bridge::{poly_of_state, state_of_poly, BlockPartition};
use qaclab_core::circuit::{
    classify_simplification, computes_parity_on_basis, depth_reduce, parse_circuit, reduction_case,
    serialize_circuit, simulate, simulate_with_trace, Circuit, SimplificationOutcome,
};
use qaclab_core::harness::{
    emit_report, replay_instance, run_suite, Backend, HarnessError, ReportFormat, Suite,
    SuiteConfig,
};
use qaclab_core::numerics::Tolerance;
use qaclab_core::parity::{
    kill_parity_state, parse_certificate, parse_unitaries, refute_depth1, refute_depth2_structural,
    verify_certificate, Depth2Outcome,
};
use qaclab_core::poly::{decompose, format_poly, parse_poly};
use qaclab_core::state::{format_state, parse_state, QubitSet, StateVector};

#[derive(Parser)]
#[command(
    name = "qaclab",
    version,
    about = "Exact and numerical tools for shallow QAC circuits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a circuit on a classical input and print the final state.
    Simulate {
        #[arg(short = 'c', long = "circuit")]
        circuit: PathBuf,
        /// Either one bit per qubit, or one bit per input with the target
        /// at 0 and the ancillas taken from --ancilla (default all 0).
        #[arg(short = 'i', long = "input")]
        input: String,
        #[arg(long)]
        ancilla: Option<PathBuf>,
        /// Print the state after every layer.
        #[arg(long)]
        trace: bool,
    },
    /// Check that the target ends as the parity of the inputs on every
    /// classical input.
    CheckParity {
        #[arg(short = 'c', long = "circuit")]
        circuit: PathBuf,
        #[arg(long)]
        ancilla: Option<PathBuf>,
    },
    /// Classify each gate of a multiqubit layer on a given state.
    Classify {
        #[arg(short = 'c', long = "circuit")]
        circuit: PathBuf,
        #[arg(long)]
        layer: usize,
        #[arg(long)]
        state: PathBuf,
    },
    /// Remove the last multiqubit layer while keeping the target's output.
    Reduce {
        #[arg(short = 'c', long = "circuit")]
        circuit: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Build a pure parity state that switches off every listed unitary.
    KillParity {
        #[arg(long)]
        unitaries: PathBuf,
        /// Parity of the state, 0 or 1.
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        parity: u8,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Produce a refutation certificate for a depth-1 or depth-2 circuit.
    Refute {
        #[arg(short = 'c', long = "circuit")]
        circuit: PathBuf,
        #[arg(long)]
        ancilla: Option<PathBuf>,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Re-check a certificate by independent simulation.
    VerifyCert { certificate: PathBuf },
    /// Run a verification suite, or `all` of them.
    Verify {
        suite: String,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        qubits: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = "exact")]
        backend: String,
        #[arg(long = "abs-tol")]
        abs_tol: Option<f64>,
        #[arg(long = "rel-tol")]
        rel_tol: Option<f64>,
        /// Re-run a single instance instead of the whole suite.
        #[arg(long)]
        instance: Option<usize>,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Polynomial of a state under a block partition such as `0,1/2,3`.
    StateToPoly {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        blocks: String,
    },
    /// State of a polynomial under a block partition.
    PolyToState {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        qubits: usize,
        #[arg(long)]
        blocks: String,
    },
    /// Split a polynomial into variable-disjoint indecomposable factors.
    Decompose {
        #[arg(long)]
        poly: PathBuf,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_circuit(path: &Path) -> Result<Circuit> {
    parse_circuit(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_state(path: &Path) -> Result<StateVector> {
    let psi = parse_state(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    if !psi.is_normalized(&Tolerance::default()) {
        bail!(
            "state in {} has norm {}, expected 1",
            path.display(),
            psi.norm()
        );
    }
    Ok(psi)
}

fn load_ancilla(c: &Circuit, path: Option<&Path>) -> Result<StateVector> {
    let anc = match path {
        Some(p) => load_state(p)?,
        None => StateVector::zeros(c.ancillas())?,
    };
    if anc.qubits() != c.ancillas() {
        bail!(
            "ancilla state has {} qubits, circuit has {} ancillas",
            anc.qubits(),
            c.ancillas()
        );
    }
    Ok(anc)
}

/// `0,1/2,3` → blocks `{0,1}` and `{2,3}` lettered x, y, z, w in order.
fn parse_blocks(r: usize, spec: &str) -> Result<BlockPartition> {
    let sets = spec
        .split('/')
        .map(|part| {
            part.split(',')
                .map(|q| {
                    q.trim()
                        .parse::<usize>()
                        .map_err(|_| anyhow!("bad qubit '{q}' in blocks '{spec}'"))
                })
                .collect::<Result<QubitSet>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BlockPartition::ordered(r, &sets)?)
}

fn outcome_text(o: SimplificationOutcome) -> String {
    match o {
        SimplificationOutcome::Disappears => "disappears".into(),
        SimplificationOutcome::SimplifiesTo(t) => format!("simplifies to {t}"),
        SimplificationOutcome::NoSimplification => "no simplification".into(),
    }
}

fn initial_state(c: &Circuit, input: &str, ancilla: Option<&Path>) -> Result<StateVector> {
    if !input.chars().all(|ch| ch == '0' || ch == '1') {
        bail!("input '{input}' must be a bitstring");
    }
    if input.len() == c.qubits() && ancilla.is_none() {
        return Ok(StateVector::from_bitstring(input)?);
    }
    if input.len() != c.inputs() {
        bail!(
            "input has {} bits; expected {} (inputs) or {} (whole register)",
            input.len(),
            c.inputs(),
            c.qubits()
        );
    }
    let x = if input.is_empty() {
        0
    } else {
        usize::from_str_radix(input, 2)?
    };
    Ok(c.initial_state(x, &load_ancilla(c, ancilla)?)?)
}

#[allow(clippy::too_many_arguments)]
fn verify(
    suite: &str,
    trials: Option<usize>,
    qubits: Option<usize>,
    seed: u64,
    backend: &str,
    abs_tol: Option<f64>,
    rel_tol: Option<f64>,
    instance: Option<usize>,
    report: Option<&Path>,
    format: &str,
) -> Result<ExitCode, HarnessError> {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse()?]
    };
    let backend: Backend = backend.parse()?;
    let format: ReportFormat = format.parse()?;
    let mut docs = String::new();
    let mut failed = false;
    for s in suites {
        let mut cfg = SuiteConfig {
            seed,
            backend,
            ..SuiteConfig::new(s)
        };
        cfg.trials = trials.unwrap_or(cfg.trials);
        cfg.max_qubits = qubits.unwrap_or(cfg.max_qubits);
        if abs_tol.is_some() || rel_tol.is_some() {
            let base = s.default_tolerance();
            let t = Tolerance::new(
                abs_tol.unwrap_or(base.abs_eps),
                rel_tol.unwrap_or(base.rel_eps),
            )
            .map_err(|e| HarnessError::InvalidConfig(e.to_string()))?;
            cfg.tolerance = Some(t);
        }
        if let Some(i) = instance {
            match replay_instance(&cfg, i)? {
                None => docs.push_str(&format!("{s} instance {i}: pass\n")),
                Some(v) => {
                    failed = true;
                    docs.push_str(&format!(
                        "{s} instance {i}: violation: {}\n  instance: {}\n",
                        v.message, v.instance
                    ));
                }
            }
            continue;
        }
        let r = run_suite(&cfg)?;
        failed |= !r.passed();
        docs.push_str(&emit_report(&r, format));
    }
    print!("{docs}");
    if let Some(p) = report {
        fs::write(p, &docs)
            .map_err(|e| HarnessError::InvalidConfig(format!("writing {}: {e}", p.display())))?;
    }
    Ok(if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    let tol = Tolerance::default();
    match cli.command {
        Command::Simulate {
            circuit,
            input,
            ancilla,
            trace,
        } => {
            let c = load_circuit(&circuit)?;
            let init = initial_state(&c, &input, ancilla.as_deref())?;
            if trace {
                for (layer, psi) in simulate_with_trace(&c, &init)? {
                    println!("# after layer {layer}");
                    print!("{}", format_state(&psi));
                }
            } else {
                print!("{}", format_state(&simulate(&c, &init)?));
            }
        }
        Command::CheckParity { circuit, ancilla } => {
            let c = load_circuit(&circuit)?;
            let anc = load_ancilla(&c, ancilla.as_deref())?;
            let check = computes_parity_on_basis(&c, &anc, &tol)?;
            println!(
                "computes_parity={}",
                if check.computes() { "yes" } else { "no" }
            );
            println!("max_residual={:e}", check.max_residual);
            if let Some(x) = check.counterexample {
                println!("counterexample={x:0w$b}", w = c.inputs());
                return Ok(ExitCode::from(1));
            }
        }
        Command::Classify {
            circuit,
            layer,
            state,
        } => {
            let c = load_circuit(&circuit)?;
            if layer == 0 || layer > c.depth() {
                bail!("layer {layer} is outside 1..={}", c.depth());
            }
            let psi = load_state(&state)?;
            if psi.qubits() != c.qubits() {
                bail!(
                    "state has {} qubits, circuit has {}",
                    psi.qubits(),
                    c.qubits()
                );
            }
            for g in c.multi_layer(layer) {
                println!(
                    "{}: {}",
                    g.qubits(),
                    outcome_text(classify_simplification(g.qubits(), &psi, &tol))
                );
            }
        }
        Command::Reduce { circuit, output } => {
            let c = load_circuit(&circuit)?;
            let case = reduction_case(&c, &tol);
            let reduced = depth_reduce(&c, &tol)?;
            eprintln!(
                "reduced depth {} to {} ({case:?})",
                c.depth(),
                reduced.depth()
            );
            emit(&serialize_circuit(&reduced), output.as_deref())?;
        }
        Command::KillParity {
            unitaries,
            parity,
            output,
        } => {
            let (r, units) = parse_unitaries(&read(&unitaries)?)
                .with_context(|| format!("parsing {}", unitaries.display()))?;
            let psi = kill_parity_state(r, &units, parity == 1, &tol)?;
            emit(&format_state(&psi), output.as_deref())?;
        }
        Command::Refute {
            circuit,
            ancilla,
            output,
        } => {
            let c = load_circuit(&circuit)?;
            let anc = load_ancilla(&c, ancilla.as_deref())?;
            let cert = match c.depth() {
                1 => refute_depth1(&c, &anc, &tol)?,
                2 => match refute_depth2_structural(&c, &anc, &tol)? {
                    Depth2Outcome::Refuted {
                        certificate,
                        tactic,
                    } => {
                        eprintln!("refuted with {tactic:?}");
                        certificate
                    }
                    Depth2Outcome::NotApplicable => {
                        eprintln!("not applicable: the circuit's topology defeats both structural tactics");
                        return Ok(ExitCode::from(1));
                    }
                },
                d => bail!("refuters handle depth 1 and 2, circuit has depth {d}"),
            };
            emit(&cert.to_document(), output.as_deref())?;
        }
        Command::VerifyCert { certificate } => {
            let cert = parse_certificate(&read(&certificate)?)?;
            match verify_certificate(&cert, &tol) {
                Ok(()) => println!("certificate verified"),
                Err(e) => {
                    println!("certificate rejected: {e}");
                    return Ok(ExitCode::from(1));
                }
            }
        }
        Command::Verify {
            suite,
            trials,
            qubits,
            seed,
            backend,
            abs_tol,
            rel_tol,
            instance,
            report,
            format,
        } => {
            return verify(
                &suite,
                trials,
                qubits,
                seed,
                &backend,
                abs_tol,
                rel_tol,
                instance,
                report.as_deref(),
                &format,
            )
            .map_err(anyhow::Error::from);
        }
        Command::StateToPoly { state, blocks } => {
            let psi = load_state(&state)?;
            let bp = parse_blocks(psi.qubits(), &blocks)?;
            print!("{}", format_poly(&poly_of_state(&psi, &bp)?));
        }
        Command::PolyToState {
            poly,
            qubits,
            blocks,
        } => {
            let f = parse_poly(&read(&poly)?)?;
            let bp = parse_blocks(qubits, &blocks)?;
            print!("{}", format_state(&state_of_poly(&f, &bp)?));
        }
        Command::Decompose { poly } => {
            let f = parse_poly(&read(&poly)?)?;
            for (i, g) in decompose(&f)?.iter().enumerate() {
                println!("# factor {}", i + 1);
                print!("{}", format_poly(g));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
