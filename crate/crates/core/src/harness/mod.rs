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

//! Seeded verification suites with machine-readable reports.
//!
//! Every instance draws from its own generator seeded by
//! `derive_seed(config.seed, index)`, so results do not depend on how rayon
//! schedules the work and any single instance can be replayed alone.

mod report;
mod suites;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::numerics::{derive_seed, Tolerance};

pub use report::{emit_report, parse_machine_report, ReportFormat};

/// Largest register any suite may be configured with.
pub const MAX_SUITE_QUBITS: usize = 12;

/// Largest trial count accepted before a run is refused as over budget.
pub const MAX_TRIALS: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HarnessError {
    #[error("unknown suite '{0}'")]
    UnknownSuite(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("budget exceeded: {trials} trials requested, limit is {limit}")]
    BudgetExceeded { trials: usize, limit: usize },
    #[error("report line {line}: {message}")]
    ReportParse { line: usize, message: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    EntanglementLemma,
    SimplifyLemma,
    NoZeroDivisors,
    IrreducibilityFamily,
    SvVsRank,
    KillParity,
    Depth1Refute,
    TightParity3,
    Topology6Qubit,
    DepthReduce,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::EntanglementLemma,
        Suite::SimplifyLemma,
        Suite::NoZeroDivisors,
        Suite::IrreducibilityFamily,
        Suite::SvVsRank,
        Suite::KillParity,
        Suite::Depth1Refute,
        Suite::TightParity3,
        Suite::Topology6Qubit,
        Suite::DepthReduce,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::EntanglementLemma => "entanglement-lemma",
            Suite::SimplifyLemma => "simplify-lemma",
            Suite::NoZeroDivisors => "no-zero-divisors",
            Suite::IrreducibilityFamily => "irreducibility-family",
            Suite::SvVsRank => "sv-vs-rank",
            Suite::KillParity => "kill-parity",
            Suite::Depth1Refute => "depth1-refute",
            Suite::TightParity3 => "tight-parity3",
            Suite::Topology6Qubit => "topology-6qubit",
            Suite::DepthReduce => "depth-reduce",
        }
    }

    /// Default instance count; the defaults together run well under a
    /// minute on one core.
    pub fn default_trials(self) -> usize {
        match self {
            Suite::EntanglementLemma => 1000,
            Suite::SimplifyLemma | Suite::NoZeroDivisors | Suite::SvVsRank | Suite::KillParity => {
                500
            }
            // 200 per lemma shape.
            Suite::IrreducibilityFamily => 1200,
            Suite::Depth1Refute => 100,
            // One instance per basis state of the 4-qubit register.
            Suite::TightParity3 => 16,
            Suite::Topology6Qubit => 200,
            Suite::DepthReduce => 50,
        }
    }

    /// Register size cap by default. The polynomial suites read it as a cap
    /// on the number of variables.
    pub fn default_max_qubits(self) -> usize {
        match self {
            Suite::EntanglementLemma
            | Suite::SimplifyLemma
            | Suite::NoZeroDivisors
            | Suite::Depth1Refute => 6,
            Suite::IrreducibilityFamily => 12,
            Suite::SvVsRank => 8,
            Suite::KillParity | Suite::DepthReduce => 5,
            Suite::TightParity3 => 4,
            Suite::Topology6Qubit => 6,
        }
    }

    /// Smallest `max_qubits` that still admits an instance.
    pub fn min_qubits(self) -> usize {
        match self {
            Suite::EntanglementLemma
            | Suite::SimplifyLemma
            | Suite::NoZeroDivisors
            | Suite::KillParity => 2,
            Suite::SvVsRank => 1,
            // The four-block most-general shape has at least 10 variables.
            Suite::IrreducibilityFamily => 10,
            Suite::Depth1Refute => 3,
            Suite::TightParity3 => 4,
            Suite::Topology6Qubit => 6,
            Suite::DepthReduce => 2,
        }
    }

    pub fn default_tolerance(self) -> Tolerance {
        match self {
            Suite::EntanglementLemma
            | Suite::SimplifyLemma
            | Suite::NoZeroDivisors
            | Suite::Topology6Qubit => Tolerance::uniform(1e-8).expect("finite"),
            _ => Tolerance::default(),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| HarnessError::UnknownSuite(s.to_string()))
    }
}

/// Arithmetic used where an instance has an exact representation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Backend {
    #[default]
    Exact,
    Float,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Exact => "exact",
            Backend::Float => "float",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Backend {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Backend::Exact),
            "float" => Ok(Backend::Float),
            _ => Err(HarnessError::InvalidConfig(format!(
                "unknown backend '{s}', expected exact or float"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub trials: usize,
    pub max_qubits: usize,
    pub seed: u64,
    /// Replaces the suite's default tolerance when set.
    pub tolerance: Option<Tolerance>,
    pub backend: Backend,
}

impl SuiteConfig {
    pub fn new(suite: Suite) -> Self {
        Self {
            suite,
            trials: suite.default_trials(),
            max_qubits: suite.default_max_qubits(),
            seed: 1,
            tolerance: None,
            backend: Backend::Exact,
        }
    }

    pub fn tolerance(&self) -> Tolerance {
        self.tolerance
            .unwrap_or_else(|| self.suite.default_tolerance())
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.trials == 0 {
            return Err(HarnessError::InvalidConfig(
                "trials must be at least 1".into(),
            ));
        }
        if self.trials > MAX_TRIALS {
            return Err(HarnessError::BudgetExceeded {
                trials: self.trials,
                limit: MAX_TRIALS,
            });
        }
        if self.max_qubits > MAX_SUITE_QUBITS {
            return Err(HarnessError::InvalidConfig(format!(
                "max_qubits is {}, limit is {MAX_SUITE_QUBITS}",
                self.max_qubits
            )));
        }
        let min = self.suite.min_qubits();
        if self.max_qubits < min {
            return Err(HarnessError::InvalidConfig(format!(
                "{} needs max_qubits ≥ {min}, got {}",
                self.suite, self.max_qubits
            )));
        }
        Ok(())
    }

    /// Seed of instance `index`.
    pub fn instance_seed(&self, index: usize) -> u64 {
        derive_seed(self.seed, index as u64)
    }

    /// Command line that re-runs instance `index` alone.
    pub fn replay_command(&self, index: usize) -> String {
        let mut cmd = format!(
            "qaclab verify {} --trials {} --qubits {} --seed {} --backend {}",
            self.suite, self.trials, self.max_qubits, self.seed, self.backend
        );
        if let Some(t) = self.tolerance {
            cmd.push_str(&format!(
                " --abs-tol {:?} --rel-tol {:?}",
                t.abs_eps, t.rel_eps
            ));
        }
        cmd.push_str(&format!(" --instance {index}"));
        cmd
    }
}

/// One failed instance.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub index: usize,
    pub seed: u64,
    /// Everything needed to rebuild the instance by hand.
    pub instance: String,
    pub message: String,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub instances: usize,
    /// Instances that met the property's premise; the rest held vacuously.
    pub exercised: usize,
    pub violations: Vec<Violation>,
    /// Not part of the machine format, so it is ignored by equality.
    pub wall_time: Duration,
}

impl PartialEq for SuiteReport {
    fn eq(&self, other: &Self) -> bool {
        self.config == other.config
            && self.instances == other.instances
            && self.exercised == other.exercised
            && self.violations == other.violations
    }
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Runs every instance of the configured suite in parallel.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport, HarnessError> {
    cfg.validate()?;
    let start = Instant::now();
    let ctx = suites::SuiteContext::new(cfg);
    let outcomes: Vec<(Option<Violation>, bool)> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| ctx.run_instance(i))
        .collect();
    Ok(SuiteReport {
        config: *cfg,
        instances: cfg.trials,
        exercised: outcomes.iter().filter(|(_, e)| *e).count(),
        violations: outcomes.into_iter().filter_map(|(v, _)| v).collect(),
        wall_time: start.elapsed(),
    })
}

/// Re-runs instance `index` of the configured suite on its own.
pub fn replay_instance(cfg: &SuiteConfig, index: usize) -> Result<Option<Violation>, HarnessError> {
    cfg.validate()?;
    if index >= cfg.trials {
        return Err(HarnessError::InvalidConfig(format!(
            "instance {index} is outside 0..{}",
            cfg.trials
        )));
    }
    Ok(suites::SuiteContext::new(cfg).run_instance(index).0)
}

#[cfg(test)]
mod tests;
