// Copyright 2026 The geophase Authors
// SPDX-License-Identifier: Apache-2.0

//! Command-line front end: synthesize, verify, run and report.
//!
//! Artifacts are written to files; stdout carries only the path of the
//! artifact, diagnostics go to stderr.

pub mod commands;
pub mod config;
pub mod error;
pub mod wire;

use std::f64::consts::PI;
use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::commands::Outcome;
use crate::config::RunConfig;
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "geophase",
    version,
    about = "Geometric-phase gate synthesis for qubits coupled to an oscillator"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct ConfigArgs {
    /// Fock cutoff; for `verify` it re-targets every program.
    #[arg(long)]
    pub cutoff: Option<usize>,
    #[arg(long, default_value_t = 16)]
    pub probe_dim: usize,
    #[arg(long, default_value_t = 1e-8)]
    pub fidelity_tol: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub disentangle_tol: f64,
    #[arg(long, default_value_t = geophase::numerics::DEFAULT_DENSE_CAP)]
    pub dense_cap: usize,
    /// Fock level the mode starts in.
    #[arg(long, default_value_t = 0)]
    pub fock_init: usize,
}

impl ConfigArgs {
    fn config(&self, output: &std::path::Path) -> RunConfig {
        let d = RunConfig::default();
        RunConfig {
            fock_cutoff: self.cutoff.unwrap_or(d.fock_cutoff),
            probe_dim: self.probe_dim,
            fidelity_tol: self.fidelity_tol,
            disentangle_tol: self.disentangle_tol,
            dense_cap: self.dense_cap,
            fock_init: self.fock_init,
            output_path: output.display().to_string(),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compile a target JSON into a pulse program.
    Synth {
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Verify programs or gate specs and write a report.
    Verify {
        #[arg(required = true)]
        programs: Vec<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value = "report.json")]
        report: PathBuf,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Emit a named gate with its reference matrix and program.
    Gate {
        #[arg(long)]
        name: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        code: Option<String>,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Run amplitude amplification and report marked probabilities.
    RunAa {
        #[arg(long)]
        qubits: usize,
        /// Comma-separated bit strings, qubit 1 first.
        #[arg(long)]
        marked: String,
        #[arg(long, default_value_t = PI, allow_negative_numbers = true)]
        phi: f64,
        #[arg(long, default_value_t = PI, allow_negative_numbers = true)]
        vartheta: f64,
        #[arg(long)]
        iters: usize,
        #[arg(long, default_value = "report.json")]
        report: PathBuf,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Prepare cosθ|0…0⟩ − i sinθ|1…1⟩ and report its fidelity.
    Ghz {
        #[arg(long)]
        qubits: usize,
        #[arg(long, allow_negative_numbers = true)]
        theta: f64,
        #[arg(long, default_value = "report.json")]
        report: PathBuf,
        #[command(flatten)]
        config: ConfigArgs,
    },
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Synth {
            target,
            out,
            config,
        } => commands::cmd_synth(target, out, &config.config(out)),
        Command::Verify {
            programs,
            jobs,
            report,
            config,
        } => commands::cmd_verify(
            programs,
            *jobs,
            config.cutoff,
            report,
            &config.config(report),
        ),
        Command::Gate {
            name,
            n,
            code,
            out,
            config,
        } => commands::cmd_gate(name, *n, code.as_deref(), out, &config.config(out)),
        Command::RunAa {
            qubits,
            marked,
            phi,
            vartheta,
            iters,
            report,
            config,
        } => commands::cmd_run_aa(
            *qubits,
            marked,
            *phi,
            *vartheta,
            *iters,
            report,
            &config.config(report),
        ),
        Command::Ghz {
            qubits,
            theta,
            report,
            config,
        } => commands::cmd_ghz(*qubits, *theta, report, &config.config(report)),
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(o) => {
            println!("{}", o.path);
            if o.passed {
                0
            } else {
                eprintln!("verification failed; see {}", o.path);
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
