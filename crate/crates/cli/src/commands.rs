// Copyright 2026 The geophase Authors
// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::Path;

use geophase::algorithms::{aa_run, ghz_prepare, AASpec};
use geophase::engine::{verify_on_basis, EngineError, PulseProgram, VerificationReport};
use geophase::gates::{gate, GateName, GateSpec};
use geophase::numerics::StateVector;
use geophase::parallel::Execution;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::wire::{
    gate_from_dto, gate_to_dto, matrix_to_dto, parse_bits, parse_target, parse_value,
    program_from_dto, program_to_dto, to_json, unknown_variant, Cx, GateSpecDto, MatrixDto,
    ProgramDto,
};

/// Largest logical dimension whose effective unitary is written to reports.
const MAX_REPORTED_DIM: usize = 64;

/// Where a command wrote its artifact, and whether it passed.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub path: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct VerifyEntry {
    pub source: String,
    pub num_qubits: usize,
    pub cutoff: usize,
    /// "computational" or "code".
    pub basis: String,
    pub passed: bool,
    pub fidelity: Option<f64>,
    pub infidelity: Option<f64>,
    pub disentangle_residual: Option<f64>,
    pub worst_input: Option<usize>,
    pub truncation_residual: Option<f64>,
    pub warnings: Vec<String>,
    pub error: Option<String>,
    pub effective_unitary: Option<MatrixDto>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct VerifyReport {
    pub config: RunConfig,
    pub passed: bool,
    pub reports: Vec<VerifyEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AaPointDto {
    pub k: usize,
    pub p_marked: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct AaSpecDto {
    pub qubits: usize,
    pub marked: Vec<String>,
    pub phi: f64,
    pub vartheta: f64,
    pub iters: usize,
    pub algorithm: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AaReport {
    pub config: RunConfig,
    pub spec: AaSpecDto,
    pub iterations: Vec<AaPointDto>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct GhzReport {
    pub config: RunConfig,
    pub qubits: usize,
    pub theta: f64,
    pub passed: bool,
    pub fidelity: f64,
    pub leakage: f64,
    pub state: Vec<Cx>,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<String, CliError> {
    fs::write(path, text)
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
    Ok(path.display().to_string())
}

pub fn cmd_synth(target: &Path, out: &Path, config: &RunConfig) -> Result<Outcome, CliError> {
    config.validate()?;
    let t = parse_target(&read(target)?)?;
    let program = config.synthesizer().synthesize(&t)?;
    let path = write(out, &to_json(&program_to_dto(&program)))?;
    Ok(Outcome { path, passed: true })
}

/// A parsed verification input.
#[derive(Clone, Debug)]
pub enum Artifact {
    Program(PulseProgram),
    Gate(GateSpec),
}

pub fn load_artifact(text: &str) -> Result<Artifact, CliError> {
    let v = parse_value(text)?;
    if let Some(name) = unknown_variant(&v) {
        return Err(CliError::Unsupported(format!(
            "unsupported target variant {name:?}"
        )));
    }
    let is_gate = v.get("reference").is_some() && v.get("program").is_some();
    if is_gate {
        let dto: GateSpecDto =
            serde_json::from_value(v).map_err(|e| CliError::Input(format!("gate spec: {e}")))?;
        Ok(Artifact::Gate(gate_from_dto(&dto)?))
    } else {
        let dto: ProgramDto =
            serde_json::from_value(v).map_err(|e| CliError::Input(format!("program: {e}")))?;
        Ok(Artifact::Program(program_from_dto(&dto)?))
    }
}

fn entry_from_report(
    base: VerifyEntry,
    r: &VerificationReport,
    config: &RunConfig,
    mut warnings: Vec<String>,
) -> VerifyEntry {
    warnings.extend(r.warnings.iter().cloned());
    let k = r.effective_unitary.rows();
    VerifyEntry {
        passed: config.passes(r.fidelity, r.disentangle_residual),
        fidelity: r.fidelity,
        infidelity: r.infidelity(),
        disentangle_residual: Some(r.disentangle_residual),
        worst_input: Some(r.worst_input),
        truncation_residual: Some(r.truncation_residual),
        warnings,
        effective_unitary: (k <= MAX_REPORTED_DIM).then(|| matrix_to_dto(&r.effective_unitary)),
        ..base
    }
}

fn verify_one(
    source: &str,
    artifact: &Artifact,
    config: &RunConfig,
    cutoff: Option<usize>,
) -> Result<VerifyEntry, CliError> {
    let (program, basis, expected, kind) = match artifact {
        Artifact::Program(p) => (p.clone(), None, p.expected.clone(), "computational"),
        Artifact::Gate(g) => match &g.code_basis {
            Some(b) => (
                g.program.clone(),
                Some(b.clone()),
                Some(g.reference.clone()),
                "code",
            ),
            None => (
                g.program.clone(),
                None,
                Some(g.reference.clone()),
                "computational",
            ),
        },
    };
    let program = match cutoff {
        Some(c) => program.with_cutoff(c)?,
        None => program,
    };
    let space = program.space().clone();
    let basis: Vec<StateVector> = match basis {
        Some(b) => b,
        None => {
            let d = space.qubit_dim();
            if d.saturating_mul(d) > config.dense_cap {
                return Err(CliError::Unsupported(format!(
                    "full-basis verification of {} qubits exceeds denseCap {}",
                    space.num_qubits(),
                    config.dense_cap
                )));
            }
            (0..d).map(|q| StateVector::basis(d, q)).collect()
        }
    };
    let mut warnings = Vec::new();
    if expected.is_none() {
        warnings.push("no expected unitary: fidelity not assessed".to_string());
    }
    let base = VerifyEntry {
        source: source.to_string(),
        num_qubits: space.num_qubits(),
        cutoff: space.cutoff(),
        basis: kind.to_string(),
        passed: false,
        fidelity: None,
        infidelity: None,
        disentangle_residual: None,
        worst_input: None,
        truncation_residual: None,
        warnings: Vec::new(),
        error: None,
        effective_unitary: None,
    };
    if config.fock_init >= space.cutoff() {
        return Err(CliError::Input(format!(
            "fockInit {} outside cutoff {}",
            config.fock_init,
            space.cutoff()
        )));
    }
    let opts = config.verify_options(Execution::default());
    match verify_on_basis(&program, &basis, expected.as_ref(), &opts) {
        Ok(r) => Ok(entry_from_report(base, &r, config, warnings)),
        Err(EngineError::Entangled { report, .. }) => {
            let mut e = entry_from_report(base, &report, config, warnings);
            e.passed = false;
            e.error = Some("mode not disentangled".into());
            Ok(e)
        }
        Err(EngineError::NotCyclic) => Ok(VerifyEntry {
            warnings,
            error: Some(EngineError::NotCyclic.to_string()),
            ..base
        }),
        Err(e) => Err(e.into()),
    }
}

pub fn cmd_verify(
    programs: &[impl AsRef<Path> + Sync],
    jobs: usize,
    cutoff: Option<usize>,
    report: &Path,
    config: &RunConfig,
) -> Result<Outcome, CliError> {
    config.validate()?;
    if jobs == 0 {
        return Err(CliError::Input("--jobs must be at least 1".into()));
    }
    if programs.is_empty() {
        return Err(CliError::Input("no programs given".into()));
    }
    let loaded = programs
        .iter()
        .map(|p| {
            let p = p.as_ref();
            load_artifact(&read(p)?)
                .map(|a| (p.display().to_string(), a))
                .map_err(|e| match e {
                    CliError::Input(m) => CliError::Input(format!("{}: {m}", p.display())),
                    other => other,
                })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Input(format!("thread pool: {e}")))?;
    let entries: Vec<Result<VerifyEntry, CliError>> = pool.install(|| {
        loaded
            .par_iter()
            .map(|(src, a)| verify_one(src, a, config, cutoff))
            .collect()
    });
    let reports = entries.into_iter().collect::<Result<Vec<_>, _>>()?;
    let passed = reports.iter().all(|e| e.passed);
    let doc = VerifyReport {
        config: RunConfig {
            output_path: report.display().to_string(),
            ..config.clone()
        },
        passed,
        reports,
    };
    let path = write(report, &to_json(&doc))?;
    Ok(Outcome { path, passed })
}

pub fn cmd_gate(
    name: &str,
    n: Option<usize>,
    code: Option<&str>,
    out: &Path,
    config: &RunConfig,
) -> Result<Outcome, CliError> {
    config.validate()?;
    let g = gate(GateName::parse(name, n, code)?, &config.synthesizer())?;
    let path = write(out, &to_json(&gate_to_dto(&g)))?;
    Ok(Outcome { path, passed: true })
}

pub fn cmd_run_aa(
    qubits: usize,
    marked: &str,
    phi: f64,
    vartheta: f64,
    iters: usize,
    report: &Path,
    config: &RunConfig,
) -> Result<Outcome, CliError> {
    config.validate()?;
    let marked_bits = marked
        .split(',')
        .map(|s| parse_bits(s.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    let spec = AASpec {
        phi,
        vartheta,
        ..AASpec::grover(qubits, marked_bits, iters)
    };
    let trace = aa_run(&config.synthesizer(), &spec)?;
    let doc = AaReport {
        config: RunConfig {
            output_path: report.display().to_string(),
            ..config.clone()
        },
        spec: AaSpecDto {
            qubits,
            marked: marked.split(',').map(|s| s.trim().to_string()).collect(),
            phi,
            vartheta,
            iters,
            algorithm: "walsh_hadamard".into(),
        },
        iterations: trace
            .points
            .iter()
            .map(|p| AaPointDto {
                k: p.k,
                p_marked: p.p_marked,
            })
            .collect(),
    };
    let path = write(report, &to_json(&doc))?;
    Ok(Outcome { path, passed: true })
}

pub fn cmd_ghz(
    qubits: usize,
    theta: f64,
    report: &Path,
    config: &RunConfig,
) -> Result<Outcome, CliError> {
    config.validate()?;
    let r = ghz_prepare(&config.synthesizer(), qubits, theta)?;
    let passed = r.fidelity >= 1.0 - config.fidelity_tol;
    let doc = GhzReport {
        config: RunConfig {
            output_path: report.display().to_string(),
            ..config.clone()
        },
        qubits,
        theta,
        passed,
        fidelity: r.fidelity,
        leakage: r.leakage,
        state: r.state.amplitudes().iter().map(|z| [z.re, z.im]).collect(),
    };
    let path = write(report, &to_json(&doc))?;
    Ok(Outcome { path, passed })
}

/// Re-serializes any artifact this tool emits, for round-trip checks.
pub fn reserialize(text: &str) -> Result<String, CliError> {
    let v = parse_value(text)?;
    let bad = |e: serde_json::Error| CliError::Input(e.to_string());
    if v.get("reports").is_some() {
        return Ok(to_json(
            &serde_json::from_value::<VerifyReport>(v).map_err(bad)?,
        ));
    }
    if v.get("iterations").is_some() {
        return Ok(to_json(
            &serde_json::from_value::<AaReport>(v).map_err(bad)?,
        ));
    }
    if v.get("state").is_some() {
        return Ok(to_json(
            &serde_json::from_value::<GhzReport>(v).map_err(bad)?,
        ));
    }
    match load_artifact(text)? {
        Artifact::Program(p) => Ok(to_json(&program_to_dto(&p))),
        Artifact::Gate(g) => Ok(to_json(&gate_to_dto(&g))),
    }
}
