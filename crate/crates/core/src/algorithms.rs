// Copyright 2026 The geophase Authors
// SPDX-License-Identifier: Apache-2.0

//! GHZ preparation and amplitude amplification on synthesized phases.

use std::collections::HashSet;
use std::f64::consts::PI;

use crate::engine::{apply_program, HybridState, PulseProgram, PulseStep};
use crate::gates::hadamard_layer;
use crate::numerics::{ComplexMatrix, StateVector, C64, ONE, ZERO};
use crate::qubit::Axis;
use crate::synth::{bits_index, SynthError, SynthesisTarget, Synthesizer};

#[derive(Clone, Debug)]
pub struct GhzResult {
    pub state: StateVector,
    /// |⟨θ,N|ψ⟩|² against cosθ|0…0⟩ − i sinθ|1…1⟩.
    pub fidelity: f64,
    /// Population left outside the Fock vacuum.
    pub leakage: f64,
}

/// Runs exp(−iθσx^{⊗N}) on |0…0⟩⊗|0⟩.
pub fn ghz_prepare(synth: &Synthesizer, n: usize, theta: f64) -> Result<GhzResult, SynthError> {
    if n < 2 {
        return Err(SynthError::Invalid(
            "GHZ preparation needs at least two qubits".into(),
        ));
    }
    let program = synth.pauli_string(Axis::X, n, 1, theta)?;
    let space = program.space().clone();
    let out = apply_program(&program, &HybridState::basis(&space, 0, 0)?)?;
    let state = StateVector::new(out.qubit_slice(0));
    let mut ideal = vec![ZERO; space.qubit_dim()];
    ideal[0] = ONE * theta.cos();
    ideal[space.qubit_dim() - 1] = C64::new(0.0, -theta.sin());
    let fidelity = StateVector::new(ideal).overlap_probability(&state);
    let leakage = (1.0 - state.norm().powi(2)).max(0.0);
    Ok(GhzResult {
        state,
        fidelity,
        leakage,
    })
}

/// S₀^φ = e^{iφ|0…0⟩⟨0…0|}.
pub fn phase_oracle_s0(
    synth: &Synthesizer,
    n: usize,
    phi: f64,
) -> Result<PulseProgram, SynthError> {
    synth.projector(n, 0, -phi)
}

fn check_marked(n: usize, marked: &[Vec<bool>]) -> Result<(), SynthError> {
    let mut seen = HashSet::new();
    for m in marked {
        if m.len() != n {
            return Err(SynthError::Invalid(format!(
                "marked state of length {} on {n} qubits",
                m.len()
            )));
        }
        if !seen.insert(m.clone()) {
            return Err(SynthError::Invalid("duplicate marked state".into()));
        }
    }
    Ok(())
}

/// S_χ^ϑ = e^{iϑΣ_k|τ_k⟩⟨τ_k|}.
pub fn phase_oracle_schi(
    synth: &Synthesizer,
    n: usize,
    marked: &[Vec<bool>],
    vartheta: f64,
) -> Result<PulseProgram, SynthError> {
    check_marked(n, marked)?;
    if marked.is_empty() {
        return synth.global_phase(n, 0.0);
    }
    let parts: Vec<(SynthesisTarget, f64)> = marked
        .iter()
        .map(|bits| {
            (
                SynthesisTarget::BasisProjector {
                    bits: bits.clone(),
                    phase: -vartheta,
                },
                1.0,
            )
        })
        .collect();
    synth.commuting_sum(&parts)
}

/// e^{i(π−2ϑ)|τ⟩⟨τ|}.
pub fn s_tau_variant(
    synth: &Synthesizer,
    tau: &[bool],
    vartheta: f64,
) -> Result<PulseProgram, SynthError> {
    synth.basis_projector(tau, -(PI - 2.0 * vartheta))
}

#[derive(Clone, Debug, PartialEq)]
pub enum StatePrep {
    WalshHadamard,
    Custom(ComplexMatrix),
}

#[derive(Clone, Debug, PartialEq)]
pub struct AASpec {
    pub num_qubits: usize,
    pub marked: Vec<Vec<bool>>,
    pub phi: f64,
    pub vartheta: f64,
    pub algorithm: StatePrep,
    pub iterations: usize,
}

impl AASpec {
    /// Standard Grover search: Walsh–Hadamard preparation, φ = ϑ = π.
    pub fn grover(num_qubits: usize, marked: Vec<Vec<bool>>, iterations: usize) -> Self {
        Self {
            num_qubits,
            marked,
            phi: PI,
            vartheta: PI,
            algorithm: StatePrep::WalshHadamard,
            iterations,
        }
    }

    fn validate(&self) -> Result<(), SynthError> {
        if self.marked.is_empty() {
            return Err(SynthError::Invalid("no marked states".into()));
        }
        check_marked(self.num_qubits, &self.marked)?;
        if let StatePrep::Custom(a) = &self.algorithm {
            let d = 1usize << self.num_qubits;
            if a.shape() != (d, d) {
                return Err(SynthError::Invalid(format!(
                    "state preparation must be {d}×{d}"
                )));
            }
        }
        Ok(())
    }

    fn prep_steps(&self, inverse: bool) -> Vec<PulseStep> {
        match &self.algorithm {
            StatePrep::WalshHadamard => hadamard_layer(self.num_qubits),
            StatePrep::Custom(a) => vec![PulseStep::register_unitary(if inverse {
                a.dagger()
            } else {
                a.clone()
            })],
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AAPoint {
    pub k: usize,
    pub p_marked: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AATrace {
    /// Entry k is the marked probability after k applications of Q.
    pub points: Vec<AAPoint>,
    pub final_state: Option<StateVector>,
}

/// Q = −𝒜·S₀^φ·𝒜⁻¹·S_χ^ϑ, with S_χ^ϑ applied first.
pub fn grover_operator(synth: &Synthesizer, spec: &AASpec) -> Result<PulseProgram, SynthError> {
    spec.validate()?;
    let n = spec.num_qubits;
    let schi = phase_oracle_schi(synth, n, &spec.marked, spec.vartheta)?;
    let s0 = phase_oracle_s0(synth, n, spec.phi)?;
    let mut steps: Vec<PulseStep> = schi.steps().to_vec();
    steps.extend(spec.prep_steps(true));
    steps.extend(s0.steps().iter().cloned());
    steps.extend(spec.prep_steps(false));
    steps.push(PulseStep::GlobalPhase(PI));
    let mut p = PulseProgram::new(s0.space().clone(), steps)?;
    p.cyclic = true;
    Ok(p)
}

fn marked_probability(state: &HybridState, marked: &HashSet<usize>) -> f64 {
    let c = state.space().cutoff();
    state
        .amplitudes()
        .chunks(c)
        .enumerate()
        .filter(|(q, _)| marked.contains(q))
        .map(|(_, row)| row.iter().map(|a| a.norm_sqr()).sum::<f64>())
        .sum()
}

/// Applies Q `iterations` times to 𝒜|0…0⟩⊗|0⟩ by full hybrid propagation.
pub fn aa_run(synth: &Synthesizer, spec: &AASpec) -> Result<AATrace, SynthError> {
    let q = grover_operator(synth, spec)?;
    let space = q.space().clone();
    let marked: HashSet<usize> = spec.marked.iter().map(|b| bits_index(b)).collect();
    let mut prep = PulseProgram::new(space.clone(), spec.prep_steps(false))?;
    prep.cyclic = true;
    let mut state = apply_program(&prep, &HybridState::basis(&space, 0, 0)?)?;
    let mut points = vec![AAPoint {
        k: 0,
        p_marked: marked_probability(&state, &marked),
    }];
    for k in 1..=spec.iterations {
        state = apply_program(&q, &state)?;
        points.push(AAPoint {
            k,
            p_marked: marked_probability(&state, &marked),
        });
    }
    Ok(AATrace {
        points,
        final_state: Some(StateVector::new(state.qubit_slice(0))),
    })
}
