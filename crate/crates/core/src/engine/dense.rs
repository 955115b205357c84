// Copyright 2026 The geophase Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense joint-matrix backend for small systems.

use crate::numerics::{kron, ComplexMatrix, C64, DEFAULT_DENSE_CAP};
use crate::parallel::Execution;
use crate::qubit::QubitOperator;

use super::{EngineError, HybridSpace, PulseProgram, PulseStep};

fn check_cap(space: &HybridSpace, cap: usize) -> Result<(), EngineError> {
    if space.dim() > cap {
        return Err(EngineError::CapExceeded {
            dim: space.dim(),
            cap,
        });
    }
    Ok(())
}

fn assemble(
    control: &QubitOperator,
    space: &HybridSpace,
    fock_op: impl Fn(f64) -> ComplexMatrix,
) -> Result<ComplexMatrix, EngineError> {
    check_cap(space, DEFAULT_DENSE_CAP)?;
    let spec = control.spectrum()?;
    let mut out = ComplexMatrix::zeros(space.dim(), space.dim());
    for (k, &l) in spec.values().iter().enumerate() {
        out = &out + &kron(&spec.projector(k), &fock_op(l))?;
    }
    Ok(out)
}

/// Σ_k P_k ⊗ D(λ_k α) as a joint matrix.
pub fn conditional_displacement(
    control: &QubitOperator,
    amp: C64,
    space: &HybridSpace,
) -> Result<ComplexMatrix, EngineError> {
    assemble(control, space, |l| space.fock().displacement(amp * l))
}

/// Σ_k P_k ⊗ R(λ_k θ) as a joint matrix.
pub fn conditional_rotation(
    control: &QubitOperator,
    angle: f64,
    space: &HybridSpace,
) -> Result<ComplexMatrix, EngineError> {
    assemble(control, space, |l| space.fock().rotation(angle * l))
}

fn qubit_embedding(
    space: &HybridSpace,
    qubit: usize,
    u: &ComplexMatrix,
) -> Result<ComplexMatrix, EngineError> {
    let n = space.num_qubits();
    let left = ComplexMatrix::identity(1 << (qubit - 1));
    let right = ComplexMatrix::identity((1 << (n - qubit)) * space.cutoff());
    Ok(kron(&kron(&left, u)?, &right)?)
}

pub fn step_matrix(step: &PulseStep, space: &HybridSpace) -> Result<ComplexMatrix, EngineError> {
    match step {
        PulseStep::ConditionalDisplacement { control, amp } => {
            conditional_displacement(control, *amp, space)
        }
        PulseStep::ConditionalRotation { control, angle } => {
            conditional_rotation(control, *angle, space)
        }
        PulseStep::LocalUnitary {
            qubit: Some(q),
            matrix,
        } => qubit_embedding(space, *q, matrix),
        PulseStep::LocalUnitary {
            qubit: None,
            matrix,
        } => Ok(kron(matrix, &ComplexMatrix::identity(space.cutoff()))?),
        PulseStep::GlobalPhase(p) => {
            Ok(ComplexMatrix::identity(space.dim()).scale(C64::from_polar(1.0, *p)))
        }
    }
}

/// Ordered product S_k ⋯ S_1 of the joint step matrices.
pub fn program_unitary(program: &PulseProgram) -> Result<ComplexMatrix, EngineError> {
    program_unitary_with(program, DEFAULT_DENSE_CAP, Execution::default())
}

pub fn program_unitary_with(
    program: &PulseProgram,
    cap: usize,
    exec: Execution,
) -> Result<ComplexMatrix, EngineError> {
    let space = program.space();
    check_cap(space, cap)?;
    let mut acc = ComplexMatrix::identity(space.dim());
    for step in program.steps() {
        acc = step_matrix(step, space)?.matmul_with(&acc, exec);
    }
    Ok(acc)
}
