// Copyright 2026 The geophase Authors
// SPDX-License-Identifier: Apache-2.0

//! Joint qubits ⊗ Fock propagation and verification.

mod dense;
mod program;
mod propagate;
mod space;
mod verify;

use thiserror::Error;

use crate::numerics::NumericsError;
use crate::qubit::QubitError;

pub use dense::{
    conditional_displacement, conditional_rotation, program_unitary, program_unitary_with,
    step_matrix,
};
pub use program::{PulseProgram, PulseStep, LOCAL_UNITARY_TOL};
pub use propagate::{apply_program, apply_program_with};
pub use space::{HybridSpace, HybridState};
pub use verify::{
    closure_defect, effective_qubit_unitary, verify_on_basis, ClosureDefect, VerificationReport,
    VerifyOptions,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EngineError {
    #[error("invalid hybrid space: {0}")]
    Space(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("Fock index {index} outside cutoff {cutoff}")]
    FockIndex { index: usize, cutoff: usize },
    #[error("invalid pulse step: {0}")]
    InvalidStep(String),
    #[error("joint dimension {dim} exceeds the dense cap {cap}; use the state-vector backend")]
    CapExceeded { dim: usize, cap: usize },
    #[error("program is not flagged cyclic")]
    NotCyclic,
    #[error("bosonic mode entangled at end of program (worst input {worst_input}, residual {residual:e})")]
    Entangled {
        worst_input: usize,
        residual: f64,
        report: Box<VerificationReport>,
    },
    #[error(transparent)]
    Qubit(#[from] QubitError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}
