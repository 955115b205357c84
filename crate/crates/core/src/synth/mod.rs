// Copyright 2026 The geophase Authors
// SPDX-License-Identifier: Apache-2.0

//! Compilation of target unitaries into cyclic pulse programs.

mod compile;
mod target;

use thiserror::Error;

use crate::engine::EngineError;
use crate::numerics::NumericsError;
use crate::qubit::QubitError;

pub use compile::{ApproxProgram, Synthesizer, DEFAULT_CUTOFF, MAX_BRANCH_AMPLITUDE};
pub use target::{bits_index, Outer, SynthesisTarget, MAX_ORACLE_QUBITS};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SynthError {
    #[error("commutation precondition failed (residual {residual:e})")]
    Commutation { residual: f64 },
    #[error("parts {i} and {j} of the sum do not commute")]
    NonCommutingParts { i: usize, j: usize },
    #[error("classification failed: {0}")]
    Classification(String),
    #[error("invalid target: {0}")]
    Invalid(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Qubit(#[from] QubitError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}
