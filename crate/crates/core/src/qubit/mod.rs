// Copyright 2026 The geophase Authors
// SPDX-License-Identifier: Apache-2.0

//! Qubit-register operators as Pauli sums, su(2) triples and small codes.

mod codes;
mod operator;
mod pauli;
mod su2;

use thiserror::Error;

pub use codes::{build_code, Code, CodeName};
pub use operator::{
    classify, classify_matrix, collective_j, commutation_check, Axis, CommutationReport,
    OperatorClass, QubitOperator, Relation, SpectralBasis, Spectrum, ALGEBRA_TOL, MERGE_TOL,
};
pub use pauli::{
    i_pow, parse_terms, Pauli, PauliLabel, PauliString, PauliSum, DROP_TOL, MAX_QUBITS,
};
pub use su2::{su2_triple, Su2Triple};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QubitError {
    #[error("register size {0} outside 1..=64")]
    RegisterSize(usize),
    #[error("qubit index {index} outside 1..={num_qubits}")]
    QubitIndex { index: usize, num_qubits: usize },
    #[error("register mismatch: {0} vs {1} qubits")]
    RegisterMismatch(usize, usize),
    #[error("operator is not Hermitian (imaginary coefficient {0:e})")]
    NotHermitian(f64),
    #[error("cannot parse Pauli text: {0}")]
    Parse(String),
    #[error("unknown code {0:?}")]
    UnknownCode(String),
    #[error("spectral decomposition of a {0}-qubit non-diagonal operator exceeds the dense limit")]
    SpectrumTooLarge(usize),
    #[error("numerics: {0}")]
    Numerics(String),
}
