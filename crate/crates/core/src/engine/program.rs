// Copyright 2026 The geophase Authors
// SPDX-License-Identifier: Apache-2.0

use crate::numerics::{ComplexMatrix, C64};
use crate::qubit::QubitOperator;
use crate::synth::SynthesisTarget;

use super::{EngineError, HybridSpace};

/// Unitarity tolerance for local steps and expected unitaries.
pub const LOCAL_UNITARY_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub enum PulseStep {
    /// Σ_k P_k ⊗ D(λ_k·amp) over the spectrum of `control`.
    ConditionalDisplacement {
        control: QubitOperator,
        amp: C64,
    },
    /// Σ_k P_k ⊗ R(λ_k·angle).
    ConditionalRotation {
        control: QubitOperator,
        angle: f64,
    },
    /// 2×2 on one qubit (1-based) or a full-register unitary when `qubit` is None.
    LocalUnitary {
        qubit: Option<usize>,
        matrix: ComplexMatrix,
    },
    GlobalPhase(f64),
}

impl PulseStep {
    pub fn cdisp(control: QubitOperator, amp: C64) -> Self {
        PulseStep::ConditionalDisplacement { control, amp }
    }

    pub fn crot(control: QubitOperator, angle: f64) -> Self {
        PulseStep::ConditionalRotation { control, angle }
    }

    pub fn local(qubit: usize, matrix: ComplexMatrix) -> Self {
        PulseStep::LocalUnitary {
            qubit: Some(qubit),
            matrix,
        }
    }

    pub fn register_unitary(matrix: ComplexMatrix) -> Self {
        PulseStep::LocalUnitary {
            qubit: None,
            matrix,
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            PulseStep::ConditionalDisplacement { control, amp } => {
                PulseStep::cdisp(control.clone(), -amp)
            }
            PulseStep::ConditionalRotation { control, angle } => {
                PulseStep::crot(control.clone(), -angle)
            }
            PulseStep::LocalUnitary { qubit, matrix } => PulseStep::LocalUnitary {
                qubit: *qubit,
                matrix: matrix.dagger(),
            },
            PulseStep::GlobalPhase(p) => PulseStep::GlobalPhase(-p),
        }
    }

    pub fn control(&self) -> Option<&QubitOperator> {
        match self {
            PulseStep::ConditionalDisplacement { control, .. }
            | PulseStep::ConditionalRotation { control, .. } => Some(control),
            _ => None,
        }
    }

    fn validate(&self, space: &HybridSpace) -> Result<(), EngineError> {
        let n = space.num_qubits();
        match self {
            PulseStep::ConditionalDisplacement { control, amp } => {
                if !amp.re.is_finite() || !amp.im.is_finite() {
                    return Err(EngineError::InvalidStep("non-finite amplitude".into()));
                }
                check_register(control, n)
            }
            PulseStep::ConditionalRotation { control, angle } => {
                if !angle.is_finite() {
                    return Err(EngineError::InvalidStep("non-finite angle".into()));
                }
                check_register(control, n)
            }
            PulseStep::LocalUnitary { qubit, matrix } => {
                let dim = match qubit {
                    Some(q) if *q >= 1 && *q <= n => 2,
                    Some(q) => {
                        return Err(EngineError::InvalidStep(format!(
                            "local unitary on qubit {q} of {n}"
                        )))
                    }
                    None => space.qubit_dim(),
                };
                if matrix.shape() != (dim, dim) {
                    return Err(EngineError::InvalidStep(format!(
                        "local unitary must be {dim}×{dim}, got {:?}",
                        matrix.shape()
                    )));
                }
                matrix
                    .check_unitary(LOCAL_UNITARY_TOL)
                    .map_err(|e| EngineError::InvalidStep(e.to_string()))
            }
            PulseStep::GlobalPhase(p) => {
                if p.is_finite() {
                    Ok(())
                } else {
                    Err(EngineError::InvalidStep("non-finite phase".into()))
                }
            }
        }
    }
}

fn check_register(control: &QubitOperator, n: usize) -> Result<(), EngineError> {
    if control.num_qubits() != n {
        return Err(EngineError::InvalidStep(format!(
            "control acts on {} qubits, register has {n}",
            control.num_qubits()
        )));
    }
    Ok(())
}

/// Ordered pulse sequence; steps[0] is applied first.
#[derive(Clone, Debug, PartialEq)]
pub struct PulseProgram {
    space: HybridSpace,
    steps: Vec<PulseStep>,
    pub cyclic: bool,
    pub target: Option<SynthesisTarget>,
    pub expected: Option<ComplexMatrix>,
    /// Preconditions the synthesized unitary relies on.
    pub assumptions: Vec<String>,
}

impl PulseProgram {
    pub fn new(space: HybridSpace, steps: Vec<PulseStep>) -> Result<Self, EngineError> {
        for s in &steps {
            s.validate(&space)?;
        }
        Ok(Self {
            space,
            steps,
            cyclic: false,
            target: None,
            expected: None,
            assumptions: Vec::new(),
        })
    }

    pub fn empty(space: HybridSpace) -> Self {
        Self::new(space, Vec::new()).expect("no steps to validate")
    }

    pub fn space(&self) -> &HybridSpace {
        &self.space
    }

    pub fn steps(&self) -> &[PulseStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn push(&mut self, step: PulseStep) -> Result<(), EngineError> {
        step.validate(&self.space)?;
        self.steps.push(step);
        Ok(())
    }

    pub fn extend(&mut self, other: &PulseProgram) -> Result<(), EngineError> {
        if other.space.num_qubits() != self.space.num_qubits() {
            return Err(EngineError::InvalidStep("register mismatch".into()));
        }
        self.steps.extend(other.steps.iter().cloned());
        Ok(())
    }

    pub fn with_expected(mut self, u: ComplexMatrix) -> Result<Self, EngineError> {
        let d = self.space.qubit_dim();
        if u.shape() != (d, d) {
            return Err(EngineError::Dimension {
                expected: d,
                got: u.rows(),
            });
        }
        self.expected = Some(u);
        Ok(self)
    }

    /// Same program on a different Fock cutoff.
    pub fn with_cutoff(&self, cutoff: usize) -> Result<Self, EngineError> {
        let mut p = self.clone();
        p.space = HybridSpace::new(self.space.num_qubits(), cutoff)?;
        Ok(p)
    }

    /// Steps reversed and individually inverted.
    pub fn inverse(&self) -> Self {
        Self {
            space: self.space.clone(),
            steps: self.steps.iter().rev().map(PulseStep::inverse).collect(),
            cyclic: self.cyclic,
            target: None,
            expected: self.expected.as_ref().map(ComplexMatrix::dagger),
            assumptions: self.assumptions.clone(),
        }
    }

    pub fn has_local_steps(&self) -> bool {
        self.steps
            .iter()
            .any(|s| matches!(s, PulseStep::LocalUnitary { .. }))
    }
}
