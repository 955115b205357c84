// Copyright 2026 The geophase Authors
// SPDX-License-Identifier: Apache-2.0

//! Blockwise state propagation without forming joint matrices.

use crate::numerics::{ComplexMatrix, C64, ZERO};
use crate::parallel::{for_each_chunk_mut, map_range, Execution};
use crate::qubit::{QubitOperator, SpectralBasis};

use super::{EngineError, HybridSpace, HybridState, PulseProgram, PulseStep};

/// Operator on the Fock factor of one control branch.
#[derive(Clone, Debug)]
pub(crate) enum FockOp {
    Identity,
    Diagonal(Vec<C64>),
    Dense(ComplexMatrix),
}

impl FockOp {
    fn apply(&self, row: &[C64], out: &mut [C64]) {
        match self {
            FockOp::Identity => out.copy_from_slice(row),
            FockOp::Diagonal(d) => {
                for ((o, r), p) in out.iter_mut().zip(row).zip(d) {
                    *o = r * p;
                }
            }
            FockOp::Dense(m) => {
                let c = row.len();
                for (i, o) in out.iter_mut().enumerate() {
                    let mrow = &m.as_slice()[i * c..(i + 1) * c];
                    *o = mrow.iter().zip(row).map(|(a, b)| a * b).sum();
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) enum CompiledStep {
    /// Per-row Fock operator in the control eigenbasis.
    Block {
        basis: Option<ComplexMatrix>,
        levels: Vec<usize>,
        ops: Vec<FockOp>,
    },
    Local {
        bit: usize,
        u: [C64; 4],
    },
    Register(ComplexMatrix),
    Phase(C64),
}

/// Applies `level_op(λ)` across the spectrum of `control`.
fn block_step(
    control: &QubitOperator,
    level_op: impl Fn(f64) -> FockOp,
) -> Result<CompiledStep, EngineError> {
    let spec = control.spectrum()?;
    let ops = spec.values().iter().map(|&l| level_op(l)).collect();
    Ok(match spec.basis() {
        SpectralBasis::Computational { levels } => CompiledStep::Block {
            basis: None,
            levels: levels.clone(),
            ops,
        },
        SpectralBasis::Dense { vectors, levels } => CompiledStep::Block {
            basis: Some(vectors.clone()),
            levels: levels.clone(),
            ops,
        },
    })
}

pub(crate) fn compile(program: &PulseProgram) -> Result<Vec<CompiledStep>, EngineError> {
    let space = program.space();
    let fock = space.fock();
    let n = space.num_qubits();
    let mut out = Vec::with_capacity(program.len());
    for step in program.steps() {
        let c = match step {
            PulseStep::ConditionalDisplacement { control, amp } => block_step(control, |l| {
                let a = *amp * l;
                if a == ZERO {
                    FockOp::Identity
                } else {
                    FockOp::Dense(fock.displacement(a))
                }
            })?,
            PulseStep::ConditionalRotation { control, angle } => block_step(control, |l| {
                let th = angle * l;
                if th == 0.0 {
                    FockOp::Identity
                } else {
                    FockOp::Diagonal(fock.rotation_phases(th))
                }
            })?,
            PulseStep::LocalUnitary {
                qubit: Some(q),
                matrix,
            } => CompiledStep::Local {
                bit: n - q,
                u: [
                    matrix[(0, 0)],
                    matrix[(0, 1)],
                    matrix[(1, 0)],
                    matrix[(1, 1)],
                ],
            },
            PulseStep::LocalUnitary {
                qubit: None,
                matrix,
            } => CompiledStep::Register(matrix.clone()),
            PulseStep::GlobalPhase(p) => CompiledStep::Phase(C64::from_polar(1.0, *p)),
        };
        out.push(c);
    }
    Ok(out)
}

fn row_is_zero(row: &[C64]) -> bool {
    row.iter().all(|a| *a == ZERO)
}

/// out = U · Ψ on the qubit index (rows of length `cutoff`).
fn register_transform(
    u: &ComplexMatrix,
    input: &[C64],
    cutoff: usize,
    exec: Execution,
) -> Vec<C64> {
    let d = u.rows();
    let nonzero: Vec<usize> = (0..d)
        .filter(|&q| !row_is_zero(&input[q * cutoff..(q + 1) * cutoff]))
        .collect();
    let mut out = vec![ZERO; input.len()];
    for_each_chunk_mut(exec, &mut out, cutoff, |r, orow| {
        for &q in &nonzero {
            let w = u[(r, q)];
            if w != ZERO {
                for (o, x) in orow.iter_mut().zip(&input[q * cutoff..(q + 1) * cutoff]) {
                    *o += w * x;
                }
            }
        }
    });
    out
}

pub(crate) fn apply_compiled(
    steps: &[CompiledStep],
    space: &HybridSpace,
    mut amps: Vec<C64>,
    exec: Execution,
) -> Vec<C64> {
    let c = space.cutoff();
    for step in steps {
        amps = match step {
            CompiledStep::Phase(p) => {
                for a in amps.iter_mut() {
                    *a *= p;
                }
                amps
            }
            CompiledStep::Block { basis, levels, ops } => {
                let rotated = match basis {
                    Some(v) => register_transform(&v.dagger(), &amps, c, exec),
                    None => amps,
                };
                let mut out = vec![ZERO; rotated.len()];
                for_each_chunk_mut(exec, &mut out, c, |q, orow| {
                    let row = &rotated[q * c..(q + 1) * c];
                    if !row_is_zero(row) {
                        ops[levels[q]].apply(row, orow);
                    }
                });
                match basis {
                    Some(v) => register_transform(v, &out, c, exec),
                    None => out,
                }
            }
            CompiledStep::Local { bit, u } => {
                let mask = 1usize << bit;
                let mut out = vec![ZERO; amps.len()];
                for_each_chunk_mut(exec, &mut out, c, |q, orow| {
                    let q0 = q & !mask;
                    let q1 = q | mask;
                    let (w0, w1) = if q & mask == 0 {
                        (u[0], u[1])
                    } else {
                        (u[2], u[3])
                    };
                    let r0 = &amps[q0 * c..(q0 + 1) * c];
                    let r1 = &amps[q1 * c..(q1 + 1) * c];
                    for ((o, a), b) in orow.iter_mut().zip(r0).zip(r1) {
                        *o = w0 * a + w1 * b;
                    }
                });
                out
            }
            CompiledStep::Register(u) => register_transform(u, &amps, c, exec),
        };
    }
    amps
}

/// Applies the program to a state, steps in list order.
pub fn apply_program(
    program: &PulseProgram,
    state: &HybridState,
) -> Result<HybridState, EngineError> {
    apply_program_with(program, state, Execution::default())
}

pub fn apply_program_with(
    program: &PulseProgram,
    state: &HybridState,
    exec: Execution,
) -> Result<HybridState, EngineError> {
    if state.space() != program.space() {
        return Err(EngineError::Dimension {
            expected: program.space().dim(),
            got: state.amplitudes().len(),
        });
    }
    let compiled = compile(program)?;
    let amps = apply_compiled(
        &compiled,
        program.space(),
        state.amplitudes().to_vec(),
        exec,
    );
    HybridState::new(program.space().clone(), amps)
}

/// Propagates several initial states through one compiled program.
pub(crate) fn propagate_many(
    program: &PulseProgram,
    inputs: Vec<Vec<C64>>,
    exec: Execution,
) -> Result<Vec<Vec<C64>>, EngineError> {
    let compiled = compile(program)?;
    let space = program.space();
    Ok(map_range(exec, inputs.len(), |i| {
        apply_compiled(&compiled, space, inputs[i].clone(), exec)
    }))
}
