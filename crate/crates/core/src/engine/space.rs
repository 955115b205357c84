// Copyright 2026 The geophase Authors
// SPDX-License-Identifier: Apache-2.0

use crate::bosonic::FockSpace;
use crate::numerics::{C64, ONE, ZERO};
use crate::qubit::MAX_QUBITS;

use super::EngineError;

/// Qubit register ⊗ truncated Fock space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HybridSpace {
    num_qubits: usize,
    fock: FockSpace,
}

impl HybridSpace {
    pub fn new(num_qubits: usize, cutoff: usize) -> Result<Self, EngineError> {
        if num_qubits == 0 || num_qubits > MAX_QUBITS.min(30) {
            return Err(EngineError::Space(format!(
                "unsupported register size {num_qubits}"
            )));
        }
        let fock = FockSpace::new(cutoff).map_err(|e| EngineError::Space(e.to_string()))?;
        Ok(Self { num_qubits, fock })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn cutoff(&self) -> usize {
        self.fock.cutoff()
    }

    pub fn fock(&self) -> &FockSpace {
        &self.fock
    }

    pub fn qubit_dim(&self) -> usize {
        1usize << self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.qubit_dim() * self.cutoff()
    }

    pub fn index(&self, q: usize, n: usize) -> usize {
        q * self.cutoff() + n
    }
}

/// Joint state, row-major: amplitude of |q⟩⊗|n⟩ at q·cutoff + n.
#[derive(Clone, Debug, PartialEq)]
pub struct HybridState {
    space: HybridSpace,
    amps: Vec<C64>,
}

impl HybridState {
    pub fn new(space: HybridSpace, amps: Vec<C64>) -> Result<Self, EngineError> {
        if amps.len() != space.dim() {
            return Err(EngineError::Dimension {
                expected: space.dim(),
                got: amps.len(),
            });
        }
        Ok(Self { space, amps })
    }

    pub fn basis(space: &HybridSpace, q: usize, n: usize) -> Result<Self, EngineError> {
        Self::product(space, &basis_vec(space.qubit_dim(), q)?, n)
    }

    /// |ψ⟩ ⊗ |n⟩.
    pub fn product(space: &HybridSpace, qubits: &[C64], n: usize) -> Result<Self, EngineError> {
        if qubits.len() != space.qubit_dim() {
            return Err(EngineError::Dimension {
                expected: space.qubit_dim(),
                got: qubits.len(),
            });
        }
        if n >= space.cutoff() {
            return Err(EngineError::FockIndex {
                index: n,
                cutoff: space.cutoff(),
            });
        }
        let mut amps = vec![ZERO; space.dim()];
        for (q, &a) in qubits.iter().enumerate() {
            amps[space.index(q, n)] = a;
        }
        Ok(Self {
            space: space.clone(),
            amps,
        })
    }

    pub fn space(&self) -> &HybridSpace {
        &self.space
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    pub fn amplitude(&self, q: usize, n: usize) -> C64 {
        self.amps[self.space.index(q, n)]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Qubit amplitudes ⟨q, n|ψ⟩ for fixed Fock index n.
    pub fn qubit_slice(&self, n: usize) -> Vec<C64> {
        (0..self.space.qubit_dim())
            .map(|q| self.amplitude(q, n))
            .collect()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

fn basis_vec(dim: usize, q: usize) -> Result<Vec<C64>, EngineError> {
    if q >= dim {
        return Err(EngineError::Dimension {
            expected: dim,
            got: q + 1,
        });
    }
    let mut v = vec![ZERO; dim];
    v[q] = ONE;
    Ok(v)
}
