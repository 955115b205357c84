// Copyright 2026 The geophase Authors
// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::str::FromStr;

use crate::numerics::{StateVector, C64, ONE, ZERO};

use super::operator::QubitOperator;
use super::pauli::{PauliLabel, PauliSum};
use super::su2::su2_triple;
use super::QubitError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CodeName {
    Steane3,
    Steane7,
    FiveQubit,
    Dfs2,
    Dfs4,
}

impl CodeName {
    pub const ALL: [CodeName; 5] = [
        CodeName::Steane3,
        CodeName::Steane7,
        CodeName::FiveQubit,
        CodeName::Dfs2,
        CodeName::Dfs4,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CodeName::Steane3 => "steane3",
            CodeName::Steane7 => "steane7",
            CodeName::FiveQubit => "five_qubit",
            CodeName::Dfs2 => "dfs2",
            CodeName::Dfs4 => "dfs4",
        }
    }

    pub fn physical_qubits(self) -> usize {
        match self {
            CodeName::Steane3 => 3,
            CodeName::Steane7 => 7,
            CodeName::FiveQubit => 5,
            CodeName::Dfs2 => 2,
            CodeName::Dfs4 => 4,
        }
    }
}

impl fmt::Display for CodeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CodeName {
    type Err = QubitError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CodeName::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| QubitError::UnknownCode(s.to_string()))
    }
}

/// Encoded qubit: two codewords and the encoded Pauli triple.
#[derive(Clone, Debug)]
pub struct Code {
    pub name: CodeName,
    pub physical_qubits: usize,
    pub zero: StateVector,
    pub one: StateVector,
    pub x: QubitOperator,
    pub y: QubitOperator,
    pub z: QubitOperator,
}

fn superposition(n: usize, bits: &[&str], norm: f64) -> StateVector {
    let mut amps = vec![ZERO; 1 << n];
    for b in bits {
        debug_assert_eq!(b.len(), n);
        let idx = usize::from_str_radix(b, 2).expect("binary literal");
        amps[idx] += ONE * norm;
    }
    StateVector::new(amps)
}

/// Q = ¼[I + (XXIII)_cyc − (XIXII)_cyc − (XXXXI)_cyc].
fn five_qubit_q() -> PauliSum {
    let n = 5;
    let mut q = PauliSum::identity(n).expect("5 qubits");
    for (pattern, sign) in [(0b11000u64, 1.0), (0b10100, -1.0), (0b11110, -1.0)] {
        for shift in 0..5 {
            let rot = ((pattern >> shift) | (pattern << (5 - shift))) & 0b11111;
            let l = PauliLabel::from_masks(n, rot, 0).expect("in range");
            q.add_term(l, ONE * sign);
        }
    }
    q.scale(ONE * 0.25)
}

fn basis(n: usize, idx: usize) -> Vec<C64> {
    StateVector::basis(1 << n, idx).into_amplitudes()
}

pub fn build_code(name: CodeName) -> Result<Code, QubitError> {
    let n = name.physical_qubits();
    let t = su2_triple(n)?;
    let zero = match name {
        CodeName::Steane3 => superposition(3, &["111", "100", "010", "001"], 0.5),
        CodeName::Steane7 => superposition(
            7,
            &[
                "1111111", "0101010", "1001100", "0011001", "1110000", "0100101", "1000011",
                "0010110",
            ],
            1.0 / 8f64.sqrt(),
        ),
        CodeName::FiveQubit => StateVector::new(five_qubit_q().apply(&basis(5, 0))),
        CodeName::Dfs2 => superposition(2, &["01"], 1.0),
        CodeName::Dfs4 => superposition(4, &["0011", "0110", "0101"], 1.0 / 3f64.sqrt()),
    };
    let one = match name {
        CodeName::FiveQubit => StateVector::new(five_qubit_q().apply(&basis(5, 31))),
        CodeName::Dfs2 => superposition(2, &["10"], 1.0),
        CodeName::Dfs4 => superposition(4, &["1100", "1001", "1010"], 1.0 / 3f64.sqrt()),
        _ => StateVector::new(t.x.pauli_sum().apply(zero.amplitudes())),
    };
    Ok(Code {
        name,
        physical_qubits: n,
        zero,
        one,
        x: t.x,
        y: t.y,
        z: t.z,
    })
}
