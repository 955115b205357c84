// Copyright 2026 The geophase Authors
// SPDX-License-Identifier: Apache-2.0

use super::operator::QubitOperator;
use super::pauli::{Pauli, PauliLabel};
use super::QubitError;

/// Unscaled generators with [x, y] = 2i z.
#[derive(Clone, Debug, PartialEq)]
pub struct Su2Triple {
    pub x: QubitOperator,
    pub y: QubitOperator,
    pub z: QubitOperator,
}

/// Odd N: (X^N, Y^N, ±Z^N), the sign being − for N ≡ 3 (mod 4).
/// Even N: (X^N, Y X^{N−1}, Z I^{N−1}).
pub fn su2_triple(num_qubits: usize) -> Result<Su2Triple, QubitError> {
    let n = num_qubits;
    let x = QubitOperator::uniform(n, Pauli::X)?;
    if n % 2 == 1 {
        let sign = if n % 4 == 1 { 1.0 } else { -1.0 };
        return Ok(Su2Triple {
            x,
            y: QubitOperator::uniform(n, Pauli::Y)?,
            z: QubitOperator::pauli(PauliLabel::uniform(n, Pauli::Z)?, sign),
        });
    }
    let mut yf = vec![Pauli::X; n];
    yf[0] = Pauli::Y;
    let mut zf = vec![Pauli::I; n];
    zf[0] = Pauli::Z;
    Ok(Su2Triple {
        x,
        y: QubitOperator::pauli(PauliLabel::from_factors(&yf)?, 1.0),
        z: QubitOperator::pauli(PauliLabel::from_factors(&zf)?, 1.0),
    })
}
