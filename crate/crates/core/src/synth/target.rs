// Copyright 2026 The geophase Authors
// SPDX-License-Identifier: Apache-2.0

use crate::engine::PulseProgram;
use crate::numerics::{expm_hermitian, hermitian_function, ComplexMatrix, C64, ONE};
use crate::qubit::{collective_j, Axis, QubitOperator};

use super::SynthError;

/// Largest register for which dense expected unitaries are formed.
pub const MAX_ORACLE_QUBITS: usize = 10;

/// Conjugating unitary of [`SynthesisTarget::Conjugated`].
#[derive(Clone, Debug, PartialEq)]
pub enum Outer {
    Program(Box<PulseProgram>),
    Unitary(ComplexMatrix),
}

/// Unitary to synthesize. Every variant denotes a fixed qubit unitary.
#[derive(Clone, Debug, PartialEq)]
pub enum SynthesisTarget {
    /// e^{iθAB}.
    Pair {
        a: QubitOperator,
        b: QubitOperator,
        theta: f64,
    },
    /// exp(−iτ·AB·sin(θC + φ)).
    TripleSin {
        a: QubitOperator,
        b: QubitOperator,
        c: QubitOperator,
        theta_rot: f64,
        phi: f64,
        tau: f64,
    },
    /// e^{−iλt·ABC} for self-inverse or idempotent C.
    TripleExact {
        a: QubitOperator,
        b: QubitOperator,
        c: QubitOperator,
        lambda: f64,
        t: f64,
    },
    /// e^{−iλ′t·ABC} approximated with a small rotation θ.
    TripleApprox {
        a: QubitOperator,
        b: QubitOperator,
        c: QubitOperator,
        lambda_prime: f64,
        t: f64,
        theta_rot: f64,
    },
    /// exp(−iλt·sin(θJ_axis + φ)).
    TrigCollective {
        axis: Axis,
        num_qubits: usize,
        theta_rot: f64,
        phi: f64,
        lambda: f64,
        t: f64,
    },
    /// exp(−i·sign·λt·σ_axis^{⊗N}).
    PauliString {
        axis: Axis,
        num_qubits: usize,
        sign: i8,
        lambda: f64,
        t: f64,
    },
    /// Π exp of commuting parts, each part scaled by its coefficient.
    CommutingSum { parts: Vec<(SynthesisTarget, f64)> },
    /// U·inner·U†.
    Conjugated {
        outer: Outer,
        inner: Box<SynthesisTarget>,
    },
    /// e^{−i·phase·P_n}, P_n the Hamming-weight-n projector.
    Projector {
        num_qubits: usize,
        n: usize,
        phase: f64,
    },
    /// e^{−it·F(Jz)}; `values[n]` is F(n − N/2).
    FJz {
        num_qubits: usize,
        values: Vec<f64>,
        t: f64,
    },
    /// e^{−i·phase·|bits⟩⟨bits|}.
    BasisProjector { bits: Vec<bool>, phase: f64 },
    /// exp(−iτ·AjAk·sin(θjCj − θkCk + φ)), τ = |αjαk|, φ = arg αj − arg αk.
    GeneralPair {
        aj: QubitOperator,
        ak: QubitOperator,
        cj: QubitOperator,
        ck: QubitOperator,
        theta_j: f64,
        theta_k: f64,
        alpha_j: C64,
        alpha_k: C64,
    },
    /// e^{i·phase}·I.
    GlobalPhase { num_qubits: usize, phase: f64 },
}

impl SynthesisTarget {
    pub fn variant_name(&self) -> &'static str {
        match self {
            SynthesisTarget::Pair { .. } => "pair",
            SynthesisTarget::TripleSin { .. } => "triple_sin",
            SynthesisTarget::TripleExact { .. } => "triple_exact",
            SynthesisTarget::TripleApprox { .. } => "triple_approx",
            SynthesisTarget::TrigCollective { .. } => "trig_collective",
            SynthesisTarget::PauliString { .. } => "pauli_string",
            SynthesisTarget::CommutingSum { .. } => "commuting_sum",
            SynthesisTarget::Conjugated { .. } => "conjugated",
            SynthesisTarget::Projector { .. } => "projector",
            SynthesisTarget::FJz { .. } => "fjz",
            SynthesisTarget::BasisProjector { .. } => "basis_projector",
            SynthesisTarget::GeneralPair { .. } => "general_pair",
            SynthesisTarget::GlobalPhase { .. } => "global_phase",
        }
    }

    pub fn num_qubits(&self) -> Result<usize, SynthError> {
        Ok(match self {
            SynthesisTarget::Pair { a, .. }
            | SynthesisTarget::TripleSin { a, .. }
            | SynthesisTarget::TripleExact { a, .. }
            | SynthesisTarget::TripleApprox { a, .. } => a.num_qubits(),
            SynthesisTarget::GeneralPair { aj, .. } => aj.num_qubits(),
            SynthesisTarget::TrigCollective { num_qubits, .. }
            | SynthesisTarget::PauliString { num_qubits, .. }
            | SynthesisTarget::Projector { num_qubits, .. }
            | SynthesisTarget::FJz { num_qubits, .. }
            | SynthesisTarget::GlobalPhase { num_qubits, .. } => *num_qubits,
            SynthesisTarget::BasisProjector { bits, .. } => bits.len(),
            SynthesisTarget::Conjugated { inner, .. } => inner.num_qubits()?,
            SynthesisTarget::CommutingSum { parts } => match parts.first() {
                Some((p, _)) => p.num_qubits()?,
                None => return Err(SynthError::Invalid("empty commuting sum".into())),
            },
        })
    }

    /// The same target with its Hamiltonian multiplied by `coeff`.
    pub fn scaled(&self, coeff: f64) -> Self {
        let mut t = self.clone();
        match &mut t {
            SynthesisTarget::Pair { theta, .. } => *theta *= coeff,
            SynthesisTarget::TripleSin { tau, .. } => *tau *= coeff,
            SynthesisTarget::TripleExact { lambda, .. } => *lambda *= coeff,
            SynthesisTarget::TripleApprox { lambda_prime, .. } => *lambda_prime *= coeff,
            SynthesisTarget::TrigCollective { lambda, .. }
            | SynthesisTarget::PauliString { lambda, .. } => *lambda *= coeff,
            SynthesisTarget::CommutingSum { parts } => {
                for (_, c) in parts.iter_mut() {
                    *c *= coeff;
                }
            }
            SynthesisTarget::Conjugated { inner, .. } => **inner = inner.scaled(coeff),
            SynthesisTarget::Projector { phase, .. }
            | SynthesisTarget::BasisProjector { phase, .. }
            | SynthesisTarget::GlobalPhase { phase, .. } => *phase *= coeff,
            SynthesisTarget::FJz { t, .. } => *t *= coeff,
            SynthesisTarget::GeneralPair { alpha_j, .. } => *alpha_j *= coeff,
        }
        t
    }

    /// Dense expected unitary, or None above [`MAX_ORACLE_QUBITS`].
    pub fn expected_unitary(&self) -> Result<Option<ComplexMatrix>, SynthError> {
        let n = self.num_qubits()?;
        if n > MAX_ORACLE_QUBITS {
            return Ok(None);
        }
        self.dense_unitary(n).map(Some)
    }

    fn dense_unitary(&self, n: usize) -> Result<ComplexMatrix, SynthError> {
        let d = 1usize << n;
        Ok(match self {
            SynthesisTarget::Pair { a, b, theta } => expm_hermitian(&product(a, b), -theta)?,
            SynthesisTarget::TripleSin {
                a,
                b,
                c,
                theta_rot,
                phi,
                tau,
            } => {
                let s = hermitian_function(&c.to_matrix(), |x| (theta_rot * x + phi).sin())?;
                expm_hermitian(&product(a, b).matmul(&s), *tau)?
            }
            SynthesisTarget::TripleExact { a, b, c, lambda, t } => {
                expm_hermitian(&product(a, b).matmul(&c.to_matrix()), lambda * t)?
            }
            SynthesisTarget::TripleApprox {
                a,
                b,
                c,
                lambda_prime,
                t,
                ..
            } => expm_hermitian(&product(a, b).matmul(&c.to_matrix()), lambda_prime * t)?,
            SynthesisTarget::TrigCollective {
                axis,
                num_qubits,
                theta_rot,
                phi,
                lambda,
                t,
            } => {
                let j = collective_j(*axis, *num_qubits)?.to_matrix();
                let s = hermitian_function(&j, |x| (theta_rot * x + phi).sin())?;
                expm_hermitian(&s, lambda * t)?
            }
            SynthesisTarget::PauliString {
                axis,
                num_qubits,
                sign,
                lambda,
                t,
            } => {
                let p = QubitOperator::uniform(*num_qubits, axis.pauli())?.to_matrix();
                let x = f64::from(*sign) * lambda * t;
                &ComplexMatrix::identity(d).scale(ONE * x.cos())
                    - &p.scale(crate::numerics::I * x.sin())
            }
            SynthesisTarget::CommutingSum { parts } => {
                let mut u = ComplexMatrix::identity(d);
                for (p, c) in parts {
                    u = p.scaled(*c).dense_unitary(n)?.matmul(&u);
                }
                u
            }
            SynthesisTarget::Conjugated { outer, inner } => {
                let w = outer_unitary(outer)?;
                w.matmul(&inner.dense_unitary(n)?).matmul(&w.dagger())
            }
            SynthesisTarget::Projector { n: w, phase, .. } => {
                diag_by_weight(n, |k| if k == *w { -phase } else { 0.0 })
            }
            SynthesisTarget::FJz { values, t, .. } => {
                // Weight-k states have Jz = N/2 − k, i.e. F(N/2 − k) = values[N − k].
                diag_by_weight(n, |k| -values[n - k] * t)
            }
            SynthesisTarget::BasisProjector { bits, phase } => {
                let idx = bits_index(bits);
                let diag: Vec<C64> = (0..d)
                    .map(|b| {
                        if b == idx {
                            C64::from_polar(1.0, -phase)
                        } else {
                            ONE
                        }
                    })
                    .collect();
                ComplexMatrix::from_diagonal(&diag)
            }
            SynthesisTarget::GeneralPair {
                aj,
                ak,
                cj,
                ck,
                theta_j,
                theta_k,
                alpha_j,
                alpha_k,
            } => {
                let tau = (alpha_j * alpha_k).norm();
                let phi = alpha_j.arg() - alpha_k.arg();
                let arg =
                    &cj.to_matrix().scale(ONE * *theta_j) - &ck.to_matrix().scale(ONE * *theta_k);
                let s = hermitian_function(&arg, |x| (x + phi).sin())?;
                expm_hermitian(&product(aj, ak).matmul(&s), tau)?
            }
            SynthesisTarget::GlobalPhase { phase, .. } => {
                ComplexMatrix::identity(d).scale(C64::from_polar(1.0, *phase))
            }
        })
    }
}

fn product(a: &QubitOperator, b: &QubitOperator) -> ComplexMatrix {
    a.to_matrix().matmul(&b.to_matrix())
}

fn outer_unitary(outer: &Outer) -> Result<ComplexMatrix, SynthError> {
    match outer {
        Outer::Unitary(u) => Ok(u.clone()),
        Outer::Program(p) => p
            .expected
            .clone()
            .ok_or_else(|| SynthError::Invalid("outer program carries no expected unitary".into())),
    }
}

/// Basis index of a bitstring, first bit = qubit 1 = most significant.
pub fn bits_index(bits: &[bool]) -> usize {
    bits.iter().fold(0, |acc, &b| (acc << 1) | usize::from(b))
}

fn diag_by_weight(n: usize, phase_of_weight: impl Fn(usize) -> f64) -> ComplexMatrix {
    let diag: Vec<C64> = (0..1usize << n)
        .map(|b| C64::from_polar(1.0, phase_of_weight(b.count_ones() as usize)))
        .collect();
    ComplexMatrix::from_diagonal(&diag)
}
