// Copyright 2026 The geophase Authors
// SPDX-License-Identifier: Apache-2.0

//! Named gates as exponentiated commuting Pauli sums.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, PI};
use std::fmt;
use std::str::FromStr;

use crate::engine::{PulseProgram, PulseStep};
use crate::numerics::{kron, pauli_matrices, ComplexMatrix, StateVector, C64, ONE, ZERO};
use crate::qubit::{build_code, Axis, CodeName, Pauli, PauliLabel, QubitOperator};
use crate::synth::{Outer, SynthError, SynthesisTarget, Synthesizer};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateName {
    Cnot,
    Cphase,
    Swap,
    Toffoli,
    Fredkin,
    /// Cⁿ-NOT on n + 1 qubits.
    CnNot(usize),
    /// e^{−iπP_N/2} on N qubits.
    UPn(usize),
    EncodedCphase(CodeName),
}

impl GateName {
    /// Parses a gate name with its optional size or code parameter.
    pub fn parse(name: &str, n: Option<usize>, code: Option<&str>) -> Result<Self, SynthError> {
        let need_n = || n.ok_or_else(|| SynthError::Invalid(format!("gate {name} needs --n")));
        Ok(match name {
            "cnot" => GateName::Cnot,
            "cphase" => GateName::Cphase,
            "swap" => GateName::Swap,
            "toffoli" => GateName::Toffoli,
            "fredkin" => GateName::Fredkin,
            "cn_not" => GateName::CnNot(need_n()?),
            "u_pn" => GateName::UPn(need_n()?),
            "encoded_cphase" => {
                let c =
                    code.ok_or_else(|| SynthError::Invalid("encoded_cphase needs --code".into()))?;
                GateName::EncodedCphase(CodeName::from_str(c)?)
            }
            other => return Err(SynthError::Invalid(format!("unknown gate {other:?}"))),
        })
    }

    pub fn base_name(&self) -> &'static str {
        match self {
            GateName::Cnot => "cnot",
            GateName::Cphase => "cphase",
            GateName::Swap => "swap",
            GateName::Toffoli => "toffoli",
            GateName::Fredkin => "fredkin",
            GateName::CnNot(_) => "cn_not",
            GateName::UPn(_) => "u_pn",
            GateName::EncodedCphase(_) => "encoded_cphase",
        }
    }

    pub fn num_qubits(&self) -> usize {
        match self {
            GateName::Cnot | GateName::Cphase | GateName::Swap => 2,
            GateName::Toffoli | GateName::Fredkin => 3,
            GateName::CnNot(n) => n + 1,
            GateName::UPn(n) => *n,
            GateName::EncodedCphase(c) => 2 * c.physical_qubits(),
        }
    }

    pub fn is_self_inverse(&self) -> bool {
        !matches!(self, GateName::UPn(_) | GateName::EncodedCphase(_))
    }
}

impl fmt::Display for GateName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateName::CnNot(n) | GateName::UPn(n) => write!(f, "{}({n})", self.base_name()),
            GateName::EncodedCphase(c) => write!(f, "{}({c})", self.base_name()),
            _ => f.write_str(self.base_name()),
        }
    }
}

/// A gate: reference unitary plus its pulse-program realization.
#[derive(Clone, Debug)]
pub struct GateSpec {
    pub name: GateName,
    pub num_qubits: usize,
    /// On the full register, or on `code_basis` for encoded gates.
    pub reference: ComplexMatrix,
    pub program: PulseProgram,
    /// Orthonormal logical basis for encoded gates.
    pub code_basis: Option<Vec<StateVector>>,
    pub local_equivalences: Vec<String>,
}

fn op(text: &str, n: usize) -> Result<QubitOperator, SynthError> {
    Ok(QubitOperator::parse(text, n)?)
}

/// e^{−iH} for a Hamiltonian of pairwise commuting Pauli terms.
pub fn lower_hamiltonian(
    synth: &Synthesizer,
    h: &QubitOperator,
) -> Result<PulseProgram, SynthError> {
    let n = h.num_qubits();
    let parts = h
        .terms()
        .map(|(label, c)| term_target(label, c).map(|t| (t, 1.0)))
        .collect::<Result<Vec<_>, _>>()?;
    if parts.is_empty() {
        return synth.global_phase(n, 0.0);
    }
    synth.commuting_sum(&parts)
}

/// Target realizing e^{−i·c·P}.
fn term_target(label: PauliLabel, c: f64) -> Result<SynthesisTarget, SynthError> {
    let n = label.num_qubits();
    let support = label.support();
    let factor = |q: usize| QubitOperator::single(n, q, label.factor(q));
    let rest = |from: usize| -> Result<QubitOperator, SynthError> {
        let mut f = vec![Pauli::I; n];
        for &q in &support[from..] {
            f[q - 1] = label.factor(q);
        }
        Ok(QubitOperator::pauli(PauliLabel::from_factors(&f)?, 1.0))
    };
    Ok(match support.len() {
        0 => SynthesisTarget::GlobalPhase {
            num_qubits: n,
            phase: -c,
        },
        1 => SynthesisTarget::Pair {
            a: factor(support[0])?,
            b: QubitOperator::identity(n)?,
            theta: -c,
        },
        2 => SynthesisTarget::Pair {
            a: factor(support[0])?,
            b: factor(support[1])?,
            theta: -c,
        },
        3 => SynthesisTarget::TripleExact {
            a: factor(support[0])?,
            b: factor(support[1])?,
            c: factor(support[2])?,
            lambda: c,
            t: 1.0,
        },
        w => {
            let first = label.factor(support[0]);
            match (w == n)
                .then_some(first)
                .filter(|p| label.factors().iter().all(|f| f == p))
            {
                Some(p) => SynthesisTarget::PauliString {
                    axis: match p {
                        Pauli::X => Axis::X,
                        Pauli::Y => Axis::Y,
                        _ => Axis::Z,
                    },
                    num_qubits: n,
                    sign: if c < 0.0 { -1 } else { 1 },
                    lambda: c.abs(),
                    t: 1.0,
                },
                None => SynthesisTarget::Pair {
                    a: factor(support[0])?,
                    b: rest(1)?,
                    theta: -c,
                },
            }
        }
    })
}

fn permutation(d: usize, f: impl Fn(usize) -> usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(d, d, |r, c| if f(c) == r { ONE } else { ZERO })
}

fn diag(d: usize, f: impl Fn(usize) -> C64) -> ComplexMatrix {
    let v: Vec<C64> = (0..d).map(f).collect();
    ComplexMatrix::from_diagonal(&v)
}

/// e^{−iθσy} on one qubit.
fn y_rotation(theta: f64) -> ComplexMatrix {
    let (c, s) = (theta.cos(), theta.sin());
    ComplexMatrix::mat2(ONE * c, ONE * -s, ONE * s, ONE * c)
}

fn embed_single(n: usize, qubit: usize, u: &ComplexMatrix) -> Result<ComplexMatrix, SynthError> {
    let left = ComplexMatrix::identity(1 << (qubit - 1));
    let right = ComplexMatrix::identity(1 << (n - qubit));
    Ok(kron(&kron(&left, u)?, &right)?)
}

pub fn gate(name: GateName, synth: &Synthesizer) -> Result<GateSpec, SynthError> {
    let n = name.num_qubits();
    let d = 1usize << n.min(20);
    let mut equivalences = Vec::new();
    let (h, reference, code_basis) = match name {
        GateName::Cnot => {
            equivalences.push("cnot = exp(-i pi/4 Y2) cphase exp(i pi/4 Y2)".to_string());
            let h = op("1.0 * I + -1.0 * Z1 + -1.0 * X2 + 1.0 * Z1 X2", 2)?.scale(FRAC_PI_4);
            (
                Some(h),
                permutation(4, |b| if b >= 2 { b ^ 1 } else { b }),
                None,
            )
        }
        GateName::Cphase => {
            let h = op("1.0 * I + -1.0 * Z1 + -1.0 * Z2 + 1.0 * Z1 Z2", 2)?.scale(FRAC_PI_4);
            (Some(h), diag(4, |b| if b == 3 { -ONE } else { ONE }), None)
        }
        GateName::Swap => {
            let h = op("1.0 * X1 X2 + 1.0 * Y1 Y2 + 1.0 * Z1 Z2 + -1.0 * I", 2)?.scale(FRAC_PI_4);
            (Some(h), permutation(4, |b| ((b & 1) << 1) | (b >> 1)), None)
        }
        GateName::Toffoli => {
            let f = |t: &str| op(t, 3);
            let h = f("1.0 * I + -1.0 * Z1")?
                .mul(&f("1.0 * I + -1.0 * Z2")?)?
                .mul(&f("1.0 * I + -1.0 * X3")?)?
                .scale(FRAC_PI_8);
            (
                Some(h),
                permutation(8, |b| if b >= 6 { b ^ 1 } else { b }),
                None,
            )
        }
        GateName::Fredkin => {
            let f = |t: &str| op(t, 3);
            let h = f("1.0 * I + -1.0 * Z1")?
                .mul(&f("1.0 * X2 X3 + 1.0 * Y2 Y3 + 1.0 * Z2 Z3 + -1.0 * I")?)?
                .scale(FRAC_PI_8);
            let swap23 = |b: usize| {
                if b & 4 == 0 {
                    b
                } else {
                    4 | ((b & 1) << 1) | ((b >> 1) & 1)
                }
            };
            (Some(h), permutation(8, swap23), None)
        }
        GateName::CnNot(m) => {
            if m == 0 {
                return Err(SynthError::Invalid(
                    "cn_not needs at least one control".into(),
                ));
            }
            equivalences.push(format!(
                "cn_not({m}) = exp(-i pi/4 Y{n}) exp(-i pi |1..1><1..1|) exp(i pi/4 Y{n})"
            ));
            let all = d - 1;
            (
                None,
                permutation(d, |b| if b | 1 == all { b ^ 1 } else { b }),
                None,
            )
        }
        GateName::UPn(m) => {
            if m == 0 {
                return Err(SynthError::Invalid("u_pn needs at least one qubit".into()));
            }
            let all = d - 1;
            let reference = diag(d, |b| {
                if b == all {
                    C64::from_polar(1.0, -FRAC_PI_2)
                } else {
                    ONE
                }
            });
            (None, reference, None)
        }
        GateName::EncodedCphase(code) => {
            let c = build_code(code)?;
            let p = c.z.lower_projector();
            let h = p.tensor(&p)?.scale(PI);
            let pairs = [
                (&c.zero, &c.zero),
                (&c.zero, &c.one),
                (&c.one, &c.zero),
                (&c.one, &c.one),
            ];
            let basis = pairs
                .iter()
                .map(|(a, b)| product_state(a, b))
                .collect::<Vec<_>>();
            (
                Some(h),
                diag(4, |b| if b == 3 { -ONE } else { ONE }),
                Some(basis),
            )
        }
    };
    let mut program = match (name, h) {
        (_, Some(h)) => lower_hamiltonian(synth, &h)?,
        (GateName::CnNot(_), None) => cn_not_program(synth, n)?,
        (GateName::UPn(_), None) => synth.basis_projector(&vec![true; n], FRAC_PI_2)?,
        _ => unreachable!("every gate without a Hamiltonian is handled above"),
    };
    if code_basis.is_none() {
        program.expected = Some(reference.clone());
    }
    Ok(GateSpec {
        name,
        num_qubits: n,
        reference,
        program,
        code_basis,
        local_equivalences: equivalences,
    })
}

fn product_state(a: &StateVector, b: &StateVector) -> StateVector {
    let mut v = Vec::with_capacity(a.dim() * b.dim());
    for x in a.amplitudes() {
        for y in b.amplitudes() {
            v.push(x * y);
        }
    }
    StateVector::new(v)
}

/// Conjugates e^{−iπ|1…1⟩⟨1…1|} by e^{−i(π/4)σy} on the last qubit.
fn cn_not_program(synth: &Synthesizer, n: usize) -> Result<PulseProgram, SynthError> {
    let u = y_rotation(FRAC_PI_4);
    let inner = synth.basis_projector(&vec![true; n], PI)?;
    let mut steps = vec![PulseStep::local(n, u.dagger())];
    steps.extend(inner.steps().iter().cloned());
    steps.push(PulseStep::local(n, u.clone()));
    let mut p = PulseProgram::new(inner.space().clone(), steps)?;
    p.cyclic = true;
    let outer = Outer::Unitary(embed_single(n, n, &u)?);
    p.target = Some(SynthesisTarget::Conjugated {
        outer,
        inner: Box::new(SynthesisTarget::BasisProjector {
            bits: vec![true; n],
            phase: PI,
        }),
    });
    Ok(p)
}

/// e^{−i(π/4)σ_{2y}} on two qubits, used by the cnot/cphase relation.
pub fn cnot_from_cphase_conjugator() -> Result<ComplexMatrix, SynthError> {
    embed_single(2, 2, &y_rotation(FRAC_PI_4))
}

pub fn hadamard_layer(n: usize) -> Vec<PulseStep> {
    (1..=n)
        .map(|q| PulseStep::local(q, pauli_matrices::hadamard()))
        .collect()
}
