// Copyright 2026 The geophase Authors
// SPDX-License-Identifier: Apache-2.0

//! JSON wire format. Complex numbers are `[re, im]`; matrices are row-major
//! nested arrays; operators use the Pauli-sum text form.

use geophase::engine::{HybridSpace, PulseProgram, PulseStep};
use geophase::gates::{GateName, GateSpec};
use geophase::numerics::{ComplexMatrix, StateVector, C64};
use geophase::qubit::{Axis, QubitOperator};
use geophase::synth::{Outer, SynthesisTarget};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

pub type Cx = [f64; 2];
pub type MatrixDto = Vec<Vec<Cx>>;

/// Step order marker written into every program.
pub const STEP_ORDER: &str = "steps[0] is applied first";

pub const TARGET_VARIANTS: [&str; 13] = [
    "pair",
    "triple_sin",
    "triple_exact",
    "triple_approx",
    "trig_collective",
    "pauli_string",
    "commuting_sum",
    "conjugated",
    "projector",
    "fjz",
    "basis_projector",
    "general_pair",
    "global_phase",
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDto {
    pub qubits: usize,
    pub cutoff: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum StepDto {
    Cdisp {
        control: String,
        amp: Cx,
    },
    Crot {
        control: String,
        angle: f64,
    },
    Local {
        /// Absent for a whole-register unitary.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        qubit: Option<usize>,
        matrix: MatrixDto,
    },
    Gphase {
        phase: f64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ProgramDto {
    pub space: SpaceDto,
    pub step_order: String,
    pub steps: Vec<StepDto>,
    pub cyclic: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<TargetDto>,
    /// Only written when there is no target to derive it from.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<MatrixDto>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub assumptions: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AxisDto {
    X,
    Y,
    Z,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartDto {
    pub target: TargetDto,
    pub coeff: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OuterDto {
    Program(Box<ProgramDto>),
    Unitary(MatrixDto),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(
    tag = "variant",
    rename_all = "snake_case",
    rename_all_fields = "camelCase",
    deny_unknown_fields
)]
pub enum TargetDto {
    Pair {
        num_qubits: usize,
        a: String,
        b: String,
        theta: f64,
    },
    TripleSin {
        num_qubits: usize,
        a: String,
        b: String,
        c: String,
        theta_rot: f64,
        phi: f64,
        tau: f64,
    },
    TripleExact {
        num_qubits: usize,
        a: String,
        b: String,
        c: String,
        lambda: f64,
        t: f64,
    },
    TripleApprox {
        num_qubits: usize,
        a: String,
        b: String,
        c: String,
        lambda_prime: f64,
        t: f64,
        theta_rot: f64,
    },
    TrigCollective {
        axis: AxisDto,
        num_qubits: usize,
        theta_rot: f64,
        phi: f64,
        lambda: f64,
        t: f64,
    },
    PauliString {
        axis: AxisDto,
        num_qubits: usize,
        sign: i8,
        lambda: f64,
        t: f64,
    },
    CommutingSum {
        parts: Vec<PartDto>,
    },
    Conjugated {
        outer: OuterDto,
        inner: Box<TargetDto>,
    },
    Projector {
        num_qubits: usize,
        n: usize,
        phase: f64,
    },
    #[serde(rename = "fjz")]
    FJz {
        num_qubits: usize,
        values: Vec<f64>,
        t: f64,
    },
    BasisProjector {
        bits: String,
        phase: f64,
    },
    GeneralPair {
        num_qubits: usize,
        aj: String,
        ak: String,
        cj: String,
        ck: String,
        theta_j: f64,
        theta_k: f64,
        alpha_j: Cx,
        alpha_k: Cx,
    },
    GlobalPhase {
        num_qubits: usize,
        phase: f64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct GateSpecDto {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub code: Option<String>,
    pub num_qubits: usize,
    pub reference: MatrixDto,
    pub program: ProgramDto,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub code_basis: Option<Vec<Vec<Cx>>>,
    pub local_equivalences: Vec<String>,
}

fn cx(z: C64) -> Cx {
    [z.re, z.im]
}

fn from_cx(z: Cx) -> C64 {
    C64::new(z[0], z[1])
}

pub fn matrix_to_dto(m: &ComplexMatrix) -> MatrixDto {
    (0..m.rows())
        .map(|r| m.row(r).iter().copied().map(cx).collect())
        .collect()
}

pub fn matrix_from_dto(m: &MatrixDto) -> Result<ComplexMatrix, CliError> {
    let rows = m
        .iter()
        .map(|r| r.iter().copied().map(from_cx).collect())
        .collect();
    ComplexMatrix::from_rows(rows).map_err(|e| CliError::Input(format!("matrix: {e}")))
}

fn op_from(text: &str, n: usize) -> Result<QubitOperator, CliError> {
    QubitOperator::parse(text, n).map_err(|e| CliError::Input(format!("operator {text:?}: {e}")))
}

fn axis_dto(a: Axis) -> AxisDto {
    match a {
        Axis::X => AxisDto::X,
        Axis::Y => AxisDto::Y,
        Axis::Z => AxisDto::Z,
    }
}

fn axis_from(a: AxisDto) -> Axis {
    match a {
        AxisDto::X => Axis::X,
        AxisDto::Y => Axis::Y,
        AxisDto::Z => Axis::Z,
    }
}

fn bits_text(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

pub fn parse_bits(s: &str) -> Result<Vec<bool>, CliError> {
    if s.is_empty() {
        return Err(CliError::Input("empty bit string".into()));
    }
    s.chars()
        .map(|ch| match ch {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(CliError::Input(format!(
                "bit string {s:?} must contain only 0 and 1"
            ))),
        })
        .collect()
}

pub fn step_to_dto(s: &PulseStep) -> StepDto {
    match s {
        PulseStep::ConditionalDisplacement { control, amp } => StepDto::Cdisp {
            control: control.to_string(),
            amp: cx(*amp),
        },
        PulseStep::ConditionalRotation { control, angle } => StepDto::Crot {
            control: control.to_string(),
            angle: *angle,
        },
        PulseStep::LocalUnitary { qubit, matrix } => StepDto::Local {
            qubit: *qubit,
            matrix: matrix_to_dto(matrix),
        },
        PulseStep::GlobalPhase(p) => StepDto::Gphase { phase: *p },
    }
}

fn step_from_dto(s: &StepDto, n: usize) -> Result<PulseStep, CliError> {
    Ok(match s {
        StepDto::Cdisp { control, amp } => PulseStep::cdisp(op_from(control, n)?, from_cx(*amp)),
        StepDto::Crot { control, angle } => PulseStep::crot(op_from(control, n)?, *angle),
        StepDto::Local { qubit, matrix } => PulseStep::LocalUnitary {
            qubit: *qubit,
            matrix: matrix_from_dto(matrix)?,
        },
        StepDto::Gphase { phase } => PulseStep::GlobalPhase(*phase),
    })
}

pub fn program_to_dto(p: &PulseProgram) -> ProgramDto {
    let space = p.space();
    let target = p.target.as_ref().map(target_to_dto);
    ProgramDto {
        space: SpaceDto {
            qubits: space.num_qubits(),
            cutoff: space.cutoff(),
        },
        step_order: STEP_ORDER.to_string(),
        steps: p.steps().iter().map(step_to_dto).collect(),
        cyclic: p.cyclic,
        expected: if target.is_none() {
            p.expected.as_ref().map(matrix_to_dto)
        } else {
            None
        },
        target,
        assumptions: p.assumptions.clone(),
    }
}

pub fn program_from_dto(d: &ProgramDto) -> Result<PulseProgram, CliError> {
    if d.step_order != STEP_ORDER {
        return Err(CliError::Input(format!("stepOrder must be {STEP_ORDER:?}")));
    }
    let n = d.space.qubits;
    let space = HybridSpace::new(n, d.space.cutoff).map_err(|e| CliError::Input(e.to_string()))?;
    let steps = d
        .steps
        .iter()
        .map(|s| step_from_dto(s, n))
        .collect::<Result<Vec<_>, _>>()?;
    let mut p = PulseProgram::new(space, steps).map_err(|e| CliError::Input(e.to_string()))?;
    p.cyclic = d.cyclic;
    p.assumptions = d.assumptions.clone();
    if let Some(t) = &d.target {
        let t = target_from_dto(t)?;
        if t.num_qubits().map_err(CliError::from)? != n {
            return Err(CliError::Input(
                "target and program act on different registers".into(),
            ));
        }
        if d.expected.is_none() {
            p.expected = t.expected_unitary().map_err(CliError::from)?;
        }
        p.target = Some(t);
    }
    if let Some(e) = &d.expected {
        p = p
            .with_expected(matrix_from_dto(e)?)
            .map_err(|e| CliError::Input(format!("expected: {e}")))?;
    }
    Ok(p)
}

pub fn target_to_dto(t: &SynthesisTarget) -> TargetDto {
    let s = |o: &QubitOperator| o.to_string();
    match t {
        SynthesisTarget::Pair { a, b, theta } => TargetDto::Pair {
            num_qubits: a.num_qubits(),
            a: s(a),
            b: s(b),
            theta: *theta,
        },
        SynthesisTarget::TripleSin {
            a,
            b,
            c,
            theta_rot,
            phi,
            tau,
        } => TargetDto::TripleSin {
            num_qubits: a.num_qubits(),
            a: s(a),
            b: s(b),
            c: s(c),
            theta_rot: *theta_rot,
            phi: *phi,
            tau: *tau,
        },
        SynthesisTarget::TripleExact { a, b, c, lambda, t } => TargetDto::TripleExact {
            num_qubits: a.num_qubits(),
            a: s(a),
            b: s(b),
            c: s(c),
            lambda: *lambda,
            t: *t,
        },
        SynthesisTarget::TripleApprox {
            a,
            b,
            c,
            lambda_prime,
            t,
            theta_rot,
        } => TargetDto::TripleApprox {
            num_qubits: a.num_qubits(),
            a: s(a),
            b: s(b),
            c: s(c),
            lambda_prime: *lambda_prime,
            t: *t,
            theta_rot: *theta_rot,
        },
        SynthesisTarget::TrigCollective {
            axis,
            num_qubits,
            theta_rot,
            phi,
            lambda,
            t,
        } => TargetDto::TrigCollective {
            axis: axis_dto(*axis),
            num_qubits: *num_qubits,
            theta_rot: *theta_rot,
            phi: *phi,
            lambda: *lambda,
            t: *t,
        },
        SynthesisTarget::PauliString {
            axis,
            num_qubits,
            sign,
            lambda,
            t,
        } => TargetDto::PauliString {
            axis: axis_dto(*axis),
            num_qubits: *num_qubits,
            sign: *sign,
            lambda: *lambda,
            t: *t,
        },
        SynthesisTarget::CommutingSum { parts } => TargetDto::CommutingSum {
            parts: parts
                .iter()
                .map(|(t, c)| PartDto {
                    target: target_to_dto(t),
                    coeff: *c,
                })
                .collect(),
        },
        SynthesisTarget::Conjugated { outer, inner } => TargetDto::Conjugated {
            outer: match outer {
                Outer::Program(p) => OuterDto::Program(Box::new(program_to_dto(p))),
                Outer::Unitary(u) => OuterDto::Unitary(matrix_to_dto(u)),
            },
            inner: Box::new(target_to_dto(inner)),
        },
        SynthesisTarget::Projector {
            num_qubits,
            n,
            phase,
        } => TargetDto::Projector {
            num_qubits: *num_qubits,
            n: *n,
            phase: *phase,
        },
        SynthesisTarget::FJz {
            num_qubits,
            values,
            t,
        } => TargetDto::FJz {
            num_qubits: *num_qubits,
            values: values.clone(),
            t: *t,
        },
        SynthesisTarget::BasisProjector { bits, phase } => TargetDto::BasisProjector {
            bits: bits_text(bits),
            phase: *phase,
        },
        SynthesisTarget::GeneralPair {
            aj,
            ak,
            cj,
            ck,
            theta_j,
            theta_k,
            alpha_j,
            alpha_k,
        } => TargetDto::GeneralPair {
            num_qubits: aj.num_qubits(),
            aj: s(aj),
            ak: s(ak),
            cj: s(cj),
            ck: s(ck),
            theta_j: *theta_j,
            theta_k: *theta_k,
            alpha_j: cx(*alpha_j),
            alpha_k: cx(*alpha_k),
        },
        SynthesisTarget::GlobalPhase { num_qubits, phase } => TargetDto::GlobalPhase {
            num_qubits: *num_qubits,
            phase: *phase,
        },
    }
}

pub fn target_from_dto(t: &TargetDto) -> Result<SynthesisTarget, CliError> {
    Ok(match t {
        TargetDto::Pair {
            num_qubits,
            a,
            b,
            theta,
        } => SynthesisTarget::Pair {
            a: op_from(a, *num_qubits)?,
            b: op_from(b, *num_qubits)?,
            theta: *theta,
        },
        TargetDto::TripleSin {
            num_qubits,
            a,
            b,
            c,
            theta_rot,
            phi,
            tau,
        } => SynthesisTarget::TripleSin {
            a: op_from(a, *num_qubits)?,
            b: op_from(b, *num_qubits)?,
            c: op_from(c, *num_qubits)?,
            theta_rot: *theta_rot,
            phi: *phi,
            tau: *tau,
        },
        TargetDto::TripleExact {
            num_qubits,
            a,
            b,
            c,
            lambda,
            t,
        } => SynthesisTarget::TripleExact {
            a: op_from(a, *num_qubits)?,
            b: op_from(b, *num_qubits)?,
            c: op_from(c, *num_qubits)?,
            lambda: *lambda,
            t: *t,
        },
        TargetDto::TripleApprox {
            num_qubits,
            a,
            b,
            c,
            lambda_prime,
            t,
            theta_rot,
        } => SynthesisTarget::TripleApprox {
            a: op_from(a, *num_qubits)?,
            b: op_from(b, *num_qubits)?,
            c: op_from(c, *num_qubits)?,
            lambda_prime: *lambda_prime,
            t: *t,
            theta_rot: *theta_rot,
        },
        TargetDto::TrigCollective {
            axis,
            num_qubits,
            theta_rot,
            phi,
            lambda,
            t,
        } => SynthesisTarget::TrigCollective {
            axis: axis_from(*axis),
            num_qubits: *num_qubits,
            theta_rot: *theta_rot,
            phi: *phi,
            lambda: *lambda,
            t: *t,
        },
        TargetDto::PauliString {
            axis,
            num_qubits,
            sign,
            lambda,
            t,
        } => SynthesisTarget::PauliString {
            axis: axis_from(*axis),
            num_qubits: *num_qubits,
            sign: *sign,
            lambda: *lambda,
            t: *t,
        },
        TargetDto::CommutingSum { parts } => SynthesisTarget::CommutingSum {
            parts: parts
                .iter()
                .map(|p| Ok((target_from_dto(&p.target)?, p.coeff)))
                .collect::<Result<_, CliError>>()?,
        },
        TargetDto::Conjugated { outer, inner } => SynthesisTarget::Conjugated {
            outer: match outer {
                OuterDto::Program(p) => Outer::Program(Box::new(program_from_dto(p)?)),
                OuterDto::Unitary(u) => Outer::Unitary(matrix_from_dto(u)?),
            },
            inner: Box::new(target_from_dto(inner)?),
        },
        TargetDto::Projector {
            num_qubits,
            n,
            phase,
        } => SynthesisTarget::Projector {
            num_qubits: *num_qubits,
            n: *n,
            phase: *phase,
        },
        TargetDto::FJz {
            num_qubits,
            values,
            t,
        } => SynthesisTarget::FJz {
            num_qubits: *num_qubits,
            values: values.clone(),
            t: *t,
        },
        TargetDto::BasisProjector { bits, phase } => SynthesisTarget::BasisProjector {
            bits: parse_bits(bits)?,
            phase: *phase,
        },
        TargetDto::GeneralPair {
            num_qubits,
            aj,
            ak,
            cj,
            ck,
            theta_j,
            theta_k,
            alpha_j,
            alpha_k,
        } => SynthesisTarget::GeneralPair {
            aj: op_from(aj, *num_qubits)?,
            ak: op_from(ak, *num_qubits)?,
            cj: op_from(cj, *num_qubits)?,
            ck: op_from(ck, *num_qubits)?,
            theta_j: *theta_j,
            theta_k: *theta_k,
            alpha_j: from_cx(*alpha_j),
            alpha_k: from_cx(*alpha_k),
        },
        TargetDto::GlobalPhase { num_qubits, phase } => SynthesisTarget::GlobalPhase {
            num_qubits: *num_qubits,
            phase: *phase,
        },
    })
}

pub fn gate_to_dto(g: &GateSpec) -> GateSpecDto {
    let (n, code) = match g.name {
        GateName::CnNot(n) | GateName::UPn(n) => (Some(n), None),
        GateName::EncodedCphase(c) => (None, Some(c.to_string())),
        _ => (None, None),
    };
    GateSpecDto {
        name: g.name.base_name().to_string(),
        n,
        code,
        num_qubits: g.num_qubits,
        reference: matrix_to_dto(&g.reference),
        program: program_to_dto(&g.program),
        code_basis: g.code_basis.as_ref().map(|b| {
            b.iter()
                .map(|v| v.amplitudes().iter().copied().map(cx).collect())
                .collect()
        }),
        local_equivalences: g.local_equivalences.clone(),
    }
}

pub fn gate_from_dto(d: &GateSpecDto) -> Result<GateSpec, CliError> {
    let name = GateName::parse(&d.name, d.n, d.code.as_deref())?;
    if name.num_qubits() != d.num_qubits {
        return Err(CliError::Input(format!(
            "{name} acts on {} qubits, not {}",
            name.num_qubits(),
            d.num_qubits
        )));
    }
    let program = program_from_dto(&d.program)?;
    if program.space().num_qubits() != d.num_qubits {
        return Err(CliError::Input(
            "gate program acts on the wrong register".into(),
        ));
    }
    let code_basis = d
        .code_basis
        .as_ref()
        .map(|b| {
            b.iter()
                .map(|v| {
                    if v.len() != program.space().qubit_dim() {
                        return Err(CliError::Input(
                            "code basis vector has the wrong length".into(),
                        ));
                    }
                    Ok(StateVector::new(v.iter().copied().map(from_cx).collect()))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .transpose()?;
    let reference = matrix_from_dto(&d.reference)?;
    let k = code_basis
        .as_ref()
        .map_or(program.space().qubit_dim(), Vec::len);
    if reference.shape() != (k, k) {
        return Err(CliError::Input(format!("reference must be {k}×{k}")));
    }
    Ok(GateSpec {
        name,
        num_qubits: d.num_qubits,
        reference,
        program,
        code_basis,
        local_equivalences: d.local_equivalences.clone(),
    })
}

/// First `"variant"` tag anywhere in `v` that this build does not know.
pub fn unknown_variant(v: &Value) -> Option<String> {
    match v {
        Value::Object(map) => {
            if let Some(Value::String(name)) = map.get("variant") {
                if !TARGET_VARIANTS.contains(&name.as_str()) {
                    return Some(name.clone());
                }
            }
            map.values().find_map(unknown_variant)
        }
        Value::Array(items) => items.iter().find_map(unknown_variant),
        _ => None,
    }
}

pub fn parse_value(text: &str) -> Result<Value, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed JSON: {e}")))
}

pub fn parse_target(text: &str) -> Result<SynthesisTarget, CliError> {
    let v = parse_value(text)?;
    if let Some(name) = unknown_variant(&v) {
        return Err(CliError::Unsupported(format!(
            "unsupported target variant {name:?}"
        )));
    }
    let dto: TargetDto =
        serde_json::from_value(v).map_err(|e| CliError::Input(format!("target: {e}")))?;
    target_from_dto(&dto)
}

pub fn to_json<T: Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("wire types serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_variant_is_found_when_nested() {
        let v: Value = serde_json::from_str(
            r#"{"variant":"commuting_sum","parts":[{"coeff":1.0,"target":{"variant":"magic"}}]}"#,
        )
        .unwrap();
        assert_eq!(unknown_variant(&v).as_deref(), Some("magic"));
    }

    #[test]
    fn target_names_match_core() {
        let t = SynthesisTarget::FJz {
            num_qubits: 2,
            values: vec![0.0, 1.0, 2.0],
            t: 0.5,
        };
        let j = serde_json::to_value(target_to_dto(&t)).unwrap();
        assert_eq!(j["variant"], t.variant_name());
        assert_eq!(j["numQubits"], 2);
    }

    #[test]
    fn bits_parse() {
        assert_eq!(parse_bits("101").unwrap(), vec![true, false, true]);
        assert!(parse_bits("1a").is_err());
        assert!(parse_bits("").is_err());
    }
}
