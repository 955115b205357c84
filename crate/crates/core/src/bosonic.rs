// Copyright 2026 The geophase Authors
// SPDX-License-Identifier: Apache-2.0

//! Truncated single-mode Fock space.
//!
//! Convention: D(α) = exp(αa† − α*a) (the standard quantum-optics
//! displacement). In this convention D(β)D(α) = e^{i·Im(βα*)}D(α+β), and a
//! closed polygon of displacements picks up e^{iΦ} with Φ equal to twice the
//! signed (counterclockwise-positive) enclosed area. Callers that think in the
//! half-scaled convention 𝒟(α) = D(α/√2) see exactly one area unit per unit of
//! phase; the synthesizer absorbs that factor of two.

use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::numerics::{eigh, ComplexMatrix, HermitianEigen, C64, I, ONE, ZERO};

/// Closure tolerance for [`LoopSpec::is_closed`].
pub const LOOP_CLOSURE_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BosonicError {
    #[error("Fock cutoff must be at least 2, got {0}")]
    CutoffTooSmall(usize),
    #[error("open loop: |Σ α_j| = {0:e}")]
    OpenLoop(f64),
    #[error("probe dimension {probe} exceeds half the cutoff {cutoff}")]
    ProbeTooLarge { probe: usize, cutoff: usize },
}

/// Truncated Fock space spanned by |0⟩ … |cutoff−1⟩.
#[derive(Clone, Debug)]
pub struct FockSpace {
    cutoff: usize,
    // Eigendecomposition of i(a† − a); every displacement is a rotated
    // spectral function of it.
    unit_generator: OnceLock<Arc<HermitianEigen>>,
}

impl PartialEq for FockSpace {
    fn eq(&self, other: &Self) -> bool {
        self.cutoff == other.cutoff
    }
}

impl Eq for FockSpace {}

/// Soft truncation guard |α|² ≤ cutoff/4 was violated.
#[derive(Clone, Debug, PartialEq)]
pub struct GuardWarning {
    pub amplitude: C64,
    pub cutoff: usize,
}

impl std::fmt::Display for GuardWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "displacement |α|² = {:.4} exceeds cutoff/4 = {:.2}",
            self.amplitude.norm_sqr(),
            self.cutoff as f64 / 4.0
        )
    }
}

impl FockSpace {
    pub fn new(cutoff: usize) -> Result<Self, BosonicError> {
        if cutoff < 2 {
            return Err(BosonicError::CutoffTooSmall(cutoff));
        }
        Ok(Self {
            cutoff,
            unit_generator: OnceLock::new(),
        })
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// Annihilation operator, a[n−1, n] = √n.
    pub fn annihilation(&self) -> ComplexMatrix {
        let c = self.cutoff;
        ComplexMatrix::from_fn(c, c, |r, col| {
            if col == r + 1 {
                ONE * (col as f64).sqrt()
            } else {
                ZERO
            }
        })
    }

    pub fn creation(&self) -> ComplexMatrix {
        self.annihilation().dagger()
    }

    pub fn number(&self) -> ComplexMatrix {
        let diag: Vec<C64> = (0..self.cutoff).map(|n| ONE * n as f64).collect();
        ComplexMatrix::from_diagonal(&diag)
    }

    /// x̂ = (a + a†)/√2.
    pub fn position(&self) -> ComplexMatrix {
        let a = self.annihilation();
        (&a + &a.dagger()).scale(ONE * std::f64::consts::FRAC_1_SQRT_2)
    }

    /// p̂ = (a − a†)/(i√2).
    pub fn momentum(&self) -> ComplexMatrix {
        let a = self.annihilation();
        (&a - &a.dagger()).scale(-I * std::f64::consts::FRAC_1_SQRT_2)
    }

    /// Hermitian generator H with D(α) = e^{−iH}: H = i(αa† − α*a).
    pub fn displacement_generator(&self, alpha: C64) -> ComplexMatrix {
        let a = self.annihilation();
        let ad = a.dagger();
        &ad.scale(I * alpha) - &a.scale(I * alpha.conj())
    }

    fn unit_generator(&self) -> &HermitianEigen {
        self.unit_generator.get_or_init(|| {
            let h = self.displacement_generator(ONE);
            Arc::new(eigh(&h).expect("displacement generator is Hermitian by construction"))
        })
    }

    /// D(α) = exp(αa† − α*a), exactly unitary on the truncated space.
    ///
    /// Computed as R(arg α)·exp(−i|α|·i(a†−a))·R(−arg α) from a cached
    /// eigendecomposition of the unit generator.
    pub fn displacement(&self, alpha: C64) -> ComplexMatrix {
        let c = self.cutoff;
        if alpha == ZERO {
            return ComplexMatrix::identity(c);
        }
        let r = alpha.norm();
        let phi = alpha.arg();
        let magnitude = self.unit_generator().map(|l| C64::from_polar(1.0, -l * r));
        ComplexMatrix::from_fn(c, c, |m, n| {
            magnitude[(m, n)] * C64::from_polar(1.0, phi * (m as f64 - n as f64))
        })
    }

    /// R(θ) = exp(iθ a†a): diagonal, exact at any cutoff.
    pub fn rotation(&self, theta: f64) -> ComplexMatrix {
        ComplexMatrix::from_diagonal(&self.rotation_phases(theta))
    }

    pub fn rotation_phases(&self, theta: f64) -> Vec<C64> {
        (0..self.cutoff)
            .map(|n| C64::from_polar(1.0, theta * n as f64))
            .collect()
    }

    /// Returns a warning when |α|² > cutoff/4.
    pub fn guard(&self, alpha: C64) -> Option<GuardWarning> {
        (alpha.norm_sqr() > self.cutoff as f64 / 4.0).then_some(GuardWarning {
            amplitude: alpha,
            cutoff: self.cutoff,
        })
    }
}

/// Composition phase: D(β)D(α) = e^{i·compose_phase(β, α)}·D(α+β).
pub fn compose_phase(beta: C64, alpha: C64) -> f64 {
    (beta * alpha.conj()).im
}

/// Ordered list of displacement steps α_1 … α_N (α_1 applied first).
#[derive(Clone, Debug, PartialEq)]
pub struct LoopSpec {
    steps: Vec<C64>,
}

impl LoopSpec {
    pub fn new(steps: Vec<C64>) -> Self {
        Self { steps }
    }

    pub fn steps(&self) -> &[C64] {
        &self.steps
    }

    pub fn closure_error(&self) -> f64 {
        self.steps.iter().sum::<C64>().norm()
    }

    pub fn is_closed(&self) -> bool {
        self.closure_error() <= LOOP_CLOSURE_TOL
    }
}

/// Phase Φ of D(α_N)⋯D(α_1) = e^{iΦ} for a closed loop.
pub fn polygon_phase(lp: &LoopSpec) -> Result<f64, BosonicError> {
    if !lp.is_closed() {
        return Err(BosonicError::OpenLoop(lp.closure_error()));
    }
    let mut partial = ZERO;
    let mut phase = 0.0;
    for (j, &a) in lp.steps.iter().enumerate() {
        if j > 0 {
            phase += compose_phase(a, partial);
        }
        partial += a;
    }
    Ok(phase)
}

/// Exact (untruncated) Fock-space operator used as the comparison target
/// of [`truncation_residual`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FockReference {
    Identity,
    Rotation(f64),
    Displacement(C64),
}

impl FockReference {
    /// ⟨m|T|n⟩ in the infinite-dimensional Fock space.
    pub fn element(&self, m: usize, n: usize) -> C64 {
        match *self {
            FockReference::Identity => {
                if m == n {
                    ONE
                } else {
                    ZERO
                }
            }
            FockReference::Rotation(theta) => {
                if m == n {
                    C64::from_polar(1.0, theta * n as f64)
                } else {
                    ZERO
                }
            }
            FockReference::Displacement(alpha) => displacement_element(m, n, alpha),
        }
    }
}

/// Closed-form ⟨m|D(α)|n⟩ via associated Laguerre polynomials.
pub fn displacement_element(m: usize, n: usize, alpha: C64) -> C64 {
    if m < n {
        return displacement_element(n, m, -alpha).conj();
    }
    let x = alpha.norm_sqr();
    // Π_{k=n+1}^{m} α/√k  =  α^{m−n} √(n!/m!)
    let mut pref = C64::new((-x / 2.0).exp(), 0.0);
    for k in (n + 1)..=m {
        pref *= alpha / (k as f64).sqrt();
    }
    pref * laguerre(n, (m - n) as f64, x)
}

/// Generalized Laguerre polynomial L_n^{(a)}(x) by three-term recurrence.
fn laguerre(n: usize, a: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + a - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + a - x) * cur - (kf + a) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Worst ℓ²-distance, over the first `probe_dim` Fock columns, between the
/// columns of `u` (embedded in the infinite space) and those of the exact
/// operator `reference`. Includes the reference weight beyond the cutoff.
pub fn truncation_residual(
    u: &ComplexMatrix,
    space: &FockSpace,
    probe_dim: usize,
    reference: FockReference,
) -> Result<f64, BosonicError> {
    let c = space.cutoff();
    if probe_dim > c / 2 {
        return Err(BosonicError::ProbeTooLarge {
            probe: probe_dim,
            cutoff: c,
        });
    }
    let mut worst = 0.0f64;
    for j in 0..probe_dim {
        let mut dist2 = 0.0;
        for m in 0..c {
            dist2 += (u[(m, j)] - reference.element(m, j)).norm_sqr();
        }
        dist2 += reference_tail(reference, c, j);
        worst = worst.max(dist2.sqrt());
    }
    Ok(worst)
}

fn reference_tail(reference: FockReference, cutoff: usize, col: usize) -> f64 {
    let FockReference::Displacement(alpha) = reference else {
        return 0.0;
    };
    let peak = (alpha.norm() + (col as f64).sqrt()).powi(2) as usize;
    let mut tail = 0.0;
    let mut m = cutoff;
    loop {
        let w = displacement_element(m, col, alpha).norm_sqr();
        tail += w;
        m += 1;
        if (m > peak && w < 1e-34 * tail.max(1e-300)) || w == 0.0 && m > peak || m > cutoff + 4000 {
            break;
        }
    }
    tail
}
