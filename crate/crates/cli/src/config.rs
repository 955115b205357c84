// Copyright 2026 The geophase Authors
// SPDX-License-Identifier: Apache-2.0

use geophase::engine::VerifyOptions;
use geophase::numerics::DEFAULT_DENSE_CAP;
use geophase::parallel::Execution;
use geophase::synth::{Synthesizer, DEFAULT_CUTOFF};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Tolerances and sizes behind every number in a report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct RunConfig {
    pub fock_cutoff: usize,
    pub probe_dim: usize,
    /// Pass requires fidelity ≥ 1 − fidelityTol.
    pub fidelity_tol: f64,
    pub disentangle_tol: f64,
    pub dense_cap: usize,
    pub fock_init: usize,
    pub output_path: String,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            fock_cutoff: DEFAULT_CUTOFF,
            probe_dim: 16,
            fidelity_tol: 1e-8,
            disentangle_tol: 1e-8,
            dense_cap: DEFAULT_DENSE_CAP,
            fock_init: 0,
            output_path: String::new(),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.fock_cutoff < 2 {
            return Err(CliError::Input(format!(
                "fockCutoff must be at least 2, got {}",
                self.fock_cutoff
            )));
        }
        if self.probe_dim > self.fock_cutoff / 2 {
            return Err(CliError::Input(format!(
                "probeDim ≤ fockCutoff/2 violated: {} > {}",
                self.probe_dim,
                self.fock_cutoff / 2
            )));
        }
        if self.fock_init >= self.fock_cutoff {
            return Err(CliError::Input(format!(
                "fockInit {} outside cutoff {}",
                self.fock_init, self.fock_cutoff
            )));
        }
        for (name, v) in [
            ("fidelityTol", self.fidelity_tol),
            ("disentangleTol", self.disentangle_tol),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(CliError::Input(format!(
                    "{name} must be a non-negative number"
                )));
            }
        }
        Ok(())
    }

    pub fn synthesizer(&self) -> Synthesizer {
        Synthesizer::with_cutoff(self.fock_cutoff)
    }

    pub fn verify_options(&self, exec: Execution) -> VerifyOptions {
        VerifyOptions {
            fock_init: self.fock_init,
            tol: self.disentangle_tol,
            probe_dim: self.probe_dim,
            exec,
        }
    }

    pub fn passes(&self, fidelity: Option<f64>, residual: f64) -> bool {
        fidelity.is_none_or(|f| f >= 1.0 - self.fidelity_tol) && residual <= self.disentangle_tol
    }
}
