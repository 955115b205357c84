// Copyright 2026 The geophase Authors
// SPDX-License-Identifier: Apache-2.0

use geophase::engine::EngineError;
use geophase::synth::SynthError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("verification failed: {0}")]
    Failed(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Unsupported(String),
}

impl CliError {
    /// 0 pass, 1 verification fail, 2 input error, 3 unsupported.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Input(_) => 2,
            CliError::Unsupported(_) => 3,
        }
    }
}

impl From<SynthError> for CliError {
    fn from(e: SynthError) -> Self {
        match e {
            SynthError::Classification(m) => {
                CliError::Unsupported(format!("classification failure: {m}"))
            }
            SynthError::Engine(EngineError::CapExceeded { .. }) => {
                CliError::Unsupported(e.to_string())
            }
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::CapExceeded { .. } => CliError::Unsupported(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}
