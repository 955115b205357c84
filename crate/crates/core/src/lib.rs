// Copyright 2026 The geophase Authors
// SPDX-License-Identifier: Apache-2.0

//! Hybrid qubit–oscillator gate synthesis from geometric phases.

pub mod algorithms;
pub mod bosonic;
pub mod engine;
pub mod gates;
pub mod numerics;
pub mod parallel;
pub mod qubit;
pub mod synth;
