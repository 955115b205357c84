// Copyright 2026 The geophase Authors
// SPDX-License-Identifier: Apache-2.0

fn main() {
    std::process::exit(geophase_cli::run(std::env::args_os()));
}
