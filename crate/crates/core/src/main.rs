// Copyright 2026 The ncgd Authors
// SPDX-License-Identifier: Apache-2.0

fn main() {
    std::process::exit(ncgd::cli::run(std::env::args_os()));
}
