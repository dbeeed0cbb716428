// Copyright 2026 the Orthotomic Authors
// SPDX-License-Identifier: Apache-2.0

fn main() {
    std::process::exit(orthotomic::cli::main_with_args(std::env::args_os()));
}
