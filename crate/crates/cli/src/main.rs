// SPDX-License-Identifier: Apache-2.0

fn main() {
    std::process::exit(wirelength_cli::main_with_env());
}
