// SPDX-License-Identifier: Apache-2.0

//! Bundled benchmark fixtures.

use crate::evaluation::{load_benchmarks, BenchmarkRecord};

pub const TABLE1_CSV: &str = include_str!("../data/table1.csv");
pub const TABLE2_CSV: &str = include_str!("../data/table2.csv");

/// The fourteen circuits compared in tables 1, 3, 4 and 5.
pub fn table1() -> Vec<BenchmarkRecord> {
    load_benchmarks(TABLE1_CSV.as_bytes()).expect("bundled table1.csv is well formed")
}

/// The nine validation circuits of table 2.
pub fn table2() -> Vec<BenchmarkRecord> {
    load_benchmarks(TABLE2_CSV.as_bytes()).expect("bundled table2.csv is well formed")
}
