// SPDX-License-Identifier: Apache-2.0

//! Stochastic wiring-distribution models for a priori estimation of the
//! average on-chip interconnect length.
//!
//! The model places `N_gates` gates at random in a square array of
//! `N_soc = N_gates / P_gates` sockets and combines Rent's rule with the
//! socket-pair geometry to obtain the expected number of wires of each
//! length. [`estimators`] holds the closed-form averages of that
//! distribution; [`oracles`] re-derives them numerically.
//!
//! ```
//! use wirelength::{estimate, ChipConfiguration, LengthUnit, ModelId};
//!
//! let chip = ChipConfiguration::new(2146.0, 0.75).unwrap();
//! let est = estimate(ModelId::SekarExact, &chip, 0.75, LengthUnit::GatePitches).unwrap();
//! assert!((est.value - 4.8713).abs() < 1e-3);
//! ```

pub mod datasets;
pub mod distribution;
pub mod error;
pub mod estimators;
pub mod evaluation;
pub mod oracles;
pub mod params;
pub mod tables;

pub use distribution::{
    block_population, convert_length, interconnect_expectation, normalization_gamma,
    socket_pair_count, wire_density, BlockPopulation,
};
pub use error::{Error, Result};
pub use estimators::{
    approx_lavg, estimate, exact_lavg, modified_exact_lavg, sweep, EstimateResult, ModelId,
    SweepPoint, SweepRange, Warning, RENT_THRESHOLD,
};
pub use evaluation::{
    evaluate, load_benchmarks, threshold_report, BenchmarkRecord, EvaluationReport, ModelSpec,
    ModelSummary, ReportRow, ThresholdReport,
};
pub use params::{ChipConfiguration, LengthUnit, RentParameters};
