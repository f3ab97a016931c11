// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the formula being evaluated.
    #[error("{param} = {value} is out of range: {reason}")]
    Domain {
        param: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// The Rent exponent sits on (or too close to) a pole of the closed forms.
    #[error("rent exponent p = {p} is within {band:e} of the singular point {pole}")]
    Singularity { p: f64, pole: f64, band: f64 },

    /// Approximate models need p > 0.5 because of the N^(p-0.5) and (p-0.5) terms.
    #[error("rent exponent p = {p} is not valid for approximate models (requires 0.5 < p < 1)")]
    InvalidExponent { p: f64 },

    #[error("model {model} is not {expected}")]
    WrongModel {
        model: &'static str,
        expected: &'static str,
    },

    #[error("quadrature did not reach relative tolerance {tolerance:e} on [{lower}, {upper}] within {max_depth} subdivision levels")]
    NonConvergence {
        lower: f64,
        upper: f64,
        tolerance: f64,
        max_depth: u32,
    },

    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("line {line}: invalid {field}: {message}")]
    Validation {
        line: u64,
        field: &'static str,
        message: String,
    },

    #[error("{0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(param: &'static str, value: f64, reason: &'static str) -> Self {
        Error::Domain {
            param,
            value,
            reason,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
