// SPDX-License-Identifier: Apache-2.0

//! Benchmark ingestion and model error statistics.

use std::fmt;
use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimators::{estimate, ModelId, Warning};
use crate::params::{ChipConfiguration, LengthUnit};

pub const CSV_HEADER: [&str; 4] = ["name", "n_gates", "rent_p", "actual_lavg"];

/// One benchmark circuit. `actual_lavg` is in gate pitches.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkRecord {
    pub name: String,
    pub n_gates: u64,
    pub rent_p: f64,
    pub actual_lavg: Option<f64>,
}

/// A model together with the gate occupancy it is evaluated at.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub model: ModelId,
    pub p_gates: f64,
}

impl ModelSpec {
    pub fn new(model: ModelId, p_gates: f64) -> Self {
        Self { model, p_gates }
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.model.uses_p_gates() {
            write!(f, "{}@{}", self.model, self.p_gates)
        } else {
            write!(f, "{}", self.model)
        }
    }
}

fn parse_field<T: std::str::FromStr>(raw: &str, line: u64, field: &'static str) -> Result<T> {
    raw.parse().map_err(|_| Error::Parse {
        line,
        message: format!("cannot parse {field} from `{raw}`"),
    })
}

/// Reads benchmark records from CSV with header `name,n_gates,rent_p,actual_lavg`.
///
/// Lines starting with `#` are comments. An empty `actual_lavg` marks a
/// prediction-only record.
pub fn load_benchmarks<R: Read>(source: R) -> Result<Vec<BenchmarkRecord>> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(source);

    let header = reader
        .headers()
        .map_err(|e| Error::Parse {
            line: e.position().map_or(1, |p| p.line()),
            message: e.to_string(),
        })?
        .clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(Error::Parse {
            line: reader.position().line().max(1),
            message: format!(
                "expected header `{}`, found `{}`",
                CSV_HEADER.join(","),
                header.iter().collect::<Vec<_>>().join(",")
            ),
        });
    }

    let mut records = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = row.position().map_or(0, |p| p.line());
        let name = row[0].to_string();
        if name.is_empty() {
            return Err(Error::Validation {
                line,
                field: "name",
                message: "must not be empty".into(),
            });
        }
        let n_gates: u64 = parse_field(&row[1], line, "n_gates")?;
        if n_gates < 2 {
            return Err(Error::Validation {
                line,
                field: "n_gates",
                message: format!("{n_gates} is below 2"),
            });
        }
        let rent_p: f64 = parse_field(&row[2], line, "rent_p")?;
        if !(rent_p > 0.0 && rent_p < 1.0) {
            return Err(Error::Validation {
                line,
                field: "rent_p",
                message: format!("{rent_p} is outside (0, 1)"),
            });
        }
        let actual_lavg = match &row[3] {
            "" => None,
            raw => {
                let v: f64 = parse_field(raw, line, "actual_lavg")?;
                if !(v > 0.0 && v.is_finite()) {
                    return Err(Error::Validation {
                        line,
                        field: "actual_lavg",
                        message: format!("{v} is not a positive length"),
                    });
                }
                Some(v)
            }
        };
        records.push(BenchmarkRecord {
            name,
            n_gates,
            rent_p,
            actual_lavg,
        });
    }
    Ok(records)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub record: BenchmarkRecord,
    pub spec: ModelSpec,
    /// Estimate in the report's unit; `None` when the model is undefined here.
    pub estimate: Option<f64>,
    /// `100 |estimate - actual| / actual`, when both are present.
    pub percent_error: Option<f64>,
    /// Signed counterpart of `percent_error`.
    pub signed_error: Option<f64>,
    pub skip_reason: Option<String>,
    pub warnings: Vec<Warning>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSummary {
    pub spec: ModelSpec,
    /// Mean absolute percent error over rows with actuals; `None` if there are none.
    pub mae: Option<f64>,
    pub signed_mean_error: Option<f64>,
    pub scored_rows: usize,
    pub skipped_rows: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub unit: LengthUnit,
    /// Record-major: all models for the first record, then the next record.
    pub rows: Vec<ReportRow>,
    pub summaries: Vec<ModelSummary>,
}

impl EvaluationReport {
    pub fn mae(&self, spec: &ModelSpec) -> Option<f64> {
        self.summary(spec).and_then(|s| s.mae)
    }

    pub fn summary(&self, spec: &ModelSpec) -> Option<&ModelSummary> {
        self.summaries.iter().find(|s| s.spec == *spec)
    }

    pub fn rows_for<'a>(&'a self, spec: &'a ModelSpec) -> impl Iterator<Item = &'a ReportRow> + 'a {
        self.rows.iter().filter(move |r| r.spec == *spec)
    }
}

fn evaluate_row(record: &BenchmarkRecord, spec: ModelSpec, unit: LengthUnit) -> ReportRow {
    let outcome = ChipConfiguration::new(record.n_gates as f64, spec.p_gates).and_then(|chip| {
        let pitches = estimate(spec.model, &chip, record.rent_p, LengthUnit::GatePitches)?;
        let shown = estimate(spec.model, &chip, record.rent_p, unit)?;
        Ok((pitches, shown))
    });
    match outcome {
        Ok((pitches, shown)) => {
            let signed = record
                .actual_lavg
                .map(|actual| 100.0 * (pitches.value - actual) / actual);
            ReportRow {
                record: record.clone(),
                spec,
                estimate: Some(shown.value),
                percent_error: signed.map(f64::abs),
                signed_error: signed,
                skip_reason: None,
                warnings: shown.warnings,
            }
        }
        Err(err) => ReportRow {
            record: record.clone(),
            spec,
            estimate: None,
            percent_error: None,
            signed_error: None,
            skip_reason: Some(err.to_string()),
            warnings: Vec::new(),
        },
    }
}

fn mean(values: &[f64]) -> Option<f64> {
    (!values.is_empty()).then(|| values.iter().sum::<f64>() / values.len() as f64)
}

/// Estimates every record under every model and summarizes the errors.
///
/// Rows where a model is undefined carry a skip reason and are left out of
/// that model's averages.
pub fn evaluate(
    records: &[BenchmarkRecord],
    models: &[ModelSpec],
    unit: LengthUnit,
) -> EvaluationReport {
    let rows: Vec<ReportRow> = records
        .iter()
        .flat_map(|record| {
            models
                .iter()
                .map(move |&spec| evaluate_row(record, spec, unit))
        })
        .collect();

    let summaries = models
        .iter()
        .map(|&spec| {
            let mine: Vec<&ReportRow> = rows.iter().filter(|r| r.spec == spec).collect();
            let abs: Vec<f64> = mine.iter().filter_map(|r| r.percent_error).collect();
            let signed: Vec<f64> = mine.iter().filter_map(|r| r.signed_error).collect();
            ModelSummary {
                spec,
                mae: mean(&abs),
                signed_mean_error: mean(&signed),
                scored_rows: abs.len(),
                skipped_rows: mine.iter().filter(|r| r.skip_reason.is_some()).count(),
            }
        })
        .collect();

    EvaluationReport {
        unit,
        rows,
        summaries,
    }
}

/// The modified approximate models at the occupancies used for comparison.
pub fn modified_approx_models() -> Vec<ModelSpec> {
    vec![
        ModelSpec::new(ModelId::ModifiedDavisApprox, 1.0),
        ModelSpec::new(ModelId::ModifiedSekarApprox, 0.5),
        ModelSpec::new(ModelId::ModifiedSekarApprox, 0.75),
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdReport {
    pub threshold: f64,
    /// Evaluation restricted to records with `rent_p >= threshold`.
    pub included: EvaluationReport,
    pub excluded: Vec<BenchmarkRecord>,
}

/// Evaluates `models` only on records whose Rent exponent reaches `threshold`.
pub fn threshold_report(
    records: &[BenchmarkRecord],
    threshold: f64,
    models: &[ModelSpec],
    unit: LengthUnit,
) -> Result<ThresholdReport> {
    if !(threshold > 0.5 && threshold < 1.0) {
        return Err(Error::domain(
            "threshold",
            threshold,
            "must lie in (0.5, 1)",
        ));
    }
    let (kept, excluded): (Vec<_>, Vec<_>) =
        records.iter().cloned().partition(|r| r.rent_p >= threshold);
    Ok(ThresholdReport {
        threshold,
        included: evaluate(&kept, models, unit),
        excluded,
    })
}
