// SPDX-License-Identifier: Apache-2.0

//! Regenerates the five comparison tables from the bundled fixtures.

use serde::{Deserialize, Serialize};

use crate::datasets;
use crate::error::{Error, Result};
use crate::estimators::{ModelId, RENT_THRESHOLD};
use crate::evaluation::{
    evaluate, modified_approx_models, threshold_report, BenchmarkRecord, EvaluationReport,
    ModelSpec,
};
use crate::params::LengthUnit;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableColumn {
    pub spec: ModelSpec,
    pub label: String,
    /// Decimal places used when the estimate is printed.
    pub decimals: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReproducedTable {
    pub number: u8,
    pub title: String,
    pub columns: Vec<TableColumn>,
    pub records: Vec<BenchmarkRecord>,
    pub report: EvaluationReport,
}

impl ReproducedTable {
    /// Estimate for record `row` under column `col`.
    pub fn estimate(&self, row: usize, col: usize) -> Option<f64> {
        self.cell(row, col).and_then(|r| r.estimate)
    }

    pub fn percent_error(&self, row: usize, col: usize) -> Option<f64> {
        self.cell(row, col).and_then(|r| r.percent_error)
    }

    pub fn mae(&self, col: usize) -> Option<f64> {
        self.report.mae(&self.columns[col].spec)
    }

    fn cell(&self, row: usize, col: usize) -> Option<&crate::evaluation::ReportRow> {
        let record = self.records.get(row)?;
        let spec = self.columns.get(col)?.spec;
        self.report
            .rows
            .iter()
            .find(|r| r.spec == spec && r.record == *record)
    }
}

fn column(model: ModelId, p_gates: f64, label: &str, decimals: usize) -> TableColumn {
    TableColumn {
        spec: ModelSpec::new(model, p_gates),
        label: label.to_string(),
        decimals,
    }
}

fn build(
    number: u8,
    title: &str,
    records: Vec<BenchmarkRecord>,
    columns: Vec<TableColumn>,
) -> ReproducedTable {
    let specs: Vec<ModelSpec> = columns.iter().map(|c| c.spec).collect();
    let report = evaluate(&records, &specs, LengthUnit::GatePitches);
    ReproducedTable {
        number,
        title: title.to_string(),
        columns,
        records,
        report,
    }
}

pub fn reproduce(number: u8) -> Result<ReproducedTable> {
    use ModelId::*;
    let table = match number {
        1 => build(
            1,
            "Average interconnect length, exact models",
            datasets::table1(),
            vec![
                column(DavisExact, 1.0, "Davis", 2),
                column(ModifiedDavisExact, 1.0, "Modified Davis", 6),
                column(SekarExact, 0.75, "Sekar P_gates=0.75", 4),
                column(ModifiedSekarExact, 0.75, "Modified Sekar P_gates=0.75", 4),
            ],
        ),
        2 => build(
            2,
            "Validation of the modified exact models",
            datasets::table2(),
            vec![
                column(DavisExact, 1.0, "Davis", 4),
                column(ModifiedDavisExact, 1.0, "Modified Davis", 4),
                column(ModifiedSekarExact, 0.5, "Modified Sekar P_gates=0.5", 4),
                column(SekarExact, 0.75, "Sekar P_gates=0.75", 4),
                column(ModifiedSekarExact, 0.75, "Modified Sekar P_gates=0.75", 4),
            ],
        ),
        3 => build(
            3,
            "Approximate models",
            datasets::table1(),
            vec![
                column(DavisApprox, 1.0, "Davis approx", 4),
                column(SekarApprox, 0.5, "Sekar approx P_gates=0.5", 4),
                column(SekarApprox, 0.75, "Sekar approx P_gates=0.75", 4),
            ],
        ),
        4 => build(
            4,
            "Modified approximate models",
            datasets::table1(),
            modified_columns(),
        ),
        5 => {
            let columns = modified_columns();
            let specs = modified_approx_models();
            let rep = threshold_report(
                &datasets::table1(),
                RENT_THRESHOLD,
                &specs,
                LengthUnit::GatePitches,
            )?;
            let records = datasets::table1()
                .into_iter()
                .filter(|r| r.rent_p >= RENT_THRESHOLD)
                .collect();
            ReproducedTable {
                number: 5,
                title: format!("Modified approximate models with p >= {RENT_THRESHOLD}"),
                columns,
                records,
                report: rep.included,
            }
        }
        other => {
            return Err(Error::domain(
                "table",
                other as f64,
                "tables are numbered 1 to 5",
            ));
        }
    };
    Ok(table)
}

fn modified_columns() -> Vec<TableColumn> {
    let labels = [
        "Modified Davis approx",
        "Modified Sekar approx P_gates=0.5",
        "Modified Sekar approx P_gates=0.75",
    ];
    modified_approx_models()
        .into_iter()
        .zip(labels)
        .map(|(spec, label)| TableColumn {
            spec,
            label: label.to_string(),
            decimals: 6,
        })
        .collect()
}
