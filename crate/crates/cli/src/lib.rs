// SPDX-License-Identifier: Apache-2.0

//! Command-line front end: `estimate`, `sweep`, `evaluate`, `verify` and `tables`.

pub mod render;

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use wirelength::oracles::verify;
use wirelength::oracles::QuadratureSettings;
use wirelength::tables::{self, ReproducedTable};
use wirelength::{
    estimate, evaluate, load_benchmarks, sweep, ChipConfiguration, EvaluationReport, LengthUnit,
    ModelId, ModelSpec, SweepRange,
};

use render::{Cell, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "wirelength",
    version,
    about = "A priori average wire-length estimation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Average wire length for one design.
    Estimate {
        #[arg(long, value_parser = parse_model)]
        model: ModelId,
        #[arg(long)]
        gates: f64,
        #[arg(long)]
        rent_p: f64,
        #[command(flatten)]
        chip: ChipArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Average wire length along a line in (gates, p) space.
    Sweep {
        #[arg(long, value_parser = parse_model)]
        model: ModelId,
        /// Fixed gate count; shorthand for equal --gates-min and --gates-max.
        #[arg(long, conflicts_with_all = ["gates_min", "gates_max"])]
        gates: Option<f64>,
        #[arg(long)]
        gates_min: Option<f64>,
        #[arg(long)]
        gates_max: Option<f64>,
        /// Fixed Rent exponent; shorthand for equal --p-min and --p-max.
        #[arg(long, conflicts_with_all = ["p_min", "p_max"])]
        rent_p: Option<f64>,
        #[arg(long)]
        p_min: Option<f64>,
        #[arg(long)]
        p_max: Option<f64>,
        #[arg(long, default_value_t = 50)]
        steps: usize,
        #[command(flatten)]
        chip: ChipArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Score models against a benchmark CSV (name,n_gates,rent_p,actual_lavg).
    Evaluate {
        #[arg(long)]
        input: PathBuf,
        /// Repeatable; all models when omitted.
        #[arg(long, value_parser = parse_model)]
        model: Vec<ModelId>,
        #[command(flatten)]
        chip: ChipArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Check the closed forms against the numeric oracles.
    Verify {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Regenerate the comparison tables from the bundled benchmarks.
    Tables {
        /// Table number; all tables when omitted.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=5))]
        table: Option<u8>,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, Args)]
pub struct ChipArgs {
    /// Fraction of sockets holding a gate.
    #[arg(long, default_value_t = 1.0)]
    p_gates: f64,
    #[arg(long, default_value = "pitches", value_parser = parse_unit)]
    unit: LengthUnit,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Significant digits for numeric output.
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u8).range(1..=17))]
    digits: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

fn parse_model(s: &str) -> Result<ModelId, String> {
    s.parse()
}

fn parse_unit(s: &str) -> Result<LengthUnit, String> {
    s.parse()
}

enum Rendered {
    Csv(String),
    Json(Value),
}

struct Outcome {
    body: Rendered,
    code: i32,
}

/// Parses `argv` (including the program name), runs the command and returns
/// the exit status. Reports go to `stdout` or `--output`; diagnostics to `stderr`.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    EXIT_INPUT
                }
            };
        }
    };

    let out = match &cli.command {
        Command::Estimate { out, .. }
        | Command::Sweep { out, .. }
        | Command::Evaluate { out, .. }
        | Command::Verify { out, .. }
        | Command::Tables { out, .. } => out,
    };

    let outcome = match execute(&cli.command, out.digits as usize) {
        Ok(outcome) => outcome,
        Err(message) => {
            let _ = writeln!(stderr, "error: {message}");
            return EXIT_INPUT;
        }
    };

    let text = match &outcome.body {
        Rendered::Csv(s) => s.clone(),
        Rendered::Json(v) => {
            let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
            s.push('\n');
            s
        }
    };

    let written = match &out.output {
        Some(path) => File::create(path)
            .and_then(|mut f| f.write_all(text.as_bytes()))
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| format!("cannot write to stdout: {e}")),
    };
    if let Err(message) = written {
        let _ = writeln!(stderr, "error: {message}");
        return EXIT_INPUT;
    }
    outcome.code
}

/// Runs with the process arguments and standard streams.
pub fn main_with_env() -> i32 {
    run(
        std::env::args_os(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    )
}

fn execute(command: &Command, digits: usize) -> Result<Outcome, String> {
    match command {
        Command::Estimate {
            model,
            gates,
            rent_p,
            chip,
            out,
        } => {
            let config = ChipConfiguration::new(*gates, chip.p_gates).map_err(|e| e.to_string())?;
            let result =
                estimate(*model, &config, *rent_p, chip.unit).map_err(|e| e.to_string())?;
            let mut table = Table::new([
                "model", "n_gates", "rent_p", "p_gates", "unit", "lavg", "warnings",
            ]);
            table.push(vec![
                Cell::Text(model.to_string()),
                Cell::Num(*gates),
                Cell::Num(*rent_p),
                Cell::Num(chip.p_gates),
                Cell::Text(chip.unit.to_string()),
                Cell::Num(result.value),
                Cell::Text(join(&result.warnings)),
            ]);
            Ok(single(out.format, &table, digits))
        }
        Command::Sweep {
            model,
            gates,
            gates_min,
            gates_max,
            rent_p,
            p_min,
            p_max,
            steps,
            chip,
            out,
        } => {
            let gates = axis(*gates, *gates_min, *gates_max, "--gates or --gates-min")?;
            let rent = axis(*rent_p, *p_min, *p_max, "--rent-p or --p-min")?;
            let points = sweep(gates, rent, *model, chip.p_gates, chip.unit, *steps)
                .map_err(|e| e.to_string())?;
            let mut table = Table::new(["n_gates", "rent_p", "lavg", "error"]);
            for point in points {
                table.push(vec![
                    Cell::Num(point.n_gates),
                    Cell::Num(point.p),
                    Cell::opt(point.lavg),
                    point.error.map_or(Cell::Empty, Cell::Text),
                ]);
            }
            Ok(many(out.format, &table, digits))
        }
        Command::Evaluate {
            input,
            model,
            chip,
            out,
        } => {
            let file =
                File::open(input).map_err(|e| format!("cannot read {}: {e}", input.display()))?;
            let records = load_benchmarks(file).map_err(|e| format!("{}: {e}", input.display()))?;
            let models: Vec<ModelId> = if model.is_empty() {
                ModelId::ALL.to_vec()
            } else {
                model.clone()
            };
            if !(chip.p_gates > 0.0 && chip.p_gates <= 1.0) {
                return Err(format!(
                    "p_gates = {} is out of range: gate occupancy must lie in (0, 1]",
                    chip.p_gates
                ));
            }
            let specs: Vec<ModelSpec> = models
                .iter()
                .map(|&m| ModelSpec::new(m, chip.p_gates))
                .collect();
            let report = evaluate(&records, &specs, chip.unit);
            Ok(evaluation_output(out.format, &report, digits))
        }
        Command::Verify { seed, out } => {
            let report = verify::run_all(*seed, &QuadratureSettings::default())
                .map_err(|e| e.to_string())?;
            let mut table = Table::new(["check", "max_deviation", "tolerance", "passed", "detail"]);
            for check in &report.checks {
                table.push(vec![
                    Cell::Text(check.name.clone()),
                    Cell::Num(check.max_deviation),
                    Cell::Num(check.tolerance),
                    Cell::Bool(check.passed),
                    Cell::Text(check.detail.clone()),
                ]);
            }
            let mut outcome = many(out.format, &table, digits);
            if !report.passed() {
                outcome.code = EXIT_VERIFY;
            }
            Ok(outcome)
        }
        Command::Tables { table, out } => {
            let numbers: Vec<u8> = table.map_or_else(|| (1..=5).collect(), |n| vec![n]);
            let mut reproduced = Vec::new();
            for n in &numbers {
                reproduced.push(tables::reproduce(*n).map_err(|e| e.to_string())?);
            }
            Ok(tables_output(out.format, &reproduced, digits))
        }
    }
}

fn axis(
    fixed: Option<f64>,
    start: Option<f64>,
    end: Option<f64>,
    needed: &str,
) -> Result<SweepRange, String> {
    match (fixed, start, end) {
        (Some(v), _, _) => Ok(SweepRange::fixed(v)),
        (None, Some(a), b) => Ok(SweepRange::new(a, b.unwrap_or(a))),
        (None, None, _) => Err(format!("sweep needs {needed}")),
    }
}

fn join<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

fn single(format: Format, table: &Table, digits: usize) -> Outcome {
    let body = match format {
        Format::Csv => Rendered::Csv(table.to_csv(digits)),
        Format::Json => Rendered::Json(table.to_json(digits)[0].clone()),
    };
    Outcome {
        body,
        code: EXIT_OK,
    }
}

fn many(format: Format, table: &Table, digits: usize) -> Outcome {
    let body = match format {
        Format::Csv => Rendered::Csv(table.to_csv(digits)),
        Format::Json => Rendered::Json(table.to_json(digits)),
    };
    Outcome {
        body,
        code: EXIT_OK,
    }
}

fn evaluation_output(format: Format, report: &EvaluationReport, digits: usize) -> Outcome {
    let mut rows = Table::new([
        "name",
        "n_gates",
        "rent_p",
        "actual_lavg",
        "model",
        "p_gates",
        "estimate",
        "percent_error",
        "signed_error",
        "note",
    ]);
    for row in &report.rows {
        let mut notes: Vec<String> = row.skip_reason.iter().cloned().collect();
        notes.extend(row.warnings.iter().map(ToString::to_string));
        rows.push(vec![
            Cell::Text(row.record.name.clone()),
            Cell::Num(row.record.n_gates as f64),
            Cell::Num(row.record.rent_p),
            Cell::opt(row.record.actual_lavg),
            Cell::Text(row.spec.model.to_string()),
            Cell::Num(row.spec.p_gates),
            Cell::opt(row.estimate),
            Cell::opt(row.percent_error),
            Cell::opt(row.signed_error),
            Cell::Text(notes.join("; ")),
        ]);
    }
    let mut summary = Table::new([
        "model",
        "p_gates",
        "mae",
        "signed_mean_error",
        "scored_rows",
        "skipped_rows",
    ]);
    for s in &report.summaries {
        summary.push(vec![
            Cell::Text(s.spec.model.to_string()),
            Cell::Num(s.spec.p_gates),
            Cell::opt(s.mae),
            Cell::opt(s.signed_mean_error),
            Cell::Text(s.scored_rows.to_string()),
            Cell::Text(s.skipped_rows.to_string()),
        ]);
    }
    let body = match format {
        Format::Csv => Rendered::Csv(format!(
            "{}\n{}",
            rows.to_csv(digits),
            summary.to_csv(digits)
        )),
        Format::Json => Rendered::Json(json!({
            "unit": report.unit.to_string(),
            "rows": rows.to_json(digits),
            "summary": summary.to_json(digits),
        })),
    };
    Outcome {
        body,
        code: EXIT_OK,
    }
}

fn table_grid(t: &ReproducedTable) -> Table {
    let mut headers = vec![
        "name".to_string(),
        "n_gates".to_string(),
        "rent_p".to_string(),
        "actual_lavg".to_string(),
    ];
    for col in &t.columns {
        headers.push(col.label.clone());
        headers.push(format!("{} %error", col.label));
    }
    let mut grid = Table::new(headers);
    let fixed = |v: Option<f64>, decimals: usize| {
        v.map_or(Cell::Text("NA".into()), |v| Cell::Fixed(v, decimals))
    };
    for (i, record) in t.records.iter().enumerate() {
        let mut row = vec![
            Cell::Text(record.name.clone()),
            Cell::Fixed(record.n_gates as f64, 0),
            Cell::Fixed(record.rent_p, 2),
            record
                .actual_lavg
                .map_or(Cell::Empty, |v| Cell::Fixed(v, 2)),
        ];
        for (j, col) in t.columns.iter().enumerate() {
            row.push(fixed(t.estimate(i, j), col.decimals));
            row.push(fixed(t.percent_error(i, j), error_decimals(col.decimals)));
        }
        grid.push(row);
    }
    let mut avg = vec![
        Cell::Text("Avg error".into()),
        Cell::Empty,
        Cell::Empty,
        Cell::Empty,
    ];
    for (j, col) in t.columns.iter().enumerate() {
        avg.push(Cell::Empty);
        avg.push(fixed(t.mae(j), error_decimals(col.decimals)));
    }
    grid.push(avg);
    grid
}

fn error_decimals(estimate_decimals: usize) -> usize {
    estimate_decimals.max(4)
}

fn tables_output(format: Format, reproduced: &[ReproducedTable], digits: usize) -> Outcome {
    let body = match format {
        Format::Csv if reproduced.len() == 1 => {
            Rendered::Csv(table_grid(&reproduced[0]).to_csv(digits))
        }
        Format::Csv => Rendered::Csv(
            reproduced
                .iter()
                .map(|t| {
                    format!(
                        "# Table {}: {}\n{}",
                        t.number,
                        t.title,
                        table_grid(t).to_csv(digits)
                    )
                })
                .collect::<Vec<_>>()
                .join("\n"),
        ),
        Format::Json => {
            let all: Vec<Value> = reproduced
                .iter()
                .map(|t| {
                    json!({
                        "table": t.number,
                        "title": t.title,
                        "rows": table_grid(t).to_json(digits),
                    })
                })
                .collect();
            if all.len() == 1 {
                Rendered::Json(all[0].clone())
            } else {
                Rendered::Json(Value::Array(all))
            }
        }
    };
    Outcome {
        body,
        code: EXIT_OK,
    }
}
