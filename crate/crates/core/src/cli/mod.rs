// Copyright 2026 the Orthotomic Authors
// SPDX-License-Identifier: Apache-2.0

//! Command-line front end: argument types, command execution and output
//! formatting.
//!
//! CSV columns, in order:
//!
//! * `frame`: `s`, `u{i}_{j}` for `i = 0…n` and `j = 0…n`, then `kappa_1 … kappa_n`;
//! * `map`: `s`, `ped_{j}`, `ort_{j}`, `un_{j}` (pedal cells empty at poles);
//! * `classify`: one row with `source, equivalence, exponents, exponent_basis,
//!   signature, signature_matches, stratum, ak`;
//! * `verify`: one row per check `name, max_residual, tolerance, passed,
//!   samples, skipped, worst_sample`;
//! * `catalog`: `name, n, params, domain_min, domain_max, frame_defined`.
//!
//! Reals in CSV carry 17 significant digits; JSON uses the shortest
//! representation that round-trips.

mod point;

pub use point::{resolve_point, PointError, POINT_NORM_TOL};

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::catalog::{self, CatalogEntry, CatalogError, CurveParams, Oracle};
use crate::classify::{classify_orthotomic_germ, ClassifyError, ClassifyOptions, GermClass};
use crate::frame::{compute_frame, FrameError};
use crate::grid::{Grid, DEFAULT_COVERAGE, DEFAULT_SAMPLES};
use crate::maps::{self, MapError, SpherePoint};
use crate::tol::{self, Tolerances};
use crate::verify::{self, default_frame_order, GridDescription, VerificationReport, VerifyError};

pub const SCHEMA_VERSION: &str = "1.0";

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_UNCLASSIFIED: i32 = 2;

#[derive(Debug, Clone, Parser)]
#[command(
    name = "orthotomic",
    version,
    about = "Pedal and orthotomic curves of spherical curves"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Sample the moving frame and curvatures.
    Frame(SampleArgs),
    /// Sample the pedal, orthotomic and dual curves.
    Map(PointArgs),
    /// Classify the orthotomic germ at s0.
    Classify(PointArgs),
    /// Check frame and map identities over a grid.
    Verify(PointArgs),
    /// List the built-in curves.
    Catalog(OutputArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub output: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CurveArgs {
    /// Catalog curve name (see `catalog`).
    #[arg(long)]
    pub curve: String,
    /// Sphere dimension.
    #[arg(long)]
    pub n: Option<usize>,
    /// Small-circle radius.
    #[arg(long)]
    pub r: Option<f64>,
    /// Vanishing order of κ_n at 0 for `ak-curve`.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<f64>,
}

impl CurveArgs {
    pub fn params(&self) -> CurveParams {
        CurveParams {
            n: self.n,
            r: self.r,
            k: self.k,
            a: self.a,
            b: self.b,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct TolArgs {
    #[arg(long, default_value_t = tol::FRAME_TOL)]
    pub frame_tol: f64,
    #[arg(long, default_value_t = tol::FRAME_DEGENERACY_TOL)]
    pub degeneracy_tol: f64,
    #[arg(long, default_value_t = tol::POLE_TOL)]
    pub pole_tol: f64,
    #[arg(long, default_value_t = tol::STRAT_TOL)]
    pub strat_tol: f64,
    #[arg(long, default_value_t = tol::AK_TOL)]
    pub ak_tol: f64,
    #[arg(long, default_value_t = tol::SIG_TOL)]
    pub sig_tol: f64,
}

impl TolArgs {
    pub fn tolerances(&self) -> Tolerances {
        Tolerances {
            frame: self.frame_tol,
            frame_degeneracy: self.degeneracy_tol,
            pole: self.pole_tol,
            strat: self.strat_tol,
            ak: self.ak_tol,
            sig: self.sig_tol,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub curve: CurveArgs,
    /// Base parameter; always a grid sample.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub s0: f64,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    /// Grid spacing; by default the grid covers 90% of the way to each end.
    #[arg(long)]
    pub step: Option<f64>,
    /// Jet order of the curve.
    #[arg(long)]
    pub order: Option<usize>,
    #[command(flatten)]
    pub tol: TolArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct PointArgs {
    #[command(flatten)]
    pub sample: SampleArgs,
    /// Coordinates `x0,x1,…` or an anchor `gamma(s)`, `u_k(s)`, `-u_k(s)`.
    #[arg(long = "P", value_name = "POINT", allow_hyphen_values = true)]
    pub point: String,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Point(#[from] PointError),
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("s0 = {s0} is outside the curve domain ({min}, {max})")]
    OutOfDomain { s0: f64, min: f64, max: f64 },
    #[error("order {order} is too small; need at least {need}")]
    Order { order: usize, need: usize },
    #[error("{0}")]
    Format(String),
}

/// Result of a command: exit status and the document to emit.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub document: String,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema_version: &'static str,
    command: &'static str,
    #[serde(flatten)]
    body: &'a T,
}

fn to_json<T: Serialize>(command: &'static str, body: &T) -> Result<String, CliError> {
    let env = Envelope {
        schema_version: SCHEMA_VERSION,
        command,
        body,
    };
    let mut s = serde_json::to_string_pretty(&env).map_err(|e| CliError::Format(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// A real with 17 significant digits.
pub fn fmt_real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

fn csv_row(cells: impl IntoIterator<Item = String>) -> String {
    let mut line = cells.into_iter().collect::<Vec<_>>().join(",");
    line.push('\n');
    line
}

fn csv_text(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn list(xs: impl IntoIterator<Item = String>) -> String {
    xs.into_iter().collect::<Vec<_>>().join(" ")
}

struct Prepared {
    entry: CatalogEntry,
    tol: Tolerances,
    grid: Grid,
}

fn prepare(args: &SampleArgs) -> Result<Prepared, CliError> {
    let entry = catalog::lookup(&args.curve.curve, &args.curve.params())?;
    let domain = entry.spec.domain();
    if !domain.contains(args.s0) {
        return Err(CliError::OutOfDomain {
            s0: args.s0,
            min: domain.min,
            max: domain.max,
        });
    }
    let grid = Grid::anchored(domain, args.s0, args.samples, args.step, DEFAULT_COVERAGE);
    Ok(Prepared {
        entry,
        tol: args.tol.tolerances(),
        grid,
    })
}

fn frame_order(args: &SampleArgs, n: usize) -> Result<usize, CliError> {
    let order = args.order.unwrap_or_else(|| default_frame_order(n));
    if order < n + 1 {
        return Err(CliError::Order { order, need: n + 1 });
    }
    Ok(order)
}

#[derive(Serialize)]
struct FrameRow {
    s: f64,
    u: Vec<Vec<f64>>,
    kappa: Vec<f64>,
}

#[derive(Serialize)]
struct FrameDoc {
    curve: String,
    n: usize,
    order: usize,
    grid: GridDescription,
    samples: Vec<FrameRow>,
}

fn run_frame(args: &SampleArgs) -> Result<Outcome, CliError> {
    let prep = prepare(args)?;
    let n = prep.entry.n;
    let order = frame_order(args, n)?;
    let mut rows = Vec::with_capacity(prep.grid.len());
    for s in prep.grid.iter() {
        let f = compute_frame(&prep.entry.spec, s, order, &prep.tol)?;
        rows.push(FrameRow {
            s,
            u: f.values(),
            kappa: f.kappa_values()[1..].to_vec(),
        });
    }
    let document = match args.output.format {
        Format::Json => to_json(
            "frame",
            &FrameDoc {
                curve: prep.entry.label(),
                n,
                order,
                grid: GridDescription::of(&prep.grid),
                samples: rows,
            },
        )?,
        Format::Csv => {
            let mut header = vec!["s".to_string()];
            for i in 0..=n {
                header.extend((0..=n).map(|j| format!("u{i}_{j}")));
            }
            header.extend((1..=n).map(|i| format!("kappa_{i}")));
            let mut out = csv_row(header);
            for r in rows {
                let mut cells = vec![fmt_real(r.s)];
                cells.extend(r.u.iter().flatten().map(|&x| fmt_real(x)));
                cells.extend(r.kappa.iter().map(|&x| fmt_real(x)));
                out.push_str(&csv_row(cells));
            }
            out
        }
    };
    Ok(Outcome {
        code: EXIT_OK,
        document,
    })
}

#[derive(Serialize)]
struct MapRow {
    s: f64,
    ped: Option<Vec<f64>>,
    ort: Vec<f64>,
    u_n: Vec<f64>,
}

#[derive(Serialize)]
struct MapDoc<'a> {
    curve: String,
    point: &'a SpherePoint,
    grid: GridDescription,
    samples: Vec<MapRow>,
}

fn run_map(args: &PointArgs) -> Result<Outcome, CliError> {
    let prep = prepare(&args.sample)?;
    let n = prep.entry.n;
    let p = resolve_point(&args.point, &prep.entry.spec, args.sample.s0, &prep.tol)?;
    let order = frame_order(&args.sample, n)?;
    let mut rows = Vec::with_capacity(prep.grid.len());
    for s in prep.grid.iter() {
        let f = compute_frame(&prep.entry.spec, s, order, &prep.tol)?;
        let ped = if maps::is_pole(&f, &p, prep.tol.pole) {
            None
        } else {
            Some(maps::pedal(&f, &p, prep.tol.pole)?.value())
        };
        rows.push(MapRow {
            s,
            ped,
            ort: maps::orthotomic(&f, &p)?.value(),
            u_n: f.dual().value(),
        });
    }
    let document = match args.sample.output.format {
        Format::Json => to_json(
            "map",
            &MapDoc {
                curve: prep.entry.label(),
                point: &p,
                grid: GridDescription::of(&prep.grid),
                samples: rows,
            },
        )?,
        Format::Csv => {
            let mut header = vec!["s".to_string()];
            for name in ["ped", "ort", "un"] {
                header.extend((0..=n).map(|j| format!("{name}_{j}")));
            }
            let mut out = csv_row(header);
            for r in rows {
                let mut cells = vec![fmt_real(r.s)];
                match &r.ped {
                    Some(v) => cells.extend(v.iter().map(|&x| fmt_real(x))),
                    None => cells.extend(std::iter::repeat_n(String::new(), n + 1)),
                }
                cells.extend(r.ort.iter().map(|&x| fmt_real(x)));
                cells.extend(r.u_n.iter().map(|&x| fmt_real(x)));
                out.push_str(&csv_row(cells));
            }
            out
        }
    };
    Ok(Outcome {
        code: EXIT_OK,
        document,
    })
}

#[derive(Serialize)]
struct ClassifyDoc<'a> {
    curve: String,
    point: &'a SpherePoint,
    s0: f64,
    result: &'a GermClass,
}

fn run_classify(args: &PointArgs) -> Result<Outcome, CliError> {
    let prep = prepare(&args.sample)?;
    let n = prep.entry.n;
    let p = resolve_point(&args.point, &prep.entry.spec, args.sample.s0, &prep.tol)?;
    let opts = ClassifyOptions {
        order: args.sample.order,
        tol: prep.tol,
        ..ClassifyOptions::default()
    };
    if let Some(order) = opts.order {
        if order < n + 1 {
            return Err(CliError::Order { order, need: n + 1 });
        }
    }
    let class = classify_orthotomic_germ(&prep.entry.spec, &p, args.sample.s0, &opts)?;
    let code = if class.is_classified() {
        EXIT_OK
    } else {
        EXIT_UNCLASSIFIED
    };
    let document = match args.sample.output.format {
        Format::Json => to_json(
            "classify",
            &ClassifyDoc {
                curve: prep.entry.label(),
                point: &p,
                s0: args.sample.s0,
                result: &class,
            },
        )?,
        Format::Csv => {
            let mut out = csv_row(
                [
                    "source",
                    "equivalence",
                    "exponents",
                    "exponent_basis",
                    "signature",
                    "signature_matches",
                    "stratum",
                    "ak",
                ]
                .map(String::from),
            );
            let d = &class.diagnostics;
            let stratum = match d.stratum.stratum() {
                Some(i) => i.to_string(),
                None => "pole".to_string(),
            };
            let ak = match d.ak {
                Some(crate::classify::AkType::NotSingular) => "not-singular".to_string(),
                Some(crate::classify::AkType::A(k)) => format!("A_{k}"),
                None => "inconclusive".to_string(),
            };
            out.push_str(&csv_row([
                csv_text(class.source),
                format!("{:?}", class.equivalence),
                list(class.exponents.iter().map(usize::to_string)),
                format!("{:?}", class.exponent_basis).to_lowercase(),
                list(class.signature.orders.iter().map(usize::to_string)),
                class.signature_matches.map_or(String::new(), |b| b.to_string()),
                stratum,
                ak,
            ]));
            out
        }
    };
    Ok(Outcome { code, document })
}

fn run_verify(args: &PointArgs) -> Result<Outcome, CliError> {
    let prep = prepare(&args.sample)?;
    let p = resolve_point(&args.point, &prep.entry.spec, args.sample.s0, &prep.tol)?;
    let grid = Grid::anchored(
        prep.entry.spec.domain(),
        prep.entry.spec.domain().center(),
        args.sample.samples,
        args.sample.step,
        DEFAULT_COVERAGE,
    );
    let report = verify::verify_point(&prep.entry, &p, &grid, args.sample.s0, &prep.tol)?;
    let code = if report.passed { EXIT_OK } else { EXIT_ERROR };
    let document = match args.sample.output.format {
        Format::Json => to_json("verify", &report)?,
        Format::Csv => verify_csv(&report),
    };
    Ok(Outcome { code, document })
}

fn verify_csv(report: &VerificationReport) -> String {
    let mut out = csv_row(
        [
            "name",
            "max_residual",
            "tolerance",
            "passed",
            "samples",
            "skipped",
            "worst_sample",
        ]
        .map(String::from),
    );
    for c in &report.checks {
        out.push_str(&csv_row([
            c.name.to_string(),
            fmt_real(c.max_residual),
            fmt_real(c.tolerance),
            c.passed.to_string(),
            c.samples.to_string(),
            c.skipped.to_string(),
            c.worst_sample.map_or(String::new(), fmt_real),
        ]));
    }
    if let Some(w) = &report.witness {
        let _ = write!(
            out,
            "{}",
            csv_row([
                "witness".to_string(),
                fmt_real(w.max_residual),
                fmt_real(w.tolerance),
                (w.verdict != verify::WitnessVerdict::Failed).to_string(),
                w.grid.samples.to_string(),
                "0".to_string(),
                fmt_real(w.s0),
            ])
        );
    }
    out
}

#[derive(Serialize)]
struct CatalogRow {
    name: &'static str,
    label: String,
    n: usize,
    params: std::collections::BTreeMap<&'static str, f64>,
    domain: [f64; 2],
    frame_defined: bool,
    oracle: Oracle,
}

#[derive(Serialize)]
struct CatalogDoc {
    entries: Vec<CatalogRow>,
}

fn run_catalog(args: &OutputArgs) -> Result<Outcome, CliError> {
    let entries: Vec<CatalogRow> = catalog::catalog_list()
        .into_iter()
        .map(|e| CatalogRow {
            name: e.name,
            label: e.label(),
            n: e.n,
            params: e.params.clone(),
            domain: [e.spec.domain().min, e.spec.domain().max],
            frame_defined: e.frame_defined,
            oracle: e.oracle.clone(),
        })
        .collect();
    let document = match args.format {
        Format::Json => to_json("catalog", &CatalogDoc { entries })?,
        Format::Csv => {
            let mut out = csv_row(
                ["name", "n", "params", "domain_min", "domain_max", "frame_defined"].map(String::from),
            );
            for e in entries {
                let params = list(e.params.iter().map(|(k, v)| format!("{k}={v}")));
                out.push_str(&csv_row([
                    e.name.to_string(),
                    e.n.to_string(),
                    params,
                    fmt_real(e.domain[0]),
                    fmt_real(e.domain[1]),
                    e.frame_defined.to_string(),
                ]));
            }
            out
        }
    };
    Ok(Outcome {
        code: EXIT_OK,
        document,
    })
}

/// Executes `config`; errors are returned, not printed.
pub fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    match &config.command {
        Command::Frame(a) => run_frame(a),
        Command::Map(a) => run_map(a),
        Command::Classify(a) => run_classify(a),
        Command::Verify(a) => run_verify(a),
        Command::Catalog(a) => run_catalog(a),
    }
}

impl RunConfig {
    pub fn output(&self) -> &OutputArgs {
        match &self.command {
            Command::Frame(a) => &a.output,
            Command::Map(a) | Command::Classify(a) | Command::Verify(a) => &a.sample.output,
            Command::Catalog(a) => a,
        }
    }
}

/// Parses `args`, runs the command and writes its document. Returns the
/// process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    match run(&config) {
        Ok(outcome) => {
            let written = match &config.output().output {
                Some(path) => std::fs::write(path, &outcome.document),
                None => {
                    use std::io::Write;
                    std::io::stdout().write_all(outcome.document.as_bytes())
                }
            };
            match written {
                Ok(()) => outcome.code,
                Err(e) => {
                    eprintln!("error: {e}");
                    EXIT_ERROR
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        let config =
            RunConfig::try_parse_from(std::iter::once("orthotomic").chain(args.iter().copied())).unwrap();
        run(&config).unwrap()
    }

    #[test]
    fn map_csv_has_anchor_row() {
        let out = run_args(&[
            "map",
            "--curve",
            "small-circle",
            "--r",
            "0.8",
            "--P",
            "0,0,1",
            "--samples",
            "4",
            "--format",
            "csv",
        ]);
        let lines: Vec<&str> = out.document.lines().collect();
        assert_eq!(lines[0], "s,ped_0,ped_1,ped_2,ort_0,ort_1,ort_2,un_0,un_1,un_2");
        assert_eq!(lines.len(), 5);
        let row: Vec<f64> = lines
            .iter()
            .skip(1)
            .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect::<Vec<f64>>())
            .find(|r| r[0] == 0.0)
            .unwrap();
        let expected = [0.8, 0.0, 0.6, 0.96, 0.0, -0.28];
        for (x, y) in row[1..7].iter().zip(expected) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn pole_rows_leave_pedal_empty() {
        let out = run_args(&[
            "map",
            "--curve",
            "small-circle",
            "--P",
            "-u_2(0)",
            "--samples",
            "3",
            "--format",
            "csv",
        ]);
        let row = out
            .document
            .lines()
            .find(|l| l.starts_with("0.0000000000000000e0"))
            .unwrap();
        assert!(row.starts_with("0.0000000000000000e0,,,,"));
    }

    #[test]
    fn classify_exit_codes() {
        let out = run_args(&[
            "classify",
            "--curve",
            "small-circle",
            "--r",
            "0.8",
            "--P",
            "gamma(0)",
            "--s0",
            "0",
        ]);
        assert_eq!(out.code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&out.document).unwrap();
        assert_eq!(v["schema_version"], SCHEMA_VERSION);
        assert_eq!(
            v["result"]["source"],
            crate::classify::Clause::RegularDualLower.label()
        );
        assert_eq!(v["result"]["exponents"], serde_json::json!([2, 3]));

        let out = run_args(&["classify", "--curve", "great-circle", "--P", "0,0,1"]);
        assert_eq!(out.code, EXIT_UNCLASSIFIED);
    }

    #[test]
    fn errors() {
        let parse = |args: &[&str]| {
            RunConfig::try_parse_from(std::iter::once("orthotomic").chain(args.iter().copied())).unwrap()
        };
        assert!(matches!(
            run(&parse(&["map", "--curve", "spiral", "--P", "0,0,1"])),
            Err(CliError::Catalog(_))
        ));
        assert!(matches!(
            run(&parse(&["map", "--curve", "small-circle", "--P", "0,0,2"])),
            Err(CliError::Point(_))
        ));
        assert!(matches!(
            run(&parse(&[
                "classify",
                "--curve",
                "small-circle",
                "--P",
                "0,0,1",
                "--s0",
                "9"
            ])),
            Err(CliError::OutOfDomain { .. })
        ));
    }
}
