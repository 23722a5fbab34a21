//! Command-line front end: `eval`, `audit` and `presets`.
//!
//! Exit status is 0 when every requested check passes, 1 when any fails,
//! and 2 for configuration, expression or usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::audit::{run_audit, select};
use crate::error::{Error, Result};
use crate::expr::Point;
use crate::geometry::{christoffel_at, nonmetricity_at, torsion_at, Connection, VectorField};
use crate::linalg::Coefficients;
use crate::report;
use crate::scenario::Scenario;
use crate::tripathi::{PresetId, TripathiConnection};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "warpcheck", version, about = "Audit connection identities on warped products")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print metric, Christoffel symbols, connection coefficients, torsion
    /// and non-metricity at one point.
    Eval {
        #[arg(long)]
        manifest: PathBuf,
        /// Comma-separated coordinates, base first.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Run checks over sampled points.
    Audit {
        #[arg(long)]
        manifest: PathBuf,
        /// Comma-separated check names, ids or globs; replaces the manifest's list.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
        /// Write the machine-readable report here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// List the connection presets and their parameters.
    Presets,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_PASS };
            let _ = if e.use_stderr() { write!(err, "{}", e.render()) } else { write!(out, "{}", e.render()) };
            return code;
        }
    };
    match run_command(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_CONFIG
        }
    }
}

pub fn run_command(cmd: &Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Eval { manifest, point } => {
            let scenario = Scenario::load(manifest)?;
            let p = parse_point(point, scenario.wp.dim())?;
            write_io(out, &eval_text(&scenario, &p)?)?;
            Ok(EXIT_PASS)
        }
        Command::Audit { manifest, checks, seed, samples, tol, json } => {
            let mut scenario = Scenario::load(manifest)?;
            if let Some(s) = seed {
                scenario.config.seed = *s;
            }
            if let Some(n) = samples {
                if *n == 0 {
                    return Err(Error::Manifest { field: "--samples".into(), msg: "must be at least 1".into() });
                }
                scenario.config.samples = *n;
            }
            if let Some(t) = tol {
                if !(t.is_finite() && *t >= 0.0) {
                    return Err(Error::Manifest { field: "--tol".into(), msg: "must be a finite non-negative real".into() });
                }
                scenario.config.tolerance = *t;
            }
            if !checks.is_empty() {
                scenario.checks = checks.clone();
            }
            let chosen = select(&scenario.checks, scenario.placement, scenario.preset)?;
            let report = run_audit(&scenario.setup(), &chosen)?;
            if let Some(path) = json {
                write_file(path, &report::to_json(&report))?;
            }
            write_io(out, &report::to_table(&report))?;
            Ok(if report.all_pass() { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Presets => {
            write_io(out, &presets_text())?;
            Ok(EXIT_PASS)
        }
    }
}

fn write_io(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes()).map_err(|source| Error::Io { path: "<stdout>".into(), source })
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| Error::Io { path: path.display().to_string(), source })
}

pub fn parse_point(text: &str, dim: usize) -> Result<Point> {
    let coords = text
        .split(',')
        .map(|s| {
            s.trim().parse::<f64>().map_err(|_| Error::Manifest {
                field: "--point".into(),
                msg: format!("`{}` is not a real number", s.trim()),
            })
        })
        .collect::<Result<Vec<f64>>>()?;
    if coords.len() != dim {
        return Err(Error::Dimension { what: "--point".into(), expected: dim, got: coords.len() });
    }
    Ok(Point::new(coords)?)
}

fn coeff_lines(out: &mut String, sym: &str, c: &Coefficients<f64>, names: &[String]) {
    let n = names.len();
    let mut any = false;
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let v = c[(k, i, j)];
                if v != 0.0 {
                    any = true;
                    out.push_str(&format!("  {sym}^{}_{}{} = {v}\n", names[k], names[i], names[j]));
                }
            }
        }
    }
    if !any {
        out.push_str("  (all zero)\n");
    }
}

/// The `eval` listing. Zero coefficients are omitted; torsion and
/// non-metricity are taken on coordinate fields.
pub fn eval_text(s: &Scenario, p: &Point) -> Result<String> {
    let names = s.wp.names();
    let n = names.len();
    let m = s.wp.assembled();
    let mut out = String::new();
    let coords: Vec<String> = p.coords().iter().map(|x| x.to_string()).collect();
    out.push_str(&format!("point ({}) = ({})\n", names.join(", "), coords.join(", ")));
    if let Some(id) = s.preset {
        out.push_str(&format!("connection: preset {id}\n"));
    }
    let g = m.values_at(p)?;
    out.push_str("metric\n");
    for i in 0..n {
        for j in i..n {
            out.push_str(&format!("  g_{}{} = {}\n", names[i], names[j], g[(i, j)]));
        }
    }
    out.push_str("Christoffel symbols\n");
    coeff_lines(&mut out, "Γ", &christoffel_at(m, p)?, names);
    let conn = TripathiConnection::new(m, s.data.clone())?;
    out.push_str("connection coefficients\n");
    coeff_lines(&mut out, "Γ̃", &conn.coefficients_at(p)?, names);
    let e: Vec<VectorField> = (0..n).map(|k| VectorField::coordinate(k, names)).collect::<Result<_>>()?;
    out.push_str("torsion on coordinate fields\n");
    for i in 0..n {
        for j in i + 1..n {
            let t = torsion_at(&conn, &e[i], &e[j], p)?;
            let t: Vec<String> = t.iter().map(|x| x.to_string()).collect();
            out.push_str(&format!("  T(∂{}, ∂{}) = ({})\n", names[i], names[j], t.join(", ")));
        }
    }
    out.push_str("non-metricity on coordinate fields\n");
    for i in 0..n {
        for j in 0..n {
            for k in j..n {
                let q = nonmetricity_at(&conn, m, &e[i], &e[j], &e[k], p)?;
                out.push_str(&format!("  (∇_∂{} g)(∂{}, ∂{}) = {q}\n", names[i], names[j], names[k]));
            }
        }
    }
    Ok(out)
}

pub fn presets_text() -> String {
    let mut out = String::new();
    for id in PresetId::ALL {
        let free = if id.free_params().is_empty() { "none".to_string() } else { id.free_params().join(", ") };
        out.push_str(&format!("{id}\n"));
        out.push_str(&format!("  {}\n", if id.is_metric() { "metric" } else { "non-metric" }));
        out.push_str(&format!("  parameters: {free}\n"));
        out.push_str(&format!("  fixed: {}\n", id.fixed()));
    }
    out
}
