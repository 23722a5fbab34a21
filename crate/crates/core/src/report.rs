//! Machine and human renderings of an [`AuditReport`].
//!
//! Reals are written with 17 significant digits so that reading a report
//! back recovers every residual bit for bit. Non-finite values have no JSON
//! number form and are written as the strings `"NaN"`, `"inf"`, `"-inf"`.

use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use crate::audit::{AuditReport, CheckRecord, Variant};
use crate::error::{Error, Result};

fn real(x: f64) -> Box<RawValue> {
    let text = if x.is_nan() {
        "\"NaN\"".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "\"inf\"" } else { "\"-inf\"" }.to_string()
    } else {
        format!("{x:.16e}")
    };
    RawValue::from_string(text).expect("formatted real is valid JSON")
}

fn parse_real(raw: &RawValue, field: &str) -> Result<f64> {
    let bad = || Error::Report(format!("`{field}` is not a real: {}", raw.get()));
    match raw.get() {
        "\"NaN\"" => Ok(f64::NAN),
        "\"inf\"" => Ok(f64::INFINITY),
        "\"-inf\"" => Ok(f64::NEG_INFINITY),
        s if s.starts_with('"') => Err(bad()),
        s => s.parse().map_err(|_| bad()),
    }
}

#[derive(Serialize, Deserialize)]
struct RecordJson {
    check: String,
    variant: String,
    samples: usize,
    max_residual: Box<RawValue>,
    mean_residual: Box<RawValue>,
    tolerance: Box<RawValue>,
    pass: bool,
    argmax_point: Vec<Box<RawValue>>,
}

#[derive(Serialize, Deserialize)]
struct ReportJson {
    records: Vec<RecordJson>,
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json(report: &AuditReport) -> String {
    let doc = ReportJson {
        records: report
            .records
            .iter()
            .map(|r| RecordJson {
                check: r.check.clone(),
                variant: r.variant.name().to_string(),
                samples: r.samples,
                max_residual: real(r.max_residual),
                mean_residual: real(r.mean_residual),
                tolerance: real(r.tolerance),
                pass: r.pass,
                argmax_point: r.argmax_point.iter().map(|&x| real(x)).collect(),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<AuditReport> {
    let doc: ReportJson = serde_json::from_str(text).map_err(|e| Error::Report(e.to_string()))?;
    let records = doc
        .records
        .into_iter()
        .map(|r| {
            let variant = match r.variant.as_str() {
                "as-printed" => Variant::AsPrinted,
                "as-derived" => Variant::AsDerived,
                v => return Err(Error::Report(format!("unknown variant `{v}`"))),
            };
            Ok(CheckRecord {
                check: r.check,
                variant,
                samples: r.samples,
                max_residual: parse_real(&r.max_residual, "max_residual")?,
                mean_residual: parse_real(&r.mean_residual, "mean_residual")?,
                tolerance: parse_real(&r.tolerance, "tolerance")?,
                pass: r.pass,
                argmax_point: r
                    .argmax_point
                    .iter()
                    .map(|x| parse_real(x, "argmax_point"))
                    .collect::<Result<_>>()?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(AuditReport { records })
}

/// Aligned plain-text table, one row per record.
pub fn to_table(report: &AuditReport) -> String {
    let header = ["check", "samples", "max", "mean", "tol", "result", "argmax"];
    let rows: Vec<[String; 7]> = report
        .records
        .iter()
        .map(|r| {
            let point: Vec<String> = r.argmax_point.iter().map(|x| format!("{x:.4}")).collect();
            [
                r.check.clone(),
                r.samples.to_string(),
                format!("{:.3e}", r.max_residual),
                format!("{:.3e}", r.mean_residual),
                format!("{:.1e}", r.tolerance),
                if r.pass { "pass" } else { "FAIL" }.to_string(),
                format!("({})", point.join(", ")),
            ]
        })
        .collect();
    let mut width = header.map(|h| h.chars().count());
    for row in &rows {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(width)
            .enumerate()
            .map(|(i, (c, w))| if i == 0 || i == 6 { format!("{c:<w$}") } else { format!("{c:>w$}") })
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(&header.map(String::from));
    for row in &rows {
        out.push_str(&line(row));
    }
    let failed = report.records.iter().filter(|r| !r.pass).count();
    out.push_str(&format!("{} checks, {} failed\n", report.records.len(), failed));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(max: f64) -> CheckRecord {
        CheckRecord {
            check: "prop31.3.as-printed".into(),
            variant: Variant::AsPrinted,
            samples: 3,
            max_residual: max,
            mean_residual: max / 3.0,
            tolerance: 1e-9,
            pass: max <= 1e-9,
            argmax_point: vec![0.1 + 0.2, -std::f64::consts::PI],
        }
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let report = AuditReport {
            records: vec![record(1.0 / 3.0), record(5e-324), record(f64::NAN), record(f64::INFINITY)],
        };
        let back = from_json(&to_json(&report)).unwrap();
        for (a, b) in report.records.iter().zip(&back.records) {
            assert_eq!(a.max_residual.to_bits(), b.max_residual.to_bits());
            assert_eq!(a.mean_residual.to_bits(), b.mean_residual.to_bits());
            assert_eq!(a.argmax_point[0].to_bits(), b.argmax_point[0].to_bits());
            assert_eq!(a.check, b.check);
            assert_eq!(a.variant, b.variant);
        }
    }

    #[test]
    fn residuals_carry_seventeen_digits() {
        let json = to_json(&AuditReport { records: vec![record(1.0 / 3.0)] });
        assert!(json.contains("\"max_residual\": 3.3333333333333331e-1"), "{json}");
    }

    #[test]
    fn table_marks_failures() {
        let t = to_table(&AuditReport { records: vec![record(1e-12), record(1.0)] });
        assert!(t.contains("pass") && t.contains("FAIL"));
        assert!(t.ends_with("2 checks, 1 failed\n"));
    }
}
