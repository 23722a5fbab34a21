//! TOML manifests describing a warped product, a connection on it, and how
//! to audit it. The layout is documented in `docs/manifest.md`.

use std::path::Path;

use serde::Deserialize;

use crate::audit::{sample_points, AuditConfig, AuditSetup, Placement};
use crate::error::{Error, Result};
use crate::expr::ScalarExpr;
use crate::geometry::{ChartMetric, Tensor11Field, VectorField};
use crate::tripathi::{preset, PresetId, PresetParams, TripathiData};
use crate::warped::{build_warped, SampleBox, WarpedProduct};

/// Probe points used to validate preset parameters.
const PRESET_PROBES: usize = 16;

/// An expression slot; bare numbers are accepted as constants.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Expr {
    Text(String),
    Number(f64),
}

impl Expr {
    fn text(&self) -> String {
        match self {
            Expr::Text(s) => s.clone(),
            Expr::Number(x) => format!("{x:?}"),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum MetricDoc {
    Diagonal(Vec<Expr>),
    Full(Vec<Vec<Expr>>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FactorDoc {
    coords: Option<Vec<String>>,
    metric: Option<MetricDoc>,
    #[serde(rename = "box")]
    bounds: Option<Vec<[f64; 2]>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConnectionDoc {
    preset: Option<String>,
    f1: Option<Expr>,
    f2: Option<Expr>,
    #[serde(rename = "P")]
    p: Option<Vec<Expr>>,
    #[serde(rename = "P1")]
    p1: Option<Vec<Expr>>,
    #[serde(rename = "P2")]
    p2: Option<Vec<Expr>>,
    phi: Option<Vec<Vec<Expr>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ManifestDoc {
    seed: Option<u64>,
    samples: Option<usize>,
    tolerance: Option<f64>,
    placement: Option<String>,
    checks: Option<Vec<String>>,
    warp: Option<Expr>,
    base: Option<FactorDoc>,
    fiber: Option<FactorDoc>,
    connection: Option<ConnectionDoc>,
}

/// A validated manifest.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub wp: WarpedProduct,
    pub sample_box: SampleBox,
    pub data: TripathiData,
    pub preset: Option<PresetId>,
    pub placement: Option<Placement>,
    pub checks: Vec<String>,
    pub config: AuditConfig,
}

fn bad(field: impl Into<String>, msg: impl ToString) -> Error {
    Error::Manifest { field: field.into(), msg: msg.to_string() }
}

fn missing(field: &str) -> Error {
    bad(field, "required field is missing")
}

fn scalar(e: &Expr, vars: &[String], field: &str) -> Result<ScalarExpr> {
    ScalarExpr::parse(&e.text(), vars).map_err(|err| bad(field, err))
}

fn field_of(es: &[Expr], vars: &[String], field: &str) -> Result<VectorField> {
    if es.len() != vars.len() {
        return Err(bad(field, format!("expected {} components, got {}", vars.len(), es.len())));
    }
    let comps = es.iter().enumerate().map(|(i, e)| scalar(e, vars, &format!("{field}[{i}]"))).collect::<Result<_>>()?;
    VectorField::from_exprs(comps).map_err(|err| bad(field, err))
}

fn tensor_of(rows: &[Vec<Expr>], vars: &[String], field: &str) -> Result<Tensor11Field> {
    let n = vars.len();
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(bad(field, format!("expected a {n}×{n} matrix")));
    }
    let rows = rows
        .iter()
        .enumerate()
        .map(|(k, r)| r.iter().enumerate().map(|(i, e)| scalar(e, vars, &format!("{field}[{k}][{i}]"))).collect())
        .collect::<Result<_>>()?;
    Tensor11Field::from_exprs(rows).map_err(|err| bad(field, err))
}

fn factor(doc: Option<FactorDoc>, name: &str) -> Result<(ChartMetric, Vec<(f64, f64)>)> {
    let doc = doc.ok_or_else(|| missing(name))?;
    let coords = doc.coords.ok_or_else(|| missing(&format!("{name}.coords")))?;
    if coords.is_empty() {
        return Err(bad(format!("{name}.coords"), "at least one coordinate is required"));
    }
    let n = coords.len();
    let mfield = format!("{name}.metric");
    let rows: Vec<Vec<Expr>> = match doc.metric.ok_or_else(|| missing(&mfield))? {
        MetricDoc::Diagonal(d) => {
            if d.len() != n {
                return Err(bad(mfield, format!("expected {n} diagonal entries, got {}", d.len())));
            }
            (0..n).map(|i| (0..n).map(|j| if i == j { d[i].clone() } else { Expr::Number(0.0) }).collect()).collect()
        }
        MetricDoc::Full(rows) => rows,
    };
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(bad(&mfield, format!("expected a {n}×{n} matrix")));
    }
    for (i, row) in rows.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            scalar(e, &coords, &format!("{mfield}[{i}][{j}]"))?;
        }
    }
    let texts: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(Expr::text).collect()).collect();
    let metric = ChartMetric::new(&coords, &texts).map_err(|err| bad(&mfield, err))?;
    let bfield = format!("{name}.box");
    let bounds = doc.bounds.ok_or_else(|| missing(&bfield))?;
    if bounds.len() != n {
        return Err(bad(bfield, format!("expected {n} intervals, got {}", bounds.len())));
    }
    Ok((metric, bounds.into_iter().map(|[lo, hi]| (lo, hi)).collect()))
}

fn connection(doc: ConnectionDoc, wp: &WarpedProduct, sample_box: &SampleBox, seed: u64) -> Result<(TripathiData, Option<PresetId>)> {
    let vars = wp.names();
    let s = |e: &Option<Expr>, f: &str| e.as_ref().map(|e| scalar(e, vars, f)).transpose();
    let v = |e: &Option<Vec<Expr>>, f: &str| e.as_ref().map(|e| field_of(e, vars, f)).transpose();
    let f1 = s(&doc.f1, "connection.f1")?;
    let f2 = s(&doc.f2, "connection.f2")?;
    let p = v(&doc.p, "connection.P")?;
    let p1 = v(&doc.p1, "connection.P1")?;
    let p2 = v(&doc.p2, "connection.P2")?;
    let phi = doc.phi.as_ref().map(|r| tensor_of(r, vars, "connection.phi")).transpose()?;
    match doc.preset {
        Some(name) => {
            let id: PresetId = name.parse()?;
            let probes = sample_points(wp, sample_box, PRESET_PROBES, seed)?;
            let params = PresetParams { f1, f2, p, p1, p2, phi };
            let data = preset(id, params, wp.assembled(), &probes)?;
            Ok((data, Some(id)))
        }
        None => {
            // unspecified fields are zero
            let zero = TripathiData::zero(wp.names())?;
            let data = TripathiData::new(
                f1.unwrap_or_else(|| zero.f1.clone()),
                f2.unwrap_or_else(|| zero.f2.clone()),
                p.unwrap_or_else(|| zero.p.clone()),
                p1.unwrap_or_else(|| zero.p1.clone()),
                p2.unwrap_or_else(|| zero.p2.clone()),
                phi.unwrap_or_else(|| zero.phi.clone()),
            )?;
            Ok((data, None))
        }
    }
}

impl Scenario {
    pub fn load(path: impl AsRef<Path>) -> Result<Scenario> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|source| Error::Io { path: path.display().to_string(), source })?;
        Scenario::from_toml(&text)
    }

    pub fn from_toml(text: &str) -> Result<Scenario> {
        let de = toml::Deserializer::parse(text).map_err(|e| Error::ManifestSyntax(e.to_string()))?;
        let doc: ManifestDoc = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let field = if path == "." { "manifest".to_string() } else { path };
            bad(field, e.inner().message())
        })?;

        let config = AuditConfig {
            seed: doc.seed.unwrap_or(AuditConfig::default().seed),
            samples: doc.samples.unwrap_or(AuditConfig::default().samples),
            tolerance: doc.tolerance.unwrap_or(AuditConfig::default().tolerance),
        };
        if config.samples == 0 {
            return Err(bad("samples", "must be at least 1"));
        }
        if !(config.tolerance.is_finite() && config.tolerance >= 0.0) {
            return Err(bad("tolerance", "must be a finite non-negative real"));
        }
        let placement = doc.placement.as_deref().map(str::parse).transpose()?;

        let (base, base_box) = factor(doc.base, "base")?;
        let (fiber, fiber_box) = factor(doc.fiber, "fiber")?;
        let sample_box = SampleBox::new(base_box, fiber_box)?;
        let warp = doc.warp.ok_or_else(|| missing("warp"))?;
        let wp = build_warped(&base, &fiber, &warp.text(), &sample_box).map_err(|e| match e {
            Error::Expr(err) => bad("warp", err),
            other => other,
        })?;
        let conn = doc.connection.ok_or_else(|| missing("connection"))?;
        let (data, preset) = connection(conn, &wp, &sample_box, config.seed)?;
        Ok(Scenario { wp, sample_box, data, preset, placement, checks: doc.checks.unwrap_or_default(), config })
    }

    pub fn setup(&self) -> AuditSetup {
        AuditSetup {
            wp: self.wp.clone(),
            data: self.data.clone(),
            placement: self.placement,
            preset: self.preset,
            sample_box: self.sample_box.clone(),
            config: self.config,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Point;

    const POLAR: &str = r#"
warp = "r"
[base]
coords = ["r"]
metric = ["1"]
box = [[0.5, 3.0]]
[fiber]
coords = ["θ"]
metric = ["1"]
box = [[0.0, 6.28]]
[connection]
preset = "semi_symmetric_metric"
P = ["1", "0"]
"#;

    #[test]
    fn polar_manifest_assembles() {
        let s = Scenario::from_toml(POLAR).unwrap();
        let g = s.wp.assembled().values_at(&Point::of(&[2.0, 1.0])).unwrap();
        assert_eq!(g[(1, 1)], 4.0);
        assert_eq!(s.preset, Some(PresetId::SemiSymmetricMetric));
        assert_eq!(s.config, AuditConfig::default());
    }

    #[test]
    fn missing_warp_names_the_field() {
        let text = POLAR.replace("warp = \"r\"", "");
        match Scenario::from_toml(&text) {
            Err(Error::Manifest { field, .. }) => assert_eq!(field, "warp"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn type_errors_carry_a_path() {
        let text = POLAR.replace("box = [[0.5, 3.0]]", "box = [[0.5, \"x\"]]");
        match Scenario::from_toml(&text) {
            Err(Error::Manifest { field, .. }) => assert!(field.starts_with("base.box"), "{field}"),
            other => panic!("{other:?}"),
        }
        let text = format!("bogus = 1\n{POLAR}");
        assert!(matches!(Scenario::from_toml(&text), Err(Error::Manifest { .. })));
    }

    #[test]
    fn expression_errors_name_the_slot() {
        let text = POLAR.replace("P = [\"1\", \"0\"]", "P = [\"1\", \"q +\"]");
        match Scenario::from_toml(&text) {
            Err(Error::Manifest { field, .. }) => assert_eq!(field, "connection.P[1]"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_errors_are_distinct() {
        assert!(matches!(Scenario::from_toml("warp = "), Err(Error::ManifestSyntax(_))));
    }

    #[test]
    fn full_data_defaults_to_zero() {
        let text = POLAR.replace("preset = \"semi_symmetric_metric\"\n", "").replace("P = [\"1\", \"0\"]", "f2 = 2");
        let s = Scenario::from_toml(&text).unwrap();
        assert_eq!(s.preset, None);
        assert_eq!(s.data.f2.eval(&Point::of(&[1.0, 1.0])).unwrap(), 2.0);
        assert_eq!(s.data.p.value_at(&Point::of(&[1.0, 1.0])).unwrap(), vec![0.0, 0.0]);
    }
}
