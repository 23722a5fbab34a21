//! Numerical audit of the warped-product identities.
//!
//! Ground truth is always the coefficient field of the connection on the
//! assembled chart. Each check contrasts it with a claimed right-hand side at
//! every sample point and over a battery of lifted test fields.

mod catalog;
mod frame;

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub use catalog::{Check, CHECKS};
pub use frame::{Battery, Frame, Lifted};

use crate::error::{Error, Result};
use crate::expr::{Point, ScalarExpr};
use crate::fixtures::Fixture;
use crate::geometry::VectorField;
use crate::random;
use crate::tripathi::{preset, PresetId, TripathiConnection, TripathiData};
use crate::warped::{SampleBox, Side, WarpedProduct};

/// Where `P, P₁, P₂` live.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Placement {
    Horizontal,
    Vertical,
}

impl Placement {
    pub fn name(self) -> &'static str {
        match self {
            Placement::Horizontal => "horizontal",
            Placement::Vertical => "vertical",
        }
    }

    fn side(self) -> Side {
        match self {
            Placement::Horizontal => Side::Base,
            Placement::Vertical => Side::Fiber,
        }
    }
}

impl fmt::Display for Placement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Placement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Placement> {
        match s {
            "horizontal" => Ok(Placement::Horizontal),
            "vertical" => Ok(Placement::Vertical),
            _ => Err(Error::Manifest {
                field: "placement".into(),
                msg: format!("`{s}` is neither `horizontal` nor `vertical`"),
            }),
        }
    }
}

/// Whether a right-hand side is transcribed as printed or re-derived.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    AsPrinted,
    AsDerived,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::AsPrinted => "as-printed",
            Variant::AsDerived => "as-derived",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// When a check is meaningful.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    /// Any data on any warped product.
    Global,
    /// Data confined to one factor, `φ` block-preserving.
    Placement(Placement),
    /// A specific preset in a specific placement.
    Corollary(PresetId, Placement),
}

impl Scope {
    fn applies(self, placement: Option<Placement>, preset: Option<PresetId>) -> bool {
        match self {
            Scope::Global => true,
            Scope::Placement(p) => placement == Some(p),
            Scope::Corollary(id, p) => placement == Some(p) && preset == Some(id),
        }
    }

    fn requirement(self) -> String {
        match self {
            Scope::Global => "nothing".into(),
            Scope::Placement(p) => format!("placement = {p}"),
            Scope::Corollary(id, p) => format!("preset = {id} and placement = {p}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuditConfig {
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig { samples: 100, seed: 42, tolerance: 1e-9 }
    }
}

/// A warped product, a connection on it, and how to sample.
#[derive(Debug, Clone)]
pub struct AuditSetup {
    pub wp: WarpedProduct,
    pub data: TripathiData,
    pub placement: Option<Placement>,
    pub preset: Option<PresetId>,
    pub sample_box: SampleBox,
    pub config: AuditConfig,
}

/// One line of a report.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckRecord {
    pub check: String,
    pub variant: Variant,
    pub samples: usize,
    pub max_residual: f64,
    pub mean_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub argmax_point: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    pub records: Vec<CheckRecord>,
}

impl AuditReport {
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn get(&self, check: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.check == check)
    }
}

pub fn check_by_name(name: &str) -> Option<&'static Check> {
    CHECKS.iter().find(|c| c.name() == name)
}

fn matches(pattern: &glob::Pattern, c: &Check) -> bool {
    pattern.matches(&c.name()) || pattern.matches(&format!("{}.{}", c.id, c.variant))
}

/// Resolves selectors to checks in catalog order. A selector is a check
/// name, a check id without variant, or a `*` glob. With no selectors every
/// applicable check is returned. A selector naming a single inapplicable
/// check is an error; globs silently skip inapplicable checks but must match
/// at least one applicable check.
pub fn select(
    selectors: &[String],
    placement: Option<Placement>,
    preset: Option<PresetId>,
) -> Result<Vec<&'static Check>> {
    if selectors.is_empty() {
        return Ok(CHECKS.iter().filter(|c| c.scope.applies(placement, preset)).collect());
    }
    let mut chosen = vec![false; CHECKS.len()];
    for sel in selectors {
        let sel = sel.trim();
        let is_glob = sel.contains(['*', '?', '[']);
        let hits: Vec<usize> = if is_glob {
            let pat = glob::Pattern::new(sel).map_err(|e| Error::UnknownCheck(format!("{sel}: {e}")))?;
            (0..CHECKS.len()).filter(|&i| matches(&pat, &CHECKS[i])).collect()
        } else {
            (0..CHECKS.len())
                .filter(|&i| {
                    let c = &CHECKS[i];
                    c.name() == sel || c.id == sel || format!("{}.{}", c.id, c.variant) == sel
                })
                .collect()
        };
        if hits.is_empty() {
            return Err(Error::UnknownCheck(sel.to_string()));
        }
        let applicable: Vec<usize> =
            hits.iter().copied().filter(|&i| CHECKS[i].scope.applies(placement, preset)).collect();
        if applicable.is_empty() {
            let c = &CHECKS[hits[0]];
            return Err(Error::NotApplicable {
                check: sel.to_string(),
                reason: format!("{} requires {}", c.name(), c.scope.requirement()),
            });
        }
        for i in applicable {
            chosen[i] = true;
        }
    }
    Ok(CHECKS.iter().zip(chosen).filter(|(_, k)| *k).map(|(c, _)| c).collect())
}

/// `n` points drawn uniformly from the box with a seeded generator. Every
/// point is validated: `F > 0` and the assembled metric positive definite.
pub fn sample_points(wp: &WarpedProduct, sample_box: &SampleBox, n: usize, seed: u64) -> Result<Vec<Point>> {
    if n == 0 {
        return Err(Error::InvalidBox("sample count must be at least 1".into()));
    }
    if sample_box.intervals().len() != wp.dim() {
        return Err(Error::InvalidBox(format!(
            "box has {} intervals, chart has {} coordinates",
            sample_box.intervals().len(),
            wp.dim()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let coords: Vec<f64> = sample_box.intervals().iter().map(|&(lo, hi)| rng.random_range(lo..hi)).collect();
        let p = Point::of(&coords);
        let invalid = |reason: String| Error::InvalidSample { point: coords.clone(), reason };
        let f = wp.warp().eval(&wp.base_point(&p)).map_err(|e| invalid(e.to_string()))?;
        if f <= 0.0 {
            return Err(invalid(format!("warping function is {f}, not positive")));
        }
        wp.assembled().values_at(&p).map_err(|e| invalid(e.to_string()))?;
        out.push(p);
    }
    Ok(out)
}

/// Separates the battery's random stream from the sampling stream.
const BATTERY_STREAM: u64 = 0x5EED_BA77_E27F_1E1D;

/// Coordinate fields of each factor plus one random quadratic field per
/// factor and one over the whole chart.
pub fn default_battery(wp: &WarpedProduct, sample_box: &SampleBox, seed: u64) -> Result<Battery> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ BATTERY_STREAM);
    let factor = |rng: &mut ChaCha8Rng, chart: &crate::geometry::ChartMetric, iv: &[(f64, f64)]| {
        let vars = chart.shared_names();
        let all: Vec<usize> = (0..chart.dim()).collect();
        let mut v: Vec<VectorField> = (0..chart.dim()).map(|k| VectorField::coordinate_shared(k, vars)).collect();
        v.push(random::random_field(rng, vars, iv, 0..chart.dim(), &all));
        v
    };
    let base = factor(&mut rng, wp.base(), sample_box.base());
    let fiber = factor(&mut rng, wp.fiber(), sample_box.fiber());
    let all: Vec<usize> = (0..wp.dim()).collect();
    let mixed = vec![random::random_field(&mut rng, wp.shared_names(), sample_box.intervals(), 0..wp.dim(), &all)];
    let bvars = wp.base().shared_names();
    let ball: Vec<usize> = (0..wp.base_dim()).collect();
    let scalars: Vec<ScalarExpr> =
        vec![wp.warp().clone(), random::random_poly(&mut rng, bvars, sample_box.base(), &ball)];
    Battery::new(wp, base, fiber, mixed, scalars)
}

/// Confirms `P, P₁, P₂` vanish off the placement side and `φ` has zero
/// mixed blocks at every sample point.
fn check_placement(setup: &AuditSetup, conn: &TripathiConnection, points: &[Point], placement: Placement) -> Result<()> {
    let wp = &setup.wp;
    let own = placement.side();
    for p in points {
        let d = conn.data_at(p)?;
        for (name, v) in [("P", &d.p), ("P1", &d.p1), ("P2", &d.p2)] {
            if let Some(k) = (0..wp.dim()).find(|&k| wp.side_of(k) != own && v[k] != 0.0) {
                return Err(Error::Placement(format!(
                    "{name} has {} component {k} = {} at {:?} under {placement} placement",
                    if own == Side::Base { "fiber" } else { "base" },
                    v[k],
                    p.coords()
                )));
            }
        }
        for k in 0..wp.dim() {
            for i in 0..wp.dim() {
                if wp.side_of(k) != wp.side_of(i) && d.phi[(k, i)] != 0.0 {
                    return Err(Error::PhiNotBlockPreserving {
                        row: k,
                        col: i,
                        value: d.phi[(k, i)],
                        point: p.coords().to_vec(),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Per-point residuals for `checks`, in sample order.
pub fn residuals(setup: &AuditSetup, checks: &[&Check]) -> Result<(Vec<Point>, Vec<Vec<f64>>)> {
    let AuditConfig { samples, seed, .. } = setup.config;
    let points = sample_points(&setup.wp, &setup.sample_box, samples, seed)?;
    let conn = TripathiConnection::new(setup.wp.assembled(), setup.data.clone())?;
    for c in checks {
        if !c.scope.applies(setup.placement, setup.preset) {
            return Err(Error::NotApplicable { check: c.name(), reason: format!("requires {}", c.scope.requirement()) });
        }
    }
    if let Some(pl) = setup.placement {
        if checks.iter().any(|c| c.scope != Scope::Global) {
            check_placement(setup, &conn, &points, pl)?;
        }
    }
    let battery = default_battery(&setup.wp, &setup.sample_box, seed)?;
    let rows: Vec<Result<Vec<f64>>> = points
        .par_iter()
        .map(|p| {
            let f = Frame::new(&setup.wp, &conn, &battery, p.clone())
                .map_err(|e| e.context(format!("at sample point {:?}", p.coords())))?;
            Ok(checks.iter().map(|c| c.residual(&f)).collect())
        })
        .collect();
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    Ok((points, rows))
}

/// Runs `checks` and reduces the per-point residuals in sample order, so
/// the report does not depend on thread scheduling.
pub fn run_audit(setup: &AuditSetup, checks: &[&Check]) -> Result<AuditReport> {
    let (points, rows) = residuals(setup, checks)?;
    let tol = setup.config.tolerance;
    let records = checks
        .iter()
        .enumerate()
        .map(|(ci, c)| {
            let mut max = 0.0f64;
            let mut arg = 0usize;
            let mut sum = 0.0;
            for (pi, row) in rows.iter().enumerate() {
                let r = row[ci];
                sum += r;
                if r.is_nan() && !max.is_nan() || r > max {
                    max = r;
                    arg = pi;
                }
            }
            CheckRecord {
                check: c.name(),
                variant: c.variant,
                samples: points.len(),
                max_residual: max,
                mean_residual: sum / points.len() as f64,
                tolerance: tol,
                pass: max <= tol,
                argmax_point: points[arg].coords().to_vec(),
            }
        })
        .collect();
    Ok(AuditReport { records })
}

/// Checks the special-case suite consists of: the matching corollary items,
/// or for Levi-Civita the unmodified decomposition and every placement item.
pub fn suite_checks(id: PresetId, placement: Placement) -> Vec<&'static Check> {
    CHECKS
        .iter()
        .filter(|c| match (id, c.scope) {
            (PresetId::LeviCivita, Scope::Global) => c.id.starts_with("lemma") || c.id.starts_with("prop22"),
            (PresetId::LeviCivita, Scope::Placement(p)) => p == placement,
            (_, Scope::Corollary(cid, p)) => cid == id && p == placement,
            _ => false,
        })
        .collect()
}

/// Instantiates a preset's free parameters randomly on the requested side of
/// `fixture` and runs its suite.
pub fn corollary_suite(id: PresetId, placement: Placement, fixture: &Fixture, config: AuditConfig) -> Result<AuditReport> {
    let setup = corollary_setup(id, placement, fixture, config)?;
    run_audit(&setup, &suite_checks(id, placement))
}

pub fn corollary_setup(id: PresetId, placement: Placement, fixture: &Fixture, config: AuditConfig) -> Result<AuditSetup> {
    let wp = &fixture.wp;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(id as u64 * 7919 + placement as u64));
    let params = random::random_preset_params(&mut rng, wp, &fixture.sample_box, id, placement);
    let probes = sample_points(wp, &fixture.sample_box, 8, config.seed)?;
    let data = preset(id, params, wp.assembled(), &probes)?;
    Ok(AuditSetup {
        wp: wp.clone(),
        data,
        placement: Some(placement),
        preset: Some(id),
        sample_box: fixture.sample_box.clone(),
        config,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn random_setup(fixture: &Fixture, placement: Option<Placement>, seed: u64) -> AuditSetup {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let data = random::random_data(&mut rng, &fixture.wp, &fixture.sample_box, placement).unwrap();
        AuditSetup {
            wp: fixture.wp.clone(),
            data,
            placement,
            preset: None,
            sample_box: fixture.sample_box.clone(),
            config: AuditConfig { samples: 20, seed, tolerance: 1e-9 },
        }
    }

    fn show(r: &AuditReport) -> String {
        r.records.iter().map(|c| format!("{} {:e}\n", c.check, c.max_residual)).collect()
    }

    #[test]
    fn theorem_checks_pass_on_random_data() {
        for fx in [fixtures::polar().unwrap(), fixtures::product4().unwrap()] {
            let setup = random_setup(&fx, None, 3);
            let checks = select(&["thm1.*".into()], None, None).unwrap();
            let r = run_audit(&setup, &checks).unwrap();
            assert!(r.all_pass(), "{}", show(&r));
        }
    }

    #[test]
    fn placement_items_on_product4() {
        let fx = fixtures::product4().unwrap();
        for pl in [Placement::Horizontal, Placement::Vertical] {
            let setup = random_setup(&fx, Some(pl), 5);
            let checks = select(&[], Some(pl), None).unwrap();
            let r = run_audit(&setup, &checks).unwrap();
            for rec in &r.records {
                let expect = rec.variant == Variant::AsDerived || !check_by_name(&rec.check).unwrap().paired;
                if expect {
                    assert!(rec.pass, "{pl}: {}", show(&r));
                }
            }
        }
    }

    #[test]
    fn corollary_suites_pass_as_derived() {
        let fx = fixtures::product4().unwrap();
        for id in PresetId::ALL {
            for pl in [Placement::Horizontal, Placement::Vertical] {
                let cfg = AuditConfig { samples: 10, ..Default::default() };
                let r = corollary_suite(id, pl, &fx, cfg).unwrap();
                for rec in &r.records {
                    if rec.variant == Variant::AsDerived || !check_by_name(&rec.check).unwrap().paired {
                        assert!(rec.pass, "{id} {pl}: {}", show(&r));
                    }
                }
            }
        }
    }

    #[test]
    fn selection_rules() {
        assert!(matches!(select(&["nope".into()], None, None), Err(Error::UnknownCheck(_))));
        assert!(matches!(select(&["prop31.2".into()], None, None), Err(Error::NotApplicable { .. })));
        let both = select(&["prop31.3".into()], Some(Placement::Horizontal), None).unwrap();
        assert_eq!(both.len(), 2);
        let all = select(&[], Some(Placement::Horizontal), None).unwrap();
        assert!(all.iter().all(|c| !c.id.starts_with("prop32") && !c.id.starts_with("cor")));
    }

    #[test]
    fn sampling_rejects_nonpositive_warp() {
        let fx = fixtures::polar().unwrap();
        let bad = SampleBox::new(vec![(-1.0, 0.0)], vec![(0.0, 1.0)]).unwrap();
        assert!(matches!(sample_points(&fx.wp, &bad, 5, 1), Err(Error::InvalidSample { .. })));
        let a = sample_points(&fx.wp, &fx.sample_box, 5, 9).unwrap();
        let b = sample_points(&fx.wp, &fx.sample_box, 5, 9).unwrap();
        assert_eq!(a, b);
    }
}
