//! Seeded random scalar fields, vector fields and connection data.
//!
//! Everything is built as expression text and parsed, so a random field is
//! an ordinary [`ScalarExpr`] that prints and re-parses like any other.
//! Polynomials are written in box-normalized coordinates `(x − mid)/half`,
//! which keeps every value of order one on the sampling box and makes an
//! absolute residual tolerance meaningful.

use std::ops::Range;
use std::sync::Arc;

use rand::Rng;

use crate::audit::Placement;
use crate::error::Result;
use crate::expr::ScalarExpr;
use crate::geometry::{Tensor11Field, VectorField};
use crate::tripathi::{PresetId, PresetParams, TripathiData};
use crate::warped::{SampleBox, WarpedProduct};

fn coef<R: Rng>(rng: &mut R, amp: f64) -> f64 {
    rng.random_range(-amp..amp)
}

/// `c + Σ aᵢtᵢ + Σ bᵢtᵢ²` with `tᵢ` the normalized coordinate at `active`.
fn poly_text<R: Rng>(rng: &mut R, names: &[String], intervals: &[(f64, f64)], active: &[usize]) -> String {
    let mut s = format!("{:?}", coef(rng, 1.0));
    for &i in active {
        let (lo, hi) = intervals[i];
        let t = format!("(({}) - ({:?}))/({:?})", names[i], 0.5 * (lo + hi), 0.5 * (hi - lo));
        s.push_str(&format!(" + ({:?})*{t} + ({:?})*({t})^2", coef(rng, 1.0), coef(rng, 0.5)));
    }
    s
}

/// Random quadratic polynomial in the coordinates at `active`. `intervals`
/// is aligned with `vars`.
pub fn random_poly<R: Rng>(
    rng: &mut R,
    vars: &Arc<[String]>,
    intervals: &[(f64, f64)],
    active: &[usize],
) -> ScalarExpr {
    ScalarExpr::parse_shared(&poly_text(rng, vars, intervals, active), vars).expect("generated polynomial parses")
}

/// Random field whose components outside `comps` are literal zeros.
pub fn random_field<R: Rng>(
    rng: &mut R,
    vars: &Arc<[String]>,
    intervals: &[(f64, f64)],
    comps: Range<usize>,
    active: &[usize],
) -> VectorField {
    let texts: Vec<String> = (0..vars.len())
        .map(|k| if comps.contains(&k) { poly_text(rng, vars, intervals, active) } else { "0".into() })
        .collect();
    VectorField::parse_shared(&texts, vars).expect("generated field parses")
}

fn all(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// Component range a placement allows.
pub fn placed_range(wp: &WarpedProduct, placement: Option<Placement>) -> Range<usize> {
    match placement {
        None => 0..wp.dim(),
        Some(Placement::Horizontal) => 0..wp.base_dim(),
        Some(Placement::Vertical) => wp.base_dim()..wp.dim(),
    }
}

/// Random `φ`. With `block_preserving` the mixed base/fiber entries are
/// literal zeros.
pub fn random_phi<R: Rng>(rng: &mut R, wp: &WarpedProduct, sample_box: &SampleBox, block_preserving: bool) -> Tensor11Field {
    let vars = wp.shared_names();
    let n = wp.dim();
    let rows: Vec<Vec<String>> = (0..n)
        .map(|k| {
            (0..n)
                .map(|i| {
                    if block_preserving && wp.side_of(k) != wp.side_of(i) {
                        "0".to_string()
                    } else {
                        poly_text(rng, vars, sample_box.intervals(), &all(n))
                    }
                })
                .collect()
        })
        .collect();
    Tensor11Field::parse_shared(&rows, vars).expect("generated tensor parses")
}

/// Block-preserving `φ` whose `g`-symmetric part vanishes. A two-dimensional
/// block with metric entries `a, b, d` gets `c·[[−b, −d], [a, b]]` with
/// `c = s/(ad − b²)`, so that `g(φ·,·)` is `s` times the standard skew form.
/// Blocks of any other size are zero.
pub fn random_skew_phi<R: Rng>(rng: &mut R, wp: &WarpedProduct, sample_box: &SampleBox) -> Tensor11Field {
    let vars = wp.shared_names();
    let n = wp.dim();
    let zero = ScalarExpr::constant_shared(0.0, vars);
    let mut rows = vec![vec![zero; n]; n];
    for (o, len) in [(0, wp.base_dim()), (wp.base_dim(), wp.fiber_dim())] {
        if len != 2 {
            continue;
        }
        let g = wp.assembled();
        let (a, b, d) = (g.component(o, o), g.component(o, o + 1), g.component(o + 1, o + 1));
        let s = random_poly(rng, vars, sample_box.intervals(), &all(n));
        let c = &s / &(&(a * d) - &(b * b));
        rows[o][o] = -&(b * &c);
        rows[o][o + 1] = -&(d * &c);
        rows[o + 1][o] = a * &c;
        rows[o + 1][o + 1] = b * &c;
    }
    Tensor11Field::from_exprs(rows).expect("generated tensor has chart shape")
}

/// Fully random connection data; `placement` confines `P, P₁, P₂` to one
/// factor and makes `φ` block-preserving.
pub fn random_data<R: Rng>(
    rng: &mut R,
    wp: &WarpedProduct,
    sample_box: &SampleBox,
    placement: Option<Placement>,
) -> Result<TripathiData> {
    let vars = wp.shared_names();
    let iv = sample_box.intervals();
    let n = wp.dim();
    let range = placed_range(wp, placement);
    TripathiData::new(
        random_poly(rng, vars, iv, &all(n)),
        random_poly(rng, vars, iv, &all(n)),
        random_field(rng, vars, iv, range.clone(), &all(n)),
        random_field(rng, vars, iv, range.clone(), &all(n)),
        random_field(rng, vars, iv, range, &all(n)),
        random_phi(rng, wp, sample_box, placement.is_some()),
    )
}

/// Random values for the parameters a preset leaves free.
pub fn random_preset_params<R: Rng>(
    rng: &mut R,
    wp: &WarpedProduct,
    sample_box: &SampleBox,
    id: PresetId,
    placement: Placement,
) -> PresetParams {
    let vars = wp.shared_names();
    let iv = sample_box.intervals();
    let n = wp.dim();
    let range = placed_range(wp, Some(placement));
    let mut out = PresetParams::default();
    let free = id.free_params();
    if free.contains(&"P") {
        out.p = Some(random_field(rng, vars, iv, range.clone(), &all(n)));
    }
    if free.contains(&"P2") {
        out.p2 = Some(random_field(rng, vars, iv, range, &all(n)));
    }
    if free.contains(&"f2") {
        // bounded away from zero on the box
        let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let (lo, hi) = iv[0];
        let t = format!("(({}) - ({:?}))/({:?})", vars[0], 0.5 * (lo + hi), 0.5 * (hi - lo));
        let text = format!("{:?} + ({:?})*{t}", sign * rng.random_range(0.5..1.5), coef(rng, 0.2));
        out.f2 = Some(ScalarExpr::parse_shared(&text, vars).expect("generated scalar parses"));
    }
    if free.contains(&"phi") {
        out.phi = Some(match id {
            PresetId::QuarterSymmetricNonMetric => random_skew_phi(rng, wp, sample_box),
            _ => random_phi(rng, wp, sample_box, true),
        });
    }
    out
}
