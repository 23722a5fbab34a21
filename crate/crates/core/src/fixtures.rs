//! Named warped products with sampling boxes that keep away from their
//! coordinate singularities.

use std::f64::consts::PI;

use crate::error::Result;
use crate::geometry::ChartMetric;
use crate::warped::{build_warped, SampleBox, WarpedProduct};

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub wp: WarpedProduct,
    pub sample_box: SampleBox,
}

fn two_d(name: &'static str, warp: &str, r: (f64, f64)) -> Result<Fixture> {
    let base = ChartMetric::diagonal(&["r"], &["1"])?;
    let fiber = ChartMetric::diagonal(&["θ"], &["1"])?;
    let sample_box = SampleBox::new(vec![r], vec![(0.0, 6.28)])?;
    Ok(Fixture { name, wp: build_warped(&base, &fiber, warp, &sample_box)?, sample_box })
}

/// The Euclidean plane in polar form: `dr² + r²dθ²`.
pub fn polar() -> Result<Fixture> {
    two_d("polar", "r", (0.5, 3.0))
}

/// The hyperbolic plane as `dr² + e^{2r}dθ²`.
pub fn hyperbolic() -> Result<Fixture> {
    two_d("hyperbolic", "exp(r)", (-1.0, 1.5))
}

/// The round unit sphere as `dr² + sin²r dθ²`.
pub fn sphere() -> Result<Fixture> {
    two_d("sphere", "sin(r)", (0.3, PI - 0.3))
}

/// A four-dimensional product: a non-diagonal base metric in `(s, z)` and a
/// round 2-sphere fiber in `(a, b)`, warped by `exp(s/2) + z²/4`. Both
/// blocks are two-dimensional, so block-preserving `φ` can have skew parts.
pub fn product4() -> Result<Fixture> {
    let base = ChartMetric::new(&["s", "z"], &[vec!["2 + sin(z)", "0.3*s"], vec!["0.3*s", "1.5"]])?;
    let fiber = ChartMetric::diagonal(&["a", "b"], &["1", "sin(a)^2"])?;
    let sample_box = SampleBox::new(vec![(-1.0, 1.0), (-1.0, 1.0)], vec![(0.4, PI - 0.4), (0.0, 6.28)])?;
    let wp = build_warped(&base, &fiber, "exp(s/2) + z^2/4", &sample_box)?;
    Ok(Fixture { name: "product4", wp, sample_box })
}

/// The three surfaces of revolution.
pub fn surfaces() -> Result<Vec<Fixture>> {
    Ok(vec![polar()?, hyperbolic()?, sphere()?])
}

/// Every fixture, by name.
pub fn by_name(name: &str) -> Option<Result<Fixture>> {
    match name {
        "polar" => Some(polar()),
        "hyperbolic" => Some(hyperbolic()),
        "sphere" => Some(sphere()),
        "product4" => Some(product4()),
        _ => None,
    }
}

pub const NAMES: [&str; 4] = ["polar", "hyperbolic", "sphere", "product4"];
