//! Assemble the round sphere as a warped product and check the Levi-Civita
//! decomposition into horizontal and vertical parts.

use warpcheck::expr::{Point, ScalarExpr};
use warpcheck::geometry::{ChartMetric, VectorField};
use warpcheck::warped::{build_warped, SampleBox, Side};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let base = ChartMetric::diagonal(&["r"], &["1"])?;
    let fiber = ChartMetric::diagonal(&["θ"], &["1"])?;
    let sample_box = SampleBox::new(vec![(0.3, 2.8)], vec![(0.0, 6.28)])?;
    let wp = build_warped(&base, &fiber, "sin(r)", &sample_box)?;

    let p = Point::of(&[std::f64::consts::FRAC_PI_4, 1.0]);
    println!("assembled metric at p: {:?}", wp.assembled().values_at(&p)?);

    let x = VectorField::parse(&["1 + r^2"], &["r"])?;
    let v = VectorField::parse(&["cos(θ)"], &["θ"])?;
    let w = VectorField::coordinate(0, &["θ"])?;
    println!("lift of V: {:?}", wp.lift(Side::Fiber, &v)?.value_at(&p)?);

    let (nor, tan) = wp.split_at(&[1.0, 2.0])?;
    println!("split (1, 2): nor {nor:?}, tan {tan:?}");

    let res = wp.oneill_residuals_at(&x, &x, &v, &w, &p)?;
    println!("decomposition residuals: {res:?}");

    let h = ScalarExpr::parse("cos(r)^3", &["r"])?;
    println!("gradient lift residual: {:e}", wp.grad_lift_check(&h, &p)?);

    // a warping function that changes sign is rejected
    let bad = build_warped(&base, &fiber, "r - 5", &SampleBox::new(vec![(0.0, 1.0)], vec![(0.0, 1.0)])?);
    println!("F = r - 5: {}", bad.unwrap_err());
    Ok(())
}
