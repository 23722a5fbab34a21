//! The special connections on the polar plane: coefficients, torsion and
//! non-metricity, compared against their closed forms.

use warpcheck::expr::Point;
use warpcheck::geometry::{nonmetricity_at, torsion_at, ChartMetric, Connection, VectorField};
use warpcheck::tripathi::{preset, PresetId, PresetParams, TripathiConnection};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let vars = ["r", "θ"];
    let polar = ChartMetric::diagonal(&vars, &["1", "r^2"])?;
    let p = Point::of(&[2.0, 1.0]);
    let dr = VectorField::coordinate(0, &vars)?;
    let dth = VectorField::coordinate(1, &vars)?;

    for id in PresetId::ALL {
        let params = PresetParams {
            p: (!id.free_params().is_empty()).then(|| dr.clone()),
            ..Default::default()
        };
        let params = match id {
            PresetId::QuarterSymmetricMetric => PresetParams {
                phi: Some(warpcheck::geometry::Tensor11Field::identity(&vars)?),
                ..params
            },
            // skew under dr² + r²dθ², so φ₁ = 0
            PresetId::QuarterSymmetricNonMetric => PresetParams {
                phi: Some(warpcheck::geometry::Tensor11Field::parse(&[vec!["0", "-r"], vec!["1/r", "0"]], &vars)?),
                p2: Some(dth.clone()),
                f2: Some(warpcheck::expr::ScalarExpr::parse("0.5", &vars)?),
                ..params
            },
            _ => params,
        };
        let data = preset(id, params, &polar, &[p.clone()])?;
        let conn = TripathiConnection::new(&polar, data)?;
        let c = conn.coefficients_at(&p)?;
        let t = torsion_at(&conn, &dr, &dth, &p)?;
        let q = nonmetricity_at(&conn, &polar, &dth, &dr, &dth, &p)?;
        println!(
            "{:<30} Γ̃^r_θθ = {:+.3}  T(∂r,∂θ) = ({:+.3}, {:+.3})  (∇_∂θ g)(∂r,∂θ) = {:+.3}",
            id.name(),
            c[(0, 1, 1)],
            t[0],
            t[1],
            q
        );
    }
    Ok(())
}
