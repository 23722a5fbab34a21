//! Christoffel symbols and curvature of the three surfaces of revolution.

use warpcheck::audit::sample_points;
use warpcheck::fixtures;
use warpcheck::geometry::{christoffel_at, riemann_at, LeviCivita};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for fx in fixtures::surfaces()? {
        let m = fx.wp.assembled();
        let p = sample_points(&fx.wp, &fx.sample_box, 1, 1)?.remove(0);
        let gamma = christoffel_at(m, &p)?;
        let r = riemann_at(&LeviCivita::new(m), &p)?;
        let g = m.values_at(&p)?;
        // g(R(∂r,∂θ)∂θ, ∂r) / (g_rr g_θθ)
        let v = r.apply(&[1.0, 0.0], &[0.0, 1.0], &[0.0, 1.0]);
        let k = g[(0, 0)] * v[0] / (g[(0, 0)] * g[(1, 1)]);
        println!(
            "{:<10} at r = {:.3}: Γ^r_θθ = {:+.6}, Γ^θ_rθ = {:+.6}, K = {:+.12}",
            fx.name,
            p.coords()[0],
            gamma[(0, 1, 1)],
            gamma[(1, 0, 1)],
            k
        );
    }
    Ok(())
}
