//! Connection axioms and curvature identities on random data over the
//! fixture manifolds.

use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use warpcheck::audit::sample_points;
use warpcheck::expr::{Point, ScalarExpr};
use warpcheck::fixtures::{self, Fixture};
use warpcheck::geometry::{
    christoffel_at, cov_deriv_at, koszul_at, lie_bracket_at, riemann_at, sym_skew_split_at, torsion_at, Connection,
    LeviCivita, VectorField,
};
use warpcheck::linalg::max_norm;
use warpcheck::random;
use warpcheck::tripathi::TripathiConnection;

struct Case {
    fx: Fixture,
    conn: TripathiConnection,
    fields: Vec<VectorField>,
    scalar: ScalarExpr,
    point: Point,
}

fn case(fixture: usize, seed: u64) -> Case {
    let fx = fixtures::by_name(fixtures::NAMES[fixture % fixtures::NAMES.len()]).unwrap().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let wp = &fx.wp;
    let data = random::random_data(&mut rng, wp, &fx.sample_box, None).unwrap();
    let conn = TripathiConnection::new(wp.assembled(), data).unwrap();
    let vars: Arc<[String]> = wp.names().to_vec().into();
    let all: Vec<usize> = (0..wp.dim()).collect();
    let iv = fx.sample_box.intervals();
    let fields = (0..3).map(|_| random::random_field(&mut rng, &vars, iv, 0..wp.dim(), &all)).collect();
    let scalar = random::random_poly(&mut rng, &vars, iv, &all);
    let point = sample_points(wp, &fx.sample_box, 1, seed).unwrap().remove(0);
    Case { fx, conn, fields, scalar, point }
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    let scale = max_norm(a).max(max_norm(b)).max(1.0);
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol * scale)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn leibniz_rule(fixture in 0usize..4, seed in any::<u64>()) {
        let c = case(fixture, seed);
        let (x, y, h, p) = (&c.fields[0], &c.fields[1], &c.scalar, &c.point);
        let lhs = cov_deriv_at(&c.conn, x, &y.scaled_by(h), p).unwrap();
        let hj = h.eval_jet(p, 1).unwrap();
        let xh: f64 = hj.grad().iter().zip(x.value_at(p).unwrap()).map(|(a, b)| a * b).sum();
        let ny = cov_deriv_at(&c.conn, x, y, p).unwrap();
        let yv = y.value_at(p).unwrap();
        let rhs: Vec<f64> = (0..yv.len()).map(|k| xh * yv[k] + hj.value() * ny[k]).collect();
        prop_assert!(close(&lhs, &rhs, 1e-10), "{lhs:?} vs {rhs:?}");
    }

    #[test]
    fn tensorial_in_direction(fixture in 0usize..4, seed in any::<u64>()) {
        let c = case(fixture, seed);
        let (x, y, h, p) = (&c.fields[0], &c.fields[1], &c.scalar, &c.point);
        let lhs = cov_deriv_at(&c.conn, &x.scaled_by(h), y, p).unwrap();
        let hv = h.eval(p).unwrap();
        let rhs: Vec<f64> = cov_deriv_at(&c.conn, x, y, p).unwrap().iter().map(|v| hv * v).collect();
        prop_assert!(close(&lhs, &rhs, 1e-10));
    }

    #[test]
    fn torsion_is_antisymmetric(fixture in 0usize..4, seed in any::<u64>()) {
        let c = case(fixture, seed);
        let (x, y, p) = (&c.fields[0], &c.fields[1], &c.point);
        prop_assert!(max_norm(&torsion_at(&c.conn, x, x, p).unwrap()) <= 1e-10);
        let a = torsion_at(&c.conn, x, y, p).unwrap();
        let b: Vec<f64> = torsion_at(&c.conn, y, x, p).unwrap().iter().map(|v| -v).collect();
        prop_assert!(close(&a, &b, 1e-12));
    }

    #[test]
    fn coefficients_match_operator_form(fixture in 0usize..4, seed in any::<u64>()) {
        let c = case(fixture, seed);
        let (x, y, p) = (&c.fields[0], &c.fields[1], &c.point);
        let a = cov_deriv_at(&c.conn, x, y, p).unwrap();
        let b = c.conn.operator_form_at(x, y, p).unwrap();
        prop_assert!(close(&a, &b, 1e-10), "{a:?} vs {b:?}");
    }

    #[test]
    fn koszul_agrees_with_christoffels(fixture in 0usize..4, seed in any::<u64>()) {
        let c = case(fixture, seed);
        let m = c.fx.wp.assembled();
        let (x, y, p) = (&c.fields[0], &c.fields[1], &c.point);
        let a = cov_deriv_at(&LeviCivita::new(m), x, y, p).unwrap();
        let b = koszul_at(m, x, y, p).unwrap();
        prop_assert!(close(&a, &b, 1e-9));
    }

    #[test]
    fn christoffels_are_exactly_symmetric(fixture in 0usize..4, seed in any::<u64>()) {
        let c = case(fixture, seed);
        let g = christoffel_at(c.fx.wp.assembled(), &c.point).unwrap();
        let n = c.fx.wp.dim();
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    prop_assert_eq!(g[(k, i, j)].to_bits(), g[(k, j, i)].to_bits());
                }
            }
        }
    }

    #[test]
    fn first_bianchi_for_levi_civita(fixture in 0usize..4, seed in any::<u64>()) {
        let c = case(fixture, seed);
        let r = riemann_at(&LeviCivita::new(c.fx.wp.assembled()), &c.point).unwrap();
        let v: Vec<Vec<f64>> = c.fields.iter().map(|f| f.value_at(&c.point).unwrap()).collect();
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let a = r.apply(x, y, z);
        let b = r.apply(y, z, x);
        let d = r.apply(z, x, y);
        let sum: Vec<f64> = (0..a.len()).map(|k| a[k] + b[k] + d[k]).collect();
        let scale = max_norm(&a).max(max_norm(&b)).max(max_norm(&d)).max(1.0);
        prop_assert!(max_norm(&sum) <= 1e-8 * scale, "{sum:?}");
    }

    #[test]
    fn curvature_is_antisymmetric(fixture in 0usize..4, seed in any::<u64>()) {
        let c = case(fixture, seed);
        let r = riemann_at(&c.conn, &c.point).unwrap();
        let v: Vec<Vec<f64>> = c.fields.iter().map(|f| f.value_at(&c.point).unwrap()).collect();
        let a = r.apply(&v[0], &v[1], &v[2]);
        let b: Vec<f64> = r.apply(&v[1], &v[0], &v[2]).iter().map(|x| -x).collect();
        prop_assert!(close(&a, &b, 1e-12));
    }

    #[test]
    fn phi_split_invariants(fixture in 0usize..4, seed in any::<u64>()) {
        let c = case(fixture, seed);
        let m = c.fx.wp.assembled();
        let phi = &c.conn.data().phi;
        let (phi1, phi2) = sym_skew_split_at(m, phi, &c.point).unwrap();
        let g = m.values_at(&c.point).unwrap();
        let full = phi.value_at(&c.point).unwrap();
        let n = m.dim();
        // Φᵢⱼ = g_kj φᵏᵢ
        let lower = |a: &warpcheck::linalg::Matrix, i: usize, j: usize| (0..n).map(|k| g[(k, j)] * a[(k, i)]).sum::<f64>();
        for i in 0..n {
            for j in 0..n {
                prop_assert!((lower(&phi1, i, j) - lower(&phi1, j, i)).abs() <= 1e-12 * (1.0 + lower(&phi1, i, j).abs()));
                prop_assert!((lower(&phi2, i, j) + lower(&phi2, j, i)).abs() <= 1e-12 * (1.0 + lower(&phi2, i, j).abs()));
                prop_assert!((phi1[(i, j)] + phi2[(i, j)] - full[(i, j)]).abs() <= 1e-12 * (1.0 + full[(i, j)].abs()));
            }
        }
    }
}

/// Jet-valued coefficient assembly against central differences of the plain
/// coefficients; this is the derivative path curvature relies on.
#[test]
fn coefficient_jets_match_finite_differences() {
    const H: f64 = 1e-5;
    for fixture in 0..4 {
        let c = case(fixture, 99 + fixture as u64);
        let n = c.fx.wp.dim();
        let p = &c.point;
        let jets = c.conn.coefficient_jets_at(p).unwrap();
        for axis in 0..n {
            let at = |d: f64| {
                let mut q = p.coords().to_vec();
                q[axis] += d;
                c.conn.coefficients_at(&Point::of(&q)).unwrap()
            };
            let (plus, minus) = (at(H), at(-H));
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        let fd = (plus[(k, i, j)] - minus[(k, i, j)]) / (2.0 * H);
                        let ad = jets[(k, i, j)].grad()[axis];
                        assert!((ad - fd).abs() <= 1e-6 * ad.abs().max(1.0), "{} Γ[{k},{i},{j}] d{axis}: {ad} vs {fd}", c.fx.name);
                    }
                }
            }
        }
    }
}

#[test]
fn brackets_are_antisymmetric() {
    let c = case(3, 5);
    let p = &c.point;
    let (x, y) = (&c.fields[0], &c.fields[1]);
    let a = lie_bracket_at(x, y, p).unwrap();
    let b: Vec<f64> = lie_bracket_at(y, x, p).unwrap().iter().map(|v| -v).collect();
    assert!(close(&a, &b, 1e-14));
}
