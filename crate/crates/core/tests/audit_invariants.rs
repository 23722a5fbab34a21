use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use warpcheck::audit::{
    check_by_name, corollary_suite, default_battery, run_audit, sample_points, select, AuditConfig, AuditSetup, Frame,
    Placement, Variant,
};
use warpcheck::fixtures::{self, Fixture};
use warpcheck::geometry::cov_deriv_at;
use warpcheck::linalg::max_norm;
use warpcheck::random;
use warpcheck::tripathi::{PresetId, TripathiConnection};

fn all_fixtures() -> Vec<Fixture> {
    fixtures::NAMES.iter().map(|n| fixtures::by_name(n).unwrap().unwrap()).collect()
}

fn setup(fx: &Fixture, placement: Option<Placement>, seed: u64, samples: usize) -> AuditSetup {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    AuditSetup {
        wp: fx.wp.clone(),
        data: random::random_data(&mut rng, &fx.wp, &fx.sample_box, placement).unwrap(),
        placement,
        preset: None,
        sample_box: fx.sample_box.clone(),
        config: AuditConfig { samples, seed, tolerance: 1e-9 },
    }
}

fn frames<'a>(s: &'a AuditSetup, conn: &TripathiConnection) -> Vec<Frame<'a>> {
    let battery = default_battery(&s.wp, &s.sample_box, s.config.seed).unwrap();
    sample_points(&s.wp, &s.sample_box, s.config.samples, s.config.seed)
        .unwrap()
        .into_iter()
        .map(|p| Frame::new(&s.wp, conn, &battery, p).unwrap())
        .collect()
}

#[test]
fn projections_reassemble_exactly() {
    for fx in all_fixtures() {
        let s = setup(&fx, None, 1, 10);
        let conn = TripathiConnection::new(s.wp.assembled(), s.data.clone()).unwrap();
        for f in frames(&s, &conn) {
            for x in &f.all {
                for y in &f.all {
                    let lhs = f.nab(x, y);
                    let (nor, tan) = (f.nor(&lhs), f.tan(&lhs));
                    let back: Vec<f64> = nor.iter().zip(&tan).map(|(a, b)| a + b).collect();
                    assert_eq!(back, lhs);
                    assert_eq!(f.gm(&nor, &tan), 0.0);
                }
            }
        }
    }
}

#[test]
fn placed_one_forms_vanish_on_the_other_factor() {
    for fx in all_fixtures() {
        for (pl, seed) in [(Placement::Horizontal, 2), (Placement::Vertical, 3)] {
            let s = setup(&fx, Some(pl), seed, 20);
            let conn = TripathiConnection::new(s.wp.assembled(), s.data.clone()).unwrap();
            for f in frames(&s, &conn) {
                let other = if pl == Placement::Horizontal { &f.vs } else { &f.xs };
                for v in other {
                    assert_eq!(f.u(&v.total.value), 0.0, "{} {pl}", fx.name);
                    assert_eq!(f.u1(&v.total.value), 0.0, "{} {pl}", fx.name);
                }
            }
        }
    }
}

/// The audited left-hand side agrees with the operator-form evaluation of
/// the connection, which goes through the Koszul formula instead of the
/// coefficient array.
#[test]
fn left_hand_sides_agree_across_constructions() {
    for fx in all_fixtures() {
        let s = setup(&fx, None, 4, 10);
        let conn = TripathiConnection::new(s.wp.assembled(), s.data.clone()).unwrap();
        let battery = default_battery(&s.wp, &s.sample_box, 4).unwrap();
        let mut fields = battery.base_lifts.clone();
        fields.extend(battery.fiber_lifts.iter().cloned());
        fields.extend(battery.mixed.iter().cloned());
        for p in sample_points(&s.wp, &s.sample_box, 10, 4).unwrap() {
            for x in &fields {
                for y in &fields {
                    let a = cov_deriv_at(&conn, x, y, &p).unwrap();
                    let b = conn.operator_form_at(x, y, &p).unwrap();
                    let gap = max_norm(&a.iter().zip(&b).map(|(u, v)| u - v).collect::<Vec<_>>());
                    assert!(gap <= 1e-11, "{}: {gap:e}", fx.name);
                }
            }
        }
    }
}

/// Shrinking the box toward its centre should not make residuals of checks
/// that hold grow by more than a factor of ten. Residuals at rounding level
/// are compared against a floor instead of their exact value.
#[test]
fn shrinking_the_box_does_not_inflate_residuals() {
    const FLOOR: f64 = 1e-12;
    for fx in all_fixtures() {
        for pl in [Placement::Horizontal, Placement::Vertical] {
            let wide = setup(&fx, Some(pl), 6, 30);
            let mut narrow = wide.clone();
            narrow.sample_box = wide.sample_box.shrunk(0.25);
            let checks: Vec<_> = select(&[], Some(pl), None)
                .unwrap()
                .into_iter()
                .filter(|c| !(c.paired && c.variant == Variant::AsPrinted))
                .collect();
            let a = run_audit(&wide, &checks).unwrap();
            let b = run_audit(&narrow, &checks).unwrap();
            for (ra, rb) in a.records.iter().zip(&b.records) {
                assert!(
                    rb.max_residual <= 10.0 * ra.max_residual.max(FLOOR),
                    "{} {pl} {}: {:e} -> {:e}",
                    fx.name,
                    ra.check,
                    ra.max_residual,
                    rb.max_residual
                );
            }
        }
    }
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let fx = fixtures::product4().unwrap();
    let s = setup(&fx, Some(Placement::Vertical), 8, 40);
    let checks = select(&[], Some(Placement::Vertical), None).unwrap();
    let parallel = run_audit(&s, &checks).unwrap();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let serial = pool.install(|| run_audit(&s, &checks).unwrap());
    assert_eq!(parallel, serial);
    assert_eq!(parallel, run_audit(&s, &checks).unwrap());
}

#[test]
fn printed_normal_item_fails_only_when_f2_and_p2_are_live() {
    let fx = fixtures::polar().unwrap();
    let mut s = setup(&fx, Some(Placement::Horizontal), 9, 20);
    let printed = check_by_name("prop31.3.as-printed").unwrap();
    assert!(!run_audit(&s, &[printed]).unwrap().all_pass());
    let zero = warpcheck::expr::ScalarExpr::constant(0.0, fx.wp.names()).unwrap();
    s.data.f2 = zero;
    assert!(run_audit(&s, &[printed]).unwrap().all_pass());
}

#[test]
fn levi_civita_suite_degenerates_to_the_unmodified_decomposition() {
    for fx in all_fixtures() {
        for pl in [Placement::Horizontal, Placement::Vertical] {
            let r = corollary_suite(PresetId::LeviCivita, pl, &fx, AuditConfig { samples: 20, ..Default::default() })
                .unwrap();
            assert!(r.records.iter().any(|c| c.check.starts_with("prop22")));
            assert!(r.all_pass(), "{} {pl}", fx.name);
        }
    }
}

#[test]
fn placement_violations_are_reported() {
    let fx = fixtures::product4().unwrap();
    let mut s = setup(&fx, None, 10, 5);
    s.placement = Some(Placement::Horizontal);
    let checks = select(&["prop31.1".into()], Some(Placement::Horizontal), None).unwrap();
    let err = run_audit(&s, &checks).unwrap_err();
    assert!(
        matches!(err, warpcheck::error::Error::Placement(_) | warpcheck::error::Error::PhiNotBlockPreserving { .. }),
        "{err:?}"
    );
}
