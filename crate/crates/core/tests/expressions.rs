use proptest::prelude::*;

use warpcheck::expr::{Point, ScalarExpr};

const VARS: [&str; 2] = ["x", "y"];

/// Expression text over `x, y` that stays finite near the sampled points.
fn expr_text() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        Just("x".to_string()),
        Just("y".to_string()),
        Just("pi".to_string()),
        (-5.0f64..5.0).prop_map(|c| format!("{c:?}")),
        (1u32..4).prop_map(|k| k.to_string()),
    ];
    leaf.prop_recursive(4, 32, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) + ({b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) - ({b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})*({b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})/(2 + sin({b}))")),
            (inner.clone(), 0u32..4).prop_map(|(a, k)| format!("({a})^{k}")),
            inner.clone().prop_map(|a| format!("-({a})")),
            inner.clone().prop_map(|a| format!("cos({a})")),
            inner.clone().prop_map(|a| format!("exp(sin({a}))")),
            inner.clone().prop_map(|a| format!("sqrt(1 + ({a})^2)")),
            inner.prop_map(|a| format!("log(2 + cos({a}))")),
        ]
    })
}

proptest! {
    #[test]
    fn printing_and_reparsing_preserves_values(text in expr_text(), x in -2.0f64..2.0, y in -2.0f64..2.0) {
        let e = ScalarExpr::parse(&text, &VARS).unwrap();
        let again = ScalarExpr::parse(&e.to_string(), &VARS).unwrap();
        prop_assert_eq!(again.to_string(), e.to_string());
        let p = Point::of(&[x, y]);
        let (a, b) = (e.eval(&p).unwrap(), again.eval(&p).unwrap());
        prop_assert!(a.to_bits() == b.to_bits() || (a.is_nan() && b.is_nan()), "{} vs {}", a, b);
    }

    #[test]
    fn jets_agree_with_central_differences(text in expr_text(), x in -2.0f64..2.0, y in -2.0f64..2.0) {
        const H: f64 = 1e-5;
        let e = ScalarExpr::parse(&text, &VARS).unwrap();
        let p = Point::of(&[x, y]);
        let jet = e.eval_jet(&p, 1).unwrap();
        prop_assume!(jet.value().is_finite() && jet.value().abs() < 1e6);
        for k in 0..2 {
            let at = |d: f64| {
                let mut c = [x, y];
                c[k] += d;
                e.eval(&Point::of(&c)).unwrap()
            };
            let fd = (at(H) - at(-H)) / (2.0 * H);
            let ad = jet.grad()[k];
            prop_assert!((ad - fd).abs() <= 1e-6 * ad.abs().max(1.0), "{}: d/d{} ad {} fd {}", text, VARS[k], ad, fd);
        }
    }

    #[test]
    fn second_order_jets_have_symmetric_hessians(text in expr_text(), x in -2.0f64..2.0, y in -2.0f64..2.0) {
        let p = Point::of(&[x, y]);
        let e = ScalarExpr::parse(&text, &VARS).unwrap();
        let (jet, first) = (e.eval_jet(&p, 2).unwrap(), e.eval_jet(&p, 1).unwrap());
        prop_assume!(jet.value().is_finite() && jet.value().abs() < 1e6);
        prop_assert_eq!(jet.value().to_bits(), first.value().to_bits());
        prop_assert_eq!(jet.grad(), first.grad());
        let (a, b) = (jet.hess_at(0, 1), jet.hess_at(1, 0));
        prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0), "{} vs {}", a, b);
    }
}

#[test]
fn unknown_names_and_bad_syntax_are_rejected() {
    assert!(ScalarExpr::parse("x + q", &VARS).is_err());
    assert!(ScalarExpr::parse("sin(x", &VARS).is_err());
    assert!(ScalarExpr::parse("x +", &VARS).is_err());
    assert!(ScalarExpr::parse("", &VARS).is_err());
}
