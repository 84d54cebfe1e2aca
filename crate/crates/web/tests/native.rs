use epd_core::specfun::normalized_j;
use epd_web::{multiplier_curve, regime_label, surface};

#[test]
fn surface_matches_example_one() {
    let values = surface("jbessel", 2.0 / 3.0, 2.5, 2.0, 2.0, 5, 32).unwrap();
    assert_eq!(values.len(), 25);
    for (i, v) in values.iter().enumerate() {
        let (t, x) = (0.5 * (i / 5) as f64, 0.5 * (i % 5) as f64);
        let exact = normalized_j(-1.0 / 6.0, x).unwrap() * normalized_j(0.75, t).unwrap();
        assert!((v - exact).abs() < 1e-8, "x={x} t={t}: {v} vs {exact}");
    }
}

#[test]
fn regimes_are_labelled() {
    assert_eq!(regime_label(2.0 / 3.0, 2.5).unwrap(), "direct");
    assert_eq!(regime_label(1.5, 1.0 / 3.0).unwrap(), "descent (m = 1)");
    assert!(regime_label(2.0 / 3.0, -3.0).unwrap().starts_with("exceptional-series"));
    assert!(regime_label(-1.0, 1.0).is_err());
}

#[test]
fn multiplier_starts_at_one_for_regular_k() {
    let curve = multiplier_curve(2.5, 1.0, 10.0, 11).unwrap();
    assert_eq!(curve.len(), 11);
    assert!((curve[0] - 1.0).abs() < 1e-15);
    assert!((curve[1] - normalized_j(0.75, 1.0).unwrap()).abs() < 1e-14);
    assert!(surface("sinc", 1.0, 1.0, 1.0, 1.0, 3, 8).is_err());
}
