use iqm::operator::c;
use iqm::DensityMatrix;
use iqm_lab::cat::{bloch_of, cat_double_parcel, cat_options, cat_separator, equal_superposition};
use iqm_lab::{run_cat, CatDouble};

/// Trace distance from the updated |+⟩ to |0⟩, (1−η)/2 under the square root.
fn singleton_distance(eta: f64) -> f64 {
    ((1.0 - eta) / 2.0).sqrt()
}

#[test]
fn bloch_vector_of_amplitudes() {
    let (a, b) = equal_superposition();
    let (x, y, z) = bloch_of(a, b);
    assert!((x - 1.0).abs() < 1e-15 && y.abs() < 1e-15 && z.abs() < 1e-15);
    let (x, y, z) = bloch_of(c(0.6, 0.0), c(0.0, 0.8));
    assert!(x.abs() < 1e-15 && (y - 0.96).abs() < 1e-15 && (z + 0.28).abs() < 1e-15);
}

#[test]
fn singleton_updates_follow_closed_form() {
    let (a, b) = equal_superposition();
    let etas = vec![0.1, 0.5, 0.9, 0.99, 0.999];
    let out = run_cat(&cat_options(a, b, 0.0, etas.clone())).unwrap();
    for (i, eta) in etas.iter().enumerate() {
        assert!((out.real(i, "alive_entry").unwrap() - (1.0 + eta) / 2.0).abs() < 1e-12);
        assert!((out.real(i, "dist_max").unwrap() - singleton_distance(*eta)).abs() < 1e-12);
        assert!((out.real(i, "prob_lo").unwrap() - 0.5).abs() < 1e-12);
        assert_eq!(out.flag(i, "prob_degenerate"), Some(true));
    }
}

#[test]
fn distance_to_alive_shrinks_with_eta() {
    let (a, b) = equal_superposition();
    let etas: Vec<f64> = (1..100).map(|i| i as f64 / 100.0).collect();
    let out = run_cat(&cat_options(a, b, 0.05, etas)).unwrap();
    let d = out.reals("dist_max");
    assert!(d.windows(2).all(|w| w[1] < w[0]));
    let alive = out.reals("alive_entry");
    assert!(alive.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn dead_state_is_reported_without_update() {
    let out = run_cat(&cat_options(c(0.0, 0.0), c(1.0, 0.0), 0.0, vec![0.5, 0.9])).unwrap();
    assert_eq!(out.verdict_of("status"), Some("dead-certain"));
    assert_eq!(out.rows.len(), 2);
    assert_eq!(out.real(0, "alive_entry"), None);
}

#[test]
fn unnormalized_amplitudes_are_rejected() {
    assert!(run_cat(&cat_options(c(1.0, 0.0), c(1.0, 0.0), 0.0, vec![0.5])).is_err());
}

#[test]
fn cat_double_update_at_high_eta() {
    let (a, b) = equal_superposition();
    let mut opts = cat_options(a, b, 0.05, vec![0.9, 0.99]);
    opts.double = Some(CatDouble::default());
    let out = run_cat(&opts).unwrap();
    assert_eq!(out.verdict_of("double"), Some("disjoint"));
    assert!(!out.intersected);
    for i in 0..2 {
        assert!(out.real(i, "delta").unwrap() > 0.0);
        assert!(out.real(i, "c1").unwrap() > out.real(i, "c2").unwrap());
        assert!(out.real(i, "info_after").unwrap() > out.real(i, "info_before").unwrap());
    }
}

#[test]
fn separator_splits_the_double_parcel() {
    let psi = DensityMatrix::pure(&[
        c(std::f64::consts::FRAC_1_SQRT_2, 0.0),
        c(std::f64::consts::FRAC_1_SQRT_2, 0.0),
    ])
    .unwrap();
    let dp = cat_double_parcel(&psi, &CatDouble::default()).unwrap();
    let h = cat_separator();
    let o1 = dp.possible().to_vrep().unwrap();
    let o2 = dp.impossible().unwrap().to_vrep().unwrap();
    let hi1 = o1
        .vertices()
        .iter()
        .map(|v| v.expect(&h))
        .fold(f64::NEG_INFINITY, f64::max);
    let lo1 = o1
        .vertices()
        .iter()
        .map(|v| v.expect(&h))
        .fold(f64::INFINITY, f64::min);
    let hi2 = o2
        .vertices()
        .iter()
        .map(|v| v.expect(&h))
        .fold(f64::NEG_INFINITY, f64::max);
    assert!(lo1 > hi2, "{lo1} {hi2}");
    assert!(hi1 <= 0.0);
    assert!(dp.verify_certificate());
}

#[test]
fn impossible_box_outside_the_ball_is_rejected() {
    let (a, b) = equal_superposition();
    let psi = DensityMatrix::pure(&[a, b]).unwrap();
    let cfg = CatDouble {
        eps1: 0.05,
        z_range: (-1.0, -0.8),
        xy: 0.3,
    };
    assert!(cat_double_parcel(&psi, &cfg).is_err());
}
