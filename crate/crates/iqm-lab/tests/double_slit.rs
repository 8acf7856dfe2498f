use iqm_lab::double_slit::{plus_state, screen_projector};
use iqm_lab::run_double_slit;

/// Screen probability after the which-path outcome L on |+⟩ itself.
fn screen_oracle(eta: f64, phi: f64) -> f64 {
    0.5 + 0.5 * (1.0 - eta * eta).sqrt() * phi.cos()
}

#[test]
fn screen_projector_is_rank_one() {
    for phi in [0.0, 0.7, 3.1] {
        let p = screen_projector(phi);
        let ev = p.eigenvalues();
        assert!(ev[0].abs() < 1e-14 && (ev[1] - 1.0).abs() < 1e-14);
    }
    assert!((plus_state().expect(&screen_projector(0.0)) - 1.0).abs() < 1e-14);
}

#[test]
fn narrow_parcel_tracks_the_state_oracle() {
    let etas = [0.1, 0.5, 0.9, 0.99];
    let phis = [0.0, 1.0, 2.0, std::f64::consts::PI];
    let eps = 1e-4;
    let out = run_double_slit(eps, &etas, &phis).unwrap();
    for (i, eta) in etas.iter().enumerate() {
        for (k, phi) in phis.iter().enumerate() {
            let row = i * phis.len() + k;
            let want = screen_oracle(*eta, *phi);
            assert!(
                (out.real(row, "center").unwrap() - want).abs() < 1e-3,
                "eta {eta} phi {phi}"
            );
            assert!(out.real(row, "prob_lo").unwrap() <= want + 1e-12);
            assert!(want <= out.real(row, "prob_hi").unwrap() + 1e-12);
        }
    }
}

#[test]
fn interference_fades_as_which_path_sharpens() {
    let etas: Vec<f64> = vec![0.01, 0.3, 0.6, 0.9, 0.99, 0.999, 0.9999];
    let out = run_double_slit(0.05, &etas, &[0.0, 1.0]).unwrap();
    assert_eq!(out.verdict_of("centers_converge_to_half"), Some("yes"));
    let last = 2 * (etas.len() - 1);
    assert!((out.real(last, "center").unwrap() - 0.5).abs() < 0.01);
    assert!(out.real(last, "width").unwrap() < 0.002);
    let vol = out.reals("volume_after");
    assert!(vol.windows(2).all(|w| w[1] <= w[0] + 1e-15));
}

#[test]
fn oversized_parcels_are_rejected() {
    assert!(run_double_slit(0.0, &[0.5], &[0.0]).is_err());
    assert!(run_double_slit(0.5, &[0.5], &[0.0]).is_err());
}
