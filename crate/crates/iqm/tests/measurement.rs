mod common;

use approx::assert_abs_diff_eq;
use common::*;
use iqm::measurement::*;
use iqm::operator::*;
use iqm::parcel::{leq_double, leq_single, uniform_parcel, Membership};
use iqm::{
    DensityMatrix, DoubleParcel, Error, HermitianOperator, HyperRectParcel, Parcel, VertexParcel,
};
use nalgebra::DMatrix;
use rand::Rng;

fn alive(eta: f64) -> FuzzyPOVM {
    qubit_povm(eta).unwrap()
}

fn bloch(rho: &DensityMatrix) -> (f64, f64, f64) {
    bloch_from_qubit(rho).unwrap()
}

/// Random qubit vertex parcel whose vertices have z ≥ z_floor, one of them on
/// the floor.
fn capped_parcel(z_floor: f64, n: usize, r: &mut rand_chacha::ChaCha8Rng) -> VertexParcel {
    let mut verts = Vec::with_capacity(n);
    while verts.len() < n {
        let (x, y, z) = random_bloch(r);
        let z = if verts.is_empty() { z_floor } else { z };
        if z < z_floor || x * x + y * y + z * z > 1.0 {
            continue;
        }
        verts.push(qubit(x, y, z));
    }
    VertexParcel::new(verts).unwrap()
}

#[test]
fn sharp_povm_has_projector_effects() {
    let p = alive(1.0);
    assert!(p.is_sharp());
    assert!(max_diff(p.effect(0).matrix(), diag(&[1.0, 0.0]).matrix()) < 1e-15);
    assert!(max_diff(p.effect(1).matrix(), diag(&[0.0, 1.0]).matrix()) < 1e-15);
}

#[test]
fn fuzzy_alive_effect() {
    let p = alive(0.9);
    let ev = p.effect(0).eigenvalues();
    assert_abs_diff_eq!(ev[0], 0.05, epsilon = 1e-14);
    assert_abs_diff_eq!(ev[1], 0.95, epsilon = 1e-14);
    assert!(p.is_complete());
    assert!(!p.is_sharp());
    assert!(
        max_diff(
            &(p.kraus(0).matrix() * p.kraus(0).matrix()),
            p.effect(0).matrix()
        ) < 1e-14
    );
}

#[test]
fn eta_limits() {
    assert!(matches!(qubit_povm(0.0), Err(Error::OutOfRange { .. })));
    assert!(qubit_povm(1.5).is_err());
    let p = alive(1e-9);
    assert!(max_diff(p.effect(0).matrix(), diag(&[0.5, 0.5]).matrix()) < 1e-9);
}

#[test]
fn effects_are_strictly_positive_and_complete() {
    let mut r = rng(61);
    for _ in 0..20 {
        let d = r.gen_range(2..5);
        let u = random_unitary(d, &mut r);
        let projs: Vec<_> = (0..d)
            .map(|k| {
                let mut v = vec![0.0; d];
                v[k] = 1.0;
                diag(&v).conjugate(u.matrix())
            })
            .collect();
        let eta = r.gen_range(0.01..0.99);
        for noise in [
            NoiseDenominator::Outcomes,
            NoiseDenominator::Dimension,
            NoiseDenominator::Explicit(3.0),
        ] {
            let Ok(p) = FuzzyPOVM::new(projs.clone(), eta, noise) else {
                assert!(matches!(noise, NoiseDenominator::Explicit(_)));
                continue;
            };
            let k = p.denominator();
            for i in 0..p.len() {
                assert!(p.effect(i).min_eigenvalue() >= (1.0 - eta) / k - 1e-12);
            }
            let mut sum = CMat::zeros(d, d);
            for i in 0..p.len() {
                sum += p.effect(i).matrix();
            }
            if p.is_complete() {
                assert!(max_diff(&sum, &CMat::identity(d, d)) < 1e-10);
            }
        }
    }
}

#[test]
fn incomplete_or_overlapping_projectors_are_rejected() {
    assert!(FuzzyPOVM::new(vec![diag(&[1.0, 0.0])], 0.9, NoiseDenominator::Outcomes).is_err());
    assert!(FuzzyPOVM::new(
        vec![diag(&[1.0, 0.0]), diag(&[1.0, 1.0])],
        0.9,
        NoiseDenominator::Outcomes
    )
    .is_err());
    assert!(FuzzyPOVM::new(
        vec![diag(&[1.0, 0.5]), diag(&[0.0, 0.5])],
        0.9,
        NoiseDenominator::Outcomes
    )
    .is_err());
}

#[test]
fn kraus_update_of_reference_states() {
    for eta in [0.1, 0.6, 0.9] {
        let (post, p) =
            kraus_update_state(&DensityMatrix::maximally_mixed(2), &alive(eta), 0).unwrap();
        assert_abs_diff_eq!(p, 0.5, epsilon = 1e-14);
        let (x, y, z) = bloch(&post);
        assert!(x.abs() < 1e-14 && y.abs() < 1e-14);
        assert_abs_diff_eq!(z, eta, epsilon = 1e-14);

        let zero = DensityMatrix::basis_state(2, 0);
        let (post, p) = kraus_update_state(&zero, &alive(eta), 0).unwrap();
        assert_abs_diff_eq!(p, (1.0 + eta) / 2.0, epsilon = 1e-14);
        assert!(max_diff(post.matrix(), zero.matrix()) < 1e-14);
    }
}

#[test]
fn kraus_update_of_plus_state() {
    let s = 1.0 / 2f64.sqrt();
    let plus = DensityMatrix::pure(&[c(s, 0.0), c(s, 0.0)]).unwrap();
    let (post, p) = kraus_update_state(&plus, &alive(0.9), 0).unwrap();
    assert_abs_diff_eq!(p, 0.5, epsilon = 1e-14);
    assert_abs_diff_eq!(post.matrix()[(0, 0)].re, 0.95, epsilon = 1e-12);
    // M ρ M / p with M = diag(√0.95, √0.05), ρ = |+⟩⟨+|
    assert_abs_diff_eq!(
        post.matrix()[(0, 1)].re,
        (0.95f64 * 0.05).sqrt(),
        epsilon = 1e-12
    );
}

#[test]
fn sharp_update_of_orthogonal_state_vanishes() {
    let one = DensityMatrix::basis_state(2, 1);
    assert!(matches!(
        kraus_update_state(&one, &alive(1.0), 0),
        Err(Error::VanishingProbability(_))
    ));
}

#[test]
fn bloch_closed_form_examples() {
    let (x, y, z) = bloch_update_closed_form(0.0, 0.0, 0.0, 0.4).unwrap();
    assert_eq!((x, y), (0.0, 0.0));
    assert_abs_diff_eq!(z, 0.4, epsilon = 1e-15);
    let (x, y, z) = bloch_update_closed_form(0.0, 0.0, 1.0, 0.4).unwrap();
    assert_eq!((x, y), (0.0, 0.0));
    assert_abs_diff_eq!(z, 1.0, epsilon = 1e-15);
    let (x, y, z) = bloch_update_closed_form(1.0, 0.0, 0.0, 0.6).unwrap();
    assert_abs_diff_eq!(x, 0.8, epsilon = 1e-15);
    assert_eq!(y, 0.0);
    assert_abs_diff_eq!(z, 0.6, epsilon = 1e-15);
    assert_abs_diff_eq!(x * x + y * y + z * z, 1.0, epsilon = 1e-14);
    assert!(bloch_update_closed_form(0.0, 0.0, -1.0, 1.0).is_err());
}

#[test]
fn closed_form_matches_matrix_update() {
    let mut r = rng(62);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let (x, y, z) = random_bloch(&mut r);
        let eta = r.gen_range(0.0..1.0);
        let (cx, cy, cz) = bloch_update_closed_form(x, y, z, eta).unwrap();
        let povm = FuzzyPOVM::new(
            vec![diag(&[1.0, 0.0]), diag(&[0.0, 1.0])],
            eta.max(1e-12),
            NoiseDenominator::Explicit(2.0),
        )
        .unwrap();
        let (post, _) = kraus_update_state(&qubit(x, y, z), &povm, 0).unwrap();
        let (mx, my, mz) = bloch(&post);
        worst = worst
            .max((cx - mx).abs())
            .max((cy - my).abs())
            .max((cz - mz).abs());
    }
    assert!(worst < 1e-10, "max error {worst:e}");
}

fn numerical_qubit_jacobian(z: f64, eta: f64) -> f64 {
    let h = 1e-5;
    let p = [0.0, 0.0, z];
    let mut jac = DMatrix::<f64>::zeros(3, 3);
    for k in 0..3 {
        let mut a = p;
        let mut b = p;
        a[k] += h;
        b[k] -= h;
        let fa = bloch_update_closed_form(a[0], a[1], a[2], eta).unwrap();
        let fb = bloch_update_closed_form(b[0], b[1], b[2], eta).unwrap();
        let d = [
            (fa.0 - fb.0) / (2.0 * h),
            (fa.1 - fb.1) / (2.0 * h),
            (fa.2 - fb.2) / (2.0 * h),
        ];
        for i in 0..3 {
            jac[(i, k)] = d[i];
        }
    }
    jac.determinant()
}

#[test]
fn qubit_jacobian_values() {
    assert_abs_diff_eq!(qubit_jacobian(0.3, 0.0).unwrap(), 1.0, epsilon = 1e-15);
    assert_abs_diff_eq!(qubit_jacobian(0.0, 0.6).unwrap(), 0.4096, epsilon = 1e-14);
    assert_abs_diff_eq!(qubit_jacobian(1.0, 0.6).unwrap(), 0.0625, epsilon = 1e-14);
}

#[test]
fn qubit_jacobian_matches_finite_differences() {
    for zi in 0..=18 {
        let z = -0.9 + 0.1 * zi as f64;
        for ei in 1..=9 {
            let eta = 0.1 * ei as f64;
            let j = qubit_jacobian(z, eta).unwrap();
            let n = numerical_qubit_jacobian(z, eta);
            assert!(((j - n) / j).abs() < 1e-5, "z={z} eta={eta}: {j} vs {n}");
        }
    }
}

#[test]
fn thresholds() {
    assert_eq!(eta_threshold_qubit(0.5).unwrap(), 0.0);
    assert_eq!(eta_threshold_qubit(1.0).unwrap(), 0.0);
    assert_abs_diff_eq!(eta_threshold_qubit(0.25).unwrap(), 0.8, epsilon = 1e-15);
    assert!(eta_threshold_qubit(0.0).is_err());
}

#[test]
fn nqubit_jacobian_reduces_to_qubit_form() {
    let mut r = rng(63);
    for _ in 0..20 {
        let (x, y, z) = random_bloch(&mut r);
        let eta = r.gen_range(0.05..0.95);
        let povm = FuzzyPOVM::new(
            vec![diag(&[1.0, 0.0]), diag(&[0.0, 1.0])],
            eta,
            NoiseDenominator::Dimension,
        )
        .unwrap();
        let a = nqubit_jacobian(&qubit(x, y, z), &povm, 0).unwrap();
        assert_abs_diff_eq!(a, qubit_jacobian(z, eta).unwrap(), epsilon = 1e-12);
    }
}

#[test]
fn nqubit_jacobian_vanishes_in_sharp_limit() {
    let projs = vec![diag(&[1.0, 1.0, 0.0, 0.0]), diag(&[0.0, 0.0, 1.0, 1.0])];
    let rho = DensityMatrix::maximally_mixed(4);
    let mut prev = f64::INFINITY;
    for eta in [0.9, 0.99, 0.999, 0.9999] {
        let j = nqubit_jacobian(
            &rho,
            &FuzzyPOVM::new(projs.clone(), eta, NoiseDenominator::Dimension).unwrap(),
            0,
        )
        .unwrap();
        assert!(j < prev);
        prev = j;
    }
    assert!(prev < 1e-10);
}

/// Chart coordinates of f_j applied to I/d + Σ x_k G_k.
fn pushed(povm: &FuzzyPOVM, basis: &ObservableBasis, x: &[f64]) -> Vec<f64> {
    let d = basis.dim();
    let mut m = CMat::identity(d, d) * c(1.0 / d as f64, 0.0);
    for (g, v) in basis.elements().iter().zip(x) {
        m += g.matrix() * c(*v, 0.0);
    }
    let rho = DensityMatrix::new_unchecked(HermitianOperator::from_matrix_unchecked(m));
    let (post, _) = kraus_update_state(&rho, povm, 0).unwrap();
    basis.coords_of(&post)
}

#[test]
fn four_level_jacobian_matches_local_volume_ratios() {
    let projs = vec![diag(&[1.0, 1.0, 0.0, 0.0]), diag(&[0.0, 0.0, 1.0, 1.0])];
    let povm = FuzzyPOVM::new(projs, 0.9, NoiseDenominator::Dimension).unwrap();
    let basis = gell_mann_basis(4);
    let n = basis.len();
    let mut r = rng(64);
    let rho = random_density(4, &mut r);
    let x0 = basis.coords_of(&rho);
    let closed = nqubit_jacobian(&rho, &povm, 0).unwrap();
    let y0 = pushed(&povm, &basis, &x0);
    let radius = 1e-4;
    let mut ratios = Vec::new();
    for _ in 0..30 {
        // random simplex with one corner at ρ; its volume ratio under the map
        let mut before = DMatrix::<f64>::zeros(n, n);
        let mut after = DMatrix::<f64>::zeros(n, n);
        for col in 0..n {
            let e: Vec<f64> = (0..n).map(|_| radius * gaussian(&mut r)).collect();
            let x: Vec<f64> = x0.iter().zip(&e).map(|(a, b)| a + b).collect();
            let y = pushed(&povm, &basis, &x);
            for row in 0..n {
                before[(row, col)] = e[row];
                after[(row, col)] = y[row] - y0[row];
            }
        }
        ratios.push((after.determinant() / before.determinant()).abs());
    }
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    assert!(
        ((mean - closed) / closed).abs() < 0.1,
        "closed {closed:e}, sampled {mean:e}"
    );
}

#[test]
fn lipschitz_constant_substitution() {
    assert_abs_diff_eq!(
        lipschitz_constant(&alive(1.0), 0, 0.5).unwrap(),
        4.0,
        epsilon = 1e-14
    );
    assert!(lipschitz_constant(&alive(0.9), 0, 0.0).is_err());
}

#[test]
fn lipschitz_box_of_a_point_is_the_updated_point() {
    let rho = qubit(0.3, -0.2, 0.1);
    let basis = pauli_product_basis(1);
    let p = uniform_parcel(&rho, &basis, 0.0).unwrap();
    let out = lipschitz_outer_update(&p, &alive(0.8), 0).unwrap();
    let (post, _) = kraus_update_state(&rho, &alive(0.8), 0).unwrap();
    let want = basis.coords_of(&post);
    for ((lo, hi), w) in out.lo().iter().zip(out.hi()).zip(&want) {
        assert_abs_diff_eq!(*lo, *w, epsilon = 1e-12);
        assert_abs_diff_eq!(*hi, *w, epsilon = 1e-12);
    }
}

#[test]
fn lipschitz_box_contains_exact_images() {
    let mut r = rng(65);
    for trial in 0..10 {
        let d = if trial % 2 == 0 { 2 } else { 3 };
        let basis = gell_mann_basis(d);
        let rho = random_density(d, &mut r);
        let p = uniform_parcel(&rho, &basis, 0.02).unwrap();
        let projs: Vec<_> = (0..d)
            .map(|k| {
                let mut v = vec![0.0; d];
                v[k] = 1.0;
                diag(&v)
            })
            .collect();
        let povm =
            FuzzyPOVM::new(projs, r.gen_range(0.3..0.95), NoiseDenominator::Outcomes).unwrap();
        let out = lipschitz_outer_update(&p, &povm, 0).unwrap();
        let mut tested = 0;
        while tested < 200 {
            let x: Vec<f64> = (0..basis.len())
                .map(|j| r.gen_range(p.lo()[j]..p.hi()[j]))
                .collect();
            let m = basis.reconstruct(&x);
            if m.min_eigenvalue() < 0.0 {
                continue;
            }
            let (post, _) = kraus_update_state(&DensityMatrix::new_unchecked(m), &povm, 0).unwrap();
            assert_eq!(out.membership(&post), Membership::Inside);
            tested += 1;
        }
    }
}

#[test]
fn singleton_update_matches_state_update() {
    let mut r = rng(66);
    let rho = random_density(2, &mut r);
    let rep = update_single_parcel(&VertexParcel::singleton(rho.clone()), &alive(0.7), 0).unwrap();
    let (post, p) = kraus_update_state(&rho, &alive(0.7), 0).unwrap();
    assert_eq!(rep.possible.vertices().len(), 1);
    assert!(max_diff(rep.possible.vertices()[0].matrix(), post.matrix()) < 1e-15);
    assert!(rep.probability.degenerate);
    assert_abs_diff_eq!(rep.probability.lo, p, epsilon = 1e-12);
}

#[test]
fn singleton_outcome_probabilities_sum_to_one() {
    let mut r = rng(67);
    for _ in 0..20 {
        let d = r.gen_range(2..5);
        let rho = VertexParcel::singleton(random_density(d, &mut r));
        let projs: Vec<_> = (0..d)
            .map(|k| {
                let mut v = vec![0.0; d];
                v[k] = 1.0;
                diag(&v)
            })
            .collect();
        let povm =
            FuzzyPOVM::new(projs, r.gen_range(0.1..0.99), NoiseDenominator::Outcomes).unwrap();
        let total: f64 = (0..d)
            .map(|j| {
                update_single_parcel(&rho, &povm, j)
                    .unwrap()
                    .probability
                    .center()
            })
            .sum();
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-10);
    }
}

#[test]
fn parcel_update_rejects_sharp_measurement() {
    let p = VertexParcel::singleton(DensityMatrix::maximally_mixed(2));
    assert!(matches!(
        update_single_parcel(&p, &alive(1.0), 0),
        Err(Error::InvalidMeasurement(_))
    ));
}

#[test]
fn upper_cap_parcels_contract_for_every_eta() {
    let mut r = rng(68);
    for _ in 0..20 {
        let p = capped_parcel(0.0, 6, &mut r);
        for k in 1..=9 {
            let rep = update_single_parcel(&p, &alive(0.1 * k as f64), 0).unwrap();
            assert_eq!(rep.volume_decreased(), Some(true));
        }
    }
}

#[test]
fn lower_cap_parcels_contract_above_threshold() {
    let mut r = rng(69);
    let grid: Vec<f64> = (1..=19).map(|k| 0.05 * k as f64).collect();
    for _ in 0..10 {
        let p = capped_parcel(-0.5, 6, &mut r);
        for eta in [0.85, 0.9, 0.95] {
            assert_eq!(
                update_single_parcel(&p, &alive(eta), 0)
                    .unwrap()
                    .volume_decreased(),
                Some(true)
            );
        }
        let t = eta_threshold_search(
            &p,
            &binary_projectors(&diag(&[1.0, 0.0])),
            NoiseDenominator::Outcomes,
            0,
            &grid,
        )
        .unwrap();
        assert!(t.unwrap() <= 0.85 + 1e-12);
    }
}

#[test]
fn interior_points_map_into_the_updated_hull() {
    let mut r = rng(70);
    let p = capped_parcel(-0.3, 6, &mut r);
    let povm = alive(0.8);
    let rep = update_single_parcel(&p, &povm, 0).unwrap();
    for _ in 0..100 {
        let w: Vec<f64> = (0..6).map(|_| r.gen_range(0.01..1.0)).collect();
        let s: f64 = w.iter().sum();
        let parts: Vec<(f64, &DensityMatrix)> = w.iter().map(|x| x / s).zip(p.vertices()).collect();
        let (post, _) = kraus_update_state(&DensityMatrix::mixture(&parts), &povm, 0).unwrap();
        assert!(rep.possible.contains_closed(&post));
    }
}

#[test]
fn positivity_check() {
    let p = VertexParcel::new(vec![qubit(0.0, 0.0, 0.2), qubit(0.3, 0.0, -0.4)]).unwrap();
    let pos = check_uniform_positivity(&p, None, &alive(0.9), 0, DEFAULT_DELTA_THRESHOLD).unwrap();
    assert_abs_diff_eq!(pos.delta_outcome, 0.3, epsilon = 1e-14);
    assert!(pos.passed);
    let whole = FuzzyPOVM::new(
        vec![HermitianOperator::identity(2)],
        0.9,
        NoiseDenominator::Outcomes,
    )
    .unwrap();
    let all = check_uniform_positivity(&p, None, &whole, 0, DEFAULT_DELTA_THRESHOLD).unwrap();
    assert_abs_diff_eq!(all.delta_outcome, 1.0, epsilon = 1e-14);
    let touching = VertexParcel::new(vec![qubit(0.0, 0.0, 0.2), qubit(0.0, 0.0, -1.0)]).unwrap();
    assert!(
        !check_uniform_positivity(&touching, None, &alive(0.9), 0, DEFAULT_DELTA_THRESHOLD)
            .unwrap()
            .passed
    );
}

#[test]
fn separation_check() {
    let h = diag(&[0.0, -1.0]);
    let hi = VertexParcel::new(vec![qubit(0.0, 0.0, 0.4), qubit(0.2, 0.0, 0.5)]).unwrap();
    let lo = VertexParcel::new(vec![qubit(0.0, 0.0, -0.6), qubit(0.1, 0.0, -0.5)]).unwrap();
    let s = check_separation(&hi, &lo, &h, &alive(0.9), 0).unwrap();
    // r(z) = −(1−z)/(1+z)
    let r = |z: f64| -(1.0 - z) / (1.0 + z);
    assert_abs_diff_eq!(s.min_first, r(0.4), epsilon = 1e-12);
    assert_abs_diff_eq!(s.max_second, r(-0.5), epsilon = 1e-12);
    assert!(s.passed && s.c1 > s.c2);
    assert_abs_diff_eq!(s.c1 - s.c2, s.gap() / 3.0, epsilon = 1e-12);
    assert!(
        !check_separation(&hi, &hi, &h, &alive(0.9), 0)
            .unwrap()
            .passed
    );
    assert!(matches!(
        check_separation(&hi, &lo, &sigma_x(), &alive(0.9), 0),
        Err(Error::SeparationNotSupported { .. })
    ));
}

#[test]
fn double_update_success_path() {
    let mut r = rng(71);
    let near = |r: &mut rand_chacha::ChaCha8Rng, z: f64| -> Vec<DensityMatrix> {
        (0..5)
            .map(|_| {
                let (x, y, w) = random_bloch(r);
                qubit(0.1 * x, 0.1 * y, z + 0.1 * w)
            })
            .collect()
    };
    let o1 = VertexParcel::new(near(&mut r, 0.4)).unwrap();
    let o2 = VertexParcel::new(near(&mut r, -0.6)).unwrap();
    let dp = DoubleParcel::new(o1.into(), Some(o2.into())).unwrap();
    let h = diag(&[0.0, -1.0]);
    for eta in [0.9, 0.99] {
        let rep = update_double_parcel(&dp, &alive(eta), 0, &h).unwrap();
        assert!(rep.conditions_verified());
        assert_eq!(rep.information_increased(), Some(true));
        assert_eq!(rep.volume_decreased(), Some(true));
        assert!(rep.certificate.as_ref().unwrap().gap() > 0.0);
        let next = rep.double_parcel().unwrap();
        assert!(next.verify_certificate());
        // The impossible set only grows; the possible set is moved toward
        // |0⟩ and is not a subset of its predecessor.
        assert!(leq_single(next.impossible().unwrap(), dp.impossible().unwrap()).unwrap());
        assert!(!leq_single(dp.possible(), next.possible()).unwrap());
    }
}

#[test]
fn possible_component_update_is_monotone_under_refinement() {
    let mut r = rng(72);
    let h = diag(&[0.0, -1.0]);
    for _ in 0..10 {
        let coarse: Vec<DensityMatrix> = (0..5)
            .map(|_| {
                let (x, y, w) = random_bloch(&mut r);
                qubit(0.15 * x, 0.15 * y, 0.4 + 0.15 * w)
            })
            .collect();
        let centroid = VertexParcel::new(coarse.clone()).unwrap().centroid();
        let fine: Vec<DensityMatrix> = coarse
            .iter()
            .map(|v| DensityMatrix::mixture(&[(0.5, v), (0.5, &centroid)]))
            .collect();
        let o2 = VertexParcel::new(vec![
            qubit(0.0, 0.0, -0.6),
            qubit(0.1, 0.0, -0.5),
            qubit(0.0, 0.1, -0.5),
            qubit(0.0, 0.0, -0.4),
        ])
        .unwrap();
        let a = DoubleParcel::new(
            VertexParcel::new(coarse).unwrap().into(),
            Some(o2.clone().into()),
        )
        .unwrap();
        let b =
            DoubleParcel::new(VertexParcel::new(fine).unwrap().into(), Some(o2.into())).unwrap();
        assert!(leq_double(&a, &b).unwrap());
        let ra = update_double_parcel(&a, &alive(0.95), 0, &h).unwrap();
        let rb = update_double_parcel(&b, &alive(0.95), 0, &h).unwrap();
        let (pa, pb) = (
            Parcel::Vertex(ra.possible.clone()),
            Parcel::Vertex(rb.possible.clone()),
        );
        assert!(leq_single(&pa, &pb).unwrap());
    }
}

#[test]
fn double_update_reports_intersection() {
    let o1 = VertexParcel::new(vec![
        qubit(0.0, 0.0, 0.2),
        qubit(0.1, 0.0, 0.3),
        qubit(0.0, 0.1, 0.3),
        qubit(0.0, 0.0, 0.4),
    ])
    .unwrap();
    let o2 = VertexParcel::new(vec![
        qubit(0.0, 0.0, -1.0),
        qubit(0.1, 0.0, -0.9),
        qubit(0.0, 0.1, -0.9),
        qubit(0.0, 0.0, -0.8),
    ])
    .unwrap();
    let dp = DoubleParcel::new(o1.into(), Some(o2.into())).unwrap();
    match update_double_parcel(&dp, &alive(0.3), 0, &diag(&[0.0, -1.0])) {
        Err(Error::Intersecting(x)) => {
            assert!(!x.report.positivity.unwrap().passed);
            assert!(x.report.possible.contains_closed(&x.witness));
            assert!(x
                .report
                .impossible
                .as_ref()
                .unwrap()
                .contains_closed(&x.witness));
        }
        Ok(rep) => assert!(!rep.conditions_verified()),
        Err(e) => panic!("unexpected error {e}"),
    }
}

#[test]
fn pruning_removes_interior_and_duplicate_vertices() {
    let verts = vec![
        qubit(0.0, 0.0, 0.5),
        qubit(0.5, 0.0, 0.0),
        qubit(0.0, 0.5, 0.0),
        qubit(0.0, 0.0, -0.5),
        qubit(0.05, 0.05, 0.0),
        qubit(0.0, 0.0, 0.5),
    ];
    let kept = prune_vertices(verts);
    assert_eq!(kept.len(), 4);
}

#[test]
fn box_updates_need_a_full_basis() {
    let p =
        HyperRectParcel::new(pauli_product_basis(1).subset(&[2]), vec![-0.1], vec![0.1]).unwrap();
    assert!(lipschitz_outer_update(&p, &alive(0.9), 0).is_err());
}
