mod common;

use common::rng;
use iqm::hull::{convex_hull, simplex_volume, MAX_FACETS};
use iqm::lp::{hull_intersection, hull_membership, phase_one, Feasibility, HullPair};
use rand::Rng;

fn cube(k: usize) -> Vec<Vec<f64>> {
    (0..1usize << k)
        .map(|c| (0..k).map(|i| ((c >> i) & 1) as f64).collect())
        .collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[test]
fn feasible_solution_satisfies_constraints() {
    let mut r = rng(60);
    for _ in 0..50 {
        let (m, n) = (r.gen_range(2..6), r.gen_range(6..40));
        let cols: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..m).map(|_| r.gen_range(-1.0..1.0)).collect())
            .collect();
        let x0: Vec<f64> = (0..n).map(|_| r.gen_range(0.0..1.0)).collect();
        let b: Vec<f64> = (0..m)
            .map(|i| cols.iter().zip(&x0).map(|(c, x)| c[i] * x).sum())
            .collect();
        match phase_one(&cols, &b) {
            Feasibility::Feasible(x) => {
                assert!(x.iter().all(|&v| v >= 0.0));
                for i in 0..m {
                    let ax: f64 = cols.iter().zip(&x).map(|(c, v)| c[i] * v).sum();
                    assert!((ax - b[i]).abs() < 1e-8);
                }
            }
            Feasibility::Infeasible { .. } => {
                panic!("constructed feasible problem reported infeasible")
            }
        }
    }
}

#[test]
fn farkas_certificate_is_valid() {
    // Columns with positive first entry cannot combine to a negative target.
    let mut r = rng(61);
    for n in [5usize, 100, 5000] {
        let cols: Vec<Vec<f64>> = (0..n)
            .map(|_| vec![r.gen_range(0.1..1.0), r.gen_range(-1.0..1.0)])
            .collect();
        match phase_one(&cols, &[-1.0, 0.3]) {
            Feasibility::Infeasible { y, .. } => {
                assert!(dot(&y, &[-1.0, 0.3]) > 0.0);
                assert!(cols.iter().all(|c| dot(&y, c) <= 1e-9));
            }
            Feasibility::Feasible(_) => panic!("infeasible problem reported feasible"),
        }
    }
}

#[test]
fn wide_problems_agree_with_narrow_ones() {
    let mut r = rng(62);
    let pts: Vec<Vec<f64>> = (0..6000)
        .map(|_| (0..3).map(|_| r.gen_range(-1.0..1.0)).collect())
        .collect();
    for _ in 0..20 {
        let p: Vec<f64> = (0..3).map(|_| r.gen_range(-1.2..1.2)).collect();
        let wide = hull_membership(&pts, &p).is_some();
        let inside = p.iter().all(|v| v.abs() < 0.95);
        let outside = p.iter().any(|v| v.abs() > 1.0);
        if inside {
            assert!(wide);
        }
        if outside {
            assert!(!wide);
        }
    }
}

#[test]
fn membership_weights_reproduce_the_point() {
    let pts = cube(3);
    let p = [0.2, 0.7, 0.5];
    let w = hull_membership(&pts, &p).unwrap();
    assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-9);
    for i in 0..3 {
        let x: f64 = pts.iter().zip(&w).map(|(v, wi)| v[i] * wi).sum();
        assert!((x - p[i]).abs() < 1e-9);
    }
    assert!(hull_membership(&pts, &[1.01, 0.5, 0.5]).is_none());
}

#[test]
fn hull_pairs_are_classified() {
    let a = cube(2);
    let shifted: Vec<Vec<f64>> = a.iter().map(|v| vec![v[0] + 2.0, v[1]]).collect();
    match hull_intersection(&a, &shifted) {
        HullPair::Separated {
            h,
            max_first,
            min_second,
        } => {
            assert!(min_second > max_first);
            assert!(a.iter().all(|v| dot(&h, v) <= max_first + 1e-12));
            assert!(shifted.iter().all(|v| dot(&h, v) >= min_second - 1e-12));
        }
        other => panic!("expected separation, got {other:?}"),
    }
    let overlap: Vec<Vec<f64>> = a.iter().map(|v| vec![v[0] + 0.5, v[1] + 0.5]).collect();
    match hull_intersection(&a, &overlap) {
        HullPair::Intersecting { lambda, mu } => {
            let p: Vec<f64> = (0..2)
                .map(|i| a.iter().zip(&lambda).map(|(v, l)| v[i] * l).sum())
                .collect();
            let q: Vec<f64> = (0..2)
                .map(|i| overlap.iter().zip(&mu).map(|(v, m)| v[i] * m).sum())
                .collect();
            assert!((p[0] - q[0]).abs() < 1e-9 && (p[1] - q[1]).abs() < 1e-9);
        }
        other => panic!("expected intersection, got {other:?}"),
    }
}

#[test]
fn simplex_volume_examples() {
    let o = [0.0, 0.0, 0.0];
    let (e1, e2, e3) = ([1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]);
    assert!((simplex_volume(&[&o, &e1, &e2, &e3]) - 1.0 / 6.0).abs() < 1e-15);
    assert!((simplex_volume(&[&[0.0, 0.0][..], &[2.0, 0.0], &[0.0, 3.0]]) - 3.0).abs() < 1e-15);
    assert_eq!(simplex_volume(&[&o[..]]), 0.0);
}

#[test]
fn cube_hulls() {
    for k in 1..=5 {
        let mut pts = cube(k);
        pts.push(vec![0.5; k]);
        let h = convex_hull(&pts, MAX_FACETS).unwrap();
        assert!((h.volume - 1.0).abs() < 1e-10, "k={k} volume {}", h.volume);
        assert_eq!(h.vertices, (0..1usize << k).collect::<Vec<_>>());
    }
}

#[test]
fn cross_polytope_volume() {
    // Volume of the unit cross-polytope in ℝᵏ is 2ᵏ / k!.
    for k in 2..=6 {
        let mut pts = Vec::new();
        for i in 0..k {
            for s in [-1.0, 1.0] {
                let mut v = vec![0.0; k];
                v[i] = s;
                pts.push(v);
            }
        }
        let h = convex_hull(&pts, MAX_FACETS).unwrap();
        let want = 2f64.powi(k as i32) / (1..=k).map(|v| v as f64).product::<f64>();
        assert!((h.volume - want).abs() < 1e-10 * want);
        assert_eq!(h.vertices.len(), 2 * k);
    }
}

#[test]
fn random_hull_volume_matches_monte_carlo() {
    let mut r = rng(63);
    let pts: Vec<Vec<f64>> = (0..30)
        .map(|_| (0..3).map(|_| r.gen_range(0.0..1.0)).collect())
        .collect();
    let h = convex_hull(&pts, MAX_FACETS).unwrap();
    let n = 4000;
    let hits = (0..n)
        .filter(|_| {
            let p: Vec<f64> = (0..3).map(|_| r.gen_range(0.0..1.0)).collect();
            hull_membership(&pts, &p).is_some()
        })
        .count();
    let est = hits as f64 / n as f64;
    let sigma = (est * (1.0 - est) / n as f64).sqrt();
    assert!(
        (h.volume - est).abs() < 5.0 * sigma,
        "hull {} mc {}",
        h.volume,
        est
    );
    for (i, p) in pts.iter().enumerate() {
        let others: Vec<Vec<f64>> = pts
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, q)| q.clone())
            .collect();
        let interior = hull_membership(&others, p).is_some();
        assert_eq!(h.vertices.contains(&i), !interior);
    }
}

#[test]
fn flat_point_sets_have_no_hull() {
    let pts = vec![
        vec![0.0, 0.0, 0.0],
        vec![1.0, 0.0, 0.0],
        vec![0.0, 1.0, 0.0],
        vec![1.0, 1.0, 0.0],
        vec![0.3, 0.3, 0.0],
    ];
    assert!(convex_hull(&pts, MAX_FACETS).is_none_or(|h| h.volume.abs() < 1e-12));
}
