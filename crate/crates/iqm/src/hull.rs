//! Convex hulls and volumes of full-dimensional point sets in ℝᵏ
//! (incremental quickhull with simplicial facets).

use std::collections::HashMap;

use nalgebra::DMatrix;

use crate::exec;

/// Dimension above which hulls are not attempted, except for simplices.
pub const MAX_HULL_DIM: usize = 9;
pub const MAX_FACETS: usize = 400_000;

#[derive(Debug, Clone)]
struct Facet {
    verts: Vec<usize>,
    normal: Vec<f64>,
    offset: f64,
    outside: Vec<usize>,
    alive: bool,
}

#[derive(Debug, Clone)]
pub struct Hull {
    pub dim: usize,
    /// Indices of input points that are hull vertices, ascending.
    pub vertices: Vec<usize>,
    pub facets: Vec<Vec<usize>>,
    pub volume: f64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|v| v as f64).product()
}

/// |det(p_1 − p_0, …, p_k − p_0)| / k!
pub fn simplex_volume(pts: &[&[f64]]) -> f64 {
    let k = pts.len() - 1;
    if k == 0 {
        return 0.0;
    }
    let m = DMatrix::from_fn(k, k, |i, j| pts[i + 1][j] - pts[0][j]);
    m.determinant().abs() / factorial(k)
}

fn hyperplane(points: &[Vec<f64>], verts: &[usize], interior: &[f64]) -> Option<(Vec<f64>, f64)> {
    let k = interior.len();
    let p0 = &points[verts[0]];
    let mut a = DMatrix::<f64>::zeros(k, k);
    for (r, &v) in verts.iter().enumerate().skip(1) {
        for j in 0..k {
            a[(r - 1, j)] = points[v][j] - p0[j];
        }
    }
    let svd = a.svd(false, true);
    let vt = svd.v_t?;
    let (imin, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|x, y| x.1.total_cmp(y.1))?;
    let mut n: Vec<f64> = (0..k).map(|j| vt[(imin, j)]).collect();
    let norm = n.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm == 0.0 {
        return None;
    }
    n.iter_mut().for_each(|x| *x /= norm);
    let mut off = dot(&n, p0);
    if dot(&n, interior) > off {
        n.iter_mut().for_each(|x| *x = -*x);
        off = -off;
    }
    Some((n, off))
}

fn initial_simplex(points: &[Vec<f64>], eps: f64) -> Option<Vec<usize>> {
    let k = points[0].len();
    let (mut lo, mut hi) = (0, 0);
    for (i, p) in points.iter().enumerate() {
        if p[0] < points[lo][0] {
            lo = i;
        }
        if p[0] > points[hi][0] {
            hi = i;
        }
    }
    if lo == hi {
        // spread along another axis
        let far = (0..points.len()).max_by(|&a, &b| {
            let da: f64 = points[a]
                .iter()
                .zip(&points[0])
                .map(|(x, y)| (x - y).powi(2))
                .sum();
            let db: f64 = points[b]
                .iter()
                .zip(&points[0])
                .map(|(x, y)| (x - y).powi(2))
                .sum();
            da.total_cmp(&db)
        })?;
        lo = 0;
        hi = far;
    }
    let mut chosen = vec![lo, hi];
    let mut dirs: Vec<Vec<f64>> = Vec::new();
    let first: Vec<f64> = points[hi]
        .iter()
        .zip(&points[lo])
        .map(|(a, b)| a - b)
        .collect();
    let n0 = first.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n0 <= eps {
        return None;
    }
    dirs.push(first.iter().map(|x| x / n0).collect());
    while chosen.len() < k + 1 {
        let mut best = (0usize, 0.0f64, Vec::new());
        for (i, p) in points.iter().enumerate() {
            let mut r: Vec<f64> = p.iter().zip(&points[lo]).map(|(a, b)| a - b).collect();
            for d in &dirs {
                let s = dot(&r, d);
                r.iter_mut().zip(d).for_each(|(x, y)| *x -= s * y);
            }
            let n = r.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n > best.1 {
                best = (i, n, r);
            }
        }
        if best.1 <= eps {
            return None;
        }
        let (i, n, r) = best;
        dirs.push(r.iter().map(|x| x / n).collect());
        chosen.push(i);
    }
    Some(chosen)
}

/// Convex hull of full-dimensional points. Returns `None` when the set is
/// degenerate, the dimension exceeds [`MAX_HULL_DIM`], or the facet count
/// exceeds `max_facets`.
pub fn convex_hull(points: &[Vec<f64>], max_facets: usize) -> Option<Hull> {
    let n = points.len();
    if n == 0 {
        return None;
    }
    let k = points[0].len();
    if k == 0 {
        return None;
    }
    if k == 1 {
        let (mut lo, mut hi) = (0, 0);
        for (i, p) in points.iter().enumerate() {
            if p[0] < points[lo][0] {
                lo = i;
            }
            if p[0] > points[hi][0] {
                hi = i;
            }
        }
        let mut vertices = vec![lo, hi];
        vertices.sort_unstable();
        vertices.dedup();
        return Some(Hull {
            dim: 1,
            volume: points[hi][0] - points[lo][0],
            facets: vec![vec![lo], vec![hi]],
            vertices,
        });
    }
    let extent = points
        .iter()
        .flat_map(|p| p.iter())
        .fold(0.0f64, |a, v| a.max(v.abs()))
        .max(1e-300);
    let eps = 1e-11 * extent;
    let simplex = initial_simplex(points, eps * 10.0)?;
    if n == k + 1 {
        let pts: Vec<&[f64]> = simplex.iter().map(|&i| points[i].as_slice()).collect();
        let mut vertices = simplex.clone();
        vertices.sort_unstable();
        return Some(Hull {
            dim: k,
            volume: simplex_volume(&pts),
            facets: vec![],
            vertices,
        });
    }
    if k > MAX_HULL_DIM {
        return None;
    }
    let mut interior = vec![0.0; k];
    for &i in &simplex {
        for j in 0..k {
            interior[j] += points[i][j] / (k + 1) as f64;
        }
    }
    let mut facets: Vec<Facet> = Vec::new();
    for skip in 0..=k {
        let verts: Vec<usize> = simplex
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != skip)
            .map(|(_, &v)| v)
            .collect();
        let (normal, offset) = hyperplane(points, &verts, &interior)?;
        facets.push(Facet {
            verts,
            normal,
            offset,
            outside: vec![],
            alive: true,
        });
    }
    let in_simplex: Vec<bool> = {
        let mut v = vec![false; n];
        simplex.iter().for_each(|&i| v[i] = true);
        v
    };
    let assignment = exec::map_range(n, |i| {
        if in_simplex[i] {
            return None;
        }
        facets
            .iter()
            .position(|f| dot(&f.normal, &points[i]) - f.offset > eps)
    });
    for (i, a) in assignment.into_iter().enumerate() {
        if let Some(fi) = a {
            facets[fi].outside.push(i);
        }
    }
    let mut alive_count = facets.len();
    let mut cursor = 0usize;
    loop {
        while cursor < facets.len() && (!facets[cursor].alive || facets[cursor].outside.is_empty())
        {
            cursor += 1;
        }
        if cursor >= facets.len() {
            break;
        }
        let f = &facets[cursor];
        let apex = *f
            .outside
            .iter()
            .max_by(|&&a, &&b| {
                (dot(&f.normal, &points[a]) - f.offset)
                    .total_cmp(&(dot(&f.normal, &points[b]) - f.offset))
            })
            .unwrap();
        let p = &points[apex];
        let visible: Vec<usize> = (0..facets.len())
            .filter(|&i| facets[i].alive && dot(&facets[i].normal, p) - facets[i].offset > eps)
            .collect();
        let mut ridges: HashMap<Vec<usize>, usize> = HashMap::new();
        for &fi in &visible {
            let verts = &facets[fi].verts;
            for skip in 0..verts.len() {
                let mut r: Vec<usize> = verts
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                r.sort_unstable();
                *ridges.entry(r).or_insert(0) += 1;
            }
        }
        let mut orphans: Vec<usize> = Vec::new();
        for &fi in &visible {
            facets[fi].alive = false;
            orphans.extend(facets[fi].outside.drain(..).filter(|&q| q != apex));
        }
        alive_count -= visible.len();
        let first_new = facets.len();
        let mut horizon: Vec<Vec<usize>> = ridges
            .into_iter()
            .filter(|(_, c)| *c == 1)
            .map(|(r, _)| r)
            .collect();
        horizon.sort();
        for mut r in horizon {
            r.push(apex);
            let Some((normal, offset)) = hyperplane(points, &r, &interior) else {
                continue;
            };
            facets.push(Facet {
                verts: r,
                normal,
                offset,
                outside: vec![],
                alive: true,
            });
            alive_count += 1;
        }
        if alive_count > max_facets {
            return None;
        }
        for q in orphans {
            let pq = &points[q];
            if let Some(fi) = (first_new..facets.len())
                .find(|&fi| dot(&facets[fi].normal, pq) - facets[fi].offset > eps)
            {
                facets[fi].outside.push(q);
            }
        }
    }
    let live: Vec<&Facet> = facets.iter().filter(|f| f.alive).collect();
    let kf = factorial(k);
    let parts = exec::map(&live, |f| {
        let m = DMatrix::from_fn(k, k, |i, j| points[f.verts[i]][j] - interior[j]);
        m.determinant().abs() / kf
    });
    let volume = parts.iter().sum();
    let mut vertices: Vec<usize> = live.iter().flat_map(|f| f.verts.iter().copied()).collect();
    vertices.sort_unstable();
    vertices.dedup();
    Some(Hull {
        dim: k,
        vertices,
        facets: live.iter().map(|f| f.verts.clone()).collect(),
        volume,
    })
}
