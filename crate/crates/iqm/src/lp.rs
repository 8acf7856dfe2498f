//! Dense phase-one simplex for feasibility problems with few rows and many
//! columns: convex-hull membership and intersection of two hulls.

const PIVOT_TOL: f64 = 1e-11;
const COST_TOL: f64 = 1e-11;
const FEAS_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub enum Feasibility {
    /// A non-negative solution of A x = b.
    Feasible(Vec<f64>),
    /// Farkas certificate: yᵀA ≤ 0 on every column while yᵀb > 0.
    Infeasible { y: Vec<f64>, residual: f64 },
}

/// Column counts above which [`phase_one`] works on a growing subset.
const SIFT_THRESHOLD: usize = 2048;
const SIFT_BATCH: usize = 256;

/// Decides whether {x ≥ 0 : A x = b} is non-empty. `cols[j]` is column j.
///
/// Wide problems are solved on a subset of columns; a Farkas vector of the
/// subset is checked against every column and violated columns are added
/// until the vector certifies the full problem or the subset is feasible.
pub fn phase_one(cols: &[Vec<f64>], b: &[f64]) -> Feasibility {
    let n = cols.len();
    if n <= SIFT_THRESHOLD {
        return phase_one_dense(cols, b);
    }
    let m = b.len();
    let mut in_set = vec![false; n];
    let stride = n.div_ceil(SIFT_BATCH);
    for j in (0..n).step_by(stride) {
        in_set[j] = true;
    }
    for i in 0..m {
        let (mut lo, mut hi) = (0, 0);
        for (j, col) in cols.iter().enumerate() {
            if col[i] < cols[lo][i] {
                lo = j;
            }
            if col[i] > cols[hi][i] {
                hi = j;
            }
        }
        in_set[lo] = true;
        in_set[hi] = true;
    }
    loop {
        let idx: Vec<usize> = (0..n).filter(|&j| in_set[j]).collect();
        let sub: Vec<Vec<f64>> = idx.iter().map(|&j| cols[j].clone()).collect();
        match phase_one_dense(&sub, b) {
            Feasibility::Feasible(xs) => {
                let mut x = vec![0.0; n];
                for (&j, v) in idx.iter().zip(xs) {
                    x[j] = v;
                }
                return Feasibility::Feasible(x);
            }
            Feasibility::Infeasible { y, residual } => {
                let scale = y.iter().fold(0.0f64, |a, v| a.max(v.abs())).max(1.0);
                let score = crate::exec::map_range(n, |j| {
                    if in_set[j] {
                        f64::NEG_INFINITY
                    } else {
                        cols[j].iter().zip(&y).map(|(a, w)| a * w).sum::<f64>()
                    }
                });
                let mut violated: Vec<usize> =
                    (0..n).filter(|&j| score[j] > FEAS_TOL * scale).collect();
                if violated.is_empty() {
                    return Feasibility::Infeasible { y, residual };
                }
                violated.sort_by(|&a, &b| score[b].total_cmp(&score[a]));
                for &j in violated.iter().take(SIFT_BATCH) {
                    in_set[j] = true;
                }
            }
        }
    }
}

fn phase_one_dense(cols: &[Vec<f64>], b: &[f64]) -> Feasibility {
    let m = b.len();
    let n = cols.len();
    let width = n + m + 1;
    let mut t = vec![0.0; m * width];
    let mut flip = vec![1.0; m];
    for i in 0..m {
        if b[i] < 0.0 {
            flip[i] = -1.0;
        }
        let row = &mut t[i * width..(i + 1) * width];
        for (j, col) in cols.iter().enumerate() {
            row[j] = flip[i] * col[i];
        }
        row[n + i] = 1.0;
        row[width - 1] = flip[i] * b[i];
    }
    // reduced costs for minimizing the sum of artificials
    let mut d = vec![0.0; width];
    for i in 0..m {
        for j in 0..n {
            d[j] -= t[i * width + j];
        }
        d[width - 1] -= t[i * width + width - 1];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    let max_iter = 50 * (n + m) + 1000;
    let mut degenerate_run = 0usize;
    for _ in 0..max_iter {
        let bland = degenerate_run > 30;
        let mut enter = None;
        let mut best = -COST_TOL;
        for (j, &dj) in d.iter().enumerate().take(n + m) {
            if dj < best {
                enter = Some(j);
                if bland {
                    break;
                }
                best = dj;
            }
        }
        let Some(q) = enter else { break };
        let mut leave: Option<usize> = None;
        let mut ratio = f64::INFINITY;
        for i in 0..m {
            let a = t[i * width + q];
            if a > PIVOT_TOL {
                let r = t[i * width + width - 1] / a;
                let take = match leave {
                    None => true,
                    Some(l) => {
                        r < ratio - 1e-14
                            || (bland && (r - ratio).abs() <= 1e-14 && basis[i] < basis[l])
                    }
                };
                if take {
                    ratio = r;
                    leave = Some(i);
                }
            }
        }
        let Some(p) = leave else {
            // unbounded direction cannot occur for a bounded-below objective
            break;
        };
        if ratio.abs() < 1e-14 {
            degenerate_run += 1;
        } else {
            degenerate_run = 0;
        }
        pivot(&mut t, &mut d, width, m, p, q);
        basis[p] = q;
    }
    let residual = -d[width - 1];
    if residual <= FEAS_TOL {
        let mut x = vec![0.0; n];
        for (i, &bv) in basis.iter().enumerate() {
            if bv < n {
                x[bv] = t[i * width + width - 1].max(0.0);
            }
        }
        Feasibility::Feasible(x)
    } else {
        let y = (0..m).map(|i| flip[i] * (1.0 - d[n + i])).collect();
        Feasibility::Infeasible { y, residual }
    }
}

fn pivot(t: &mut [f64], d: &mut [f64], width: usize, m: usize, p: usize, q: usize) {
    let piv = t[p * width + q];
    for v in &mut t[p * width..(p + 1) * width] {
        *v /= piv;
    }
    let prow: Vec<f64> = t[p * width..(p + 1) * width].to_vec();
    for i in 0..m {
        if i == p {
            continue;
        }
        let f = t[i * width + q];
        if f != 0.0 {
            let row = &mut t[i * width..(i + 1) * width];
            for (r, pv) in row.iter_mut().zip(&prow) {
                *r -= f * pv;
            }
        }
    }
    let f = d[q];
    if f != 0.0 {
        for (r, pv) in d.iter_mut().zip(&prow) {
            *r -= f * pv;
        }
    }
}

/// Convex weights expressing `p` in the hull of `points`, if it lies there.
pub fn hull_membership(points: &[Vec<f64>], p: &[f64]) -> Option<Vec<f64>> {
    let k = p.len();
    let cols: Vec<Vec<f64>> = points
        .iter()
        .map(|v| {
            let mut c: Vec<f64> = v.iter().zip(p).map(|(a, b)| a - b).collect();
            c.push(1.0);
            c
        })
        .collect();
    let mut b = vec![0.0; k];
    b.push(1.0);
    match phase_one(&cols, &b) {
        Feasibility::Feasible(x) => Some(x),
        Feasibility::Infeasible { .. } => None,
    }
}

#[derive(Debug, Clone)]
pub enum HullPair {
    /// Weights on the first and second point sets realizing a common point.
    Intersecting { lambda: Vec<f64>, mu: Vec<f64> },
    /// h·v ≤ `max_first` on the first set and h·w ≥ `min_second` on the second.
    Separated {
        h: Vec<f64>,
        max_first: f64,
        min_second: f64,
    },
    /// The solver reported infeasibility but the recovered functional does not
    /// separate the data.
    Uncertified { h: Vec<f64>, gap: f64 },
}

pub fn hull_intersection(first: &[Vec<f64>], second: &[Vec<f64>]) -> HullPair {
    let k = first[0].len();
    let total = (first.len() + second.len()) as f64;
    let mut origin = vec![0.0; k];
    for v in first.iter().chain(second) {
        for (o, x) in origin.iter_mut().zip(v) {
            *o += x / total;
        }
    }
    let mut cols = Vec::with_capacity(first.len() + second.len());
    for v in first {
        let mut c: Vec<f64> = v.iter().zip(&origin).map(|(a, o)| a - o).collect();
        c.push(1.0);
        c.push(0.0);
        cols.push(c);
    }
    for w in second {
        let mut c: Vec<f64> = w.iter().zip(&origin).map(|(a, o)| o - a).collect();
        c.push(0.0);
        c.push(1.0);
        cols.push(c);
    }
    let mut b = vec![0.0; k];
    b.push(1.0);
    b.push(1.0);
    match phase_one(&cols, &b) {
        Feasibility::Feasible(x) => {
            let (l, m) = x.split_at(first.len());
            HullPair::Intersecting {
                lambda: l.to_vec(),
                mu: m.to_vec(),
            }
        }
        Feasibility::Infeasible { y, .. } => {
            let h: Vec<f64> = y[..k].to_vec();
            let dot = |v: &Vec<f64>| v.iter().zip(&h).map(|(a, b)| a * b).sum::<f64>();
            let max_first = first.iter().map(dot).fold(f64::NEG_INFINITY, f64::max);
            let min_second = second.iter().map(dot).fold(f64::INFINITY, f64::min);
            if min_second > max_first {
                HullPair::Separated {
                    h,
                    max_first,
                    min_second,
                }
            } else {
                HullPair::Uncertified {
                    gap: min_second - max_first,
                    h,
                }
            }
        }
    }
}
