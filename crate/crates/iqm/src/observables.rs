//! Interval-valued quantities over parcels.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::{c, sigma_x, sigma_z, CMat, DensityMatrix, HermitianOperator};
use crate::parcel::{HyperRectParcel, Parcel, VertexParcel};

/// Closed numerical interval; `degenerate` marks the singleton convention.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealInterval {
    pub lo: f64,
    pub hi: f64,
    pub degenerate: bool,
}

impl RealInterval {
    pub fn new(lo: f64, hi: f64) -> Self {
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        Self {
            lo,
            hi,
            degenerate: lo == hi,
        }
    }

    /// Collapses endpoints closer than `tol` into a singleton.
    pub fn snapped(lo: f64, hi: f64, tol: f64) -> Self {
        if (hi - lo).abs() <= tol {
            let m = 0.5 * (lo + hi);
            Self {
                lo: m,
                hi: m,
                degenerate: true,
            }
        } else {
            Self::new(lo, hi)
        }
    }

    pub fn point(v: f64) -> Self {
        Self {
            lo: v,
            hi: v,
            degenerate: true,
        }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn center(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn contains_interval(&self, other: &RealInterval, tol: f64) -> bool {
        self.lo <= other.lo + tol && other.hi <= self.hi + tol
    }

    pub fn clamp_to(&self, lo: f64, hi: f64) -> Self {
        let a = self.lo.max(lo).min(hi);
        let b = self.hi.min(hi).max(lo);
        Self {
            lo: a,
            hi: b,
            degenerate: a == b,
        }
    }
}

const DEGENERATE_TOL: f64 = 1e-12;

/// The closed-form box interval Tr(a)/d + Σ_j (c_j⁺ lo_j + c_j⁻ hi_j), … .
pub fn expectation_interval_hrep(
    p: &HyperRectParcel,
    a: &HermitianOperator,
) -> Result<RealInterval> {
    if a.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: a.dim(),
        });
    }
    let (a0, cs) = p.basis().affine_coeffs(a);
    let mut lo = a0;
    let mut hi = a0;
    for (j, cj) in cs.iter().enumerate() {
        let (pos, neg) = (cj.max(0.0), cj.min(0.0));
        lo += pos * p.lo()[j] + neg * p.hi()[j];
        hi += pos * p.hi()[j] + neg * p.lo()[j];
    }
    Ok(RealInterval::snapped(lo, hi, DEGENERATE_TOL))
}

pub fn expectation_interval_vrep(p: &VertexParcel, a: &HermitianOperator) -> Result<RealInterval> {
    if a.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: a.dim(),
        });
    }
    let vals: Vec<f64> = p.vertices().iter().map(|v| v.expect(a)).collect();
    let lo = vals.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(RealInterval::snapped(lo, hi, DEGENERATE_TOL))
}

/// Expectation interval intersected with the spectral range of `a`.
pub fn expectation_interval(p: &Parcel, a: &HermitianOperator) -> Result<RealInterval> {
    let raw = match p {
        Parcel::Hyper(h) => expectation_interval_hrep(h, a)?,
        Parcel::Vertex(v) => expectation_interval_vrep(v, a)?,
    };
    let ev = a.eigenvalues();
    Ok(raw.clamp_to(ev[0], ev[ev.len() - 1]))
}

pub fn check_effect(e: &HermitianOperator) -> Result<()> {
    let ev = e.eigenvalues();
    let (min, max) = (ev[0], ev[ev.len() - 1]);
    if min < -1e-10 || max > 1.0 + 1e-10 {
        return Err(Error::NotEffect { min, max });
    }
    Ok(())
}

pub fn probability_interval(p: &Parcel, e: &HermitianOperator) -> Result<RealInterval> {
    check_effect(e)?;
    Ok(expectation_interval(p, e)?.clamp_to(0.0, 1.0))
}

fn mix(p: &VertexParcel, w: &[f64]) -> HermitianOperator {
    let d = p.dim();
    let mut m = CMat::zeros(d, d);
    for (wi, v) in w.iter().zip(p.vertices()) {
        if *wi != 0.0 {
            m += v.matrix() * c(*wi, 0.0);
        }
    }
    HermitianOperator::from_matrix_unchecked(m)
}

pub const ASCENT_TOL: f64 = 1e-8;
pub const ASCENT_MAX_ITER: usize = 500;

/// Outcome of a conditional-gradient ascent: the best value found is a lower
/// bound on the true maximum.
#[derive(Debug, Clone)]
pub struct Ascent {
    pub value: f64,
    pub weights: Vec<f64>,
    pub iterations: usize,
    pub gap: f64,
}

fn variance_ascent(s: &[f64], m: &[f64]) -> Ascent {
    let n = s.len();
    let var = |w: &[f64]| {
        let es: f64 = w.iter().zip(s).map(|(a, b)| a * b).sum();
        let em: f64 = w.iter().zip(m).map(|(a, b)| a * b).sum();
        es - em * em
    };
    let start = (0..n)
        .max_by(|&a, &b| (s[a] - m[a] * m[a]).total_cmp(&(s[b] - m[b] * m[b])))
        .unwrap();
    let mut w = vec![0.0; n];
    w[start] = 1.0;
    let mut gap = f64::INFINITY;
    let mut it = 0;
    while it < ASCENT_MAX_ITER {
        it += 1;
        let em: f64 = w.iter().zip(m).map(|(a, b)| a * b).sum();
        let g: Vec<f64> = (0..n).map(|i| s[i] - 2.0 * em * m[i]).collect();
        let k = (0..n).max_by(|&a, &b| g[a].total_cmp(&g[b])).unwrap();
        let gw: f64 = w.iter().zip(&g).map(|(a, b)| a * b).sum();
        gap = g[k] - gw;
        if gap < ASCENT_TOL {
            break;
        }
        // V((1-γ)w + γe_k) = A + Bγ - Cγ² along the segment
        let es: f64 = w.iter().zip(s).map(|(a, b)| a * b).sum();
        let dm = m[k] - em;
        let b = (s[k] - es) - 2.0 * em * dm;
        let cc = dm * dm;
        let gamma = if cc > 0.0 {
            (b / (2.0 * cc)).clamp(0.0, 1.0)
        } else if b > 0.0 {
            1.0
        } else {
            0.0
        };
        if gamma == 0.0 {
            break;
        }
        for (i, wi) in w.iter_mut().enumerate() {
            *wi *= 1.0 - gamma;
            if i == k {
                *wi += gamma;
            }
        }
    }
    Ascent {
        value: var(&w),
        weights: w,
        iterations: it,
        gap,
    }
}

/// Standard-deviation interval. The upper endpoint is a lower bound on the
/// true maximum, found by conditional-gradient ascent over vertex weights.
pub fn stddev_interval(p: &VertexParcel, a: &HermitianOperator) -> Result<RealInterval> {
    Ok(stddev_interval_detail(p, a)?.0)
}

pub fn stddev_interval_detail(
    p: &VertexParcel,
    a: &HermitianOperator,
) -> Result<(RealInterval, Ascent)> {
    if a.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: a.dim(),
        });
    }
    let a2 = HermitianOperator::from_matrix_unchecked(a.matrix() * a.matrix());
    let s: Vec<f64> = p.vertices().iter().map(|v| v.expect(&a2)).collect();
    let m: Vec<f64> = p.vertices().iter().map(|v| v.expect(a)).collect();
    let lo_var = s
        .iter()
        .zip(&m)
        .map(|(x, y)| x - y * y)
        .fold(f64::INFINITY, f64::min);
    let asc = variance_ascent(&s, &m);
    let lo = lo_var.max(0.0).sqrt();
    let hi = asc.value.max(lo_var).max(0.0).sqrt();
    Ok((RealInterval::snapped(lo, hi, DEGENERATE_TOL), asc))
}

/// Half the smallest |Tr(ρ[a,b])| over the closed hull.
pub fn uncertainty_bound(
    p: &VertexParcel,
    a: &HermitianOperator,
    b: &HermitianOperator,
) -> Result<f64> {
    if a.dim() != p.dim() || b.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: a.dim().max(b.dim()),
        });
    }
    let k = a.matrix() * b.matrix() - b.matrix() * a.matrix();
    let vals: Vec<f64> = p
        .vertices()
        .iter()
        .map(|v| (v.matrix() * &k).trace().im)
        .collect();
    let lo = vals.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if lo <= 0.0 && hi >= 0.0 {
        return Ok(0.0);
    }
    Ok(0.5 * lo.abs().min(hi.abs()))
}

fn entropy_of(op: &HermitianOperator) -> f64 {
    op.eigenvalues()
        .iter()
        .filter(|&&l| l > 1e-300)
        .map(|&l| -l * l.ln())
        .sum()
}

fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > tol {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

fn entropy_ascent(p: &VertexParcel) -> Ascent {
    let n = p.vertices().len();
    let ent: Vec<f64> = p.vertices().iter().map(|v| v.entropy()).collect();
    let start = (0..n).max_by(|&a, &b| ent[a].total_cmp(&ent[b])).unwrap();
    let mut w = vec![0.0; n];
    w[start] = 1.0;
    let mut value = ent[start];
    let mut gap = f64::INFINITY;
    let mut it = 0;
    while it < ASCENT_MAX_ITER {
        it += 1;
        let rho = mix(p, &w);
        let log = rho.map_spectrum(|l| l.max(1e-15).ln());
        // ∂S/∂w_i = −Tr(v_i ln ρ) − 1; the constant cancels in the gap
        let g: Vec<f64> = p.vertices().iter().map(|v| -v.expect(&log)).collect();
        let k = (0..n).max_by(|&a, &b| g[a].total_cmp(&g[b])).unwrap();
        let gw: f64 = w.iter().zip(&g).map(|(a, b)| a * b).sum();
        gap = g[k] - gw;
        if gap < ASCENT_TOL {
            break;
        }
        let vk = p.vertices()[k].op();
        let f = |gamma: f64| entropy_of(&rho.scale(1.0 - gamma).axpy(gamma, vk));
        let (gamma, val) = golden_max(f, 0.0, 1.0, 1e-10);
        if val <= value + 1e-15 {
            break;
        }
        value = val;
        for (i, wi) in w.iter_mut().enumerate() {
            *wi *= 1.0 - gamma;
            if i == k {
                *wi += gamma;
            }
        }
    }
    Ascent {
        value,
        weights: w,
        iterations: it,
        gap,
    }
}

/// Von Neumann entropy interval (natural log). The upper endpoint is a lower
/// bound on the true maximum.
pub fn entropy_interval(p: &VertexParcel) -> RealInterval {
    entropy_interval_detail(p).0
}

pub fn entropy_interval_detail(p: &VertexParcel) -> (RealInterval, Ascent) {
    let lo = p
        .vertices()
        .iter()
        .map(|v| v.entropy())
        .fold(f64::INFINITY, f64::min);
    let asc = entropy_ascent(p);
    (
        RealInterval::snapped(lo, asc.value.max(lo), DEGENERATE_TOL),
        asc,
    )
}

pub fn fidelity_interval(p: &Parcel, phi: &DensityMatrix) -> Result<RealInterval> {
    let purity = phi.purity();
    if (purity - 1.0).abs() > 1e-9 {
        return Err(Error::NotPure { purity });
    }
    if phi.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: phi.dim(),
        });
    }
    expectation_interval(p, phi.op())
}

pub fn correlation_interval(
    p: &Parcel,
    a: &HermitianOperator,
    b: &HermitianOperator,
) -> Result<RealInterval> {
    let d = a.dim() * b.dim();
    if d != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: d,
        });
    }
    expectation_interval(p, &a.kron(b))
}

/// S = A⊗B + A⊗B′ + A′⊗B − A′⊗B′ with A = σx, A′ = σz,
/// B = (σx+σz)/√2, B′ = (σx−σz)/√2.
pub fn chsh_operator() -> HermitianOperator {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let (x, z) = (sigma_x(), sigma_z());
    let (a, a2) = (&x, &z);
    let b = x.add(&z).scale(r);
    let b2 = x.sub(&z).scale(r);
    a.kron(&b)
        .add(&a.kron(&b2))
        .add(&a2.kron(&b))
        .sub(&a2.kron(&b2))
}

pub fn chsh_interval(p: &Parcel) -> Result<RealInterval> {
    if p.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: p.dim(),
        });
    }
    expectation_interval(p, &chsh_operator())
}

pub fn witness_interval(p: &Parcel, w: &HermitianOperator) -> Result<RealInterval> {
    expectation_interval(p, w)
}
