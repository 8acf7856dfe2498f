//! Single and double parcels in hyper-rectangle and vertex form.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exec;
use crate::hull;
use crate::lp::{self, HullPair};
use crate::operator::{
    c, gell_mann_basis, span_basis, CMat, DensityMatrix, HermitianOperator, ObservableBasis,
};

/// Width of the band around an interval endpoint reported as boundary.
pub const BOUNDARY_BAND: f64 = 1e-12;
/// Singular-value threshold deciding affine dimension.
pub const RANK_TOL: f64 = 1e-9;
/// Membership tolerance for convex-hull tests.
pub const HULL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Inside,
    Boundary,
    Outside,
}

/// How box corners outside the state space are brought back.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Projection {
    /// Keep reconstructions as they are, positive or not.
    None,
    /// Slide each corner toward a positive-definite point of the box until it
    /// reaches the boundary of the state space; stays inside the box.
    #[default]
    Radial,
    /// Clip negative eigenvalues and renormalize the trace.
    EigenClip,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Volume {
    /// `None` when the hull is too large to triangulate.
    pub value: Option<f64>,
    pub dim: usize,
}

impl Volume {
    pub fn get(&self) -> Result<f64> {
        self.value.ok_or(Error::VolumeUnavailable {
            dim: self.dim,
            vertices: 0,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HyperRectParcel {
    basis: ObservableBasis,
    lo: Vec<f64>,
    hi: Vec<f64>,
}

fn corner_index_coords(lo: &[f64], hi: &[f64], free: &[usize], code: usize) -> Vec<f64> {
    let mut x = lo.to_vec();
    for (bit, &j) in free.iter().enumerate() {
        if (code >> bit) & 1 == 1 {
            x[j] = hi[j];
        }
    }
    x
}

impl HyperRectParcel {
    pub fn new(basis: ObservableBasis, lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.len() != basis.len() || hi.len() != basis.len() {
            return Err(Error::InvalidParcel(format!(
                "{} bounds for {} observables",
                lo.len().min(hi.len()),
                basis.len()
            )));
        }
        for (j, (a, b)) in lo.iter().zip(&hi).enumerate() {
            if !(a <= b) {
                return Err(Error::InvalidParcel(format!(
                    "interval {j} has lo {a} > hi {b}"
                )));
            }
        }
        Ok(Self { basis, lo, hi })
    }

    pub fn basis(&self) -> &ObservableBasis {
        &self.basis
    }

    pub fn lo(&self) -> &[f64] {
        &self.lo
    }

    pub fn hi(&self) -> &[f64] {
        &self.hi
    }

    pub fn len(&self) -> usize {
        self.lo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lo.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn is_degenerate(&self, j: usize) -> bool {
        self.lo[j] == self.hi[j]
    }

    pub fn widths(&self) -> Vec<f64> {
        self.lo.iter().zip(&self.hi).map(|(a, b)| b - a).collect()
    }

    pub fn center_coords(&self) -> Vec<f64> {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(a, b)| 0.5 * (a + b))
            .collect()
    }

    pub fn center_operator(&self) -> HermitianOperator {
        self.basis.reconstruct(&self.center_coords())
    }

    /// Strict membership; values within [`BOUNDARY_BAND`] of an open
    /// endpoint are boundary points. Degenerate coordinates require equality
    /// within the band.
    pub fn membership(&self, rho: &DensityMatrix) -> Membership {
        self.membership_coords(&self.basis.coords_of(rho))
    }

    pub fn membership_coords(&self, x: &[f64]) -> Membership {
        let mut state = Membership::Inside;
        for ((&a, &b), &v) in self.lo.iter().zip(&self.hi).zip(x) {
            if a == b {
                if (v - a).abs() > BOUNDARY_BAND {
                    return Membership::Outside;
                }
                continue;
            }
            if v < a - BOUNDARY_BAND || v > b + BOUNDARY_BAND {
                return Membership::Outside;
            }
            if (v - a).abs() <= BOUNDARY_BAND || (v - b).abs() <= BOUNDARY_BAND {
                state = Membership::Boundary;
            }
        }
        state
    }

    pub fn contains(&self, rho: &DensityMatrix) -> bool {
        self.membership(rho) == Membership::Inside
    }

    fn free_coords(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&j| !self.is_degenerate(j))
            .collect()
    }

    /// Coordinates of the 2^m corners (degenerate coordinates held fixed).
    pub fn corners(&self) -> Vec<Vec<f64>> {
        let free = self.free_coords();
        assert!(free.len() < 31, "too many corners");
        exec::map_range(1usize << free.len(), |code| {
            corner_index_coords(&self.lo, &self.hi, &free, code)
        })
    }

    pub fn corner_operators(&self) -> Vec<HermitianOperator> {
        let corners = self.corners();
        exec::map(&corners, |x| self.basis.reconstruct(x))
    }

    /// Product of widths over non-degenerate coordinates.
    pub fn volume(&self) -> f64 {
        self.widths().iter().filter(|w| **w > 0.0).product()
    }

    /// Largest trace-norm distance from the center to a corner; half the
    /// trace-norm diameter of the (centrally symmetric) box.
    pub fn trace_radius(&self) -> f64 {
        let center = self.center_operator();
        let corners = self.corners();
        let d = exec::map(&corners, |x| {
            self.basis.reconstruct(x).sub(&center).trace_norm()
        });
        d.into_iter().fold(0.0, f64::max)
    }

    fn physical_center(&self) -> Result<(HermitianOperator, bool)> {
        let c0 = self.center_operator();
        if c0.min_eigenvalue() > 1e-9 {
            return Ok((c0, false));
        }
        let d = self.dim();
        let q = self
            .basis
            .coords(&HermitianOperator::identity(d).scale(1.0 / d as f64));
        let mid = self.center_coords();
        let mut s: f64 = 1.0;
        for j in 0..self.len() {
            let dev = (mid[j] - q[j]).abs();
            if dev > 1e-15 {
                s = s.min(0.5 * 0.5 * (self.hi[j] - self.lo[j]) / dev);
            }
        }
        let rc = c0
            .scale(1.0 - s)
            .add(&HermitianOperator::identity(d).scale(s / d as f64));
        if s <= 0.0 || rc.min_eigenvalue() <= 1e-14 {
            return Err(Error::Physicality(
                "box contains no positive-definite state".into(),
            ));
        }
        Ok((rc, true))
    }

    /// Vertex form by corner enumeration. Returns the parcel and the number of
    /// corners that had to be moved into the state space.
    pub fn to_vrep(&self, projection: Projection) -> Result<(VertexParcel, usize)> {
        let corners = self.corner_operators();
        let (verts, moved) = match projection {
            Projection::None => (
                corners
                    .into_iter()
                    .map(DensityMatrix::new_unchecked)
                    .collect::<Vec<_>>(),
                0,
            ),
            Projection::EigenClip => {
                let out = exec::map(&corners, |x| {
                    if x.min_eigenvalue() >= -1e-12 {
                        (DensityMatrix::new_unchecked(x.clone()), false)
                    } else {
                        let y = x.map_spectrum(|v| v.max(0.0));
                        let t = y.trace();
                        (DensityMatrix::new_unchecked(y.scale(1.0 / t)), true)
                    }
                });
                let moved = out.iter().filter(|(_, m)| *m).count();
                (out.into_iter().map(|(v, _)| v).collect(), moved)
            }
            Projection::Radial => {
                let all_fixed = (0..self.len()).all(|j| self.is_degenerate(j));
                if all_fixed {
                    let c0 = self.center_operator();
                    if c0.min_eigenvalue() < -crate::operator::PSD_TOL {
                        return Err(Error::Physicality("singleton box is not a state".into()));
                    }
                    (vec![DensityMatrix::new_unchecked(c0)], 0)
                } else {
                    let (rc, mixed) = self.physical_center()?;
                    let inv_sqrt = rc.map_spectrum(|v| 1.0 / v.sqrt());
                    let out = exec::map(&corners, |x| radial_project(x, &rc, &inv_sqrt));
                    let moved = out.iter().filter(|(_, m)| *m).count();
                    let mut verts: Vec<DensityMatrix> = out.into_iter().map(|(v, _)| v).collect();
                    if mixed {
                        let c0 = self.center_operator();
                        if c0.min_eigenvalue() >= -crate::operator::PSD_TOL {
                            verts.push(DensityMatrix::new_unchecked(c0));
                        }
                    }
                    (verts, moved)
                }
            }
        };
        Ok((VertexParcel::new(verts)?, moved))
    }

    pub fn information(&self) -> Result<f64> {
        information_single(self.volume())
    }
}

/// Moves `x` along the segment toward `rc` until it is positive semidefinite.
fn radial_project(
    x: &HermitianOperator,
    rc: &HermitianOperator,
    rc_inv_sqrt: &HermitianOperator,
) -> (DensityMatrix, bool) {
    let dir = x.sub(rc);
    let s = HermitianOperator::from_matrix_unchecked(
        rc_inv_sqrt.matrix() * dir.matrix() * rc_inv_sqrt.matrix(),
    );
    let mu = s.min_eigenvalue();
    if mu >= -1.0 {
        return (DensityMatrix::new_unchecked(x.clone()), false);
    }
    let t = (-1.0 / mu).min(1.0);
    (DensityMatrix::new_unchecked(rc.axpy(t, &dir)), true)
}

pub fn experimental_parcel(
    rho0: &DensityMatrix,
    basis: &ObservableBasis,
    eps: &[f64],
) -> Result<HyperRectParcel> {
    if eps.len() != basis.len() {
        return Err(Error::InvalidParcel(format!(
            "{} tolerances for {} observables",
            eps.len(),
            basis.len()
        )));
    }
    if let Some(e) = eps.iter().find(|e| !(**e > 0.0)) {
        return Err(Error::OutOfRange {
            name: "eps",
            value: *e,
        });
    }
    let v = basis.coords_of(rho0);
    let lo = v.iter().zip(eps).map(|(x, e)| x - e).collect();
    let hi = v.iter().zip(eps).map(|(x, e)| x + e).collect();
    HyperRectParcel::new(basis.clone(), lo, hi)
}

/// Experimental parcel with one tolerance for all observables; `eps = 0`
/// yields the degenerate singleton box.
pub fn uniform_parcel(
    rho0: &DensityMatrix,
    basis: &ObservableBasis,
    eps: f64,
) -> Result<HyperRectParcel> {
    if eps == 0.0 {
        let v = basis.coords_of(rho0);
        return HyperRectParcel::new(basis.clone(), v.clone(), v);
    }
    experimental_parcel(rho0, basis, &vec![eps; basis.len()])
}

/// Orthonormal chart of the affine span of a point set, in traceless
/// directions.
pub fn affine_chart(dim: usize, ops: &[&HermitianOperator]) -> ObservableBasis {
    let gm = gell_mann_basis(dim);
    let m = gm.len();
    let n = ops.len();
    if n <= 1 {
        return gm.subset(&[]);
    }
    let coords: Vec<Vec<f64>> = ops.iter().map(|o| gm.coords(o)).collect();
    let mut mean = vec![0.0; m];
    for x in &coords {
        for (a, b) in mean.iter_mut().zip(x) {
            *a += b / n as f64;
        }
    }
    let x = DMatrix::from_fn(n, m, |i, j| coords[i][j] - mean[j]);
    let r = if n > m { x.qr().r() } else { x };
    let svd = r.svd(false, true);
    let vt = svd.v_t.expect("right singular vectors requested");
    let smax = svd.singular_values.iter().fold(0.0f64, |a, v| a.max(*v));
    let thresh = RANK_TOL * smax.max(1.0);
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let mut elements = Vec::new();
    for &k in &order {
        if svd.singular_values[k] <= thresh {
            break;
        }
        let mut acc = CMat::zeros(dim, dim);
        for j in 0..m {
            acc += gm.element(j).matrix() * c(vt[(k, j)], 0.0);
        }
        elements.push(HermitianOperator::from_matrix_unchecked(acc));
    }
    // re-orthonormalize to remove rounding drift
    let basis = span_basis(dim, &elements, 1e-12);
    let k = basis.len();
    basis.with_labels((0..k).map(|i| format!("e{i}")).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct VertexParcel {
    vertices: Vec<DensityMatrix>,
    ambient_basis: ObservableBasis,
}

impl VertexParcel {
    pub fn new(vertices: Vec<DensityMatrix>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidParcel("no vertices".into()));
        }
        let dim = vertices[0].dim();
        if let Some(v) = vertices.iter().find(|v| v.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.dim(),
            });
        }
        let ops: Vec<&HermitianOperator> = vertices.iter().map(|v| v.op()).collect();
        let ambient_basis = affine_chart(dim, &ops);
        Ok(Self {
            vertices,
            ambient_basis,
        })
    }

    pub fn singleton(rho: DensityMatrix) -> Self {
        let dim = rho.dim();
        Self {
            vertices: vec![rho],
            ambient_basis: gell_mann_basis(dim).subset(&[]),
        }
    }

    pub fn vertices(&self) -> &[DensityMatrix] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<DensityMatrix> {
        self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn ambient_basis(&self) -> &ObservableBasis {
        &self.ambient_basis
    }

    pub fn affine_dim(&self) -> usize {
        self.ambient_basis.len()
    }

    pub fn chart_coords(&self) -> Vec<Vec<f64>> {
        coords_in(&self.ambient_basis, &self.vertices)
    }

    pub fn volume(&self) -> Volume {
        chart_volume(&self.ambient_basis, &self.vertices)
    }

    pub fn information(&self) -> Result<f64> {
        information_single(self.volume().get()?)
    }

    pub fn centroid(&self) -> DensityMatrix {
        let w = 1.0 / self.vertices.len() as f64;
        let parts: Vec<(f64, &DensityMatrix)> = self.vertices.iter().map(|v| (w, v)).collect();
        DensityMatrix::mixture(&parts)
    }

    /// Closed-hull membership within [`HULL_TOL`].
    pub fn contains_closed(&self, rho: &DensityMatrix) -> bool {
        let chart = self.ambient_basis.clone();
        let p = chart.coords_of(rho);
        let residual = off_chart_residual(&chart, &self.vertices[0], rho);
        if residual > HULL_TOL {
            return false;
        }
        if chart.is_empty() {
            return true;
        }
        lp::hull_membership(&self.chart_coords(), &p).is_some()
    }

    /// Bounding box in a given basis (coordinatewise min/max over vertices).
    pub fn bounding_box(&self, basis: &ObservableBasis) -> Result<HyperRectParcel> {
        let coords = coords_in(basis, &self.vertices);
        let m = basis.len();
        let mut lo = vec![f64::INFINITY; m];
        let mut hi = vec![f64::NEG_INFINITY; m];
        for x in &coords {
            for j in 0..m {
                lo[j] = lo[j].min(x[j]);
                hi[j] = hi[j].max(x[j]);
            }
        }
        HyperRectParcel::new(basis.clone(), lo, hi)
    }
}

fn off_chart_residual(chart: &ObservableBasis, anchor: &DensityMatrix, rho: &DensityMatrix) -> f64 {
    let mut d = rho.op().sub(anchor.op());
    for h in chart.elements() {
        let s = h.tr_mul(&d);
        d = d.axpy(-s, h);
    }
    d.frobenius()
}

pub fn coords_in(basis: &ObservableBasis, vertices: &[DensityMatrix]) -> Vec<Vec<f64>> {
    exec::map(vertices, |v| basis.coords_of(v))
}

/// k-volume of the hull of `vertices` measured in `chart`; zero when the
/// vertices do not fill the chart.
pub fn chart_volume(chart: &ObservableBasis, vertices: &[DensityMatrix]) -> Volume {
    let k = chart.len();
    if k == 0 {
        return Volume {
            value: Some(0.0),
            dim: 0,
        };
    }
    let coords = coords_in(chart, vertices);
    match hull::convex_hull(&coords, hull::MAX_FACETS) {
        Some(h) => Volume {
            value: Some(h.volume),
            dim: k,
        },
        None => {
            let ops: Vec<&HermitianOperator> = vertices.iter().map(|v| v.op()).collect();
            if affine_chart(chart.dim(), &ops).len() < k {
                Volume {
                    value: Some(0.0),
                    dim: k,
                }
            } else {
                Volume {
                    value: None,
                    dim: k,
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Parcel {
    Hyper(HyperRectParcel),
    Vertex(VertexParcel),
}

impl Parcel {
    pub fn dim(&self) -> usize {
        match self {
            Parcel::Hyper(p) => p.dim(),
            Parcel::Vertex(p) => p.dim(),
        }
    }

    pub fn volume(&self) -> Volume {
        match self {
            Parcel::Hyper(p) => {
                let k = (0..p.len()).filter(|&j| !p.is_degenerate(j)).count();
                Volume {
                    value: Some(p.volume()),
                    dim: k,
                }
            }
            Parcel::Vertex(p) => p.volume(),
        }
    }

    pub fn as_vertex(&self) -> Option<&VertexParcel> {
        match self {
            Parcel::Vertex(v) => Some(v),
            Parcel::Hyper(_) => None,
        }
    }

    pub fn as_hyper(&self) -> Option<&HyperRectParcel> {
        match self {
            Parcel::Hyper(h) => Some(h),
            Parcel::Vertex(_) => None,
        }
    }

    /// Vertex form. Boxes must constrain the whole state space; corners are
    /// reconstructed without positivity correction.
    pub fn to_vrep(&self) -> Result<VertexParcel> {
        match self {
            Parcel::Vertex(v) => Ok(v.clone()),
            Parcel::Hyper(h) => {
                if !h.basis().spans_state_space() {
                    return Err(Error::IncompleteBasis {
                        missing: h.basis().missing_directions(),
                        residual: 0.0,
                    });
                }
                Ok(h.to_vrep(Projection::None)?.0)
            }
        }
    }
}

impl From<HyperRectParcel> for Parcel {
    fn from(p: HyperRectParcel) -> Self {
        Parcel::Hyper(p)
    }
}

impl From<VertexParcel> for Parcel {
    fn from(p: VertexParcel) -> Self {
        Parcel::Vertex(p)
    }
}

pub fn volume(p: &Parcel) -> Volume {
    p.volume()
}

pub fn information_single(vol: f64) -> Result<f64> {
    if !(vol > 0.0) {
        return Err(Error::InfiniteInformation);
    }
    Ok(1.0 / vol)
}

/// Separating functional h with Tr(ρh) ≤ `upper_possible` on the possible
/// set and Tr(ρh) ≥ `lower_impossible` on the impossible set.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub functional: HermitianOperator,
    pub upper_possible: f64,
    pub lower_impossible: f64,
}

impl Certificate {
    pub fn gap(&self) -> f64 {
        self.lower_impossible - self.upper_possible
    }

    pub fn conjugate(&self, u: &CMat) -> Self {
        Self {
            functional: self.functional.conjugate(u),
            ..self.clone()
        }
    }
}

fn functional_range(p: &Parcel, h: &HermitianOperator) -> (f64, f64) {
    match p {
        Parcel::Vertex(v) => {
            let vals: Vec<f64> = v.vertices().iter().map(|x| x.expect(h)).collect();
            (
                vals.iter().copied().fold(f64::INFINITY, f64::min),
                vals.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            )
        }
        Parcel::Hyper(b) => {
            let (a0, cs) = b.basis().affine_coeffs(h);
            let mut lo = a0;
            let mut hi = a0;
            for (j, cj) in cs.iter().enumerate() {
                lo += cj.max(0.0) * b.lo()[j] + cj.min(0.0) * b.hi()[j];
                hi += cj.max(0.0) * b.hi()[j] + cj.min(0.0) * b.lo()[j];
            }
            (lo, hi)
        }
    }
}

/// Separates two vertex sets by linear programming in their common chart.
pub fn separate(
    first: &[DensityMatrix],
    second: &[DensityMatrix],
) -> Result<std::result::Result<Certificate, DensityMatrix>> {
    let dim = first[0].dim();
    let ops: Vec<&HermitianOperator> = first.iter().chain(second).map(|v| v.op()).collect();
    let chart = affine_chart(dim, &ops);
    if chart.is_empty() {
        return Ok(Err(first[0].clone()));
    }
    let a = coords_in(&chart, first);
    let b = coords_in(&chart, second);
    match lp::hull_intersection(&a, &b) {
        HullPair::Intersecting { lambda, .. } => {
            let parts: Vec<(f64, &DensityMatrix)> = lambda
                .iter()
                .copied()
                .zip(first.iter())
                .filter(|(w, _)| *w > 0.0)
                .collect();
            let total: f64 = parts.iter().map(|(w, _)| w).sum();
            let parts: Vec<(f64, &DensityMatrix)> =
                parts.into_iter().map(|(w, v)| (w / total, v)).collect();
            Ok(Err(DensityMatrix::mixture(&parts)))
        }
        HullPair::Separated { h, .. } => {
            let mut acc = HermitianOperator::zero(dim);
            for (hk, e) in h.iter().zip(chart.elements()) {
                acc = acc.axpy(*hk, e);
            }
            let upper = first
                .iter()
                .map(|v| v.expect(&acc))
                .fold(f64::NEG_INFINITY, f64::max);
            let lower = second
                .iter()
                .map(|v| v.expect(&acc))
                .fold(f64::INFINITY, f64::min);
            if lower > upper {
                Ok(Ok(Certificate {
                    functional: acc,
                    upper_possible: upper,
                    lower_impossible: lower,
                }))
            } else {
                Err(Error::Lp(format!(
                    "separating functional lost its gap ({:.3e})",
                    lower - upper
                )))
            }
        }
        HullPair::Uncertified { gap, .. } => Err(Error::Lp(format!(
            "infeasible but uncertified (gap {gap:.3e})"
        ))),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DoubleParcel {
    possible: Parcel,
    impossible: Option<Parcel>,
    certificate: Option<Certificate>,
}

impl DoubleParcel {
    /// Pairs a possible and an impossible set, certifying disjointness.
    pub fn new(possible: Parcel, impossible: Option<Parcel>) -> Result<Self> {
        let certificate = match &impossible {
            None => None,
            Some(imp) => Some(certify(&possible, imp)?),
        };
        Ok(Self {
            possible,
            impossible,
            certificate,
        })
    }

    /// Assembles a pair with a precomputed certificate, checking it.
    pub fn with_certificate(
        possible: Parcel,
        impossible: Option<Parcel>,
        certificate: Option<Certificate>,
    ) -> Result<Self> {
        let dp = Self {
            possible,
            impossible,
            certificate,
        };
        if dp.impossible.is_some() && !dp.verify_certificate() {
            return Err(Error::InvalidParcel(
                "certificate does not separate the components".into(),
            ));
        }
        Ok(dp)
    }

    pub fn possible(&self) -> &Parcel {
        &self.possible
    }

    pub fn impossible(&self) -> Option<&Parcel> {
        self.impossible.as_ref()
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        self.certificate.as_ref()
    }

    /// Re-evaluates the stored certificate on both components.
    pub fn verify_certificate(&self) -> bool {
        match (&self.impossible, &self.certificate) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(imp), Some(cert)) => {
                let (_, up) = functional_range(&self.possible, &cert.functional);
                let (lo, _) = functional_range(imp, &cert.functional);
                up <= cert.upper_possible + 1e-9
                    && lo >= cert.lower_impossible - 1e-9
                    && cert.gap() > 0.0
            }
        }
    }
}

fn certify(possible: &Parcel, impossible: &Parcel) -> Result<Certificate> {
    if let (Parcel::Hyper(a), Parcel::Hyper(b)) = (possible, impossible) {
        if a.basis() == b.basis() {
            for j in 0..a.len() {
                let h = a.basis().element(j);
                if b.lo()[j] > a.hi()[j] {
                    return Ok(Certificate {
                        functional: h.clone(),
                        upper_possible: a.hi()[j],
                        lower_impossible: b.lo()[j],
                    });
                }
                if a.lo()[j] > b.hi()[j] {
                    return Ok(Certificate {
                        functional: h.scale(-1.0),
                        upper_possible: -a.lo()[j],
                        lower_impossible: -b.hi()[j],
                    });
                }
            }
        }
    }
    let va = possible.to_vrep()?;
    let vb = impossible.to_vrep()?;
    match separate(va.vertices(), vb.vertices())? {
        Ok(cert) => Ok(cert),
        Err(_) => Err(Error::InvalidParcel(
            "possible and impossible sets intersect".into(),
        )),
    }
}

/// Volumes of two parcels in the common affine span of both.
pub fn common_volumes(a: &Parcel, b: &Parcel) -> Result<(Volume, Volume)> {
    if let (Parcel::Hyper(x), Parcel::Hyper(y)) = (a, b) {
        if x.basis() == y.basis() {
            return Ok((a.volume(), b.volume()));
        }
    }
    let va = a.to_vrep()?;
    let vb = b.to_vrep()?;
    let ops: Vec<&HermitianOperator> = va
        .vertices()
        .iter()
        .chain(vb.vertices())
        .map(|v| v.op())
        .collect();
    let chart = affine_chart(va.dim(), &ops);
    let vol = |p: &VertexParcel| {
        if p.affine_dim() < chart.len() {
            Volume {
                value: Some(0.0),
                dim: chart.len(),
            }
        } else {
            chart_volume(&chart, p.vertices())
        }
    };
    Ok((vol(&va), vol(&vb)))
}

/// Vol(impossible)/Vol(possible) in the common ambient span; 0 when the
/// impossible set is empty.
pub fn information_double(dp: &DoubleParcel) -> Result<f64> {
    match dp.impossible() {
        None => {
            let v = dp.possible().volume().get()?;
            if !(v > 0.0) {
                return Err(Error::InfiniteInformation);
            }
            Ok(0.0)
        }
        Some(imp) => {
            let (v1, v2) = common_volumes(dp.possible(), imp)?;
            let v1 = v1.get()?;
            if !(v1 > 0.0) {
                return Err(Error::InfiniteInformation);
            }
            Ok(v2.get()? / v1)
        }
    }
}

/// True iff `o2 ⊆ o`.
pub fn leq_single(o: &Parcel, o2: &Parcel) -> Result<bool> {
    match (o, o2) {
        (Parcel::Hyper(a), Parcel::Hyper(b)) => {
            if a.basis() != b.basis() {
                if a.basis().spans_state_space() && b.basis().spans_state_space() {
                    let vb = o2.to_vrep()?;
                    return Ok(vertices_in_box(a, vb.vertices()));
                }
                return Err(Error::Incomparable(
                    "boxes over different observables".into(),
                ));
            }
            Ok((0..a.len())
                .all(|j| a.lo()[j] <= b.lo()[j] + 1e-12 && b.hi()[j] <= a.hi()[j] + 1e-12))
        }
        (Parcel::Hyper(a), Parcel::Vertex(v)) => Ok(vertices_in_box(a, v.vertices())),
        (Parcel::Vertex(a), _) => {
            let vb = o2.to_vrep()?;
            if vb.dim() != a.dim() {
                return Err(Error::DimensionMismatch {
                    expected: a.dim(),
                    found: vb.dim(),
                });
            }
            Ok(vertices_in_hull(a, vb.vertices()))
        }
    }
}

fn vertices_in_box(b: &HyperRectParcel, verts: &[DensityMatrix]) -> bool {
    verts.iter().all(|v| {
        let x = b.basis().coords_of(v);
        (0..b.len()).all(|j| x[j] >= b.lo()[j] - 1e-9 && x[j] <= b.hi()[j] + 1e-9)
    })
}

fn vertices_in_hull(a: &VertexParcel, verts: &[DensityMatrix]) -> bool {
    let flags = exec::map(verts, |v| a.contains_closed(v));
    flags.into_iter().all(|f| f)
}

/// True iff b is at least as informative as a: b.possible ⊆ a.possible and
/// a.impossible ⊆ b.impossible.
pub fn leq_double(a: &DoubleParcel, b: &DoubleParcel) -> Result<bool> {
    if !leq_single(a.possible(), b.possible())? {
        return Ok(false);
    }
    match (a.impossible(), b.impossible()) {
        (None, _) => Ok(true),
        (Some(_), None) => Ok(false),
        (Some(x), Some(y)) => leq_single(y, x),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum BoxIntersection {
    Box(HyperRectParcel),
    /// Contradictory observations.
    Empty,
}

impl BoxIntersection {
    pub fn is_empty(&self) -> bool {
        matches!(self, BoxIntersection::Empty)
    }
}

/// Outer interval for Tr(ρg) over a box, bounding the part of g outside the
/// span of the box's observables by its spectral range.
fn outer_interval(p: &HyperRectParcel, g: &HermitianOperator) -> (f64, f64) {
    let d = p.dim();
    let mut gens = vec![HermitianOperator::identity(d)];
    gens.extend(p.basis().elements().iter().cloned());
    let span = span_basis(d, &gens, 1e-12);
    let mut inner = HermitianOperator::zero(d);
    for h in span.elements() {
        inner = inner.axpy(h.tr_mul(g), h);
    }
    let rest = g.sub(&inner);
    let (lo, hi) = functional_range(&Parcel::Hyper(p.clone()), &inner);
    if rest.frobenius() <= 1e-12 {
        (lo, hi)
    } else {
        let ev = rest.eigenvalues();
        (lo + ev[0], hi + ev[ev.len() - 1])
    }
}

pub fn intersect(o: &HyperRectParcel, o2: &HyperRectParcel) -> Result<BoxIntersection> {
    if o.dim() != o2.dim() {
        return Err(Error::DimensionMismatch {
            expected: o.dim(),
            found: o2.dim(),
        });
    }
    let (basis, lo, hi) = if o.basis() == o2.basis() {
        let lo: Vec<f64> = o.lo().iter().zip(o2.lo()).map(|(a, b)| a.max(*b)).collect();
        let hi: Vec<f64> = o.hi().iter().zip(o2.hi()).map(|(a, b)| a.min(*b)).collect();
        (o.basis().clone(), lo, hi)
    } else {
        let all: Vec<HermitianOperator> = o
            .basis()
            .elements()
            .iter()
            .chain(o2.basis().elements())
            .cloned()
            .collect();
        let merged = span_basis(o.dim(), &all, 1e-10);
        let mut lo = Vec::with_capacity(merged.len());
        let mut hi = Vec::with_capacity(merged.len());
        for g in merged.elements() {
            let (a1, b1) = outer_interval(o, g);
            let (a2, b2) = outer_interval(o2, g);
            lo.push(a1.max(a2));
            hi.push(b1.min(b2));
        }
        (merged, lo, hi)
    };
    if lo.iter().zip(&hi).any(|(a, b)| a > b) {
        return Ok(BoxIntersection::Empty);
    }
    Ok(BoxIntersection::Box(HyperRectParcel::new(basis, lo, hi)?))
}

/// Builds a mixed member of a box around a pure state:
/// ρ(λ) = (1−λ)|ψ⟩⟨ψ| + λ|φ⟩⟨φ| with φ ⊥ ψ.
pub fn witness_mixed(parcel: &HyperRectParcel, pure: &DensityMatrix) -> Result<DensityMatrix> {
    let d = pure.dim();
    if d < 2 || d != parcel.dim() {
        return Err(Error::DimensionMismatch {
            expected: parcel.dim(),
            found: d,
        });
    }
    let purity = pure.purity();
    if (purity - 1.0).abs() > 1e-9 {
        return Err(Error::NotPure { purity });
    }
    if parcel.membership(pure) != Membership::Inside {
        return Err(Error::InvalidParcel("pure state is not a member".into()));
    }
    let (_, vecs) = pure.op().eigh();
    let psi: Vec<_> = vecs.column(d - 1).iter().copied().collect();
    let phi: Vec<_> = vecs.column(d - 2).iter().copied().collect();
    let psi_op = HermitianOperator::projector(&psi);
    let phi_op = HermitianOperator::projector(&phi);
    let diff = phi_op.sub(&psi_op);
    let v = parcel.basis().coords_of(pure);
    let mut lambda: f64 = 0.5;
    for (j, h) in parcel.basis().elements().iter().enumerate() {
        let mj = h.tr_mul(&diff).abs();
        if mj <= 1e-15 {
            continue;
        }
        let slack = (v[j] - parcel.lo()[j]).min(parcel.hi()[j] - v[j]);
        lambda = lambda.min(0.5 * slack / mj);
    }
    if !(lambda > 0.0) {
        return Err(Error::InvalidParcel(
            "no slack around the pure state".into(),
        ));
    }
    let rho = DensityMatrix::new_unchecked(psi_op.scale(1.0 - lambda).axpy(lambda, &phi_op));
    if parcel.membership(&rho) != Membership::Inside {
        return Err(Error::InvalidParcel(
            "constructed witness left the parcel".into(),
        ));
    }
    Ok(rho)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McVolume {
    pub estimate: f64,
    pub stderr: f64,
    pub hits: u64,
    pub samples: u64,
}

const MC_CHUNK: usize = 4096;

/// Monte Carlo volume of box ∩ state space. Each block of samples draws
/// from its own ChaCha stream, so the result does not depend on how blocks
/// are scheduled.
pub fn mc_psd_volume(parcel: &HyperRectParcel, samples: usize, seed: u64) -> Result<McVolume> {
    if samples < 1000 {
        return Err(Error::OutOfRange {
            name: "samples",
            value: samples as f64,
        });
    }
    let basis = parcel.basis();
    if !basis.spans_state_space() {
        let residual = missing_residual(basis);
        return Err(Error::IncompleteBasis {
            missing: basis.missing_directions(),
            residual,
        });
    }
    let blocks = samples.div_ceil(MC_CHUNK);
    let counts = exec::map_range(blocks, |bi| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(bi as u64);
        let n = MC_CHUNK.min(samples - bi * MC_CHUNK);
        let mut hits = 0u64;
        let mut x = vec![0.0; parcel.len()];
        for _ in 0..n {
            for ((xj, lo), hi) in x.iter_mut().zip(parcel.lo()).zip(parcel.hi()) {
                let u: f64 = rng.gen();
                *xj = lo + u * (hi - lo);
            }
            if basis.reconstruct(&x).min_eigenvalue() >= -1e-12 {
                hits += 1;
            }
        }
        hits
    });
    let hits: u64 = counts.iter().sum();
    let total = samples as f64;
    let frac = hits as f64 / total;
    let vol = parcel.volume();
    Ok(McVolume {
        estimate: frac * vol,
        stderr: vol * (frac * (1.0 - frac) / total).sqrt(),
        hits,
        samples: samples as u64,
    })
}

fn missing_residual(basis: &ObservableBasis) -> f64 {
    let gm = gell_mann_basis(basis.dim());
    let mut worst: f64 = 0.0;
    for g in gm.elements() {
        let mut r = g.clone();
        for h in basis.elements() {
            r = r.axpy(-h.tr_mul(g), h);
        }
        worst = worst.max(r.frobenius());
    }
    worst
}
