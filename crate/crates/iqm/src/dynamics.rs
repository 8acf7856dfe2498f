//! Unitary evolution of parcels (ħ = 1).

use crate::error::{Error, Result};
use crate::operator::{c, CMat, HermitianOperator};
use crate::parcel::{DoubleParcel, HyperRectParcel, Parcel, VertexParcel};

pub const UNITARY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryOperator {
    m: CMat,
}

impl UnitaryOperator {
    pub fn new(m: CMat) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::NotSquare {
                rows: m.nrows(),
                cols: m.ncols(),
            });
        }
        let n = m.nrows();
        let defect = (m.adjoint() * &m - CMat::identity(n, n))
            .iter()
            .fold(0.0f64, |a, z| a.max(z.norm()));
        if defect > UNITARY_TOL {
            return Err(Error::NotUnitary { defect });
        }
        Ok(Self { m })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            m: CMat::identity(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.m
    }

    pub fn adjoint(&self) -> Self {
        Self {
            m: self.m.adjoint(),
        }
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self {
            m: &self.m * &other.m,
        }
    }
}

/// U(t) = exp(−i h t).
pub fn propagator(h: &HermitianOperator, t: f64) -> UnitaryOperator {
    let (vals, vecs) = h.eigh();
    let n = h.dim();
    let mut d = CMat::zeros(n, n);
    for (i, l) in vals.iter().enumerate() {
        let ph = -l * t;
        d[(i, i)] = c(ph.cos(), ph.sin());
    }
    UnitaryOperator {
        m: &vecs * d * vecs.adjoint(),
    }
}

fn check_dim(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch {
            expected: a,
            found: b,
        });
    }
    Ok(())
}

pub fn evolve_vrep(p: &VertexParcel, u: &UnitaryOperator) -> Result<VertexParcel> {
    check_dim(p.dim(), u.dim())?;
    let verts = crate::exec::map(p.vertices(), |v| v.conjugate(u.matrix()));
    VertexParcel::new(verts)
}

/// Rotates the observables to U H_j U† and keeps the intervals, so that
/// ρ ∈ p ⇔ UρU† ∈ evolve_hrep(p, u).
pub fn evolve_hrep(p: &HyperRectParcel, u: &UnitaryOperator) -> Result<HyperRectParcel> {
    check_dim(p.dim(), u.dim())?;
    HyperRectParcel::new(
        p.basis().conjugated(u.matrix()),
        p.lo().to_vec(),
        p.hi().to_vec(),
    )
}

/// Re-expresses an evolved box in a fixed basis by coordinatewise min/max
/// over its corners. Widens the set.
pub fn rebox(
    p: &HyperRectParcel,
    basis: &crate::operator::ObservableBasis,
) -> Result<HyperRectParcel> {
    check_dim(p.dim(), basis.dim())?;
    let corners = p.corner_operators();
    let m = basis.len();
    let mut lo = vec![f64::INFINITY; m];
    let mut hi = vec![f64::NEG_INFINITY; m];
    for x in &corners {
        let v = basis.coords(x);
        for j in 0..m {
            lo[j] = lo[j].min(v[j]);
            hi[j] = hi[j].max(v[j]);
        }
    }
    HyperRectParcel::new(basis.clone(), lo, hi)
}

pub fn evolve_parcel(p: &Parcel, u: &UnitaryOperator) -> Result<Parcel> {
    Ok(match p {
        Parcel::Hyper(h) => Parcel::Hyper(evolve_hrep(h, u)?),
        Parcel::Vertex(v) => Parcel::Vertex(evolve_vrep(v, u)?),
    })
}

/// Evolves both components and rotates the separating functional.
pub fn evolve_double(dp: &DoubleParcel, u: &UnitaryOperator) -> Result<DoubleParcel> {
    let possible = evolve_parcel(dp.possible(), u)?;
    let impossible = dp.impossible().map(|p| evolve_parcel(p, u)).transpose()?;
    let cert = dp.certificate().map(|c| c.conjugate(u.matrix()));
    DoubleParcel::with_certificate(possible, impossible, cert)
}
