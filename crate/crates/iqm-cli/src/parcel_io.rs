//! JSON form of parcels: a representation tag with either the basis and
//! interval bounds or the vertex matrices.

use iqm::operator::{c, CMat, ObservableBasis};
use iqm::{DensityMatrix, HermitianOperator, HyperRectParcel, Parcel, VertexParcel};
use serde::{Deserialize, Serialize};

use crate::config::{ConfigError, MatrixSpec};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "representation", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ParcelSpec {
    Hyper {
        labels: Vec<String>,
        scales: Vec<f64>,
        /// Hilbert–Schmidt orthonormal basis operators.
        elements: Vec<MatrixSpec>,
        lo: Vec<f64>,
        hi: Vec<f64>,
    },
    Vertex {
        vertices: Vec<MatrixSpec>,
    },
}

pub fn matrix_spec(m: &CMat) -> MatrixSpec {
    (0..m.nrows())
        .map(|i| {
            (0..m.ncols())
                .map(|j| [m[(i, j)].re, m[(i, j)].im])
                .collect()
        })
        .collect()
}

fn matrix_from(path: &str, m: &MatrixSpec) -> Result<CMat, ConfigError> {
    let n = m.len();
    if n == 0 || m.iter().any(|r| r.len() != n) {
        return Err(ConfigError::new(path, "expected a non-empty square matrix"));
    }
    Ok(CMat::from_fn(n, n, |i, j| c(m[i][j][0], m[i][j][1])))
}

pub fn parcel_to_spec(p: &Parcel) -> ParcelSpec {
    match p {
        Parcel::Hyper(h) => ParcelSpec::Hyper {
            labels: h.basis().labels().to_vec(),
            scales: h.basis().scales().to_vec(),
            elements: h
                .basis()
                .elements()
                .iter()
                .map(|e| matrix_spec(e.matrix()))
                .collect(),
            lo: h.lo().to_vec(),
            hi: h.hi().to_vec(),
        },
        Parcel::Vertex(v) => ParcelSpec::Vertex {
            vertices: v
                .vertices()
                .iter()
                .map(|x| matrix_spec(x.matrix()))
                .collect(),
        },
    }
}

pub fn parcel_from_spec(path: &str, spec: &ParcelSpec) -> Result<Parcel, ConfigError> {
    let err = |sub: &str, e: iqm::Error| ConfigError::from_model(format!("{path}{sub}"), e);
    match spec {
        ParcelSpec::Hyper {
            labels,
            scales,
            elements,
            lo,
            hi,
        } => {
            let ops = elements
                .iter()
                .enumerate()
                .map(|(i, m)| {
                    let sub = format!(".elements[{i}]");
                    HermitianOperator::new(matrix_from(&format!("{path}{sub}"), m)?)
                        .map_err(|e| err(&sub, e))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let dim = ops
                .first()
                .map(HermitianOperator::dim)
                .ok_or_else(|| ConfigError::new(format!("{path}.elements"), "empty basis"))?;
            let basis = ObservableBasis::from_orthonormal(dim, ops, labels.clone(), scales.clone())
                .map_err(|e| err(".elements", e))?;
            Ok(Parcel::Hyper(
                HyperRectParcel::new(basis, lo.clone(), hi.clone()).map_err(|e| err("", e))?,
            ))
        }
        ParcelSpec::Vertex { vertices } => {
            let vs = vertices
                .iter()
                .enumerate()
                .map(|(i, m)| {
                    let sub = format!(".vertices[{i}]");
                    DensityMatrix::from_matrix(matrix_from(&format!("{path}{sub}"), m)?)
                        .map_err(|e| err(&sub, e))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Parcel::Vertex(
                VertexParcel::new(vs).map_err(|e| err(".vertices", e))?,
            ))
        }
    }
}
