#![allow(dead_code)]

use iqm::dynamics::{propagator, UnitaryOperator};
use iqm::operator::{c, CMat, C64};
use iqm::{DensityMatrix, HermitianOperator};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(r: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = r.gen_range(1e-300..1.0);
    let u2: f64 = r.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

pub fn ginibre(d: usize, r: &mut ChaCha8Rng) -> CMat {
    CMat::from_fn(d, d, |_, _| c(gaussian(r), gaussian(r)))
}

pub fn random_hermitian(d: usize, r: &mut ChaCha8Rng) -> HermitianOperator {
    let g = ginibre(d, r);
    HermitianOperator::from_matrix_unchecked((&g + g.adjoint()) * c(0.5, 0.0))
}

/// Hermitian operator with spectrum inside [-1, 1].
pub fn bounded_observable(d: usize, r: &mut ChaCha8Rng) -> HermitianOperator {
    let h = random_hermitian(d, r);
    let n = h.op_norm();
    h.scale(1.0 / n)
}

pub fn random_density(d: usize, r: &mut ChaCha8Rng) -> DensityMatrix {
    let g = ginibre(d, r);
    let m = &g * g.adjoint();
    let t = m.trace().re;
    DensityMatrix::from_matrix(m * c(1.0 / t, 0.0)).unwrap()
}

pub fn random_ket(d: usize, r: &mut ChaCha8Rng) -> Vec<C64> {
    let v: Vec<C64> = (0..d).map(|_| c(gaussian(r), gaussian(r))).collect();
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / n).collect()
}

pub fn random_pure(d: usize, r: &mut ChaCha8Rng) -> DensityMatrix {
    DensityMatrix::pure(&random_ket(d, r)).unwrap()
}

pub fn random_unitary(d: usize, r: &mut ChaCha8Rng) -> UnitaryOperator {
    let h = random_hermitian(d, r);
    propagator(&h, r.gen_range(0.3..3.0))
}

/// Uniform point of the closed unit ball.
pub fn random_bloch(r: &mut ChaCha8Rng) -> (f64, f64, f64) {
    loop {
        let (x, y, z) = (
            r.gen_range(-1.0..1.0),
            r.gen_range(-1.0..1.0),
            r.gen_range(-1.0..1.0),
        );
        if x * x + y * y + z * z <= 1.0 {
            return (x, y, z);
        }
    }
}

/// Entrywise maximum modulus of a − b.
pub fn max_diff(a: &CMat, b: &CMat) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            m = m.max((a[(i, j)] - b[(i, j)]).norm());
        }
    }
    m
}

/// Tr(a b) by explicit index sums.
pub fn trace_product(a: &CMat, b: &CMat) -> f64 {
    let n = a.nrows();
    let mut s = c(0.0, 0.0);
    for i in 0..n {
        for k in 0..n {
            s += a[(i, k)] * b[(k, i)];
        }
    }
    s.re
}

/// Qubit density matrix (I + xσx + yσy + zσz)/2 written out entrywise.
pub fn qubit(x: f64, y: f64, z: f64) -> DensityMatrix {
    let m = CMat::from_row_slice(
        2,
        2,
        &[
            c((1.0 + z) / 2.0, 0.0),
            c(x / 2.0, -y / 2.0),
            c(x / 2.0, y / 2.0),
            c((1.0 - z) / 2.0, 0.0),
        ],
    );
    DensityMatrix::from_matrix(m).unwrap()
}

pub fn diag(d: &[f64]) -> HermitianOperator {
    HermitianOperator::from_real_diag(d)
}
