//! Dense complex Hermitian linear algebra for small dimensions.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMat = DMatrix<Complex64>;

/// Entries beyond this asymmetry are rejected on ingestion.
pub const HERMITIAN_REJECT: f64 = 1e-6;
/// Entries beyond this asymmetry are symmetrized with a warning.
pub const HERMITIAN_WARN: f64 = 1e-9;
pub const PSD_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-10;
pub const ORTHO_TOL: f64 = 1e-10;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[derive(Clone, Debug, PartialEq)]
pub struct HermitianOperator {
    m: CMat,
}

fn asymmetry_of(m: &CMat) -> f64 {
    let n = m.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

fn symmetrize(m: &CMat) -> CMat {
    (m + m.adjoint()) * c(0.5, 0.0)
}

impl HermitianOperator {
    /// Ingests a matrix, symmetrizing small rounding asymmetries.
    pub fn new(m: CMat) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::NotSquare {
                rows: m.nrows(),
                cols: m.ncols(),
            });
        }
        let asym = asymmetry_of(&m);
        if asym > HERMITIAN_REJECT {
            return Err(Error::NotHermitian { asymmetry: asym });
        }
        if asym > HERMITIAN_WARN {
            log::warn!("symmetrizing matrix with asymmetry {asym:.3e}");
        }
        Ok(Self { m: symmetrize(&m) })
    }

    /// Wraps a matrix known to be Hermitian up to rounding.
    pub fn from_matrix_unchecked(m: CMat) -> Self {
        debug_assert_eq!(m.nrows(), m.ncols());
        Self { m: symmetrize(&m) }
    }

    pub fn from_real_diag(d: &[f64]) -> Self {
        let n = d.len();
        let mut m = CMat::zeros(n, n);
        for (i, v) in d.iter().enumerate() {
            m[(i, i)] = c(*v, 0.0);
        }
        Self { m }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            m: CMat::identity(dim, dim),
        }
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            m: CMat::zeros(dim, dim),
        }
    }

    /// |v><v| for an (unnormalized) vector.
    pub fn projector(v: &[C64]) -> Self {
        let col = DVector::from_column_slice(v);
        Self {
            m: &col * col.adjoint(),
        }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.m
    }

    pub fn into_matrix(self) -> CMat {
        self.m
    }

    pub fn asymmetry(&self) -> f64 {
        asymmetry_of(&self.m)
    }

    pub fn trace(&self) -> f64 {
        self.m.trace().re
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            m: &self.m * c(s, 0.0),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            m: &self.m + &other.m,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            m: &self.m - &other.m,
        }
    }

    pub fn axpy(&self, s: f64, other: &Self) -> Self {
        Self {
            m: &self.m + &other.m * c(s, 0.0),
        }
    }

    /// U A U†.
    pub fn conjugate(&self, u: &CMat) -> Self {
        Self::from_matrix_unchecked(u * &self.m * u.adjoint())
    }

    pub fn kron(&self, other: &Self) -> Self {
        Self {
            m: self.m.kronecker(&other.m),
        }
    }

    /// Tr(self · other) without forming the product.
    pub fn tr_mul(&self, other: &Self) -> f64 {
        let n = self.dim();
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                let a = self.m[(i, j)];
                let b = other.m[(j, i)];
                s += a.re * b.re - a.im * b.im;
            }
        }
        s
    }

    /// Eigenvalues in ascending order with matching eigenvector columns.
    pub fn eigh(&self) -> (Vec<f64>, CMat) {
        let eig = SymmetricEigen::new(self.m.clone());
        let n = self.dim();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let vals = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let mut vecs = CMat::zeros(n, n);
        for (dst, &src) in order.iter().enumerate() {
            vecs.set_column(dst, &eig.eigenvectors.column(src));
        }
        (vals, vecs)
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut v: Vec<f64> = SymmetricEigen::new(self.m.clone())
            .eigenvalues
            .iter()
            .copied()
            .collect();
        v.sort_by(f64::total_cmp);
        v
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues().last().unwrap()
    }

    pub fn op_norm(&self) -> f64 {
        self.eigenvalues()
            .iter()
            .fold(0.0_f64, |a, v| a.max(v.abs()))
    }

    pub fn trace_norm(&self) -> f64 {
        self.eigenvalues().iter().map(|v| v.abs()).sum()
    }

    pub fn frobenius(&self) -> f64 {
        self.m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Applies a real function to the spectrum.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> Self {
        let (vals, vecs) = self.eigh();
        let n = self.dim();
        let mut d = CMat::zeros(n, n);
        for (i, v) in vals.iter().enumerate() {
            d[(i, i)] = c(f(*v), 0.0);
        }
        Self::from_matrix_unchecked(&vecs * d * vecs.adjoint())
    }

    pub fn commutes_with(&self, other: &Self) -> f64 {
        let k = &self.m * &other.m - &other.m * &self.m;
        k.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

pub fn hs_inner(a: &HermitianOperator, b: &HermitianOperator) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let s: C64 = a.m.iter().zip(b.m.iter()).map(|(x, y)| x.conj() * y).sum();
    Ok(s.re)
}

pub fn trace_distance(a: &HermitianOperator, b: &HermitianOperator) -> f64 {
    0.5 * a.sub(b).trace_norm()
}

/// Point of the state space: unit trace and positive semidefinite.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    op: HermitianOperator,
}

impl DensityMatrix {
    pub fn new(op: HermitianOperator) -> Result<Self> {
        let tr = op.trace();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::NotDensity {
                reason: format!("trace {tr}"),
            });
        }
        let lmin = op.min_eigenvalue();
        if lmin < -PSD_TOL {
            return Err(Error::NotDensity {
                reason: format!("minimum eigenvalue {lmin:.3e}"),
            });
        }
        Ok(Self { op })
    }

    pub fn from_matrix(m: CMat) -> Result<Self> {
        Self::new(HermitianOperator::new(m)?)
    }

    /// Wraps an operator known to be a state up to rounding.
    pub fn new_unchecked(op: HermitianOperator) -> Self {
        Self { op }
    }

    /// |ψ><ψ| for a vector, normalized on the way in.
    pub fn pure(v: &[C64]) -> Result<Self> {
        let n: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n < 1e-300 {
            return Err(Error::NotDensity {
                reason: "zero vector".into(),
            });
        }
        let w: Vec<C64> = v.iter().map(|z| z / n).collect();
        Ok(Self {
            op: HermitianOperator::projector(&w),
        })
    }

    pub fn basis_state(dim: usize, k: usize) -> Self {
        let mut d = vec![0.0; dim];
        d[k] = 1.0;
        Self {
            op: HermitianOperator::from_real_diag(&d),
        }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            op: HermitianOperator::identity(dim).scale(1.0 / dim as f64),
        }
    }

    /// Convex combination Σ w_i ρ_i (weights assumed non-negative, summing to one).
    pub fn mixture(parts: &[(f64, &DensityMatrix)]) -> Self {
        let dim = parts[0].1.dim();
        let mut m = CMat::zeros(dim, dim);
        for (w, r) in parts {
            m += r.matrix() * c(*w, 0.0);
        }
        Self {
            op: HermitianOperator::from_matrix_unchecked(m),
        }
    }

    pub fn op(&self) -> &HermitianOperator {
        &self.op
    }

    pub fn into_op(self) -> HermitianOperator {
        self.op
    }

    pub fn matrix(&self) -> &CMat {
        self.op.matrix()
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn expect(&self, a: &HermitianOperator) -> f64 {
        self.op.tr_mul(a)
    }

    pub fn purity(&self) -> f64 {
        self.op.tr_mul(&self.op)
    }

    /// Von Neumann entropy with the natural logarithm.
    pub fn entropy(&self) -> f64 {
        self.op
            .eigenvalues()
            .iter()
            .filter(|&&l| l > 1e-300)
            .map(|&l| -l * l.ln())
            .sum()
    }

    pub fn conjugate(&self, u: &CMat) -> Self {
        Self {
            op: self.op.conjugate(u),
        }
    }

    pub fn kron(&self, other: &Self) -> Self {
        Self {
            op: self.op.kron(&other.op),
        }
    }

    pub fn trace_distance(&self, other: &Self) -> f64 {
        trace_distance(&self.op, &other.op)
    }
}

/// Hilbert–Schmidt orthonormal family of Hermitian operators.
#[derive(Clone, Debug, PartialEq)]
pub struct ObservableBasis {
    dim: usize,
    elements: Vec<HermitianOperator>,
    labels: Vec<String>,
    scales: Vec<f64>,
}

impl ObservableBasis {
    /// Builds a basis from elements that are already orthonormal.
    pub fn from_orthonormal(
        dim: usize,
        elements: Vec<HermitianOperator>,
        labels: Vec<String>,
        scales: Vec<f64>,
    ) -> Result<Self> {
        if elements.len() != labels.len() || elements.len() != scales.len() {
            return Err(Error::InvalidParcel("basis field lengths differ".into()));
        }
        for e in &elements {
            if e.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: e.dim(),
                });
            }
        }
        let b = Self {
            dim,
            elements,
            labels,
            scales,
        };
        let defect = b.gram_defect();
        if defect > ORTHO_TOL {
            return Err(Error::InvalidParcel(format!(
                "basis not orthonormal (defect {defect:.3e})"
            )));
        }
        Ok(b)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[HermitianOperator] {
        &self.elements
    }

    pub fn element(&self, j: usize) -> &HermitianOperator {
        &self.elements[j]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Factor converting normalized coordinates to raw units (1 unless the
    /// element is a rescaled Pauli product).
    pub fn scales(&self) -> &[f64] {
        &self.scales
    }

    pub fn gram_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.len() {
            for j in i..self.len() {
                let g = self.elements[i].tr_mul(&self.elements[j]);
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g - want).abs());
            }
        }
        worst
    }

    pub fn coords(&self, a: &HermitianOperator) -> Vec<f64> {
        self.elements.iter().map(|h| h.tr_mul(a)).collect()
    }

    pub fn coords_of(&self, rho: &DensityMatrix) -> Vec<f64> {
        self.coords(rho.op())
    }

    pub fn is_traceless(&self) -> bool {
        self.elements.iter().all(|h| h.trace().abs() < 1e-10)
    }

    /// Component of the identity orthogonal to the span, with its squared norm.
    fn identity_residual(&self) -> (HermitianOperator, f64) {
        let mut r = HermitianOperator::identity(self.dim);
        for h in &self.elements {
            r = r.axpy(-h.trace(), h);
        }
        let n2 = r.tr_mul(&r);
        (r, n2)
    }

    /// Number of trace-one directions not covered by the span.
    pub fn missing_directions(&self) -> usize {
        let (_, n2) = self.identity_residual();
        let full = self.dim * self.dim;
        let covered = if n2 > 1e-12 {
            self.len() + 1
        } else {
            self.len()
        };
        full.saturating_sub(covered)
    }

    pub fn spans_state_space(&self) -> bool {
        self.missing_directions() == 0
    }

    /// Minimum-norm unit-trace operator with the given coordinates. For a
    /// traceless basis this is I/d + Σ c_j H_j.
    pub fn reconstruct(&self, coords: &[f64]) -> HermitianOperator {
        let (r, n2) = self.identity_residual();
        let mut m = CMat::zeros(self.dim, self.dim);
        let mut tr = 0.0;
        for (h, x) in self.elements.iter().zip(coords) {
            m += h.matrix() * c(*x, 0.0);
            tr += h.trace() * x;
        }
        if n2 > 1e-12 {
            m += r.matrix() * c((1.0 - tr) / n2, 0.0);
        }
        HermitianOperator::from_matrix_unchecked(m)
    }

    /// Affine form of ρ ↦ Tr(aρ) in coordinates, consistent with
    /// [`ObservableBasis::reconstruct`]: Tr(a·reconstruct(x)) = a0 + Σ c_j x_j.
    pub fn affine_coeffs(&self, a: &HermitianOperator) -> (f64, Vec<f64>) {
        let (r, n2) = self.identity_residual();
        let base: Vec<f64> = self.coords(a);
        if n2 > 1e-12 {
            let ar = a.tr_mul(&r) / n2;
            let cs = self
                .elements
                .iter()
                .zip(&base)
                .map(|(h, cj)| cj - ar * h.trace())
                .collect();
            (ar, cs)
        } else {
            (0.0, base)
        }
    }

    /// The basis with every element rotated to U H U†.
    pub fn conjugated(&self, u: &CMat) -> Self {
        Self {
            dim: self.dim,
            elements: self.elements.iter().map(|h| h.conjugate(u)).collect(),
            labels: self.labels.clone(),
            scales: self.scales.clone(),
        }
    }

    pub fn with_labels<S: Into<String>>(mut self, labels: Vec<S>) -> Self {
        assert_eq!(labels.len(), self.len());
        self.labels = labels.into_iter().map(Into::into).collect();
        self
    }

    /// Selects a subset of elements.
    pub fn subset(&self, idx: &[usize]) -> Self {
        Self {
            dim: self.dim,
            elements: idx.iter().map(|&i| self.elements[i].clone()).collect(),
            labels: idx.iter().map(|&i| self.labels[i].clone()).collect(),
            scales: idx.iter().map(|&i| self.scales[i]).collect(),
        }
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

fn project_out(v: &mut CMat, basis: &[HermitianOperator]) {
    for q in basis {
        let p = q.tr_mul(&HermitianOperator { m: v.clone() });
        *v -= q.matrix() * c(p, 0.0);
    }
}

fn frob(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Orthonormalizes the inputs, failing on rank deficiency.
pub fn gram_schmidt(ops: &[HermitianOperator]) -> Result<ObservableBasis> {
    if ops.is_empty() {
        return Err(Error::RankDeficient {
            index: 0,
            residual: 0.0,
        });
    }
    let dim = ops[0].dim();
    let mut out: Vec<HermitianOperator> = Vec::with_capacity(ops.len());
    for (idx, a) in ops.iter().enumerate() {
        if a.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: a.dim(),
            });
        }
        let mut v = a.matrix().clone();
        project_out(&mut v, &out);
        let residual = frob(&v);
        if residual < ORTHO_TOL {
            return Err(Error::RankDeficient {
                index: idx,
                residual,
            });
        }
        project_out(&mut v, &out);
        let n = frob(&v);
        out.push(HermitianOperator::from_matrix_unchecked(
            v * c(1.0 / n, 0.0),
        ));
    }
    let n = out.len();
    Ok(ObservableBasis {
        dim,
        elements: out,
        labels: (0..n).map(|i| format!("g{i}")).collect(),
        scales: vec![1.0; n],
    })
}

/// Orthonormal basis of the span of the inputs, silently dropping
/// directions whose residual falls below `tol`.
pub fn span_basis(dim: usize, ops: &[HermitianOperator], tol: f64) -> ObservableBasis {
    let mut out: Vec<HermitianOperator> = Vec::new();
    for a in ops {
        let mut v = a.matrix().clone();
        project_out(&mut v, &out);
        let scale = frob(a.matrix()).max(1.0);
        if frob(&v) <= tol * scale {
            continue;
        }
        project_out(&mut v, &out);
        let n = frob(&v);
        out.push(HermitianOperator::from_matrix_unchecked(
            v * c(1.0 / n, 0.0),
        ));
    }
    let n = out.len();
    ObservableBasis {
        dim,
        elements: out,
        labels: (0..n).map(|i| format!("w{i}")).collect(),
        scales: vec![1.0; n],
    }
}

pub fn pauli(k: usize) -> HermitianOperator {
    let z = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    let m = match k {
        0 => CMat::from_row_slice(2, 2, &[one, z, z, one]),
        1 => CMat::from_row_slice(2, 2, &[z, one, one, z]),
        2 => CMat::from_row_slice(2, 2, &[z, -i, i, z]),
        3 => CMat::from_row_slice(2, 2, &[one, z, z, -one]),
        _ => panic!("pauli index {k} out of range"),
    };
    HermitianOperator { m }
}

pub fn sigma_x() -> HermitianOperator {
    pauli(1)
}

pub fn sigma_y() -> HermitianOperator {
    pauli(2)
}

pub fn sigma_z() -> HermitianOperator {
    pauli(3)
}

/// Tensor product of Paulis named by a string over {I, X, Y, Z}.
pub fn pauli_string(s: &str) -> Result<HermitianOperator> {
    let mut acc: Option<HermitianOperator> = None;
    for ch in s.chars() {
        let k = match ch {
            'I' => 0,
            'X' => 1,
            'Y' => 2,
            'Z' => 3,
            _ => return Err(Error::InvalidParcel(format!("bad Pauli letter {ch:?}"))),
        };
        let p = pauli(k);
        acc = Some(match acc {
            None => p,
            Some(a) => a.kron(&p),
        });
    }
    acc.ok_or_else(|| Error::InvalidParcel("empty Pauli string".into()))
}

/// The 4ⁿ−1 non-identity Pauli products scaled by 1/√(2ⁿ).
pub fn pauli_product_basis(n_qubits: usize) -> ObservableBasis {
    assert!(n_qubits >= 1, "need at least one qubit");
    let dim = 1usize << n_qubits;
    let scale = (dim as f64).sqrt();
    let total = 1usize << (2 * n_qubits);
    let letters = ['I', 'X', 'Y', 'Z'];
    let mut elements = Vec::with_capacity(total - 1);
    let mut labels = Vec::with_capacity(total - 1);
    for code in 1..total {
        let mut s = String::with_capacity(n_qubits);
        for q in (0..n_qubits).rev() {
            s.push(letters[(code >> (2 * q)) & 3]);
        }
        elements.push(pauli_string(&s).unwrap().scale(1.0 / scale));
        labels.push(s);
    }
    ObservableBasis {
        dim,
        elements,
        labels,
        scales: vec![scale; total - 1],
    }
}

/// Diagonal projectors, symmetric real parts and antisymmetric imaginary
/// parts, orthonormalized. Spans every dim×dim Hermitian matrix.
pub fn complete_hermitian_basis(dim: usize) -> ObservableBasis {
    assert!(dim >= 2, "dimension must be at least 2");
    let mut raw = Vec::with_capacity(dim * dim);
    let mut labels = Vec::with_capacity(dim * dim);
    for k in 0..dim {
        let mut m = CMat::zeros(dim, dim);
        m[(k, k)] = c(1.0, 0.0);
        raw.push(HermitianOperator { m });
        labels.push(format!("P{k}"));
    }
    for k in 0..dim {
        for l in (k + 1)..dim {
            let mut m = CMat::zeros(dim, dim);
            m[(k, l)] = c(0.5, 0.0);
            m[(l, k)] = c(0.5, 0.0);
            raw.push(HermitianOperator { m });
            labels.push(format!("S{k}{l}"));
        }
    }
    for k in 0..dim {
        for l in (k + 1)..dim {
            let mut m = CMat::zeros(dim, dim);
            m[(k, l)] = c(0.0, 0.5);
            m[(l, k)] = c(0.0, -0.5);
            raw.push(HermitianOperator { m });
            labels.push(format!("A{k}{l}"));
        }
    }
    let b = gram_schmidt(&raw).expect("complete basis is independent");
    let n = b.len();
    ObservableBasis {
        labels,
        scales: vec![1.0; n],
        ..b
    }
}

/// Traceless orthonormal basis of d²−1 generalized Gell-Mann matrices.
pub fn gell_mann_basis(dim: usize) -> ObservableBasis {
    let r2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut elements = Vec::new();
    let mut labels = Vec::new();
    for k in 0..dim {
        for l in (k + 1)..dim {
            let mut m = CMat::zeros(dim, dim);
            m[(k, l)] = c(r2, 0.0);
            m[(l, k)] = c(r2, 0.0);
            elements.push(HermitianOperator { m });
            labels.push(format!("S{k}{l}"));
            let mut m = CMat::zeros(dim, dim);
            m[(k, l)] = c(0.0, -r2);
            m[(l, k)] = c(0.0, r2);
            elements.push(HermitianOperator { m });
            labels.push(format!("A{k}{l}"));
        }
    }
    for l in 1..dim {
        let norm = ((l * (l + 1)) as f64).sqrt();
        let mut d = vec![0.0; dim];
        for v in d.iter_mut().take(l) {
            *v = 1.0 / norm;
        }
        d[l] = -(l as f64) / norm;
        elements.push(HermitianOperator::from_real_diag(&d));
        labels.push(format!("D{l}"));
    }
    let n = elements.len();
    ObservableBasis {
        dim,
        elements,
        labels,
        scales: vec![1.0; n],
    }
}

/// Positive square root; eigenvalues in [−1e-10, 0) are clipped to zero.
pub fn operator_sqrt(e: &HermitianOperator) -> Result<HermitianOperator> {
    let (vals, _) = e.eigh();
    if let Some(&v) = vals.iter().find(|&&v| v < -PSD_TOL) {
        return Err(Error::NegativeEigenvalue { value: v });
    }
    Ok(e.map_spectrum(|v| v.max(0.0).sqrt()))
}

pub fn bloch_from_qubit(rho: &DensityMatrix) -> Result<(f64, f64, f64)> {
    if rho.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: rho.dim(),
        });
    }
    Ok((
        rho.expect(&sigma_x()),
        rho.expect(&sigma_y()),
        rho.expect(&sigma_z()),
    ))
}

pub fn qubit_from_bloch(x: f64, y: f64, z: f64) -> Result<DensityMatrix> {
    let norm = (x * x + y * y + z * z).sqrt();
    if norm * norm > 1.0 + 1e-10 {
        return Err(Error::OutsideBlochBall { norm });
    }
    Ok(DensityMatrix::new_unchecked(bloch_operator(x, y, z)))
}

/// (I + xσx + yσy + zσz)/2 with no physicality check.
pub fn bloch_operator(x: f64, y: f64, z: f64) -> HermitianOperator {
    let m = CMat::from_row_slice(
        2,
        2,
        &[
            c(0.5 * (1.0 + z), 0.0),
            c(0.5 * x, -0.5 * y),
            c(0.5 * x, 0.5 * y),
            c(0.5 * (1.0 - z), 0.0),
        ],
    );
    HermitianOperator { m }
}
