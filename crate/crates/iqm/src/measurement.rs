//! Fuzzy projective measurements and their action on states and parcels.

use crate::error::{Error, Intersection, Result};
use crate::exec;
use crate::lp;
use crate::observables::RealInterval;
use crate::operator::{CMat, DensityMatrix, HermitianOperator};
use crate::parcel::{
    self, affine_chart, chart_volume, coords_in, Certificate, DoubleParcel, Parcel, VertexParcel,
};

/// Probabilities at or below this value are treated as zero.
pub const PROB_FLOOR: f64 = 1e-12;
/// Default threshold for the uniform positivity check.
pub const DEFAULT_DELTA_THRESHOLD: f64 = 1e-6;
/// Vertex sets larger than this are not pruned.
pub const PRUNE_LIMIT: usize = 400;
const PROJECTOR_TOL: f64 = 1e-10;
const SUPPORT_TOL: f64 = 1e-10;
const DEDUPE_TOL: f64 = 1e-10;

/// Denominator k of the noise term (1−η)/k · I.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum NoiseDenominator {
    /// Number of outcomes m.
    #[default]
    Outcomes,
    /// Hilbert-space dimension d.
    Dimension,
    Explicit(f64),
}

/// E_i = η Π_i + (1−η)/k · I with Kraus roots M_i = √E_i.
#[derive(Debug, Clone)]
pub struct FuzzyPOVM {
    projectors: Vec<HermitianOperator>,
    eta: f64,
    noise: NoiseDenominator,
    k: f64,
    effects: Vec<HermitianOperator>,
    kraus: Vec<HermitianOperator>,
    ranks: Vec<usize>,
}

fn max_entry(m: &CMat) -> f64 {
    m.iter().fold(0.0f64, |a, z| a.max(z.norm()))
}

impl FuzzyPOVM {
    pub fn new(
        projectors: Vec<HermitianOperator>,
        eta: f64,
        noise: NoiseDenominator,
    ) -> Result<Self> {
        if projectors.is_empty() {
            return Err(Error::InvalidMeasurement("no projectors".into()));
        }
        if !(eta > 0.0 && eta <= 1.0) {
            return Err(Error::OutOfRange {
                name: "eta",
                value: eta,
            });
        }
        let d = projectors[0].dim();
        let mut sum = CMat::zeros(d, d);
        let mut ranks = Vec::with_capacity(projectors.len());
        for (i, p) in projectors.iter().enumerate() {
            if p.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: p.dim(),
                });
            }
            let m = p.matrix();
            if max_entry(&(m * m - m)) > PROJECTOR_TOL {
                return Err(Error::InvalidMeasurement(format!(
                    "element {i} is not a projector"
                )));
            }
            let r = p.trace().round();
            if r < 1.0 {
                return Err(Error::InvalidMeasurement(format!("element {i} is zero")));
            }
            ranks.push(r as usize);
            for (l, q) in projectors.iter().enumerate().skip(i + 1) {
                if max_entry(&(m * q.matrix())) > PROJECTOR_TOL {
                    return Err(Error::InvalidMeasurement(format!(
                        "elements {i} and {l} are not orthogonal"
                    )));
                }
            }
            sum += m;
        }
        if max_entry(&(sum - CMat::identity(d, d))) > PROJECTOR_TOL {
            return Err(Error::InvalidMeasurement(
                "projectors do not sum to the identity".into(),
            ));
        }
        let k = match noise {
            NoiseDenominator::Outcomes => projectors.len() as f64,
            NoiseDenominator::Dimension => d as f64,
            NoiseDenominator::Explicit(k) => {
                if !(k.is_finite() && k > 0.0) {
                    return Err(Error::OutOfRange {
                        name: "noise_denominator",
                        value: k,
                    });
                }
                k
            }
        };
        let noise_level = (1.0 - eta) / k;
        let id = HermitianOperator::identity(d);
        let effects = projectors
            .iter()
            .map(|p| p.scale(eta).axpy(noise_level, &id))
            .collect();
        let (a, b) = ((eta + noise_level).sqrt(), noise_level.sqrt());
        let kraus = projectors
            .iter()
            .map(|p| p.scale(a).axpy(b, &id.sub(p)))
            .collect();
        Ok(Self {
            projectors,
            eta,
            noise,
            k,
            effects,
            kraus,
            ranks,
        })
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn len(&self) -> usize {
        self.projectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projectors.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.projectors[0].dim()
    }

    pub fn noise(&self) -> NoiseDenominator {
        self.noise
    }

    pub fn denominator(&self) -> f64 {
        self.k
    }

    /// (1−η)/k.
    pub fn noise_level(&self) -> f64 {
        (1.0 - self.eta) / self.k
    }

    pub fn projectors(&self) -> &[HermitianOperator] {
        &self.projectors
    }

    pub fn projector(&self, i: usize) -> &HermitianOperator {
        &self.projectors[i]
    }

    pub fn effect(&self, i: usize) -> &HermitianOperator {
        &self.effects[i]
    }

    pub fn kraus(&self, i: usize) -> &HermitianOperator {
        &self.kraus[i]
    }

    pub fn rank(&self, i: usize) -> usize {
        self.ranks[i]
    }

    /// η = 1: Kraus operators are rank deficient.
    pub fn is_sharp(&self) -> bool {
        self.eta == 1.0
    }

    /// Σ E_i = I; fails when the noise denominator differs from the
    /// number of outcomes.
    pub fn is_complete(&self) -> bool {
        let d = self.dim();
        let mut sum = CMat::zeros(d, d);
        for e in &self.effects {
            sum += e.matrix();
        }
        max_entry(&(sum - CMat::identity(d, d))) <= PROJECTOR_TOL
    }

    fn check_outcome(&self, j: usize) -> Result<()> {
        if j >= self.len() {
            return Err(Error::InvalidMeasurement(format!(
                "outcome {j} of {}",
                self.len()
            )));
        }
        Ok(())
    }

    /// Unnormalized M_j ρ M_j and Tr(ρ E_j).
    fn apply(&self, rho: &HermitianOperator, j: usize) -> (HermitianOperator, f64) {
        let m = self.kraus[j].matrix();
        let out = HermitianOperator::from_matrix_unchecked(m * rho.matrix() * m);
        let p = rho.tr_mul(&self.effects[j]);
        (out, p)
    }
}

/// f_j(ρ) = M_j ρ M_j† / Tr(ρ E_j) together with Tr(ρ E_j).
pub fn kraus_update_state(
    rho: &DensityMatrix,
    povm: &FuzzyPOVM,
    j: usize,
) -> Result<(DensityMatrix, f64)> {
    povm.check_outcome(j)?;
    if rho.dim() != povm.dim() {
        return Err(Error::DimensionMismatch {
            expected: povm.dim(),
            found: rho.dim(),
        });
    }
    let (out, p) = povm.apply(rho.op(), j);
    if !(p > PROB_FLOOR) {
        return Err(Error::VanishingProbability(p));
    }
    Ok((DensityMatrix::new_unchecked(out.scale(1.0 / p)), p))
}

/// Bloch-vector form of the alive update of a qubit (Π = |0⟩⟨0|, k = 2).
pub fn bloch_update_closed_form(x: f64, y: f64, z: f64, eta: f64) -> Result<(f64, f64, f64)> {
    let norm = (x * x + y * y + z * z).sqrt();
    if norm > 1.0 + 1e-12 {
        return Err(Error::OutsideBlochBall { norm });
    }
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::OutOfRange {
            name: "eta",
            value: eta,
        });
    }
    let den = 1.0 + eta * z;
    if !(den > PROB_FLOOR) {
        return Err(Error::VanishingProbability(den / 2.0));
    }
    let s = (1.0 - eta * eta).sqrt();
    Ok((s * x / den, s * y / den, (z + eta) / den))
}

/// Result of the uniform positivity check on vertex sets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Positivity {
    /// min Tr(v Π_j) over the vertices of both parcels.
    pub delta_outcome: f64,
    /// The same minimum taken over every outcome.
    pub delta_all: f64,
    pub threshold: f64,
    pub passed: bool,
}

pub fn check_uniform_positivity(
    o1: &VertexParcel,
    o2: Option<&VertexParcel>,
    povm: &FuzzyPOVM,
    j: usize,
    threshold: f64,
) -> Result<Positivity> {
    povm.check_outcome(j)?;
    let verts: Vec<&DensityMatrix> = o1
        .vertices()
        .iter()
        .chain(o2.into_iter().flat_map(|p| p.vertices()))
        .collect();
    let min_over = |i: usize| {
        verts
            .iter()
            .map(|v| v.expect(povm.projector(i)))
            .fold(f64::INFINITY, f64::min)
    };
    let delta_outcome = min_over(j);
    let delta_all = (0..povm.len()).map(min_over).fold(f64::INFINITY, f64::min);
    Ok(Positivity {
        delta_outcome,
        delta_all,
        threshold,
        passed: delta_outcome > threshold,
    })
}

/// Ratios r(v) = Tr(v h)/Tr(v Π_j) over the vertices of both parcels.
#[derive(Debug, Clone, PartialEq)]
pub struct Separation {
    pub functional: HermitianOperator,
    pub min_first: f64,
    pub max_second: f64,
    pub c1: f64,
    pub c2: f64,
    pub passed: bool,
}

impl Separation {
    pub fn gap(&self) -> f64 {
        self.min_first - self.max_second
    }
}

fn ratio_range(
    verts: &[DensityMatrix],
    h: &HermitianOperator,
    pj: &HermitianOperator,
) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in verts {
        let den = v.expect(pj);
        if den <= PROB_FLOOR {
            continue;
        }
        let r = v.expect(h) / den;
        lo = lo.min(r);
        hi = hi.max(r);
    }
    (lo, hi)
}

/// Requires h to commute with Π_j so that the ratio is a function of the
/// post-measurement branch.
pub fn check_separation(
    o1: &VertexParcel,
    o2: &VertexParcel,
    h: &HermitianOperator,
    povm: &FuzzyPOVM,
    j: usize,
) -> Result<Separation> {
    povm.check_outcome(j)?;
    if h.dim() != povm.dim() {
        return Err(Error::DimensionMismatch {
            expected: povm.dim(),
            found: h.dim(),
        });
    }
    let defect = h.commutes_with(povm.projector(j));
    if defect > SUPPORT_TOL {
        return Err(Error::SeparationNotSupported { defect });
    }
    let pj = povm.projector(j);
    let (min_first, _) = ratio_range(o1.vertices(), h, pj);
    let (_, max_second) = ratio_range(o2.vertices(), h, pj);
    let g = min_first - max_second;
    let passed = g.is_finite() && g > 0.0;
    let (c1, c2) = if passed {
        (min_first - g / 3.0, max_second + g / 3.0)
    } else {
        (min_first, max_second)
    };
    Ok(Separation {
        functional: h.clone(),
        min_first,
        max_second,
        c1,
        c2,
        passed,
    })
}

#[derive(Debug, Clone)]
pub struct UpdateReport {
    pub outcome: usize,
    pub eta: f64,
    pub possible: VertexParcel,
    pub impossible: Option<VertexParcel>,
    /// Range of Tr(ρ E_j) over the possible set.
    pub probability: RealInterval,
    pub volume_before: Option<f64>,
    pub volume_after: Option<f64>,
    /// Volume of the impossible set in its own affine span.
    pub impossible_volume_own_span: Option<f64>,
    /// Volume of the impossible set re-embedded in the span of its update.
    pub impossible_volume_before: Option<f64>,
    pub impossible_volume_after: Option<f64>,
    pub information_before: Option<f64>,
    pub information_after: Option<f64>,
    pub positivity: Option<Positivity>,
    pub separation: Option<Separation>,
    pub certificate: Option<Certificate>,
}

impl UpdateReport {
    pub fn conditions_verified(&self) -> bool {
        self.positivity.is_some_and(|p| p.passed)
            && self.separation.as_ref().is_some_and(|s| s.passed)
    }

    pub fn volume_decreased(&self) -> Option<bool> {
        Some(self.volume_after? < self.volume_before?)
    }

    pub fn information_increased(&self) -> Option<bool> {
        Some(self.information_after? > self.information_before?)
    }
}

fn reject_sharp(povm: &FuzzyPOVM) -> Result<()> {
    if povm.is_sharp() {
        return Err(Error::InvalidMeasurement(
            "sharp measurement is not invertible on parcels".into(),
        ));
    }
    Ok(())
}

fn probability_range(verts: &[DensityMatrix], e: &HermitianOperator) -> RealInterval {
    let vals: Vec<f64> = verts.iter().map(|v| v.expect(e)).collect();
    let lo = vals.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    RealInterval::snapped(lo, hi, 1e-12)
}

fn update_vertices(
    verts: &[DensityMatrix],
    povm: &FuzzyPOVM,
    j: usize,
) -> Result<Vec<DensityMatrix>> {
    exec::map(verts, |v| kraus_update_state(v, povm, j).map(|(r, _)| r))
        .into_iter()
        .collect()
}

/// Updates every vertex; exact because the normalized Kraus map sends
/// segments to segments.
pub fn update_single_parcel(p: &VertexParcel, povm: &FuzzyPOVM, j: usize) -> Result<UpdateReport> {
    povm.check_outcome(j)?;
    reject_sharp(povm)?;
    let probability = probability_range(p.vertices(), povm.effect(j));
    if !(probability.lo > PROB_FLOOR) {
        return Err(Error::VanishingProbability(probability.lo));
    }
    let updated = VertexParcel::new(update_vertices(p.vertices(), povm, j)?)?;
    let volume_before = p.volume().value;
    let volume_after = updated.volume().value;
    let info = |v: Option<f64>| v.and_then(|x| parcel::information_single(x).ok());
    Ok(UpdateReport {
        outcome: j,
        eta: povm.eta(),
        information_before: info(volume_before),
        information_after: info(volume_after),
        possible: updated,
        impossible: None,
        probability,
        volume_before,
        volume_after,
        impossible_volume_own_span: None,
        impossible_volume_before: None,
        impossible_volume_after: None,
        positivity: None,
        separation: None,
        certificate: None,
    })
}

/// Removes near-duplicates.
fn dedupe(verts: Vec<DensityMatrix>) -> Vec<DensityMatrix> {
    let flat: Vec<Vec<f64>> = verts
        .iter()
        .map(|v| v.op().matrix().iter().flat_map(|z| [z.re, z.im]).collect())
        .collect();
    // points within DEDUPE_TOL have keys within DEDUPE_TOL·‖w‖ of each other
    let weights: Vec<f64> = (0..flat.first().map_or(0, Vec::len))
        .map(|i| ((i as f64 + 1.0) * 0.618_033_988_75).fract() + 0.5)
        .collect();
    let window = DEDUPE_TOL * weights.iter().map(|w| w * w).sum::<f64>().sqrt();
    let keys: Vec<f64> = flat
        .iter()
        .map(|x| x.iter().zip(&weights).map(|(a, w)| a * w).sum())
        .collect();
    let mut order: Vec<usize> = (0..verts.len()).collect();
    order.sort_by(|&a, &b| keys[a].total_cmp(&keys[b]).then(a.cmp(&b)));
    let mut keep = vec![true; verts.len()];
    for (pos, &i) in order.iter().enumerate() {
        for &l in order[..pos].iter().rev() {
            if keys[i] - keys[l] > window {
                break;
            }
            if keep[l] {
                let d = flat[i]
                    .iter()
                    .zip(&flat[l])
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt();
                if d <= DEDUPE_TOL {
                    keep[i] = false;
                    break;
                }
            }
        }
    }
    verts
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(v, _)| v)
        .collect()
}

/// Drops vertices lying in the hull of the others.
pub fn prune_vertices(verts: Vec<DensityMatrix>) -> Vec<DensityMatrix> {
    let verts = dedupe(verts);
    if verts.len() <= 1 || verts.len() > PRUNE_LIMIT {
        return verts;
    }
    let ops: Vec<&HermitianOperator> = verts.iter().map(|v| v.op()).collect();
    let chart = affine_chart(verts[0].dim(), &ops);
    if chart.is_empty() {
        return vec![verts[0].clone()];
    }
    let coords = coords_in(&chart, &verts);
    let mut keep = vec![true; verts.len()];
    for i in 0..verts.len() {
        let others: Vec<Vec<f64>> = (0..verts.len())
            .filter(|&l| l != i && keep[l])
            .map(|l| coords[l].clone())
            .collect();
        if others.len() > chart.len() && lp::hull_membership(&others, &coords[i]).is_some() {
            keep[i] = false;
        }
    }
    verts
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(v, _)| v)
        .collect()
}

fn pair_information(first: &VertexParcel, second: &VertexParcel) -> Option<f64> {
    let (v1, v2) = parcel::common_volumes(
        &Parcel::Vertex(first.clone()),
        &Parcel::Vertex(second.clone()),
    )
    .ok()?;
    let v1 = v1.value?;
    if !(v1 > 0.0) {
        return None;
    }
    Some(v2.value? / v1)
}

/// Updates a double parcel on outcome j. The theorem conditions are
/// evaluated and reported; disjointness of the result is decided by linear
/// programming, and a shared point is returned as [`Error::Intersecting`].
pub fn update_double_parcel(
    dp: &DoubleParcel,
    povm: &FuzzyPOVM,
    j: usize,
    h: &HermitianOperator,
) -> Result<UpdateReport> {
    update_double_parcel_with(dp, povm, j, h, DEFAULT_DELTA_THRESHOLD)
}

pub fn update_double_parcel_with(
    dp: &DoubleParcel,
    povm: &FuzzyPOVM,
    j: usize,
    h: &HermitianOperator,
    delta_threshold: f64,
) -> Result<UpdateReport> {
    povm.check_outcome(j)?;
    reject_sharp(povm)?;
    let o1 = dp.possible().to_vrep()?;
    let o2 = dp.impossible().map(|p| p.to_vrep()).transpose()?;
    let positivity = check_uniform_positivity(&o1, o2.as_ref(), povm, j, delta_threshold)?;
    let separation = match &o2 {
        Some(o2) => Some(check_separation(&o1, o2, h, povm, j)?),
        None => None,
    };
    let probability = probability_range(o1.vertices(), povm.effect(j));
    if !(probability.lo > PROB_FLOOR) {
        return Err(Error::VanishingProbability(probability.lo));
    }
    let possible = VertexParcel::new(update_vertices(o1.vertices(), povm, j)?)?;

    let mut raw: Vec<DensityMatrix> = Vec::new();
    if let Some(o2) = &o2 {
        raw.extend(o2.vertices().iter().cloned());
    }
    for i in (0..povm.len()).filter(|&i| i != j) {
        for v in o1.vertices() {
            if let Ok((r, _)) = kraus_update_state(v, povm, i) {
                raw.push(r);
            }
        }
    }
    if let Some(o2) = &o2 {
        raw.extend(update_vertices(o2.vertices(), povm, j)?);
    }
    let impossible = if raw.is_empty() {
        None
    } else {
        Some(VertexParcel::new(prune_vertices(raw))?)
    };

    let (impossible_volume_own_span, impossible_volume_before) = match (&o2, &impossible) {
        (Some(before), Some(after)) => {
            let own = before.volume().value;
            let w = after.ambient_basis();
            let embedded = if before.affine_dim() < w.len() {
                Some(0.0)
            } else {
                chart_volume(w, before.vertices()).value
            };
            (own, embedded)
        }
        (Some(before), None) => (before.volume().value, before.volume().value),
        _ => (None, None),
    };
    let information_before = match &o2 {
        Some(o2) => pair_information(&o1, o2),
        None => Some(0.0),
    };
    let information_after = match &impossible {
        Some(imp) => pair_information(&possible, imp),
        None => Some(0.0),
    };
    let mut report = UpdateReport {
        outcome: j,
        eta: povm.eta(),
        probability,
        volume_before: o1.volume().value,
        volume_after: possible.volume().value,
        impossible_volume_own_span,
        impossible_volume_before,
        impossible_volume_after: impossible.as_ref().and_then(|p| p.volume().value),
        information_before,
        information_after,
        positivity: Some(positivity),
        separation,
        certificate: None,
        possible,
        impossible,
    };
    if let Some(imp) = &report.impossible {
        match parcel::separate(report.possible.vertices(), imp.vertices())? {
            Ok(cert) => report.certificate = Some(cert),
            Err(witness) => {
                return Err(Error::Intersecting(Box::new(Intersection {
                    witness,
                    report,
                })))
            }
        }
    }
    Ok(report)
}

impl UpdateReport {
    /// The updated double parcel carrying the computed certificate.
    pub fn double_parcel(&self) -> Result<DoubleParcel> {
        DoubleParcel::with_certificate(
            Parcel::Vertex(self.possible.clone()),
            self.impossible.clone().map(Parcel::Vertex),
            self.certificate.clone(),
        )
    }
}

/// J = (1−η²)² / (1+ηz)⁴, the Jacobian of the Bloch alive update.
pub fn qubit_jacobian(z: f64, eta: f64) -> Result<f64> {
    let den = 1.0 + eta * z;
    if !(den > PROB_FLOOR) {
        return Err(Error::VanishingProbability(den / 2.0));
    }
    Ok((1.0 - eta * eta).powi(2) / den.powi(4))
}

/// Smallest η for which a qubit parcel with min Tr(ρΠ) = c contracts.
pub fn eta_threshold_qubit(c: f64) -> Result<f64> {
    if !(c > 0.0 && c <= 1.0) {
        return Err(Error::OutOfRange {
            name: "c",
            value: c,
        });
    }
    if c >= 0.5 {
        return Ok(0.0);
    }
    let a = 1.0 - 2.0 * c;
    Ok(2.0 * a / (1.0 + a * a))
}

/// |det M_j|^{2d} / Tr(ρE_j)^{d²}: the factor by which f_j scales
/// Hilbert–Schmidt volume on trace-one operators near ρ.
pub fn nqubit_jacobian(rho: &DensityMatrix, povm: &FuzzyPOVM, j: usize) -> Result<f64> {
    povm.check_outcome(j)?;
    let d = povm.dim();
    if rho.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: rho.dim(),
        });
    }
    let r = povm.rank(j) as f64;
    let noise = povm.noise_level();
    let det_m = (povm.eta() + noise).powf(r / 2.0) * noise.powf((d as f64 - r) / 2.0);
    let p = rho.expect(povm.effect(j));
    if !(p > PROB_FLOOR) {
        return Err(Error::VanishingProbability(p));
    }
    let df = d as f64;
    Ok(det_m.powf(2.0 * df) / p.powf(df * df))
}

/// L_j = 2‖M_j‖²/δ.
pub fn lipschitz_constant(povm: &FuzzyPOVM, j: usize, delta: f64) -> Result<f64> {
    povm.check_outcome(j)?;
    if !(delta > PROB_FLOOR) {
        return Err(Error::VanishingProbability(delta));
    }
    Ok(2.0 * povm.kraus(j).op_norm().powi(2) / delta)
}

/// Box containing the image of a box under f_j: the center is mapped
/// exactly and every interval gets width L_j · D, D the trace-norm diameter.
pub fn lipschitz_outer_update(
    p: &parcel::HyperRectParcel,
    povm: &FuzzyPOVM,
    j: usize,
) -> Result<parcel::HyperRectParcel> {
    povm.check_outcome(j)?;
    if p.dim() != povm.dim() {
        return Err(Error::DimensionMismatch {
            expected: povm.dim(),
            found: p.dim(),
        });
    }
    let basis = p.basis();
    if !basis.spans_state_space() {
        return Err(Error::IncompleteBasis {
            missing: basis.missing_directions(),
            residual: 0.0,
        });
    }
    let e = povm.effect(j);
    let delta = p
        .corner_operators()
        .iter()
        .map(|x| x.tr_mul(e))
        .fold(f64::INFINITY, f64::min);
    let center = p.center_operator();
    let (image, q) = povm.apply(&center, j);
    if !(q > PROB_FLOOR) {
        return Err(Error::VanishingProbability(q));
    }
    let image = image.scale(1.0 / q);
    let mut lip = lipschitz_constant(povm, j, delta)?;
    // the 2‖M‖² form assumes a positive center
    lip = lip.max(povm.kraus(j).op_norm().powi(2) / delta * (1.0 + image.trace_norm()));
    let diameter = 2.0 * p.trace_radius();
    let x = basis.coords(&image);
    let half: Vec<f64> = basis
        .elements()
        .iter()
        .map(|h| 0.5 * lip * diameter * h.op_norm().max(1.0))
        .collect();
    let lo = x.iter().zip(&half).map(|(v, w)| v - w).collect();
    let hi = x.iter().zip(&half).map(|(v, w)| v + w).collect();
    parcel::HyperRectParcel::new(basis.clone(), lo, hi)
}

/// Smallest grid value from which Vol(f_j(p)) < Vol(p) holds for every
/// larger grid value; `None` if contraction fails at the largest.
pub fn eta_threshold_search(
    p: &VertexParcel,
    projectors: &[HermitianOperator],
    noise: NoiseDenominator,
    j: usize,
    grid: &[f64],
) -> Result<Option<f64>> {
    let mut etas = grid.to_vec();
    etas.sort_by(f64::total_cmp);
    let flags: Vec<Result<bool>> = exec::map(&etas, |&eta| {
        let povm = FuzzyPOVM::new(projectors.to_vec(), eta, noise)?;
        let rep = update_single_parcel(p, &povm, j)?;
        Ok(rep.volume_decreased().unwrap_or(false))
    });
    let mut threshold = None;
    for (eta, f) in etas.iter().zip(flags).rev() {
        if f? {
            threshold = Some(*eta);
        } else {
            break;
        }
    }
    Ok(threshold)
}

/// Alive/dead measurement of a qubit in the computational basis.
pub fn qubit_povm(eta: f64) -> Result<FuzzyPOVM> {
    FuzzyPOVM::new(
        vec![
            HermitianOperator::from_real_diag(&[1.0, 0.0]),
            HermitianOperator::from_real_diag(&[0.0, 1.0]),
        ],
        eta,
        NoiseDenominator::Outcomes,
    )
}

/// Projector pair {P, I − P}.
pub fn binary_projectors(p: &HermitianOperator) -> Vec<HermitianOperator> {
    vec![p.clone(), HermitianOperator::identity(p.dim()).sub(p)]
}
