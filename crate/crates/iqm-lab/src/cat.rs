//! Alive/dead measurement of a qubit cat, single and double parcel.

use iqm::measurement::{qubit_povm, update_double_parcel, update_single_parcel, UpdateReport};
use iqm::observables::expectation_interval_vrep;
use iqm::operator::{c, pauli_product_basis, C64};
use iqm::parcel::{uniform_parcel, HyperRectParcel, Projection};
use iqm::{
    exec, DensityMatrix, DoubleParcel, Error, HermitianOperator, Parcel, Result, VertexParcel,
};

use crate::result::{Row, ScenarioResult};

/// Impossible set of the double-parcel run: a box of Bloch vectors around
/// the dead state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatDouble {
    /// Tolerance of the possible set around |ψ⟩, normalized coordinates.
    pub eps1: f64,
    /// Bloch z range of the impossible set.
    pub z_range: (f64, f64),
    /// Bloch half-width in x and y of the impossible set.
    pub xy: f64,
}

impl Default for CatDouble {
    fn default() -> Self {
        Self {
            eps1: 0.05,
            z_range: (-0.9, -0.8),
            xy: 0.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatOptions {
    pub alpha: C64,
    pub beta: C64,
    pub eps: f64,
    pub etas: Vec<f64>,
    pub double: Option<CatDouble>,
}

pub fn bloch_of(alpha: C64, beta: C64) -> (f64, f64, f64) {
    let ab = alpha.conj() * beta;
    (2.0 * ab.re, 2.0 * ab.im, alpha.norm_sqr() - beta.norm_sqr())
}

fn alive() -> DensityMatrix {
    DensityMatrix::basis_state(2, 0)
}

/// −|1⟩⟨1|.
pub fn cat_separator() -> HermitianOperator {
    HermitianOperator::from_real_diag(&[0.0, -1.0])
}

pub fn cat_double_parcel(psi: &DensityMatrix, cfg: &CatDouble) -> Result<DoubleParcel> {
    let basis = pauli_product_basis(1);
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let o1 = uniform_parcel(psi, &basis, cfg.eps1)?
        .to_vrep(Projection::Radial)?
        .0;
    let (z0, z1) = cfg.z_range;
    let o2 = HyperRectParcel::new(
        basis,
        vec![-cfg.xy * r, -cfg.xy * r, z0 * r],
        vec![cfg.xy * r, cfg.xy * r, z1 * r],
    )?;
    let (o2, moved) = o2.to_vrep(Projection::Radial)?;
    if moved > 0 {
        return Err(Error::Physicality(
            "impossible box leaves the Bloch ball".into(),
        ));
    }
    DoubleParcel::new(Parcel::Vertex(o1), Some(Parcel::Vertex(o2)))
}

fn trace_distances(p: &VertexParcel, target: &DensityMatrix) -> (f64, f64) {
    let d: Vec<f64> = p
        .vertices()
        .iter()
        .map(|v| v.trace_distance(target))
        .collect();
    (
        d.iter().copied().fold(f64::INFINITY, f64::min),
        d.iter().copied().fold(0.0, f64::max),
    )
}

enum DoubleOutcome {
    Disjoint(Box<UpdateReport>),
    Intersected(Box<UpdateReport>),
}

pub fn run_cat(opts: &CatOptions) -> Result<ScenarioResult> {
    let (alpha, beta) = (opts.alpha, opts.beta);
    let norm = alpha.norm_sqr() + beta.norm_sqr();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::OutOfRange {
            name: "|alpha|^2+|beta|^2",
            value: norm,
        });
    }
    let (x0, y0, z0) = bloch_of(alpha, beta);
    let mut out = ScenarioResult::new("cat");
    let base = |eta: f64| {
        Row::new()
            .real("alpha_re", alpha.re)
            .real("alpha_im", alpha.im)
            .real("beta_re", beta.re)
            .real("beta_im", beta.im)
            .real("eps", opts.eps)
            .real("eta", eta)
            .real("prob_center_state", 0.5 * (1.0 + eta * z0))
    };
    if alpha.norm() < 1e-12 {
        for &eta in &opts.etas {
            out.push(
                base(eta)
                    .text("status", "dead-certain")
                    .opt_interval("prob", None)
                    .opt_real("alive_entry", None)
                    .opt_real("dist_min", None)
                    .opt_real("dist_max", None)
                    .opt_real("volume_before", None)
                    .opt_real("volume_after", None)
                    .opt_flag("double_disjoint", None)
                    .opt_real("info_before", None)
                    .opt_real("info_after", None)
                    .opt_real("delta", None)
                    .opt_real("c1", None)
                    .opt_real("c2", None),
            );
        }
        out.verdict("status", "dead-certain");
        return Ok(out);
    }
    let psi = DensityMatrix::pure(&[alpha, beta])?;
    let parcel = if opts.eps == 0.0 {
        VertexParcel::singleton(psi.clone())
    } else {
        uniform_parcel(&psi, &pauli_product_basis(1), opts.eps)?
            .to_vrep(Projection::Radial)?
            .0
    };
    let dp = match &opts.double {
        Some(cfg) => Some(cat_double_parcel(&psi, cfg)?),
        None => None,
    };
    let h = cat_separator();
    let target = alive();
    let rows = exec::map(&opts.etas, |&eta| -> Result<Row> {
        let povm = qubit_povm(eta)?;
        let rep = update_single_parcel(&parcel, &povm, 0)?;
        let (dmin, dmax) = trace_distances(&rep.possible, &target);
        let alive_entry = rep.possible.centroid().matrix()[(0, 0)].re;
        let prob = expectation_interval_vrep(&parcel, povm.effect(0))?;
        let double = match &dp {
            None => None,
            Some(dp) => Some(match update_double_parcel(dp, &povm, 0, &h) {
                Ok(r) => DoubleOutcome::Disjoint(Box::new(r)),
                Err(Error::Intersecting(x)) => DoubleOutcome::Intersected(Box::new(x.report)),
                Err(e) => return Err(e),
            }),
        };
        let (disjoint, drep) = match &double {
            None => (None, None),
            Some(DoubleOutcome::Disjoint(r)) => (Some(true), Some(r.as_ref())),
            Some(DoubleOutcome::Intersected(r)) => (Some(false), Some(r.as_ref())),
        };
        let sep = drep.and_then(|r| r.separation.as_ref());
        Ok(base(eta)
            .text("status", "updated")
            .interval("prob", &prob)
            .real("alive_entry", alive_entry)
            .real("dist_min", dmin)
            .real("dist_max", dmax)
            .opt_real("volume_before", rep.volume_before)
            .opt_real("volume_after", rep.volume_after)
            .opt_flag("double_disjoint", disjoint)
            .opt_real("info_before", drep.and_then(|r| r.information_before))
            .opt_real("info_after", drep.and_then(|r| r.information_after))
            .opt_real(
                "delta",
                drep.and_then(|r| r.positivity.map(|p| p.delta_outcome)),
            )
            .opt_real("c1", sep.map(|s| s.c1))
            .opt_real("c2", sep.map(|s| s.c2)))
    });
    for r in rows {
        out.push(r?);
    }
    out.verdict("bloch", format!("({x0:.6}, {y0:.6}, {z0:.6})"));
    if dp.is_some() {
        let all = out
            .column("double_disjoint")
            .iter()
            .all(|v| v.as_bool() == Some(true));
        out.intersected = !all;
        out.verdict("double", if all { "disjoint" } else { "intersected" });
    }
    Ok(out)
}

pub fn cat_options(alpha: C64, beta: C64, eps: f64, etas: Vec<f64>) -> CatOptions {
    CatOptions {
        alpha,
        beta,
        eps,
        etas,
        double: None,
    }
}

pub fn equal_superposition() -> (C64, C64) {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    (c(r, 0.0), c(r, 0.0))
}
