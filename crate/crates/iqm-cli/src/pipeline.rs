//! Generic pipeline: build a parcel, evolve it, measure it, report.

use iqm::dynamics::{evolve_vrep, propagator, UnitaryOperator};
use iqm::measurement::{
    update_double_parcel, update_single_parcel, FuzzyPOVM, NoiseDenominator, UpdateReport,
};
use iqm::observables::expectation_interval_vrep;
use iqm::operator::{
    complete_hermitian_basis, gell_mann_basis, pauli_product_basis, ObservableBasis,
};
use iqm::parcel::{mc_psd_volume, uniform_parcel, Projection};
use iqm::{DoubleParcel, Error, HermitianOperator, Parcel, VertexParcel};
use iqm_lab::{Row, ScenarioResult};

use crate::config::{
    self, build_operator, build_state, build_unitary, BasisKind, NoiseKind, PipelineConfig,
    ProjectionKind, StateSpec,
};
use crate::dispatch::RunError;
use crate::parcel_io::{parcel_from_spec, parcel_to_spec, ParcelSpec};

fn basis_for(kind: BasisKind, dim: usize) -> ObservableBasis {
    match kind {
        BasisKind::Pauli => pauli_product_basis(dim.trailing_zeros() as usize),
        BasisKind::GellMann => gell_mann_basis(dim),
        BasisKind::Hermitian => complete_hermitian_basis(dim),
    }
}

fn projection(kind: ProjectionKind) -> Projection {
    match kind {
        ProjectionKind::Radial => Projection::Radial,
        ProjectionKind::EigenClip => Projection::EigenClip,
        ProjectionKind::None => Projection::None,
    }
}

/// The initial set before conversion: an eps-box, a singleton, or an
/// explicit parcel.
fn initial(
    path: &str,
    state: &Option<StateSpec>,
    eps: Option<f64>,
    parcel: &Option<ParcelSpec>,
    kind: BasisKind,
) -> Result<Parcel, RunError> {
    Ok(match (state, eps, parcel) {
        (Some(s), Some(e), _) => {
            let rho = build_state(&format!("{path}state"), s)?;
            if e == 0.0 {
                Parcel::Vertex(VertexParcel::singleton(rho))
            } else {
                Parcel::Hyper(uniform_parcel(&rho, &basis_for(kind, rho.dim()), e)?)
            }
        }
        (_, _, Some(spec)) => parcel_from_spec(&format!("{path}parcel"), spec)?,
        _ => {
            return Err(config::ConfigError::new(
                format!("{path}state"),
                "give state and eps, or parcel",
            )
            .into())
        }
    })
}

/// Vertex form moved by `u`, with the number of projected corners.
fn prepared(
    p: &Parcel,
    proj: Projection,
    u: &UnitaryOperator,
) -> Result<(VertexParcel, usize), RunError> {
    let (v, moved) = match p {
        Parcel::Vertex(v) => (v.clone(), 0),
        Parcel::Hyper(h) => h.to_vrep(proj)?,
    };
    if let Some(bad) = v
        .vertices()
        .iter()
        .map(|x| x.op().min_eigenvalue())
        .find(|&m| m < -iqm::operator::PSD_TOL)
    {
        return Err(Error::Physicality(format!(
            "box corner with eigenvalue {bad:.3e}; choose a projection"
        ))
        .into());
    }
    Ok((evolve_vrep(&v, u)?, moved))
}

pub fn run_pipeline(cfg: &PipelineConfig, seed: u64) -> Result<ScenarioResult, RunError> {
    let proj = projection(cfg.projection);
    let start = initial("", &cfg.state, cfg.eps, &cfg.parcel, cfg.basis)?;
    let d = start.dim();
    let u = match (&cfg.hamiltonian, cfg.time, &cfg.unitary) {
        (Some(h), Some(t), _) => propagator(&build_operator("hamiltonian", h)?, t),
        (_, _, Some(m)) => build_unitary("unitary", m)?,
        _ => UnitaryOperator::identity(d),
    };
    let mc = match (&start, cfg.samples) {
        (Parcel::Hyper(h), n) if n > 0 => Some(mc_psd_volume(h, n, seed)?),
        _ => None,
    };
    let (possible, moved) = prepared(&start, proj, &u)?;
    let double = match (&cfg.impossible, &cfg.separator) {
        (Some(imp), Some(h)) => {
            let other = initial("impossible.", &imp.state, imp.eps, &imp.parcel, cfg.basis)?;
            let (v, _) = prepared(&other, proj, &u)?;
            let dp = DoubleParcel::new(Parcel::Vertex(possible.clone()), Some(Parcel::Vertex(v)))?;
            Some((dp, build_operator("separator", h)?))
        }
        _ => None,
    };
    let projectors: Vec<HermitianOperator> = match &cfg.projectors {
        Some(ps) => ps
            .iter()
            .enumerate()
            .map(|(i, p)| build_operator(&format!("projectors[{i}]"), p))
            .collect::<Result<_, _>>()?,
        None => (0..d)
            .map(|k| {
                let mut diag = vec![0.0; d];
                diag[k] = 1.0;
                HermitianOperator::from_real_diag(&diag)
            })
            .collect(),
    };
    let noise = match cfg.noise {
        NoiseKind::Outcomes => NoiseDenominator::Outcomes,
        NoiseKind::Dimension => NoiseDenominator::Dimension,
    };
    let observables: Vec<HermitianOperator> = cfg
        .observables
        .iter()
        .enumerate()
        .map(|(i, o)| build_operator(&format!("observables[{i}]"), o))
        .collect::<Result<_, _>>()?;

    let mut out = ScenarioResult::new("pipeline");
    let mut any_intersected = false;
    let mut all_contracted = true;
    let mut updated = Vec::new();
    for eta in config::eta_grid(cfg.eta, &cfg.etas, &config::DEFAULT_PIPELINE_ETAS) {
        let povm = FuzzyPOVM::new(projectors.clone(), eta, noise)?;
        let (rep, disjoint): (UpdateReport, Option<bool>) = match &double {
            None => (update_single_parcel(&possible, &povm, cfg.outcome)?, None),
            Some((dp, h)) => match update_double_parcel(dp, &povm, cfg.outcome, h) {
                Ok(r) => (r, Some(true)),
                Err(Error::Intersecting(x)) => (x.report, Some(false)),
                Err(e) => return Err(e.into()),
            },
        };
        any_intersected |= disjoint == Some(false);
        let contracted = rep.volume_decreased();
        all_contracted &= contracted != Some(false);
        let ratio = match (rep.information_before, rep.information_after) {
            (Some(b), Some(a)) if b > 0.0 => Some(a / b),
            _ => None,
        };
        let mut row = Row::new()
            .opt_real("eps", cfg.eps)
            .real("eta", eta)
            .int("outcome", cfg.outcome as i64)
            .int("projected_corners", moved as i64)
            .int("vertices", rep.possible.vertices().len() as i64)
            .opt_real("mc_volume", mc.map(|m| m.estimate))
            .opt_real("mc_stderr", mc.map(|m| m.stderr))
            .interval("prob", &rep.probability)
            .opt_real("volume_before", rep.volume_before)
            .opt_real("volume_after", rep.volume_after)
            .opt_flag("contracted", contracted)
            .opt_flag("double_disjoint", disjoint)
            .opt_real("info_before", rep.information_before)
            .opt_real("info_after", rep.information_after)
            .opt_real("info_ratio", ratio)
            .opt_flag(
                "conditions_verified",
                double.as_ref().map(|_| rep.conditions_verified()),
            );
        for (k, o) in observables.iter().enumerate() {
            row = row.interval(
                &format!("obs{k}"),
                &expectation_interval_vrep(&rep.possible, o)?,
            );
        }
        out.push(row);
        updated.push(serde_json::json!({ "eta": eta, "parcel": parcel_to_spec(&Parcel::Vertex(rep.possible)) }));
    }
    if let Some(path) = &cfg.parcel_out {
        let text = serde_json::to_string_pretty(&updated).expect("parcel JSON");
        std::fs::write(path, text + "\n")?;
    }
    out.verdict("contracted", if all_contracted { "yes" } else { "no" });
    if double.is_some() {
        out.verdict(
            "double",
            if any_intersected {
                "intersected"
            } else {
                "disjoint"
            },
        );
        out.intersected = any_intersected;
    }
    Ok(out)
}
