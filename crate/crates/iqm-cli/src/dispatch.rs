//! Runs a validated configuration and maps outcomes to exit codes.

use iqm::operator::c;
use iqm::{DensityMatrix, Error, HermitianOperator};
use iqm_lab::bell::BellDouble;
use iqm_lab::{
    cat, run_bell_with, run_cat, run_counterexample, run_double_slit, run_reduction, CatDouble,
    ScenarioResult,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{self, build_operator, build_state, ConfigError, ErrorKind, ScenarioConfig};
use crate::pipeline::run_pipeline;

pub const EXIT_OK: i32 = 0;
pub const EXIT_OTHER: i32 = 1;
pub const EXIT_SCHEMA: i32 = 2;
pub const EXIT_PHYSICALITY: i32 = 3;
pub const EXIT_DISJOINTNESS: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("configuration error at {0}")]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Model(#[from] Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(e) => match e.kind {
                ErrorKind::Schema => EXIT_SCHEMA,
                ErrorKind::Physicality => EXIT_PHYSICALITY,
            },
            RunError::Model(e) => match e {
                Error::Physicality(_)
                | Error::NotDensity { .. }
                | Error::NegativeEigenvalue { .. }
                | Error::OutsideBlochBall { .. } => EXIT_PHYSICALITY,
                Error::Intersecting(_) => EXIT_DISJOINTNESS,
                Error::OutOfRange { .. }
                | Error::NotHermitian { .. }
                | Error::NotUnitary { .. }
                | Error::NotSquare { .. }
                | Error::DimensionMismatch { .. }
                | Error::InvalidMeasurement(_)
                | Error::IncompleteBasis { .. }
                | Error::SeparationNotSupported { .. } => EXIT_SCHEMA,
                _ => EXIT_OTHER,
            },
            RunError::Io(_) => EXIT_OTHER,
        }
    }
}

#[derive(Debug)]
pub struct Outcome {
    pub result: ScenarioResult,
    pub summary: String,
    pub exit_code: i32,
}

/// Random Hermitian operator with spectrum inside [-1, 1].
pub fn random_observable(dim: usize, rng: &mut ChaCha8Rng) -> HermitianOperator {
    let g = iqm::operator::CMat::from_fn(dim, dim, |_, _| {
        c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    let h = HermitianOperator::from_matrix_unchecked((&g + g.adjoint()) * c(0.5, 0.0));
    let n = h.op_norm();
    if n > 0.0 {
        h.scale(1.0 / n)
    } else {
        h
    }
}

fn run_scenario(cfg: &ScenarioConfig) -> Result<ScenarioResult, RunError> {
    Ok(match cfg {
        ScenarioConfig::Bell(b) => {
            let double = b.double.then(|| {
                let d = BellDouble::default();
                BellDouble {
                    eta: b.eta.unwrap_or(d.eta),
                    ..d
                }
            });
            run_bell_with(b.eps, double)?
        }
        ScenarioConfig::Cat(k) => {
            let etas = config::eta_grid(k.eta, &k.etas, &config::DEFAULT_CAT_ETAS);
            let mut opts = cat::cat_options(
                c(k.alpha[0], k.alpha[1]),
                c(k.beta[0], k.beta[1]),
                k.eps,
                etas,
            );
            if k.double {
                opts.double = Some(CatDouble::default());
            }
            run_cat(&opts)?
        }
        ScenarioConfig::DoubleSlit(s) => {
            let etas = config::eta_grid(s.eta, &s.etas, &config::DEFAULT_SLIT_ETAS);
            run_double_slit(s.eps, &etas, &s.phis)?
        }
        ScenarioConfig::Reduction(r) => {
            let rho: DensityMatrix = build_state("rho0", &r.rho0)?;
            let mut obs = r
                .observables
                .iter()
                .enumerate()
                .map(|(i, o)| build_operator(&format!("observables[{i}]"), o))
                .collect::<Result<Vec<_>, _>>()?;
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed());
            for _ in 0..r.random_observables {
                obs.push(random_observable(rho.dim(), &mut rng));
            }
            run_reduction(&rho, r.n_max, &obs)?
        }
        ScenarioConfig::Counterexample(x) => {
            let etas = config::eta_grid(x.eta, &x.etas, &config::DEFAULT_COUNTEREXAMPLE_ETAS);
            run_counterexample(x.which, &etas)?
        }
        ScenarioConfig::Pipeline(p) => run_pipeline(p, cfg.seed())?,
    })
}

fn summarize(result: &ScenarioResult) -> String {
    let mut parts: Vec<String> = result
        .verdicts
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect();
    let has_verdict = result.verdict_of("contracted").is_some();
    if let (false, Some(b), Some(a)) = (
        has_verdict,
        result.column_index("volume_before"),
        result.column_index("volume_after"),
    ) {
        let pairs: Vec<(f64, f64)> = result
            .rows
            .iter()
            .filter_map(|r| Some((r[b].as_real()?, r[a].as_real()?)))
            .filter(|(vb, _)| *vb > 0.0)
            .collect();
        if !pairs.is_empty() {
            let all = pairs.iter().all(|(vb, va)| va < vb);
            parts.push(format!("contracted={}", if all { "yes" } else { "no" }));
        }
    }
    if let (Some(b), Some(a)) = (
        result.column_index("info_before"),
        result.column_index("info_after"),
    ) {
        let last = result
            .rows
            .iter()
            .rev()
            .find_map(|r| Some((r[b].as_real()?, r[a].as_real()?)));
        if let Some((ib, ia)) = last {
            parts.push(format!("info_ratio={}", crate::csv_out::format_g(ia / ib)));
        }
    }
    format!("{}: {}", result.scenario, parts.join(" "))
}

/// Runs the scenario and decides the exit status.
pub fn dispatch(cfg: &ScenarioConfig) -> Result<Outcome, RunError> {
    let mut result = run_scenario(cfg)?;
    let exit_code = if result.intersected {
        if cfg.expect_failure() {
            result.verdict("outcome", "intersected as expected");
            EXIT_OK
        } else {
            result.verdict("outcome", "intersected");
            EXIT_DISJOINTNESS
        }
    } else {
        if cfg.expect_failure() {
            result.verdict("outcome", "expected failure not observed");
        }
        EXIT_OK
    };
    let summary = summarize(&result);
    Ok(Outcome {
        result,
        summary,
        exit_code,
    })
}
