//! Strict JSON scenario configurations.

use iqm::dynamics::UnitaryOperator;
use iqm::operator::{c, pauli_string, CMat};
use iqm::{DensityMatrix, HermitianOperator};
use serde::{Deserialize, Serialize};

use crate::parcel_io::{parcel_from_spec, ParcelSpec};

/// Inline complex entries are `[re, im]` pairs, rows outermost.
pub type MatrixSpec = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OperatorSpec {
    /// A Pauli string such as "ZI", or "proj:<d>:<k>" for |k⟩⟨k| in dimension d.
    Label(String),
    Matrix(MatrixSpec),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateSpec {
    /// "zero", "one", "plus", "minus", "phi+", "basis:<d>:<k>" or "mixed:<d>".
    Label(String),
    Matrix(MatrixSpec),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasisKind {
    #[default]
    Pauli,
    GellMann,
    Hermitian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProjectionKind {
    #[default]
    Radial,
    EigenClip,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoiseKind {
    #[default]
    Outcomes,
    Dimension,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BellConfig {
    pub eps: f64,
    #[serde(default = "yes")]
    pub double: bool,
    pub eta: Option<f64>,
    pub out: Option<String>,
    pub seed: Option<u64>,
    #[serde(default)]
    pub expect_failure: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatConfig {
    pub alpha: [f64; 2],
    pub beta: [f64; 2],
    #[serde(default)]
    pub eps: f64,
    pub eta: Option<f64>,
    pub etas: Option<Vec<f64>>,
    #[serde(default)]
    pub double: bool,
    pub out: Option<String>,
    pub seed: Option<u64>,
    #[serde(default)]
    pub expect_failure: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DoubleSlitConfig {
    pub eps: f64,
    pub eta: Option<f64>,
    pub etas: Option<Vec<f64>>,
    pub phis: Vec<f64>,
    pub out: Option<String>,
    pub seed: Option<u64>,
    #[serde(default)]
    pub expect_failure: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReductionConfig {
    pub rho0: StateSpec,
    pub n_max: usize,
    #[serde(default)]
    pub observables: Vec<OperatorSpec>,
    /// Additional random observables with spectrum in [-1, 1], drawn from `seed`.
    #[serde(default)]
    pub random_observables: usize,
    pub out: Option<String>,
    pub seed: Option<u64>,
    #[serde(default)]
    pub expect_failure: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CounterexampleConfig {
    pub which: u8,
    pub eta: Option<f64>,
    pub etas: Option<Vec<f64>>,
    pub out: Option<String>,
    pub seed: Option<u64>,
    #[serde(default)]
    pub expect_failure: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImpossibleConfig {
    pub state: Option<StateSpec>,
    pub eps: Option<f64>,
    pub parcel: Option<ParcelSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineConfig {
    /// Centre of an eps-box; alternatively `parcel` gives the set directly.
    pub state: Option<StateSpec>,
    pub eps: Option<f64>,
    pub parcel: Option<ParcelSpec>,
    /// Where to write the updated possible parcel as JSON, one per eta.
    pub parcel_out: Option<String>,
    #[serde(default)]
    pub basis: BasisKind,
    #[serde(default)]
    pub projection: ProjectionKind,
    pub hamiltonian: Option<OperatorSpec>,
    pub time: Option<f64>,
    pub unitary: Option<MatrixSpec>,
    /// Orthogonal projectors summing to the identity; computational basis if absent.
    pub projectors: Option<Vec<OperatorSpec>>,
    #[serde(default)]
    pub outcome: usize,
    pub eta: Option<f64>,
    pub etas: Option<Vec<f64>>,
    #[serde(default)]
    pub noise: NoiseKind,
    pub impossible: Option<ImpossibleConfig>,
    pub separator: Option<OperatorSpec>,
    #[serde(default)]
    pub observables: Vec<OperatorSpec>,
    /// Monte Carlo samples for the state-space volume of the initial box.
    #[serde(default)]
    pub samples: usize,
    pub out: Option<String>,
    pub seed: Option<u64>,
    #[serde(default)]
    pub expect_failure: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[allow(clippy::large_enum_variant)]
#[serde(tag = "scenario", rename_all = "kebab-case")]
pub enum ScenarioConfig {
    Bell(BellConfig),
    Cat(CatConfig),
    DoubleSlit(DoubleSlitConfig),
    Reduction(ReductionConfig),
    Counterexample(CounterexampleConfig),
    Pipeline(PipelineConfig),
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Schema,
    /// A well-formed input that is not a physical state.
    Physicality,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{path}: {message}")]
pub struct ConfigError {
    pub path: String,
    pub message: String,
    pub kind: ErrorKind,
}

impl ConfigError {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            path: path.into(),
            message: message.into(),
            kind: ErrorKind::Schema,
        }
    }

    /// Classifies a model error raised while building an input.
    pub fn from_model(path: impl Into<String>, e: iqm::Error) -> Self {
        let kind = match e {
            iqm::Error::NotDensity { .. }
            | iqm::Error::NegativeEigenvalue { .. }
            | iqm::Error::OutsideBlochBall { .. }
            | iqm::Error::Physicality(_) => ErrorKind::Physicality,
            _ => ErrorKind::Schema,
        };
        Self {
            path: path.into(),
            message: e.to_string(),
            kind,
        }
    }
}

type CResult<T> = std::result::Result<T, ConfigError>;

pub const DEFAULT_CAT_ETAS: [f64; 3] = [0.9, 0.99, 0.999];
pub const DEFAULT_SLIT_ETAS: [f64; 5] = [0.01, 0.5, 0.9, 0.999, 0.9999];
pub const DEFAULT_COUNTEREXAMPLE_ETAS: [f64; 2] = [0.3, 0.999];
pub const DEFAULT_PIPELINE_ETAS: [f64; 1] = [0.9];

/// Parses and validates a UTF-8 JSON document.
pub fn parse_config(text: &[u8]) -> CResult<ScenarioConfig> {
    let text =
        std::str::from_utf8(text).map_err(|e| ConfigError::new("$", format!("not UTF-8: {e}")))?;
    let mut de = serde_json::Deserializer::from_str(text);
    let cfg: ScenarioConfig = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        ConfigError::new(
            if path == "." { "$".to_string() } else { path },
            e.into_inner().to_string(),
        )
    })?;
    validate(&cfg)?;
    Ok(cfg)
}

impl ScenarioConfig {
    pub fn kind(&self) -> &'static str {
        match self {
            ScenarioConfig::Bell(_) => "bell",
            ScenarioConfig::Cat(_) => "cat",
            ScenarioConfig::DoubleSlit(_) => "double-slit",
            ScenarioConfig::Reduction(_) => "reduction",
            ScenarioConfig::Counterexample(_) => "counterexample",
            ScenarioConfig::Pipeline(_) => "pipeline",
        }
    }

    pub fn out(&self) -> Option<&str> {
        match self {
            ScenarioConfig::Bell(c) => c.out.as_deref(),
            ScenarioConfig::Cat(c) => c.out.as_deref(),
            ScenarioConfig::DoubleSlit(c) => c.out.as_deref(),
            ScenarioConfig::Reduction(c) => c.out.as_deref(),
            ScenarioConfig::Counterexample(c) => c.out.as_deref(),
            ScenarioConfig::Pipeline(c) => c.out.as_deref(),
        }
    }

    pub fn seed(&self) -> u64 {
        let s = match self {
            ScenarioConfig::Bell(c) => c.seed,
            ScenarioConfig::Cat(c) => c.seed,
            ScenarioConfig::DoubleSlit(c) => c.seed,
            ScenarioConfig::Reduction(c) => c.seed,
            ScenarioConfig::Counterexample(c) => c.seed,
            ScenarioConfig::Pipeline(c) => c.seed,
        };
        s.unwrap_or(0)
    }

    pub fn expect_failure(&self) -> bool {
        match self {
            ScenarioConfig::Bell(c) => c.expect_failure,
            ScenarioConfig::Cat(c) => c.expect_failure,
            ScenarioConfig::DoubleSlit(c) => c.expect_failure,
            ScenarioConfig::Reduction(c) => c.expect_failure,
            ScenarioConfig::Counterexample(c) => c.expect_failure,
            ScenarioConfig::Pipeline(c) => c.expect_failure,
        }
    }

    /// The configuration with output destinations cleared; these do not
    /// affect results and are left out of the provenance hash.
    pub fn without_outputs(&self) -> Self {
        let mut c = self.clone();
        match &mut c {
            ScenarioConfig::Bell(x) => x.out = None,
            ScenarioConfig::Cat(x) => x.out = None,
            ScenarioConfig::DoubleSlit(x) => x.out = None,
            ScenarioConfig::Reduction(x) => x.out = None,
            ScenarioConfig::Counterexample(x) => x.out = None,
            ScenarioConfig::Pipeline(x) => (x.out, x.parcel_out) = (None, None),
        }
        c
    }

    /// Command-line overrides; the result is validated again.
    pub fn apply_overrides(&mut self, ov: &Overrides) -> CResult<()> {
        if let Some(out) = &ov.out {
            let slot = match self {
                ScenarioConfig::Bell(c) => &mut c.out,
                ScenarioConfig::Cat(c) => &mut c.out,
                ScenarioConfig::DoubleSlit(c) => &mut c.out,
                ScenarioConfig::Reduction(c) => &mut c.out,
                ScenarioConfig::Counterexample(c) => &mut c.out,
                ScenarioConfig::Pipeline(c) => &mut c.out,
            };
            *slot = Some(out.clone());
        }
        if let Some(seed) = ov.seed {
            let slot = match self {
                ScenarioConfig::Bell(c) => &mut c.seed,
                ScenarioConfig::Cat(c) => &mut c.seed,
                ScenarioConfig::DoubleSlit(c) => &mut c.seed,
                ScenarioConfig::Reduction(c) => &mut c.seed,
                ScenarioConfig::Counterexample(c) => &mut c.seed,
                ScenarioConfig::Pipeline(c) => &mut c.seed,
            };
            *slot = Some(seed);
        }
        if let Some(eta) = ov.eta {
            match self {
                ScenarioConfig::Bell(c) => c.eta = Some(eta),
                ScenarioConfig::Cat(c) => (c.eta, c.etas) = (Some(eta), None),
                ScenarioConfig::DoubleSlit(c) => (c.eta, c.etas) = (Some(eta), None),
                ScenarioConfig::Counterexample(c) => (c.eta, c.etas) = (Some(eta), None),
                ScenarioConfig::Pipeline(c) => (c.eta, c.etas) = (Some(eta), None),
                ScenarioConfig::Reduction(_) => {
                    return Err(ConfigError::new("--eta", "reduction has no measurement"))
                }
            }
        }
        if let Some(eps) = ov.eps {
            match self {
                ScenarioConfig::Bell(c) => c.eps = eps,
                ScenarioConfig::Cat(c) => c.eps = eps,
                ScenarioConfig::DoubleSlit(c) => c.eps = eps,
                ScenarioConfig::Pipeline(c) => c.eps = Some(eps),
                ScenarioConfig::Reduction(_) | ScenarioConfig::Counterexample(_) => {
                    return Err(ConfigError::new(
                        "--eps",
                        format!("{} has fixed tolerances", self.kind()),
                    ))
                }
            }
        }
        if let Some(n) = ov.samples {
            match self {
                ScenarioConfig::Pipeline(c) => c.samples = n,
                _ => {
                    return Err(ConfigError::new(
                        "--samples",
                        "only the pipeline draws Monte Carlo samples",
                    ))
                }
            }
        }
        validate(self)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub out: Option<String>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub eta: Option<f64>,
    pub eps: Option<f64>,
}

fn check_eta(path: &str, eta: f64) -> CResult<()> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(ConfigError::new(
            path,
            format!("eta = {eta} outside (0, 1)"),
        ));
    }
    Ok(())
}

fn check_eps(path: &str, eps: f64, allow_zero: bool) -> CResult<()> {
    let ok = eps.is_finite() && (eps > 0.0 || (allow_zero && eps == 0.0));
    if !ok {
        return Err(ConfigError::new(
            path,
            format!(
                "eps = {eps} must be {}",
                if allow_zero {
                    "non-negative"
                } else {
                    "positive"
                }
            ),
        ));
    }
    Ok(())
}

fn check_etas(eta: Option<f64>, etas: &Option<Vec<f64>>) -> CResult<()> {
    if eta.is_some() && etas.is_some() {
        return Err(ConfigError::new("eta", "give either eta or etas"));
    }
    if let Some(e) = eta {
        check_eta("eta", e)?;
    }
    if let Some(list) = etas {
        if list.is_empty() {
            return Err(ConfigError::new("etas", "empty grid"));
        }
        for (i, &e) in list.iter().enumerate() {
            check_eta(&format!("etas[{i}]"), e)?;
        }
    }
    Ok(())
}

pub fn eta_grid(eta: Option<f64>, etas: &Option<Vec<f64>>, default: &[f64]) -> Vec<f64> {
    match (eta, etas) {
        (Some(e), _) => vec![e],
        (None, Some(list)) => list.clone(),
        (None, None) => default.to_vec(),
    }
}

fn validate(cfg: &ScenarioConfig) -> CResult<()> {
    match cfg {
        ScenarioConfig::Bell(c) => {
            check_eps("eps", c.eps, false)?;
            if let Some(e) = c.eta {
                check_eta("eta", e)?;
            }
        }
        ScenarioConfig::Cat(c) => {
            check_eps("eps", c.eps, true)?;
            check_etas(c.eta, &c.etas)?;
            let norm =
                c.alpha[0].powi(2) + c.alpha[1].powi(2) + c.beta[0].powi(2) + c.beta[1].powi(2);
            if (norm - 1.0).abs() > 1e-10 {
                return Err(ConfigError::new(
                    "alpha",
                    format!("|alpha|^2 + |beta|^2 = {norm}, expected 1"),
                ));
            }
        }
        ScenarioConfig::DoubleSlit(c) => {
            check_eps("eps", c.eps, false)?;
            check_etas(c.eta, &c.etas)?;
            if c.phis.is_empty() {
                return Err(ConfigError::new("phis", "empty grid"));
            }
        }
        ScenarioConfig::Reduction(c) => {
            let rho = build_state("rho0", &c.rho0)?;
            if c.n_max == 0 || c.n_max > 30 {
                return Err(ConfigError::new(
                    "n_max",
                    format!("n_max = {} outside 1..=30", c.n_max),
                ));
            }
            if rho.dim() > 8 {
                return Err(ConfigError::new(
                    "rho0",
                    format!("dimension {} exceeds 8", rho.dim()),
                ));
            }
            for (i, o) in c.observables.iter().enumerate() {
                expect_dim(
                    &format!("observables[{i}]"),
                    &build_operator(&format!("observables[{i}]"), o)?,
                    rho.dim(),
                )?;
            }
        }
        ScenarioConfig::Counterexample(c) => {
            if c.which != 1 && c.which != 2 {
                return Err(ConfigError::new(
                    "which",
                    format!("which = {} must be 1 or 2", c.which),
                ));
            }
            check_etas(c.eta, &c.etas)?;
        }
        ScenarioConfig::Pipeline(c) => validate_pipeline(c)?,
    }
    Ok(())
}

/// Dimension of the initial set given either as a state with a tolerance
/// or as an explicit parcel.
fn initial_dim(
    path: &str,
    state: &Option<StateSpec>,
    eps: Option<f64>,
    parcel: &Option<ParcelSpec>,
) -> CResult<usize> {
    let dot = if path.is_empty() {
        String::new()
    } else {
        format!("{path}.")
    };
    match (state, eps, parcel) {
        (Some(s), Some(e), None) => {
            check_eps(&format!("{dot}eps"), e, true)?;
            Ok(build_state(&format!("{dot}state"), s)?.dim())
        }
        (None, None, Some(p)) => Ok(parcel_from_spec(&format!("{dot}parcel"), p)?.dim()),
        (Some(_), None, None) => Err(ConfigError::new(format!("{dot}eps"), "required with state")),
        (None, Some(_), None) => Err(ConfigError::new(format!("{dot}state"), "required with eps")),
        (None, None, None) => Err(ConfigError::new(
            format!("{dot}state"),
            "give state and eps, or parcel",
        )),
        _ => Err(ConfigError::new(
            format!("{dot}parcel"),
            "give either parcel or state and eps",
        )),
    }
}

fn validate_pipeline(c: &PipelineConfig) -> CResult<()> {
    let d = initial_dim("", &c.state, c.eps, &c.parcel)?;
    check_etas(c.eta, &c.etas)?;
    if c.basis == BasisKind::Pauli && !d.is_power_of_two() {
        return Err(ConfigError::new(
            "basis",
            format!("pauli basis needs a power-of-two dimension, got {d}"),
        ));
    }
    match (&c.hamiltonian, c.time, &c.unitary) {
        (Some(h), Some(t), None) => {
            expect_dim("hamiltonian", &build_operator("hamiltonian", h)?, d)?;
            if !t.is_finite() {
                return Err(ConfigError::new("time", "must be finite"));
            }
        }
        (None, None, Some(u)) => {
            let u = build_unitary("unitary", u)?;
            if u.dim() != d {
                return Err(ConfigError::new(
                    "unitary",
                    format!("dimension {} does not match the state ({d})", u.dim()),
                ));
            }
        }
        (None, None, None) => {}
        (Some(_), None, _) => return Err(ConfigError::new("time", "required with hamiltonian")),
        (None, Some(_), _) => return Err(ConfigError::new("hamiltonian", "required with time")),
        (Some(_), Some(_), Some(_)) => {
            return Err(ConfigError::new(
                "unitary",
                "give either hamiltonian/time or unitary",
            ))
        }
    }
    let k = match &c.projectors {
        Some(ps) => {
            if ps.is_empty() {
                return Err(ConfigError::new("projectors", "empty list"));
            }
            for (i, p) in ps.iter().enumerate() {
                let path = format!("projectors[{i}]");
                expect_dim(&path, &build_operator(&path, p)?, d)?;
            }
            ps.len()
        }
        None => d,
    };
    if c.outcome >= k {
        return Err(ConfigError::new(
            "outcome",
            format!("outcome {} with {k} outcomes", c.outcome),
        ));
    }
    match (&c.impossible, &c.separator) {
        (Some(imp), Some(h)) => {
            let di = initial_dim("impossible", &imp.state, imp.eps, &imp.parcel)?;
            if di != d {
                return Err(ConfigError::new(
                    "impossible",
                    format!("dimension {di} does not match the possible set ({d})"),
                ));
            }
            expect_dim("separator", &build_operator("separator", h)?, d)?;
        }
        (None, None) => {}
        (Some(_), None) => return Err(ConfigError::new("separator", "required with impossible")),
        (None, Some(_)) => return Err(ConfigError::new("impossible", "required with separator")),
    }
    for (i, o) in c.observables.iter().enumerate() {
        let path = format!("observables[{i}]");
        expect_dim(&path, &build_operator(&path, o)?, d)?;
    }
    if c.samples != 0 && c.samples < 1000 {
        return Err(ConfigError::new(
            "samples",
            format!("samples = {} below 1000", c.samples),
        ));
    }
    Ok(())
}

fn expect_dim(path: &str, op: &HermitianOperator, d: usize) -> CResult<()> {
    if op.dim() != d {
        return Err(ConfigError::new(
            path,
            format!("dimension {} does not match the state ({d})", op.dim()),
        ));
    }
    Ok(())
}

fn to_cmat(path: &str, m: &MatrixSpec) -> CResult<CMat> {
    let n = m.len();
    if n == 0 {
        return Err(ConfigError::new(path, "empty matrix"));
    }
    if let Some(bad) = m.iter().position(|row| row.len() != n) {
        return Err(ConfigError::new(
            format!("{path}[{bad}]"),
            format!("row has {} entries, expected {n}", m[bad].len()),
        ));
    }
    if m.iter().flatten().flatten().any(|x| !x.is_finite()) {
        return Err(ConfigError::new(path, "non-finite entry"));
    }
    Ok(CMat::from_fn(n, n, |i, j| c(m[i][j][0], m[i][j][1])))
}

/// Symmetrizes an inline matrix after the conjugate-symmetry check.
pub fn build_operator(path: &str, spec: &OperatorSpec) -> CResult<HermitianOperator> {
    match spec {
        OperatorSpec::Matrix(m) => {
            HermitianOperator::new(to_cmat(path, m)?).map_err(|e| ConfigError::from_model(path, e))
        }
        OperatorSpec::Label(s) => {
            if let Some(rest) = s.strip_prefix("proj:") {
                let (d, k) = two_numbers(path, rest)?;
                let mut diag = vec![0.0; d];
                diag[k] = 1.0;
                return Ok(HermitianOperator::from_real_diag(&diag));
            }
            pauli_string(s)
                .map_err(|e| ConfigError::new(path, format!("unknown operator label {s:?}: {e}")))
        }
    }
}

pub fn build_state(path: &str, spec: &StateSpec) -> CResult<DensityMatrix> {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let pure = |v: &[f64]| DensityMatrix::pure(&v.iter().map(|&x| c(x, 0.0)).collect::<Vec<_>>());
    let res = match spec {
        StateSpec::Matrix(m) => {
            let op = HermitianOperator::new(to_cmat(path, m)?)
                .map_err(|e| ConfigError::from_model(path, e))?;
            DensityMatrix::new(op)
        }
        StateSpec::Label(s) => match s.as_str() {
            "zero" => Ok(DensityMatrix::basis_state(2, 0)),
            "one" => Ok(DensityMatrix::basis_state(2, 1)),
            "plus" => pure(&[r, r]),
            "minus" => pure(&[r, -r]),
            "phi+" => pure(&[r, 0.0, 0.0, r]),
            other => {
                if let Some(rest) = other.strip_prefix("basis:") {
                    let (d, k) = two_numbers(path, rest)?;
                    Ok(DensityMatrix::basis_state(d, k))
                } else if let Some(rest) = other.strip_prefix("mixed:") {
                    let d: usize = rest.parse().map_err(|_| {
                        ConfigError::new(path, format!("bad dimension in {other:?}"))
                    })?;
                    if d == 0 {
                        return Err(ConfigError::new(path, "dimension must be positive"));
                    }
                    Ok(DensityMatrix::maximally_mixed(d))
                } else {
                    return Err(ConfigError::new(
                        path,
                        format!("unknown state label {other:?}"),
                    ));
                }
            }
        },
    };
    res.map_err(|e| ConfigError::from_model(path, e))
}

fn two_numbers(path: &str, s: &str) -> CResult<(usize, usize)> {
    let bad = || ConfigError::new(path, format!("expected <dim>:<index>, got {s:?}"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let d: usize = a.parse().map_err(|_| bad())?;
    let k: usize = b.parse().map_err(|_| bad())?;
    if d == 0 || k >= d {
        return Err(bad());
    }
    Ok((d, k))
}

pub fn build_unitary(path: &str, m: &MatrixSpec) -> CResult<UnitaryOperator> {
    UnitaryOperator::new(to_cmat(path, m)?).map_err(|e| ConfigError::from_model(path, e))
}
