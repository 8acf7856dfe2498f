//! Bell-state parcels: CHSH certification and a local measurement on
//! Alice's qubit.

use iqm::measurement::{
    binary_projectors, check_separation, update_double_parcel, FuzzyPOVM, NoiseDenominator,
};
use iqm::observables::{chsh_interval, RealInterval};
use iqm::operator::{c, pauli_product_basis, pauli_string, HermitianOperator, ObservableBasis};
use iqm::parcel::{uniform_parcel, Projection};
use iqm::{DensityMatrix, DoubleParcel, Error, Parcel, Result, VertexParcel};

use crate::result::{Row, ScenarioResult};

pub fn phi_plus() -> DensityMatrix {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    DensityMatrix::pure(&[c(r, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(r, 0.0)]).expect("normalized")
}

/// Box over the 15 normalized Pauli products; `eps = 0` is the singleton.
pub fn bell_box(eps: f64) -> Result<Parcel> {
    Ok(Parcel::Hyper(uniform_parcel(
        &phi_plus(),
        &pauli_product_basis(2),
        eps,
    )?))
}

/// Verdict from a CHSH interval.
pub fn chsh_verdict(iv: &RealInterval) -> &'static str {
    if iv.lo > 2.0 {
        "entangled"
    } else {
        "inconclusive"
    }
}

/// Normalized {IZ, ZI, ZZ, XX, YY}: the coordinates in which both the Bell
/// state and |00⟩ live and which the local Z measurement preserves.
pub fn bell_chart() -> ObservableBasis {
    let full = pauli_product_basis(2);
    let idx: Vec<usize> = ["IZ", "ZI", "ZZ", "XX", "YY"]
        .iter()
        .map(|l| full.index_of(l).expect("label"))
        .collect();
    full.subset(&idx)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellDouble {
    pub eps1: f64,
    pub eps2: f64,
    pub eta: f64,
}

impl Default for BellDouble {
    fn default() -> Self {
        Self {
            eps1: 0.02,
            eps2: 0.05,
            eta: 0.99,
        }
    }
}

pub fn bell_double_parcel(cfg: &BellDouble) -> Result<DoubleParcel> {
    let chart = bell_chart();
    let o1 = uniform_parcel(&phi_plus(), &chart, cfg.eps1)?
        .to_vrep(Projection::Radial)?
        .0;
    let o2 = uniform_parcel(&DensityMatrix::basis_state(4, 0), &chart, cfg.eps2)?
        .to_vrep(Projection::Radial)?
        .0;
    DoubleParcel::new(Parcel::Vertex(o1), Some(Parcel::Vertex(o2)))
}

/// Π₀ = |0⟩⟨0| ⊗ I and its complement.
pub fn alice_z_projectors() -> Vec<HermitianOperator> {
    let p0 = HermitianOperator::from_real_diag(&[1.0, 0.0]).kron(&HermitianOperator::identity(2));
    binary_projectors(&p0)
}

/// −σz ⊗ I.
pub fn bell_separator() -> HermitianOperator {
    pauli_string("ZI").expect("valid label").scale(-1.0)
}

/// Whether the quoted constants satisfy both separation inequalities at
/// every vertex.
pub fn constants_feasible(
    o1: &VertexParcel,
    o2: &VertexParcel,
    h: &HermitianOperator,
    pi: &HermitianOperator,
    c1: f64,
    c2: f64,
) -> bool {
    c1 > c2
        && o1
            .vertices()
            .iter()
            .all(|v| v.expect(h) > c1 * v.expect(pi))
        && o2
            .vertices()
            .iter()
            .all(|v| v.expect(h) < c2 * v.expect(pi))
}

pub fn run_bell(eps: f64) -> Result<ScenarioResult> {
    run_bell_with(eps, Some(BellDouble::default()))
}

pub fn run_bell_with(eps: f64, double: Option<BellDouble>) -> Result<ScenarioResult> {
    if !(eps >= 0.0) {
        return Err(Error::OutOfRange {
            name: "eps",
            value: eps,
        });
    }
    let iv = chsh_interval(&bell_box(eps)?)?;
    let verdict = chsh_verdict(&iv);
    let mut row = Row::new()
        .real("eps", eps)
        .interval("chsh", &iv)
        .text("verdict", verdict);
    let mut out = ScenarioResult::new("bell");
    out.verdict("verdict", verdict);
    match double {
        None => {
            row = row
                .opt_real("eta", None)
                .opt_flag("double_disjoint", None)
                .opt_real("info_before", None)
                .opt_real("info_after", None)
                .opt_real("delta", None)
                .opt_real("c1", None)
                .opt_real("c2", None)
                .opt_flag("quoted_constants_feasible", None);
        }
        Some(cfg) => {
            let dp = bell_double_parcel(&cfg)?;
            let povm = FuzzyPOVM::new(alice_z_projectors(), cfg.eta, NoiseDenominator::Outcomes)?;
            let h = bell_separator();
            let o1 = dp.possible().to_vrep()?;
            let o2 = dp.impossible().expect("impossible set").to_vrep()?;
            let quoted = constants_feasible(&o1, &o2, &h, povm.projector(0), -0.2, -0.5);
            let sep = check_separation(&o1, &o2, &h, &povm, 0)?;
            let (disjoint, rep) = match update_double_parcel(&dp, &povm, 0, &h) {
                Ok(r) => (true, r),
                Err(Error::Intersecting(x)) => (false, x.report),
                Err(e) => return Err(e),
            };
            out.intersected = !disjoint;
            out.verdict("double", if disjoint { "disjoint" } else { "intersected" });
            row = row
                .real("eta", cfg.eta)
                .flag("double_disjoint", disjoint)
                .opt_real("info_before", rep.information_before)
                .opt_real("info_after", rep.information_after)
                .opt_real("delta", rep.positivity.map(|p| p.delta_outcome))
                .real("c1", sep.c1)
                .real("c2", sep.c2)
                .flag("quoted_constants_feasible", quoted);
        }
    }
    out.push(row);
    Ok(out)
}
