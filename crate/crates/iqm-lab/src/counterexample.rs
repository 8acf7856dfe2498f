//! The two two-qubit configurations showing that neither update condition
//! can be dropped.

use iqm::measurement::{
    binary_projectors, check_separation, check_uniform_positivity, kraus_update_state,
    update_double_parcel, FuzzyPOVM, NoiseDenominator, Positivity, Separation,
    DEFAULT_DELTA_THRESHOLD,
};
use iqm::operator::{pauli_product_basis, HermitianOperator};
use iqm::parcel::{uniform_parcel, Projection};
use iqm::{DensityMatrix, DoubleParcel, Error, Parcel, Result, VertexParcel};

use crate::result::{Row, ScenarioResult};

pub const DELTA: f64 = 0.02;
pub const EPS1: f64 = 0.05;
pub const EPS0: f64 = 0.5;
pub const DELTA2: f64 = 0.05;

/// Built configuration of one example.
#[derive(Debug, Clone)]
pub struct Counterexample {
    pub which: u8,
    pub rho0: DensityMatrix,
    /// The impossible-set state whose sharp image is tracked.
    pub rho_star: DensityMatrix,
    /// Sharp image g₀(ρ*).
    pub target: DensityMatrix,
    pub possible: VertexParcel,
    pub impossible: VertexParcel,
    pub separator: HermitianOperator,
    /// Alternative separators, all supported on the range of Π.
    pub alternatives: Vec<HermitianOperator>,
}

fn ket(a: usize, b: usize) -> DensityMatrix {
    DensityMatrix::basis_state(4, 2 * a + b)
}

/// Π = |0⟩⟨0| ⊗ I.
pub fn alice_zero() -> HermitianOperator {
    HermitianOperator::from_real_diag(&[1.0, 1.0, 0.0, 0.0])
}

/// |0⟩⟨0| ⊗ X for a diagonal X on qubit B.
fn on_zero(x0: f64, x1: f64) -> HermitianOperator {
    HermitianOperator::from_real_diag(&[x0, x1, 0.0, 0.0])
}

/// |0⟩⟨0| ⊗ τ_B.
pub fn l_state() -> DensityMatrix {
    DensityMatrix::new_unchecked(HermitianOperator::from_real_diag(&[
        1.0 - DELTA,
        DELTA,
        0.0,
        0.0,
    ]))
}

fn mix(a: f64, x: &DensityMatrix, y: &DensityMatrix) -> DensityMatrix {
    DensityMatrix::mixture(&[(a, x), (1.0 - a, y)])
}

fn alternatives() -> Vec<HermitianOperator> {
    let sx = HermitianOperator::from_real_diag(&[1.0, 0.0]).kron(&iqm::operator::sigma_x());
    vec![
        on_zero(1.0, -1.0),
        on_zero(1.0, 1.0),
        on_zero(1.0, -10.0),
        on_zero(0.0, 1.0),
        sx,
    ]
}

pub fn example1() -> Result<Counterexample> {
    let rho0 = ket(0, 0);
    let l = l_state();
    let possible = uniform_parcel(&rho0, &pauli_product_basis(2), EPS1)?
        .to_vrep(Projection::Radial)?
        .0;
    let impossible = VertexParcel::new(vec![
        ket(1, 1),
        ket(1, 0),
        mix(0.6, &ket(1, 1), &l),
        mix(0.6, &ket(1, 0), &l),
    ])?;
    Ok(Counterexample {
        which: 1,
        rho_star: mix(0.9, &ket(1, 1), &l),
        target: l,
        rho0,
        possible,
        impossible,
        separator: on_zero(1.0, -10.0),
        alternatives: alternatives(),
    })
}

pub fn example2() -> Result<Counterexample> {
    let rho0 = ket(0, 0);
    let rho_star = mix(1.0 - EPS0, &ket(1, 0), &ket(0, 0));
    let basis = pauli_product_basis(2);
    let possible = uniform_parcel(&rho0, &basis, EPS1)?
        .to_vrep(Projection::Radial)?
        .0;
    let impossible = uniform_parcel(&rho_star, &basis, DELTA2)?
        .to_vrep(Projection::Radial)?
        .0;
    Ok(Counterexample {
        which: 2,
        target: rho0.clone(),
        rho0,
        rho_star,
        possible,
        impossible,
        separator: on_zero(1.0, -1.0),
        alternatives: alternatives(),
    })
}

pub fn povm(eta: f64) -> Result<FuzzyPOVM> {
    FuzzyPOVM::new(
        binary_projectors(&alice_zero()),
        eta,
        NoiseDenominator::Outcomes,
    )
}

#[derive(Debug, Clone)]
pub struct Conditions {
    pub positivity: Positivity,
    pub separation: Separation,
    /// Whether any of the alternative separators succeeds.
    pub any_alternative_separates: bool,
}

pub fn conditions(ex: &Counterexample, povm: &FuzzyPOVM) -> Result<Conditions> {
    let positivity = check_uniform_positivity(
        &ex.possible,
        Some(&ex.impossible),
        povm,
        0,
        DEFAULT_DELTA_THRESHOLD,
    )?;
    let separation = check_separation(&ex.possible, &ex.impossible, &ex.separator, povm, 0)?;
    let mut any = false;
    for h in &ex.alternatives {
        any |= check_separation(&ex.possible, &ex.impossible, h, povm, 0)?.passed;
    }
    Ok(Conditions {
        positivity,
        separation,
        any_alternative_separates: any,
    })
}

/// (i) fails and (ii) holds for the first example; the reverse for the second.
pub fn expected_conditions(which: u8) -> (bool, bool) {
    if which == 1 {
        (false, true)
    } else {
        (true, false)
    }
}

pub fn run_counterexample(which: u8, eta_list: &[f64]) -> Result<ScenarioResult> {
    let ex = match which {
        1 => example1()?,
        2 => example2()?,
        _ => {
            return Err(Error::OutOfRange {
                name: "which",
                value: which as f64,
            })
        }
    };
    let dp = DoubleParcel::new(
        Parcel::Vertex(ex.possible.clone()),
        Some(Parcel::Vertex(ex.impossible.clone())),
    )?;
    let l_rho0 = l_state().op().sub(ex.rho0.op()).trace_norm();
    let (want_i, want_ii) = expected_conditions(which);
    let mut out = ScenarioResult::new("counterexample");
    let mut all_match = true;
    let mut all_intersect = true;
    for &eta in eta_list {
        let povm = povm(eta)?;
        let cond = conditions(&ex, &povm)?;
        let image = kraus_update_state(&ex.rho_star, &povm, 0)?.0;
        let (intersected, witness) = match update_double_parcel(&dp, &povm, 0, &ex.separator) {
            Ok(_) => (false, None),
            Err(Error::Intersecting(x)) => (true, Some(x.witness)),
            Err(e) => return Err(e),
        };
        let got_i = cond.positivity.passed;
        let got_ii = cond.separation.passed;
        let matches = got_i == want_i && got_ii == want_ii;
        all_match &= matches;
        all_intersect &= intersected;
        let dist = |t: &DensityMatrix| witness.as_ref().map(|w| w.op().sub(t.op()).trace_norm());
        out.push(
            Row::new()
                .int("which", which as i64)
                .real("eta", eta)
                .text(
                    "regime",
                    if eta >= 0.99 {
                        "asymptotic"
                    } else {
                        "informational"
                    },
                )
                .real("delta_outcome", cond.positivity.delta_outcome)
                .real("delta_all", cond.positivity.delta_all)
                .flag("condition_i", got_i)
                .real("ratio_min_possible", cond.separation.min_first)
                .real("ratio_max_impossible", cond.separation.max_second)
                .flag("condition_ii", got_ii)
                .flag("condition_ii_any_separator", cond.any_alternative_separates)
                .flag("conditions_match_claim", matches)
                .flag("intersected", intersected)
                .opt_real("witness_dist_target", dist(&ex.target))
                .opt_real("witness_dist_rho0", dist(&ex.rho0))
                .opt_real("witness_dist_image", dist(&image))
                .real(
                    "image_dist_target",
                    image.op().sub(ex.target.op()).trace_norm(),
                )
                .real("l_rho0_norm", l_rho0),
        );
    }
    out.intersected = all_intersect && !eta_list.is_empty();
    out.verdict(
        "conditions",
        if all_match {
            "as claimed"
        } else {
            "differ from claim"
        },
    );
    out.verdict(
        "update",
        if all_intersect {
            "intersected"
        } else {
            "disjoint at some eta"
        },
    );
    Ok(out)
}
