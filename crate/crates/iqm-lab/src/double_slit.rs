//! Which-path measurement on a parcel around |+⟩ followed by a screen
//! projector Π_φ = |φ⟩⟨φ|, |φ⟩ = (|L⟩ + e^{iφ}|R⟩)/√2.

use iqm::measurement::{binary_projectors, update_single_parcel, FuzzyPOVM, NoiseDenominator};
use iqm::observables::expectation_interval_vrep;
use iqm::operator::{c, pauli_product_basis};
use iqm::parcel::{uniform_parcel, Projection};
use iqm::{exec, DensityMatrix, Error, HermitianOperator, Result};

use crate::result::{Row, ScenarioResult};

pub fn screen_projector(phi: f64) -> HermitianOperator {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    HermitianOperator::projector(&[c(r, 0.0), c(r * phi.cos(), r * phi.sin())])
}

pub fn plus_state() -> DensityMatrix {
    DensityMatrix::basis_state(2, 0).conjugate(&hadamard())
}

fn hadamard() -> iqm::operator::CMat {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    iqm::operator::CMat::from_row_slice(2, 2, &[c(r, 0.0), c(r, 0.0), c(r, 0.0), c(-r, 0.0)])
}

/// Rows per (η, φ): probability interval of the screen outcome after the
/// which-path outcome L.
pub fn run_double_slit(eps: f64, eta_grid: &[f64], phi_grid: &[f64]) -> Result<ScenarioResult> {
    if !(eps > 0.0) {
        return Err(Error::OutOfRange {
            name: "eps",
            value: eps,
        });
    }
    if eps * 6f64.sqrt() >= 1.0 {
        return Err(Error::Physicality(format!(
            "eps = {eps} box does not fit the Bloch ball"
        )));
    }
    let basis = pauli_product_basis(1);
    let boxed = uniform_parcel(&plus_state(), &basis, eps)?;
    let (parcel, moved) = boxed.to_vrep(Projection::Radial)?;
    let which_path = binary_projectors(&HermitianOperator::from_real_diag(&[1.0, 0.0]));
    let screens: Vec<(f64, HermitianOperator)> =
        phi_grid.iter().map(|&p| (p, screen_projector(p))).collect();

    let per_eta = exec::map(eta_grid, |&eta| -> Result<Vec<Row>> {
        let povm = FuzzyPOVM::new(which_path.clone(), eta, NoiseDenominator::Outcomes)?;
        let rep = update_single_parcel(&parcel, &povm, 0)?;
        let mut rows = Vec::with_capacity(screens.len());
        for (phi, proj) in &screens {
            let iv = expectation_interval_vrep(&rep.possible, proj)?;
            rows.push(
                Row::new()
                    .real("eps", eps)
                    .real("eta", eta)
                    .real("phi", *phi)
                    .int("projected_corners", moved as i64)
                    .interval("prob", &iv)
                    .real("center", iv.center())
                    .real("width", iv.width())
                    .interval("which_path_prob", &rep.probability)
                    .opt_real("volume_before", rep.volume_before)
                    .opt_real("volume_after", rep.volume_after),
            );
        }
        Ok(rows)
    });

    let mut out = ScenarioResult::new("double-slit");
    for rows in per_eta {
        for r in rows? {
            out.push(r);
        }
    }
    let drift = centers_converge(&out, eta_grid, phi_grid);
    out.verdict("centers_converge_to_half", if drift { "yes" } else { "no" });
    Ok(out)
}

/// |center − 1/2| non-increasing in η at every φ of the grid.
fn centers_converge(out: &ScenarioResult, eta_grid: &[f64], phi_grid: &[f64]) -> bool {
    let np = phi_grid.len();
    let mut order: Vec<usize> = (0..eta_grid.len()).collect();
    order.sort_by(|&a, &b| eta_grid[a].total_cmp(&eta_grid[b]));
    (0..np).all(|k| {
        let devs: Vec<f64> = order
            .iter()
            .map(|&i| (out.real(i * np + k, "center").unwrap() - 0.5).abs())
            .collect();
        devs.windows(2).all(|w| w[1] <= w[0] + 1e-12)
    })
}
