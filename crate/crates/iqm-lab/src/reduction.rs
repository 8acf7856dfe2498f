//! Nested boxes of half-width 2⁻ⁿ around a state.

use iqm::observables::expectation_interval_hrep;
use iqm::operator::complete_hermitian_basis;
use iqm::parcel::HyperRectParcel;
use iqm::{exec, DensityMatrix, Error, HermitianOperator, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::result::{Row, ScenarioResult};

pub const MAX_DIM: usize = 8;
pub const MAX_STEPS: usize = 30;
/// Boxes with more coordinates have their diameter estimated from this
/// many random corners.
const EXACT_COORDS: usize = 16;
const SAMPLED_CORNERS: usize = 1 << 14;

pub fn reduction_box(rho0: &DensityMatrix, n: usize) -> Result<HyperRectParcel> {
    let basis = complete_hermitian_basis(rho0.dim());
    let v = basis.coords_of(rho0);
    let h = 0.5f64.powi(n as i32);
    HyperRectParcel::new(
        basis,
        v.iter().map(|x| x - h).collect(),
        v.iter().map(|x| x + h).collect(),
    )
}

/// Trace-norm diameter of the box. The box is centrally symmetric, so this
/// is twice the largest center-to-corner distance.
pub fn trace_diameter(p: &HyperRectParcel) -> f64 {
    if p.len() <= EXACT_COORDS {
        return 2.0 * p.trace_radius();
    }
    let center = p.center_operator();
    let distances = exec::map_range(SAMPLED_CORNERS / 256, |block| {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        rng.set_stream(block as u64);
        let mut best: f64 = 0.0;
        for _ in 0..256 {
            let x: Vec<f64> = (0..p.len())
                .map(|j| {
                    if rng.gen::<bool>() {
                        p.hi()[j]
                    } else {
                        p.lo()[j]
                    }
                })
                .collect();
            best = best.max(p.basis().reconstruct(&x).sub(&center).trace_norm());
        }
        best
    });
    2.0 * distances.into_iter().fold(0.0, f64::max)
}

pub fn run_reduction(
    rho0: &DensityMatrix,
    n_max: usize,
    observables: &[HermitianOperator],
) -> Result<ScenarioResult> {
    let d = rho0.dim();
    if d > MAX_DIM {
        return Err(Error::OutOfRange {
            name: "dim",
            value: d as f64,
        });
    }
    if n_max == 0 || n_max > MAX_STEPS {
        return Err(Error::OutOfRange {
            name: "n_max",
            value: n_max as f64,
        });
    }
    if let Some(o) = observables.iter().find(|o| o.dim() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: o.dim(),
        });
    }
    let mut out = ScenarioResult::new("reduction");
    let mut fitted = None;
    for n in 1..=n_max {
        let p = reduction_box(rho0, n)?;
        let diameter = trace_diameter(&p);
        let scale = 0.5f64.powi(n as i32 - 1);
        let c = *fitted.get_or_insert(diameter / scale);
        let mut row = Row::new()
            .int("dim", d as i64)
            .int("n", n as i64)
            .real("half_width", 0.5f64.powi(n as i32))
            .real("diameter", diameter)
            .real("c_fit", c)
            .real("c_local", diameter / scale)
            .real("bound", c * scale)
            .flag("within_bound", diameter <= c * scale * (1.0 + 1e-12));
        for (k, o) in observables.iter().enumerate() {
            let iv = expectation_interval_hrep(&p, o)?;
            row = row
                .interval(&format!("obs{k}"), &iv)
                .real(&format!("obs{k}_width"), iv.width())
                .real(&format!("obs{k}_exact"), rho0.expect(o));
        }
        out.push(row);
    }
    let ok = out
        .column("within_bound")
        .iter()
        .all(|v| v.as_bool() == Some(true));
    out.verdict("diameter_bound", if ok { "holds" } else { "violated" });
    Ok(out)
}
