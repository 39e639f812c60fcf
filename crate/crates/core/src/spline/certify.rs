use serde::Serialize;

use crate::constants::perfect_spline_constant;
use crate::dd::Dd;

use super::base::BaseSpline;
use super::piecewise::{differentiate_dd, horner_dd};

/// Outcome of checking a candidate against the defining properties of the
/// base spline.
#[derive(Clone, Debug, Serialize)]
pub struct CertificationReport {
    pub m: usize,
    pub tol: f64,
    /// Worst jump of the `j`-th derivative across any finite knot, `j < m`.
    pub continuity_residuals: Vec<f64>,
    /// Largest excursion outside [0, 1] on the sampling grid.
    pub range_violation: f64,
    /// `max |h(x) + h(-x) - 1|` on the sampling grid.
    pub symmetry_residual: f64,
    /// `|h^(m)|` on each interior piece.
    pub top_derivative_magnitudes: Vec<f64>,
    /// Largest relative deviation of those magnitudes from `2^(m-2) (m-1)!`.
    pub perfect_spline_residual: f64,
    pub pass: bool,
}

impl CertificationReport {
    pub fn worst_continuity(&self) -> f64 {
        self.continuity_residuals.iter().fold(0.0, |a, b| a.max(*b))
    }
}

const GRID_PER_UNIT: usize = 10_000;

pub fn certify_membership(spline: &BaseSpline, tol: f64) -> CertificationReport {
    let m = spline.order();
    let pp = spline.piecewise();
    let breaks = pp.breaks();

    let mut continuity = vec![0.0f64; m];
    for (k, knot) in breaks.iter().enumerate() {
        let left = &pp.pieces()[k];
        let right = &pp.pieces()[k + 1];
        for (j, slot) in continuity.iter_mut().enumerate() {
            let l = horner_dd(&differentiate_dd(left, j), *knot - pp.anchor(k));
            let r = horner_dd(&differentiate_dd(right, j), *knot - pp.anchor(k + 1));
            *slot = slot.max((l - r).abs().to_f64());
        }
    }

    let span = 1.25;
    let n = (2.0 * span * GRID_PER_UNIT as f64) as usize;
    let mut range_violation = 0.0f64;
    let mut symmetry = 0.0f64;
    for i in 0..=n {
        let x = -span + 2.0 * span * i as f64 / n as f64;
        let v = pp.eval_dd(Dd::from_f64(x));
        let w = pp.eval_dd(Dd::from_f64(-x));
        let vf = v.to_f64();
        range_violation = range_violation.max(-vf).max(vf - 1.0);
        symmetry = symmetry.max((v + w - Dd::ONE).abs().to_f64());
    }

    let target = perfect_spline_constant(m).value();
    let interior = pp.pieces().len().saturating_sub(1);
    let top: Vec<f64> = (1..interior)
        .map(|i| {
            let c = differentiate_dd(&pp.pieces()[i], m);
            c[0].to_f64().abs()
        })
        .collect();
    let perfect = top.iter().fold(0.0f64, |a, v| a.max((v - target).abs() / target));

    let pass = continuity.iter().all(|r| *r <= tol) && range_violation <= tol && symmetry <= tol && perfect <= tol;
    CertificationReport {
        m,
        tol,
        continuity_residuals: continuity,
        range_violation: range_violation.max(0.0),
        symmetry_residual: symmetry,
        top_derivative_magnitudes: top,
        perfect_spline_residual: perfect,
        pass,
    }
}
