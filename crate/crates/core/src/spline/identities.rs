use serde::Serialize;

use crate::dd::Dd;
use crate::error::{invalid, Result};

/// Residuals of the alternating cosine-power identities that make the base
/// spline glue together at the origin.
#[derive(Clone, Debug, Serialize)]
pub struct KnotIdentityReport {
    pub n: usize,
    /// `sum_{j<n} (-1)^(j+1) cos^(2n)(pi j / 2n) - (1/2 - n / 2^(2n-1))`.
    pub even_top: f64,
    /// Same sum with power `2l`, minus 1/2, for `l = 1..n-1`.
    pub even_lower: Vec<f64>,
    /// `sum_{j<=n} (-1)^(j+1) cos^(2n+1)(pi j / (2n+1)) - (1/2 - (2n+1)/2^(2n+1))`.
    pub odd_top: f64,
    /// Same sum with power `2l+1`, minus 1/2, for `l = 0..n-1`.
    pub odd_lower: Vec<f64>,
}

impl KnotIdentityReport {
    pub fn max_residual(&self) -> f64 {
        self.even_lower
            .iter()
            .chain(self.odd_lower.iter())
            .fold(self.even_top.abs().max(self.odd_top.abs()), |a, b| a.max(b.abs()))
    }
}

fn alternating_power_sum(terms: usize, den: i64, power: u32) -> Dd {
    let mut acc = Dd::ZERO;
    for j in 1..=terms {
        let c = Dd::cos_pi_ratio(j as i64, den).powi(power);
        acc = if j % 2 == 1 { acc + c } else { acc - c };
    }
    acc
}

pub fn verify_knot_identities(n: usize) -> Result<KnotIdentityReport> {
    if n == 0 || n > 60 {
        return invalid(format!("identity index must be in 1..=60, got {n}"));
    }
    let half = Dd::from_f64(0.5);
    let even_den = 2 * n as i64;
    let odd_den = 2 * n as i64 + 1;

    let even_expect = half - Dd::from_f64(n as f64 / 2f64.powi(2 * n as i32 - 1));
    let even_top = (alternating_power_sum(n - 1, even_den, 2 * n as u32) - even_expect).to_f64();
    let even_lower = (1..n)
        .map(|l| (alternating_power_sum(n - 1, even_den, 2 * l as u32) - half).to_f64())
        .collect();

    let odd_expect = half - Dd::from_f64((2 * n + 1) as f64 / 2f64.powi(2 * n as i32 + 1));
    let odd_top = (alternating_power_sum(n, odd_den, 2 * n as u32 + 1) - odd_expect).to_f64();
    let odd_lower = (0..n)
        .map(|l| (alternating_power_sum(n, odd_den, 2 * l as u32 + 1) - half).to_f64())
        .collect();

    Ok(KnotIdentityReport {
        n,
        even_top,
        even_lower,
        odd_top,
        odd_lower,
    })
}
