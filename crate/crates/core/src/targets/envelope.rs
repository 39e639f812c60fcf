use serde::Serialize;

use crate::bounds::{ProfileKind, SingularityProfile};

use super::Univariate;

/// Largest excess of the target over its claimed envelope.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EnvelopeReport {
    /// `max (p(y) - envelope(y))` over the sampled points.
    pub pointwise: f64,
    /// `max (P(I) - allowed mass)` over the sampled intervals.
    pub interval_mass: f64,
    pub points_checked: usize,
    pub intervals_checked: usize,
}

impl EnvelopeReport {
    pub fn max_violation(&self) -> f64 {
        self.pointwise.max(self.interval_mass)
    }
}

fn sample_region(target: &dyn Univariate, profile: &SingularityProfile) -> (f64, f64) {
    let (lo, hi) = target.support();
    let mut a = if lo.is_finite() { lo } else { target.quantile(1e-10) };
    let mut b = if hi.is_finite() {
        hi
    } else {
        target.quantile(1.0 - 1e-10)
    };
    for s in &profile.singularities {
        let reach = if profile.radius.is_finite() {
            profile.radius
        } else {
            1.0
        };
        a = a.min(s - reach).max(lo);
        b = b.max(s + reach).min(hi);
    }
    (a, b)
}

/// Compare a target with a profile on `grid_size` evenly spaced points plus
/// log-spaced points approaching each singularity, and on intervals of
/// several half-widths.
pub fn envelope_check(target: &dyn Univariate, profile: &SingularityProfile, grid_size: usize) -> EnvelopeReport {
    let (a, b) = sample_region(target, profile);
    let n = grid_size.max(2);
    let mut points: Vec<f64> = (0..=n).map(|i| a + (b - a) * i as f64 / n as f64).collect();
    for s in &profile.singularities {
        let reach = profile.radius.min(1.0);
        for k in 0..=200 {
            let d = reach * 10f64.powf(-12.0 * k as f64 / 200.0);
            points.push(s - d);
            points.push(s + d);
        }
    }
    let near = |y: f64| {
        profile
            .singularities
            .iter()
            .map(|s| (y - s).abs())
            .fold(f64::INFINITY, f64::min)
    };

    let mut pointwise = f64::NEG_INFINITY;
    let mut checked = 0;
    for &y in &points {
        let p = target.density(y);
        if !p.is_finite() {
            continue;
        }
        let bound = match profile.kind {
            ProfileKind::Bounded => profile.amplitude + profile.offset,
            _ => {
                let r = near(y);
                if !(r > 0.0) || r >= profile.radius {
                    continue;
                }
                profile.envelope(r) + profile.offset
            }
        };
        pointwise = pointwise.max(p - bound);
        checked += 1;
    }

    let width = b - a;
    let max_delta = match profile.kind {
        ProfileKind::Bounded => 0.5 * width,
        _ => profile.radius.min(0.5 * width),
    };
    let mut centers: Vec<f64> = (0..=40).map(|i| a + width * i as f64 / 40.0).collect();
    centers.extend(profile.singularities.iter().copied());
    let mut interval_mass = f64::NEG_INFINITY;
    let mut intervals = 0;
    for k in 0..30 {
        let delta = max_delta * 0.999 * 2f64.powf(-(k as f64) / 2.0);
        for c in &centers {
            for shift in [-1.0, -0.5, 0.0, 0.5, 1.0] {
                let mid = c + shift * delta;
                let mass = target.cdf(mid + delta) - target.cdf_left(mid - delta);
                interval_mass = interval_mass.max(mass - profile.interval_mass(delta));
                intervals += 1;
            }
        }
    }
    EnvelopeReport {
        pointwise,
        interval_mass,
        points_checked: checked,
        intervals_checked: intervals,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::targets::{BetaTarget, Uniform, VarianceGammaTarget};

    #[test]
    fn worked_envelopes() {
        let t = BetaTarget::new(2.0, 2.0).unwrap();
        let r = envelope_check(&t, &t.profile().unwrap(), 2000);
        assert!(r.pointwise <= 1e-12, "{r:?}");
        assert!(r.max_violation() <= 1e-9);

        let u = Uniform::new(0.0, 1.0).unwrap();
        let r = envelope_check(&u, &u.profile().unwrap(), 100);
        assert_eq!(r.pointwise, 0.0);

        let v = VarianceGammaTarget::new(1.0, 0.0, 1.0, 0.0).unwrap();
        let r = envelope_check(&v, &v.profile().unwrap(), 500);
        assert!(r.max_violation() <= 0.0, "{r:?}");
    }

    #[test]
    fn detects_a_too_small_envelope() {
        let t = BetaTarget::new(2.0, 5.0).unwrap();
        let r = envelope_check(&t, &SingularityProfile::bounded(1.0), 500);
        assert!(r.pointwise > 0.5);
    }
}
