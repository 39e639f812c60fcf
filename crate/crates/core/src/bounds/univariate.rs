use crate::constants::{perfect_spline_constant, smoothing_norm_constant};
use crate::error::{invalid, Result};

use super::profile::{ProfileKind, SingularityProfile};
use super::result::BoundResult;

/// Upper end of the alpha search for forms with no restriction on alpha.
pub const UNRESTRICTED_ALPHA_MAX: f64 = 1e6;

fn check_inputs(m: usize, d_m: f64) -> Result<()> {
    if m == 0 {
        return invalid("smoothness order must be at least 1");
    }
    if !(d_m >= 0.0) || !d_m.is_finite() {
        return invalid(format!("d_m must be non-negative and finite, got {d_m}"));
    }
    Ok(())
}

fn constants(m: usize) -> (f64, f64) {
    (perfect_spline_constant(m).value(), smoothing_norm_constant(m).value())
}

fn log_plus(x: f64) -> f64 {
    x.ln().max(0.0)
}

/// Density bounded by `amplitude`.
pub fn bound_bounded(amplitude: f64, m: usize, d_m: f64, strict: bool) -> Result<BoundResult> {
    check_inputs(m, d_m)?;
    if !(amplitude > 0.0) || !amplitude.is_finite() {
        return invalid(format!("A must be positive, got {amplitude}"));
    }
    let (mm, nn) = constants(m);
    let (id, threshold) = if strict {
        ("bounded-strict", amplitude / (2.0 * nn))
    } else {
        ("bounded", f64::INFINITY)
    };
    let res = BoundResult::new(id, m, d_m, threshold, d_m <= threshold);
    if d_m == 0.0 {
        return Ok(res);
    }
    let k = 1.0 / (m as f64 + 1.0);
    let alpha = (2.0 * nn * d_m / amplitude).powf(k);
    let mut raw = 2.0 * (amplitude.powi(m as i32) * mm * d_m).powf(k);
    if !strict {
        raw += mm * d_m;
    }
    Ok(res.with_value(alpha, raw))
}

pub fn bound_log(profile: &SingularityProfile, m: usize, d_m: f64, strict: bool) -> Result<BoundResult> {
    check_inputs(m, d_m)?;
    profile.expect_kind(ProfileKind::Log)?;
    let (a, c, eps, offset) = (profile.amplitude, profile.log_scale, profile.radius, profile.offset);
    let (mm, nn) = constants(m);
    let e = m as f64 + 1.0;
    let (id, threshold) = if strict {
        ("log-strict", a / nn * (2.0 * eps).powf(e).min(1.0))
    } else {
        ("log", f64::INFINITY)
    };
    let mut res = BoundResult::new(id, m, d_m, threshold, d_m <= threshold);
    if strict && offset > 0.0 {
        res = res.note("offset B ignored in the strict form");
    }
    if d_m == 0.0 {
        return Ok(res);
    }
    let alpha = (nn * d_m / a).powf(1.0 / e);
    let scale = (a.powi(m as i32) * nn * d_m).powf(1.0 / e);
    let arg = 2.0 * a / (c.powf(e) * mm * d_m);
    let raw = if strict {
        (2.0 + arg.ln() / e) * scale
    } else {
        (2.0 + offset / (2.0 * a) + log_plus(arg) / e) * scale + mm * d_m
    };
    Ok(res.with_value(alpha, raw))
}

pub fn bound_power(profile: &SingularityProfile, m: usize, d_m: f64, strict: bool) -> Result<BoundResult> {
    check_inputs(m, d_m)?;
    profile.expect_kind(ProfileKind::Power)?;
    let (a, p, eps) = (profile.amplitude, profile.exponent, profile.radius);
    let (mm, nn) = constants(m);
    let e = m as f64 + 1.0 - p;
    let k = 2f64.powf(p) * a / (1.0 - p);
    let (id, threshold) = if strict {
        ("power-strict", k / nn * (2.0 * eps).powf(e).min(1.0))
    } else {
        ("power", f64::INFINITY)
    };
    let mut res = BoundResult::new(id, m, d_m, threshold, d_m <= threshold);
    if profile.offset > 0.0 {
        res = res.note("offset B not used by the power form");
    }
    if d_m == 0.0 {
        return Ok(res);
    }
    let alpha = (nn * d_m / k).powf(1.0 / e);
    let mut raw = 2.0 * k.powf(m as f64 / e) * (nn * d_m).powf((1.0 - p) / e);
    if !strict {
        raw += mm * d_m;
    }
    Ok(res.with_value(alpha, raw))
}

/// Largest `d_m` for which the log-power form applies, as
/// `(stated, from the alpha-level requirements)`.
fn log_power_thresholds(profile: &SingularityProfile, m: usize, strict: bool) -> (f64, f64) {
    let (a, c, p, b, eps) = (
        profile.amplitude,
        profile.log_scale,
        profile.exponent,
        profile.log_exponent,
        profile.radius,
    );
    let (mm, nn) = constants(m);
    let mf = m as f64;
    let e = mf + 1.0 - p;
    let k = 2f64.powf(p + b + 1.0) * a / (1.0 - p);
    // incomplete-gamma regime: alpha^(1-a) < 2^-(a+b) c^(a-1)
    let gamma_gate = 2f64.powf(-(p + b) * e / (1.0 - p)) * c.powf(-e);
    if strict {
        let stated = k * c.powf(1.0 - p) / nn
            * 1f64
                .min((2.0 * eps).powf(e))
                .min(2f64.powf(-(p + b) * (1.0 + mf / (1.0 - p))) * c.powf(-e));
        let derived = k / nn * 1f64.min((2.0 * eps).powf(e)).min(gamma_gate);
        (stated, derived)
    } else {
        let stated = c.powf(-mf) * a / ((1.0 - p) * mm) * 2f64.powf(1.0 - mf * (b + 1.0) / (1.0 - p));
        let derived = k / nn * gamma_gate;
        (stated, derived)
    }
}

pub fn bound_log_power(profile: &SingularityProfile, m: usize, d_m: f64, strict: bool) -> Result<BoundResult> {
    check_inputs(m, d_m)?;
    profile.expect_kind(ProfileKind::LogPower)?;
    let (a, c, p, b, offset) = (
        profile.amplitude,
        profile.log_scale,
        profile.exponent,
        profile.log_exponent,
        profile.offset,
    );
    let (mm, nn) = constants(m);
    let e = m as f64 + 1.0 - p;
    let k = 2f64.powf(p + b + 1.0) * a / (1.0 - p);
    let (stated, derived) = log_power_thresholds(profile, m, strict);
    let threshold = stated.min(derived);
    let id = if strict { "log-power-strict" } else { "log-power" };
    let mut res = BoundResult::new(id, m, d_m, threshold, d_m < threshold);
    if derived < stated {
        res = res.note("threshold tightened to keep the incomplete-gamma estimate in range");
    }
    if strict && offset > 0.0 {
        res = res.note("offset B ignored in the strict form");
    }
    if d_m == 0.0 {
        return Ok(res);
    }
    let alpha = (nn * d_m / k).powf(1.0 / e);
    let lead = k.powf(m as f64 / e) * (nn * d_m).powf((1.0 - p) / e);
    let log_term = (2f64.powf(b + 2.0) * a / ((1.0 - p) * c.powf(e) * mm * d_m)).ln() / e;
    if strict && log_term < 0.0 {
        res = res.note("negative logarithm replaced by 0 outside the validity range");
    }
    let bracket = 1.0 + log_term.max(0.0).powf(b);
    let mut raw = lead * bracket;
    if !strict {
        raw += 0.5 * offset * alpha + mm * d_m;
    }
    Ok(res.with_value(alpha, raw))
}

/// Dispatch on the profile variant.
pub fn bound_for_profile(profile: &SingularityProfile, m: usize, d_m: f64, strict: bool) -> Result<BoundResult> {
    match profile.kind {
        ProfileKind::Bounded => {
            profile.validate()?;
            bound_bounded(profile.amplitude, m, d_m, strict)
        }
        ProfileKind::Log => bound_log(profile, m, d_m, strict),
        ProfileKind::Power => bound_power(profile, m, d_m, strict),
        ProfileKind::LogPower => bound_log_power(profile, m, d_m, strict),
    }
}

/// The bound before the choice of alpha, with the largest admissible alpha.
pub struct SmoothingObjective {
    pub alpha_max: f64,
    f: Box<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl SmoothingObjective {
    pub fn eval(&self, alpha: f64) -> f64 {
        (self.f)(alpha)
    }

    pub fn minimize(&self) -> Result<super::optimize::AlphaOptimum> {
        super::optimize::optimize_alpha_numeric(|x| self.eval(x), self.alpha_max)
    }
}

pub fn smoothing_objective(
    profile: &SingularityProfile,
    m: usize,
    d_m: f64,
    strict: bool,
) -> Result<SmoothingObjective> {
    check_inputs(m, d_m)?;
    profile.validate()?;
    let (mm, nn) = constants(m);
    let mi = m as i32;
    let (a, c, p, b, eps, offset) = (
        profile.amplitude,
        profile.log_scale,
        profile.exponent,
        profile.log_exponent,
        profile.radius,
        profile.offset,
    );
    let smooth = move |x: f64| {
        if strict {
            nn * d_m / x.powi(mi)
        } else {
            (mm + nn / x.powi(mi)) * d_m
        }
    };
    let local_max = if strict {
        1f64.min(2.0 * eps)
    } else {
        UNRESTRICTED_ALPHA_MAX
    };
    let (alpha_max, f): (f64, Box<dyn Fn(f64) -> f64 + Send + Sync>) = match profile.kind {
        ProfileKind::Bounded => (
            if strict { 1.0 } else { UNRESTRICTED_ALPHA_MAX },
            Box::new(move |x| smooth(x) + 0.5 * a * x),
        ),
        ProfileKind::Log => (
            local_max,
            Box::new(move |x| {
                let l = (2.0 / (c * x)).ln();
                if strict {
                    smooth(x) + a * x * (1.0 + l)
                } else {
                    smooth(x) + a * x * (1.0 + l.max(0.0)) + 0.5 * offset * x
                }
            }),
        ),
        ProfileKind::Power => {
            let k = 2f64.powf(p) * a / (1.0 - p);
            (local_max, Box::new(move |x| smooth(x) + k * x.powf(1.0 - p)))
        }
        ProfileKind::LogPower => {
            let k = 2f64.powf(p + b + 1.0) * a / (1.0 - p);
            let gate = 2f64.powf(-(p + b) / (1.0 - p)) / c;
            let top = if strict { local_max.min(gate) } else { gate };
            (
                top,
                Box::new(move |x| {
                    let l = (2.0 / (c * x)).ln().max(0.0);
                    let extra = if strict { 0.0 } else { 0.5 * offset * x };
                    smooth(x) + k * x.powf(1.0 - p) * l.powf(b) + extra
                }),
            )
        }
    };
    Ok(SmoothingObjective { alpha_max, f })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn worked_values() {
        let r = bound_bounded(1.0, 1, 0.005, true).unwrap();
        assert_relative_eq!(r.bound, 0.1, max_relative = 1e-14);
        assert_relative_eq!(r.alpha.unwrap(), 0.1, max_relative = 1e-14);
        assert!(r.valid);

        let p = SingularityProfile::log(1.0, 1.0, 0.5);
        let r = bound_log(&p, 1, 0.001, true).unwrap();
        let expect = (2.0 + 0.5 * 4000f64.ln()) * 0.001f64.sqrt();
        assert_relative_eq!(r.bound, expect, max_relative = 1e-14);
        assert_relative_eq!(r.alpha.unwrap(), 0.001f64.sqrt(), max_relative = 1e-14);
        assert!(r.valid);

        let p = SingularityProfile::power(1.0, 0.5, 0.5);
        let r = bound_power(&p, 1, 0.001, true).unwrap();
        assert_relative_eq!(r.bound, 0.4, max_relative = 1e-13);

        let p = SingularityProfile::log_power(1.0, 1.0, 0.0, 1.0, 0.5);
        let r = bound_log_power(&p, 1, 1e-6, true).unwrap();
        assert_relative_eq!(r.alpha.unwrap(), 5e-4, max_relative = 1e-13);
        let expect = 2.0 * 1e-3 * (1.0 + 0.5 * 1.6e7f64.ln());
        assert_relative_eq!(r.bound, expect, max_relative = 1e-13);
    }

    #[test]
    fn variant_mismatch_is_rejected() {
        let p = SingularityProfile::bounded(1.0);
        assert!(bound_log(&p, 1, 0.1, true).is_err());
        assert!(bound_bounded(-1.0, 1, 0.1, true).is_err());
        assert!(bound_bounded(1.0, 1, -0.1, true).is_err());
    }

    #[test]
    fn objective_at_stated_alpha_reproduces_formula() {
        let p = SingularityProfile::log(2.0, 1.5, 0.5).with_offset(0.3);
        for strict in [true, false] {
            let r = bound_log(&p, 2, 1e-5, strict).unwrap();
            let obj = smoothing_objective(&p, 2, 1e-5, strict).unwrap();
            assert_relative_eq!(obj.eval(r.alpha.unwrap()), r.raw_bound, max_relative = 1e-12);
        }
    }
}
