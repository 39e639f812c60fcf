//! Continuous target distributions, their density envelopes, and a
//! kind-keyed registry for building them from names and parameters.

mod beta;
mod envelope;
mod simple;
mod vg;

use std::collections::BTreeMap;
use std::fmt::Debug;

use serde::Deserialize;

use crate::bounds::SingularityProfile;
use crate::error::{invalid, Error, Result};
use crate::quad;

pub use beta::{beta_universal_bound, BetaCase, BetaProfiles, BetaTarget};
pub use envelope::{envelope_check, EnvelopeReport};
pub use simple::{std_normal_cdf, std_normal_pdf, Exponential, Normal, Uniform};
pub use vg::VarianceGammaTarget;

/// Probability tolerance used by quantile inversion.
pub const QUANTILE_TOL: f64 = 1e-12;

/// Anything with a cumulative distribution function.
pub trait Cdf {
    fn cdf(&self, x: f64) -> f64;

    /// `P(Y < x)`.
    fn cdf_left(&self, x: f64) -> f64 {
        self.cdf(x)
    }

    /// Points where the CDF jumps.
    fn jump_points(&self) -> Vec<f64> {
        Vec::new()
    }
}

/// A one-dimensional absolutely continuous target.
pub trait Univariate: Cdf + Debug + Send + Sync {
    fn kind(&self) -> &'static str;
    fn params(&self) -> Vec<(&'static str, f64)>;
    /// Closure of the support.
    fn support(&self) -> (f64, f64);
    fn density(&self, y: f64) -> f64;
    fn mean(&self) -> f64;
    /// Density envelope for the bound engine.
    fn profile(&self) -> Result<SingularityProfile>;

    /// `int_{-inf}^x F(t) dt = E (x - Y)^+`.
    fn lower_partial(&self, x: f64) -> f64 {
        let (lo, _) = self.support();
        if x <= lo {
            return 0.0;
        }
        let r = if lo.is_finite() {
            quad::integrate(|t| self.cdf(t), lo, x, 1e-13, 1e-13)
        } else {
            quad::integrate_lower_tail(|t| self.cdf(t), x, 1e-13, 1e-13)
        };
        r.map(|q| q.value).unwrap_or(f64::NAN)
    }

    /// `int_x^inf (1 - F(t)) dt = E (Y - x)^+`.
    fn upper_partial(&self, x: f64) -> f64 {
        (self.mean() - x + self.lower_partial(x)).max(0.0)
    }

    /// Generalised inverse by bracketed bisection.
    fn quantile(&self, u: f64) -> f64 {
        bisect_quantile(self, u)
    }
}

pub(crate) fn bisect_quantile<T: Univariate + ?Sized>(t: &T, u: f64) -> f64 {
    let (lo, hi) = t.support();
    if u <= 0.0 {
        return lo;
    }
    if u >= 1.0 {
        return hi;
    }
    let center = t.mean();
    let mut step = 1.0;
    let mut a = if lo.is_finite() { lo } else { center - step };
    while t.cdf(a) > u {
        step *= 2.0;
        a = center - step;
    }
    step = 1.0;
    let mut b = if hi.is_finite() { hi } else { center + step };
    while t.cdf(b) < u {
        step *= 2.0;
        b = center + step;
    }
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let f = t.cdf(mid);
        if (f - u).abs() <= 0.01 * QUANTILE_TOL && b - a <= 1e-14 * (1.0 + mid.abs()) {
            return mid;
        }
        if f < u {
            a = mid;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

/// JSON target description: `{"kind": "...", "params": {...}}`.
#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TargetSpec {
    pub kind: String,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
}

impl TargetSpec {
    pub fn new(kind: &str, params: &[(&str, f64)]) -> Self {
        TargetSpec {
            kind: kind.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Builds one kind of target from named parameters.
pub trait TargetFactory: Send + Sync {
    fn kind(&self) -> &'static str;
    /// Parameter names with their defaults (`None` when required).
    fn parameters(&self) -> &'static [(&'static str, Option<f64>)];
    fn build(&self, params: &Params) -> Result<Box<dyn Univariate>>;
}

/// Parameter lookup with defaults applied.
pub struct Params<'a> {
    values: &'a BTreeMap<String, f64>,
    defaults: &'static [(&'static str, Option<f64>)],
}

impl Params<'_> {
    pub fn get(&self, name: &str) -> Result<f64> {
        if let Some(v) = self.values.get(name) {
            return Ok(*v);
        }
        match self.defaults.iter().find(|(n, _)| *n == name) {
            Some((_, Some(d))) => Ok(*d),
            _ => invalid(format!("missing parameter '{name}'")),
        }
    }
}

struct Factory {
    kind: &'static str,
    parameters: &'static [(&'static str, Option<f64>)],
    build: fn(&Params) -> Result<Box<dyn Univariate>>,
}

impl TargetFactory for Factory {
    fn kind(&self) -> &'static str {
        self.kind
    }
    fn parameters(&self) -> &'static [(&'static str, Option<f64>)] {
        self.parameters
    }
    fn build(&self, params: &Params) -> Result<Box<dyn Univariate>> {
        (self.build)(params)
    }
}

/// Kind-keyed collection of target factories.
pub struct TargetRegistry {
    entries: BTreeMap<&'static str, Box<dyn TargetFactory>>,
}

impl TargetRegistry {
    pub fn empty() -> Self {
        TargetRegistry {
            entries: BTreeMap::new(),
        }
    }

    pub fn standard() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(Factory {
            kind: "normal",
            parameters: &[("mu", Some(0.0)), ("sigma", Some(1.0))],
            build: |p| Ok(Box::new(Normal::new(p.get("mu")?, p.get("sigma")?)?)),
        }));
        r.register(Box::new(Factory {
            kind: "exponential",
            parameters: &[("lambda", Some(1.0))],
            build: |p| Ok(Box::new(Exponential::new(p.get("lambda")?)?)),
        }));
        r.register(Box::new(Factory {
            kind: "uniform",
            parameters: &[("a", Some(0.0)), ("b", Some(1.0))],
            build: |p| Ok(Box::new(Uniform::new(p.get("a")?, p.get("b")?)?)),
        }));
        r.register(Box::new(Factory {
            kind: "beta",
            parameters: &[("alpha", None), ("beta", None)],
            build: |p| Ok(Box::new(BetaTarget::new(p.get("alpha")?, p.get("beta")?)?)),
        }));
        r.register(Box::new(Factory {
            kind: "vg",
            parameters: &[
                ("r", None),
                ("theta", Some(0.0)),
                ("sigma", Some(1.0)),
                ("mu", Some(0.0)),
            ],
            build: |p| {
                Ok(Box::new(VarianceGammaTarget::new(
                    p.get("r")?,
                    p.get("theta")?,
                    p.get("sigma")?,
                    p.get("mu")?,
                )?))
            },
        }));
        r
    }

    pub fn register(&mut self, factory: Box<dyn TargetFactory>) {
        self.entries.insert(factory.kind(), factory);
    }

    pub fn kinds(&self) -> Vec<&'static str> {
        self.entries.keys().copied().collect()
    }

    pub fn get(&self, kind: &str) -> Result<&dyn TargetFactory> {
        self.entries
            .get(kind)
            .map(|b| b.as_ref())
            .ok_or_else(|| Error::Unknown {
                kind: "target",
                name: kind.to_string(),
            })
    }

    pub fn build(&self, spec: &TargetSpec) -> Result<Box<dyn Univariate>> {
        let factory = self.get(&spec.kind)?;
        let known = factory.parameters();
        if let Some(extra) = spec.params.keys().find(|k| !known.iter().any(|(n, _)| n == k)) {
            return invalid(format!("unknown parameter '{extra}' for target '{}'", spec.kind));
        }
        if let Some((k, v)) = spec.params.iter().find(|(_, v)| !v.is_finite()) {
            return invalid(format!("parameter '{k}' must be finite, got {v}"));
        }
        factory.build(&Params {
            values: &spec.params,
            defaults: known,
        })
    }
}

impl Default for TargetRegistry {
    fn default() -> Self {
        Self::standard()
    }
}

impl<T: Cdf + ?Sized> Cdf for Box<T> {
    fn cdf(&self, x: f64) -> f64 {
        (**self).cdf(x)
    }
    fn cdf_left(&self, x: f64) -> f64 {
        (**self).cdf_left(x)
    }
    fn jump_points(&self) -> Vec<f64> {
        (**self).jump_points()
    }
}
