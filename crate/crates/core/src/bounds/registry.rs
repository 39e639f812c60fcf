use std::collections::BTreeMap;

use crate::error::{Error, Result};

use super::optimize::AlphaOptimum;
use super::profile::{ProfileKind, SingularityProfile};
use super::result::BoundResult;
use super::univariate::{
    bound_bounded, bound_log, bound_log_power, bound_power, smoothing_objective, SmoothingObjective,
};

/// A univariate Kolmogorov bound family, selected by profile name.
pub trait BoundStrategy: Send + Sync {
    fn name(&self) -> &'static str;
    fn kind(&self) -> ProfileKind;
    /// Closed-form bound at the formula's own choice of alpha.
    fn compute(&self, profile: &SingularityProfile, m: usize, d_m: f64, strict: bool) -> Result<BoundResult>;

    /// The bound as a function of alpha, before alpha is chosen.
    fn objective(&self, profile: &SingularityProfile, m: usize, d_m: f64, strict: bool) -> Result<SmoothingObjective> {
        profile.expect_kind(self.kind())?;
        smoothing_objective(profile, m, d_m, strict)
    }

    /// Numerically optimal alpha for the objective.
    fn optimize(&self, profile: &SingularityProfile, m: usize, d_m: f64, strict: bool) -> Result<AlphaOptimum> {
        self.objective(profile, m, d_m, strict)?.minimize()
    }
}

struct Bounded;
struct Log;
struct Power;
struct LogPower;

impl BoundStrategy for Bounded {
    fn name(&self) -> &'static str {
        "bounded"
    }
    fn kind(&self) -> ProfileKind {
        ProfileKind::Bounded
    }
    fn compute(&self, profile: &SingularityProfile, m: usize, d_m: f64, strict: bool) -> Result<BoundResult> {
        profile.expect_kind(ProfileKind::Bounded)?;
        bound_bounded(profile.amplitude, m, d_m, strict)
    }
}

impl BoundStrategy for Log {
    fn name(&self) -> &'static str {
        "log"
    }
    fn kind(&self) -> ProfileKind {
        ProfileKind::Log
    }
    fn compute(&self, profile: &SingularityProfile, m: usize, d_m: f64, strict: bool) -> Result<BoundResult> {
        bound_log(profile, m, d_m, strict)
    }
}

impl BoundStrategy for Power {
    fn name(&self) -> &'static str {
        "power"
    }
    fn kind(&self) -> ProfileKind {
        ProfileKind::Power
    }
    fn compute(&self, profile: &SingularityProfile, m: usize, d_m: f64, strict: bool) -> Result<BoundResult> {
        bound_power(profile, m, d_m, strict)
    }
}

impl BoundStrategy for LogPower {
    fn name(&self) -> &'static str {
        "log-power"
    }
    fn kind(&self) -> ProfileKind {
        ProfileKind::LogPower
    }
    fn compute(&self, profile: &SingularityProfile, m: usize, d_m: f64, strict: bool) -> Result<BoundResult> {
        bound_log_power(profile, m, d_m, strict)
    }
}

/// Name-keyed collection of bound strategies.
pub struct BoundRegistry {
    entries: BTreeMap<&'static str, Box<dyn BoundStrategy>>,
}

impl BoundRegistry {
    pub fn empty() -> Self {
        BoundRegistry {
            entries: BTreeMap::new(),
        }
    }

    pub fn standard() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(Bounded));
        r.register(Box::new(Log));
        r.register(Box::new(Power));
        r.register(Box::new(LogPower));
        r
    }

    pub fn register(&mut self, strategy: Box<dyn BoundStrategy>) {
        self.entries.insert(strategy.name(), strategy);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.keys().copied().collect()
    }

    pub fn get(&self, name: &str) -> Result<&dyn BoundStrategy> {
        self.entries
            .get(name)
            .map(|b| b.as_ref())
            .ok_or_else(|| Error::Unknown {
                kind: "bound profile",
                name: name.to_string(),
            })
    }

    /// Strategy matching a profile's variant.
    pub fn for_profile(&self, profile: &SingularityProfile) -> Result<&dyn BoundStrategy> {
        self.get(profile.kind.name())
    }
}

impl Default for BoundRegistry {
    fn default() -> Self {
        Self::standard()
    }
}
