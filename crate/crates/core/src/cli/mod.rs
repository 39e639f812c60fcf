//! The `kdbound` command line.
//!
//! Exit codes: 0 on success, 1 on usage or parameter errors (including a
//! spline that fails certification), 2 when a validation finds a bound below
//! the measured distance while its validity gate holds.

mod args;
mod render;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::{json, Value};

use crate::bounds::{
    bound_mvn, exchangeable_pair_bounds, BoundRegistry, ExchangeablePairInputs, MvnTarget, ProfileKind,
    SingularityProfile,
};
use crate::constants::{constants_table, favard_constant, landau_kolmogorov_constant};
use crate::error::{invalid, Error, Result};
use crate::experiments::{
    nazarov_probe, validate_clt, validate_mvn_discretization, validate_urn, CltSummand, ExperimentReport, McSettings,
    UrnSpec,
};
use crate::format::fmt_num;
use crate::spline::{certify_membership, from_json, to_json, BaseSpline};
use crate::targets::{beta_universal_bound, BetaTarget, TargetRegistry, TargetSpec};

use args::{BoundCmd, ComputeArgs, ConstantsCmd, PairArgs, SplineCmd, TargetArgs, ValidateCmd};
pub use args::{Cli, Command, Format};
use render::{numbers_as_strings, Output};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;

/// Parse `argv` (including the program name), run, and return the exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli) {
        Ok(output) => {
            let text = match output.render(cli.format) {
                Ok(t) => t,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    return EXIT_USAGE;
                }
            };
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &text).map_err(Error::from),
                None => stdout.write_all(text.as_bytes()).map_err(Error::from),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_USAGE;
            }
            if let Some(msg) = &output.failure {
                let _ = writeln!(stderr, "error: {msg}");
                return EXIT_USAGE;
            }
            if output.violation {
                let _ = writeln!(stderr, "soundness violation detected");
                EXIT_VIOLATION
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn execute(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Spline(cmd) => spline(cmd),
        Command::Constants(ConstantsCmd::Dump { m, tol }) => constants(*m, *tol),
        Command::Bound(cmd) => bound(cmd),
        Command::Validate(cmd) => validate(cmd, cli.seed),
    }
}

fn spline(cmd: &SplineCmd) -> Result<Output> {
    match cmd {
        SplineCmd::Build { m } => {
            let s = BaseSpline::new(*m)?;
            Ok(Output::single(serde_json::from_str(&to_json(&s))?))
        }
        SplineCmd::Verify { m, tol, input } => {
            if !(*tol > 0.0) {
                return invalid("tolerance must be positive");
            }
            let s = match input {
                Some(path) => from_json(&std::fs::read_to_string(path)?)?,
                None => BaseSpline::new(*m)?,
            };
            if s.order() != *m {
                return invalid(format!("spline has order {}, expected {m}", s.order()));
            }
            let report = certify_membership(&s, *tol);
            let pass = report.pass;
            let mut out = Output::single(numbers_as_strings(serde_json::to_value(report)?));
            if !pass {
                out.failure = Some(format!("spline of order {m} failed certification at tolerance {tol}"));
            }
            Ok(out)
        }
    }
}

fn constants(m_max: usize, tol: f64) -> Result<Output> {
    let mut rows = Vec::new();
    for row in constants_table(m_max)? {
        let m = row.m;
        let lk = (1..m)
            .map(|k| landau_kolmogorov_constant(m, k, tol).map(fmt_num))
            .collect::<Result<Vec<_>>>()?;
        rows.push(json!({
            "m": m,
            "spline": fmt_num(row.spline),
            "norm": fmt_num(row.norm),
            "spline_multivariate": fmt_num(row.spline_multivariate),
            "norm_multivariate": fmt_num(row.norm_multivariate),
            "favard": fmt_num(favard_constant(m, tol)?.value),
            "landau_kolmogorov": lk,
        }));
    }
    Ok(Output::many(rows))
}

fn bound(cmd: &BoundCmd) -> Result<Output> {
    match cmd {
        BoundCmd::Compute(a) => compute(a),
        BoundCmd::Target(a) => target(a),
        BoundCmd::Mvn { m, dm, dim, sigma } => {
            let target = MvnTarget::isotropic(*dim, *sigma)?;
            let (strict, loose) = bound_mvn(&target, *m, *dm)?;
            Ok(Output::many(vec![strict.to_json_value(), loose.to_json_value()]))
        }
        BoundCmd::Pair(a) => pair(a),
    }
}

fn compute(a: &ComputeArgs) -> Result<Output> {
    let kind = ProfileKind::parse(&a.profile)?;
    let eps = a.eps.unwrap_or_else(|| 0.5f64.min(1.0 / a.c));
    let profile = match kind {
        ProfileKind::Bounded => SingularityProfile::bounded(a.amplitude),
        ProfileKind::Log => SingularityProfile::log(a.amplitude, a.c, eps),
        ProfileKind::Power => SingularityProfile::power(a.amplitude, a.a, eps),
        ProfileKind::LogPower => SingularityProfile::log_power(a.amplitude, a.c, a.a, a.b, eps),
    }
    .with_offset(a.offset);
    profile.validate()?;
    let registry = BoundRegistry::standard();
    let r = registry
        .get(&a.profile)?
        .compute(&profile, a.m, a.dm, a.strictness.value())?;
    Ok(Output::single(r.to_json_value()))
}

fn target(a: &TargetArgs) -> Result<Output> {
    let spec = match &a.config {
        Some(path) => TargetSpec::from_json(&std::fs::read_to_string(path)?)?,
        None => {
            let flags = [
                ("alpha", a.alpha),
                ("beta", a.beta),
                ("r", a.r),
                ("theta", a.theta),
                ("sigma", a.sigma),
                ("mu", a.mu),
                ("lambda", a.lambda),
                ("a", a.a),
                ("b", a.b),
            ];
            let given: Vec<(&str, f64)> = flags.iter().filter_map(|(k, v)| v.map(|v| (*k, v))).collect();
            TargetSpec::new(a.kind.as_deref().unwrap_or_default(), &given)
        }
    };
    let target = TargetRegistry::standard().build(&spec)?;
    let profile = target.profile()?.with_offset(a.offset);
    profile.validate()?;
    let registry = BoundRegistry::standard();
    let strategy = registry.for_profile(&profile)?;
    let mut results = vec![strategy
        .compute(&profile, a.m, a.dm, a.strictness.value())?
        .to_json_value()];
    if spec.kind == "beta" {
        let params: Vec<f64> = target.params().iter().map(|(_, v)| *v).collect();
        let beta = BetaTarget::new(params[0], params[1])?;
        results.push(beta_universal_bound(&beta, a.m, a.dm)?.to_json_value());
    }
    Ok(Output::many(results))
}

fn pair(a: &PairArgs) -> Result<Output> {
    let inputs = ExchangeablePairInputs {
        a: a.a,
        b: a.b,
        c: a.c,
        dim: a.dim,
        sigma: a.sigma,
        sigma_star: a.sigma_star,
        sup_norm_sigma: a.cov_norm,
    };
    let (third, second) = exchangeable_pair_bounds(&inputs, a.d3, a.d2)?;
    Ok(Output::many(vec![third.to_json_value(), second.to_json_value()]))
}

fn validate(cmd: &ValidateCmd, seed: u64) -> Result<Output> {
    let reports: Vec<ExperimentReport> = match cmd {
        ValidateCmd::Urn { alpha, beta, t, n, m } => n
            .iter()
            .map(|n| validate_urn(&UrnSpec::new(*alpha, *beta, *t, *n)?, *m))
            .collect::<Result<_>>()?,
        ValidateCmd::Clt {
            dist,
            n,
            m,
            samples,
            strictness,
        } => {
            let law = CltSummand::parse(dist)?;
            let mc = McSettings {
                samples: *samples,
                seed,
            };
            n.iter()
                .map(|n| validate_clt(law, *n, *m, strictness.value(), mc))
                .collect::<Result<_>>()?
        }
        ValidateCmd::MvnDisc { dim, h, m } => h
            .iter()
            .map(|h| validate_mvn_discretization(*dim, *h, *m))
            .collect::<Result<_>>()?,
        ValidateCmd::Nazarov { dim, sigma, grid } => {
            let reports = dim
                .iter()
                .map(|d| nazarov_probe(*d, *sigma, *grid, seed))
                .collect::<Result<Vec<_>>>()?;
            let violation = reports.iter().any(|r| r.violations > 0);
            let rows = reports
                .into_iter()
                .map(|r| serde_json::to_value(r).map(numbers_as_strings))
                .collect::<std::result::Result<Vec<Value>, _>>()?;
            let mut out = Output::many(rows);
            out.violation = violation;
            return Ok(out);
        }
    };
    Ok(Output::reports(&reports))
}
