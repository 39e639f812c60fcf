use approx::assert_relative_eq;
use proptest::prelude::*;

use kdbound::bounds::{bound_bounded, bound_for_profile, smoothing_objective, SingularityProfile};
use kdbound::experiments::{urn_exact_pmf, UrnSpec};
use kdbound::metrics::{kolmogorov_exact, wasserstein1d_exact, wasserstein_discrete, DiscreteDistribution};
use kdbound::special::bessel_k;
use kdbound::spline::{from_json, to_json, BaseSpline, SmoothedIndicator};
use kdbound::targets::{Normal, Uniform};

fn profile_strategy() -> impl Strategy<Value = SingularityProfile> {
    prop_oneof![
        (0.1f64..5.0).prop_map(SingularityProfile::bounded),
        (0.1f64..5.0, 0.5f64..2.0).prop_map(|(a, c)| SingularityProfile::log(a, c, 0.5f64.min(1.0 / c))),
        (0.1f64..5.0, 0.05f64..0.95).prop_map(|(a, p)| SingularityProfile::power(a, p, 0.5)),
        (0.1f64..5.0, 0.5f64..2.0, 0.05f64..0.95, 0.0f64..2.0).prop_map(|(a, c, p, b)| SingularityProfile::log_power(
            a,
            c,
            p,
            b,
            0.5f64.min(1.0 / c)
        )),
    ]
}

fn discrete_strategy() -> impl Strategy<Value = DiscreteDistribution> {
    prop::collection::vec((-3.0f64..3.0, 0.01f64..1.0), 1..12).prop_map(|pairs| {
        let (points, weights): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
        DiscreteDistribution::from_weighted(&points, &weights).unwrap()
    })
}

/// Forward recursion over draws, independent of the closed-form ratio.
fn urn_by_recursion(spec: &UrnSpec) -> Vec<f64> {
    let (a, b, t) = (spec.alpha0 as f64, spec.beta0 as f64, spec.t as f64);
    let mut probs = vec![1.0];
    for step in 0..spec.n as usize {
        let mut next = vec![0.0; step + 2];
        for (k, p) in probs.iter().enumerate() {
            let white = a + k as f64 * t;
            let black = b + (step - k) as f64 * t;
            next[k + 1] += p * white / (white + black);
            next[k] += p * black / (white + black);
        }
        probs = next;
    }
    probs
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bound_is_monotone_in_distance(
        profile in profile_strategy(),
        m in 1usize..5,
        strict in any::<bool>(),
        lo in -12.0f64..-3.0,
        gap in 0.0f64..2.0,
    ) {
        let (d1, d2) = (10f64.powf(lo), 10f64.powf(lo + gap));
        let b1 = bound_for_profile(&profile, m, d1, strict).unwrap();
        let b2 = bound_for_profile(&profile, m, d2, strict).unwrap();
        prop_assert!(b1.bound <= b2.bound * (1.0 + 1e-12));
    }

    #[test]
    fn first_order_bounded_closed_form(amplitude in 0.01f64..10.0, d in 1e-12f64..1e-2) {
        let r = bound_bounded(amplitude, 1, d, true).unwrap();
        assert_relative_eq!(r.raw_bound, (2.0 * amplitude * d).sqrt(), max_relative = 1e-13);
    }

    #[test]
    fn validity_gate_boundary(amplitude in 0.01f64..10.0, m in 1usize..8) {
        let edge = bound_bounded(amplitude, m, 1e-3, true).unwrap().validity_threshold;
        prop_assert!(bound_bounded(amplitude, m, edge, true).unwrap().valid);
        prop_assert!(!bound_bounded(amplitude, m, edge * (1.0 + 1e-9), true).unwrap().valid);
        prop_assert!(bound_bounded(amplitude, m, edge * 10.0, false).unwrap().valid);
    }

    #[test]
    fn numeric_minimum_never_exceeds_stated_alpha(
        profile in profile_strategy(),
        m in 1usize..5,
        d in -10.0f64..-3.0,
    ) {
        let d = 10f64.powf(d);
        let stated = bound_for_profile(&profile, m, d, true).unwrap();
        let objective = smoothing_objective(&profile, m, d, true).unwrap();
        let numeric = objective.minimize().unwrap();
        prop_assert!(numeric.alpha <= objective.alpha_max * (1.0 + 1e-12));
        if stated.alpha.is_some_and(|a| a <= objective.alpha_max) {
            prop_assert!(numeric.value <= stated.raw_bound * (1.0 + 1e-10));
        }
    }

    #[test]
    fn indicator_norms_scale_with_width(m in 1usize..7, alpha in 1e-3f64..10.0, z in -5.0f64..5.0) {
        let base = BaseSpline::new(m).unwrap();
        let h = SmoothedIndicator::new(&base, z, alpha).unwrap();
        for (i, (scaled, unit)) in h.derivative_norms().iter().zip(base.derivative_norms()).enumerate() {
            assert_relative_eq!(*scaled, unit * (2.0 / alpha).powi(i as i32), max_relative = 1e-13);
        }
    }

    #[test]
    fn indicator_is_monotone_and_bounded(m in 1usize..7, alpha in 1e-2f64..5.0, z in -2.0f64..2.0) {
        let base = BaseSpline::new(m).unwrap();
        let h = SmoothedIndicator::new(&base, z, alpha).unwrap();
        prop_assert_eq!(h.value(z - 1e-9), 1.0);
        prop_assert_eq!(h.value(z + alpha + 1e-9), 0.0);
        let mut last = 1.0;
        for k in 0..=400 {
            let v = h.value(z - 0.1 + (alpha + 0.2) * k as f64 / 400.0);
            prop_assert!((-1e-14..=1.0 + 1e-14).contains(&v));
            prop_assert!(v <= last + 1e-14);
            last = v;
        }
    }

    #[test]
    fn bessel_recurrence(nu in 0.0f64..4.0, x in 0.05f64..30.0) {
        let lhs = bessel_k(nu + 1.0, x).unwrap() - bessel_k(nu - 1.0, x).unwrap();
        let rhs = 2.0 * nu / x * bessel_k(nu, x).unwrap();
        let scale = bessel_k(nu + 1.0, x).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-11 * scale);
    }

    #[test]
    fn wasserstein_is_a_metric(p in discrete_strategy(), q in discrete_strategy(), r in discrete_strategy()) {
        let pq = wasserstein_discrete(&p, &q).value;
        prop_assert!(pq >= 0.0);
        assert_relative_eq!(pq, wasserstein_discrete(&q, &p).value, epsilon = 1e-13);
        prop_assert!(wasserstein_discrete(&p, &p).value.abs() <= 1e-13);
        let via = wasserstein_discrete(&p, &r).value + wasserstein_discrete(&r, &q).value;
        prop_assert!(pq <= via + 1e-12);
    }

    #[test]
    fn kolmogorov_controlled_by_wasserstein(p in discrete_strategy(), mu in -1.0f64..1.0, sigma in 0.3f64..3.0) {
        let target = Normal::new(mu, sigma).unwrap();
        let density_max = 1.0 / (sigma * (2.0 * std::f64::consts::PI).sqrt());
        let dk = kolmogorov_exact(&p, &target).value;
        let dw = wasserstein1d_exact(&p, &target).unwrap().value;
        prop_assert!((0.0..=1.0).contains(&dk));
        prop_assert!(dk <= (2.0 * density_max * dw).sqrt() + 1e-12);
    }

    #[test]
    fn kolmogorov_against_uniform_bounded(p in discrete_strategy()) {
        let target = Uniform::new(-3.0, 3.0).unwrap();
        let dk = kolmogorov_exact(&p, &target).value;
        let dw = wasserstein1d_exact(&p, &target).unwrap().value;
        prop_assert!(dk <= (2.0 / 6.0 * dw).sqrt() + 1e-12);
    }

    #[test]
    fn urn_pmf_matches_recursion(alpha in 1u64..5, beta in 1u64..5, t in 1u64..4, n in 1u64..200) {
        let spec = UrnSpec::new(alpha, beta, t, n).unwrap();
        let law = urn_exact_pmf(&spec).unwrap();
        let reference = urn_by_recursion(&spec);
        for (atom, mass) in law.atoms().iter().zip(law.masses()) {
            let expected = reference[*atom as usize];
            prop_assert!((mass - expected).abs() <= 1e-12 + 1e-10 * expected);
        }
        let total: f64 = law.masses().iter().sum();
        assert_relative_eq!(total, 1.0, epsilon = 1e-12);
    }
}

#[test]
fn derivative_norm_ordering() {
    for m in 1..=8 {
        let norms = BaseSpline::new(m).unwrap().derivative_norms().to_vec();
        assert_relative_eq!(norms[0], 1.0, epsilon = 1e-15);
        assert!(norms[0] <= 2.0 * norms[1]);
        for i in 1..norms.len() - 1 {
            assert!(norms[i] <= norms[i + 1], "m={m} i={i}");
        }
    }
}

#[test]
fn spline_json_round_trip() {
    for m in 1..=8 {
        let spline = BaseSpline::new(m).unwrap();
        let text = to_json(&spline);
        let back = from_json(&text).unwrap();
        assert_eq!(back.order(), m);
        assert_eq!(to_json(&back), text);
        for k in 0..=200 {
            let x = -1.2 + 2.4 * k as f64 / 200.0;
            assert_relative_eq!(back.evaluate(x), spline.evaluate(x), epsilon = 1e-15);
        }
    }
}
