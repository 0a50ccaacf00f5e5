//! Property suites shared by the `properties` and `acceptance` targets.
//!
//! Each suite runs a fixed number of cases from a deterministic generator so a
//! failure replays identically.

#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use ris_nakagami::channel::{snr_cdf, ChannelParams, LaguerreParams, SnrPoint};
use ris_nakagami::metrics::outage_probability;
use ris_nakagami::montecarlo::simulate_z_samples;
use ris_nakagami::quad::{integrate_to_infinity, QuadConfig};
use ris_nakagami::specfun::{
    digamma, gen_hypergeom_pfq, ln_gamma, reg_lower_inc_gamma, SeriesControl,
};
use ris_nakagami::McConfig;

pub struct Suite {
    pub name: &'static str,
    pub cases: u32,
    pub run: fn(u32) -> Result<(), String>,
}

/// Every suite with its case budget; the budgets add up to 10 000.
pub const SUITES: [Suite; 9] = [
    Suite {
        name: "2F1 log identity",
        cases: 1500,
        run: hyp2f1_log_identity,
    },
    Suite {
        name: "1F1 exponential identity",
        cases: 1000,
        run: hyp1f1_exponential,
    },
    Suite {
        name: "digamma recurrence",
        cases: 1500,
        run: digamma_recurrence,
    },
    Suite {
        name: "ln_gamma recurrence",
        cases: 1500,
        run: ln_gamma_recurrence,
    },
    Suite {
        name: "incomplete gamma monotone and bounded",
        cases: 1500,
        run: inc_gamma_monotone,
    },
    Suite {
        name: "incomplete gamma normalization",
        cases: 500,
        run: inc_gamma_normalization,
    },
    Suite {
        name: "cdf scale invariance",
        cases: 1000,
        run: cdf_scale_invariance,
    },
    Suite {
        name: "outage monotonicity",
        cases: 1450,
        run: outage_monotone,
    },
    Suite {
        name: "simulation determinism across workers",
        cases: 50,
        run: mc_worker_determinism,
    },
];

pub fn total_cases() -> u32 {
    SUITES.iter().map(|s| s.cases).sum()
}

fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn check<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    runner(cases)
        .run(&strategy, test)
        .map_err(|e| e.to_string())
}

fn fail(e: impl std::fmt::Display) -> TestCaseError {
    TestCaseError::fail(e.to_string())
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

pub fn hyp2f1_log_identity(cases: u32) -> Result<(), String> {
    check(cases, 1e-6f64..=1.0, |y| {
        let f =
            gen_hypergeom_pfq(&[1.0, 1.0], &[2.0], -y, SeriesControl::default()).map_err(fail)?;
        let err = rel(y * f, y.ln_1p());
        prop_assert!(err <= 1e-9, "y = {y}: relative error {err:e}");
        Ok(())
    })
}

pub fn hyp1f1_exponential(cases: u32) -> Result<(), String> {
    check(
        cases,
        (prop_oneof![Just(0.5), Just(3.7)], -5.0f64..=5.0),
        |(a, x)| {
            let f = gen_hypergeom_pfq(&[a], &[a], x, SeriesControl::default()).map_err(fail)?;
            let err = rel(f, x.exp());
            prop_assert!(err <= 1e-10, "a = {a}, x = {x}: relative error {err:e}");
            Ok(())
        },
    )
}

pub fn digamma_recurrence(cases: u32) -> Result<(), String> {
    check(cases, 0.1f64..=100.0, |x| {
        let d = digamma(x + 1.0).map_err(fail)? - digamma(x).map_err(fail)?;
        let err = (d - 1.0 / x).abs();
        prop_assert!(err <= 1e-9, "x = {x}: error {err:e}");
        Ok(())
    })
}

pub fn ln_gamma_recurrence(cases: u32) -> Result<(), String> {
    check(cases, 1e-3f64..=1e3, |x| {
        let err = (ln_gamma(x + 1.0).map_err(fail)? - x.ln() - ln_gamma(x).map_err(fail)?).abs();
        prop_assert!(err <= 1e-11, "x = {x}: error {err:e}");
        Ok(())
    })
}

pub fn inc_gamma_monotone(cases: u32) -> Result<(), String> {
    check(
        cases,
        (0.05f64..=500.0, 0.0f64..=800.0, 0.0f64..=50.0),
        |(s, x, dx)| {
            let p0 = reg_lower_inc_gamma(s, x).map_err(fail)?;
            let p1 = reg_lower_inc_gamma(s, x + dx).map_err(fail)?;
            prop_assert!((0.0..=1.0).contains(&p0) && (0.0..=1.0).contains(&p1));
            // One part in 1e12 of slack absorbs rounding on the flat top.
            prop_assert!(
                p1 >= p0 * (1.0 - 1e-12),
                "s = {s}: P({x}) = {p0} > P({}) = {p1}",
                x + dx
            );
            Ok(())
        },
    )
}

pub fn inc_gamma_normalization(cases: u32) -> Result<(), String> {
    check(cases, (0.2f64..=60.0, 0.0f64..=3.0), |(s, r)| {
        let x = r * s;
        let lg = ln_gamma(s).map_err(fail)?;
        let density = |t: f64| {
            if t > 0.0 {
                ((s - 1.0) * t.ln() - t - lg).exp()
            } else {
                0.0
            }
        };
        let mode = (s - 1.0).max(0.0);
        let mut edges = vec![x];
        for e in [mode, mode + 4.0 * s.sqrt() + 4.0] {
            if e > x {
                edges.push(e);
            }
        }
        let cfg = QuadConfig {
            rel_tol: 1e-12,
            abs_tol: 1e-15,
            ..QuadConfig::default()
        };
        let upper = integrate_to_infinity(density, &edges, cfg)
            .map_err(fail)?
            .value;
        let err = (reg_lower_inc_gamma(s, x).map_err(fail)? + upper - 1.0).abs();
        prop_assert!(err <= 1e-9, "s = {s}, x = {x}: P + Q - 1 = {err:e}");
        Ok(())
    })
}

pub fn cdf_scale_invariance(cases: u32) -> Result<(), String> {
    let scenario = (0.5f64..=10.0, 0.2f64..=5.0, 1u32..=256);
    let point = (-30.0f64..=60.0, -20.0f64..=40.0, -40.0f64..=40.0);
    check(
        cases,
        (scenario, point),
        |((m, omega, n), (snr_db, g_db, k_db))| {
            let lp = ChannelParams::symmetric(m, omega, n)
                .map_err(fail)?
                .laguerre()
                .map_err(fail)?;
            let (gb, g, k) = (
                10f64.powf(snr_db / 10.0),
                10f64.powf(g_db / 10.0),
                10f64.powf(k_db / 10.0),
            );
            let base = snr_cdf(SnrPoint::new(gb, g).map_err(fail)?, lp).map_err(fail)?;
            let scaled = snr_cdf(SnrPoint::new(k * gb, k * g).map_err(fail)?, lp).map_err(fail)?;
            // The ratio γ/γ̄ is formed after scaling, so the arguments differ by a
            // few ulps, which the lower tail amplifies by about a + 1.
            let tol = 16.0 * f64::EPSILON * lp.shape() + 1e-13;
            prop_assert!(
                (scaled - base).abs() <= tol * base,
                "m = {m}, N = {n}, k = {k}: {base:e} vs {scaled:e}"
            );
            let exact =
                snr_cdf(SnrPoint::new(8.0 * gb, 8.0 * g).map_err(fail)?, lp).map_err(fail)?;
            prop_assert_eq!(exact, base);
            Ok(())
        },
    )
}

pub fn outage_monotone(cases: u32) -> Result<(), String> {
    let scenario = (
        0.5f64..=6.0,
        0.5f64..=6.0,
        0.2f64..=3.0,
        0.2f64..=3.0,
        1u32..=63,
    );
    let point = (-10.0f64..=50.0, -10.0f64..=30.0, 0.1f64..=10.0);
    check(
        cases,
        (scenario, point),
        |((m1, m2, w1, w2, n), (snr_db, gout_db, step_db))| {
            let lp = |n| -> Result<LaguerreParams, TestCaseError> {
                ChannelParams::new(m1, m2, w1, w2, n)
                    .map_err(fail)?
                    .laguerre()
                    .map_err(fail)
            };
            let (gb, go) = (10f64.powf(snr_db / 10.0), 10f64.powf(gout_db / 10.0));
            let step = 10f64.powf(step_db / 10.0);
            let p = outage_probability(go, gb, lp(n)?).map_err(fail)?;
            let more_snr = outage_probability(go, gb * step, lp(n)?).map_err(fail)?;
            let higher_threshold = outage_probability(go * step, gb, lp(n)?).map_err(fail)?;
            let more_elements = outage_probability(go, gb, lp(n + 1)?).map_err(fail)?;
            prop_assert!(
                more_snr <= p,
                "raising SNR raised outage: {p:e} -> {more_snr:e}"
            );
            prop_assert!(
                higher_threshold >= p,
                "raising threshold lowered outage: {p:e} -> {higher_threshold:e}"
            );
            prop_assert!(
                more_elements <= p,
                "adding an element raised outage: {p:e} -> {more_elements:e}"
            );
            // Strictness is only observable where neither value is saturated.
            if p > 1e-290 && p < 1.0 - 1e-12 {
                prop_assert!(more_elements < p, "N = {n}: outage flat at {p:e}");
            }
            Ok(())
        },
    )
}

pub fn mc_worker_determinism(cases: u32) -> Result<(), String> {
    let strategy = (
        any::<u64>(),
        1u64..=4000,
        1u64..=700,
        0.5f64..=4.0,
        1u32..=16,
        2usize..=6,
    );
    check(cases, strategy, |(seed, trials, chunk, m, n, workers)| {
        let params = ChannelParams::symmetric(m, 1.0, n).map_err(fail)?;
        let cfg = McConfig::with_chunk(trials, seed, chunk).map_err(fail)?;
        let one = simulate_z_samples(&params, &cfg.workers(1)).map_err(fail)?;
        let many = simulate_z_samples(&params, &cfg.workers(workers)).map_err(fail)?;
        prop_assert_eq!(one.as_slice(), many.as_slice());
        let (e1, e2) = (one.capacity(10.0), many.capacity(10.0));
        prop_assert_eq!(e1.value.to_bits(), e2.value.to_bits());
        prop_assert_eq!(e1.std_error.to_bits(), e2.std_error.to_bits());
        Ok(())
    })
}
