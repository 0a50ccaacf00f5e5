use std::f64::consts::{LN_2, PI};

use crate::channel::LaguerreParams;
use crate::error::{Error, Result};
use crate::quad::{integrate_to_infinity, QuadConfig};
use crate::specfun::{digamma, ln_gamma, pfq_series, SeriesControl};

/// Minimum distance of `a` from an integer accepted by [`capacity_closed_form`].
pub const POLE_GUARD: f64 = 1e-3;

/// Cancellation (in decimal digits) beyond which the closed form is rejected.
const MAX_DIGITS_LOST: f64 = 10.0;

fn check_gamma_bar(op: &'static str, gamma_bar: f64) -> Result<()> {
    if gamma_bar.is_finite() && gamma_bar > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            op,
            name: "gamma_bar",
            value: gamma_bar,
            reason: "must be finite and positive",
        })
    }
}

/// Ergodic capacity in bits per channel use, by adaptive quadrature.
///
/// With `√(γ/γ̄) = b t` the SNR density becomes a gamma density in `t`, so
/// `C = (1/ln 2) ∫ ln(1 + β²t²) t^a e^{-t} / Γ(a+1) dt`, `β = b√γ̄`.
pub fn capacity_quadrature(gamma_bar: f64, lp: LaguerreParams) -> Result<f64> {
    const OP: &str = "capacity_quadrature";
    check_gamma_bar(OP, gamma_bar)?;
    let a = lp.a;
    let beta = lp.b * gamma_bar.sqrt();
    let lg = ln_gamma(a + 1.0)?;
    let mean = a + 1.0;
    let sd = mean.sqrt();

    let mut edges = vec![0.0];
    edges.extend((-6..=6).map(|k| mean + k as f64 * sd).filter(|&t| t > 0.0));
    let knee = 1.0 / beta;
    if knee < edges[edges.len() - 1] {
        edges.push(knee);
    }
    edges.sort_by(f64::total_cmp);

    let integrand = |t: f64| {
        if t <= 0.0 {
            return 0.0;
        }
        let w = (a * t.ln() - t - lg).exp();
        if w == 0.0 {
            0.0
        } else {
            (beta * beta * t * t).ln_1p() * w
        }
    };
    let r =
        integrate_to_infinity(integrand, &edges, QuadConfig::default()).map_err(|e| match e {
            Error::Quadrature {
                estimate,
                error_bound,
                ..
            } => Error::Quadrature {
                op: OP,
                estimate,
                error_bound,
            },
            other => other,
        })?;
    Ok(r.value / LN_2)
}

/// Ergodic capacity from the `₂F₃`/`₁F₂` closed form.
///
/// The closed form has `csc(πa/2)` and `sec(πa/2)` factors, so `a` within
/// [`POLE_GUARD`] of an integer is refused with [`Error::PoleProximity`].
/// Large alternating sums at low SNR are refused with [`Error::IllConditioned`].
pub fn capacity_closed_form(gamma_bar: f64, lp: LaguerreParams) -> Result<f64> {
    const OP: &str = "capacity_closed_form";
    check_gamma_bar(OP, gamma_bar)?;
    let a = lp.a;
    let distance = (a - a.round()).abs();
    if distance < POLE_GUARD {
        return Err(Error::PoleProximity {
            op: OP,
            a,
            distance,
        });
    }
    let beta = lp.b * gamma_bar.sqrt();
    let ln_beta = beta.ln();
    let y = -0.25 / (beta * beta);
    let h = 0.5 * a;
    let lg = ln_gamma(a + 1.0)?;
    let ctl = SeriesControl::default();

    let f23 = pfq_series(&[1.0, 1.0], &[2.0, 1.0 - h, 1.5 - h], y, ctl)?;
    let f12a = pfq_series(&[h + 1.0], &[1.5, h + 2.0], y, ctl)?;
    let f12b = pfq_series(&[h + 0.5], &[0.5, h + 1.5], y, ctl)?;

    let s1 = f23.value / (a * (a - 1.0) * beta * beta);
    let s2 = PI / (PI * h).sin() * (-(a + 2.0) * ln_beta - lg).exp() / (a + 2.0) * f12a.value;
    let s3 = PI / (PI * h).cos() * (-(a + 1.0) * ln_beta - lg).exp() / (a + 1.0) * f12b.value;
    let s4 = 2.0 * (digamma(a + 1.0)? + ln_beta);
    let sum = s1 + s2 + s3 + s4;

    let largest = [s1, s2, s3, s4].iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let series_loss = f23
        .digits_lost()
        .max(f12a.digits_lost())
        .max(f12b.digits_lost());
    let lost = if sum > 0.0 {
        (largest / sum).log10().max(0.0) + series_loss
    } else {
        f64::INFINITY
    };
    if !(lost <= MAX_DIGITS_LOST) {
        return Err(Error::IllConditioned {
            op: OP,
            digits_lost: lost,
        });
    }
    Ok(sum / LN_2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::ChannelParams;
    use crate::db_to_linear;

    fn lp(m: f64, n: u32) -> LaguerreParams {
        ChannelParams::symmetric(m, 1.0, n)
            .unwrap()
            .laguerre()
            .unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn reference_values() {
        // Rayleigh hops, N = 5; pinned from a 50-digit evaluation.
        let l = lp(1.0, 5);
        for (snr, expected) in [(0.0, 3.8946), (10.0, 7.0999), (20.0, 10.409)] {
            let g = db_to_linear(snr);
            let quad = capacity_quadrature(g, l).unwrap();
            let closed = capacity_closed_form(g, l).unwrap();
            assert!(rel(quad, expected) < 1e-4, "{snr}: {quad}");
            assert!(rel(closed, quad) < 1e-8, "{snr}: {closed} vs {quad}");
        }
    }

    #[test]
    fn high_snr_leading_terms() {
        let l = lp(1.0, 5);
        let g = db_to_linear(40.0);
        let lead = 2.0 / LN_2 * ((l.b * g.sqrt()).ln() + digamma(l.a + 1.0).unwrap());
        let quad = capacity_quadrature(g, l).unwrap();
        assert!(rel(lead, quad) < 0.01);
    }

    #[test]
    fn vanishes_at_low_snr() {
        let c = capacity_quadrature(1e-12, lp(1.0, 5)).unwrap();
        assert!(c > 0.0 && c < 1e-9, "{c:e}");
    }

    #[test]
    fn pole_guard() {
        for a in [3.0, 4.0005, 6.9995] {
            let err = capacity_closed_form(10.0, LaguerreParams::new(a, 0.5).unwrap()).unwrap_err();
            assert!(matches!(err, Error::PoleProximity { .. }), "{a}: {err:?}");
        }
        assert!(capacity_closed_form(10.0, LaguerreParams::new(4.002, 0.5).unwrap()).is_ok());
    }

    #[test]
    fn low_snr_refuses_instead_of_guessing() {
        let err = capacity_closed_form(1e-6, lp(4.0, 8)).unwrap_err();
        assert!(matches!(
            err,
            Error::IllConditioned { .. } | Error::Convergence { .. } | Error::Overflow { .. }
        ));
    }
}
