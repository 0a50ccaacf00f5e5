use std::f64::consts::PI;

use super::{clamp_probability, ModulationParams};
use crate::channel::LaguerreParams;
use crate::error::{Error, Result};
use crate::quad::{integrate_to_infinity, QuadConfig};
use crate::specfun::ext::{ln_to_f64, Big, Ext, MAX_BITS};
use crate::specfun::{
    ln_gamma, ln_gamma_half_ratio, pfq_series, reg_lower_inc_gamma, SeriesControl,
};

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

/// Log of the outage CDF at `t/β` and its derivative in `t`.
fn ln_cdf_slope(shape: f64, beta: f64, ln_gamma_shape: f64, t: f64) -> f64 {
    let u = t / beta;
    let p = reg_lower_inc_gamma(shape, u).unwrap_or(0.0);
    if p <= 0.0 {
        return (shape) / t;
    }
    let ln_pdf = (shape - 1.0) * u.ln() - u - ln_gamma_shape - beta.ln();
    (ln_pdf - p.ln()).exp()
}

/// Average symbol error probability by adaptive quadrature.
///
/// Integrates `(p√q/√π) ∫ e^{-q t²} F(t²) dt`, i.e. the SEP integral after
/// `γ = t²`, which removes the `1/√γ` endpoint singularity.
pub fn asep_quadrature(
    modulation: ModulationParams,
    gamma_bar: f64,
    lp: LaguerreParams,
) -> Result<f64> {
    const OP: &str = "asep_quadrature";
    check_gamma_bar(OP, gamma_bar)?;
    let ModulationParams { p, q } = modulation;
    let shape = lp.shape();
    let beta = lp.b * gamma_bar.sqrt();
    let lg = ln_gamma(shape)?;

    // The integrand peaks where d/dt ln F = 2qt; F ~ t^{a+1} bounds the peak above.
    let t_hi = (shape / (2.0 * q)).sqrt();
    let excess = |t: f64| ln_cdf_slope(shape, beta, lg, t) - 2.0 * q * t;
    let (mut lo, mut hi) = (t_hi * 1e-6, t_hi);
    let peak = if excess(lo) <= 0.0 {
        lo
    } else {
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if excess(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };

    let width = 1.0 / q.sqrt();
    let mut edges = vec![0.0];
    edges.extend(
        [0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0]
            .iter()
            .map(|k| k * peak),
    );
    edges.extend([1.0, 2.0, 4.0, 6.0].iter().map(|k| k * width));
    edges.sort_by(f64::total_cmp);
    edges.dedup_by(|x, y| (*x - *y).abs() <= 1e-12 * y.abs().max(1e-300));

    let integrand = |t: f64| {
        let f = reg_lower_inc_gamma(shape, t / beta).unwrap_or(f64::NAN);
        if f == 0.0 {
            0.0
        } else {
            (-q * t * t).exp() * f
        }
    };
    let cfg = QuadConfig {
        rel_tol: 1e-11,
        ..QuadConfig::default()
    };
    let r = integrate_to_infinity(integrand, &edges, cfg).map_err(|e| match e {
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
    clamp_probability(OP, p * q.sqrt() / PI.sqrt() * r.value)
}

/// Digits that may be lost in the closed form before its result is rejected.
const DOUBLE_LOSS_LIMIT: f64 = 6.0;
/// Guard digits kept above the measured cancellation in extended precision.
const GUARD_DIGITS: f64 = 25.0;

/// Average symbol error probability from the `₂F₂` closed form.
///
/// The closed form is the difference of two large terms. It is evaluated in
/// double precision first; when too many digits cancel the bracket is
/// recomputed in extended precision sized to the measured loss.
pub fn asep_closed_form(
    modulation: ModulationParams,
    gamma_bar: f64,
    lp: LaguerreParams,
) -> Result<f64> {
    const OP: &str = "asep_closed_form";
    check_gamma_bar(OP, gamma_bar)?;
    let ModulationParams { p, q } = modulation;
    let a = lp.a;
    let c = lp.b * lp.b * gamma_bar * q;
    let ln_prefactor = p.ln() - 0.5 * (a + 2.0) * c.ln() + ln_gamma(0.5 * a + 1.0)?
        - (2.0 * PI.sqrt()).ln()
        - (a + 1.0).ln()
        - (a + 2.0).ln()
        - ln_gamma(a + 1.0)?;

    let ctl = SeriesControl::default();
    let h = 0.5 * a;
    let x = 1.0 / (4.0 * c);
    let f1 = pfq_series(&[h + 0.5, h + 1.0], &[0.5, h + 1.5], x, ctl)?;
    let f2 = pfq_series(&[h + 1.0, h + 1.5], &[1.5, h + 2.0], x, ctl)?;
    let ratio = ln_gamma_half_ratio(h + 1.0)?.exp();
    let t1 = (a + 2.0) * c.sqrt() * f1.value;
    let t2 = (a + 1.0) * ratio * f2.value;
    let d = t1 - t2;
    let loss = if d > 0.0 {
        (t1.max(t2) / d).log10()
    } else {
        f64::INFINITY
    };
    if loss.is_finite() && loss <= DOUBLE_LOSS_LIMIT {
        return clamp_probability(OP, (ln_prefactor + d.ln()).exp());
    }

    // Double precision keeps ~16 digits, so a failed or nonpositive bracket lost at least that many.
    let mut need = if loss.is_finite() { loss } else { 16.0 };
    loop {
        let bits = (64.0 + std::f64::consts::LOG2_10 * (need + GUARD_DIGITS)).ceil() as usize;
        if bits > MAX_BITS {
            return Err(Error::IllConditioned {
                op: OP,
                digits_lost: need,
            });
        }
        let (ln_d, lost) = extended_bracket(Ext::new(bits), a, lp.b, gamma_bar, q, ctl)?;
        let available = bits as f64 * std::f64::consts::LOG10_2 - GUARD_DIGITS;
        if let Some(ln_d) = ln_d {
            if lost <= available {
                return clamp_probability(OP, (ln_prefactor + ln_d).exp());
            }
        }
        need = lost.max(2.0 * need);
    }
}

/// `ln D` (if `D > 0`) and the digits cancelled, at the precision of `ext`.
fn extended_bracket(
    ext: Ext,
    a: f64,
    b: f64,
    gamma_bar: f64,
    q: f64,
    ctl: SeriesControl,
) -> Result<(Option<f64>, f64)> {
    let half = ext.num(0.5);
    let one = ext.int(1);
    let two = ext.int(2);
    let a_big = ext.num(a);
    let h = &a_big * &half;
    let b_big = ext.num(b);
    let c = &(&(&b_big * &b_big) * &ext.num(gamma_bar)) * &ext.num(q);
    let x = &one / &(&ext.int(4) * &c);
    let f1 = ext.pfq(
        &[&h + &half, &h + &one],
        &[half.clone(), &(&h + &one) + &half],
        &x,
        ctl,
    )?;
    let f2 = ext.pfq(
        &[&h + &one, &(&h + &one) + &half],
        &[&one + &half, &h + &two],
        &x,
        ctl,
    )?;
    let ratio = ext.ln_gamma_half_ratio(&(&h + &one)).exp();
    let t1 = &(&(&a_big + &two) * &ext.sqrt(&c)) * &f1;
    let t2 = &(&(&a_big + &one) * &ratio) * &f2;
    let d = &t1 - &t2;
    let ln_big = ln_to_f64(&t1).max(ln_to_f64(&t2));
    if d > Big::ZERO {
        let ln_d = ln_to_f64(&d);
        Ok((Some(ln_d), (ln_big - ln_d) / std::f64::consts::LN_10))
    } else {
        // Every working digit cancelled.
        Ok((None, ext.bits() as f64 * std::f64::consts::LOG10_2))
    }
}
