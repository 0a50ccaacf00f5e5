//! Regularized incomplete gamma functions.
//!
//! Series expansion below `x = s + 1`, Lentz continued fraction above.

use super::gamma::ln_gamma;
use crate::error::{Error, Result};

const MAX_ITER: usize = 100_000;
const EPS: f64 = 1e-16;
const TINY: f64 = 1e-300;

fn check(op: &'static str, s: f64, x: f64) -> Result<()> {
    if !s.is_finite() || s <= 0.0 {
        return Err(Error::Domain {
            op,
            detail: format!("shape s = {s} must be finite and positive"),
        });
    }
    if x.is_nan() || x < 0.0 {
        return Err(Error::Domain {
            op,
            detail: format!("x = {x} must be nonnegative"),
        });
    }
    Ok(())
}

/// ln of the common prefactor `x^s e^{-x} / Γ(s)`.
fn ln_prefactor(s: f64, x: f64) -> Result<f64> {
    Ok(s * x.ln() - x - ln_gamma(s)?)
}

/// Σ xⁿ / (s(s+1)…(s+n)), the lower series without prefactor.
fn lower_series(op: &'static str, s: f64, x: f64) -> Result<f64> {
    let mut denom = s;
    let mut term = 1.0 / s;
    let mut sum = term;
    for _ in 0..MAX_ITER {
        denom += 1.0;
        term *= x / denom;
        sum += term;
        if term.abs() < sum.abs() * EPS {
            return Ok(sum);
        }
    }
    Err(Error::Convergence {
        op,
        terms: MAX_ITER,
        last_term: term,
        partial_sum: sum,
    })
}

/// Continued fraction for Γ(s, x) e^{x} x^{-s}.
fn upper_fraction(op: &'static str, s: f64, x: f64) -> Result<f64> {
    let mut b = x + 1.0 - s;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let an = -(i as f64) * (i as f64 - s);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < EPS {
            return Ok(h);
        }
    }
    Err(Error::Convergence {
        op,
        terms: MAX_ITER,
        last_term: h,
        partial_sum: h,
    })
}

/// Regularized lower incomplete gamma `P(s, x) = γ(s, x) / Γ(s)`.
pub fn reg_lower_inc_gamma(s: f64, x: f64) -> Result<f64> {
    const OP: &str = "reg_lower_inc_gamma";
    check(OP, s, x)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == f64::INFINITY {
        return Ok(1.0);
    }
    let p = if x < s + 1.0 {
        (ln_prefactor(s, x)? + lower_series(OP, s, x)?.ln()).exp()
    } else {
        1.0 - (ln_prefactor(s, x)? + upper_fraction(OP, s, x)?.ln()).exp()
    };
    Ok(p.clamp(0.0, 1.0))
}

/// Regularized upper incomplete gamma `Q(s, x) = 1 − P(s, x)`.
pub fn reg_upper_inc_gamma(s: f64, x: f64) -> Result<f64> {
    const OP: &str = "reg_upper_inc_gamma";
    check(OP, s, x)?;
    if x == 0.0 {
        return Ok(1.0);
    }
    if x == f64::INFINITY {
        return Ok(0.0);
    }
    let q = if x < s + 1.0 {
        1.0 - (ln_prefactor(s, x)? + lower_series(OP, s, x)?.ln()).exp()
    } else {
        (ln_prefactor(s, x)? + upper_fraction(OP, s, x)?.ln()).exp()
    };
    Ok(q.clamp(0.0, 1.0))
}
