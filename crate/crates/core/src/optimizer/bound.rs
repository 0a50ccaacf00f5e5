//! Sizing from the incomplete-gamma upper bound.
//!
//! With `s = a + 1`, `x = √(γ_out/γ̄)/b` and `L = ln x`, setting the bound to
//! the target and taking logs gives
//!
//! ```text
//! f(s) = s (1 + L − ln s) − ln P_th = 0.
//! ```
//!
//! `f'(s) = L − ln s`, so `f` rises on `(0, x)` and falls on `(x, ∞)`. Since
//! `f(0⁺) = −ln P_th > 0` and `f → −∞`, there is exactly one positive root
//! and it lies above `x`.

use super::{finish, n_from_a, OptProblem, OptResult};
use crate::error::{Error, Result};

/// `s ln s ≈ A s² + B s + C` over the design range.
pub const QUAD_FIT: (f64, f64, f64) = (0.001248, 5.825, -131.4);

fn ln_x(prob: &OptProblem) -> Result<f64> {
    let b = prob.fading.scale()?;
    Ok(0.5 * (prob.gamma_out.ln() - prob.gamma_bar.ln()) - b.ln())
}

/// `f(s)` above for the given problem.
pub fn log_equation_residual(prob: &OptProblem, s: f64) -> Result<f64> {
    Ok(s * (1.0 + ln_x(prob)? - s.ln()) - prob.pout_threshold.ln())
}

/// Root of the log-bound equation, mapped to an element count.
pub fn optimal_n_log(prob: &OptProblem) -> Result<OptResult> {
    const OP: &str = "optimal_n_log";
    let l = ln_x(prob)?;
    let ln_th = prob.pout_threshold.ln();
    let f = |s: f64| s * (1.0 + l - s.ln()) - ln_th;

    let mut lo = l.exp();
    if !(lo.is_finite() && lo > 0.0) {
        return Err(Error::NoSolution {
            op: OP,
            detail: format!("stationary point e^{l} is not a usable bracket"),
        });
    }
    let mut hi = 2.0 * lo;
    while f(hi) > 0.0 {
        lo = hi;
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(Error::NoSolution {
                op: OP,
                detail: "bound equation has no finite root".into(),
            });
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let s = if f(lo).abs() <= f(hi).abs() { lo } else { hi };
    let n = n_from_a(s, &prob.fading, prob.n_max)?;
    finish(prob, n, s, "log_approx", vec![("residual", f(s))])
}

/// Positive root of `A s² + (B − 1 − L) s + (C + ln P_th) = 0`, mapped to an
/// element count.
///
/// The constant term is negative for any `P_th < 1` and `A > 0`, so the roots
/// have opposite signs; the `+` branch is the positive one. Both roots are
/// reported in the diagnostics.
pub fn optimal_n_quadratic(prob: &OptProblem) -> Result<OptResult> {
    const OP: &str = "optimal_n_quadratic";
    let (qa, qb, qc) = QUAD_FIT;
    let l = ln_x(prob)?;
    let b = qb - 1.0 - l;
    let c = qc + prob.pout_threshold.ln();
    let disc = b * b - 4.0 * qa * c;
    if disc < 0.0 {
        return Err(Error::NoSolution {
            op: OP,
            detail: format!("negative discriminant {disc:e}"),
        });
    }
    let sq = disc.sqrt();
    let plus = (-b + sq) / (2.0 * qa);
    let minus = (-b - sq) / (2.0 * qa);
    // Smallest positive root; in practice only `plus` qualifies.
    let s = [minus, plus]
        .into_iter()
        .filter(|r| *r > 0.0)
        .reduce(f64::min)
        .ok_or_else(|| Error::NoSolution {
            op: OP,
            detail: format!("no positive root (roots {plus:e}, {minus:e})"),
        })?;
    let n = n_from_a(s, &prob.fading, prob.n_max)?;
    finish(
        prob,
        n,
        s,
        "quadratic",
        vec![("root_plus", plus), ("root_minus", minus)],
    )
}
