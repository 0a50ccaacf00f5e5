//! Smallest element count `N` whose outage meets a target.
//!
//! Three [`ElementSizer`]s are registered by default:
//!
//! * `exact` searches `N` directly on the outage CDF.
//! * `log_approx` solves the logarithm of the incomplete-gamma upper bound
//!   `P(s, x) ≤ (e x / s)^s` set equal to the target, for `s = a + 1`.
//! * `quadratic` replaces `s ln s` in that equation by a fixed quadratic fit
//!   and takes the closed-form root.
//!
//! The continuous `a + 1` of the approximate methods maps back to `N` through
//! [`n_from_a`].

mod bound;
mod exact;

pub use bound::{log_equation_residual, optimal_n_log, optimal_n_quadratic, QUAD_FIT};
pub use exact::optimal_n_exact;

use crate::channel::{ChannelParams, Fading};
use crate::error::{Error, Result};
use crate::metrics::outage_probability;

pub const DEFAULT_N_MAX: u32 = 512;

/// Design problem: find the least `N ≤ n_max` with `P_out ≤ pout_threshold`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptProblem {
    pub fading: Fading,
    pub gamma_bar: f64,
    pub gamma_out: f64,
    pub pout_threshold: f64,
    pub n_max: u32,
}

impl OptProblem {
    pub fn new(
        fading: Fading,
        gamma_bar: f64,
        gamma_out: f64,
        pout_threshold: f64,
        n_max: u32,
    ) -> Result<Self> {
        const OP: &str = "OptProblem::new";
        for (name, v) in [("gamma_bar", gamma_bar), ("gamma_out", gamma_out)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameter {
                    op: OP,
                    name,
                    value: v,
                    reason: "must be finite and positive",
                });
            }
        }
        if !(pout_threshold > 0.0 && pout_threshold < 1.0) {
            return Err(Error::InvalidParameter {
                op: OP,
                name: "pout_threshold",
                value: pout_threshold,
                reason: "must lie strictly between 0 and 1",
            });
        }
        if n_max < 1 {
            return Err(Error::InvalidParameter {
                op: OP,
                name: "n_max",
                value: 0.0,
                reason: "must be at least 1",
            });
        }
        Ok(Self {
            fading,
            gamma_bar,
            gamma_out,
            pout_threshold,
            n_max,
        })
    }

    /// Outage with `n` elements.
    pub fn outage(&self, n: u32) -> Result<f64> {
        let lp = ChannelParams::from_fading(self.fading, n)?.laguerre()?;
        outage_probability(self.gamma_out, self.gamma_bar, lp)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptResult {
    pub n_opt: u32,
    /// The continuous `a + 1` the method solved for (for `exact`, the value at `n_opt`).
    pub a_plus_one: f64,
    pub achieved_pout: f64,
    pub method: &'static str,
    /// Whether `achieved_pout ≤ pout_threshold`.
    pub feasible: bool,
    /// Method-specific values: the two quadratic roots, or the log-equation residual.
    pub diagnostics: Vec<(&'static str, f64)>,
}

/// Element count for a continuous `a + 1`: `⌈(a+1)/(c−1)⌉` clamped to `[1, n_max]`.
///
/// A relative slack of 1e-9 keeps a forward-computed `a + 1` from rounding up
/// to the next integer.
pub fn n_from_a(a_plus_one: f64, fading: &Fading, n_max: u32) -> Result<u32> {
    const OP: &str = "n_from_a";
    if !(a_plus_one.is_finite() && a_plus_one > 0.0) {
        return Err(Error::InvalidParameter {
            op: OP,
            name: "a_plus_one",
            value: a_plus_one,
            reason: "must be finite and positive",
        });
    }
    let per = fading.shape_per_element()?;
    if !(per.is_finite() && per > 0.0) {
        return Err(Error::Domain {
            op: OP,
            detail: format!("per-element shape {per} is not positive"),
        });
    }
    let ratio = a_plus_one / per;
    let n = (ratio - 1e-9 * ratio.max(1.0)).ceil();
    Ok(n.clamp(1.0, n_max.max(1) as f64) as u32)
}

/// `|N − N_exact| / N_exact · 100`.
pub fn percentage_error(n: u32, n_exact: u32) -> f64 {
    (n as f64 - n_exact as f64).abs() / n_exact as f64 * 100.0
}

pub trait ElementSizer: Send + Sync {
    fn name(&self) -> &'static str;
    fn solve(&self, prob: &OptProblem) -> Result<OptResult>;
}

struct Exact;
impl ElementSizer for Exact {
    fn name(&self) -> &'static str {
        "exact"
    }
    fn solve(&self, prob: &OptProblem) -> Result<OptResult> {
        optimal_n_exact(prob)
    }
}

struct LogApprox;
impl ElementSizer for LogApprox {
    fn name(&self) -> &'static str {
        "log_approx"
    }
    fn solve(&self, prob: &OptProblem) -> Result<OptResult> {
        optimal_n_log(prob)
    }
}

struct Quadratic;
impl ElementSizer for Quadratic {
    fn name(&self) -> &'static str {
        "quadratic"
    }
    fn solve(&self, prob: &OptProblem) -> Result<OptResult> {
        optimal_n_quadratic(prob)
    }
}

/// Sizers selectable by name.
pub struct SizerRegistry {
    sizers: Vec<Box<dyn ElementSizer>>,
}

impl SizerRegistry {
    pub fn empty() -> Self {
        Self { sizers: Vec::new() }
    }

    /// Adds `s`, replacing any sizer of the same name.
    pub fn register(&mut self, s: Box<dyn ElementSizer>) {
        self.sizers.retain(|old| old.name() != s.name());
        self.sizers.push(s);
    }

    pub fn get(&self, name: &str) -> Option<&dyn ElementSizer> {
        self.sizers
            .iter()
            .find(|s| s.name() == name)
            .map(|s| s.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.sizers.iter().map(|s| s.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn ElementSizer> {
        self.sizers.iter().map(|s| s.as_ref())
    }
}

impl Default for SizerRegistry {
    fn default() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(Exact));
        r.register(Box::new(LogApprox));
        r.register(Box::new(Quadratic));
        r
    }
}

/// Attach the achieved outage for `n` to an approximate solution.
fn finish(
    prob: &OptProblem,
    n: u32,
    a_plus_one: f64,
    method: &'static str,
    diagnostics: Vec<(&'static str, f64)>,
) -> Result<OptResult> {
    let achieved_pout = prob.outage(n)?;
    Ok(OptResult {
        n_opt: n,
        a_plus_one,
        achieved_pout,
        method,
        feasible: achieved_pout <= prob.pout_threshold,
        diagnostics,
    })
}
