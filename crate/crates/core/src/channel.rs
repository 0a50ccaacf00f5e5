//! Scenario parameters and the Laguerre-fitted statistics of the end-to-end SNR.
//!
//! With `Zᵢ = αᵢβᵢ` the per-element product of two Nakagami envelopes, the
//! coherent sum `Z = Σ Zᵢ` is approximated by a gamma-type density
//! `f_Z(z) = z^a e^{-z/b} / (b^{a+1} Γ(a+1))` matched on mean and variance.

use crate::error::{Error, Result};
use crate::specfun::{ln_gamma, ln_gamma_half_ratio, reg_lower_inc_gamma};

/// Nakagami shape and spread of both hops.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fading {
    pub m1: f64,
    pub m2: f64,
    pub omega1: f64,
    pub omega2: f64,
}

/// A complete physical scenario: both hops plus the element count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    pub fading: Fading,
    pub n: u32,
}

/// The `(a, b)` pair that parameterizes every closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaguerreParams {
    pub a: f64,
    pub b: f64,
}

/// An operating point: average SNR `γ̄` and instantaneous SNR `γ`, both linear.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnrPoint {
    pub gamma_bar: f64,
    pub gamma: f64,
}

/// Mean and variance of one product `Zᵢ = αᵢβᵢ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductMoments {
    pub mean: f64,
    pub variance: f64,
}

impl Fading {
    pub fn new(m1: f64, m2: f64, omega1: f64, omega2: f64) -> Result<Self> {
        const OP: &str = "Fading::new";
        for (name, m) in [("m1", m1), ("m2", m2)] {
            if !(m.is_finite() && m >= 0.5) {
                return Err(Error::InvalidParameter {
                    op: OP,
                    name,
                    value: m,
                    reason: "Nakagami shape must be at least 0.5",
                });
            }
        }
        for (name, w) in [("omega1", omega1), ("omega2", omega2)] {
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::InvalidParameter {
                    op: OP,
                    name,
                    value: w,
                    reason: "spread must be positive",
                });
            }
        }
        Ok(Self {
            m1,
            m2,
            omega1,
            omega2,
        })
    }

    /// Both hops with shape `m` and spread `omega`.
    pub fn symmetric(m: f64, omega: f64) -> Result<Self> {
        Self::new(m, m, omega, omega)
    }

    /// `ln(E(Zᵢ)² / (Ω₁Ω₂))`, i.e. the log of
    /// `Γ(m₁+½)²Γ(m₂+½)² / (m₁m₂Γ(m₁)²Γ(m₂)²)`.
    fn ln_mean_power_ratio(&self) -> Result<f64> {
        let r1 = ln_gamma_half_ratio(self.m1)?;
        let r2 = ln_gamma_half_ratio(self.m2)?;
        Ok(2.0 * (r1 + r2) - self.m1.ln() - self.m2.ln())
    }

    /// Mean and variance of the per-element product, evaluated in log-space.
    pub fn product_moments(&self) -> Result<ProductMoments> {
        let ln_rho = self.ln_mean_power_ratio()?;
        let power = self.omega1 * self.omega2;
        let mean = (0.5 * (ln_rho + power.ln())).exp();
        // Var = Ω₁Ω₂ − E² = Ω₁Ω₂ (1 − ρ)
        let variance = -power * ln_rho.exp_m1();
        if !(mean.is_finite() && variance.is_finite()) {
            return Err(Error::Overflow {
                op: "product_moments",
            });
        }
        if variance <= 0.0 {
            return Err(Error::Domain {
                op: "product_moments",
                detail: format!(
                    "variance underflowed to {variance:e} for m1 = {}, m2 = {}",
                    self.m1, self.m2
                ),
            });
        }
        Ok(ProductMoments { mean, variance })
    }

    /// `(a + 1) / N = E(Zᵢ)² / Var(Zᵢ)`, the per-element contribution to `a + 1`.
    pub fn shape_per_element(&self) -> Result<f64> {
        let ln_rho = self.ln_mean_power_ratio()?;
        // ρ / (1 − ρ)
        Ok(-ln_rho.exp() / ln_rho.exp_m1())
    }

    /// The `N`-independent scale parameter `b = Var(Zᵢ) / E(Zᵢ)`.
    pub fn scale(&self) -> Result<f64> {
        let m = self.product_moments()?;
        Ok(m.variance / m.mean)
    }

    pub fn with_elements(self, n: u32) -> Result<ChannelParams> {
        ChannelParams::from_fading(self, n)
    }
}

impl ChannelParams {
    pub fn new(m1: f64, m2: f64, omega1: f64, omega2: f64, n: u32) -> Result<Self> {
        Self::from_fading(Fading::new(m1, m2, omega1, omega2)?, n)
    }

    pub fn symmetric(m: f64, omega: f64, n: u32) -> Result<Self> {
        Self::from_fading(Fading::symmetric(m, omega)?, n)
    }

    pub fn from_fading(fading: Fading, n: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParameter {
                op: "ChannelParams::new",
                name: "n",
                value: n as f64,
                reason: "at least one reflecting element is required",
            });
        }
        Ok(Self { fading, n })
    }

    /// Moment-matched Laguerre parameters: `a = N·E²/Var − 1`, `b = Var/E`.
    pub fn laguerre(&self) -> Result<LaguerreParams> {
        laguerre_params(self)
    }
}

impl LaguerreParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        const OP: &str = "LaguerreParams::new";
        if !(a.is_finite() && a > -1.0) {
            return Err(Error::InvalidParameter {
                op: OP,
                name: "a",
                value: a,
                reason: "must exceed -1",
            });
        }
        if !(b.is_finite() && b > 0.0) {
            return Err(Error::InvalidParameter {
                op: OP,
                name: "b",
                value: b,
                reason: "must be positive",
            });
        }
        Ok(Self { a, b })
    }

    /// Shape of the fitted gamma law of `Z`.
    pub fn shape(&self) -> f64 {
        self.a + 1.0
    }
}

impl SnrPoint {
    pub fn new(gamma_bar: f64, gamma: f64) -> Result<Self> {
        const OP: &str = "SnrPoint::new";
        if !(gamma_bar.is_finite() && gamma_bar > 0.0) {
            return Err(Error::InvalidParameter {
                op: OP,
                name: "gamma_bar",
                value: gamma_bar,
                reason: "average SNR must be positive",
            });
        }
        if gamma.is_nan() || gamma < 0.0 {
            return Err(Error::InvalidParameter {
                op: OP,
                name: "gamma",
                value: gamma,
                reason: "instantaneous SNR must be nonnegative",
            });
        }
        Ok(Self { gamma_bar, gamma })
    }

    pub fn from_db(gamma_bar_db: f64, gamma_db: f64) -> Result<Self> {
        Self::new(
            crate::db_to_linear(gamma_bar_db),
            crate::db_to_linear(gamma_db),
        )
    }

    /// `√(γ/γ̄)`, the value of `Z` that produces this SNR.
    pub fn envelope(&self) -> f64 {
        (self.gamma / self.gamma_bar).sqrt()
    }
}

pub fn product_moments(params: &ChannelParams) -> Result<ProductMoments> {
    params.fading.product_moments()
}

pub fn laguerre_params(params: &ChannelParams) -> Result<LaguerreParams> {
    let m = params.fading.product_moments()?;
    let n = params.n as f64;
    let shape = n * params.fading.shape_per_element()?;
    LaguerreParams::new(shape - 1.0, m.variance / m.mean)
}

/// The same `(a, b)` assembled from the explicit gamma-function expressions
/// `a = m₁m₂NΓ(m₁)²Γ(m₂)² / (m₁m₂Γ(m₁)²Γ(m₂)² − Γ(m₁+½)²Γ(m₂+½)²) − N − 1` and
/// `b = (m₁m₂Γ(m₁)²Γ(m₂)² − Γ(m₁+½)²Γ(m₂+½)²) /
///      (√(m₁/Ω₁)Γ(m₁)Γ(m₁+½)√(m₂/Ω₂)Γ(m₂)Γ(m₂+½))`.
///
/// Every product is carried as a logarithm; `K = m₁m₂Γ(m₁)²Γ(m₂)²` and
/// `G = Γ(m₁+½)²Γ(m₂+½)²` are never formed directly.
pub fn laguerre_params_explicit(params: &ChannelParams) -> Result<LaguerreParams> {
    let f = &params.fading;
    let n = params.n as f64;
    let ln_g1 = ln_gamma(f.m1)?;
    let ln_g2 = ln_gamma(f.m2)?;
    let ln_h1 = ln_gamma(f.m1 + 0.5)?;
    let ln_h2 = ln_gamma(f.m2 + 0.5)?;
    let ln_k = f.m1.ln() + f.m2.ln() + 2.0 * (ln_g1 + ln_g2);
    let ln_g = 2.0 * (ln_h1 + ln_h2);
    // K − G = K (1 − G/K)
    let one_minus = -(ln_g - ln_k).exp_m1();
    let a = n / one_minus - n - 1.0;
    let ln_b_den = 0.5 * (f.m1.ln() - f.omega1.ln() + f.m2.ln() - f.omega2.ln())
        + ln_g1
        + ln_h1
        + ln_g2
        + ln_h2;
    let b = (ln_k - ln_b_den).exp() * one_minus;
    LaguerreParams::new(a, b)
}

/// Density of the end-to-end SNR at `pt.gamma`.
pub fn snr_pdf(pt: SnrPoint, lp: LaguerreParams) -> Result<f64> {
    let LaguerreParams { a, b } = lp;
    if pt.gamma == 0.0 {
        return if a > 1.0 {
            Ok(0.0)
        } else if a == 1.0 {
            Ok(1.0 / (2.0 * b * b * pt.gamma_bar))
        } else {
            Err(Error::Domain {
                op: "snr_pdf",
                detail: format!("density is singular at gamma = 0 for a = {a} < 1"),
            })
        };
    }
    let ratio = pt.gamma / pt.gamma_bar;
    let ln_f = 0.5 * a * ratio.ln()
        - ratio.sqrt() / b
        - std::f64::consts::LN_2
        - (a + 1.0) * b.ln()
        - ln_gamma(a + 1.0)?
        - 0.5 * (pt.gamma_bar.ln() + pt.gamma.ln());
    Ok(ln_f.exp())
}

/// CDF of the end-to-end SNR, `P(a + 1, √(γ/γ̄) / b)`.
pub fn snr_cdf(pt: SnrPoint, lp: LaguerreParams) -> Result<f64> {
    reg_lower_inc_gamma(lp.a + 1.0, pt.envelope() / lp.b)
}
