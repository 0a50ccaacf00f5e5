use crate::channel::{snr_cdf, LaguerreParams, SnrPoint};
use crate::error::{Error, Result};
use crate::specfun::ln_gamma;

/// High-SNR gains of the outage asymptote `P_out ≈ (G_c γ̄)^{-G_d}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticGains {
    pub diversity_order: f64,
    pub coding_gain: f64,
}

fn check_snr(op: &'static str, name: &'static str, v: f64, allow_zero: bool) -> Result<()> {
    let ok = v.is_finite() && (v > 0.0 || (allow_zero && v == 0.0));
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            op,
            name,
            value: v,
            reason: if allow_zero {
                "must be finite and nonnegative"
            } else {
                "must be finite and positive"
            },
        })
    }
}

/// `P_out = Pr[γ ≤ γ_out]`.
pub fn outage_probability(gamma_out: f64, gamma_bar: f64, lp: LaguerreParams) -> Result<f64> {
    const OP: &str = "outage_probability";
    check_snr(OP, "gamma_out", gamma_out, true)?;
    check_snr(OP, "gamma_bar", gamma_bar, false)?;
    snr_cdf(SnrPoint::new(gamma_bar, gamma_out)?, lp)
}

/// `G_d = (a+1)/2` and `G_c = b² Γ(a+2)^{2/(a+1)} / γ_out`.
pub fn asymptotic_gains(gamma_out: f64, lp: LaguerreParams) -> Result<AsymptoticGains> {
    check_snr("asymptotic_gains", "gamma_out", gamma_out, false)?;
    let shape = lp.shape();
    let ln_gc = 2.0 * lp.b.ln() + 2.0 / shape * ln_gamma(shape + 1.0)? - gamma_out.ln();
    Ok(AsymptoticGains {
        diversity_order: 0.5 * shape,
        coding_gain: ln_gc.exp(),
    })
}

/// First-term high-SNR outage `(G_c γ̄)^{-G_d}`, capped at 1.
///
/// The asymptote is not a probability at low SNR; values above 1 are clipped.
pub fn asymptotic_outage(gamma_out: f64, gamma_bar: f64, lp: LaguerreParams) -> Result<f64> {
    check_snr("asymptotic_outage", "gamma_bar", gamma_bar, false)?;
    let g = asymptotic_gains(gamma_out, lp)?;
    let ln_p = -g.diversity_order * (g.coding_gain.ln() + gamma_bar.ln());
    Ok(ln_p.exp().min(1.0))
}
