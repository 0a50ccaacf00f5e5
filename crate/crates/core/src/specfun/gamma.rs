use crate::error::{Error, Result};

/// Natural logarithm of the gamma function for `x > 0`.
///
/// Backed by the musl `lgamma` port in `libm`, which keeps full relative
/// accuracy near the zeros at `x = 1` and `x = 2`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain {
            op: "ln_gamma",
            detail: format!("x = {x} must be finite and positive"),
        });
    }
    Ok(libm::lgamma(x))
}

/// Digamma function ψ(x) for `x > 0`.
pub fn digamma(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain {
            op: "digamma",
            detail: format!("x = {x} must be finite and positive"),
        });
    }
    // ψ(x) = ψ(x + k) − Σ 1/(x + j); the asymptotic tail is accurate past 10.
    let mut shift = 0.0;
    let mut z = x;
    while z < 10.0 {
        shift -= 1.0 / z;
        z += 1.0;
    }
    // B_{2k} / (2k) for k = 1..7
    const TAIL: [f64; 7] = [
        1.0 / 12.0,
        -1.0 / 120.0,
        1.0 / 252.0,
        -1.0 / 240.0,
        1.0 / 132.0,
        -691.0 / 32760.0,
        1.0 / 12.0,
    ];
    let inv2 = 1.0 / (z * z);
    let mut series = 0.0;
    for c in TAIL.iter().rev() {
        series = series * inv2 + c;
    }
    series *= inv2;
    Ok(shift + z.ln() - 0.5 / z - series)
}

/// `ln(Γ(x + ½) / Γ(x))` for `x > 0`, evaluated without forming either gamma.
pub(crate) fn ln_gamma_half_ratio(x: f64) -> Result<f64> {
    Ok(ln_gamma(x + 0.5)? - ln_gamma(x)?)
}
