//! Generalized hypergeometric series `pFq(a; b; x)`.

use crate::error::{Error, Result};

/// Truncation control for hypergeometric series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub max_terms: usize,
    pub rel_tol: f64,
    pub abs_tol: f64,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            max_terms: 10_000,
            rel_tol: 1e-12,
            abs_tol: 1e-300,
        }
    }
}

impl SeriesControl {
    pub fn new(max_terms: usize, rel_tol: f64, abs_tol: f64) -> Result<Self> {
        const OP: &str = "SeriesControl::new";
        if max_terms < 1 {
            return Err(Error::InvalidParameter {
                op: OP,
                name: "max_terms",
                value: max_terms as f64,
                reason: "must be at least 1",
            });
        }
        if !(rel_tol > 0.0) {
            return Err(Error::InvalidParameter {
                op: OP,
                name: "rel_tol",
                value: rel_tol,
                reason: "must be positive",
            });
        }
        if !(abs_tol > 0.0) {
            return Err(Error::InvalidParameter {
                op: OP,
                name: "abs_tol",
                value: abs_tol,
                reason: "must be positive",
            });
        }
        Ok(Self {
            max_terms,
            rel_tol,
            abs_tol,
        })
    }
}

/// A summed series together with the largest term seen, so callers can
/// judge how much cancellation went into the result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    pub value: f64,
    pub terms: usize,
    pub max_abs_term: f64,
}

impl SeriesSum {
    /// Decimal digits lost to cancellation, `log10(max|term| / |sum|)`.
    pub fn digits_lost(&self) -> f64 {
        if self.value == 0.0 {
            return f64::INFINITY;
        }
        (self.max_abs_term / self.value.abs()).log10().max(0.0)
    }
}

pub(crate) fn is_nonpositive_integer(v: f64) -> bool {
    v <= 0.0 && v == v.round()
}

/// Index past which no parameter `c + k` changes sign, so term ratios
/// settle into their asymptotic decay.
pub(crate) fn settle_index(upper: &[f64], lower: &[f64]) -> usize {
    upper
        .iter()
        .chain(lower)
        .filter(|v| **v < 0.0)
        .map(|v| (-v).ceil() as usize + 1)
        .max()
        .unwrap_or(0)
}

pub(crate) fn validate(op: &'static str, upper: &[f64], lower: &[f64], x: f64) -> Result<()> {
    if !x.is_finite() {
        return Err(Error::Domain {
            op,
            detail: format!("argument x = {x} must be finite"),
        });
    }
    if let Some(&bad) = upper.iter().chain(lower).find(|v| !v.is_finite()) {
        return Err(Error::Domain {
            op,
            detail: format!("parameter {bad} must be finite"),
        });
    }
    if let Some(&pole) = lower.iter().find(|v| is_nonpositive_integer(**v)) {
        return Err(Error::Pole { op, value: pole });
    }
    Ok(())
}

/// Evaluate `pFq(upper; lower; x)` by term-ratio recursion.
pub fn gen_hypergeom_pfq(upper: &[f64], lower: &[f64], x: f64, ctl: SeriesControl) -> Result<f64> {
    pfq_series(upper, lower, x, ctl).map(|s| s.value)
}

/// As [`gen_hypergeom_pfq`], also reporting the term count and largest term.
pub fn pfq_series(upper: &[f64], lower: &[f64], x: f64, ctl: SeriesControl) -> Result<SeriesSum> {
    const OP: &str = "gen_hypergeom_pfq";
    validate(OP, upper, lower, x)?;
    if x == 0.0 {
        return Ok(SeriesSum {
            value: 1.0,
            terms: 1,
            max_abs_term: 1.0,
        });
    }
    let (p, q) = (upper.len(), lower.len());
    let terminates = upper.iter().any(|v| is_nonpositive_integer(*v));
    if p > q + 1 && !terminates {
        return Err(Error::Domain {
            op: OP,
            detail: format!("{p}F{q} series diverges for x != 0"),
        });
    }
    if p == q + 1 && !terminates {
        // 2F1 with x < -1/2: Pfaff, 2F1(a,b;c;x) = (1-x)^-a 2F1(a, c-b; c; x/(x-1)).
        if p == 2 && x < -0.5 {
            let (a, b, c) = (upper[0], upper[1], lower[0]);
            let y = x / (x - 1.0);
            let inner = pfq_series(&[a, c - b], &[c], y, ctl)?;
            let scale = (1.0 - x).powf(-a);
            return Ok(SeriesSum {
                value: scale * inner.value,
                terms: inner.terms,
                max_abs_term: scale * inner.max_abs_term,
            });
        }
        if x.abs() >= 1.0 {
            return Err(Error::Domain {
                op: OP,
                detail: format!("{p}F{q} series requires |x| < 1, got {x}"),
            });
        }
    }
    sum_terms(OP, upper, lower, x, ctl)
}

fn sum_terms(
    op: &'static str,
    upper: &[f64],
    lower: &[f64],
    x: f64,
    ctl: SeriesControl,
) -> Result<SeriesSum> {
    let settle = settle_index(upper, lower);
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut max_abs = 1.0f64;
    for k in 0..ctl.max_terms {
        let kf = k as f64;
        let mut ratio = x / (kf + 1.0);
        for a in upper {
            ratio *= a + kf;
        }
        for b in lower {
            ratio /= b + kf;
        }
        let next = term * ratio;
        if next == 0.0 {
            return Ok(SeriesSum {
                value: sum,
                terms: k + 1,
                max_abs_term: max_abs,
            });
        }
        if !next.is_finite() {
            return Err(Error::Overflow { op });
        }
        sum += next;
        max_abs = max_abs.max(next.abs());
        term = next;
        let small = term.abs() <= ctl.rel_tol * sum.abs() + ctl.abs_tol;
        if small && k >= settle && ratio.abs() < 1.0 {
            return Ok(SeriesSum {
                value: sum,
                terms: k + 2,
                max_abs_term: max_abs,
            });
        }
    }
    Err(Error::Convergence {
        op,
        terms: ctl.max_terms,
        last_term: term,
        partial_sum: sum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(upper: &[f64], lower: &[f64], x: f64) -> f64 {
        gen_hypergeom_pfq(upper, lower, x, SeriesControl::default()).unwrap()
    }

    #[test]
    fn zero_argument_is_one() {
        assert_eq!(f(&[4.02, 4.52], &[0.5, 5.02], 0.0), 1.0);
        assert_eq!(f(&[], &[], 0.0), 1.0);
        assert_eq!(f(&[1.0, 1.0, 3.0], &[2.0], 0.0), 1.0);
    }

    #[test]
    fn log_identity_at_unit_argument() {
        let v = f(&[1.0, 1.0], &[2.0], -1.0);
        assert!((v - std::f64::consts::LN_2).abs() < 1e-11, "{v}");
    }

    #[test]
    fn zero_f_zero_is_exponential() {
        for &x in &[-5.0, -3.0, 0.7, 5.0, 15.0] {
            let v = f(&[], &[], x);
            assert!(((v - x.exp()) / x.exp()).abs() < 1e-10, "x = {x}");
        }
    }

    #[test]
    fn terminating_series_is_polynomial() {
        // 2F1(-2, b; c; x) = 1 - 2bx/c + b(b+1)x²/(c(c+1))
        let (b, c, x) = (1.5, 2.5, 0.3);
        let expected = 1.0 - 2.0 * b * x / c + b * (b + 1.0) * x * x / (c * (c + 1.0));
        assert!((f(&[-2.0, b], &[c], x) - expected).abs() < 1e-15);
    }

    #[test]
    fn poles_and_divergence() {
        let ctl = SeriesControl::default();
        assert!(matches!(
            gen_hypergeom_pfq(&[1.0], &[-3.0], 0.5, ctl),
            Err(Error::Pole { .. })
        ));
        assert!(matches!(
            gen_hypergeom_pfq(&[1.0], &[0.0], 0.5, ctl),
            Err(Error::Pole { .. })
        ));
        assert!(gen_hypergeom_pfq(&[1.0, 1.0, 1.0], &[2.0], 0.5, ctl).is_err());
        assert!(gen_hypergeom_pfq(&[1.0, 1.0], &[2.0], 1.5, ctl).is_err());
    }

    #[test]
    fn truncation_failure_is_reported() {
        let ctl = SeriesControl::new(5, 1e-12, 1e-300).unwrap();
        assert!(matches!(
            gen_hypergeom_pfq(&[], &[], 30.0, ctl),
            Err(Error::Convergence { .. })
        ));
    }

    #[test]
    fn control_validation() {
        assert!(SeriesControl::new(0, 1e-12, 1e-300).is_err());
        assert!(SeriesControl::new(10, 0.0, 1e-300).is_err());
        assert!(SeriesControl::new(10, 1e-12, -1.0).is_err());
    }

    #[test]
    fn negative_lower_parameters_do_not_stop_early() {
        // 1F1(1; -4.5; x) passes through shrinking denominators before decaying.
        // Compare against explicit summation with a generous term budget.
        let x = -3.0;
        let b = -4.5;
        let mut term = 1.0f64;
        let mut sum = 1.0f64;
        for k in 0..400 {
            let kf = k as f64;
            term *= (1.0 + kf) / (b + kf) * x / (kf + 1.0);
            sum += term;
        }
        let got = f(&[1.0], &[b], x);
        assert!(((got - sum) / sum).abs() < 1e-12, "{got} vs {sum}");
    }
}
