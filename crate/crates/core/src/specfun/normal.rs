use std::f64::consts::FRAC_1_SQRT_2;

/// Gaussian tail probability `Q(x) = ½ erfc(x / √2)`.
///
/// Underflows to zero (or a subnormal) for large positive `x`; never errors.
pub fn q_function(x: f64) -> f64 {
    0.5 * libm::erfc(x * FRAC_1_SQRT_2)
}

/// Standard normal CDF `Φ(x) = Q(−x)`.
pub fn normal_cdf(x: f64) -> f64 {
    q_function(-x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert_eq!(q_function(0.0), 0.5);
        assert!((q_function(1.0) - 0.158_655_253_931_457_05).abs() < 1e-15);
        assert!((normal_cdf(1.0) - 0.841_344_746_068_542_9).abs() < 1e-15);
    }

    #[test]
    fn deep_tail_underflows_quietly() {
        let v = q_function(40.0);
        assert!(v >= 0.0 && v < 1e-300);
        assert_eq!(q_function(f64::INFINITY), 0.0);
        assert_eq!(q_function(f64::NEG_INFINITY), 1.0);
    }

    #[test]
    fn strictly_decreasing_on_grid() {
        let mut prev = q_function(-8.0);
        let mut x = -8.0;
        while x < 8.0 {
            x += 0.05;
            let v = q_function(x);
            assert!(v < prev, "x = {x}");
            prev = v;
        }
    }
}
