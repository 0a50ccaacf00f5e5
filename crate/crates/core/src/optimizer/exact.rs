use super::{OptProblem, OptResult};
use crate::error::Result;

/// Least `N` with `P_out(N) ≤ P_th`, by galloping then bisection.
///
/// Relies on `P_out` decreasing in `N`. If even `n_max` misses the target the
/// result carries `n_max` with `feasible = false`.
pub fn optimal_n_exact(prob: &OptProblem) -> Result<OptResult> {
    let th = prob.pout_threshold;
    let result = |n: u32, p: f64| OptResult {
        n_opt: n,
        a_plus_one: prob
            .fading
            .shape_per_element()
            .map(|c| c * n as f64)
            .unwrap_or(f64::NAN),
        achieved_pout: p,
        method: "exact",
        feasible: p <= th,
        diagnostics: Vec::new(),
    };

    let p1 = prob.outage(1)?;
    if p1 <= th {
        return Ok(result(1, p1));
    }
    // Invariant: P(lo) > th.
    let mut lo = 1u32;
    let mut hi = 1u32;
    let mut p_hi = p1;
    while p_hi > th {
        if hi == prob.n_max {
            return Ok(result(hi, p_hi));
        }
        lo = hi;
        hi = hi.saturating_mul(2).min(prob.n_max);
        p_hi = prob.outage(hi)?;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        let p = prob.outage(mid)?;
        if p <= th {
            hi = mid;
            p_hi = p;
        } else {
            lo = mid;
        }
    }
    Ok(result(hi, p_hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::Fading;
    use crate::db_to_linear;

    fn scan(prob: &OptProblem) -> Option<u32> {
        (1..=prob.n_max).find(|&n| prob.outage(n).unwrap() <= prob.pout_threshold)
    }

    #[test]
    fn matches_linear_scan() {
        let f = Fading::new(2.0, 1.0, 0.4123, 0.8973).unwrap();
        for go_db in [-10.0, 0.0, 10.0, 20.0] {
            for th in [1e-2, 1e-8, 1e-20] {
                let prob =
                    OptProblem::new(f, db_to_linear(15.0), db_to_linear(go_db), th, 200).unwrap();
                let r = optimal_n_exact(&prob).unwrap();
                assert_eq!(Some(r.n_opt), scan(&prob), "{go_db} dB, {th:e}");
                assert!(r.feasible);
                assert!(r.achieved_pout <= th);
            }
        }
    }

    #[test]
    fn infeasible_is_flagged() {
        let f = Fading::symmetric(1.0, 1.0).unwrap();
        let prob = OptProblem::new(f, 1.0, 100.0, 1e-30, 8).unwrap();
        let r = optimal_n_exact(&prob).unwrap();
        assert!(!r.feasible);
        assert_eq!(r.n_opt, 8);
        assert!(r.achieved_pout > 1e-30);
    }

    #[test]
    fn grows_with_threshold_snr() {
        let f = Fading::new(2.0, 1.0, 0.4123, 0.8973).unwrap();
        let mut prev = 0;
        for go_db in (-10..=30).step_by(5) {
            let prob = OptProblem::new(
                f,
                db_to_linear(15.0),
                db_to_linear(go_db as f64),
                1e-20,
                512,
            )
            .unwrap();
            let n = optimal_n_exact(&prob).unwrap().n_opt;
            assert!(n >= prev, "{go_db}");
            prev = n;
        }
    }
}
