use ris_nakagami::channel::Fading;
use ris_nakagami::experiments::{preset, run};
use ris_nakagami::optimizer::{
    log_equation_residual, n_from_a, optimal_n_exact, optimal_n_log, optimal_n_quadratic,
    ElementSizer, SizerRegistry,
};
use ris_nakagami::{OptProblem, OptResult, Result};

fn link() -> Fading {
    Fading::new(2.0, 1.0, 0.4123, 0.8973).unwrap()
}

#[test]
fn inverse_map_recovers_element_count() {
    let f = Fading::symmetric(1.0, 1.0).unwrap();
    let a_plus_one = f.with_elements(5).unwrap().laguerre().unwrap().shape();
    assert!((a_plus_one - 8.0497).abs() < 1e-4);
    assert_eq!(n_from_a(a_plus_one, &f, 512).unwrap(), 5);
}

#[test]
fn exact_result_is_certified_by_scan() {
    for (snr_db, gout_db, th) in [(15.0, 0.0, 1e-6), (5.0, 10.0, 1e-3), (25.0, -5.0, 1e-25)] {
        let prob = OptProblem::new(
            link(),
            10f64.powf(snr_db / 10.0),
            10f64.powf(gout_db / 10.0),
            th,
            512,
        )
        .unwrap();
        let res = optimal_n_exact(&prob).unwrap();
        let scan = (1..=512).find(|&n| prob.outage(n).unwrap() <= th).unwrap();
        assert_eq!(res.n_opt, scan);
        assert!(res.feasible && res.achieved_pout <= th);
    }
}

#[test]
fn unreachable_target_is_flagged() {
    let prob = OptProblem::new(link(), 1.0, 10.0, 1e-30, 4).unwrap();
    for r in [
        optimal_n_exact(&prob),
        optimal_n_log(&prob),
        optimal_n_quadratic(&prob),
    ] {
        let r = r.unwrap();
        assert!(!r.feasible && r.n_opt <= 4, "{r:?}");
    }
}

#[test]
fn log_root_solves_its_equation() {
    let prob = OptProblem::new(link(), 10f64.powf(1.5), 1.0, 1e-20, 512).unwrap();
    let r = optimal_n_log(&prob).unwrap();
    let residual = log_equation_residual(&prob, r.a_plus_one).unwrap();
    assert!(residual.abs() < 1e-9 * r.a_plus_one, "{residual}");
}

#[test]
fn threshold_sweep_is_monotone_for_every_method() {
    let table = run(&preset("fig7").unwrap()).unwrap();
    for col in ["n_exact", "n_log", "n_quadratic"] {
        let v: Vec<f64> = table.floats(col).into_iter().map(Option::unwrap).collect();
        assert!(v.windows(2).all(|w| w[1] <= w[0]), "{col}: {v:?}");
    }
}

#[test]
fn quadratic_error_shrinks_across_threshold_sweep() {
    let table = run(&preset("fig6").unwrap()).unwrap();
    let err: Vec<f64> = table
        .floats("err_quadratic_pct")
        .into_iter()
        .map(Option::unwrap)
        .collect();
    assert!(err.windows(2).all(|w| w[1] <= w[0]), "{err:?}");
    assert!((err[0] - 85.71).abs() < 0.01);
}

struct Fixed;
impl ElementSizer for Fixed {
    fn name(&self) -> &'static str {
        "exact"
    }
    fn solve(&self, _: &OptProblem) -> Result<OptResult> {
        Ok(OptResult {
            n_opt: 3,
            a_plus_one: 0.0,
            achieved_pout: 0.0,
            method: "exact",
            feasible: true,
            diagnostics: Vec::new(),
        })
    }
}

#[test]
fn registry_replaces_by_name() {
    let mut reg = SizerRegistry::default();
    reg.register(Box::new(Fixed));
    assert_eq!(reg.names().len(), 3);
    let prob = OptProblem::new(link(), 30.0, 1.0, 1e-10, 512).unwrap();
    assert_eq!(reg.get("exact").unwrap().solve(&prob).unwrap().n_opt, 3);
}
