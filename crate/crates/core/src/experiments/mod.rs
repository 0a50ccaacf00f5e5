//! Parameter sweeps that turn the library into tables.
//!
//! A [`RunConfig`] names a command, one or more scenarios (lists of shapes,
//! spreads and element counts form one curve each), and an optional
//! [`SweepSpec`]. [`run`] evaluates every curve at every sweep point and
//! returns the rows in curve-major, axis order.

mod presets;
mod sweep;

use std::fmt;
use std::str::FromStr;

pub use presets::{preset, PRESETS};
pub use sweep::{Axis, Scale, SweepSpec};

use crate::channel::{ChannelParams, Fading};
use crate::error::{Error, Result};
use crate::metrics::{
    asymptotic_gains, EvaluatorRegistry, Metric, ModulationParams, OperatingPoint,
};
use crate::montecarlo::{clt_baseline_cdf, simulate_z_samples, McConfig, ZSamples};
use crate::optimizer::{percentage_error, OptProblem, SizerRegistry};
use crate::{db_to_linear, linear_to_db};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Command {
    Outage,
    Asep,
    Capacity,
    Diversity,
    OptimizeN,
    Simulate,
}

impl Command {
    pub const ALL: [Command; 6] = [
        Command::Outage,
        Command::Asep,
        Command::Capacity,
        Command::Diversity,
        Command::OptimizeN,
        Command::Simulate,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Command::Outage => "outage",
            Command::Asep => "asep",
            Command::Capacity => "capacity",
            Command::Diversity => "diversity",
            Command::OptimizeN => "optimize-n",
            Command::Simulate => "simulate",
        }
    }

    fn metric(self) -> Option<Metric> {
        match self {
            Command::Outage => Some(Metric::Outage),
            Command::Asep => Some(Metric::Asep),
            Command::Capacity => Some(Metric::Capacity),
            _ => None,
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Command {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Command::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown command `{s}`"))
    }
}

/// Everything one invocation needs. Lists produce one curve per combination.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    /// `(m₁, m₂)` pairs.
    pub m: Vec<(f64, f64)>,
    /// `(Ω₁, Ω₂)` pairs.
    pub omega: Vec<(f64, f64)>,
    pub n: Vec<u32>,
    pub snr_db: f64,
    pub gamma_out_db: f64,
    pub modulation: ModulationParams,
    pub mc: Option<McConfig>,
    pub clt: bool,
    pub pout_th: f64,
    pub n_max: u32,
    pub sweep: Option<SweepSpec>,
    /// Evaluator name for outage/asep/capacity; `None` picks the registry default.
    pub evaluator: Option<String>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            m: vec![(1.0, 1.0)],
            omega: vec![(1.0, 1.0)],
            n: vec![4],
            snr_db: 10.0,
            gamma_out_db: 0.0,
            modulation: ModulationParams::bpsk(),
            mc: None,
            clt: false,
            pout_th: 1e-6,
            n_max: crate::optimizer::DEFAULT_N_MAX,
            sweep: None,
            evaluator: None,
        }
    }

    /// Check everything that does not require numerical work.
    pub fn validate(&self) -> Result<()> {
        let bad = |name, value, reason| Error::InvalidParameter {
            op: "RunConfig::validate",
            name,
            value,
            reason,
        };
        if self.m.is_empty() || self.omega.is_empty() || self.n.is_empty() {
            return Err(bad(
                "scenario",
                0.0,
                "m, omega and n lists must be nonempty",
            ));
        }
        for s in self.scenarios() {
            s?;
        }
        for (name, v) in [("snr_db", self.snr_db), ("gamma_out_db", self.gamma_out_db)] {
            if !v.is_finite() {
                return Err(bad(name, v, "must be finite"));
            }
        }
        ModulationParams::new(self.modulation.p, self.modulation.q)?;
        if !(self.pout_th > 0.0 && self.pout_th < 1.0) {
            return Err(bad(
                "pout_th",
                self.pout_th,
                "must lie strictly between 0 and 1",
            ));
        }
        if self.n_max < 1 {
            return Err(bad("n_max", 0.0, "must be at least 1"));
        }
        match &self.mc {
            Some(mc) => {
                McConfig::with_chunk(mc.trials, mc.seed, mc.chunk_size)?;
            }
            None if self.command == Command::Simulate => {
                return Err(Error::Domain {
                    op: "RunConfig::validate",
                    detail: "`simulate` needs a trial count".into(),
                })
            }
            None => {}
        }
        if let Some(s) = &self.sweep {
            SweepSpec::new(s.axis, s.start, s.stop, s.points, s.scale)?;
            let ok = match self.command {
                Command::Outage | Command::Asep | Command::Capacity | Command::Simulate => {
                    !matches!(s.axis, Axis::PoutThreshold)
                }
                Command::Diversity => {
                    matches!(s.axis, Axis::N | Axis::M | Axis::Omega | Axis::GammaOutDb)
                }
                Command::OptimizeN => !matches!(s.axis, Axis::N),
            };
            if !ok {
                return Err(Error::Domain {
                    op: "RunConfig::validate",
                    detail: format!("axis `{}` does not apply to `{}`", s.axis, self.command),
                });
            }
            for v in s.values() {
                self.at(s.axis, v)
                    .scenarios()
                    .try_for_each(|r| r.map(|_| ()))?;
            }
        }
        if let (Some(metric), Some(name)) = (self.command.metric(), &self.evaluator) {
            let reg = EvaluatorRegistry::default();
            if reg.get(metric, name).is_none() {
                return Err(Error::Domain {
                    op: "RunConfig::validate",
                    detail: format!(
                        "no {metric} evaluator named `{name}` (available: {})",
                        reg.names(metric).join(", ")
                    ),
                });
            }
        }
        Ok(())
    }

    /// One scenario per combination of the `m`, `omega` and `n` lists.
    pub fn scenarios(&self) -> impl Iterator<Item = Result<ChannelParams>> + '_ {
        self.m.iter().flat_map(move |&(m1, m2)| {
            self.omega.iter().flat_map(move |&(o1, o2)| {
                self.n
                    .iter()
                    .map(move |&n| ChannelParams::new(m1, m2, o1, o2, n))
            })
        })
    }

    /// A copy with the swept quantity set to `v`.
    fn at(&self, axis: Axis, v: f64) -> RunConfig {
        let mut c = self.clone();
        match axis {
            Axis::SnrDb => c.snr_db = v,
            Axis::GammaOutDb => c.gamma_out_db = v,
            Axis::PoutThreshold => c.pout_th = v,
            Axis::N => c.n = vec![v.round().max(1.0) as u32],
            Axis::M => c.m = vec![(v, v)],
            Axis::Omega => c.omega = vec![(v, v)],
        }
        c
    }

    /// Curves: the config with the swept dimension removed from the lists.
    fn curves(&self) -> Vec<RunConfig> {
        let Some(s) = &self.sweep else {
            return vec![self.clone()];
        };
        let mut out = Vec::new();
        let split = |c: &RunConfig| -> Vec<RunConfig> {
            match s.axis {
                Axis::N => vec![c.clone()],
                _ => {
                    c.n.iter()
                        .map(|&n| RunConfig {
                            n: vec![n],
                            ..c.clone()
                        })
                        .collect()
                }
            }
        };
        let ms: Vec<Vec<(f64, f64)>> = match s.axis {
            Axis::M => vec![self.m.clone()],
            _ => self.m.iter().map(|&m| vec![m]).collect(),
        };
        let omegas: Vec<Vec<(f64, f64)>> = match s.axis {
            Axis::Omega => vec![self.omega.clone()],
            _ => self.omega.iter().map(|&o| vec![o]).collect(),
        };
        for m in &ms {
            for o in &omegas {
                let c = RunConfig {
                    m: m.clone(),
                    omega: o.clone(),
                    ..self.clone()
                };
                out.extend(split(&c));
            }
        }
        out
    }
}

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Float(f64),
    Int(i64),
    Bool(bool),
    Empty,
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Float(v)
    }
}
impl From<u32> for Value {
    fn from(v: u32) -> Self {
        Value::Int(v as i64)
    }
}
impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}
impl<T: Into<Value>> From<Option<T>> for Value {
    fn from(v: Option<T>) -> Self {
        v.map_or(Value::Empty, Into::into)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| *c == name)
    }

    /// Float values of column `name` (integers widened), `None` for empty cells.
    pub fn floats(&self, name: &str) -> Vec<Option<f64>> {
        let Some(i) = self.column(name) else {
            return Vec::new();
        };
        self.rows
            .iter()
            .map(|r| match r[i] {
                Value::Float(v) => Some(v),
                Value::Int(v) => Some(v as f64),
                _ => None,
            })
            .collect()
    }
}

const PREFIX: [&str; 5] = ["n", "m1", "m2", "omega1", "omega2"];

fn prefix(p: &ChannelParams) -> Vec<Value> {
    let f = p.fading;
    vec![
        p.n.into(),
        f.m1.into(),
        f.m2.into(),
        f.omega1.into(),
        f.omega2.into(),
    ]
}

/// Simulated `Z` draws keyed by scenario, so an SNR sweep simulates once.
struct SampleCache {
    cfg: Option<McConfig>,
    entries: Vec<(ChannelParams, ZSamples)>,
}

impl SampleCache {
    fn get(&mut self, p: &ChannelParams) -> Result<Option<&ZSamples>> {
        let Some(cfg) = self.cfg else { return Ok(None) };
        let idx = match self.entries.iter().position(|(k, _)| k == p) {
            Some(i) => i,
            None => {
                self.entries.push((*p, simulate_z_samples(p, &cfg)?));
                self.entries.len() - 1
            }
        };
        Ok(Some(&self.entries[idx].1))
    }
}

/// Evaluate `cfg` into a table.
pub fn run(cfg: &RunConfig) -> Result<Table> {
    cfg.validate()?;
    let mut cache = SampleCache {
        cfg: cfg.mc,
        entries: Vec::new(),
    };
    let evaluators = EvaluatorRegistry::default();
    let sizers = SizerRegistry::default();
    let mut table = Table::new(columns(cfg.command));
    for curve in cfg.curves() {
        let points: Vec<RunConfig> = match &cfg.sweep {
            Some(s) => s
                .values()
                .into_iter()
                .map(|v| curve.at(s.axis, v))
                .collect(),
            None => vec![curve.clone()],
        };
        for pt in &points {
            if cfg.command == Command::OptimizeN {
                for (m, o) in
                    pt.m.iter()
                        .flat_map(|m| pt.omega.iter().map(move |o| (m, o)))
                {
                    let fading = Fading::new(m.0, m.1, o.0, o.1)?;
                    table.rows.push(optimize_row(pt, fading, &sizers)?);
                }
                continue;
            }
            for params in pt.scenarios() {
                let params = params?;
                let row = match cfg.command {
                    Command::Outage => outage_row(pt, &params, &evaluators, &mut cache)?,
                    Command::Asep => asep_row(pt, &params, &evaluators, &mut cache)?,
                    Command::Capacity => capacity_row(pt, &params, &evaluators, &mut cache)?,
                    Command::Diversity => diversity_row(pt, &params)?,
                    Command::Simulate => simulate_row(pt, &params, &mut cache)?,
                    Command::OptimizeN => unreachable!(),
                };
                table.rows.push(row);
            }
        }
    }
    Ok(table)
}

fn columns(command: Command) -> Vec<&'static str> {
    let rest: &[&str] = match command {
        Command::Outage => &[
            "gamma_out_db",
            "snr_db",
            "pout_analytic",
            "pout_asymptotic",
            "pout_clt",
            "pout_mc",
            "pout_mc_stderr",
        ],
        Command::Asep => &[
            "p",
            "q",
            "snr_db",
            "asep_analytic",
            "asep_mc",
            "asep_mc_stderr",
        ],
        Command::Capacity => &[
            "snr_db",
            "capacity_analytic",
            "capacity_mc",
            "capacity_mc_stderr",
        ],
        Command::Diversity => &[
            "gamma_out_db",
            "a",
            "b",
            "diversity_order",
            "coding_gain_db",
        ],
        Command::Simulate => &[
            "gamma_out_db",
            "snr_db",
            "z_mean",
            "z_mean_stderr",
            "pout_mc",
            "pout_mc_stderr",
            "asep_mc",
            "asep_mc_stderr",
            "capacity_mc",
            "capacity_mc_stderr",
        ],
        Command::OptimizeN => {
            return vec![
                "m1",
                "m2",
                "omega1",
                "omega2",
                "snr_db",
                "gamma_out_db",
                "pout_th",
                "n_exact",
                "n_log",
                "n_quadratic",
                "err_log_pct",
                "err_quadratic_pct",
                "a_plus_one_log",
                "a_plus_one_quadratic",
                "pout_exact",
                "pout_log",
                "pout_quadratic",
                "feasible_exact",
                "feasible_log",
                "feasible_quadratic",
            ]
        }
    };
    PREFIX.iter().chain(rest).copied().collect()
}

fn operating_point(cfg: &RunConfig, params: &ChannelParams) -> Result<OperatingPoint> {
    Ok(OperatingPoint {
        lp: params.laguerre()?,
        gamma_bar: db_to_linear(cfg.snr_db),
        gamma_out: db_to_linear(cfg.gamma_out_db),
        modulation: cfg.modulation,
    })
}

fn evaluate(
    cfg: &RunConfig,
    reg: &EvaluatorRegistry,
    metric: Metric,
    pt: &OperatingPoint,
) -> Result<f64> {
    let name = cfg
        .evaluator
        .as_deref()
        .unwrap_or(EvaluatorRegistry::default_name(metric));
    let e = reg.get(metric, name).ok_or_else(|| Error::Domain {
        op: "experiments::run",
        detail: format!("no {metric} evaluator named `{name}`"),
    })?;
    e.evaluate(pt)
}

fn mc_cells(e: Option<crate::montecarlo::McEstimate>) -> [Value; 2] {
    [e.map(|e| e.value).into(), e.map(|e| e.std_error).into()]
}

fn outage_row(
    cfg: &RunConfig,
    params: &ChannelParams,
    reg: &EvaluatorRegistry,
    cache: &mut SampleCache,
) -> Result<Vec<Value>> {
    let pt = operating_point(cfg, params)?;
    let analytic = evaluate(cfg, reg, Metric::Outage, &pt)?;
    let asym = reg
        .get(Metric::Outage, "asymptotic")
        .map(|e| e.evaluate(&pt))
        .transpose()?;
    let clt = if cfg.clt {
        Some(clt_baseline_cdf(params, pt.gamma_bar, pt.gamma_out)?)
    } else {
        None
    };
    let mc = cache
        .get(params)?
        .map(|s| s.outage(pt.gamma_bar, pt.gamma_out));
    let mut row = prefix(params);
    row.extend([
        cfg.gamma_out_db.into(),
        cfg.snr_db.into(),
        analytic.into(),
        asym.into(),
        clt.into(),
    ]);
    row.extend(mc_cells(mc));
    Ok(row)
}

fn asep_row(
    cfg: &RunConfig,
    params: &ChannelParams,
    reg: &EvaluatorRegistry,
    cache: &mut SampleCache,
) -> Result<Vec<Value>> {
    let pt = operating_point(cfg, params)?;
    let analytic = evaluate(cfg, reg, Metric::Asep, &pt)?;
    let mc = cache
        .get(params)?
        .map(|s| s.asep(pt.gamma_bar, cfg.modulation));
    let mut row = prefix(params);
    row.extend([
        cfg.modulation.p.into(),
        cfg.modulation.q.into(),
        cfg.snr_db.into(),
        analytic.into(),
    ]);
    row.extend(mc_cells(mc));
    Ok(row)
}

fn capacity_row(
    cfg: &RunConfig,
    params: &ChannelParams,
    reg: &EvaluatorRegistry,
    cache: &mut SampleCache,
) -> Result<Vec<Value>> {
    let pt = operating_point(cfg, params)?;
    let analytic = evaluate(cfg, reg, Metric::Capacity, &pt)?;
    let mc = cache.get(params)?.map(|s| s.capacity(pt.gamma_bar));
    let mut row = prefix(params);
    row.extend([cfg.snr_db.into(), analytic.into()]);
    row.extend(mc_cells(mc));
    Ok(row)
}

fn diversity_row(cfg: &RunConfig, params: &ChannelParams) -> Result<Vec<Value>> {
    let lp = params.laguerre()?;
    let g = asymptotic_gains(db_to_linear(cfg.gamma_out_db), lp)?;
    let mut row = prefix(params);
    row.extend([
        cfg.gamma_out_db.into(),
        lp.a.into(),
        lp.b.into(),
        g.diversity_order.into(),
        linear_to_db(g.coding_gain).into(),
    ]);
    Ok(row)
}

fn simulate_row(
    cfg: &RunConfig,
    params: &ChannelParams,
    cache: &mut SampleCache,
) -> Result<Vec<Value>> {
    let gamma_bar = db_to_linear(cfg.snr_db);
    let gamma_out = db_to_linear(cfg.gamma_out_db);
    let samples = cache.get(params)?.ok_or_else(|| Error::Domain {
        op: "experiments::simulate",
        detail: "simulate needs Monte Carlo settings (trials, seed)".into(),
    })?;
    let mut row = prefix(params);
    row.extend([cfg.gamma_out_db.into(), cfg.snr_db.into()]);
    row.extend(mc_cells(Some(samples.estimate(|z| z))));
    row.extend(mc_cells(Some(samples.outage(gamma_bar, gamma_out))));
    row.extend(mc_cells(Some(samples.asep(gamma_bar, cfg.modulation))));
    row.extend(mc_cells(Some(samples.capacity(gamma_bar))));
    Ok(row)
}

fn optimize_row(cfg: &RunConfig, fading: Fading, sizers: &SizerRegistry) -> Result<Vec<Value>> {
    let prob = OptProblem::new(
        fading,
        db_to_linear(cfg.snr_db),
        db_to_linear(cfg.gamma_out_db),
        cfg.pout_th,
        cfg.n_max,
    )?;
    let solve = |name: &str| {
        sizers
            .get(name)
            .ok_or_else(|| Error::Domain {
                op: "experiments::optimize",
                detail: format!("no sizer named `{name}`"),
            })
            .and_then(|s| s.solve(&prob))
    };
    let exact = solve("exact")?;
    let log = solve("log_approx")?;
    let quad = solve("quadratic")?;
    Ok(vec![
        fading.m1.into(),
        fading.m2.into(),
        fading.omega1.into(),
        fading.omega2.into(),
        cfg.snr_db.into(),
        cfg.gamma_out_db.into(),
        cfg.pout_th.into(),
        exact.n_opt.into(),
        log.n_opt.into(),
        quad.n_opt.into(),
        percentage_error(log.n_opt, exact.n_opt).into(),
        percentage_error(quad.n_opt, exact.n_opt).into(),
        log.a_plus_one.into(),
        quad.a_plus_one.into(),
        exact.achieved_pout.into(),
        log.achieved_pout.into(),
        quad.achieved_pout.into(),
        exact.feasible.into(),
        log.feasible.into(),
        quad.feasible.into(),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point_outage() {
        let mut cfg = RunConfig::new(Command::Outage);
        cfg.n = vec![5];
        cfg.snr_db = 30.0;
        let t = run(&cfg).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.columns.len(), t.rows[0].len());
        assert_eq!(t.rows[0][t.column("pout_clt").unwrap()], Value::Empty);
    }

    #[test]
    fn curves_follow_lists() {
        let mut cfg = RunConfig::new(Command::Capacity);
        cfg.omega = vec![(1.0, 1.0), (2.0, 2.0)];
        cfg.n = vec![2, 4];
        cfg.sweep = Some(SweepSpec::linear(Axis::SnrDb, 0.0, 10.0, 3).unwrap());
        let t = run(&cfg).unwrap();
        assert_eq!(t.rows.len(), 12);
        let n = t.floats("n");
        assert_eq!(&n[..4], &[Some(2.0), Some(2.0), Some(2.0), Some(4.0)]);
    }

    #[test]
    fn swept_dimension_replaces_list() {
        let mut cfg = RunConfig::new(Command::Diversity);
        cfg.m = vec![(1.0, 1.0), (2.0, 2.0)];
        cfg.sweep = Some(SweepSpec::linear(Axis::N, 1.0, 4.0, 4).unwrap());
        let t = run(&cfg).unwrap();
        assert_eq!(t.rows.len(), 8);
        assert_eq!(
            t.floats("n")[..4],
            [Some(1.0), Some(2.0), Some(3.0), Some(4.0)]
        );
    }

    #[test]
    fn validation_catches_bad_axis_and_evaluator() {
        let mut cfg = RunConfig::new(Command::Asep);
        cfg.sweep = Some(SweepSpec::new(Axis::PoutThreshold, 1e-9, 1e-2, 3, Scale::Log).unwrap());
        assert!(cfg.validate().is_err());
        let mut cfg = RunConfig::new(Command::Asep);
        cfg.evaluator = Some("exact".into());
        assert!(cfg.validate().is_err());
        let mut cfg = RunConfig::new(Command::Outage);
        cfg.m = vec![(0.2, 1.0)];
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn simulate_requires_monte_carlo() {
        let cfg = RunConfig::new(Command::Simulate);
        assert!(cfg.validate().is_err());
        assert!(run(&cfg).is_err());
    }
}
