//! Link metrics derived from the Laguerre SNR model.
//!
//! Each metric has one or more [`Evaluator`]s registered by name in an
//! [`EvaluatorRegistry`]. Quadrature is the reference path for ASEP and
//! capacity; the closed forms are faster and fail loudly outside their
//! numerically safe region.

mod asep;
mod capacity;
mod outage;

use std::fmt;

pub use asep::{asep_closed_form, asep_quadrature};
pub use capacity::{capacity_closed_form, capacity_quadrature, POLE_GUARD};
pub use outage::{asymptotic_gains, asymptotic_outage, outage_probability, AsymptoticGains};

use crate::channel::LaguerreParams;
use crate::error::{Error, Result};

/// Conditional symbol error `p·Q(√(2qγ))`; `p = q = 1` is BPSK.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulationParams {
    pub p: f64,
    pub q: f64,
}

impl ModulationParams {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        for (name, value) in [("p", p), ("q", q)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidParameter {
                    op: "ModulationParams::new",
                    name,
                    value,
                    reason: "must be finite and positive",
                });
            }
        }
        Ok(Self { p, q })
    }

    pub fn bpsk() -> Self {
        Self { p: 1.0, q: 1.0 }
    }
}

impl Default for ModulationParams {
    fn default() -> Self {
        Self::bpsk()
    }
}

/// Clip a probability computed in log space into `[0, 1]`.
///
/// Overshoot of 1e-9 or more means the evaluation itself is wrong.
pub(crate) fn clamp_probability(op: &'static str, v: f64) -> Result<f64> {
    const SLACK: f64 = 1e-9;
    if !v.is_finite() || v < -SLACK || v > 1.0 + SLACK {
        return Err(Error::Domain {
            op,
            detail: format!("probability {v:e} outside [0, 1]"),
        });
    }
    Ok(v.clamp(0.0, 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    Outage,
    Asep,
    Capacity,
}

impl Metric {
    pub const ALL: [Metric; 3] = [Metric::Outage, Metric::Asep, Metric::Capacity];

    pub fn as_str(self) -> &'static str {
        match self {
            Metric::Outage => "outage",
            Metric::Asep => "asep",
            Metric::Capacity => "capacity",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Everything an evaluator may need; each metric reads only its own inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatingPoint {
    pub lp: LaguerreParams,
    pub gamma_bar: f64,
    pub gamma_out: f64,
    pub modulation: ModulationParams,
}

pub trait Evaluator: Send + Sync {
    fn name(&self) -> &'static str;
    fn metric(&self) -> Metric;
    fn evaluate(&self, pt: &OperatingPoint) -> Result<f64>;
}

struct Exact;
impl Evaluator for Exact {
    fn name(&self) -> &'static str {
        "exact"
    }
    fn metric(&self) -> Metric {
        Metric::Outage
    }
    fn evaluate(&self, pt: &OperatingPoint) -> Result<f64> {
        outage_probability(pt.gamma_out, pt.gamma_bar, pt.lp)
    }
}

struct Asymptotic;
impl Evaluator for Asymptotic {
    fn name(&self) -> &'static str {
        "asymptotic"
    }
    fn metric(&self) -> Metric {
        Metric::Outage
    }
    fn evaluate(&self, pt: &OperatingPoint) -> Result<f64> {
        asymptotic_outage(pt.gamma_out, pt.gamma_bar, pt.lp)
    }
}

struct AsepQuadrature;
impl Evaluator for AsepQuadrature {
    fn name(&self) -> &'static str {
        "quadrature"
    }
    fn metric(&self) -> Metric {
        Metric::Asep
    }
    fn evaluate(&self, pt: &OperatingPoint) -> Result<f64> {
        asep_quadrature(pt.modulation, pt.gamma_bar, pt.lp)
    }
}

struct AsepClosedForm;
impl Evaluator for AsepClosedForm {
    fn name(&self) -> &'static str {
        "closed-form"
    }
    fn metric(&self) -> Metric {
        Metric::Asep
    }
    fn evaluate(&self, pt: &OperatingPoint) -> Result<f64> {
        asep_closed_form(pt.modulation, pt.gamma_bar, pt.lp)
    }
}

struct CapacityQuadrature;
impl Evaluator for CapacityQuadrature {
    fn name(&self) -> &'static str {
        "quadrature"
    }
    fn metric(&self) -> Metric {
        Metric::Capacity
    }
    fn evaluate(&self, pt: &OperatingPoint) -> Result<f64> {
        capacity_quadrature(pt.gamma_bar, pt.lp)
    }
}

struct CapacityClosedForm;
impl Evaluator for CapacityClosedForm {
    fn name(&self) -> &'static str {
        "closed-form"
    }
    fn metric(&self) -> Metric {
        Metric::Capacity
    }
    fn evaluate(&self, pt: &OperatingPoint) -> Result<f64> {
        capacity_closed_form(pt.gamma_bar, pt.lp)
    }
}

/// Tries the closed form and falls back to quadrature when it refuses.
struct Auto(Metric);
impl Evaluator for Auto {
    fn name(&self) -> &'static str {
        "auto"
    }
    fn metric(&self) -> Metric {
        self.0
    }
    fn evaluate(&self, pt: &OperatingPoint) -> Result<f64> {
        let (fast, slow): (&dyn Evaluator, &dyn Evaluator) = match self.0 {
            Metric::Asep => (&AsepClosedForm, &AsepQuadrature),
            Metric::Capacity => (&CapacityClosedForm, &CapacityQuadrature),
            Metric::Outage => return Exact.evaluate(pt),
        };
        fast.evaluate(pt).or_else(|_| slow.evaluate(pt))
    }
}

/// Named evaluators, looked up per metric at run time.
pub struct EvaluatorRegistry {
    entries: Vec<Box<dyn Evaluator>>,
}

impl EvaluatorRegistry {
    pub fn empty() -> Self {
        Self {
            entries: Vec::new(),
        }
    }

    /// Adds `e`, replacing any evaluator with the same metric and name.
    pub fn register(&mut self, e: Box<dyn Evaluator>) {
        self.entries
            .retain(|old| !(old.metric() == e.metric() && old.name() == e.name()));
        self.entries.push(e);
    }

    pub fn get(&self, metric: Metric, name: &str) -> Option<&dyn Evaluator> {
        self.entries
            .iter()
            .find(|e| e.metric() == metric && e.name() == name)
            .map(|e| e.as_ref())
    }

    pub fn names(&self, metric: Metric) -> Vec<&'static str> {
        self.entries
            .iter()
            .filter(|e| e.metric() == metric)
            .map(|e| e.name())
            .collect()
    }

    /// The evaluator used when the caller does not name one.
    pub fn default_name(metric: Metric) -> &'static str {
        match metric {
            Metric::Outage => "exact",
            Metric::Asep | Metric::Capacity => "quadrature",
        }
    }
}

impl Default for EvaluatorRegistry {
    fn default() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(Exact));
        r.register(Box::new(Asymptotic));
        r.register(Box::new(AsepQuadrature));
        r.register(Box::new(AsepClosedForm));
        r.register(Box::new(Auto(Metric::Asep)));
        r.register(Box::new(CapacityQuadrature));
        r.register(Box::new(CapacityClosedForm));
        r.register(Box::new(Auto(Metric::Capacity)));
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::ChannelParams;

    fn point(gamma_bar: f64) -> OperatingPoint {
        OperatingPoint {
            lp: ChannelParams::symmetric(1.0, 1.0, 5)
                .unwrap()
                .laguerre()
                .unwrap(),
            gamma_bar,
            gamma_out: 1.0,
            modulation: ModulationParams::bpsk(),
        }
    }

    #[test]
    fn builtins_are_registered() {
        let r = EvaluatorRegistry::default();
        assert_eq!(r.names(Metric::Outage), ["exact", "asymptotic"]);
        assert_eq!(r.names(Metric::Asep), ["quadrature", "closed-form", "auto"]);
        assert_eq!(
            r.names(Metric::Capacity),
            ["quadrature", "closed-form", "auto"]
        );
        for m in Metric::ALL {
            assert!(r.get(m, EvaluatorRegistry::default_name(m)).is_some());
        }
        assert!(r.get(Metric::Outage, "quadrature").is_none());
    }

    #[test]
    fn registration_replaces_by_name() {
        struct Half;
        impl Evaluator for Half {
            fn name(&self) -> &'static str {
                "exact"
            }
            fn metric(&self) -> Metric {
                Metric::Outage
            }
            fn evaluate(&self, _: &OperatingPoint) -> Result<f64> {
                Ok(0.5)
            }
        }
        let mut r = EvaluatorRegistry::default();
        r.register(Box::new(Half));
        assert_eq!(r.names(Metric::Outage), ["asymptotic", "exact"]);
        assert_eq!(
            r.get(Metric::Outage, "exact")
                .unwrap()
                .evaluate(&point(1.0))
                .unwrap(),
            0.5
        );
    }

    #[test]
    fn auto_falls_back_to_quadrature() {
        let r = EvaluatorRegistry::default();
        // Too low an SNR for the capacity closed form.
        let pt = point(1e-8);
        assert!(r
            .get(Metric::Capacity, "closed-form")
            .unwrap()
            .evaluate(&pt)
            .is_err());
        let auto = r
            .get(Metric::Capacity, "auto")
            .unwrap()
            .evaluate(&pt)
            .unwrap();
        let quad = r
            .get(Metric::Capacity, "quadrature")
            .unwrap()
            .evaluate(&pt)
            .unwrap();
        assert_eq!(auto, quad);
    }

    #[test]
    fn modulation_validation() {
        assert!(ModulationParams::new(1.0, 0.0).is_err());
        assert!(ModulationParams::new(f64::NAN, 1.0).is_err());
        assert_eq!(ModulationParams::default(), ModulationParams::bpsk());
    }

    #[test]
    fn clamp_tolerates_rounding_only() {
        assert_eq!(clamp_probability("t", 1.0 + 1e-12).unwrap(), 1.0);
        assert_eq!(clamp_probability("t", -1e-15).unwrap(), 0.0);
        assert!(clamp_probability("t", 1.01).is_err());
        assert!(clamp_probability("t", f64::NAN).is_err());
    }
}
