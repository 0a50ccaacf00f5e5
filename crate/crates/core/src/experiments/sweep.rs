use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    SnrDb,
    GammaOutDb,
    PoutThreshold,
    N,
    M,
    Omega,
}

impl Axis {
    pub const ALL: [Axis; 6] = [
        Axis::SnrDb,
        Axis::GammaOutDb,
        Axis::PoutThreshold,
        Axis::N,
        Axis::M,
        Axis::Omega,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Axis::SnrDb => "snr_db",
            Axis::GammaOutDb => "gamma_out_db",
            Axis::PoutThreshold => "pout_threshold",
            Axis::N => "n",
            Axis::M => "m",
            Axis::Omega => "omega",
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Axis {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Axis::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| format!("unknown axis `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scale {
    Linear,
    Log,
}

impl FromStr for Scale {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "linear" | "lin" => Ok(Scale::Linear),
            "log" => Ok(Scale::Log),
            other => Err(format!("unknown scale `{other}`")),
        }
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scale::Linear => "linear",
            Scale::Log => "log",
        })
    }
}

/// An evenly spaced grid along one axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub axis: Axis,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub scale: Scale,
}

impl SweepSpec {
    pub fn new(axis: Axis, start: f64, stop: f64, points: usize, scale: Scale) -> Result<Self> {
        let bad = |name, value, reason| Error::InvalidParameter {
            op: "SweepSpec::new",
            name,
            value,
            reason,
        };
        if !(start.is_finite() && stop.is_finite() && start < stop) {
            return Err(bad("start", start, "need finite start < stop"));
        }
        if points < 2 {
            return Err(bad("points", points as f64, "need at least 2 points"));
        }
        if axis == Axis::PoutThreshold && scale != Scale::Log {
            return Err(bad(
                "scale",
                0.0,
                "the pout_threshold axis must use log scale",
            ));
        }
        if scale == Scale::Log && start <= 0.0 {
            return Err(bad("start", start, "log scale needs a positive start"));
        }
        Ok(Self {
            axis,
            start,
            stop,
            points,
            scale,
        })
    }

    pub fn linear(axis: Axis, start: f64, stop: f64, points: usize) -> Result<Self> {
        Self::new(axis, start, stop, points, Scale::Linear)
    }

    pub fn values(&self) -> Vec<f64> {
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                let t = i as f64 / last;
                if i + 1 == self.points {
                    return self.stop;
                }
                match self.scale {
                    Scale::Linear => self.start + t * (self.stop - self.start),
                    Scale::Log => self.start * (self.stop / self.start).powf(t),
                }
            })
            .collect()
    }
}
