//! Run configuration from presets, `key = value` files and flags.
//!
//! Every source is reduced to `(key, value)` string pairs applied in order,
//! so a flag and a file entry with the same key parse identically and the
//! later one wins.
//!
//! File format: one `key = value` per line, `#` starts a comment, blank lines
//! are ignored. Keys may use `-` or `_`. Lists are comma separated.
//!
//! | key | value |
//! |-----|-------|
//! | `preset` | `fig1` … `fig7` (only as the first entry) |
//! | `m`, `omega` | list applied to both hops |
//! | `m1`, `m2`, `omega1`, `omega2` | per-hop value, applied to every curve |
//! | `n` | list of element counts |
//! | `snr_db`, `gamma_out_db` | dB |
//! | `p`, `q` | modulation constants |
//! | `trials`, `seed`, `chunk_size` | simulation; `mc = off` disables it |
//! | `clt` | `true`/`false` |
//! | `pout_th`, `n_max` | sizing target and cap |
//! | `axis`, `start`, `stop`, `points`, `scale` | sweep |
//! | `evaluator` | metric evaluator name |
//! | `format` | `csv` or `json` |
//! | `out` | output path |

use std::path::PathBuf;
use std::str::FromStr;

use ris_nakagami::experiments::{preset, Axis, Command, RunConfig, Scale, SweepSpec};
use ris_nakagami::montecarlo::McConfig;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}` (expected csv or json)")),
        }
    }
}

/// A run configuration under construction.
pub struct Builder {
    pub cfg: RunConfig,
    pub format: Format,
    pub out: Option<PathBuf>,
    axis: Option<Axis>,
    start: Option<f64>,
    stop: Option<f64>,
    points: Option<usize>,
    scale: Option<Scale>,
    trials: Option<u64>,
    seed: Option<u64>,
    chunk_size: Option<u64>,
    mc_off: bool,
}

fn parse<T: FromStr>(key: &str, v: &str) -> Result<T, CliError> {
    v.trim()
        .parse()
        .map_err(|_| CliError::Config(format!("{key}: cannot parse `{v}`")))
}

fn parse_list<T: FromStr>(key: &str, v: &str) -> Result<Vec<T>, CliError> {
    let items: Vec<T> = v
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse(key, s))
        .collect::<Result<_, _>>()?;
    if items.is_empty() {
        return Err(CliError::Config(format!("{key}: empty list")));
    }
    Ok(items)
}

fn parse_bool(key: &str, v: &str) -> Result<bool, CliError> {
    match v.trim() {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        other => Err(CliError::Config(format!(
            "{key}: expected true or false, got `{other}`"
        ))),
    }
}

impl Builder {
    pub fn new(command: Command) -> Self {
        Self::from_config(RunConfig::new(command))
    }

    pub fn from_preset(command: Command, name: &str) -> Result<Self, CliError> {
        let cfg = preset(name).map_err(|e| CliError::Config(e.to_string()))?;
        if cfg.command != command {
            return Err(CliError::Config(format!(
                "preset {name} is a `{}` run, not `{command}`",
                cfg.command
            )));
        }
        Ok(Self::from_config(cfg))
    }

    fn from_config(cfg: RunConfig) -> Self {
        let sweep = cfg.sweep;
        let mc = cfg.mc;
        Self {
            format: Format::Csv,
            out: None,
            axis: sweep.map(|s| s.axis),
            start: sweep.map(|s| s.start),
            stop: sweep.map(|s| s.stop),
            points: sweep.map(|s| s.points),
            scale: sweep.map(|s| s.scale),
            trials: mc.map(|m| m.trials),
            seed: mc.map(|m| m.seed),
            chunk_size: mc.map(|m| m.chunk_size),
            mc_off: false,
            cfg,
        }
    }

    pub fn apply(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let key = key.trim().replace('-', "_");
        let k = key.as_str();
        let v = value.trim();
        let c = &mut self.cfg;
        match k {
            "m" => {
                c.m = parse_list::<f64>(k, v)?
                    .into_iter()
                    .map(|m| (m, m))
                    .collect()
            }
            "omega" => {
                c.omega = parse_list::<f64>(k, v)?
                    .into_iter()
                    .map(|o| (o, o))
                    .collect()
            }
            "m1" => {
                let x = parse(k, v)?;
                c.m.iter_mut().for_each(|p| p.0 = x);
            }
            "m2" => {
                let x = parse(k, v)?;
                c.m.iter_mut().for_each(|p| p.1 = x);
            }
            "omega1" => {
                let x = parse(k, v)?;
                c.omega.iter_mut().for_each(|p| p.0 = x);
            }
            "omega2" => {
                let x = parse(k, v)?;
                c.omega.iter_mut().for_each(|p| p.1 = x);
            }
            "n" => c.n = parse_list(k, v)?,
            "snr_db" => c.snr_db = parse(k, v)?,
            "gamma_out_db" => c.gamma_out_db = parse(k, v)?,
            "p" => c.modulation.p = parse(k, v)?,
            "q" => c.modulation.q = parse(k, v)?,
            "clt" => c.clt = parse_bool(k, v)?,
            "pout_th" => c.pout_th = parse(k, v)?,
            "n_max" => c.n_max = parse(k, v)?,
            "evaluator" => c.evaluator = Some(v.to_string()),
            "trials" => self.trials = Some(parse(k, v)?),
            "seed" => self.seed = Some(parse(k, v)?),
            "chunk_size" => self.chunk_size = Some(parse(k, v)?),
            "mc" => self.mc_off = !parse_bool(k, v)?,
            "axis" => self.axis = Some(v.parse().map_err(CliError::Config)?),
            "start" => self.start = Some(parse(k, v)?),
            "stop" => self.stop = Some(parse(k, v)?),
            "points" => self.points = Some(parse(k, v)?),
            "scale" => self.scale = Some(v.parse().map_err(CliError::Config)?),
            "format" => self.format = v.parse().map_err(CliError::Config)?,
            "out" => self.out = Some(PathBuf::from(v)),
            other => return Err(CliError::Config(format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    /// Apply a `key = value` file. A leading `preset` entry is handled by the caller.
    pub fn apply_file(&mut self, text: &str, origin: &str) -> Result<(), CliError> {
        for (i, (key, value)) in file_entries(text, origin)?.into_iter().enumerate() {
            if key == "preset" {
                if i == 0 {
                    continue;
                }
                return Err(CliError::Config(format!(
                    "{origin}: `preset` must be the first entry"
                )));
            }
            self.apply(&key, &value)
                .map_err(|e| CliError::Config(format!("{origin}: {e}")))?;
        }
        Ok(())
    }

    pub fn finish(mut self) -> Result<(RunConfig, Format, Option<PathBuf>), CliError> {
        let any_sweep = self.axis.is_some()
            || self.start.is_some()
            || self.stop.is_some()
            || self.points.is_some();
        self.cfg.sweep = if any_sweep {
            let axis = self
                .axis
                .ok_or_else(|| CliError::Config("sweep needs `axis`".into()))?;
            let (Some(start), Some(stop)) = (self.start, self.stop) else {
                return Err(CliError::Config("sweep needs `start` and `stop`".into()));
            };
            let points = self.points.unwrap_or(2);
            let scale = self.scale.unwrap_or(if axis == Axis::PoutThreshold {
                Scale::Log
            } else {
                Scale::Linear
            });
            Some(
                SweepSpec::new(axis, start, stop, points, scale)
                    .map_err(|e| CliError::Config(e.to_string()))?,
            )
        } else {
            None
        };
        let wants_mc = self.trials.is_some() || self.seed.is_some() || self.chunk_size.is_some();
        self.cfg.mc = if wants_mc && !self.mc_off {
            let mc = McConfig::with_chunk(
                self.trials.unwrap_or(100_000),
                self.seed.unwrap_or(1),
                self.chunk_size.unwrap_or(McConfig::DEFAULT_CHUNK),
            )
            .map_err(|e| CliError::Config(e.to_string()))?;
            Some(mc)
        } else {
            None
        };
        self.cfg
            .validate()
            .map_err(|e| CliError::Config(e.to_string()))?;
        Ok((self.cfg, self.format, self.out))
    }
}

/// `(key, value)` pairs of a config file, in order.
pub fn file_entries(text: &str, origin: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(CliError::Config(format!(
                "{origin}:{}: expected `key = value`",
                lineno + 1
            )));
        };
        out.push((k.trim().replace('-', "_"), v.trim().to_string()));
    }
    Ok(out)
}
