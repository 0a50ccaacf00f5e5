use super::{Axis, Command, RunConfig, Scale, SweepSpec};
use crate::error::{Error, Result};
use crate::montecarlo::McConfig;

/// Preset names with a one-line description.
pub const PRESETS: [(&str, &str); 7] = [
    ("fig1", "outage vs SNR, Rayleigh hops, N in {5, 10}, with simulation and CLT baseline"),
    ("fig2", "BPSK symbol error vs SNR, N = 4, m in {1, 2, 4}"),
    ("fig3", "diversity order vs N for m in {0.5, 1, 2, 5, 10}"),
    ("fig4", "capacity vs SNR, N = 4, m = 1, omega in {1, 2, 3, 4}"),
    ("fig5", "outage vs threshold at 15 dB for the asymmetric link, N in {4, 8}, with simulation and CLT"),
    ("fig6", "optimum N vs threshold SNR at 15 dB, target outage 1e-20"),
    ("fig7", "optimum N vs target outage at 15 dB, threshold 0 dB"),
];

/// Shapes and spreads of the asymmetric two-hop link used by the sizing presets.
const LINK_M: (f64, f64) = (2.0, 1.0);
const LINK_OMEGA: (f64, f64) = (0.4123, 0.8973);

pub fn preset(name: &str) -> Result<RunConfig> {
    let sweep = |axis, start, stop, points, scale| SweepSpec::new(axis, start, stop, points, scale);
    let mc = |trials, seed| McConfig::new(trials, seed);
    let cfg = match name {
        "fig1" => RunConfig {
            n: vec![5, 10],
            // Puts both curves' 1e-4 crossings inside the SNR window.
            gamma_out_db: 10.0,
            mc: Some(mc(1_000_000, 1)?),
            clt: true,
            sweep: Some(sweep(Axis::SnrDb, 0.0, 40.0, 81, Scale::Linear)?),
            ..RunConfig::new(Command::Outage)
        },
        "fig2" => RunConfig {
            m: vec![(1.0, 1.0), (2.0, 2.0), (4.0, 4.0)],
            n: vec![4],
            mc: Some(mc(200_000, 2)?),
            sweep: Some(sweep(Axis::SnrDb, 0.0, 30.0, 31, Scale::Linear)?),
            ..RunConfig::new(Command::Asep)
        },
        "fig3" => RunConfig {
            m: [0.5, 1.0, 2.0, 5.0, 10.0].iter().map(|&m| (m, m)).collect(),
            sweep: Some(sweep(Axis::N, 1.0, 10.0, 10, Scale::Linear)?),
            ..RunConfig::new(Command::Diversity)
        },
        "fig4" => RunConfig {
            omega: [1.0, 2.0, 3.0, 4.0].iter().map(|&o| (o, o)).collect(),
            n: vec![4],
            mc: Some(mc(200_000, 4)?),
            sweep: Some(sweep(Axis::SnrDb, 0.0, 30.0, 31, Scale::Linear)?),
            ..RunConfig::new(Command::Capacity)
        },
        "fig5" => RunConfig {
            m: vec![LINK_M],
            omega: vec![LINK_OMEGA],
            n: vec![4, 8],
            snr_db: 15.0,
            mc: Some(mc(1_000_000, 5)?),
            clt: true,
            sweep: Some(sweep(Axis::GammaOutDb, -10.0, 20.0, 31, Scale::Linear)?),
            ..RunConfig::new(Command::Outage)
        },
        "fig6" => RunConfig {
            m: vec![LINK_M],
            omega: vec![LINK_OMEGA],
            snr_db: 15.0,
            pout_th: 1e-20,
            sweep: Some(sweep(Axis::GammaOutDb, -10.0, 30.0, 5, Scale::Linear)?),
            ..RunConfig::new(Command::OptimizeN)
        },
        "fig7" => RunConfig {
            m: vec![LINK_M],
            omega: vec![LINK_OMEGA],
            snr_db: 15.0,
            gamma_out_db: 0.0,
            sweep: Some(sweep(Axis::PoutThreshold, 1e-30, 1e-2, 29, Scale::Log)?),
            ..RunConfig::new(Command::OptimizeN)
        },
        other => {
            return Err(Error::Domain {
                op: "preset",
                detail: format!("unknown preset `{other}` (expected fig1..fig7)"),
            })
        }
    };
    Ok(cfg)
}
