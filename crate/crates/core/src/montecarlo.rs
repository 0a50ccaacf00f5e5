//! Monte Carlo simulation of `γ = γ̄ Z²`, `Z = Σ αᵢβᵢ`.
//!
//! Trials are split into chunks of `chunk_size`; chunk `k` draws from the
//! ChaCha stream `k` of the configured seed. Per-chunk partial sums are reduced
//! in chunk order, so estimates depend only on `(trials, seed, chunk_size)` and
//! never on how many worker threads ran.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};
use rayon::prelude::*;

use crate::channel::ChannelParams;
use crate::error::{Error, Result};
use crate::metrics::ModulationParams;
use crate::specfun::{normal_cdf, q_function};

/// Environment variable capping simulation threads.
pub const WORKERS_ENV: &str = "RIS_MC_WORKERS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McConfig {
    pub trials: u64,
    pub seed: u64,
    pub chunk_size: u64,
    /// Thread count; `None` reads [`WORKERS_ENV`], then falls back to rayon's default.
    pub workers: Option<usize>,
}

impl McConfig {
    pub const DEFAULT_CHUNK: u64 = 1 << 16;

    pub fn new(trials: u64, seed: u64) -> Result<Self> {
        Self::with_chunk(trials, seed, Self::DEFAULT_CHUNK)
    }

    pub fn with_chunk(trials: u64, seed: u64, chunk_size: u64) -> Result<Self> {
        for (name, v) in [("trials", trials), ("chunk_size", chunk_size)] {
            if v == 0 {
                return Err(Error::InvalidParameter {
                    op: "McConfig::new",
                    name,
                    value: 0.0,
                    reason: "must be at least 1",
                });
            }
        }
        Ok(Self {
            trials,
            seed,
            chunk_size,
            workers: None,
        })
    }

    pub fn workers(mut self, n: usize) -> Self {
        self.workers = Some(n.max(1));
        self
    }

    fn chunks(&self) -> u64 {
        self.trials.div_ceil(self.chunk_size)
    }

    fn resolved_workers(&self) -> Option<usize> {
        self.workers.or_else(|| {
            std::env::var(WORKERS_ENV)
                .ok()
                .and_then(|v| v.trim().parse::<usize>().ok())
                .filter(|&n| n > 0)
        })
    }

    fn run<T: Send>(&self, job: impl FnOnce() -> T + Send) -> T {
        match self.resolved_workers() {
            Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
                Ok(pool) => pool.install(job),
                Err(_) => job(),
            },
            None => job(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub value: f64,
    /// Sample standard deviation over `√trials_used`.
    pub std_error: f64,
    pub trials_used: u64,
}

/// Simulated draws of the coherent sum `Z`, reusable across SNR values.
#[derive(Debug, Clone, PartialEq)]
pub struct ZSamples {
    samples: Vec<f64>,
    cfg: McConfig,
}

fn gamma_dist(shape: f64, omega: f64) -> Result<Gamma<f64>> {
    Gamma::new(shape, omega / shape).map_err(|e| Error::Domain {
        op: "simulate_z_samples",
        detail: format!("gamma sampler rejected shape {shape}: {e}"),
    })
}

/// Draws `cfg.trials` values of `Z`. Per trial and element, the hop-1 power is
/// drawn before the hop-2 power; the envelope product is `√(g₁g₂)`.
pub fn simulate_z_samples(params: &ChannelParams, cfg: &McConfig) -> Result<ZSamples> {
    let f = params.fading;
    let g1 = gamma_dist(f.m1, f.omega1)?;
    let g2 = gamma_dist(f.m2, f.omega2)?;
    let n = params.n;
    let per_chunk = |k: u64| -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(k);
        let start = k * cfg.chunk_size;
        let len = cfg.chunk_size.min(cfg.trials - start) as usize;
        (0..len)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        let a = g1.sample(&mut rng);
                        let b = g2.sample(&mut rng);
                        (a * b).sqrt()
                    })
                    .sum()
            })
            .collect()
    };
    let chunks: Vec<Vec<f64>> =
        cfg.run(|| (0..cfg.chunks()).into_par_iter().map(per_chunk).collect());
    Ok(ZSamples {
        samples: chunks.concat(),
        cfg: *cfg,
    })
}

/// Linear SNR samples `γ̄ Z²` in trial order.
pub fn simulate_snr_samples(
    params: &ChannelParams,
    gamma_bar: f64,
    cfg: &McConfig,
) -> Result<Vec<f64>> {
    check_positive("simulate_snr_samples", "gamma_bar", gamma_bar)?;
    Ok(simulate_z_samples(params, cfg)?.snr(gamma_bar).collect())
}

fn check_positive(op: &'static str, name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            op,
            name,
            value: v,
            reason: "must be finite and positive",
        })
    }
}

impl ZSamples {
    pub fn as_slice(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn snr(&self, gamma_bar: f64) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(move |z| gamma_bar * z * z)
    }

    /// Sample mean and standard error of `f(Z)`, reduced chunk by chunk in order.
    pub fn estimate<F: Fn(f64) -> f64 + Sync>(&self, f: F) -> McEstimate {
        let n = self.samples.len();
        let chunk = self.cfg.chunk_size as usize;
        let sums: Vec<f64> = self.cfg.run(|| {
            self.samples
                .par_chunks(chunk)
                .map(|c| c.iter().map(|&z| f(z)).sum())
                .collect()
        });
        let mean = sums.iter().sum::<f64>() / n as f64;
        let sq: Vec<f64> = self.cfg.run(|| {
            self.samples
                .par_chunks(chunk)
                .map(|c| c.iter().map(|&z| (f(z) - mean).powi(2)).sum())
                .collect()
        });
        let std_error = if n > 1 {
            (sq.iter().sum::<f64>() / (n - 1) as f64).sqrt() / (n as f64).sqrt()
        } else {
            0.0
        };
        McEstimate {
            value: mean,
            std_error,
            trials_used: n as u64,
        }
    }

    pub fn outage(&self, gamma_bar: f64, gamma_out: f64) -> McEstimate {
        self.estimate(|z| {
            if gamma_bar * z * z <= gamma_out {
                1.0
            } else {
                0.0
            }
        })
    }

    pub fn asep(&self, gamma_bar: f64, modulation: ModulationParams) -> McEstimate {
        let ModulationParams { p, q } = modulation;
        self.estimate(|z| p * q_function((2.0 * q * gamma_bar).sqrt() * z))
    }

    pub fn capacity(&self, gamma_bar: f64) -> McEstimate {
        self.estimate(|z| (gamma_bar * z * z).ln_1p() / std::f64::consts::LN_2)
    }

    /// Largest distance between the sample CDF of `γ` and `cdf`.
    pub fn ks_distance<F: Fn(f64) -> Result<f64>>(&self, gamma_bar: f64, cdf: F) -> Result<f64> {
        let mut g: Vec<f64> = self.snr(gamma_bar).collect();
        g.sort_by(f64::total_cmp);
        let n = g.len() as f64;
        let mut worst = 0.0f64;
        for (i, &v) in g.iter().enumerate() {
            let f = cdf(v)?;
            worst = worst
                .max((f - i as f64 / n).abs())
                .max(((i + 1) as f64 / n - f).abs());
        }
        Ok(worst)
    }
}

/// Fraction of simulated `γ` at or below `gamma_out`.
pub fn mc_outage(
    params: &ChannelParams,
    gamma_bar: f64,
    gamma_out: f64,
    cfg: &McConfig,
) -> Result<McEstimate> {
    check_positive("mc_outage", "gamma_bar", gamma_bar)?;
    if !(gamma_out.is_finite() && gamma_out >= 0.0) {
        return Err(Error::InvalidParameter {
            op: "mc_outage",
            name: "gamma_out",
            value: gamma_out,
            reason: "must be finite and nonnegative",
        });
    }
    Ok(simulate_z_samples(params, cfg)?.outage(gamma_bar, gamma_out))
}

/// Mean of `p·Q(√(2qγ))` over simulated `γ`.
pub fn mc_asep(
    params: &ChannelParams,
    gamma_bar: f64,
    modulation: ModulationParams,
    cfg: &McConfig,
) -> Result<McEstimate> {
    check_positive("mc_asep", "gamma_bar", gamma_bar)?;
    Ok(simulate_z_samples(params, cfg)?.asep(gamma_bar, modulation))
}

/// Mean of `log₂(1 + γ)` over simulated `γ`.
pub fn mc_capacity(params: &ChannelParams, gamma_bar: f64, cfg: &McConfig) -> Result<McEstimate> {
    check_positive("mc_capacity", "gamma_bar", gamma_bar)?;
    Ok(simulate_z_samples(params, cfg)?.capacity(gamma_bar))
}

/// Gaussian approximation of the SNR CDF, `Φ((√(γ/γ̄) − N·E) / √(N·Var))`.
///
/// The mass the Gaussian puts on `Z < 0` is left in place, as in the usual
/// central-limit treatment.
pub fn clt_baseline_cdf(params: &ChannelParams, gamma_bar: f64, gamma: f64) -> Result<f64> {
    check_positive("clt_baseline_cdf", "gamma_bar", gamma_bar)?;
    if !(gamma >= 0.0) {
        return Err(Error::InvalidParameter {
            op: "clt_baseline_cdf",
            name: "gamma",
            value: gamma,
            reason: "must be nonnegative",
        });
    }
    let m = params.fading.product_moments()?;
    let n = params.n as f64;
    Ok(normal_cdf(
        ((gamma / gamma_bar).sqrt() - n * m.mean) / (n * m.variance).sqrt(),
    ))
}
