//! `ris`: sweeps and one-shot queries for RIS-assisted Nakagami-m links.
//!
//! Exit status: 0 on success, 2 for configuration errors, 3 when a numerical
//! routine fails (the message names it).

mod config;
mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ris_nakagami::experiments::{run, Command};
use thiserror::Error;

use config::{file_entries, Builder, Format};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numerical failure in {}: {0}", .0.op())]
    Numerical(ris_nakagami::Error),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "ris",
    version,
    about = "Outage, symbol error, capacity and element sizing for RIS-assisted Nakagami-m links"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Outage probability: analytic, asymptotic, optional CLT and simulation.
    Outage(Opts),
    /// Average symbol error probability for `p·Q(√(2qγ))` modulations.
    Asep(Opts),
    /// Ergodic capacity in bits per channel use.
    Capacity(Opts),
    /// Diversity order and coding gain.
    Diversity(Opts),
    /// Smallest element count meeting an outage target, by three methods.
    #[command(name = "optimize-n")]
    OptimizeN(Opts),
    /// Monte Carlo estimates only.
    Simulate(Opts),
}

/// Flags shared by every subcommand; values follow the config-file syntax.
#[derive(clap::Args, Default)]
struct Opts {
    /// `key = value` configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Start from a figure preset (fig1..fig7).
    #[arg(long)]
    preset: Option<String>,
    /// Nakagami shape for both hops; a comma list gives one curve per value.
    #[arg(long)]
    m: Option<String>,
    #[arg(long)]
    m1: Option<String>,
    #[arg(long)]
    m2: Option<String>,
    /// Spread for both hops; a comma list gives one curve per value.
    #[arg(long)]
    omega: Option<String>,
    #[arg(long)]
    omega1: Option<String>,
    #[arg(long)]
    omega2: Option<String>,
    /// Element count(s), comma separated.
    #[arg(long)]
    n: Option<String>,
    #[arg(long = "snr-db", allow_hyphen_values = true)]
    snr_db: Option<String>,
    #[arg(long = "gamma-out-db", allow_hyphen_values = true)]
    gamma_out_db: Option<String>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    q: Option<String>,
    /// Monte Carlo trials; enables simulation columns.
    #[arg(long)]
    trials: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long = "chunk-size")]
    chunk_size: Option<String>,
    /// Disable simulation even if a preset or file enables it.
    #[arg(long = "no-mc")]
    no_mc: bool,
    /// Add the CLT baseline column (outage).
    #[arg(long)]
    clt: bool,
    #[arg(long = "pout-th")]
    pout_th: Option<String>,
    #[arg(long = "n-max")]
    n_max: Option<String>,
    /// Sweep axis: snr_db, gamma_out_db, pout_threshold, n, m, omega.
    #[arg(long)]
    axis: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    start: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    stop: Option<String>,
    #[arg(long)]
    points: Option<String>,
    /// linear or log.
    #[arg(long)]
    scale: Option<String>,
    /// Evaluator: exact/asymptotic (outage), quadrature/closed-form/auto (asep, capacity).
    #[arg(long)]
    evaluator: Option<String>,
    /// csv or json.
    #[arg(long)]
    format: Option<String>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Opts {
    fn pairs(&self) -> Vec<(&'static str, String)> {
        let mut v = Vec::new();
        let fields: [(&str, &Option<String>); 23] = [
            ("m", &self.m),
            ("m1", &self.m1),
            ("m2", &self.m2),
            ("omega", &self.omega),
            ("omega1", &self.omega1),
            ("omega2", &self.omega2),
            ("n", &self.n),
            ("snr_db", &self.snr_db),
            ("gamma_out_db", &self.gamma_out_db),
            ("p", &self.p),
            ("q", &self.q),
            ("trials", &self.trials),
            ("seed", &self.seed),
            ("chunk_size", &self.chunk_size),
            ("pout_th", &self.pout_th),
            ("n_max", &self.n_max),
            ("axis", &self.axis),
            ("start", &self.start),
            ("stop", &self.stop),
            ("points", &self.points),
            ("scale", &self.scale),
            ("evaluator", &self.evaluator),
            ("format", &self.format),
        ];
        for (k, val) in fields {
            if let Some(s) = val {
                v.push((k, s.clone()));
            }
        }
        if self.clt {
            v.push(("clt", "true".into()));
        }
        if self.no_mc {
            v.push(("mc", "off".into()));
        }
        if let Some(p) = &self.out {
            v.push(("out", p.display().to_string()));
        }
        v
    }
}

fn execute(command: Command, opts: &Opts) -> Result<(), CliError> {
    let file_text = match &opts.config {
        Some(path) => Some(
            std::fs::read_to_string(path)
                .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?,
        ),
        None => None,
    };
    let origin = opts
        .config
        .as_ref()
        .map(|p| p.display().to_string())
        .unwrap_or_default();
    let file_preset = match &file_text {
        Some(t) => file_entries(t, &origin)?
            .into_iter()
            .next()
            .filter(|(k, _)| k == "preset")
            .map(|(_, v)| v),
        None => None,
    };
    let mut builder = match opts.preset.as_ref().or(file_preset.as_ref()) {
        Some(name) => Builder::from_preset(command, name)?,
        None => Builder::new(command),
    };
    if let Some(t) = &file_text {
        builder.apply_file(t, &origin)?;
    }
    for (k, v) in opts.pairs() {
        builder.apply(k, &v)?;
    }
    let (cfg, format, out) = builder.finish()?;
    let table = run(&cfg).map_err(CliError::Numerical)?;

    let sink: Box<dyn Write> = match &out {
        Some(path) => Box::new(
            File::create(path)
                .map_err(|e| CliError::Io(format!("cannot create {}: {e}", path.display())))?,
        ),
        None => Box::new(io::stdout().lock()),
    };
    let mut sink = BufWriter::new(sink);
    match format {
        Format::Csv => {
            output::write_csv(&table, &mut sink).map_err(|e| CliError::Io(e.to_string()))?
        }
        Format::Json => output::write_json(&table, command, &mut sink)
            .map_err(|e| CliError::Io(e.to_string()))?,
    }
    sink.flush().map_err(|e| CliError::Io(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, opts) = match &cli.command {
        Sub::Outage(o) => (Command::Outage, o),
        Sub::Asep(o) => (Command::Asep, o),
        Sub::Capacity(o) => (Command::Capacity, o),
        Sub::Diversity(o) => (Command::Diversity, o),
        Sub::OptimizeN(o) => (Command::OptimizeN, o),
        Sub::Simulate(o) => (Command::Simulate, o),
    };
    match execute(command, opts) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ris: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
