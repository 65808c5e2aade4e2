use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use relaycap::config::{parse_list, ConfigFile};
use relaycap::parallel::with_workers;
use relaycap::sweep::{parse_snr_range, write_csv, write_gain_csv};
use relaycap::{run_gain, run_sweep, SweepError, SweepSpec};

/// Ergodic capacity of dual-hop decode-and-forward relay selection over
/// Rayleigh fading, swept over average SNR.
#[derive(Debug, Parser)]
#[command(name = "relaycap", version)]
struct Cli {
    /// Channel profile: iid, fig3 or custom
    #[arg(long)]
    preset: Option<String>,

    /// Number of relays M
    #[arg(long = "relays")]
    relays: Option<usize>,

    /// SNR grid in dB as START:STOP:STEP, stop inclusive
    #[arg(long = "snr-db", allow_hyphen_values = true)]
    snr_db: Option<String>,

    /// full, partial, direct or all; comma separated
    #[arg(long)]
    scheme: Option<String>,

    /// analytic, montecarlo, quadrature or all; comma separated
    #[arg(long)]
    method: Option<String>,

    /// Monte Carlo realizations per point
    #[arg(long)]
    samples: Option<u64>,

    #[arg(long)]
    seed: Option<u64>,

    /// key = value file; flags take precedence over its entries
    #[arg(long)]
    config: Option<PathBuf>,

    /// CSV destination; stdout when omitted
    #[arg(long)]
    output: Option<PathBuf>,

    /// Print the full-vs-partial CSI gain table (iid, one relay)
    #[arg(long)]
    gain: bool,

    /// Worker threads for Monte Carlo
    #[arg(long)]
    workers: Option<usize>,

    /// Custom first-hop base means, comma separated
    #[arg(long = "first-hop")]
    first_hop: Option<String>,

    /// Custom second-hop base means, comma separated
    #[arg(long = "second-hop")]
    second_hop: Option<String>,

    /// Custom direct-link base mean
    #[arg(long)]
    direct: Option<f64>,
}

impl Cli {
    /// Overlays the flags onto the file settings.
    fn merge_into(&self, mut cfg: ConfigFile) -> Result<ConfigFile, SweepError> {
        if let Some(range) = &self.snr_db {
            let (start, stop, step) = parse_snr_range(range)?;
            cfg.snr_db_start = Some(start);
            cfg.snr_db_stop = Some(stop);
            cfg.snr_db_step = Some(step);
        }
        if self.preset.is_some() {
            cfg.preset = self.preset.clone();
        }
        if self.relays.is_some() {
            cfg.relay_count = self.relays;
        }
        if self.scheme.is_some() {
            cfg.schemes = self.scheme.clone();
        }
        if self.method.is_some() {
            cfg.methods = self.method.clone();
        }
        if self.samples.is_some() {
            cfg.samples = self.samples;
        }
        if self.seed.is_some() {
            cfg.seed = self.seed;
        }
        if self.output.is_some() {
            cfg.output_path = self.output.clone();
        }
        if self.workers.is_some() {
            cfg.workers = self.workers;
        }
        if let Some(v) = &self.first_hop {
            cfg.custom_first_hop = Some(parse_list(v)?);
        }
        if let Some(v) = &self.second_hop {
            cfg.custom_second_hop = Some(parse_list(v)?);
        }
        if self.direct.is_some() {
            cfg.custom_direct = self.direct;
        }
        Ok(cfg)
    }
}

fn write_output(
    path: Option<&Path>,
    body: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> Result<(), SweepError> {
    match path {
        Some(path) => {
            let io_err = |source| SweepError::Io {
                path: path.display().to_string(),
                source,
            };
            let file = File::create(path).map_err(io_err)?;
            let mut w = BufWriter::new(file);
            body(&mut w).map_err(io_err)
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            body(&mut lock).map_err(|source| SweepError::Io {
                path: "<stdout>".into(),
                source,
            })
        }
    }
}

fn run(cli: Cli) -> Result<(), SweepError> {
    let file = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let cfg = cli.merge_into(file)?;
    let mut spec = SweepSpec::default();
    cfg.apply(&mut spec)?;
    if cfg.workers == Some(0) {
        return Err(SweepError::Validation("workers must be at least 1".into()));
    }
    spec.validate()?;

    let output = cfg.output_path.as_deref();
    if cli.gain {
        let rows = run_gain(&spec)?;
        write_output(output, |w| write_gain_csv(&rows, w))
    } else {
        let rows = with_workers(cfg.workers, || run_sweep(&spec))?;
        write_output(output, |w| write_csv(&rows, w))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("relaycap: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
