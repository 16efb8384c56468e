//! `blockade`: tweezer spectra, loading fidelities and collision rates for
//! microwave-shielded molecules.

mod commands;
mod config;
mod error;
mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use blockade::Statistics;
use clap::{Parser, Subcommand};

use crate::config::{Format, Overrides, RunConfig, Scan};
use crate::error::CliError;
use crate::output::{write_table, Header};

#[derive(Parser, Debug)]
#[command(name = "blockade", version, about = "Interaction blockade loading of shielded molecules in optical tweezers")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// TOML run configuration; flags override its values.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Builtin species name (NaCs, KAg, FrAg).
    #[arg(long, global = true)]
    species: Option<String>,

    /// Tweezer waist in nm.
    #[arg(long, global = true, value_name = "NM")]
    waist: Option<f64>,

    /// Single tweezer depth in h·kHz.
    #[arg(long, global = true, value_name = "KHZ")]
    depth: Option<f64>,

    /// Depth scan in h·kHz: min,max,count[,log|linear].
    #[arg(long, global = true, value_name = "SCAN")]
    depth_scan: Option<Scan>,

    /// Temperature scan in nK: min,max,count[,log|linear].
    #[arg(long, global = true, value_name = "SCAN")]
    temp_scan: Option<Scan>,

    /// Single temperature in nK.
    #[arg(long, global = true, value_name = "NK")]
    temperature: Option<f64>,

    /// Reservoir number density in cm^-3.
    #[arg(long, global = true, value_name = "CM^-3")]
    density: Option<f64>,

    /// Reservoir phase-space density; replaces --density.
    #[arg(long, global = true, value_name = "RHO")]
    psd: Option<f64>,

    /// Reservoir statistics: classical or bose.
    #[arg(long, global = true)]
    statistics: Option<Statistics>,

    /// Largest partial wave l, L in the pair basis.
    #[arg(long, global = true)]
    l_max: Option<i32>,

    /// Largest pair J in thermodynamic sums.
    #[arg(long, global = true)]
    j_max: Option<i32>,

    /// Contracted radial functions per coordinate.
    #[arg(long, global = true)]
    contractions: Option<usize>,

    /// Output format: csv or json.
    #[arg(long, global = true)]
    format: Option<Format>,

    /// Output file; standard output when absent.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Worker threads; 0 uses every core.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Single and pair levels, ε and U, and the regime at each depth.
    Spectrum,
    /// Best-depth loading fidelity at each temperature.
    Fidelity,
    /// Fidelity at every depth for one temperature, marking the optimum.
    Optimize,
    /// Elastic cross sections and collision times.
    Rates,
    /// Builtin species parameters.
    Species,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Fidelity => "fidelity",
            Command::Optimize => "optimize",
            Command::Rates => "rates",
            Command::Species => "species",
        }
    }
}

impl Cli {
    fn overrides(&self) -> Overrides {
        Overrides {
            species: self.species.clone(),
            waist_nm: self.waist,
            depth_khz: self.depth,
            depth_scan: self.depth_scan,
            temp_scan: self.temp_scan,
            temperature_nk: self.temperature,
            density_cm3: self.density,
            psd: self.psd,
            statistics: self.statistics,
            l_max: self.l_max,
            j_max: self.j_max,
            n_contractions: self.contractions,
            format: self.format,
            out: self.out.clone(),
            jobs: self.jobs,
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    cfg.apply(&cli.overrides());
    cfg.validate()?;

    if cfg.output.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.output.jobs)
            .build_global()
            .map_err(|e| CliError::config(format!("cannot start {} workers: {e}", cfg.output.jobs)))?;
    }

    let table = match cli.command {
        Command::Spectrum => commands::spectrum(&cfg)?,
        Command::Fidelity => commands::fidelity(&cfg)?,
        Command::Optimize => commands::optimize(&cfg)?,
        Command::Rates => commands::rates(&cfg)?,
        Command::Species => commands::species(&cfg)?,
    };

    let config_toml = cfg.to_toml();
    let header = Header {
        command: cli.command.name(),
        config_toml: &config_toml,
        config_json: serde_json::to_value(&cfg).expect("config is always serializable"),
    };
    let mut sink: Box<dyn Write> = match &cfg.output.path {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    write_table(&mut sink, cfg.output.format, &header, &table)?;
    sink.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
