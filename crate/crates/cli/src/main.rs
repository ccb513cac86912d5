//! `ringfloquet` — spectra, fields, currents and feasibility scans of a
//! quantum ring threaded by an oscillating magnetic flux.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource
//! limit.  `RINGFLOQUET_THREADS` caps internal parallelism.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod config;
mod manifest;
mod svg;

/// Command error carrying its process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    pub fn verification(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }

    pub fn resource(message: impl Into<String>) -> Self {
        Self {
            code: 3,
            message: message.into(),
        }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }

    pub fn from_core(err: ringfloquet::Error) -> Self {
        match err {
            ringfloquet::Error::Resource(_) => Self::resource(err.to_string()),
            _ => Self::usage(err.to_string()),
        }
    }

    pub fn io(context: &str, err: std::io::Error) -> Self {
        Self::internal(format!("{context}: {err}"))
    }
}

#[derive(Parser)]
#[command(
    name = "ringfloquet",
    version,
    about = "Quasi-energy sidebands of a flux-driven quantum ring"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Weight table, quasi-energy spectrum and stem plot for one mode.
    Spectrum(SpectrumArgs),
    /// Run the verification checks (oracle triangle, Parseval, parity,
    /// peak law, static limit, phase ODE).
    Verify(VerifyArgs),
    /// Exact and low-frequency solenoid field profiles.
    Fields(FieldsArgs),
    /// Loop current over time.
    Current(CurrentArgs),
    /// Feasibility grid over (R, omega) with optional window scan.
    Feasibility(FeasibilityArgs),
    /// Regenerate every figure dataset (weight tables, spectra, diagram).
    Figures(FiguresArgs),
}

#[derive(Args)]
struct SpectrumArgs {
    /// Physical configuration file (key = value).
    #[arg(long, conflicts_with_all = ["n", "alpha", "beta", "flux_ratio"])]
    config: Option<PathBuf>,
    /// Angular-momentum quantum number (dimensionless mode).
    #[arg(long)]
    n: Option<i64>,
    /// sin(wt) drive strength (dimensionless mode, n != 0).
    #[arg(long)]
    alpha: Option<f64>,
    /// sin(2wt) drive strength (dimensionless mode).
    #[arg(long)]
    beta: Option<f64>,
    /// Flux ratio; with --alpha it fixes beta = flux_ratio*alpha/(8n).
    #[arg(long = "flux-ratio")]
    flux_ratio: Option<f64>,
    /// Smallest |C_r| emitted into the JSON spectrum.
    #[arg(long, default_value_t = 1e-6)]
    floor: f64,
    #[arg(long = "out-csv")]
    out_csv: Option<PathBuf>,
    #[arg(long = "out-json")]
    out_json: Option<PathBuf>,
    #[arg(long = "out-svg")]
    out_svg: Option<PathBuf>,
    /// Run manifest path (always written, last).
    #[arg(long, default_value = "spectrum_manifest.json")]
    manifest: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    /// quick (seconds) or full (adds the large-beta closed-form/DFT check).
    #[arg(long, default_value = "quick")]
    suite: String,
    /// Where JSON reports are written.
    #[arg(long = "out-dir", default_value = "verify_out")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct FieldsArgs {
    #[arg(long)]
    config: PathBuf,
    /// Observation radii, metres.
    #[arg(long = "rho-min")]
    rho_min: f64,
    #[arg(long = "rho-max")]
    rho_max: f64,
    #[arg(long = "rho-points", default_value_t = 200)]
    rho_points: usize,
    /// Sample time, seconds.
    #[arg(long, default_value_t = 0.0)]
    time: f64,
    #[arg(long = "out-csv")]
    out_csv: PathBuf,
    /// Low-frequency defect per radius: `rho_m,k_rho,approx_error`.
    #[arg(long = "out-error-csv")]
    out_error_csv: Option<PathBuf>,
    #[arg(long = "out-svg")]
    out_svg: Option<PathBuf>,
    #[arg(long, default_value = "fields_manifest.json")]
    manifest: PathBuf,
}

#[derive(Args)]
struct CurrentArgs {
    #[arg(long)]
    config: PathBuf,
    /// How many drive periods to sample (one period when omega = 0).
    #[arg(long, default_value_t = 2.0)]
    periods: f64,
    #[arg(long, default_value_t = 512)]
    points: usize,
    #[arg(long = "out-csv")]
    out_csv: PathBuf,
    #[arg(long = "out-svg")]
    out_svg: Option<PathBuf>,
    #[arg(long, default_value = "current_manifest.json")]
    manifest: PathBuf,
}

#[derive(Args)]
struct FeasibilityArgs {
    #[arg(long = "flux-ratio", default_value_t = 1.0)]
    flux_ratio: f64,
    #[arg(long, default_value_t = 1)]
    n: i64,
    #[arg(long = "radius-min", default_value_t = 1e-7)]
    radius_min: f64,
    #[arg(long = "radius-max", default_value_t = 1e-3)]
    radius_max: f64,
    #[arg(long = "omega-min", default_value_t = 10.0)]
    omega_min: f64,
    #[arg(long = "omega-max", default_value_t = 1000.0)]
    omega_max: f64,
    #[arg(long = "radius-points", default_value_t = 25)]
    radius_points: usize,
    #[arg(long = "omega-points", default_value_t = 25)]
    omega_points: usize,
    /// Target |alpha| window `LO:HI`; with --beta-window, ranks matches.
    #[arg(long = "alpha-window")]
    alpha_window: Option<String>,
    /// Target beta window `LO:HI`.
    #[arg(long = "beta-window")]
    beta_window: Option<String>,
    #[arg(long = "out-csv")]
    out_csv: PathBuf,
    #[arg(long = "out-svg")]
    out_svg: Option<PathBuf>,
    #[arg(long, default_value = "feasibility_manifest.json")]
    manifest: PathBuf,
}

#[derive(Args)]
struct FiguresArgs {
    #[arg(long = "out-dir", default_value = "figures")]
    out_dir: PathBuf,
}

fn configure_threads() {
    if let Ok(value) = std::env::var("RINGFLOQUET_THREADS") {
        if let Ok(threads) = value.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(threads.max(1))
                .build_global();
        } else {
            eprintln!("warning: ignoring unparsable RINGFLOQUET_THREADS={value}");
        }
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Spectrum(args) => commands::spectrum::run(&args),
        Command::Verify(args) => commands::verify::run(&args),
        Command::Fields(args) => commands::fields::run(&args),
        Command::Current(args) => commands::current::run(&args),
        Command::Feasibility(args) => commands::feasibility::run(&args),
        Command::Figures(args) => commands::figures::run(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
