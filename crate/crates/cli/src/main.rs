//! Command-line front end: every operation of the library behind
//! reproducible, deterministic subcommands with JSON reports and CSV
//! data files.

mod commands;
mod config;
mod figures;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use config::ExperimentConfig;

#[derive(Parser)]
#[command(
    name = "modelset",
    version,
    about = "Model sets, Meyer sets, and arithmetic progressions with exact arithmetic"
)]
struct Cli {
    /// JSON config selecting the scheme, window, and defaults
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Physical region endpoints
    #[arg(long, global = true, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
    region: Option<Vec<f64>>,

    /// Directory for report and data files (reports also print to stdout)
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Seed feeding every random coloring
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,

    /// Decimal digits for extended-precision evaluation
    #[arg(long, global = true, value_name = "DIGITS")]
    precision: Option<u32>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the model set over a region and export it as CSV
    Generate,
    /// Construct a progression of a given length from a start point
    FindAp {
        /// Progression length (number of terms); falls back to the config
        #[arg(long)]
        k: Option<usize>,
        /// Start point as "m,n" meaning m + n*tau
        #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
        start: String,
        /// Search interval for the common difference
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
        search: Option<Vec<f64>>,
    },
    /// Check a claimed progression: equal steps, membership of every
    /// term, and admissibility of the difference
    CertifyAp {
        #[arg(long, allow_hyphen_values = true)]
        start: String,
        /// Common difference as "m,n"
        #[arg(long, allow_hyphen_values = true)]
        diff: String,
        #[arg(long)]
        k: usize,
    },
    /// The exact window of admissible differences for an anchor
    DiffWindow {
        #[arg(long, allow_hyphen_values = true)]
        start: String,
        /// Number of steps (terms minus one)
        #[arg(long)]
        n: usize,
    },
    /// Radius within which every ball contains an (n+1)-term progression
    BoundedGap {
        #[arg(long)]
        n: usize,
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
        test_region: Option<Vec<f64>>,
    },
    /// Exact van der Waerden number W(r, k) by backtracking
    VdwOracle {
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, default_value_t = 40)]
        n_max: u32,
    },
    /// Sampled certificate: monochromatic progressions in every ball
    VdwExperiment {
        #[arg(long)]
        r: Option<u8>,
        #[arg(long)]
        k: Option<u32>,
        /// Number of grid centers
        #[arg(long, default_value_t = 10)]
        centers: usize,
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true, default_values_t = [-500.0, 500.0])]
        center_range: Vec<f64>,
        /// Seeded random colorings to test alongside the threshold coloring
        #[arg(long, default_value_t = 1)]
        random_colorings: u64,
    },
    /// Relative denseness and difference-set discreteness report
    MeyerCheck {
        /// Uniform-discreteness scale
        #[arg(long, default_value_t = 1e-3)]
        threshold: f64,
    },
    /// Greedy finite cover of the window's model set by the sub-window's
    FindCover,
    /// Point densities along the averaging cubes
    Density {
        #[arg(long, default_value_t = 1000)]
        n_max: u64,
    },
    /// Translations with small symmetric-difference density
    AlmostPeriods {
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
        search: Vec<f64>,
        #[arg(long, default_value_t = 1000)]
        n_max: u64,
    },
    /// Density of n-fold translate intersections over the almost periods
    VerifyP6 {
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
        search: Vec<f64>,
        #[arg(long, default_value_t = 1000)]
        n_max: u64,
        #[arg(long, default_value_t = 0.02)]
        tol: f64,
    },
    /// Finite-n autocorrelation coefficients
    Autocorr {
        #[arg(long, default_value_t = 1000)]
        n_max: u64,
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true, default_values_t = [-10.0, 10.0])]
        zcap: Vec<f64>,
    },
    /// Residual scan proving the absence of three-term progressions
    No3ap {
        /// Size parameter of the perturbed-integer example (2n+1 points)
        #[arg(long, default_value_t = 100)]
        count: u32,
        /// Run the integer control instead (must fail with residual 0)
        #[arg(long)]
        control: bool,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Emit plot-ready data for the scheme picture and the five-term
    /// progression picture
    ReproduceFigures,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = e.print();
                    return ExitCode::SUCCESS;
                }
                ErrorKind::InvalidSubcommand | ErrorKind::UnknownArgument => 1,
                _ => 2,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}

pub(crate) struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<modelset_core::Error> for Failure {
    fn from(e: modelset_core::Error) -> Self {
        Failure {
            code: e.exit_code() as u8,
            message: e.to_string(),
        }
    }
}

impl Failure {
    pub fn config(message: String) -> Self {
        Failure { code: 2, message }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let config = match &cli.config {
        Some(path) => ExperimentConfig::load(path).map_err(Failure::config)?,
        None => ExperimentConfig::default(),
    };
    let region_flag = cli.region.as_ref().map(|v| [v[0], v[1]]);
    let resolved = config
        .resolve(region_flag, cli.seed, cli.precision)
        .map_err(Failure::config)?;
    let ctx = commands::Ctx {
        resolved,
        out: cli.out.clone(),
    };
    let report = match cli.command {
        Command::Generate => commands::generate(&ctx)?,
        Command::FindAp { k, start, search } => commands::find_ap(&ctx, k, &start, search)?,
        Command::CertifyAp { start, diff, k } => commands::certify_ap(&ctx, &start, &diff, k)?,
        Command::DiffWindow { start, n } => commands::diff_window(&ctx, &start, n)?,
        Command::BoundedGap { n, test_region } => commands::bounded_gap(&ctx, n, test_region)?,
        Command::VdwOracle { r, k, n_max } => commands::vdw_oracle(&ctx, r, k, n_max)?,
        Command::VdwExperiment {
            r,
            k,
            centers,
            center_range,
            random_colorings,
        } => commands::vdw_experiment(&ctx, r, k, centers, &center_range, random_colorings)?,
        Command::MeyerCheck { threshold } => commands::meyer_check(&ctx, threshold)?,
        Command::FindCover => commands::find_cover(&ctx)?,
        Command::Density { n_max } => commands::density(&ctx, n_max)?,
        Command::AlmostPeriods { eps, search, n_max } => {
            commands::almost_periods(&ctx, eps, &search, n_max)?
        }
        Command::VerifyP6 {
            eps,
            n,
            search,
            n_max,
            tol,
        } => commands::verify_p6(&ctx, eps, n, &search, n_max, tol)?,
        Command::Autocorr { n_max, zcap } => commands::autocorr(&ctx, n_max, &zcap)?,
        Command::No3ap {
            count,
            control,
            tol,
        } => commands::no3ap(&ctx, count, control, tol)?,
        Command::ReproduceFigures => figures::reproduce(&ctx)?,
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("serializable report")
    );
    if let Some(dir) = &ctx.out {
        std::fs::create_dir_all(dir)
            .map_err(|e| Failure::config(format!("cannot create {}: {e}", dir.display())))?;
        let path = dir.join("report.json");
        std::fs::write(&path, serde_json::to_string_pretty(&report).unwrap())
            .map_err(|e| Failure::config(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}
