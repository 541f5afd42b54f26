use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cli_reporting::{
    cmd_invariants, cmd_numeric, cmd_verify_example, parse_grid, CliError, NumericCheck, NumericOptions, RecipeFile,
    Report,
};

const DEFAULT_SEED: u64 = 1;

#[derive(Parser)]
#[command(version, about = "Exact and numerical Hitchin-Thorpe checks for multi-Taub-NUT quotients")]
struct Cli {
    /// Emit the flat JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for sampled points (printed in every report).
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact χ, τ, corrected τ, gap and verdict of a recipe file.
    Invariants { file: PathBuf },
    /// Tabulate a worked example against its closed-form values.
    Verify {
        #[arg(long)]
        example: u8,
        #[arg(long, default_value_t = 8)]
        kmax: u32,
        #[arg(long, default_value_t = 10)]
        lmax: u32,
    },
    /// Run a numerical check.
    Numeric {
        #[arg(value_enum)]
        check: NumericCheck,
        /// Recipe file whose [numeric] section supplies defaults.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        k: Option<usize>,
        /// Middle outer radius of the integration sweep.
        #[arg(long)]
        radius: Option<f64>,
        /// RADIALxPOLARxAZIMUTHAL node counts.
        #[arg(long)]
        grid: Option<String>,
        /// Comma-separated decreasing ε values.
        #[arg(long, value_delimiter = ',')]
        eps: Option<Vec<f64>>,
        #[arg(long)]
        points: Option<usize>,
        /// Finite-difference step as a fraction of the coordinate scale.
        #[arg(long)]
        step: Option<f64>,
        /// Collar preset name.
        #[arg(long)]
        collar: Option<String>,
    },
}

/// Failure with the file it came from, so parse errors print as `path:line:col`.
struct Failure(Option<PathBuf>, CliError);

impl From<CliError> for Failure {
    fn from(e: CliError) -> Self {
        Failure(None, e)
    }
}

fn load(path: &Path) -> Result<RecipeFile, Failure> {
    RecipeFile::load(path).map_err(|e| match e {
        CliError::Parse { .. } => Failure(Some(path.to_path_buf()), e),
        e => Failure(None, e),
    })
}

fn run(cli: Cli) -> Result<Report, Failure> {
    match cli.command {
        Command::Invariants { file } => {
            let recipe = load(&file)?;
            Ok(cmd_invariants(&recipe, cli.seed.unwrap_or(DEFAULT_SEED))?)
        }
        Command::Verify { example, kmax, lmax } => {
            Ok(cmd_verify_example(example, kmax, lmax, cli.seed.unwrap_or(DEFAULT_SEED))?)
        }
        Command::Numeric {
            check,
            config,
            k,
            radius,
            grid,
            eps,
            points,
            step,
            collar,
        } => {
            let mut opts = match config {
                Some(path) => NumericOptions::from_section(&load(&path)?.numeric.unwrap_or_default())?,
                None => NumericOptions::default(),
            };
            if let Some(k) = k {
                opts.k = k;
                opts.monopoles = None;
            }
            if let Some(r) = radius {
                opts.radius = r;
            }
            if let Some(g) = grid {
                opts.grid = parse_grid(&g)?;
            }
            if let Some(e) = eps {
                opts.eps = e;
            }
            opts.points = points.or(opts.points);
            if let Some(s) = step {
                opts.step_fraction = s;
            }
            if collar.is_some() {
                opts.collar = collar;
            }
            if let Some(s) = cli.seed {
                opts.seed = s;
            }
            Ok(cmd_numeric(check, &opts)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(report) => {
            if json {
                print!("{}", report.to_json());
            } else {
                print!("{}", report.render());
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(Failure(path, e)) => {
            match path {
                Some(p) => eprintln!("error: {}:{}", p.display(), e),
                None => eprintln!("error: {}", e),
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
