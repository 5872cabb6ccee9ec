use clap::{Parser, Subcommand};
use dhlc_cli::commands::{self, OpArg, Sl2Request, DEFAULT_CSV_SAMPLES};
use dhlc_cli::gallery::{self, GalleryConfig};
use dhlc_cli::{CliError, Format, Outcome, DEFAULT_SEED};
use std::path::PathBuf;
use std::process::ExitCode;

/// Exact Duistermaat-Heckman densities, log-concavity certificates and
/// Lefschetz sl(2) checks on toric models.
///
/// Exit codes: 0 success, 1 negative verdict or gallery failure, 2
/// operational or schema error, 3 non-generic projection.
#[derive(Parser)]
#[command(name = "dhlc", version)]
struct Cli {
    /// Seed for Monte-Carlo estimates and random sweeps.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format; `mc` defaults to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact density of a rank-one model.
    Dh {
        model: PathBuf,
        /// Projection rows, e.g. `1,1` or `1,0;0,1`.
        #[arg(long)]
        projection: Option<String>,
        /// Number of points in the csv sample table.
        #[arg(long, default_value_t = DEFAULT_CSV_SAMPLES)]
        samples: usize,
    },
    /// Log-concavity verdict of a density or model, or the circle decision chain.
    Check {
        input: PathBuf,
        /// Treat the input as a circle-valued density.
        #[arg(long)]
        circle: bool,
        /// JSON array of critical levels with their fixed-point data.
        #[arg(long, requires = "circle")]
        criticals: Option<PathBuf>,
        /// Projection rows when the input is a model.
        #[arg(long)]
        projection: Option<String>,
    },
    /// Fixed-point data and predicted versus measured jumps.
    Jump {
        model: PathBuf,
        #[arg(long)]
        projection: Option<String>,
        /// Report only this level.
        #[arg(long)]
        level: Option<String>,
    },
    /// Intersect a polytope with halfspaces.
    Cut {
        polytope: PathBuf,
        /// A halfspace object or an array of them.
        #[arg(long)]
        halfspaces: PathBuf,
    },
    /// Seeded Monte-Carlo density estimate.
    Mc {
        model: PathBuf,
        #[arg(long)]
        projection: Option<String>,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        /// Sample point, comma-separated coordinates; repeatable.
        #[arg(long)]
        at: Vec<String>,
        /// Number of interior points when --at is absent (rank one only).
        #[arg(long, default_value_t = 20)]
        points: usize,
    },
    /// Exterior-algebra operations on a form file.
    Sl2 {
        #[command(subcommand)]
        action: Sl2Action,
    },
    /// Run the curated gallery against its golden files.
    Gallery {
        /// Only run cases whose name contains this string.
        #[arg(long)]
        filter: Option<String>,
        /// Rewrite the golden files from this run.
        #[arg(long)]
        update_golden: bool,
        #[arg(long)]
        golden_dir: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Sl2Action {
    /// Apply L, Lambda or H.
    Apply {
        form: PathBuf,
        #[arg(long, value_enum)]
        op: OpArg,
    },
    /// Whether the form is primitive.
    Primitive {
        form: PathBuf,
    },
    /// Lefschetz decomposition into primitive components.
    Decompose {
        form: PathBuf,
    },
    /// Hodge star in dimension 4.
    Star {
        form: PathBuf,
    },
    /// Check the Weil identity on a primitive (1,1)-form.
    Weil {
        form: PathBuf,
    },
    /// Check the key inequality for c = gamma + s omega.
    Key {
        form: PathBuf,
        /// Rational coefficient of omega.
        #[arg(long)]
        s: String,
    },
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let json_default = cli.format.unwrap_or(Format::Json);
    match cli.command {
        Command::Dh { model, projection, samples } => commands::dh(&model, projection.as_deref(), samples, json_default),
        Command::Check { input, circle: true, criticals, .. } => commands::check_circle(&input, criticals.as_deref()),
        Command::Check { input, projection, .. } => commands::check_line(&input, projection.as_deref()),
        Command::Jump { model, projection, level } => commands::jump(&model, projection.as_deref(), level.as_deref()),
        Command::Cut { polytope, halfspaces } => commands::cut_cmd(&polytope, &halfspaces, json_default),
        Command::Mc { model, projection, samples, at, points } => commands::mc(
            &model,
            projection.as_deref(),
            samples,
            &at,
            points,
            cli.seed,
            cli.format.unwrap_or(Format::Csv),
        ),
        Command::Sl2 { action } => {
            let (form, request) = match action {
                Sl2Action::Apply { form, op } => (form, Sl2Request::Apply(op)),
                Sl2Action::Primitive { form } => (form, Sl2Request::Primitive),
                Sl2Action::Decompose { form } => (form, Sl2Request::Decompose),
                Sl2Action::Star { form } => (form, Sl2Request::Star),
                Sl2Action::Weil { form } => (form, Sl2Request::Weil),
                Sl2Action::Key { form, s } => (form, Sl2Request::Key(s)),
            };
            commands::sl2(&form, &request)
        }
        Command::Gallery { filter, update_golden, golden_dir } => {
            let config = GalleryConfig {
                seed: cli.seed,
                filter,
                golden_dir: golden_dir.unwrap_or_else(gallery::default_golden_dir),
                update_golden,
            };
            let report = gallery::run(&config)?;
            let text = match json_default {
                Format::Json if cli.format.is_some() => report.render_json(),
                _ => report.render_text(),
            };
            Ok(Outcome { text, negative: !report.passed() })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    match run(cli) {
        Ok(outcome) => {
            if let Some(path) = out {
                if let Err(e) = std::fs::write(&path, &outcome.text) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{}", outcome.text);
            }
            ExitCode::from(outcome.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
