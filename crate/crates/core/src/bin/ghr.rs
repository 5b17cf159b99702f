use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gh_realize::cli::{run, Command, RunConfig};
use gh_realize::correspondence::Method;

#[derive(Parser)]
#[command(name = "ghr", version, about = "Gromov-Hausdorff distances and realized rectilinear geodesics")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long = "grid", global = true, default_value_t = 11)]
    grid_size: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 1000)]
    iterations: usize,
    #[arg(long, global = true, default_value_t = 8)]
    restarts: usize,
    /// Vertical scale of the product metric instead of half the distortion.
    #[arg(long = "c", global = true)]
    c_override: Option<f64>,
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Sub {
    /// Validate a space file and report its kind and worst triangle deficit.
    Validate { space: PathBuf },
    /// Hausdorff distance between two index subsets of one space.
    Hausdorff {
        space: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<usize>,
    },
    /// Gromov-Hausdorff distance with a witness correspondence.
    Dist {
        x: PathBuf,
        y: PathBuf,
        #[arg(long, conflicts_with = "heuristic")]
        exact: bool,
        #[arg(long)]
        heuristic: bool,
    },
    /// Export the geodesic slice at parameter t.
    Geodesic {
        x: PathBuf,
        y: PathBuf,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        corr: Option<PathBuf>,
    },
    /// Build and certify the product realization of the geodesic.
    Realize {
        x: PathBuf,
        y: PathBuf,
        #[arg(long)]
        corr: Option<PathBuf>,
        /// Build even when the product hypotheses fail.
        #[arg(long)]
        force: bool,
    },
    /// Re-verify a saved product.
    Verify { product: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match cli.command {
        Sub::Validate { space } => Command::Validate { space },
        Sub::Hausdorff { space, a, b } => Command::Hausdorff { space, a, b },
        Sub::Dist { x, y, heuristic, .. } => {
            Command::Dist { x, y, method: if heuristic { Method::Heuristic } else { Method::Exact } }
        }
        Sub::Geodesic { x, y, t, corr } => Command::Geodesic { x, y, t, corr },
        Sub::Realize { x, y, corr, force } => Command::Realize { x, y, corr, force },
        Sub::Verify { product } => Command::Verify { product },
    };
    let c = cli.common;
    let config = RunConfig {
        command,
        tol: c.tol,
        grid_size: c.grid_size,
        seed: c.seed,
        iterations: c.iterations,
        restarts: c.restarts,
        c_override: c.c_override,
        output: c.output,
    };
    let outcome = run(&config);
    if !outcome.stdout.is_empty() {
        println!("{}", outcome.stdout);
    }
    if let Some(err) = outcome.error {
        eprintln!("error: {err}");
    }
    ExitCode::from(outcome.exit_code as u8)
}
