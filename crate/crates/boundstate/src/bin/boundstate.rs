//! Thin command-line front end over the `boundstate` library.

use boundstate::cli;
use boundstate::eigensolver::SolverConfig;
use clap::{Parser, Subcommand};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "boundstate",
    version,
    about = "Bound-state analysis: uncertainty products with divergence \
             classification, inverse potential construction, and a Numerov \
             eigensolver"
)]
struct Cli {
    /// Quadrature tolerance (overrides the manifest and BOUNDSTATE_TOL;
    /// default 1e-8)
    #[arg(long, global = true, allow_negative_numbers = true)]
    tol: Option<f64>,

    /// Value of hbar (overrides the manifest; default 1)
    #[arg(long, global = true, allow_negative_numbers = true)]
    hbar: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute moment, uncertainty, and decay reports for manifest states
    Analyze {
        /// Manifest file listing the states (see README for the format)
        #[arg(long)]
        manifest: PathBuf,
    },
    /// Reconstruct the potential behind each manifest state
    Invert {
        #[arg(long)]
        manifest: PathBuf,
        /// Window as two numbers: lower and upper edge
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
        range: Vec<f64>,
        /// Number of grid points
        #[arg(long, default_value_t = 601)]
        points: usize,
        /// Eigenvalue assigned to the source state (energy offset of V)
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        gauge: f64,
    },
    /// Solve bound states of a confining potential by Numerov shooting
    Solve {
        /// Potential V(x) as an expression, e.g. "x^2"
        #[arg(long)]
        potential: String,
        /// Comma-separated state indices, e.g. 0,1,2
        #[arg(long, value_delimiter = ',')]
        states: Vec<usize>,
        #[arg(long, default_value_t = -8.0, allow_negative_numbers = true)]
        x_min: f64,
        #[arg(long, default_value_t = 8.0, allow_negative_numbers = true)]
        x_max: f64,
        /// Grid step; (x_max - x_min)/step must be an integer >= 100
        #[arg(long, default_value_t = 1.0 / 512.0)]
        step: f64,
        /// Lower edge of the energy search bracket
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        energy_lo: f64,
        /// Upper edge of the energy search bracket
        #[arg(long, default_value_t = 12.0, allow_negative_numbers = true)]
        energy_hi: f64,
        #[arg(long, default_value_t = 1e-9)]
        energy_tol: f64,
        #[arg(long, default_value_t = 128)]
        max_bisections: u32,
        /// Output directory
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Reproduce the reference figures and value table
    Paper {
        /// Output directory for fig1a/b/c.csv and paper_report.json
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // Usage problems are input errors (exit 1); --help/--version are
            // not errors.
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => cli::EXIT_INPUT_ERROR,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let code = match cli.command {
        Command::Analyze { manifest } => cli::cmd_analyze(&manifest, cli.tol, cli.hbar),
        Command::Invert { manifest, range, points, gauge } => cli::cmd_invert(
            &manifest,
            (range[0], range[1]),
            points,
            gauge,
            cli.tol,
            cli.hbar,
        ),
        Command::Solve {
            potential,
            states,
            x_min,
            x_max,
            step,
            energy_lo,
            energy_hi,
            energy_tol,
            max_bisections,
            out,
        } => {
            let cfg = SolverConfig {
                x_min,
                x_max,
                step,
                energy_bracket: (energy_lo, energy_hi),
                energy_tol,
                max_bisections,
            };
            cli::cmd_solve(&potential, &states, &cfg, &out)
        }
        Command::Paper { out } => cli::cmd_paper(&out, cli.tol),
    };
    std::process::exit(code);
}
