use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use irs_route::commands::{self, parse_size, Overrides};
use irs_route::CliError;

#[derive(Parser)]
#[command(name = "irs-route", version, about = "Optimal beam routing through multiple IRSs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Scenario file
    scenario: PathBuf,
    /// Override the IRS rows M1
    #[arg(long)]
    m1: Option<usize>,
    /// Override the IRS columns M2
    #[arg(long)]
    m2: Option<usize>,
    /// Replace the LoS policy with a distance threshold in meters
    #[arg(long)]
    threshold: Option<f64>,
    /// Write to this file instead of stdout
    #[arg(long, short)]
    output: Option<PathBuf>,
}

impl Common {
    fn overrides(&self) -> Overrides {
        Overrides { irs_rows: self.m1, irs_cols: self.m2, threshold_m: self.threshold }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Optimal route and its channel power
    Solve {
        #[command(flatten)]
        common: Common,
        /// Print the phase shifts of every IRS on the route
        #[arg(long)]
        phases: bool,
        /// Cross-check against the direct matrix product (M <= 256)
        #[arg(long)]
        verify: bool,
    },
    /// CSV comparison of all schemes over IRS sizes
    Sweep {
        #[command(flatten)]
        common: Common,
        /// IRS size as M1xM2; repeat for more sizes
        #[arg(long = "m", value_parser = parse_size, required = true)]
        sizes: Vec<(usize, usize)>,
    },
    /// Routing graph in Graphviz DOT
    ExportGraph {
        #[command(flatten)]
        common: Common,
    },
    /// Table of all schemes at the scenario size or the given sizes
    Benchmarks {
        #[command(flatten)]
        common: Common,
        #[arg(long = "m", value_parser = parse_size)]
        sizes: Vec<(usize, usize)>,
    },
}

fn run(command: Command) -> Result<(), CliError> {
    let (common, text) = match command {
        Command::Solve { common, phases, verify } => {
            let s = commands::load_scenario(&common.scenario, &common.overrides())?;
            let text = commands::run_solve(&s, phases, verify)?;
            (common, text)
        }
        Command::Sweep { common, sizes } => {
            let s = commands::load_scenario(&common.scenario, &common.overrides())?;
            let text = commands::run_sweep(&s, &sizes)?;
            (common, text)
        }
        Command::ExportGraph { common } => {
            let s = commands::load_scenario(&common.scenario, &common.overrides())?;
            (common, commands::run_export_graph(&s))
        }
        Command::Benchmarks { common, sizes } => {
            let s = commands::load_scenario(&common.scenario, &common.overrides())?;
            let text = commands::run_benchmarks(&s, &sizes)?;
            (common, text)
        }
    };
    commands::write_output(common.output.as_deref().map(Path::new), &text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
