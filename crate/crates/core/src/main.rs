use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use smtjsim::harness::{
    cmd_edp, cmd_montecarlo, cmd_scaling, cmd_search, cmd_transfer, exit_code, EdpArgs,
    MonteCarloArgs, Outcome, RunConfig, ScalingArgs, SearchArgs, TransferArgs, EXIT_ASSERTION,
};

#[derive(Parser)]
#[command(
    name = "smtjsim",
    version,
    about = "Skewed straintronic MTJ and TCAM simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// JSON run configuration
    #[arg(long)]
    config: PathBuf,
    /// Overrides `output_dir` and $SMTJSIM_OUTPUT_DIR
    #[arg(long)]
    output_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Transfer curves and valley shape
    Transfer {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        v1: Option<f64>,
        /// Repeat for several curves
        #[arg(long)]
        v3: Vec<f64>,
        #[arg(long)]
        temperature: Option<f64>,
        #[arg(long)]
        points: Option<usize>,
    },
    /// Search stored words
    Search {
        #[command(flatten)]
        common: Common,
        /// Stored words, one per line
        #[arg(long)]
        words: Option<PathBuf>,
        /// Search word over {0,1,X}; repeat for several
        #[arg(long, required = true)]
        search: Vec<String>,
    },
    /// Rotation-sense statistics under thermal noise
    Montecarlo {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        temperature: Option<f64>,
        /// Exit with code 3 if any trajectory turns anticlockwise
        #[arg(long)]
        assert_chirality: bool,
    },
    /// Column margin against word length
    Scaling {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Energy-delay product against clock frequency
    Edp {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        f_min: Option<f64>,
        #[arg(long)]
        f_max: Option<f64>,
        #[arg(long)]
        points: Option<usize>,
    },
}

fn run(cli: Cli) -> smtjsim::Result<Outcome> {
    let common = match &cli.command {
        Command::Transfer { common, .. }
        | Command::Search { common, .. }
        | Command::Montecarlo { common, .. }
        | Command::Scaling { common, .. }
        | Command::Edp { common, .. } => common,
    };
    let cfg = RunConfig::load(&common.config)?;
    let dir = cfg.output_dir(common.output_dir.as_deref());
    match cli.command {
        Command::Transfer {
            v1,
            v3,
            temperature,
            points,
            ..
        } => cmd_transfer(
            &cfg,
            &dir,
            &TransferArgs {
                v1,
                v3,
                temperature,
                points,
            },
        ),
        Command::Search { words, search, .. } => {
            cmd_search(&cfg, &dir, &SearchArgs { words, search })
        }
        Command::Montecarlo {
            trials,
            seed,
            temperature,
            assert_chirality,
            ..
        } => cmd_montecarlo(
            &cfg,
            &dir,
            &MonteCarloArgs {
                trials,
                seed,
                temperature,
                assert_chirality,
            },
        ),
        Command::Scaling { n_max, .. } => cmd_scaling(&cfg, &dir, &ScalingArgs { n_max }),
        Command::Edp {
            f_min,
            f_max,
            points,
            ..
        } => cmd_edp(
            &cfg,
            &dir,
            &EdpArgs {
                f_min,
                f_max,
                points,
            },
        ),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            for line in &out.lines {
                println!("{line}");
            }
            for f in &out.files {
                println!("wrote {}", f.display());
            }
            if out.assertion_failed {
                ExitCode::from(EXIT_ASSERTION as u8)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
