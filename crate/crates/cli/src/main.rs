use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ddcap::bounds::{cmd_bounds, Family};
use ddcap::config::CONFIG_ENV;
use ddcap::figure::cmd_figure1;
use ddcap::oracle::{cmd_oracle, Suite};
use ddcap::simulate::cmd_simulate;
use ddcap::{Failure, RunConfig};

/// Capacity bounds for deletion-duplication channels.
#[derive(Debug, Parser)]
#[command(name = "ddcap", version)]
struct Cli {
    /// TOML file with RunConfig keys; flags override it.
    #[arg(long, env = CONFIG_ENV, global = true)]
    config: Option<PathBuf>,
    /// p-grid as start:stop:count (or a single value).
    #[arg(long, global = true)]
    p: Option<String>,
    #[arg(long, global = true)]
    tail_tol: Option<f64>,
    #[arg(long, global = true)]
    alpha_tol: Option<f64>,
    #[arg(long, global = true)]
    i_max: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output file (directory for figure1). Defaults to stdout / ".".
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate named bounds over the p-grid.
    Bounds {
        #[arg(long)]
        family: String,
        /// Comma-separated bound names.
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<String>,
    },
    /// Run a brute-force suite: equivalence, monotonicity, mi or entropy.
    Oracle {
        #[arg(long)]
        suite: String,
    },
    /// Write figure1_bdc.csv and figure1_sticky.csv.
    Figure1,
    /// Sample output lengths N_n/n.
    Simulate {
        #[arg(long, default_value_t = 0.0)]
        p_i: f64,
        #[arg(long, default_value_t = 0.0)]
        p_d: f64,
        #[arg(long, default_value_t = 100_000)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: u64,
    },
}

fn config(cli: &Cli) -> Result<RunConfig, Failure> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(p) = &cli.p {
        cfg.p = Some(p.clone());
    }
    if let Some(v) = cli.tail_tol {
        cfg.tail_tol = v;
    }
    if let Some(v) = cli.alpha_tol {
        cfg.alpha_tol = v;
    }
    if let Some(v) = cli.i_max {
        cfg.i_max = v;
    }
    if let Some(v) = cli.seed {
        cfg.seed = v;
    }
    if let Some(v) = &cli.out {
        cfg.out = Some(v.clone());
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cfg = config(&cli)?;
    let out = cfg.out.as_deref();
    match cli.command {
        Command::Bounds { family, set } => {
            cmd_bounds(&cfg, family.parse::<Family>()?, &set)?.write(out)
        }
        Command::Oracle { suite } => {
            let (table, pass) = cmd_oracle(&cfg, suite.parse::<Suite>()?)?;
            table.write(out)?;
            if pass {
                Ok(())
            } else {
                Err(Failure::Oracle(format!("suite {suite} has failing cases")))
            }
        }
        Command::Figure1 => {
            let dir = out.map(PathBuf::from).unwrap_or_else(|| PathBuf::from("."));
            let (a, b) = cmd_figure1(&cfg, &dir)?;
            eprintln!("wrote {} and {}", a.display(), b.display());
            Ok(())
        }
        Command::Simulate {
            p_i,
            p_d,
            n,
            trials,
        } => cmd_simulate(&cfg, p_i, p_d, n, trials)?.write(out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ddcap: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
