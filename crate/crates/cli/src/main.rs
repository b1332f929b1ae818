mod commands;
mod error;
mod record;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::CompareSettings;
use crate::error::CliError;

const THREADS_ENV: &str = "EULER_CENSUS_THREADS";

#[derive(Debug, Parser)]
#[command(name = "euler-census", version, about = "Eulerian circuit counts: asymptotic formula against exact and integral estimates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct MethodArgs {
    /// Comma-separated subset of formula,exact,mc,quadrature.
    #[arg(long, default_value = "formula,exact")]
    methods: String,
    #[arg(long, default_value_t = 0.05)]
    epsilon: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Monte Carlo draws.
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    /// Search nodes allowed for the exact count.
    #[arg(long, default_value_t = 1_000_000_000)]
    node_budget: u64,
    /// Quadrature points per axis before refinement.
    #[arg(long, default_value_t = 16)]
    grid: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validation, spectrum and K_ec of a graph file.
    Analyze { file: PathBuf },
    /// Compare the formula with the selected methods on one graph.
    Compare {
        file: PathBuf,
        #[command(flatten)]
        args: MethodArgs,
    },
    /// Compare across a graph family; writes CSV.
    Sweep {
        /// kn, cycle or random-even.
        #[arg(long)]
        family: String,
        /// Vertex counts, e.g. `3,5,7` or `4..8`.
        #[arg(long)]
        n: String,
        /// Edge probability for random-even.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        args: MethodArgs,
    },
    /// Write a random connected even-degree graph.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn workers() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(w) if w > 0 => Ok(Some(w)),
            _ => Err(CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got '{v}'"))),
        },
        Err(_) => Ok(None),
    }
}

fn settings(args: &MethodArgs) -> Result<CompareSettings, CliError> {
    Ok(CompareSettings {
        methods: commands::parse_methods(&args.methods)?,
        epsilon: args.epsilon,
        seed: args.seed,
        samples: args.samples,
        node_budget: args.node_budget,
        grid: args.grid,
        workers: workers()?,
    })
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<(), CliError> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out).map_err(|e| CliError::Output(e.to_string()))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze { file } => {
            let g = commands::read_graph(&file)?;
            print_json(&commands::analyze(&g)?)
        }
        Command::Compare { file, args } => {
            let s = settings(&args)?;
            let g = commands::read_graph(&file)?;
            let id = file.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            let record = commands::compare(&id, &g, &s)?;
            if record.ln_ec_mc.is_some() {
                eprintln!("note: mc estimate omits the exp(-c n^(2 eps)) tail outside the box; c is unknown");
            }
            print_json(&record)
        }
        Command::Sweep { family, n, p, out, args } => {
            commands::check_family(&family)?;
            let ns = commands::parse_n_list(&n)?;
            let s = settings(&args)?;
            let rows = commands::sweep(&family, &ns, p, args.seed, &s);
            match out {
                Some(path) => {
                    let file = fs::File::create(&path).map_err(|source| CliError::Write { path, source })?;
                    commands::write_csv(&rows, file)
                }
                None => commands::write_csv(&rows, io::stdout().lock()),
            }
        }
        Command::Gen { n, p, seed, out } => {
            let text = commands::generate(n, p, seed)?;
            fs::write(&out, text).map_err(|source| CliError::Write { path: out, source })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
