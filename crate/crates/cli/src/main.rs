use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use zassenhaus_cli::commands::{
    cmd_bench, cmd_compute, cmd_verify, BenchConfig, ComputeConfig, VerifyConfig,
};
use zassenhaus_cli::format::{Format, Representation};
use zassenhaus_cli::CliError;
use zassenhaus_core::budget::Budget;
use zassenhaus_core::engine::SeriesKind;

#[derive(Debug, Parser)]
#[command(
    name = "zassenhaus",
    version,
    about = "Exact Zassenhaus exponents and BCH terms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute one order and print it.
    Compute {
        #[arg(long, value_enum, default_value_t = Kind::Zassenhaus)]
        kind: Kind,
        #[arg(long)]
        order: usize,
        #[arg(long = "rep", value_enum, default_value_t = Representation::Words)]
        representation: Representation,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        storage: Storage,
    },
    /// Check every order up to a maximum against all invariants, translations and the oracle.
    Verify {
        #[arg(long)]
        max_order: usize,
        #[command(flatten)]
        storage: Storage,
    },
    /// Time a cold computation of orders 2..=max-order.
    Bench {
        #[arg(long, value_enum, default_value_t = Kind::Zassenhaus)]
        kind: Kind,
        #[arg(long)]
        max_order: usize,
        #[command(flatten)]
        limits: Limits,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Zassenhaus,
    Bch,
}

impl From<Kind> for SeriesKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Zassenhaus => SeriesKind::Zassenhaus,
            Kind::Bch => SeriesKind::Bch,
        }
    }
}

#[derive(Debug, Args)]
struct Storage {
    /// Directory holding one file per computed order.
    #[arg(long, env = "ZASSENHAUS_CACHE")]
    cache: Option<PathBuf>,
    #[command(flatten)]
    limits: Limits,
}

#[derive(Debug, Args)]
struct Limits {
    /// Stop once peak resident memory exceeds this many megabytes.
    #[arg(long, env = "ZASSENHAUS_BUDGET_MEM_MB")]
    budget_mem: Option<u64>,
    /// Stop once this many seconds have elapsed.
    #[arg(long, env = "ZASSENHAUS_BUDGET_TIME_SEC")]
    budget_time: Option<f64>,
}

impl Limits {
    fn budget(&self) -> Result<Budget, CliError> {
        let max_time = self
            .budget_time
            .map(|s| {
                Duration::try_from_secs_f64(s)
                    .map_err(|_| CliError::Usage(format!("invalid time budget: {s}")))
            })
            .transpose()?;
        Ok(Budget {
            max_time,
            max_memory_bytes: self.budget_mem.map(|mb| mb << 20),
        })
    }
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Compute {
            kind,
            order,
            representation,
            format,
            storage,
        } => cmd_compute(
            &ComputeConfig {
                kind: kind.into(),
                order,
                representation,
                format,
                budget: storage.limits.budget()?,
                cache: storage.cache,
            },
            out,
        ),
        Command::Verify { max_order, storage } => cmd_verify(
            &VerifyConfig {
                max_order,
                budget: storage.limits.budget()?,
                cache: storage.cache,
            },
            out,
        ),
        Command::Bench {
            kind,
            max_order,
            limits,
        } => cmd_bench(
            &BenchConfig {
                kind: kind.into(),
                max_order,
                budget: limits.budget()?,
            },
            out,
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = out.flush();
            if !matches!(e, CliError::VerificationFailed) {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
