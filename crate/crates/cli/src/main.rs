use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use whitney_cli::{load_job, run, write_report, Command, Format, OrderName, Settings, EXIT_INPUT};

/// Whitney (a) stratifications and the algebra behind them, over the rationals.
#[derive(Parser, Debug)]
#[command(name = "whitney", version)]
struct Args {
    /// Operation to run.
    #[arg(value_enum)]
    command: Command,
    /// Job file (TOML or JSON); standard input when omitted or `-`.
    job: Option<PathBuf>,
    #[arg(long, value_enum)]
    order: Option<OrderName>,
    /// Overall wall-clock budget in seconds.
    #[arg(long)]
    budget_seconds: Option<u64>,
    /// Budget of each Algorithm 1 pair in seconds (default 300).
    #[arg(long)]
    pair_budget_seconds: Option<u64>,
    /// Report dehomogenized components, dropping those at infinity.
    #[arg(long)]
    affine: bool,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Seed for randomized choices.
    #[arg(long)]
    seed: Option<u64>,
    /// Run independent pairs on several threads.
    #[arg(long)]
    parallel: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let spec = match load_job(args.job.as_deref()) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INPUT as u8);
        }
    };
    let mut settings = Settings::from_options(&spec.options);
    if let Some(o) = args.order {
        settings.order = o;
    }
    if args.budget_seconds == Some(0) || args.pair_budget_seconds == Some(0) {
        eprintln!("error: budgets must be positive");
        return ExitCode::from(EXIT_INPUT as u8);
    }
    settings.budget_seconds = args.budget_seconds.or(settings.budget_seconds);
    settings.pair_budget_seconds = args.pair_budget_seconds.or(settings.pair_budget_seconds);
    settings.affine |= args.affine;
    settings.parallel |= args.parallel;
    if let Some(f) = args.format {
        settings.format = f;
    }
    settings.seed = args.seed.or(settings.seed);
    if let Some(c) = spec.command {
        if c != args.command {
            eprintln!("note: job file names `{}`, running `{}`", c.name(), args.command.name());
        }
    }
    let outcome = run(&spec, args.command, &settings);
    print!("{}", write_report(&outcome.report, settings.format));
    ExitCode::from(outcome.code as u8)
}
