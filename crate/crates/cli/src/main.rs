//! `weakcross`: batch front end that prints a JSON report for each command.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::Outcome;

const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "weakcross", version, about = "Verify and search weakly cross t-intersecting set families")]
struct Cli {
    /// Worker threads for parallel checks and search.
    #[arg(long, global = true, env = "WEAKCROSS_THREADS")]
    threads: Option<usize>,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a pair of families against the weak cross condition.
    VerifyCross(commands::VerifyCross),
    /// Check one family against the single-family condition.
    VerifySingle(commands::VerifySingle),
    /// Write a standard family (or pair) as `.fam` files.
    Construct(commands::Construct),
    /// Find a sunflower with a given kernel size and petal count.
    Sunflower(commands::SunflowerArgs),
    /// Compute the matching number with a certificate.
    Matching(commands::MatchingArgs),
    /// Evaluate the matching-free family bound, optionally by search.
    Erdos(commands::ErdosArgs),
    /// Maximize |left| * |right| over pairs satisfying the condition.
    Search(commands::SearchArgs),
    /// Build the violating witness from a large sunflower in the left family.
    Claim1(commands::Claim1Args),
    /// Decompose the right family by t-subsets of chosen left members.
    Claim3(commands::Claim3Args),
}

fn dispatch(command: &Command) -> anyhow::Result<Outcome> {
    match command {
        Command::VerifyCross(a) => commands::verify_cross(a),
        Command::VerifySingle(a) => commands::verify_single(a),
        Command::Construct(a) => commands::construct(a),
        Command::Sunflower(a) => commands::sunflower(a),
        Command::Matching(a) => commands::matching(a),
        Command::Erdos(a) => commands::erdos(a),
        Command::Search(a) => commands::search(a),
        Command::Claim1(a) => commands::claim1(a),
        Command::Claim3(a) => commands::claim3(a),
    }
}

fn run(cli: &Cli) -> anyhow::Result<u8> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(threads) = cli.threads {
        anyhow::ensure!(threads > 0, "--threads must be positive");
        pool = pool.num_threads(threads);
    }
    let pool = pool.build()?;
    let outcome = pool.install(|| dispatch(&cli.command))?;
    let text = outcome.report.render();
    if let Some(path) = &cli.json {
        std::fs::write(path, &text).map_err(|e| anyhow::anyhow!("writing {}: {e}", path.display()))?;
    }
    std::io::stdout().write_all(text.as_bytes())?;
    Ok(outcome.code)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
