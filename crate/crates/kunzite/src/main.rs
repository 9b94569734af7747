use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use kunzite::dsl;
use kunzite::groebner::DEFAULT_BUDGET;
use kunzite::monomial::MonomialOrder;
use kunzite::runner::{run, RunnerConfig};

/// Frobenius bracket powers, colon ideals and Hilbert-Kunz data over
/// GF(p), driven by a small script language.
#[derive(Parser)]
#[command(name = "kunzite", version, about)]
struct Cli {
    /// Script file; reads standard input when omitted
    script: Option<PathBuf>,

    /// Monomial order
    #[arg(long, default_value = "grevlex", value_parser = parse_order)]
    order: MonomialOrder,

    /// Seed for randomized searches
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Work budget in S-pair reductions, per command
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,

    /// Workspace directory for the persistent GB cache
    #[arg(long)]
    workspace: Option<PathBuf>,

    /// Compact JSON lines (default)
    #[arg(long, conflicts_with = "pretty")]
    json: bool,

    /// Indented JSON
    #[arg(long)]
    pretty: bool,
}

fn parse_order(s: &str) -> Result<MonomialOrder, String> {
    MonomialOrder::from_name(s).ok_or_else(|| format!("unknown order `{}`", s))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let source = match &cli.script {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("error: cannot read {}: {}", path.display(), e);
                return ExitCode::from(2);
            }
        },
        None => {
            let mut s = String::new();
            if let Err(e) = std::io::stdin().read_to_string(&mut s) {
                eprintln!("error: cannot read standard input: {}", e);
                return ExitCode::from(2);
            }
            s
        }
    };
    let script = match dsl::parse(&source) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {}", e);
            return ExitCode::from(2);
        }
    };
    let config = RunnerConfig {
        order: cli.order,
        seed: cli.seed,
        budget_cap: cli.budget,
        workspace: cli.workspace,
        pretty: cli.pretty,
    };
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    match run(&script, &config, &mut stdout.lock(), &mut stderr.lock()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}
