//! `cubelab`: build groups and cube structures, check axioms, compute
//! factor towers and uniformity norms.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cubelab::budget::DEFAULT_BUDGET;

use report::{CliError, Context, Outcome, Report};

#[derive(Debug, Parser)]
#[command(name = "cubelab", version, about = "Finite groupspaces, their factors and non-commutative Gowers norms")]
pub struct Cli {
    /// Largest number of elementary steps an exhaustive computation may plan.
    #[arg(long, global = true, env = "CUBELAB_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,

    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Relative tolerance for floating point checks.
    #[arg(long, global = true, default_value_t = 1e-12, value_parser = parse_tolerance)]
    tolerance: f64,

    /// Worker threads for data-parallel sums (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    output: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn parse_tolerance(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if t > 0.0 && t < 1.0 {
        Ok(t)
    } else {
        Err("tolerance must lie in (0, 1)".into())
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Make and inspect group tables.
    #[command(subcommand)]
    Group(commands::group::GroupCmd),
    /// Build cube structures, check axioms, complete corners.
    #[command(subcommand)]
    Structure(commands::structure::StructureCmd),
    /// Characteristic factors, fibers and the fiber action.
    #[command(subcommand)]
    Factor(commands::factor::FactorCmd),
    /// Uniformity norms and cube distributions.
    #[command(subcommand)]
    Gowers(commands::gowers::GowersCmd),
    /// Re-run the command echoed in a JSON report and compare the results.
    Replay { report: PathBuf },
}

fn run_command(command: &Command, ctx: &mut Context) -> Result<Outcome, CliError> {
    match command {
        Command::Group(c) => commands::group::run(c, ctx),
        Command::Structure(c) => commands::structure::run(c, ctx),
        Command::Factor(c) => commands::factor::run(c, ctx),
        Command::Gowers(c) => commands::gowers::run(c, ctx),
        Command::Replay { report } => replay(report, ctx),
    }
}

/// Runs `args` (without the program name) and builds its report.
fn execute(cli: &Cli, args: Vec<String>, write: bool) -> Result<(Report, Vec<String>), CliError> {
    let mut ctx = Context::new(cli.budget, cli.tolerance, cli.seed, write);
    let outcome = run_command(&cli.command, &mut ctx)?;
    let report = ctx.finish(args, &outcome);
    Ok((report, outcome.text))
}

fn replay(path: &std::path::Path, ctx: &mut Context) -> Result<Outcome, CliError> {
    let text = ctx.read(path)?;
    let old: Report = serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let cli = Cli::try_parse_from(std::iter::once("cubelab".to_string()).chain(old.config.args.iter().cloned()))
        .map_err(|e| CliError::Usage(format!("echoed arguments do not parse: {e}")))?;
    if matches!(cli.command, Command::Replay { .. }) {
        return Err(CliError::Usage("a replay report cannot be replayed".into()));
    }
    let (new, _) = execute(&cli, old.config.args.clone(), false)?;
    let same = new == old;
    let mut text = vec![format!("replayed: {}", old.config.args.join(" "))];
    text.push(if same { "report reproduced exactly".into() } else { "report differs".into() });
    let mut differing: Vec<&str> = Vec::new();
    if new.version != old.version {
        differing.push("version");
    }
    if new.inputs != old.inputs {
        differing.push("inputs");
    }
    if new.status != old.status {
        differing.push("status");
    }
    if new.result != old.result {
        differing.push("result");
    }
    let result = serde_json::json!({ "reproduced": same, "differing": differing });
    Ok(Outcome::new(result, text).verified(same))
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t as usize).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match execute(&cli, args, true) {
        Ok((report, text)) => {
            match cli.output {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("serializable")),
                Format::Text => {
                    for line in text {
                        println!("{line}");
                    }
                    if report.status != report::Status::Ok {
                        println!("status: {}", report.status.name());
                    }
                }
            }
            ExitCode::from(report.status.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
