use std::path::PathBuf;

use clap::Subcommand;
use cubelab::algebra::{check_axioms, CheckResult, Status as CheckStatus, StepVerdict};
use cubelab::structures::Corner;
use serde_json::json;

use super::load_structure;
use crate::report::{CliError, Context, Outcome, Status};

#[derive(Debug, Subcommand)]
pub enum StructureCmd {
    /// Load a spec, count cubes and optionally store them explicitly.
    Build {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 3)]
        dim_cap: usize,
        /// Write the cubes up to `--dim-cap` as a stored spec.
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
    /// Check the groupspace axioms up to a dimension cap.
    Axioms {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        dim_cap: u64,
    },
    /// List the completions of a corner.
    Complete {
        #[arg(long)]
        spec: PathBuf,
        /// JSON array of the values on `{0,1}^n` minus the top vertex, or
        /// `{"n": .., "values": [..]}`.
        #[arg(long)]
        corner: PathBuf,
    },
    /// Count (and optionally list) the `n`-cubes.
    Enumerate {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        list: bool,
    },
}

fn status_word(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "fail",
        CheckStatus::Skipped => "skipped",
    }
}

fn check_line(name: &str, c: &CheckResult) -> String {
    let mut line = format!("{name}: {}", status_word(c.status));
    if let Some(w) = &c.witness {
        line.push_str(&format!(" witness {}", serde_json::to_string(w).expect("serializable")));
    }
    line
}

pub fn run(cmd: &StructureCmd, ctx: &mut Context) -> Result<Outcome, CliError> {
    match cmd {
        StructureCmd::Build { spec, dim_cap, out } => {
            let x = load_structure(spec, ctx)?;
            let stored = x.materialize(*dim_cap, ctx.budget)?;
            let counts: Vec<usize> = (0..=*dim_cap).map(|n| stored.cubes(n).map_or(0, <[_]>::len)).collect();
            if let Some(path) = out {
                ctx.write_file(path, &stored.to_json())?;
            }
            let text = vec![
                format!("structure: {}", x.describe()),
                format!("points: {}", x.size()),
                format!("cube counts (n = 0..={dim_cap}): {counts:?}"),
            ];
            let result = json!({
                "description": x.describe(),
                "size": x.size(),
                "dim_cap": dim_cap,
                "cube_counts": counts,
                "out": out.as_ref().map(|p| p.display().to_string()),
            });
            Ok(Outcome::new(result, text))
        }
        StructureCmd::Axioms { spec, dim_cap } => {
            let x = load_structure(spec, ctx)?;
            let report = check_axioms(&x, *dim_cap as usize, ctx.budget)?;
            let mut text =
                vec![format!("structure: {}", x.describe()), format!("cube counts: {:?}", report.cube_counts)];
            text.push(check_line("presheaf", &report.presheaf));
            text.push(check_line("ergodicity", &report.ergodicity));
            for c in &report.completion {
                let mut line = format!(
                    "completion n={}: {} ({} corners, {}..={} completions)",
                    c.n,
                    status_word(c.status),
                    c.corners,
                    c.min_completions,
                    c.max_completions
                );
                if let Some(w) = &c.witness {
                    line.push_str(&format!(" witness {}", serde_json::to_string(w).expect("serializable")));
                }
                text.push(line);
            }
            text.push(match report.step {
                StepVerdict::Exactly(k) => format!("step: {k}"),
                StepVerdict::AboveCap => format!("step: above {dim_cap}"),
                StepVerdict::Unknown => "step: unknown".into(),
            });
            text.push(format!("k-ergodic up to: {}", report.k_ergodic.map_or("none".into(), |k| k.to_string())));
            text.push(check_line("downward determination", &report.down_det));
            text.push(check_line("upward determination", &report.up_det));
            text.push(format!("groupspace: {}", report.is_groupspace()));
            let status = if !report.is_groupspace() {
                Status::VerificationFailed
            } else if report.has_skips() {
                Status::Incomplete
            } else {
                Status::Ok
            };
            let mut outcome = Outcome::new(&report, text);
            outcome.status = status;
            Ok(outcome)
        }
        StructureCmd::Complete { spec, corner } => {
            let x = load_structure(spec, ctx)?;
            let text = ctx.read(corner)?;
            let corner: Corner =
                serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", corner.display())))?;
            let completions: Vec<Vec<usize>> =
                x.complete_corner(&corner)?.into_iter().map(|c| c.into_values()).collect();
            let mut text = vec![format!("{} completion(s)", completions.len())];
            text.extend(completions.iter().map(|c| format!("  {c:?}")));
            let result = json!({ "n": corner.dim(), "count": completions.len(), "completions": completions });
            Ok(Outcome::new(result, text).verified(!completions.is_empty()))
        }
        StructureCmd::Enumerate { spec, n, list } => {
            let x = load_structure(spec, ctx)?;
            let cubes = x.enumerate_values(*n, ctx.budget)?;
            let mut text = vec![format!("{} cubes of dimension {n}", cubes.len())];
            if *list {
                text.extend(cubes.iter().map(|c| format!("  {c:?}")));
            }
            let result = json!({
                "n": n,
                "count": cubes.len(),
                "cubes": if *list { Some(&cubes) } else { None },
            });
            Ok(Outcome::new(result, text))
        }
    }
}
