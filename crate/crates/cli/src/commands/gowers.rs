use std::path::{Path, PathBuf};

use clap::Subcommand;
use cubelab::gowers::{cube_distribution, gowers_norm_mc, gowers_norm_with_tolerance, GroupFunction, Variant};
use serde_json::json;

use super::load_group;
use crate::report::{CliError, Context, Outcome};

#[derive(Debug, Subcommand)]
pub enum GowersCmd {
    /// `||f||_{U_n}` by exhaustive summation.
    Exact {
        #[arg(long = "fn")]
        function: PathBuf,
        /// Checked against the group named in the function file.
        #[arg(long)]
        group: Option<PathBuf>,
        #[arg(long)]
        n: usize,
    },
    /// Monte-Carlo estimate of `||f||_{U_n}`.
    Mc {
        #[arg(long = "fn")]
        function: PathBuf,
        #[arg(long)]
        group: Option<PathBuf>,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Compare the laws of simple and general `k`-cubes, exactly.
    DistCompare {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        k: usize,
    },
}

fn load_function(path: &Path, group: Option<&PathBuf>, ctx: &mut Context) -> Result<GroupFunction, CliError> {
    let (f, inputs) = GroupFunction::load(path)?;
    ctx.record_all(&inputs)?;
    if let Some(g) = group {
        let g = load_group(g, ctx)?;
        if &g != f.group() {
            return Err(CliError::Usage(format!("{} is defined on a different group", path.display())));
        }
    }
    Ok(f)
}

pub fn run(cmd: &GowersCmd, ctx: &mut Context) -> Result<Outcome, CliError> {
    match cmd {
        GowersCmd::Exact { function, group, n } => {
            let f = load_function(function, group.as_ref(), ctx)?;
            let v = gowers_norm_with_tolerance(&f, *n, ctx.tolerance, ctx.budget)?;
            let text = vec![
                format!("||f||_U{n} = {}", v.norm),
                format!("inner product: {} {:+}i", v.inner_re, v.inner_im),
                format!("operations: {} of budget {}", v.operations, ctx.budget),
            ];
            Ok(Outcome::new(v, text))
        }
        GowersCmd::Mc { function, group, n, samples } => {
            let f = load_function(function, group.as_ref(), ctx)?;
            let seed = ctx.seed();
            let e = gowers_norm_mc(&f, *n, *samples, seed)?;
            let text = vec![
                format!("||f||_U{n} ~ {}", e.estimate),
                format!("mean of the cube product: {} +- {} (stderr)", e.mean, e.stderr),
                format!("samples: {samples}, seed: {seed}"),
            ];
            Ok(Outcome::new(e, text))
        }
        GowersCmd::DistCompare { group, k } => {
            let g = load_group(group, ctx)?;
            let simple = cube_distribution(&g, *k, Variant::Simple, ctx.budget)?;
            let general = cube_distribution(&g, *k, Variant::General, ctx.budget)?;
            let equal = simple.same_law(&general);
            let tv = simple.total_variation(&general);
            let text = vec![
                format!("k = {k}: {} simple and {} general parameter tuples", simple.tuples, general.tuples),
                format!("support sizes: {} and {}", simple.support().len(), general.support().len()),
                format!("equal: {equal}"),
                format!("total variation distance: {tv}"),
            ];
            let result = json!({
                "k": k,
                "simple_tuples": simple.tuples.to_string(),
                "general_tuples": general.tuples.to_string(),
                "simple_support": simple.support().len(),
                "general_support": general.support().len(),
                "equal": equal,
                "total_variation": tv.to_string(),
            });
            Ok(Outcome::new(result, text).verified(equal))
        }
    }
}
