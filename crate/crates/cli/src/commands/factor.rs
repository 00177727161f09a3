use std::path::PathBuf;

use clap::Subcommand;
use cubelab::algebra::{fiber_action, fibers, recover_abelian, structure_tower, verify_fiber_action};
use cubelab::structures::CubeStructure;
use serde_json::json;

use super::load_structure;
use crate::report::{CliError, Context, Outcome};

#[derive(Debug, Subcommand)]
pub enum FactorCmd {
    /// The factors `X/~_i` for `i <= k-cap` with their structure groups.
    Tower {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 2)]
        k_cap: usize,
        /// Defaults to `k-cap + 1`.
        #[arg(long)]
        dim_cap: Option<usize>,
    },
    /// The `~_{k-1}` classes of a `k`-step structure and their groups.
    Fibers {
        #[arg(long)]
        spec: PathBuf,
        /// Defaults to the degree of the spec.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        dim_cap: Option<usize>,
    },
    /// `x^a` for a point `a` of the fiber of `x`.
    Action {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        x: usize,
        #[arg(long)]
        dim_cap: Option<usize>,
        /// Also check that the action is free, transitive and independent
        /// of the base point on every fiber.
        #[arg(long)]
        verify: bool,
    },
}

fn degree(x: &CubeStructure, k: Option<usize>) -> Result<usize, CliError> {
    let k = match (k, x) {
        (Some(k), _) => k,
        (None, CubeStructure::D1(_)) => 1,
        (None, CubeStructure::Dk { k, .. }) => *k,
        (None, CubeStructure::Hzk(h)) => h.k(),
        (None, CubeStructure::Stored(_)) => return Err(CliError::Usage("--k is required for stored specs".into())),
    };
    if k == 0 {
        return Err(CliError::Usage("--k must be at least 1".into()));
    }
    Ok(k)
}

pub fn run(cmd: &FactorCmd, ctx: &mut Context) -> Result<Outcome, CliError> {
    match cmd {
        FactorCmd::Tower { spec, k_cap, dim_cap } => {
            let x = load_structure(spec, ctx)?;
            let dim_cap = dim_cap.unwrap_or(k_cap + 1);
            let tower = structure_tower(&x, *k_cap, dim_cap, ctx.budget)?;
            let mut text = vec![format!("structure: {}", x.describe())];
            for l in &tower.levels {
                text.push(format!(
                    "X_{}: {} points; G_{}: order {}, {}abelian; {} fiber(s){}",
                    l.level,
                    l.points,
                    l.level,
                    l.group.order(),
                    if l.abelian { "" } else { "non-" },
                    l.fiber_count,
                    if l.fibers_isomorphic { "" } else { ", fibers NOT isomorphic" },
                ));
            }
            text.push(format!("projections compatible: {}", tower.projections_compatible));
            let ok = tower.projections_compatible && tower.levels.iter().all(|l| l.fibers_isomorphic);
            Ok(Outcome::new(&tower, text).verified(ok))
        }
        FactorCmd::Fibers { spec, k, dim_cap } => {
            let x = load_structure(spec, ctx)?;
            let k = degree(&x, *k)?;
            let fibs = fibers(&x, k, dim_cap.unwrap_or(k + 1), ctx.budget)?;
            let mut rows = Vec::new();
            let mut text = vec![format!("{} fiber(s) of ~_{}", fibs.len(), k - 1)];
            for f in &fibs {
                let rec = recover_abelian(&f.structure, k, 0, ctx.budget)?;
                text.push(format!(
                    "  {:?}: group of order {}, {}abelian",
                    f.points,
                    rec.group.order(),
                    if rec.group.is_abelian() { "" } else { "non-" }
                ));
                rows.push(json!({
                    "points": f.points,
                    "group_order": rec.group.order(),
                    "abelian": rec.group.is_abelian(),
                    "group": rec.group,
                }));
            }
            Ok(Outcome::new(json!({ "k": k, "fibers": rows }), text))
        }
        FactorCmd::Action { spec, k, a, x: point, dim_cap, verify } => {
            let x = load_structure(spec, ctx)?;
            let k = degree(&x, *k)?;
            let dim_cap = dim_cap.unwrap_or(k + 1);
            let image = fiber_action(&x, k, *a, *point, dim_cap, ctx.budget)?;
            let mut text = vec![format!("{}^{} = {}", x.point_name(*point), x.point_name(*a), x.point_name(image))];
            let mut result = json!({ "k": k, "a": a, "x": point, "image": image });
            let mut ok = true;
            if *verify {
                let report = verify_fiber_action(&x, k, dim_cap, ctx.budget)?;
                ok = report.all_hold();
                text.push(format!("free: {}, transitive: {}", report.free, report.transitive));
                text.push(format!("action law: {}, identity: {}", report.action_law, report.identity_acts_trivially));
                text.push(format!(
                    "base point independent: {} ({} base points)",
                    report.base_point_independent, report.base_points_checked
                ));
                result["verification"] = serde_json::to_value(&report).expect("serializable");
            }
            Ok(Outcome::new(result, text).verified(ok))
        }
    }
}
