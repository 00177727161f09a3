use std::path::PathBuf;

use clap::{Subcommand, ValueEnum};
use cubelab::groups::GroupTable;
use serde_json::json;

use super::load_group;
use crate::report::{CliError, Context, Outcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GroupKind {
    Cyclic,
    Dihedral,
    Symmetric,
    Alternating,
    Quaternion8,
    /// Direct product of the `--factor` files.
    Product,
    /// A table file, validated.
    File,
}

#[derive(Debug, Subcommand)]
pub enum GroupCmd {
    /// Build a group table.
    Make {
        #[arg(long, value_enum)]
        kind: GroupKind,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "factor")]
        factors: Vec<PathBuf>,
        #[arg(long)]
        from: Option<PathBuf>,
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
    /// Order, element orders, center.
    Show { group: PathBuf },
    /// The factor group by a normal subgroup.
    Quotient {
        group: PathBuf,
        /// Comma separated element indices.
        #[arg(long, value_delimiter = ',', required_unless_present = "center", conflicts_with = "center")]
        subgroup: Vec<usize>,
        /// Quotient by the center.
        #[arg(long)]
        center: bool,
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
    /// The center of a group.
    Center { group: PathBuf },
}

fn need_n(n: Option<usize>) -> Result<usize, CliError> {
    n.ok_or_else(|| CliError::Usage("--n is required for this kind".into()))
}

fn make(
    kind: GroupKind,
    n: Option<usize>,
    factors: &[PathBuf],
    from: Option<&PathBuf>,
    ctx: &mut Context,
) -> Result<GroupTable, CliError> {
    Ok(match kind {
        GroupKind::Cyclic => GroupTable::cyclic(need_n(n)?)?,
        GroupKind::Dihedral => GroupTable::dihedral(need_n(n)?)?,
        GroupKind::Symmetric => GroupTable::symmetric(need_n(n)?)?,
        GroupKind::Alternating => GroupTable::alternating(need_n(n)?)?,
        GroupKind::Quaternion8 => GroupTable::quaternion8(),
        GroupKind::Product => {
            if factors.len() < 2 {
                return Err(CliError::Usage("a product needs at least two --factor files".into()));
            }
            let mut groups = Vec::new();
            for f in factors {
                groups.push(load_group(f, ctx)?);
            }
            groups[1..].iter().fold(groups[0].clone(), |acc, g| GroupTable::direct_product(&acc, g))
        }
        GroupKind::File => {
            let path = from.ok_or_else(|| CliError::Usage("--from is required for kind file".into()))?;
            load_group(path, ctx)?
        }
    })
}

fn element_orders(g: &GroupTable) -> Vec<usize> {
    (0..g.order()).map(|a| g.element_order(a)).collect()
}

pub fn run(cmd: &GroupCmd, ctx: &mut Context) -> Result<Outcome, CliError> {
    match cmd {
        GroupCmd::Make { kind, n, factors, from, out } => {
            let g = make(*kind, *n, factors, from.as_ref(), ctx)?;
            if let Some(path) = out {
                ctx.write_file(path, &g.to_json())?;
            }
            let mut text = vec![format!("order: {}", g.order()), format!("abelian: {}", g.is_abelian())];
            if let Some(path) = out {
                text.push(format!("written: {}", path.display()));
            }
            let result = json!({
                "order": g.order(),
                "abelian": g.is_abelian(),
                "out": out.as_ref().map(|p| p.display().to_string()),
                "group": g,
            });
            Ok(Outcome::new(result, text))
        }
        GroupCmd::Show { group } => {
            let g = load_group(group, ctx)?;
            let center = g.center();
            let orders = element_orders(&g);
            let text = vec![
                format!("order: {}", g.order()),
                format!("identity: {}", g.name(g.identity())),
                format!("abelian: {}", g.is_abelian()),
                format!("element orders: {orders:?}"),
                format!("center: {} element(s) {:?}", center.len(), center),
            ];
            let result = json!({
                "order": g.order(),
                "identity": g.identity(),
                "abelian": g.is_abelian(),
                "element_orders": orders,
                "center": center,
            });
            Ok(Outcome::new(result, text))
        }
        GroupCmd::Quotient { group, subgroup, center, out } => {
            let g = load_group(group, ctx)?;
            let normal = if *center { g.center() } else { subgroup.clone() };
            let q = g.quotient(&normal)?;
            if let Some(path) = out {
                ctx.write_file(path, &q.group.to_json())?;
            }
            let text = vec![
                format!("quotient order: {}", q.group.order()),
                format!("abelian: {}", q.group.is_abelian()),
                format!("cosets: {:?}", q.classes),
            ];
            let result = json!({
                "order": q.group.order(),
                "abelian": q.group.is_abelian(),
                "classes": q.classes,
                "projection": q.projection,
                "group": q.group,
            });
            Ok(Outcome::new(result, text))
        }
        GroupCmd::Center { group } => {
            let g = load_group(group, ctx)?;
            let center = g.center();
            let trivial = center.len() == 1;
            let text =
                vec![format!("center: {center:?}"), format!("size: {}", center.len()), format!("trivial: {trivial}")];
            Ok(Outcome::new(json!({ "center": center, "size": center.len(), "trivial": trivial }), text))
        }
    }
}
