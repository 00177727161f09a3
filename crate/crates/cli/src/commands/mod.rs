pub mod factor;
pub mod gowers;
pub mod group;
pub mod structure;

use std::path::Path;

use cubelab::groups::GroupTable;
use cubelab::structures::{CubeStructure, StructureSpec};

use crate::report::{CliError, Context};

pub fn load_group(path: &Path, ctx: &mut Context) -> Result<GroupTable, CliError> {
    let text = ctx.read(path)?;
    GroupTable::from_json(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn load_structure(path: &Path, ctx: &mut Context) -> Result<CubeStructure, CliError> {
    let loaded = StructureSpec::load(path)?;
    ctx.record_all(&loaded.inputs)?;
    Ok(loaded.structure)
}
