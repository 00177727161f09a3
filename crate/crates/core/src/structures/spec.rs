use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::groups::GroupTable;

use super::{CubeStructure, StoredStructure, StructureError};

/// A group inside a structure spec: a path to a group file (relative paths
/// resolve against the spec's directory) or an inline table.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Path(String),
    Inline(GroupTable),
}

/// The JSON description of a cube structure.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum StructureSpec {
    D1 {
        group: GroupRef,
    },
    Dk {
        group: GroupRef,
        k: usize,
    },
    #[serde(rename = "HZk")]
    Hzk {
        group: GroupRef,
        /// Defaults to the full center of the group.
        #[serde(default)]
        center: Option<Vec<usize>>,
        k: usize,
    },
    #[serde(rename = "stored")]
    Stored {
        max_dim: usize,
        cubes: BTreeMap<String, Vec<Vec<usize>>>,
        #[serde(default)]
        size: Option<usize>,
    },
}

/// A built structure together with every file it was read from.
#[derive(Debug)]
pub struct LoadedStructure {
    pub structure: CubeStructure,
    pub inputs: Vec<PathBuf>,
}

impl StructureSpec {
    pub fn from_json(json: &str) -> Result<Self, StructureError> {
        serde_json::from_str(json).map_err(|e| StructureError::Spec(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<LoadedStructure, StructureError> {
        let text = std::fs::read_to_string(path).map_err(|e| StructureError::Io(format!("{}: {e}", path.display())))?;
        let spec = Self::from_json(&text)?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        let mut loaded = spec.build(base)?;
        loaded.inputs.insert(0, path.to_path_buf());
        Ok(loaded)
    }

    pub fn build(&self, base_dir: &Path) -> Result<LoadedStructure, StructureError> {
        let mut inputs = Vec::new();
        let mut resolve = |g: &GroupRef| -> Result<GroupTable, StructureError> {
            match g {
                GroupRef::Inline(t) => Ok(t.clone()),
                GroupRef::Path(p) => {
                    let path = base_dir.join(p);
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| StructureError::Io(format!("{}: {e}", path.display())))?;
                    inputs.push(path);
                    GroupTable::from_json(&text).map_err(|e| StructureError::Spec(e.to_string()))
                }
            }
        };
        let structure = match self {
            StructureSpec::D1 { group } => CubeStructure::d1(resolve(group)?),
            StructureSpec::Dk { group, k } => CubeStructure::dk(resolve(group)?, *k)?,
            StructureSpec::Hzk { group, center, k } => {
                let g = resolve(group)?;
                let z = center.clone().unwrap_or_else(|| g.center());
                CubeStructure::hzk(g, &z, *k)?
            }
            StructureSpec::Stored { max_dim, cubes, size } => {
                CubeStructure::stored(StoredStructure::from_dimension_map(*size, *max_dim, cubes)?)
            }
        };
        Ok(LoadedStructure { structure, inputs })
    }
}
