//! Cube structures on finite ground sets: membership, corner completion,
//! enumeration, and gluing along simplicial sets.

mod cube_map;
mod glue;
mod spec;
mod stored;
mod structure;

pub use cube_map::{Corner, CubeMap};
pub use glue::{general_cube, general_to_simple, glue_simplicial};
pub use spec::{GroupRef, LoadedStructure, StructureSpec};
pub use stored::StoredStructure;
pub use structure::{hzk_contains_by_search, low_hull_size, CubeStructure, Hzk, ALGEBRAIC_DIM_CAP};

pub(crate) use cube_map::face_values;
pub(crate) use structure::simple_cube;

use crate::budget::BudgetExceeded;
use crate::cubes::{CubeError, Vertex};
use crate::groups::GroupError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error(transparent)]
    Cube(#[from] CubeError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error("expected {expected} values, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} outside 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("dimension {dim} is above the supported cap {cap}")]
    DimensionAboveCap { dim: usize, cap: usize },
    #[error("point {value} is outside the ground set of size {size}")]
    ValueOutOfRange { value: usize, size: usize },
    #[error("lower face {face} of the corner is not a cube")]
    LowerFaceNotCube { face: usize },
    #[error("the group is not abelian")]
    NotAbelian,
    #[error("empty ground set")]
    EmptyGroundSet,
    #[error("stored structure lacks dimension {0}")]
    MissingDimension(usize),
    #[error("map is not cube preserving below {vertex}")]
    NotCubePreserving { vertex: Vertex },
    #[error("no completion exists at vertex {vertex}")]
    CompletionFailed { vertex: Vertex },
    #[error("invalid structure spec: {0}")]
    Spec(String),
    #[error("i/o error: {0}")]
    Io(String),
}
