//! Discrete cubes `{0,1}^n`, the morphism categories between them, and the
//! simplicial subsets used for gluing.

mod morphism;
mod simplicial;
mod vertex;

pub use morphism::{reflection_group_orbit, reflection_to_top, Category, CoordinateRule, CubeMorphism, VertexMap};
pub use simplicial::{flat, fold, SimplicialSet};
pub use vertex::{top_mask, Vertex, MAX_DIM};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CubeError {
    #[error("mask {bits:#b} does not fit in dimension {dim}")]
    BitsOutOfRange { bits: u32, dim: usize },
    #[error("coordinate value {0} is not 0 or 1")]
    InvalidCoordinate(u8),
    #[error("dimension {dim} exceeds the cap {cap}")]
    DimensionTooLarge { dim: usize, cap: usize },
    #[error("index {index} outside 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("invalid bit string {0:?}")]
    InvalidBitString(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("repeated coordinate index")]
    RepeatedIndex,
    #[error("output coordinate {coordinate} depends on more than one input coordinate")]
    NotCoordinateWise { coordinate: usize },
    #[error("vertex {0} is not in the three-cube set")]
    NotInThreeCube(Vertex),
    #[error("set is not downward closed: {missing} is missing below {member}")]
    NotDownwardClosed { member: Vertex, missing: Vertex },
}
