//! Finite groups given by multiplication tables, free groups on reduced
//! words, and affine morphisms between them.

mod affine;
mod free;
mod table;

pub use affine::{
    affine_from_star, g_morphism_free_test, is_affine, is_affine_homomorphism_test, is_affine_quadruple_test,
    lift_affine, tau, z_morphism_test, AffineMap,
};
pub use free::{reduce, FreeGroup, Word};
pub use table::{GroupTable, Quotient, Validation};

/// Minimal group interface shared by table groups and free groups.
pub trait GroupLike {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn one(&self) -> Self::Elem;
    fn op(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn invert(&self, a: &Self::Elem) -> Self::Elem;
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("empty group table")]
    Empty,
    #[error("row {row} has length {len}, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("entry table[{a}][{b}] = {value} is not an element index (order {order})")]
    EntryOutOfRange { a: usize, b: usize, value: usize, order: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("associativity fails for ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("{len} names supplied for a group of order {order}")]
    NameCount { len: usize, order: usize },
    #[error("element index {index} out of range for order {order}")]
    ElementOutOfRange { index: usize, order: usize },
    #[error("subset is not a subgroup")]
    NotSubgroup,
    #[error("subgroup is not normal: conjugating {element} by {by} leaves it")]
    NotNormal { element: usize, by: usize },
    #[error("subgroup is not central: {element} does not commute with {with}")]
    NotCentral { element: usize, with: usize },
    #[error("subgroup is trivial")]
    TrivialSubgroup,
    #[error("classes do not form the cosets of a normal subgroup")]
    BadClasses,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },
    #[error("expected {expected} values, found {found}")]
    LengthMismatch { expected: usize, found: usize },
}
