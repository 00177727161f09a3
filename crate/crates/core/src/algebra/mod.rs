//! Axioms, cube composition, the relations `≈_i` and `~_i`, characteristic
//! factors, fibers and structure groups.

mod axioms;
mod compose;
mod factors;
mod partition;
mod recover;
mod tower;

pub use axioms::{check_axioms, AxiomReport, CheckResult, CompletionCheck, Status, StepVerdict, Witness};
pub use compose::{approx_classes, approx_related, compose_cubes, glue_faces, is_composable, ApproxClasses};
pub use factors::{
    fibers, quotient_by, quotient_structure, sim_related, sim_relation, transposition_witness, Fiber,
    NonNilspaceWitness, QuotientStructure,
};
pub use partition::Partition;
pub use recover::{interchange_law_holds, recover_abelian, recover_abelian_on_axis, recover_group, AbelianRecovery};
pub use tower::{fiber_action, structure_tower, verify_fiber_action, FiberActionReport, StructureTower, TowerLevel};

use crate::budget::BudgetExceeded;
use crate::groups::GroupError;
use crate::structures::StructureError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Structure(StructureError),
    #[error(transparent)]
    Budget(BudgetExceeded),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("{argument} is not a cube of the structure")]
    NotCube { argument: &'static str },
    #[error("the cubes are not {j}-composable")]
    NotComposable { j: usize },
    #[error("index {index} outside 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("the relation is not an equivalence: {a} and {b} share a class but are unrelated")]
    NotTransitive { a: usize, b: usize },
    #[error("the corner {corner:?} has {count} completions; a {k}-step structure needs exactly one")]
    NotStep { k: usize, corner: Vec<usize>, count: usize },
    #[error("not {k}-ergodic: {missing:?} is not a cube")]
    NotErgodic { k: usize, missing: Vec<usize> },
    #[error("point {point} is not in the fiber of {of}")]
    NotInFiber { point: usize, of: usize },
    #[error("parameter error: {0}")]
    InvalidParameter(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl From<StructureError> for AlgebraError {
    fn from(e: StructureError) -> Self {
        match e {
            StructureError::Budget(b) => AlgebraError::Budget(b),
            other => AlgebraError::Structure(other),
        }
    }
}

impl From<BudgetExceeded> for AlgebraError {
    fn from(e: BudgetExceeded) -> Self {
        AlgebraError::Budget(e)
    }
}

impl From<crate::cubes::CubeError> for AlgebraError {
    fn from(e: crate::cubes::CubeError) -> Self {
        AlgebraError::Structure(StructureError::Cube(e))
    }
}

/// Every map `{0,1}^n -> 0..size`, vertex 0 varying fastest.
pub(crate) fn all_maps(size: usize, n: usize) -> impl Iterator<Item = Vec<usize>> {
    let len = 1usize << n;
    let mut next = if size == 0 { None } else { Some(vec![0usize; len]) };
    std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut succ = cur.clone();
        for slot in succ.iter_mut() {
            *slot += 1;
            if *slot < size {
                next = Some(succ);
                break;
            }
            *slot = 0;
        }
        Some(cur)
    })
}

/// `c ∘ φ` on raw tables.
pub(crate) fn pull(values: &[usize], table: &[u32]) -> Vec<usize> {
    table.iter().map(|&b| values[b as usize]).collect()
}
