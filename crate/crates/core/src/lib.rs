//! Finite cube structures on groups: the cube categories, group tables,
//! `D1`, `Dk` and `H_{Z,k}` structures, axiom checks, characteristic
//! factors and uniformity norms on non-abelian groups.
//!
//! ```
//! use cubelab::algebra::{check_axioms, StepVerdict};
//! use cubelab::budget::DEFAULT_BUDGET;
//! use cubelab::groups::GroupTable;
//! use cubelab::structures::CubeStructure;
//!
//! let x = CubeStructure::d1(GroupTable::symmetric(3).unwrap());
//! let report = check_axioms(&x, 3, DEFAULT_BUDGET).unwrap();
//! assert!(report.is_groupspace());
//! assert_eq!(report.step, StepVerdict::Exactly(1));
//! ```

pub mod algebra;
pub mod budget;
pub mod cubes;
pub mod gowers;
pub mod groups;
pub mod structures;
