//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use cubelab::gowers::GroupFunction;
use cubelab::groups::GroupTable;
use cubelab::structures::CubeStructure;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn random_function(group: GroupTable, seed: u64) -> GroupFunction {
    GroupFunction::random(Arc::new(group), &mut ChaCha8Rng::seed_from_u64(seed))
}

/// `H_{Z,2}(Q8)` with `Z` the center.
pub fn hzk_q8() -> CubeStructure {
    let q8 = GroupTable::quaternion8();
    let center = q8.center();
    CubeStructure::hzk(q8, &center, 2).expect("the center is central")
}
