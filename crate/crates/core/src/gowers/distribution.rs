use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::budget::{check_budget, saturating_pow};
use crate::groups::GroupTable;
use crate::structures::{general_cube, simple_cube};

use super::{odometer, GowersError};

/// How a random cube is parametrized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// `c(v) = a_0 a_1^{v_1} ⋯ a_k^{v_k}` with `a_0..a_k` uniform.
    Simple,
    /// `c(v) = a_{1,v_1} ⋯ a_{k,v_k}` with all `a_{i,j}` uniform.
    General,
}

/// The exact law of a random `k`-cube: vertex tables with their
/// probabilities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeDistribution {
    pub k: usize,
    pub variant: Variant,
    /// Number of parameter tuples enumerated.
    pub tuples: u128,
    probabilities: BTreeMap<Vec<usize>, Ratio<i128>>,
}

impl CubeDistribution {
    pub fn probability(&self, cube: &[usize]) -> Ratio<i128> {
        self.probabilities.get(cube).copied().unwrap_or_else(Ratio::zero)
    }

    pub fn probabilities(&self) -> &BTreeMap<Vec<usize>, Ratio<i128>> {
        &self.probabilities
    }

    pub fn support(&self) -> BTreeSet<Vec<usize>> {
        self.probabilities.keys().cloned().collect()
    }

    pub fn total(&self) -> Ratio<i128> {
        self.probabilities.values().copied().sum()
    }

    /// Same vertex tables with the same probabilities.
    pub fn same_law(&self, other: &CubeDistribution) -> bool {
        self.k == other.k && self.probabilities == other.probabilities
    }

    /// `(1/2) Σ_c |p(c) − q(c)|`.
    pub fn total_variation(&self, other: &CubeDistribution) -> Ratio<i128> {
        let keys: BTreeSet<&Vec<usize>> = self.probabilities.keys().chain(other.probabilities.keys()).collect();
        let sum: Ratio<i128> = keys.into_iter().map(|c| (self.probability(c) - other.probability(c)).abs()).sum();
        sum / 2
    }
}

/// Enumerates every parameter tuple of the chosen variant and counts the
/// resulting cubes.
pub fn cube_distribution(
    g: &GroupTable,
    k: usize,
    variant: Variant,
    budget: u64,
) -> Result<CubeDistribution, GowersError> {
    if k == 0 || k >= 32 {
        return Err(GowersError::InvalidParameter(format!("cube dimension must be in 1..32, got {k}")));
    }
    let m = g.order();
    let params = match variant {
        Variant::Simple => k + 1,
        Variant::General => 2 * k,
    };
    let tuples = saturating_pow(m, params);
    check_budget(tuples.saturating_mul(1u128 << k), budget)?;
    let denominator = i128::try_from(tuples)
        .map_err(|_| GowersError::InvalidParameter("parameter space too large for exact rationals".into()))?;
    let mut counts: BTreeMap<Vec<usize>, i128> = BTreeMap::new();
    let mut a = vec![0usize; params];
    loop {
        let cube = match variant {
            Variant::Simple => simple_cube(g, &a),
            Variant::General => {
                let system: Vec<[usize; 2]> = a.chunks(2).map(|p| [p[0], p[1]]).collect();
                general_cube(g, &system)
            }
        };
        *counts.entry(cube).or_insert(0) += 1;
        if !odometer(&mut a, m) {
            break;
        }
    }
    let probabilities = counts.into_iter().map(|(c, n)| (c, Ratio::new(n, denominator))).collect();
    Ok(CubeDistribution { k, variant, tuples, probabilities })
}
