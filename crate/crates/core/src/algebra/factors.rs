use std::collections::BTreeSet;

use serde::Serialize;

use crate::budget::{check_budget, saturating_pow};
use crate::cubes::CubeMorphism;
use crate::structures::{CubeStructure, StoredStructure, StructureError};

use super::{pull, AlgebraError, Partition};

/// `x ~_i y`: the `(i+1)`-map with `x` at the top vertex and `y` everywhere
/// else is a cube.
pub fn sim_related(x: &CubeStructure, i: usize, a: usize, b: usize) -> bool {
    let len = 1usize << (i + 1);
    let mut values = vec![b; len];
    values[len - 1] = a;
    x.contains_values(i + 1, &values)
}

/// The partition of the ground set by `~_i`. Every ordered pair is tested
/// and the relation must coincide with the partition.
pub fn sim_relation(x: &CubeStructure, i: usize, budget: u64) -> Result<Partition, AlgebraError> {
    if i + 1 > x.dim_cap() {
        return Err(StructureError::DimensionAboveCap { dim: i + 1, cap: x.dim_cap() }.into());
    }
    let size = x.size();
    check_budget(saturating_pow(size, 2).saturating_mul(1 << (i + 1)), budget)?;
    let related: Vec<bool> = (0..size * size).map(|p| sim_related(x, i, p / size, p % size)).collect();
    let pairs = (0..size * size).filter(|&p| related[p]).map(|p| (p / size, p % size));
    let partition = Partition::from_pairs(size, pairs);
    for a in 0..size {
        for b in 0..size {
            if related[a * size + b] != partition.same(a, b) {
                return Err(AlgebraError::NotTransitive { a, b });
            }
        }
    }
    Ok(partition)
}

/// A factor `X/~` with the push-forward cubes.
#[derive(Clone, Debug)]
pub struct QuotientStructure {
    pub partition: Partition,
    pub structure: CubeStructure,
}

impl QuotientStructure {
    pub fn project(&self, x: usize) -> usize {
        self.partition.class_of(x)
    }
}

/// Push-forward of the cubes of dimensions `0..=dim_cap` along the class
/// map of `partition`.
pub fn quotient_by(
    x: &CubeStructure,
    partition: &Partition,
    dim_cap: usize,
    budget: u64,
) -> Result<CubeStructure, AlgebraError> {
    if partition.size() != x.size() {
        return Err(AlgebraError::InvalidParameter("partition does not cover the ground set".into()));
    }
    let mut by_dim = Vec::with_capacity(dim_cap + 1);
    for n in 0..=dim_cap {
        let image: BTreeSet<Vec<usize>> = x
            .enumerate_values(n, budget)?
            .into_iter()
            .map(|c| c.into_iter().map(|p| partition.class_of(p)).collect())
            .collect();
        by_dim.push(image.into_iter().collect());
    }
    Ok(CubeStructure::stored(StoredStructure::new(partition.num_classes(), by_dim)?))
}

/// `X/~_i`, materialized up to `dim_cap`.
pub fn quotient_structure(
    x: &CubeStructure,
    i: usize,
    dim_cap: usize,
    budget: u64,
) -> Result<QuotientStructure, AlgebraError> {
    let partition = sim_relation(x, i, budget)?;
    let structure = quotient_by(x, &partition, dim_cap, budget)?;
    Ok(QuotientStructure { partition, structure })
}

/// A `~_{k-1}` class with the cubes of `X` that stay inside it, relabeled
/// to `0..points.len()`.
#[derive(Clone, Debug)]
pub struct Fiber {
    pub points: Vec<usize>,
    pub structure: CubeStructure,
}

impl Fiber {
    pub fn size(&self) -> usize {
        self.points.len()
    }

    pub fn local(&self, x: usize) -> Option<usize> {
        self.points.binary_search(&x).ok()
    }

    pub fn global(&self, local: usize) -> usize {
        self.points[local]
    }
}

/// Checks that every `(k+1)`-corner has exactly one completion.
pub(crate) fn verify_step(x: &CubeStructure, k: usize, budget: u64) -> Result<(), AlgebraError> {
    for corner in x.corners(k + 1, budget)? {
        let count = x.complete_corner(&corner)?.len();
        if count != 1 {
            return Err(AlgebraError::NotStep { k, corner: corner.values().to_vec(), count });
        }
    }
    Ok(())
}

/// The fibers of a `k`-step structure, with cubes up to `dim_cap`.
pub fn fibers(x: &CubeStructure, k: usize, dim_cap: usize, budget: u64) -> Result<Vec<Fiber>, AlgebraError> {
    if k == 0 {
        return Err(AlgebraError::InvalidParameter("fibers need k >= 1".into()));
    }
    if dim_cap < k + 1 {
        return Err(AlgebraError::InvalidParameter(format!(
            "fibers of a {k}-step structure need dim_cap >= {}",
            k + 1
        )));
    }
    verify_step(x, k, budget)?;
    let partition = sim_relation(x, k - 1, budget)?;
    let mut local = vec![0usize; x.size()];
    for class in partition.classes() {
        for (l, &p) in class.iter().enumerate() {
            local[p] = l;
        }
    }
    let mut cubes: Vec<Vec<Vec<Vec<usize>>>> = vec![Vec::with_capacity(dim_cap + 1); partition.num_classes()];
    for n in 0..=dim_cap {
        for per in cubes.iter_mut() {
            per.push(Vec::new());
        }
        for c in x.enumerate_values(n, budget)? {
            let class = partition.class_of(c[0]);
            if c.iter().all(|&p| partition.class_of(p) == class) {
                cubes[class][n].push(c.into_iter().map(|p| local[p]).collect());
            }
        }
    }
    partition
        .classes()
        .iter()
        .zip(cubes)
        .map(|(points, by_dim)| {
            let stored = StoredStructure::new(points.len(), by_dim)?;
            Ok(Fiber { points: points.clone(), structure: CubeStructure::stored(stored) })
        })
        .collect()
}

/// A cube whose image under a coordinate transposition is not a cube.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonNilspaceWitness {
    pub n: usize,
    pub transposition: [usize; 2],
    pub cube: Vec<usize>,
    pub image: Vec<usize>,
}

/// Searches `C^n(X)` for `2 <= n <= max_dim` and every transposition
/// `t_{i,j}`, in that order.
pub fn transposition_witness(
    x: &CubeStructure,
    max_dim: usize,
    budget: u64,
) -> Result<Option<NonNilspaceWitness>, AlgebraError> {
    for n in 2..=max_dim {
        let cubes = x.enumerate_values(n, budget)?;
        for i in 1..n {
            for j in i + 1..=n {
                let t = CubeMorphism::transposition(n, i, j)?.table();
                for c in &cubes {
                    let image = pull(c, &t);
                    if !x.contains_values(n, &image) {
                        return Ok(Some(NonNilspaceWitness { n, transposition: [i, j], cube: c.clone(), image }));
                    }
                }
            }
        }
    }
    Ok(None)
}
