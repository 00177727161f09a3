use std::collections::HashMap;

use crate::budget::{check_budget, saturating_pow};
use crate::structures::{CubeMap, CubeStructure};

use super::{AlgebraError, Partition};

/// The `(n+1)`-map whose `(i,0)`-face is `c1` and whose `(i,1)`-face is
/// `c2`.
pub fn glue_faces(c1: &[usize], c2: &[usize], i: usize) -> Vec<usize> {
    debug_assert_eq!(c1.len(), c2.len());
    let low = (1usize << (i - 1)) - 1;
    (0..2 * c1.len())
        .map(|u| {
            let idx = (u & low) | ((u >> i) << (i - 1));
            if (u >> (i - 1)) & 1 == 1 {
                c2[idx]
            } else {
                c1[idx]
            }
        })
        .collect()
}

fn face(values: &[usize], n: usize, j: usize, side: bool) -> Vec<usize> {
    crate::structures::face_values(values, n, j, side)
}

/// Whether `c1`'s `(j,1)`-face equals `c2`'s `(j,0)`-face.
pub fn is_composable(c1: &CubeMap, c2: &CubeMap, j: usize) -> bool {
    c1.dim() == c2.dim()
        && (1..=c1.dim()).contains(&j)
        && face(c1.values(), c1.dim(), j, true) == face(c2.values(), c2.dim(), j, false)
}

/// `c1 ⊞_j c2`: the cube with `(j,0)`-face from `c1` and `(j,1)`-face from
/// `c2`.
pub fn compose_cubes(x: &CubeStructure, c1: &CubeMap, c2: &CubeMap, j: usize) -> Result<CubeMap, AlgebraError> {
    let n = c1.dim();
    if c2.dim() != n {
        return Err(crate::structures::StructureError::DimensionMismatch { expected: n, found: c2.dim() }.into());
    }
    if j == 0 || j > n {
        return Err(AlgebraError::IndexOutOfRange { index: j, max: n });
    }
    if !x.contains(c1)? {
        return Err(AlgebraError::NotCube { argument: "c1" });
    }
    if !x.contains(c2)? {
        return Err(AlgebraError::NotCube { argument: "c2" });
    }
    if !is_composable(c1, c2, j) {
        return Err(AlgebraError::NotComposable { j });
    }
    let values = glue_faces(&face(c1.values(), n, j, false), &face(c2.values(), n, j, true), j);
    let c3 = CubeMap::new(n, values)?;
    if !x.contains_values(n, c3.values()) {
        return Err(AlgebraError::Verification(format!("the {j}-composition is not a cube")));
    }
    Ok(c3)
}

/// `c1 ≈_i c2`: the map with faces `c1`, `c2` in direction `i` is an
/// `(n+1)`-cube.
pub fn approx_related(x: &CubeStructure, c1: &[usize], c2: &[usize], i: usize) -> bool {
    let n = c1.len().trailing_zeros() as usize;
    x.contains_values(n + 1, &glue_faces(c1, c2, i))
}

/// The classes of `≈_i` on `C^n(X)`.
#[derive(Clone, Debug)]
pub struct ApproxClasses {
    pub n: usize,
    pub axis: usize,
    pub cubes: Vec<Vec<usize>>,
    pub partition: Partition,
    index: HashMap<Vec<usize>, usize>,
}

impl ApproxClasses {
    pub fn num_classes(&self) -> usize {
        self.partition.num_classes()
    }

    /// Position of a cube in `cubes`.
    pub fn index_of(&self, values: &[usize]) -> Option<usize> {
        self.index.get(values).copied()
    }

    pub fn class_of(&self, values: &[usize]) -> Option<usize> {
        self.index_of(values).map(|p| self.partition.class_of(p))
    }

    /// The least cube of a class, in enumeration order.
    pub fn representative(&self, class: usize) -> &[usize] {
        &self.cubes[self.partition.class(class)[0]]
    }
}

/// Partitions `C^n(X)` by `≈_i`, testing every pair. Reflexivity, symmetry
/// and transitivity are all re-verified on the tested pairs.
pub fn approx_classes(x: &CubeStructure, n: usize, i: usize, budget: u64) -> Result<ApproxClasses, AlgebraError> {
    if i == 0 || i > n + 1 {
        return Err(AlgebraError::IndexOutOfRange { index: i, max: n + 1 });
    }
    if n + 1 > x.dim_cap() {
        return Err(crate::structures::StructureError::DimensionAboveCap { dim: n + 1, cap: x.dim_cap() }.into());
    }
    let cubes = x.enumerate_values(n, budget)?;
    let count = cubes.len();
    check_budget(saturating_pow(count, 2).saturating_mul(1 << (n + 1)), budget)?;
    let mut related = vec![false; count * count];
    for a in 0..count {
        for b in a..count {
            if approx_related(x, &cubes[a], &cubes[b], i) {
                related[a * count + b] = true;
            }
        }
    }
    if let Some(a) = (0..count).find(|&a| !related[a * count + a]) {
        return Err(AlgebraError::NotTransitive { a, b: a });
    }
    let pairs = (0..count).flat_map(|a| (a + 1..count).map(move |b| (a, b)));
    let pairs: Vec<(usize, usize)> = pairs.filter(|&(a, b)| related[a * count + b]).collect();
    for &(a, b) in &pairs {
        if !approx_related(x, &cubes[b], &cubes[a], i) {
            return Err(AlgebraError::NotTransitive { a: b, b: a });
        }
    }
    let partition = Partition::from_pairs(count, pairs);
    for class in partition.classes() {
        for (p, &a) in class.iter().enumerate() {
            if let Some(&b) = class[p + 1..].iter().find(|&&b| !related[a * count + b]) {
                return Err(AlgebraError::NotTransitive { a, b });
            }
        }
    }
    let index = cubes.iter().enumerate().map(|(p, c)| (c.clone(), p)).collect();
    Ok(ApproxClasses { n, axis: i, cubes, partition, index })
}
