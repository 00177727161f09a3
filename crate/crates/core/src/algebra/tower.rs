use serde::Serialize;

use crate::groups::GroupTable;
use crate::structures::CubeStructure;

use super::{
    approx_related, fibers, quotient_structure, recover_abelian, recover_group, AbelianRecovery, AlgebraError, Fiber,
    Partition,
};

/// One level `X_i = X/~_i` of the tower.
#[derive(Clone, Debug, Serialize)]
pub struct TowerLevel {
    pub level: usize,
    /// Number of points of `X_i`.
    pub points: usize,
    /// `π_i`: class of each point of `X`.
    pub projection: Vec<usize>,
    /// The structure group `G_i`, on the points of a fiber of `X_i` (on
    /// `X_1` itself for `i = 1`).
    pub group: GroupTable,
    pub abelian: bool,
    pub fiber_count: usize,
    /// For `i >= 2`: all fiber groups are isomorphic, and the transport of
    /// `≈_1` classes between fibers is a group isomorphism.
    pub fibers_isomorphic: bool,
    #[serde(skip)]
    pub structure: CubeStructure,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureTower {
    pub dim_cap: usize,
    pub levels: Vec<TowerLevel>,
    /// `π_{j,l} ∘ π_{i,j} = π_{i,l}` for all `l <= j <= i`, including the
    /// one-point level 0.
    pub projections_compatible: bool,
}

/// The factors `X_1..X_{k_cap}` with their structure groups. Cubes are
/// materialized up to `dim_cap`, which must be at least `k_cap + 1`.
pub fn structure_tower(
    x: &CubeStructure,
    k_cap: usize,
    dim_cap: usize,
    budget: u64,
) -> Result<StructureTower, AlgebraError> {
    if k_cap == 0 {
        return Err(AlgebraError::InvalidParameter("k_cap must be at least 1".into()));
    }
    if dim_cap < k_cap + 1 {
        return Err(AlgebraError::InvalidParameter(format!("dim_cap must be at least {}", k_cap + 1)));
    }
    let mut partitions = vec![Partition::single(x.size())];
    let mut levels = Vec::with_capacity(k_cap);
    for i in 1..=k_cap {
        let q = quotient_structure(x, i, dim_cap, budget)?;
        let (group, fiber_count, fibers_isomorphic) = if i == 1 {
            (recover_group(&q.structure, budget)?, 1, true)
        } else {
            let fibs = fibers(&q.structure, i, dim_cap, budget)?;
            let recs =
                fibs.iter().map(|f| recover_abelian(&f.structure, i, 0, budget)).collect::<Result<Vec<_>, _>>()?;
            let mut iso = recs.iter().all(|r| r.group.is_isomorphic(&recs[0].group));
            for r in 1..fibs.len() {
                iso &= transport_is_isomorphism(&q.structure, (&fibs[0], &recs[0]), (&fibs[r], &recs[r]))?;
            }
            (recs[0].group.clone(), fibs.len(), iso)
        };
        partitions.push(q.partition.clone());
        levels.push(TowerLevel {
            level: i,
            points: q.partition.num_classes(),
            projection: q.partition.labels().to_vec(),
            abelian: group.is_abelian(),
            group,
            fiber_count,
            fibers_isomorphic,
            structure: q.structure,
        });
    }
    Ok(StructureTower { dim_cap, levels, projections_compatible: projections_compatible(&partitions) })
}

fn projections_compatible(partitions: &[Partition]) -> bool {
    let maps: Vec<Vec<Option<Vec<usize>>>> =
        partitions.iter().map(|finer| partitions.iter().map(|coarser| finer.induced_map(coarser)).collect()).collect();
    for i in 0..partitions.len() {
        for j in 0..=i {
            let Some(ij) = &maps[i][j] else { return false };
            for l in 0..=j {
                let (Some(jl), Some(il)) = (&maps[j][l], &maps[i][l]) else { return false };
                if ij.iter().map(|&c| jl[c]).ne(il.iter().copied()) {
                    return false;
                }
            }
        }
    }
    true
}

/// Sends each class of `Y_{F1}` to the class of `Y_{F2}` that is
/// `≈_1`-equivalent to it inside `X`, and checks that this is a bijective
/// homomorphism.
fn transport_is_isomorphism(
    x: &CubeStructure,
    (f1, r1): (&Fiber, &AbelianRecovery),
    (f2, r2): (&Fiber, &AbelianRecovery),
) -> Result<bool, AlgebraError> {
    let globalize = |f: &Fiber, c: &[usize]| -> Vec<usize> { c.iter().map(|&l| f.global(l)).collect() };
    let n1 = r1.classes.num_classes();
    let n2 = r2.classes.num_classes();
    if n1 != n2 {
        return Ok(false);
    }
    let mut phi = Vec::with_capacity(n1);
    for a in 0..n1 {
        let c1 = globalize(f1, r1.classes.representative(a));
        let hits: Vec<usize> =
            (0..n2).filter(|&b| approx_related(x, &c1, &globalize(f2, r2.classes.representative(b)), 1)).collect();
        if hits.len() != 1 {
            return Ok(false);
        }
        phi.push(hits[0]);
    }
    let mut seen = phi.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != n1 {
        return Ok(false);
    }
    let (o1, o2) = (&r1.ops[0], &r2.ops[0]);
    Ok((0..n1).all(|a| (0..n1).all(|b| phi[o1[a][b]] == o2[phi[a]][phi[b]])))
}

/// The point `x^A` for a class `A` given by one of its `k`-cubes: the
/// value at `0^k` of the cube that is `x` elsewhere and lies in `A`.
fn act(f: &CubeStructure, class_rep: &[usize], x: usize) -> Result<usize, AlgebraError> {
    let len = class_rep.len();
    let hits: Vec<usize> = (0..f.size())
        .filter(|&y| {
            let mut c = vec![x; len];
            c[0] = y;
            approx_related(f, &c, class_rep, 1)
        })
        .collect();
    match hits.as_slice() {
        [y] => Ok(*y),
        _ => Err(AlgebraError::Verification(format!("{} candidates for the action on {x}", hits.len()))),
    }
}

/// `x^a` in a `k`-step structure. `a` is a point of the fiber of `x`,
/// read as an element of the fiber group recovered with the least point of
/// the fiber as base point.
pub fn fiber_action(
    x: &CubeStructure,
    k: usize,
    a: usize,
    point: usize,
    dim_cap: usize,
    budget: u64,
) -> Result<usize, AlgebraError> {
    for v in [a, point] {
        if v >= x.size() {
            return Err(crate::structures::StructureError::ValueOutOfRange { value: v, size: x.size() }.into());
        }
    }
    let fibs = fibers(x, k, dim_cap.max(k + 1), budget)?;
    let fiber = fibs.iter().find(|f| f.local(point).is_some()).expect("fibers cover the ground set");
    let local_a = fiber.local(a).ok_or(AlgebraError::NotInFiber { point: a, of: point })?;
    let local_x = fiber.local(point).expect("found above");
    let rec = recover_abelian(&fiber.structure, k, 0, budget)?;
    let class = rec.psi[local_a];
    Ok(fiber.global(act(&fiber.structure, rec.classes.representative(class), local_x)?))
}

/// Properties of the fiber action over all fibers of a `k`-step structure.
#[derive(Clone, Debug, Serialize)]
pub struct FiberActionReport {
    pub k: usize,
    pub fiber_sizes: Vec<usize>,
    pub identity_acts_trivially: bool,
    /// `(x^A)^B = x^{A ⊞ B}`.
    pub action_law: bool,
    pub free: bool,
    pub transitive: bool,
    /// For every base point `x_0`: `x^A = x + ψ_{x_0}^{-1}(A)`.
    pub base_point_independent: bool,
    pub base_points_checked: usize,
}

impl FiberActionReport {
    pub fn all_hold(&self) -> bool {
        self.identity_acts_trivially && self.action_law && self.free && self.transitive && self.base_point_independent
    }
}

pub fn verify_fiber_action(
    x: &CubeStructure,
    k: usize,
    dim_cap: usize,
    budget: u64,
) -> Result<FiberActionReport, AlgebraError> {
    let fibs = fibers(x, k, dim_cap.max(k + 1), budget)?;
    let mut report = FiberActionReport {
        k,
        fiber_sizes: fibs.iter().map(Fiber::size).collect(),
        identity_acts_trivially: true,
        action_law: true,
        free: true,
        transitive: true,
        base_point_independent: true,
        base_points_checked: 0,
    };
    for fiber in &fibs {
        let f = &fiber.structure;
        let m = fiber.size();
        let rec = recover_abelian(f, k, 0, budget)?;
        let classes = rec.classes.num_classes();
        // acted[A][x] = x^A
        let acted = (0..classes)
            .map(|c| (0..m).map(|p| act(f, rec.classes.representative(c), p)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let e = rec.psi[rec.base_point];
        report.identity_acts_trivially &= acted[e].iter().enumerate().all(|(p, &y)| p == y);
        let op = &rec.ops[0];
        for a in 0..classes {
            for b in 0..classes {
                report.action_law &= (0..m).all(|p| acted[b][acted[a][p]] == acted[op[a][b]][p]);
            }
        }
        for p in 0..m {
            let mut orbit: Vec<usize> = (0..classes).map(|a| acted[a][p]).collect();
            orbit.sort_unstable();
            orbit.dedup();
            report.free &= orbit.len() == classes;
            report.transitive &= orbit.len() == m;
        }
        for base in 0..m {
            let other = recover_abelian(f, k, base, budget)?;
            report.base_points_checked += 1;
            for a in 0..classes {
                let class = other.class_of_cube(rec.classes.representative(a)).expect("same cube set");
                let shift = other.psi_inverse(class);
                report.base_point_independent &= (0..m).all(|p| acted[a][p] == other.group.mul(p, shift));
            }
        }
    }
    Ok(report)
}
