use std::collections::HashSet;

use crate::budget::{check_budget, saturating_pow};
use crate::cubes::CubeMorphism;
use crate::groups::GroupTable;
use crate::structures::{Corner, CubeMap, CubeStructure, StructureError};

use super::{all_maps, approx_classes, compose_cubes, pull, AlgebraError, ApproxClasses};

fn unique_completion(x: &CubeStructure, corner: Vec<usize>) -> Result<usize, AlgebraError> {
    let f = Corner::new(2, corner)?;
    let found = x.complete_corner(&f)?;
    match found.as_slice() {
        [c] => Ok(c.get(f.top())),
        _ => Err(AlgebraError::NotStep { k: 1, corner: f.values().to_vec(), count: found.len() }),
    }
}

/// The group of a 1-step groupspace, on its own points with identity 0.
///
/// `x·y` is the completion of the corner `(0, x, y)` and `x⁻¹` the
/// completion of `(x, 0, 0)`. The result is validated as a group, and its
/// 2-cubes must be exactly `C^2(X)`.
pub fn recover_group(x: &CubeStructure, budget: u64) -> Result<GroupTable, AlgebraError> {
    if x.dim_cap() < 2 {
        return Err(StructureError::DimensionAboveCap { dim: 2, cap: x.dim_cap() }.into());
    }
    let m = x.size();
    check_budget(saturating_pow(m, 3), budget)?;
    let e = 0;
    let mut table = vec![vec![0; m]; m];
    for a in 0..m {
        for b in 0..m {
            table[a][b] = unique_completion(x, vec![e, a, b])?;
        }
    }
    let g = GroupTable::from_table(table, None)?;
    if g.identity() != e {
        return Err(AlgebraError::Verification(format!("recovered identity is {} instead of {e}", g.identity())));
    }
    for a in 0..m {
        if unique_completion(x, vec![a, e, e])? != g.inv(a) {
            return Err(AlgebraError::Verification(format!("completion of ({a}, e, e) is not the inverse of {a}")));
        }
    }
    let ours: HashSet<Vec<usize>> = x.enumerate_values(2, budget)?.into_iter().collect();
    let theirs: HashSet<Vec<usize>> = CubeStructure::d1(g.clone()).enumerate_values(2, budget)?.into_iter().collect();
    if ours != theirs {
        return Err(AlgebraError::Verification("2-cubes of the recovered group differ from C^2(X)".into()));
    }
    Ok(g)
}

/// The abelian group of a `k`-step, `k`-ergodic groupspace together with
/// the data it was read from.
#[derive(Clone, Debug)]
pub struct AbelianRecovery {
    pub k: usize,
    /// Direction `i` of the relation `≈_i` defining the classes.
    pub axis: usize,
    pub base_point: usize,
    /// The group on the points of the structure; its identity is
    /// `base_point`.
    pub group: GroupTable,
    /// `C^k(X)` split into `≈_i` classes.
    pub classes: ApproxClasses,
    /// `psi[x]`: the class of the `k`-cube equal to `x` at `0^k` and to the
    /// base point elsewhere.
    pub psi: Vec<usize>,
    /// `ops[j - 1][a][b]`: the class of `A ⊞_j B`.
    pub ops: Vec<Vec<Vec<usize>>>,
    /// Whether `C^{k+1}` was compared against the vanishing of alternating
    /// sums (skipped when over budget).
    pub classification_checked: bool,
}

impl AbelianRecovery {
    /// The point `x` with `psi[x] == class`.
    pub fn psi_inverse(&self, class: usize) -> usize {
        self.psi.iter().position(|&c| c == class).expect("psi is a bijection")
    }

    /// Class id of a `k`-cube.
    pub fn class_of_cube(&self, values: &[usize]) -> Option<usize> {
        self.classes.class_of(values)
    }

    /// `Σ (-1)^{h(v)} c(v)` in the recovered group.
    pub fn alternating_sum(&self, values: &[usize]) -> usize {
        alternating_sum(&self.group, values)
    }
}

fn alternating_sum(g: &GroupTable, values: &[usize]) -> usize {
    values.iter().enumerate().fold(
        g.identity(),
        |acc, (v, &p)| {
            if v.count_ones() % 2 == 0 {
                g.mul(acc, p)
            } else {
                g.div(acc, p)
            }
        },
    )
}

/// [`recover_abelian_on_axis`] with `i = 1`.
pub fn recover_abelian(
    f: &CubeStructure,
    k: usize,
    base_point: usize,
    budget: u64,
) -> Result<AbelianRecovery, AlgebraError> {
    recover_abelian_on_axis(f, k, base_point, 1, budget)
}

/// The single-vertex map: `x` at `w`, `base` elsewhere.
fn q(k: usize, w: usize, x: usize, base: usize) -> Vec<usize> {
    let mut c = vec![base; 1 << k];
    c[w] = x;
    c
}

/// Builds `Y = C^k(F)/≈_i`, its operations `⊞_j`, and the group on `F`
/// obtained through `ψ`.
///
/// Checks performed: `k`-ergodicity, uniqueness of `(k+1)`-completions,
/// one single-vertex representative per class at every vertex, agreement
/// of all `⊞_j` (and commutativity), the group axioms, the sign law
/// `ψ_w(x) = (-1)^{h(w)} ψ(x)`, the alternating-sum formula for the class
/// of every `k`-cube and, within budget, that `C^{k+1}(F)` is exactly the
/// set of maps with vanishing alternating sum.
pub fn recover_abelian_on_axis(
    f: &CubeStructure,
    k: usize,
    base_point: usize,
    axis: usize,
    budget: u64,
) -> Result<AbelianRecovery, AlgebraError> {
    if k < 2 {
        return Err(AlgebraError::InvalidParameter("abelian recovery needs k >= 2".into()));
    }
    if axis == 0 || axis > k + 1 {
        return Err(AlgebraError::IndexOutOfRange { index: axis, max: k + 1 });
    }
    let m = f.size();
    if base_point >= m {
        return Err(StructureError::ValueOutOfRange { value: base_point, size: m }.into());
    }
    if f.dim_cap() < k + 1 {
        return Err(StructureError::DimensionAboveCap { dim: k + 1, cap: f.dim_cap() }.into());
    }
    let corner_len = (1usize << (k + 1)) - 1;
    check_budget(saturating_pow(m, 1 << k), budget)?;
    check_budget(saturating_pow(m, corner_len + 1), budget)?;

    if let Some(missing) = all_maps(m, k).find(|c| !f.contains_values(k, c)) {
        return Err(AlgebraError::NotErgodic { k, missing });
    }
    // Every (k+1)-corner is a corner here, since all k-maps are cubes.
    let mut buf = vec![0usize; corner_len + 1];
    for corner in all_maps(m, k + 1).filter(|c| c[corner_len] == 0) {
        buf[..corner_len].copy_from_slice(&corner[..corner_len]);
        let mut count = 0;
        for t in 0..m {
            buf[corner_len] = t;
            if f.contains_values(k + 1, &buf) {
                count += 1;
            }
        }
        if count != 1 {
            return Err(AlgebraError::NotStep { k, corner: corner[..corner_len].to_vec(), count });
        }
    }

    let classes = approx_classes(f, k, axis, budget)?;
    let class_of = |c: &[usize]| classes.class_of(c).expect("every k-map is a cube");
    let n_classes = classes.num_classes();
    if n_classes != m {
        return Err(AlgebraError::Verification(format!("{n_classes} classes of k-cubes for {m} points")));
    }

    let psi_w: Vec<Vec<usize>> =
        (0..1usize << k).map(|w| (0..m).map(|x| class_of(&q(k, w, x, base_point))).collect()).collect();
    for (w, row) in psi_w.iter().enumerate() {
        let distinct: HashSet<usize> = row.iter().copied().collect();
        if distinct.len() != m {
            return Err(AlgebraError::Verification(format!(
                "single-vertex cubes at vertex {w} do not meet every class exactly once"
            )));
        }
    }
    let psi = psi_w[0].clone();
    let psi_inv = |class: usize| psi.iter().position(|&c| c == class).expect("bijection");
    let top = (1usize << k) - 1;
    let psi_top_inv = |class: usize| psi_w[top].iter().position(|&c| c == class).expect("bijection");

    let mut ops = Vec::with_capacity(k);
    for j in 1..=k {
        let r = CubeMorphism::reflection(k, j)?.table();
        let mut op = vec![vec![0usize; m]; m];
        for a in 0..m {
            // Two representatives of the class: the spot check for
            // independence of the choice.
            let reps = [q(k, 0, psi_inv(a), base_point), q(k, top, psi_top_inv(a), base_point)];
            for b in 0..m {
                let mut results = Vec::with_capacity(2);
                for c in &reps {
                    let mut c2 = pull(c, &r);
                    let y = (0..m)
                        .find(|&y| {
                            c2[top] = y;
                            class_of(&c2) == b
                        })
                        .ok_or_else(|| AlgebraError::Verification(format!("no composable representative for {j}")))?;
                    c2[top] = y;
                    let c1 = CubeMap::new(k, c.clone())?;
                    let c3 = compose_cubes(f, &c1, &CubeMap::new(k, c2)?, j)?;
                    results.push(class_of(c3.values()));
                }
                if results[0] != results[1] {
                    return Err(AlgebraError::Verification(format!(
                        "the class of a {j}-composition depends on the representative"
                    )));
                }
                op[a][b] = results[0];
            }
        }
        ops.push(op);
    }

    for j in 1..k {
        if ops[j] != ops[0] {
            return Err(AlgebraError::Verification(format!("the operations for 1 and {} differ", j + 1)));
        }
    }
    let op = &ops[0];
    if let Some((a, b)) = (0..m).flat_map(|a| (0..m).map(move |b| (a, b))).find(|&(a, b)| op[a][b] != op[b][a]) {
        return Err(AlgebraError::Verification(format!("class operation is not commutative at ({a}, {b})")));
    }
    let y_group = GroupTable::from_table(op.clone(), None)?;
    let e_class = psi[base_point];
    if y_group.identity() != e_class {
        return Err(AlgebraError::Verification("the constant cube's class is not the identity".into()));
    }

    let table: Vec<Vec<usize>> = (0..m).map(|x| (0..m).map(|y| psi_inv(op[psi[x]][psi[y]])).collect()).collect();
    let group = GroupTable::from_table(table, None)?;
    debug_assert_eq!(group.identity(), base_point);

    for (w, row) in psi_w.iter().enumerate() {
        for x in 0..m {
            let expected = if w.count_ones() % 2 == 0 { psi[x] } else { y_group.inv(psi[x]) };
            if row[x] != expected {
                return Err(AlgebraError::Verification(format!("sign law fails at vertex {w}, point {x}")));
            }
        }
    }
    for (p, c) in classes.cubes.iter().enumerate() {
        if psi_inv(classes.partition.class_of(p)) != alternating_sum(&group, c) {
            return Err(AlgebraError::Verification(format!("class of cube {c:?} is not its alternating sum")));
        }
    }
    let full = saturating_pow(m, 1 << (k + 1));
    let classification_checked = full <= u128::from(budget);
    if classification_checked {
        let id = group.identity();
        if let Some(c) = all_maps(m, k + 1).find(|c| f.contains_values(k + 1, c) != (alternating_sum(&group, c) == id))
        {
            return Err(AlgebraError::Verification(format!("membership of {c:?} disagrees with its alternating sum")));
        }
    }

    Ok(AbelianRecovery { k, axis, base_point, group, classes, psi, ops, classification_checked })
}

/// `(A ⊞_j B) ⊞_l (C ⊞_j D) = (A ⊞_l C) ⊞_j (B ⊞_l D)` for every quadruple
/// of classes.
pub fn interchange_law_holds(rec: &AbelianRecovery, j: usize, l: usize) -> bool {
    let (oj, ol) = (&rec.ops[j - 1], &rec.ops[l - 1]);
    let m = oj.len();
    (0..m).all(|a| (0..m).all(|b| (0..m).all(|c| (0..m).all(|d| ol[oj[a][b]][oj[c][d]] == oj[ol[a][c]][ol[b][d]]))))
}
