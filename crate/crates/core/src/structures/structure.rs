use std::collections::HashSet;

use crate::budget::{check_budget, saturating_pow};
use crate::groups::{GroupTable, Quotient};

use super::{Corner, CubeMap, StoredStructure, StructureError};

/// Dimension cap for the algebraic variants; membership is `O(2^n)` there,
/// so the cap only guards memory.
pub const ALGEBRAIC_DIM_CAP: usize = 16;

/// The structure `H_{Z,k}(G)`: pointwise products of `D_1(G)` cubes with
/// `D_k(Z)` cubes for a nontrivial central subgroup `Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hzk {
    group: GroupTable,
    center: Vec<usize>,
    k: usize,
    quotient: Quotient,
    in_z: Vec<bool>,
}

impl Hzk {
    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    /// The central subgroup `Z`, sorted.
    pub fn center(&self) -> &[usize] {
        &self.center
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn quotient(&self) -> &Quotient {
        &self.quotient
    }
}

/// A cube structure on a finite ground set `0..size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CubeStructure {
    /// Cubes of a group: `v ↦ a_0 a_1^{v_1} ... a_n^{v_n}`.
    D1(GroupTable),
    /// Degree-`k` cubes of an abelian group.
    Dk {
        group: GroupTable,
        k: usize,
    },
    Hzk(Hzk),
    Stored(StoredStructure),
}

impl CubeStructure {
    pub fn d1(group: GroupTable) -> Self {
        CubeStructure::D1(group)
    }

    pub fn dk(group: GroupTable, k: usize) -> Result<Self, StructureError> {
        if !group.is_abelian() {
            return Err(StructureError::NotAbelian);
        }
        if k == 0 {
            return Err(StructureError::Spec("degree k must be at least 1".into()));
        }
        Ok(CubeStructure::Dk { group, k })
    }

    pub fn hzk(group: GroupTable, center: &[usize], k: usize) -> Result<Self, StructureError> {
        if k == 0 {
            return Err(StructureError::Spec("degree k must be at least 1".into()));
        }
        let mut center = center.to_vec();
        center.sort_unstable();
        center.dedup();
        group.check_central(&center)?;
        let quotient = group.quotient(&center)?;
        let mut in_z = vec![false; group.order()];
        for &z in &center {
            in_z[z] = true;
        }
        Ok(CubeStructure::Hzk(Hzk { group, center, k, quotient, in_z }))
    }

    pub fn stored(s: StoredStructure) -> Self {
        CubeStructure::Stored(s)
    }

    /// Number of points of the ground set.
    pub fn size(&self) -> usize {
        match self {
            CubeStructure::D1(g) | CubeStructure::Dk { group: g, .. } => g.order(),
            CubeStructure::Hzk(h) => h.group.order(),
            CubeStructure::Stored(s) => s.size(),
        }
    }

    /// Largest dimension for which membership is defined.
    pub fn dim_cap(&self) -> usize {
        match self {
            CubeStructure::Stored(s) => s.max_dim(),
            _ => ALGEBRAIC_DIM_CAP,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            CubeStructure::D1(g) => format!("D1(G), |G| = {}", g.order()),
            CubeStructure::Dk { group, k } => format!("D{k}(A), |A| = {}", group.order()),
            CubeStructure::Hzk(h) => {
                format!("H_Z,{}(G), |G| = {}, |Z| = {}", h.k, h.group.order(), h.center.len())
            }
            CubeStructure::Stored(s) => format!("stored, {} points, max_dim {}", s.size(), s.max_dim()),
        }
    }

    /// Point labels, when the ground set comes from a group.
    pub fn point_name(&self, x: usize) -> String {
        match self {
            CubeStructure::D1(g) | CubeStructure::Dk { group: g, .. } => g.name(x),
            CubeStructure::Hzk(h) => h.group.name(x),
            CubeStructure::Stored(_) => x.to_string(),
        }
    }

    fn check_dim(&self, n: usize) -> Result<(), StructureError> {
        if n > self.dim_cap() {
            Err(StructureError::DimensionAboveCap { dim: n, cap: self.dim_cap() })
        } else {
            Ok(())
        }
    }

    fn check_values(&self, values: &[usize]) -> Result<(), StructureError> {
        let size = self.size();
        match values.iter().find(|&&x| x >= size) {
            Some(&value) => Err(StructureError::ValueOutOfRange { value, size }),
            None => Ok(()),
        }
    }

    /// Whether `c ∈ C^n(X)`.
    pub fn contains(&self, c: &CubeMap) -> Result<bool, StructureError> {
        self.check_dim(c.dim())?;
        self.check_values(c.values())?;
        Ok(self.contains_values(c.dim(), c.values()))
    }

    /// Membership without range checks; `values` has length `2^n` with
    /// `n <= dim_cap()` and entries below `size()`.
    pub fn contains_values(&self, n: usize, values: &[usize]) -> bool {
        debug_assert_eq!(values.len(), 1 << n);
        match self {
            CubeStructure::D1(g) => is_simple_cube(g, n, values),
            CubeStructure::Dk { group, k } => is_degree_k_cube(group, n, *k, values),
            CubeStructure::Hzk(h) => hzk_contains(h, n, values),
            CubeStructure::Stored(s) => s.contains_values(n, values),
        }
    }

    /// Every value at `1^n` that completes the corner to a cube, in
    /// increasing order.
    pub fn complete_corner(&self, f: &Corner) -> Result<Vec<CubeMap>, StructureError> {
        self.check_dim(f.dim())?;
        self.check_values(f.values())?;
        for i in 1..=f.dim() {
            let face = f.lower_face(i)?;
            if !self.contains_values(face.dim(), face.values()) {
                return Err(StructureError::LowerFaceNotCube { face: i });
            }
        }
        Ok(self.completions_unchecked(f))
    }

    /// Completions of a corner whose lower faces are already known to be
    /// cubes.
    pub(crate) fn completions_unchecked(&self, f: &Corner) -> Vec<CubeMap> {
        let mut buf = f.with_top(0);
        let top = f.top();
        let mut out = Vec::new();
        for x in 0..self.size() {
            buf.set(top, x);
            if self.contains_values(f.dim(), buf.values()) {
                out.push(buf.clone());
            }
        }
        out
    }

    /// Planned work for [`Self::enumerate`] at dimension `n`.
    pub fn enumeration_cost(&self, n: usize) -> u128 {
        match self {
            CubeStructure::D1(g) => saturating_pow(g.order(), n + 1),
            CubeStructure::Dk { group, k } => saturating_pow(group.order(), low_hull_size(n, *k)),
            CubeStructure::Hzk(h) => saturating_pow(h.group.order(), n + 1)
                .saturating_mul(saturating_pow(h.center.len(), low_hull_size(n, h.k))),
            CubeStructure::Stored(s) => s.cubes(n).map_or(0, |c| c.len() as u128),
        }
    }

    /// All `n`-cubes, each exactly once.
    pub fn enumerate(&self, n: usize, budget: u64) -> Result<Vec<CubeMap>, StructureError> {
        Ok(self
            .enumerate_values(n, budget)?
            .into_iter()
            .map(|v| CubeMap::new(n, v).expect("enumerated cubes have length 2^n"))
            .collect())
    }

    /// All `n`-cubes as raw vertex tables, each exactly once, in a
    /// deterministic order.
    pub fn enumerate_values(&self, n: usize, budget: u64) -> Result<Vec<Vec<usize>>, StructureError> {
        self.check_dim(n)?;
        check_budget(self.enumeration_cost(n), budget)?;
        Ok(match self {
            CubeStructure::D1(g) => enumerate_simple(g, n),
            CubeStructure::Dk { group, k } => enumerate_degree_k(group, &(0..group.order()).collect::<Vec<_>>(), n, *k),
            CubeStructure::Hzk(h) => {
                let g = &h.group;
                let simple = enumerate_simple(g, n);
                let central = enumerate_degree_k(g, &h.center, n, h.k);
                let mut seen = HashSet::with_capacity(simple.len() * central.len());
                let mut out = Vec::new();
                for s in &simple {
                    for z in &central {
                        let c: Vec<usize> = s.iter().zip(z).map(|(&a, &b)| g.mul(a, b)).collect();
                        if seen.insert(c.clone()) {
                            out.push(c);
                        }
                    }
                }
                out
            }
            CubeStructure::Stored(s) => s.cubes(n).expect("dimension checked").to_vec(),
        })
    }

    /// Every corner of dimension `n` (all lower faces are cubes).
    pub fn corners(&self, n: usize, budget: u64) -> Result<Vec<Corner>, StructureError> {
        self.check_dim(n)?;
        if n == 0 {
            return Ok(vec![Corner::new(0, vec![]).expect("empty corner")]);
        }
        check_budget(saturating_pow(self.size(), (1 << n) - 1), budget)?;
        let top = (1usize << n) - 1;
        // After assigning mask `top - 2^(i-1)` the whole face (i,0) is known.
        let mut closes: Vec<Vec<usize>> = vec![Vec::new(); top];
        for i in 1..=n {
            closes[top - (1 << (i - 1))].push(i);
        }
        let mut values = vec![0usize; top + 1];
        let mut out = Vec::new();
        self.corner_search(n, 0, &closes, &mut values, &mut out);
        Ok(out)
    }

    fn corner_search(
        &self,
        n: usize,
        mask: usize,
        closes: &[Vec<usize>],
        values: &mut Vec<usize>,
        out: &mut Vec<Corner>,
    ) {
        let top = (1usize << n) - 1;
        if mask == top {
            out.push(Corner::new(n, values[..top].to_vec()).expect("length 2^n - 1"));
            return;
        }
        for x in 0..self.size() {
            values[mask] = x;
            let ok = closes[mask].iter().all(|&i| {
                let face = super::cube_map::face_values(values, n, i, false);
                self.contains_values(n - 1, &face)
            });
            if ok {
                self.corner_search(n, mask + 1, closes, values, out);
            }
        }
    }

    /// Materializes dimensions `0..=max_dim` as a stored structure.
    pub fn materialize(&self, max_dim: usize, budget: u64) -> Result<StoredStructure, StructureError> {
        let cubes = (0..=max_dim).map(|n| self.enumerate_values(n, budget)).collect::<Result<Vec<_>, _>>()?;
        StoredStructure::new(self.size(), cubes)
    }
}

/// Number of vertices of `{0,1}^n` of height at most `k`.
pub fn low_hull_size(n: usize, k: usize) -> usize {
    (0..1u32 << n).filter(|b| b.count_ones() as usize <= k).count()
}

/// Reconstructs `a_0 = c(0)`, `a_i = c(0)^{-1} c(e_i)` and checks
/// `c(v) = a_0 ∏ a_i^{v_i}` everywhere.
pub(crate) fn is_simple_cube(g: &GroupTable, n: usize, values: &[usize]) -> bool {
    let a0_inv = g.inv(values[0]);
    (1..1usize << n).all(|v| {
        let hb = usize::BITS - 1 - v.leading_zeros();
        let rest = v & !(1 << hb);
        rest == 0 || values[v] == g.mul(values[rest], g.mul(a0_inv, values[1 << hb]))
    })
}

/// Evaluates the simple cube with parameters `a[0..=n]`.
pub(crate) fn simple_cube(g: &GroupTable, a: &[usize]) -> Vec<usize> {
    let n = a.len() - 1;
    let mut values = vec![a[0]; 1 << n];
    for v in 1..1usize << n {
        let hb = (usize::BITS - 1 - v.leading_zeros()) as usize;
        values[v] = g.mul(values[v & !(1 << hb)], a[hb + 1]);
    }
    values
}

/// Alternating sums `Σ_{u ⊆ v} (-1)^{h(u)} c(u)` for every `v`, computed in
/// an abelian subgroup of `g`.
pub(crate) fn alternating_sums(g: &GroupTable, n: usize, values: &[usize]) -> Vec<usize> {
    let mut a: Vec<usize> =
        values.iter().enumerate().map(|(u, &x)| if u.count_ones() % 2 == 1 { g.inv(x) } else { x }).collect();
    for bit in 0..n {
        for v in 0..1usize << n {
            if v >> bit & 1 == 1 {
                a[v] = g.mul(a[v], a[v ^ (1 << bit)]);
            }
        }
    }
    a
}

/// `w(c ∘ s_v) = 0` for every `v` of height at least `k + 1`.
pub(crate) fn is_degree_k_cube(g: &GroupTable, n: usize, k: usize, values: &[usize]) -> bool {
    if n <= k {
        return true;
    }
    let sums = alternating_sums(g, n, values);
    let id = g.identity();
    sums.iter().enumerate().all(|(v, &s)| v.count_ones() as usize <= k || s == id)
}

fn hzk_contains(h: &Hzk, n: usize, values: &[usize]) -> bool {
    let g = &h.group;
    let projected: Vec<usize> = values.iter().map(|&x| h.quotient.projection[x]).collect();
    if !is_simple_cube(&h.quotient.group, n, &projected) {
        return false;
    }
    let mut params = Vec::with_capacity(n + 1);
    params.push(values[0]);
    params.extend((0..n).map(|i| g.ldiv(values[0], values[1 << i])));
    let lift = simple_cube(g, &params);
    let z: Vec<usize> = lift.iter().zip(values).map(|(&l, &c)| g.ldiv(l, c)).collect();
    z.iter().all(|&x| h.in_z[x]) && is_degree_k_cube(g, n, h.k, &z)
}

/// Membership in `H_{Z,k}(G)` by searching over all factorizations
/// `c = g f` with `g ∈ C^n(D_1(G))`. Exponential; meant as an oracle for the
/// lift-based test at small `n`.
pub fn hzk_contains_by_search(h: &Hzk, c: &CubeMap, budget: u64) -> Result<bool, StructureError> {
    let g = &h.group;
    let n = c.dim();
    check_budget(saturating_pow(g.order(), n + 1), budget)?;
    if let Some(&value) = c.values().iter().find(|&&x| x >= g.order()) {
        return Err(StructureError::ValueOutOfRange { value, size: g.order() });
    }
    Ok(enumerate_simple(g, n).iter().any(|s| {
        let f: Vec<usize> = s.iter().zip(c.values()).map(|(&a, &x)| g.ldiv(a, x)).collect();
        f.iter().all(|&x| h.in_z[x]) && is_degree_k_cube(g, n, h.k, &f)
    }))
}

fn enumerate_simple(g: &GroupTable, n: usize) -> Vec<Vec<usize>> {
    let order = g.order();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut a = vec![0usize; n + 1];
    loop {
        let c = simple_cube(g, &a);
        if seen.insert(c.clone()) {
            out.push(c);
        }
        // Odometer over G^{n+1}, last parameter fastest.
        let mut i = n + 1;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            a[i] += 1;
            if a[i] < order {
                break;
            }
            a[i] = 0;
        }
    }
}

/// Degree-`k` cubes with values in `elems` (an abelian subgroup of `g`):
/// free values on the low hull, then the unique upward completion with
/// vanishing alternating sums.
pub(crate) fn enumerate_degree_k(g: &GroupTable, elems: &[usize], n: usize, k: usize) -> Vec<Vec<usize>> {
    let size = 1usize << n;
    let low: Vec<usize> = (0..size).filter(|v| v.count_ones() as usize <= k).collect();
    let mut high: Vec<usize> = (0..size).filter(|v| v.count_ones() as usize > k).collect();
    high.sort_by_key(|v| (v.count_ones(), *v));
    // For each high vertex, the proper submasks with the sign of their term.
    let recipes: Vec<(usize, Vec<(usize, bool)>)> = high
        .iter()
        .map(|&v| {
            let hv = v.count_ones();
            let mut terms = Vec::new();
            let mut u = v;
            loop {
                u = (u.wrapping_sub(1)) & v;
                terms.push((u, (hv - u.count_ones()) % 2 == 1));
                if u == 0 {
                    break;
                }
            }
            (v, terms)
        })
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; low.len()];
    let mut values = vec![g.identity(); size];
    loop {
        for (slot, &v) in low.iter().enumerate() {
            values[v] = elems[idx[slot]];
        }
        for (v, terms) in &recipes {
            values[*v] = terms.iter().fold(g.identity(), |acc, &(u, positive)| {
                g.mul(acc, if positive { values[u] } else { g.inv(values[u]) })
            });
        }
        out.push(values.clone());
        let mut i = low.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < elems.len() {
                break;
            }
            idx[i] = 0;
        }
    }
}
