use std::collections::BTreeMap;

use crate::cubes::{CubeMorphism, SimplicialSet, Vertex};
use crate::groups::GroupTable;

use super::{Corner, CubeMap, CubeStructure, StructureError};

/// Rewrites a general cube `v ↦ ∏ a_{i, v_i}` in simple form: returns
/// `(c, h)` with `∏ a_{i, v_i} = c ∏ h_i^{v_i}` for every `v`.
///
/// `system[i - 1] = [a_{i,0}, a_{i,1}]`.
pub fn general_to_simple(g: &GroupTable, system: &[[usize; 2]]) -> (usize, Vec<usize>) {
    let mut c = g.identity();
    let mut h: Vec<usize> = Vec::with_capacity(system.len());
    for &[a0, a1] in system {
        c = g.mul(c, a0);
        for hi in h.iter_mut() {
            *hi = g.conj(*hi, a0);
        }
        h.push(g.ldiv(a0, a1));
    }
    (c, h)
}

/// Vertex table of the general cube `v ↦ ∏ a_{i, v_i}`.
pub fn general_cube(g: &GroupTable, system: &[[usize; 2]]) -> Vec<usize> {
    let n = system.len();
    (0..1usize << n).map(|v| g.product((0..n).map(|i| system[i][v >> i & 1]))).collect()
}

/// Extends a cube preserving map on a simplicial set to a full cube.
///
/// Missing vertices are filled by increasing height; each one is the top of
/// the subcube below it, and the least completion of that corner is used.
pub fn glue_simplicial(
    x: &CubeStructure,
    s: &SimplicialSet,
    f: &BTreeMap<Vertex, usize>,
) -> Result<CubeMap, StructureError> {
    let n = s.dim();
    if n > x.dim_cap() {
        return Err(StructureError::DimensionAboveCap { dim: n, cap: x.dim_cap() });
    }
    if f.len() != s.len() || s.iter().any(|v| !f.contains_key(&v)) {
        return Err(StructureError::Spec("the map must be defined exactly on the simplicial set".into()));
    }
    if let Some(&value) = f.values().find(|&&p| p >= x.size()) {
        return Err(StructureError::ValueOutOfRange { value, size: x.size() });
    }
    let mut values: Vec<Option<usize>> = vec![None; 1 << n];
    for (v, &p) in f {
        values[v.bits() as usize] = Some(p);
    }
    for v in s.maximal() {
        let table = CubeMorphism::simplicial(v)?.table();
        let sub: Vec<usize> = table.iter().map(|&b| values[b as usize].expect("member of S")).collect();
        if !x.contains_values(v.height(), &sub) {
            return Err(StructureError::NotCubePreserving { vertex: v });
        }
    }
    let mut order: Vec<Vertex> = Vertex::all(n).filter(|v| !s.contains(*v)).collect();
    order.sort_by_key(|v| (v.height(), v.bits()));
    for v in order {
        let table = CubeMorphism::simplicial(v)?.table();
        let corner_values: Vec<usize> = table[..table.len() - 1]
            .iter()
            .map(|&b| values[b as usize].expect("lower heights are filled first"))
            .collect();
        let corner = Corner::new(v.height(), corner_values)?;
        let completion = x
            .complete_corner(&corner)
            .map_err(|_| StructureError::CompletionFailed { vertex: v })?
            .into_iter()
            .next()
            .ok_or(StructureError::CompletionFailed { vertex: v })?;
        values[v.bits() as usize] = Some(completion.get(completion.corner().top()));
    }
    CubeMap::new(n, values.into_iter().map(|p| p.expect("all vertices filled")).collect())
}
