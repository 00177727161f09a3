use std::collections::BTreeSet;

use super::vertex::{check_dim, top_mask};
use super::{CubeError, Vertex};

/// A downward closed set of vertices of `{0,1}^n`: whenever `v` is a member,
/// so is every vertex whose support is contained in the support of `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialSet {
    dim: usize,
    members: BTreeSet<Vertex>,
}

impl SimplicialSet {
    pub fn new(dim: usize, members: impl IntoIterator<Item = Vertex>) -> Result<Self, CubeError> {
        check_dim(dim)?;
        let members: BTreeSet<Vertex> = members.into_iter().collect();
        for &v in &members {
            if v.dim() != dim {
                return Err(CubeError::DimensionMismatch { expected: dim, found: v.dim() });
            }
            // Checking the immediate predecessors is enough by induction.
            for i in 0..dim {
                if v.bits() >> i & 1 == 1 {
                    let below = Vertex::new(dim, v.bits() & !(1 << i))?;
                    if !members.contains(&below) {
                        return Err(CubeError::NotDownwardClosed { member: v, missing: below });
                    }
                }
            }
        }
        Ok(SimplicialSet { dim, members })
    }

    /// The smallest simplicial set containing `generators`.
    pub fn generated_by(dim: usize, generators: &[Vertex]) -> Result<Self, CubeError> {
        check_dim(dim)?;
        let mut members = BTreeSet::new();
        for &g in generators {
            if g.dim() != dim {
                return Err(CubeError::DimensionMismatch { expected: dim, found: g.dim() });
            }
            // Enumerate the submasks of g.
            let mut sub = g.bits();
            loop {
                members.insert(Vertex::new(dim, sub)?);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & g.bits();
            }
        }
        Ok(SimplicialSet { dim, members })
    }

    /// The whole cube.
    pub fn full(dim: usize) -> Result<Self, CubeError> {
        Self::generated_by(dim, &[Vertex::top(dim)?])
    }

    /// `{0,1}^n_k`: the vertices of height at most `k`.
    pub fn low_hull(dim: usize, k: usize) -> Result<Self, CubeError> {
        check_dim(dim)?;
        Ok(SimplicialSet { dim, members: Vertex::all(dim).filter(|v| v.height() <= k).collect() })
    }

    /// The three-cube set `T_n ⊂ {0,1}^{2n}` of vertices with
    /// `v_{2i-1} + v_{2i} <= 1` for every `i`.
    pub fn three_cube(n: usize) -> Result<Self, CubeError> {
        check_dim(2 * n)?;
        Ok(SimplicialSet { dim: 2 * n, members: Vertex::all(2 * n).filter(|&v| in_three_cube(v)).collect() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.members.contains(&v)
    }

    /// Members in increasing mask order.
    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.members.iter().copied()
    }

    /// Members not strictly below any other member.
    pub fn maximal(&self) -> Vec<Vertex> {
        self.members
            .iter()
            .copied()
            .filter(|v| {
                (0..self.dim).all(|i| {
                    v.bits() >> i & 1 == 1
                        || !self.members.contains(&Vertex::new(self.dim, v.bits() | 1 << i).expect("in range"))
                })
            })
            .collect()
    }
}

fn in_three_cube(v: Vertex) -> bool {
    let b = v.bits();
    // Pairs (2i-1, 2i) sit in bits (2i-2, 2i-1).
    (b & (b >> 1) & 0x5555_5555) == 0
}

fn check_three_cube(v: Vertex) -> Result<usize, CubeError> {
    if v.dim() % 2 != 0 || !in_three_cube(v) {
        return Err(CubeError::NotInThreeCube(v));
    }
    Ok(v.dim() / 2)
}

/// `fold_n: T_n -> {0,1}^n`, coordinate `i` is `v_{2i-1} + v_{2i}`.
pub fn fold(v: Vertex) -> Result<Vertex, CubeError> {
    let n = check_three_cube(v)?;
    let b = v.bits();
    let bits = (0..n).fold(0, |acc, i| acc | (((b >> (2 * i)) | (b >> (2 * i + 1))) & 1) << i);
    Vertex::new(n, bits & top_mask(n))
}

/// `flat_n: T_n -> {0,1}^n`, coordinate `i` is `v_{2i}`.
pub fn flat(v: Vertex) -> Result<Vertex, CubeError> {
    let n = check_three_cube(v)?;
    let b = v.bits();
    let bits = (0..n).fold(0, |acc, i| acc | ((b >> (2 * i + 1)) & 1) << i);
    Vertex::new(n, bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubes::CubeMorphism;

    fn v(s: &str) -> Vertex {
        s.parse().unwrap()
    }

    #[test]
    fn fold_flat_examples() {
        assert_eq!(fold(v("1001")).unwrap(), v("11"));
        assert_eq!(flat(v("1001")).unwrap(), v("01"));
        assert_eq!(fold(v("00")).unwrap(), v("0"));
        assert_eq!(flat(v("00")).unwrap(), v("0"));
        assert!(fold(v("1100")).is_err());
        assert!(flat(v("101")).is_err());
    }

    #[test]
    fn alpha_lands_in_maximal_three_cube_vertices() {
        for n in 0..=4 {
            let alpha = CubeMorphism::alpha(n).unwrap();
            let t = SimplicialSet::three_cube(n).unwrap();
            let mut image: Vec<Vertex> = Vertex::all(n).map(|w| alpha.apply(w).unwrap()).collect();
            image.sort();
            assert_eq!(image, t.maximal());
            for w in Vertex::all(n) {
                let a = alpha.apply(w).unwrap();
                assert_eq!(flat(a).unwrap(), w);
                assert_eq!(fold(a).unwrap(), Vertex::top(n).unwrap());
            }
        }
    }

    #[test]
    fn fold_after_simplicial_embedding_is_identity() {
        for n in 0..=3 {
            for m in SimplicialSet::three_cube(n).unwrap().maximal() {
                let s = CubeMorphism::simplicial(m).unwrap();
                for x in Vertex::all(n) {
                    assert_eq!(fold(s.apply(x).unwrap()).unwrap(), x);
                }
            }
        }
    }

    #[test]
    fn three_cube_size() {
        for n in 0..=4 {
            assert_eq!(SimplicialSet::three_cube(n).unwrap().len(), 3usize.pow(n as u32));
        }
    }

    #[test]
    fn downward_closure_is_enforced() {
        assert!(SimplicialSet::new(2, [v("00"), v("11")]).is_err());
        assert!(SimplicialSet::new(2, [v("00"), v("10"), v("01"), v("11")]).is_ok());
        let s = SimplicialSet::generated_by(3, &[v("110"), v("001")]).unwrap();
        assert_eq!(s.len(), 5);
        assert_eq!(
            s.maximal(),
            vec![v("110"), v("001")].into_iter().collect::<BTreeSet<_>>().into_iter().collect::<Vec<_>>()
        );
        assert_eq!(SimplicialSet::low_hull(3, 1).unwrap().len(), 4);
        assert_eq!(SimplicialSet::full(0).unwrap().len(), 1);
    }
}
