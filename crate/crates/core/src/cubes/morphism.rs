use serde::{Deserialize, Serialize};

use super::vertex::{check_dim, check_index, top_mask};
use super::{CubeError, Vertex};

/// The two morphism categories between discrete cubes.
///
/// `N` allows every output coordinate to depend on at most one input
/// coordinate. `G` additionally asks the dependence index to be monotone on
/// its support.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Category {
    N,
    G,
}

/// How a single output coordinate of a [`CubeMorphism`] is produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RuleRepr", into = "RuleRepr")]
pub enum CoordinateRule {
    Const(bool),
    /// Copy of input coordinate `j` (1-based).
    Coord(usize),
    /// `1 - x_j`.
    NegCoord(usize),
}

impl CoordinateRule {
    fn eval(self, bits: u32) -> bool {
        match self {
            CoordinateRule::Const(b) => b,
            CoordinateRule::Coord(j) => (bits >> (j - 1)) & 1 == 1,
            CoordinateRule::NegCoord(j) => (bits >> (j - 1)) & 1 == 0,
        }
    }

    /// The input coordinate this rule reads, or 0 for constants.
    pub fn source(self) -> usize {
        match self {
            CoordinateRule::Const(_) => 0,
            CoordinateRule::Coord(j) | CoordinateRule::NegCoord(j) => j,
        }
    }

    fn negated(self) -> Self {
        match self {
            CoordinateRule::Const(b) => CoordinateRule::Const(!b),
            CoordinateRule::Coord(j) => CoordinateRule::NegCoord(j),
            CoordinateRule::NegCoord(j) => CoordinateRule::Coord(j),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RuleRepr {
    #[serde(skip_serializing_if = "Option::is_none")]
    c: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    x: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nx: Option<usize>,
}

impl TryFrom<RuleRepr> for CoordinateRule {
    type Error = String;

    fn try_from(r: RuleRepr) -> Result<Self, Self::Error> {
        match (r.c, r.x, r.nx) {
            (Some(0), None, None) => Ok(CoordinateRule::Const(false)),
            (Some(1), None, None) => Ok(CoordinateRule::Const(true)),
            (None, Some(j), None) if j >= 1 => Ok(CoordinateRule::Coord(j)),
            (None, None, Some(j)) if j >= 1 => Ok(CoordinateRule::NegCoord(j)),
            _ => Err("a rule is exactly one of {\"c\":0|1}, {\"x\":j}, {\"nx\":j} with j >= 1".into()),
        }
    }
}

impl From<CoordinateRule> for RuleRepr {
    fn from(rule: CoordinateRule) -> Self {
        let mut r = RuleRepr { c: None, x: None, nx: None };
        match rule {
            CoordinateRule::Const(b) => r.c = Some(b as u8),
            CoordinateRule::Coord(j) => r.x = Some(j),
            CoordinateRule::NegCoord(j) => r.nx = Some(j),
        }
        r
    }
}

/// A coordinate-wise map `{0,1}^n -> {0,1}^m`, i.e. a morphism of `N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MorphismRepr", into = "MorphismRepr")]
pub struct CubeMorphism {
    source_dim: usize,
    rules: Vec<CoordinateRule>,
}

#[derive(Serialize, Deserialize)]
struct MorphismRepr {
    n: usize,
    m: usize,
    rules: Vec<CoordinateRule>,
}

impl TryFrom<MorphismRepr> for CubeMorphism {
    type Error = CubeError;

    fn try_from(r: MorphismRepr) -> Result<Self, Self::Error> {
        if r.rules.len() != r.m {
            return Err(CubeError::DimensionMismatch { expected: r.m, found: r.rules.len() });
        }
        CubeMorphism::new(r.n, r.rules)
    }
}

impl From<CubeMorphism> for MorphismRepr {
    fn from(phi: CubeMorphism) -> Self {
        MorphismRepr { n: phi.source_dim, m: phi.rules.len(), rules: phi.rules }
    }
}

impl CubeMorphism {
    pub fn new(source_dim: usize, rules: Vec<CoordinateRule>) -> Result<Self, CubeError> {
        check_dim(source_dim)?;
        check_dim(rules.len())?;
        for rule in &rules {
            if let CoordinateRule::Coord(j) | CoordinateRule::NegCoord(j) = *rule {
                check_index(j, source_dim)?;
            }
        }
        Ok(CubeMorphism { source_dim, rules })
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.rules.len()
    }

    pub fn rules(&self) -> &[CoordinateRule] {
        &self.rules
    }

    pub fn apply(&self, v: Vertex) -> Result<Vertex, CubeError> {
        if v.dim() != self.source_dim {
            return Err(CubeError::DimensionMismatch { expected: self.source_dim, found: v.dim() });
        }
        Vertex::new(self.target_dim(), self.apply_bits(v.bits()))
    }

    /// Applies the morphism to a vertex mask without checking its dimension.
    #[inline]
    pub fn apply_bits(&self, bits: u32) -> u32 {
        self.rules.iter().enumerate().fold(0, |acc, (i, r)| acc | (u32::from(r.eval(bits)) << i))
    }

    /// Image of every source vertex, indexed by source mask.
    pub fn table(&self) -> Vec<u32> {
        (0..1u32 << self.source_dim).map(|b| self.apply_bits(b)).collect()
    }

    /// The dependence function: 0 for constant coordinates, `j` when output
    /// coordinate `i` reads input coordinate `j`.
    pub fn gamma(&self) -> Vec<usize> {
        self.rules.iter().map(|r| r.source()).collect()
    }

    pub fn in_category(&self, cat: Category) -> bool {
        match cat {
            Category::N => true,
            Category::G => {
                // Monotone on the support: the nonzero entries never decrease.
                let mut last = 0;
                for j in self.gamma().into_iter().filter(|&j| j != 0) {
                    if j < last {
                        return false;
                    }
                    last = j;
                }
                true
            }
        }
    }

    /// `outer ∘ inner`.
    pub fn compose(outer: &CubeMorphism, inner: &CubeMorphism) -> Result<CubeMorphism, CubeError> {
        if inner.target_dim() != outer.source_dim {
            return Err(CubeError::DimensionMismatch { expected: outer.source_dim, found: inner.target_dim() });
        }
        let rules = outer
            .rules
            .iter()
            .map(|r| match *r {
                CoordinateRule::Const(b) => CoordinateRule::Const(b),
                CoordinateRule::Coord(j) => inner.rules[j - 1],
                CoordinateRule::NegCoord(j) => inner.rules[j - 1].negated(),
            })
            .collect();
        Ok(CubeMorphism { source_dim: inner.source_dim, rules })
    }

    pub fn identity(n: usize) -> Result<Self, CubeError> {
        CubeMorphism::new(n, (1..=n).map(CoordinateRule::Coord).collect())
    }

    /// Face embedding `e^n_{i,j}: {0,1}^{n-1} -> {0,1}^n` inserting the
    /// constant `j` at coordinate `i`.
    pub fn face(n: usize, i: usize, j: bool) -> Result<Self, CubeError> {
        check_index(i, n)?;
        let rules = (1..=n)
            .map(|p| match p.cmp(&i) {
                std::cmp::Ordering::Less => CoordinateRule::Coord(p),
                std::cmp::Ordering::Equal => CoordinateRule::Const(j),
                std::cmp::Ordering::Greater => CoordinateRule::Coord(p - 1),
            })
            .collect();
        CubeMorphism::new(n - 1, rules)
    }

    /// Simplicial embedding `s_v: {0,1}^{h(v)} -> {0,1}^n`: the `j`-th
    /// coordinate of the source goes to the `j`-th smallest element of the
    /// support of `v`, everything else is 0.
    pub fn simplicial(v: Vertex) -> Result<Self, CubeError> {
        let mut next = 0;
        let rules = (1..=v.dim())
            .map(|p| {
                if v.coord(p) == 1 {
                    next += 1;
                    CoordinateRule::Coord(next)
                } else {
                    CoordinateRule::Const(false)
                }
            })
            .collect();
        CubeMorphism::new(v.height(), rules)
    }

    /// Projection `p_T` onto the coordinates in `subset` (kept in increasing
    /// order).
    pub fn projection(n: usize, subset: &[usize]) -> Result<Self, CubeError> {
        let mut coords = subset.to_vec();
        coords.sort_unstable();
        coords.dedup();
        if coords.len() != subset.len() {
            return Err(CubeError::RepeatedIndex);
        }
        for &c in &coords {
            check_index(c, n)?;
        }
        CubeMorphism::new(n, coords.into_iter().map(CoordinateRule::Coord).collect())
    }

    /// Reflection `r_i` flipping coordinate `i`.
    pub fn reflection(n: usize, i: usize) -> Result<Self, CubeError> {
        check_index(i, n)?;
        Self::reflections(n, 1 << (i - 1))
    }

    /// The element of the reflection group `R_n` flipping every coordinate
    /// set in `mask`.
    pub fn reflections(n: usize, mask: u32) -> Result<Self, CubeError> {
        check_dim(n)?;
        if u64::from(mask) >= 1u64 << n {
            return Err(CubeError::BitsOutOfRange { bits: mask, dim: n });
        }
        let rules = (1..=n)
            .map(|p| if (mask >> (p - 1)) & 1 == 1 { CoordinateRule::NegCoord(p) } else { CoordinateRule::Coord(p) })
            .collect();
        CubeMorphism::new(n, rules)
    }

    /// Transposition `t_{i,j}` swapping two coordinates. In `N` but not in
    /// `G` when `i != j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self, CubeError> {
        check_index(i, n)?;
        check_index(j, n)?;
        let rules = (1..=n)
            .map(|p| {
                CoordinateRule::Coord(if p == i {
                    j
                } else if p == j {
                    i
                } else {
                    p
                })
            })
            .collect();
        CubeMorphism::new(n, rules)
    }

    /// `α_n(x) = (1-x_1, x_1, 1-x_2, x_2, ..., 1-x_n, x_n)`.
    pub fn alpha(n: usize) -> Result<Self, CubeError> {
        check_dim(2 * n)?;
        let rules = (1..=n).flat_map(|i| [CoordinateRule::NegCoord(i), CoordinateRule::Coord(i)]).collect();
        CubeMorphism::new(n, rules)
    }

    /// Every morphism `{0,1}^n -> {0,1}^m` of the given category.
    pub fn all(n: usize, m: usize, cat: Category) -> Vec<CubeMorphism> {
        let mut choices = vec![CoordinateRule::Const(false), CoordinateRule::Const(true)];
        for j in 1..=n {
            choices.push(CoordinateRule::Coord(j));
            choices.push(CoordinateRule::NegCoord(j));
        }
        let mut out = Vec::new();
        let mut rules = Vec::with_capacity(m);
        fn rec(
            n: usize,
            m: usize,
            cat: Category,
            choices: &[CoordinateRule],
            rules: &mut Vec<CoordinateRule>,
            out: &mut Vec<CubeMorphism>,
        ) {
            if rules.len() == m {
                let phi = CubeMorphism { source_dim: n, rules: rules.clone() };
                if phi.in_category(cat) {
                    out.push(phi);
                }
                return;
            }
            for &c in choices {
                rules.push(c);
                rec(n, m, cat, choices, rules, out);
                rules.pop();
            }
        }
        rec(n, m, cat, &choices, &mut rules, &mut out);
        out
    }
}

/// An arbitrary map `{0,1}^n -> {0,1}^m` given by its table of target
/// masks, indexed by source mask.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexMap {
    source_dim: usize,
    target_dim: usize,
    table: Vec<u32>,
}

impl VertexMap {
    pub fn new(source_dim: usize, target_dim: usize, table: Vec<u32>) -> Result<Self, CubeError> {
        check_dim(source_dim)?;
        check_dim(target_dim)?;
        if table.len() != 1 << source_dim {
            return Err(CubeError::DimensionMismatch { expected: 1 << source_dim, found: table.len() });
        }
        if let Some(&bad) = table.iter().find(|&&b| b > top_mask(target_dim)) {
            return Err(CubeError::BitsOutOfRange { bits: bad, dim: target_dim });
        }
        Ok(VertexMap { source_dim, target_dim, table })
    }

    pub fn from_morphism(phi: &CubeMorphism) -> Self {
        VertexMap { source_dim: phi.source_dim, target_dim: phi.target_dim(), table: phi.table() }
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn get(&self, bits: u32) -> u32 {
        self.table[bits as usize]
    }

    /// Recovers the coordinate rules of the map, failing when some output
    /// coordinate is not a function of a single input coordinate.
    pub fn to_morphism(&self) -> Result<CubeMorphism, CubeError> {
        let n = self.source_dim;
        let mut rules = Vec::with_capacity(self.target_dim);
        for i in 0..self.target_dim {
            let column = |b: u32| (self.table[b as usize] >> i) & 1;
            let first = column(0);
            let rule = if (0..1u32 << n).all(|b| column(b) == first) {
                CoordinateRule::Const(first == 1)
            } else {
                (1..=n)
                    .find_map(|j| {
                        let bit = |b: u32| (b >> (j - 1)) & 1;
                        if (0..1u32 << n).all(|b| column(b) == bit(b)) {
                            Some(CoordinateRule::Coord(j))
                        } else if (0..1u32 << n).all(|b| column(b) != bit(b)) {
                            Some(CoordinateRule::NegCoord(j))
                        } else {
                            None
                        }
                    })
                    .ok_or(CubeError::NotCoordinateWise { coordinate: i + 1 })?
            };
            rules.push(rule);
        }
        CubeMorphism::new(n, rules)
    }

    /// Whether the raw map is a morphism of `cat` at all.
    pub fn in_category(&self, cat: Category) -> bool {
        self.to_morphism().is_ok_and(|phi| phi.in_category(cat))
    }

    /// Every map `{0,1}^n -> {0,1}^m`; there are `2^(m 2^n)` of them.
    pub fn all(n: usize, m: usize) -> impl Iterator<Item = VertexMap> {
        let verts = 1usize << n;
        let targets = 1u64 << m;
        let count = targets.pow(verts as u32);
        (0..count).map(move |mut code| {
            let table = (0..verts)
                .map(|_| {
                    let t = (code % targets) as u32;
                    code /= targets;
                    t
                })
                .collect();
            VertexMap { source_dim: n, target_dim: m, table }
        })
    }
}

/// The orbit of `v` under the reflection group `R_n`.
pub fn reflection_group_orbit(v: Vertex) -> Vec<Vertex> {
    let n = v.dim();
    let mut orbit: Vec<Vertex> =
        (0..1u32 << n).map(|mask| Vertex::new(n, v.bits() ^ mask).expect("mask within range")).collect();
    orbit.sort();
    orbit.dedup();
    orbit
}

/// The unique element `γ` of `R_n` with `γ(w) = 1^n`; it is an involution.
pub fn reflection_to_top(w: Vertex) -> CubeMorphism {
    let n = w.dim();
    CubeMorphism::reflections(n, top_mask(n) & !w.bits()).expect("mask within range")
}
