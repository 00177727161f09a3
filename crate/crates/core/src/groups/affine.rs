use crate::cubes::{Vertex, VertexMap};

use super::{FreeGroup, GroupError, GroupLike, GroupTable, Quotient, Word};

/// An affine morphism `F_k -> T` in left-base form `f(w) = a · m(w)`, where
/// `m` is the homomorphism sending `g_i` to `gen_images[i - 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineMap<T: GroupLike> {
    pub target: T,
    pub base: T::Elem,
    pub gen_images: Vec<T::Elem>,
}

impl<T: GroupLike> AffineMap<T> {
    pub fn rank(&self) -> usize {
        self.gen_images.len()
    }

    pub fn eval(&self, w: &Word) -> T::Elem {
        self.target.op(&self.base, &w.evaluate(&self.target, &self.gen_images))
    }

    /// Values on `F_k^* = {1, g_1, ..., g_k}`, identity first.
    pub fn star_values(&self) -> Vec<T::Elem> {
        let mut out = vec![self.base.clone()];
        out.extend(self.gen_images.iter().map(|m| self.target.op(&self.base, m)));
        out
    }
}

/// The unique affine morphism `F_k -> T` taking the prescribed values on
/// `F_k^*`; `values[0]` is the value at 1 and `values[i]` the value at `g_i`.
pub fn affine_from_star<T: GroupLike + Clone>(target: &T, values: &[T::Elem]) -> Result<AffineMap<T>, GroupError> {
    let (base, rest) = values.split_first().ok_or(GroupError::LengthMismatch { expected: 1, found: 0 })?;
    let base_inv = target.invert(base);
    let gen_images = rest.iter().map(|v| target.op(&base_inv, v)).collect();
    Ok(AffineMap { target: target.clone(), base: base.clone(), gen_images })
}

/// Affinity via the quadruple criterion: `f(a) f(b)^{-1} f(c) f(d)^{-1} = 1`
/// whenever `a b^{-1} c d^{-1} = 1`.
pub fn is_affine_quadruple_test(source: &GroupTable, target: &GroupTable, f: &[usize]) -> bool {
    let n = source.order();
    (0..n).all(|a| {
        (0..n).all(|b| {
            let ab = target.div(f[a], f[b]);
            let a_b = source.div(a, b);
            (0..n).all(|c| {
                let d = source.mul(a_b, c);
                target.div(target.mul(ab, f[c]), f[d]) == target.identity()
            })
        })
    })
}

/// Affinity via `x ↦ f(1)^{-1} f(x)` being a homomorphism.
pub fn is_affine_homomorphism_test(source: &GroupTable, target: &GroupTable, f: &[usize]) -> bool {
    let base_inv = target.inv(f[source.identity()]);
    let m: Vec<usize> = f.iter().map(|&y| target.mul(base_inv, y)).collect();
    let n = source.order();
    (0..n).all(|a| (0..n).all(|b| m[source.mul(a, b)] == target.mul(m[a], m[b])))
}

/// Whether the table `f` (indexed by source element) is an affine morphism.
/// Both criteria are evaluated; they must agree.
pub fn is_affine(source: &GroupTable, target: &GroupTable, f: &[usize]) -> Result<bool, GroupError> {
    if f.len() != source.order() {
        return Err(GroupError::LengthMismatch { expected: source.order(), found: f.len() });
    }
    for &y in f {
        target.check_element(y)?;
    }
    let quad = is_affine_quadruple_test(source, target, f);
    let hom = is_affine_homomorphism_test(source, target, f);
    assert_eq!(quad, hom, "the two affinity criteria disagree");
    Ok(quad)
}

/// Lifts an affine morphism into `G/N` to one into `G` through the factor
/// map, choosing least coset members on `F_k^*`.
pub fn lift_affine(
    f: &AffineMap<GroupTable>,
    group: &GroupTable,
    quotient: &Quotient,
) -> Result<AffineMap<GroupTable>, GroupError> {
    if f.target != quotient.group || quotient.projection.len() != group.order() {
        return Err(GroupError::InvalidParameter("map does not target this quotient".into()));
    }
    let lifted: Vec<usize> = f.star_values().iter().map(|&c| quotient.classes[c][0]).collect();
    affine_from_star(group, &lifted)
}

/// The fundamental cube `τ_n(v) = g_1^{v_1} ... g_n^{v_n}` in `F_n`.
pub fn tau(v: Vertex) -> Word {
    Word::new(v.dim(), v.support().into_iter().map(|i| (i, 1))).expect("support lies in 1..=n")
}

/// Decides whether a raw map `{0,1}^n -> {0,1}^m` is a `G`-morphism by
/// testing whether `τ_n(v) ↦ τ_m(φ(v))` extends to an affine morphism
/// `F_n -> F_m`.
pub fn g_morphism_free_test(phi: &VertexMap) -> bool {
    let (n, m) = (phi.source_dim(), phi.target_dim());
    let target = FreeGroup { rank: m };
    let image = |bits: u32| tau(Vertex::new(m, phi.get(bits)).expect("validated map"));
    let star: Vec<Word> = std::iter::once(image(0)).chain((0..n).map(|i| image(1 << i))).collect();
    let f = affine_from_star(&target, &star).expect("star is nonempty");
    Vertex::all(n).all(|v| f.eval(&tau(v)) == image(v.bits()))
}

/// Decides whether a raw map `{0,1}^n -> {0,1}^m` is the restriction of an
/// affine map `Z^n -> Z^m`. The candidate `φ(v) = b + vM` is forced by the
/// values at 0 and the unit vectors, then checked everywhere.
pub fn z_morphism_test(phi: &VertexMap) -> bool {
    let (n, m) = (phi.source_dim(), phi.target_dim());
    let as_ints = |bits: u32| -> Vec<i64> { (0..m).map(|j| i64::from((phi.get(bits) >> j) & 1)).collect() };
    let b = as_ints(0);
    let rows: Vec<Vec<i64>> = (0..n).map(|i| as_ints(1 << i).iter().zip(&b).map(|(x, y)| x - y).collect()).collect();
    (0..1u32 << n).all(|v| {
        let mut fit = b.clone();
        for (i, row) in rows.iter().enumerate() {
            if (v >> i) & 1 == 1 {
                for (f, r) in fit.iter_mut().zip(row) {
                    *f += r;
                }
            }
        }
        fit == as_ints(v)
    })
}
