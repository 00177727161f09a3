use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::{GroupError, GroupLike};

/// How much of the group law to verify when loading a table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Validation {
    Full,
    /// Skips the `O(n^3)` associativity scan. Only safe for tables known to
    /// come from an actual group; a non-associative table makes every
    /// downstream result meaningless.
    SkipAssociativity,
}

/// A finite group on the element indices `0..order`.
///
/// `mul(a, b)` is the product with `a` on the left. The identity need not be
/// index 0.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    mult: Vec<usize>,
    inv: Vec<usize>,
    id: usize,
    names: Option<Vec<String>>,
}

impl std::fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupTable").field("order", &self.order).field("id", &self.id).finish()
    }
}

#[derive(Serialize, Deserialize)]
struct GroupFile {
    order: usize,
    table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
}

impl Serialize for GroupTable {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GroupFile { order: self.order, table: self.table(), names: self.names.clone() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GroupTable {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let file = GroupFile::deserialize(deserializer)?;
        if file.table.len() != file.order {
            return Err(serde::de::Error::custom(format!(
                "order {} but table has {} rows",
                file.order,
                file.table.len()
            )));
        }
        GroupTable::from_table(file.table, file.names).map_err(serde::de::Error::custom)
    }
}

impl GroupTable {
    /// Builds and fully validates a group from its multiplication table.
    pub fn from_table(table: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Result<Self, GroupError> {
        Self::from_table_with(table, names, Validation::Full)
    }

    pub fn from_table_with(
        table: Vec<Vec<usize>>,
        names: Option<Vec<String>>,
        validation: Validation,
    ) -> Result<Self, GroupError> {
        let order = table.len();
        if order == 0 {
            return Err(GroupError::Empty);
        }
        let mut mult = Vec::with_capacity(order * order);
        for (a, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(GroupError::NotSquare { row: a, len: row.len(), order });
            }
            for (b, &value) in row.iter().enumerate() {
                if value >= order {
                    return Err(GroupError::EntryOutOfRange { a, b, value, order });
                }
            }
            mult.extend_from_slice(row);
        }
        Self::from_flat(order, mult, names, validation)
    }

    fn from_flat(
        order: usize,
        mult: Vec<usize>,
        names: Option<Vec<String>>,
        validation: Validation,
    ) -> Result<Self, GroupError> {
        if let Some(names) = &names {
            if names.len() != order {
                return Err(GroupError::NameCount { len: names.len(), order });
            }
        }
        let at = |a: usize, b: usize| mult[a * order + b];
        let id =
            (0..order).find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x)).ok_or(GroupError::NoIdentity)?;
        let mut inv = Vec::with_capacity(order);
        for a in 0..order {
            let b = (0..order).find(|&b| at(a, b) == id && at(b, a) == id).ok_or(GroupError::NoInverse(a))?;
            inv.push(b);
        }
        if validation == Validation::Full {
            for a in 0..order {
                for b in 0..order {
                    let ab = at(a, b);
                    for c in 0..order {
                        if at(ab, c) != at(a, at(b, c)) {
                            return Err(GroupError::NotAssociative { a, b, c });
                        }
                    }
                }
            }
        }
        Ok(GroupTable { order, mult, inv, id, names })
    }

    /// Builds a group from a product function on `0..order`, validating it.
    fn from_fn(order: usize, names: Option<Vec<String>>, f: impl Fn(usize, usize) -> usize) -> Self {
        let mult = (0..order * order).map(|ab| f(ab / order, ab % order)).collect();
        Self::from_flat(order, mult, names, Validation::Full).expect("built-in construction is a group")
    }

    pub fn from_json(json: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(json)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("group tables always serialize")
    }

    /// The cyclic group `Z_n` written additively.
    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::InvalidParameter("cyclic group needs n >= 1".into()));
        }
        Ok(Self::from_fn(n, Some((0..n).map(|i| i.to_string()).collect()), |a, b| (a + b) % n))
    }

    /// The dihedral group of order `2n`, the symmetries of an `n`-gon.
    /// Element `s*n + i` is `s^s r^i`.
    pub fn dihedral(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::InvalidParameter("dihedral group needs n >= 1".into()));
        }
        let names = (0..2 * n)
            .map(|x| {
                let (s, i) = (x / n, x % n);
                match (s, i) {
                    (0, 0) => "e".to_string(),
                    (0, i) => format!("r{i}"),
                    (_, 0) => "s".to_string(),
                    (_, i) => format!("sr{i}"),
                }
            })
            .collect();
        Ok(Self::from_fn(2 * n, Some(names), |a, b| {
            let (s1, i1) = (a / n, a % n);
            let (s2, i2) = (b / n, b % n);
            // r^i s = s r^{-i}
            let i1 = if s2 == 1 { (n - i1) % n } else { i1 };
            ((s1 + s2) % 2) * n + (i1 + i2) % n
        }))
    }

    /// The symmetric group on `{0..n-1}` with permutations listed in
    /// lexicographic order of their one-line notation. The product `στ` is
    /// the composition "first `τ`, then `σ`".
    pub fn symmetric(n: usize) -> Result<Self, GroupError> {
        Self::permutation_group(n, false)
    }

    /// The alternating group: the even permutations of `{0..n-1}`.
    pub fn alternating(n: usize) -> Result<Self, GroupError> {
        Self::permutation_group(n, true)
    }

    fn permutation_group(n: usize, even_only: bool) -> Result<Self, GroupError> {
        if n > 6 {
            return Err(GroupError::InvalidParameter(format!("permutation degree {n} above the cap 6")));
        }
        let perms: Vec<Vec<usize>> = permutations(n).into_iter().filter(|p| !even_only || parity(p) == 0).collect();
        let index: BTreeMap<Vec<usize>, usize> = perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let names = perms
            .iter()
            .map(|p| format!("[{}]", p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        Ok(Self::from_fn(perms.len(), Some(names), |a, b| {
            let composed: Vec<usize> = (0..n).map(|x| perms[a][perms[b][x]]).collect();
            index[&composed]
        }))
    }

    /// The quaternion group `{±1, ±i, ±j, ±k}`; element `2u + s` is
    /// `(-1)^s` times basis unit `u` in the order `1, i, j, k`.
    pub fn quaternion8() -> Self {
        // unit_mul[u][v] = (sign, unit) of the basis product.
        const UNIT_MUL: [[(usize, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].iter().map(|s| s.to_string()).collect();
        Self::from_fn(8, Some(names), |a, b| {
            let (ua, sa) = (a / 2, a % 2);
            let (ub, sb) = (b / 2, b % 2);
            let (s, u) = UNIT_MUL[ua][ub];
            2 * u + (sa + sb + s) % 2
        })
    }

    /// `A × B` with element `(a, b)` at index `a * |B| + b`.
    pub fn direct_product(a: &GroupTable, b: &GroupTable) -> Self {
        let nb = b.order;
        let names = (0..a.order * nb).map(|x| format!("({},{})", a.name(x / nb), b.name(x % nb))).collect();
        let mult = (0..a.order * nb)
            .flat_map(|x| (0..a.order * nb).map(move |y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)))
            .collect();
        Self::from_flat(a.order * nb, mult, Some(names), Validation::SkipAssociativity)
            .expect("products of groups are groups")
    }

    /// One representative of each isomorphism type of order at most 8, with
    /// a short label.
    pub fn small_groups() -> Vec<(&'static str, GroupTable)> {
        let z = |n| GroupTable::cyclic(n).expect("n >= 1");
        vec![
            ("Z1", z(1)),
            ("Z2", z(2)),
            ("Z3", z(3)),
            ("Z4", z(4)),
            ("Z2xZ2", GroupTable::direct_product(&z(2), &z(2))),
            ("Z5", z(5)),
            ("Z6", z(6)),
            ("S3", GroupTable::symmetric(3).expect("small degree")),
            ("Z7", z(7)),
            ("Z8", z(8)),
            ("Z4xZ2", GroupTable::direct_product(&z(4), &z(2))),
            ("Z2xZ2xZ2", GroupTable::direct_product(&GroupTable::direct_product(&z(2), &z(2)), &z(2))),
            ("D4", GroupTable::dihedral(4).expect("n >= 1")),
            ("Q8", GroupTable::quaternion8()),
        ]
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.id
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `a b^{-1}`.
    #[inline]
    pub fn div(&self, a: usize, b: usize) -> usize {
        self.mul(a, self.inv[b])
    }

    /// `a^{-1} b`.
    #[inline]
    pub fn ldiv(&self, a: usize, b: usize) -> usize {
        self.mul(self.inv[a], b)
    }

    /// Conjugate `g^h = h^{-1} g h`.
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(self.inv[h], g), h)
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv[a], self.inv[b]), self.mul(a, b))
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv[a] } else { a };
        (0..k.unsigned_abs()).fold(self.id, |acc, _| self.mul(acc, base))
    }

    /// Product of a sequence, left to right.
    pub fn product<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(self.id, |acc, x| self.mul(acc, x))
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mult.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, a: usize) -> String {
        match &self.names {
            Some(names) => names[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn check_element(&self, a: usize) -> Result<(), GroupError> {
        if a < self.order {
            Ok(())
        } else {
            Err(GroupError::ElementOutOfRange { index: a, order: self.order })
        }
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.id {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Sorted list of element orders; an isomorphism invariant.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut p: Vec<usize> = (0..self.order).map(|a| self.element_order(a)).collect();
        p.sort_unstable();
        p
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order).filter(|&z| (0..self.order).all(|g| self.mul(z, g) == self.mul(g, z))).collect()
    }

    /// The subgroup generated by `gens`, sorted.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[self.id] = true;
        let mut queue = VecDeque::from([self.id]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order).filter(|&x| seen[x]).collect()
    }

    pub fn is_subgroup(&self, subset: &[usize]) -> bool {
        let Some(member) = self.membership(subset) else { return false };
        !subset.is_empty() && subset.iter().all(|&a| subset.iter().all(|&b| member[self.mul(a, b)]))
    }

    pub fn is_normal(&self, subset: &[usize]) -> bool {
        self.check_normal(subset).is_ok()
    }

    pub fn check_normal(&self, subset: &[usize]) -> Result<(), GroupError> {
        if !self.is_subgroup(subset) {
            return Err(GroupError::NotSubgroup);
        }
        let member = self.membership(subset).expect("validated above");
        for &n in subset {
            for g in 0..self.order {
                if !member[self.conj(n, g)] {
                    return Err(GroupError::NotNormal { element: n, by: g });
                }
            }
        }
        Ok(())
    }

    /// Checks that `subset` is a nontrivial central subgroup.
    pub fn check_central(&self, subset: &[usize]) -> Result<(), GroupError> {
        if !self.is_subgroup(subset) {
            return Err(GroupError::NotSubgroup);
        }
        for &z in subset {
            for g in 0..self.order {
                if self.mul(z, g) != self.mul(g, z) {
                    return Err(GroupError::NotCentral { element: z, with: g });
                }
            }
        }
        if subset.len() < 2 {
            return Err(GroupError::TrivialSubgroup);
        }
        Ok(())
    }

    fn membership(&self, subset: &[usize]) -> Option<Vec<bool>> {
        let mut member = vec![false; self.order];
        for &a in subset {
            if a >= self.order {
                return None;
            }
            member[a] = true;
        }
        Some(member)
    }

    /// The factor group by a normal subgroup.
    pub fn quotient(&self, normal: &[usize]) -> Result<Quotient, GroupError> {
        self.check_normal(normal)?;
        let mut projection = vec![usize::MAX; self.order];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        // Scanning in index order makes class ids follow least members.
        for g in 0..self.order {
            if projection[g] != usize::MAX {
                continue;
            }
            let mut coset: Vec<usize> = normal.iter().map(|&n| self.mul(g, n)).collect();
            coset.sort_unstable();
            for &x in &coset {
                projection[x] = classes.len();
            }
            classes.push(coset);
        }
        let m = classes.len();
        let mult = (0..m * m).map(|ab| projection[self.mul(classes[ab / m][0], classes[ab % m][0])]).collect();
        let names = classes.iter().map(|c| format!("{}N", self.name(c[0]))).collect();
        let group = GroupTable::from_flat(m, mult, Some(names), Validation::SkipAssociativity)?;
        Ok(Quotient { group, projection, classes })
    }

    /// Rebuilds a quotient from an explicit list of classes, checking that
    /// they are the cosets of a normal subgroup.
    pub fn quotient_from_classes(&self, classes: &[Vec<usize>]) -> Result<Quotient, GroupError> {
        let normal = classes.iter().find(|c| c.contains(&self.id)).ok_or(GroupError::BadClasses)?.clone();
        let q = self.quotient(&normal)?;
        let mut given: Vec<Vec<usize>> = classes
            .iter()
            .map(|c| {
                let mut c = c.clone();
                c.sort_unstable();
                c
            })
            .collect();
        given.sort();
        let mut expected = q.classes.clone();
        expected.sort();
        if given != expected {
            return Err(GroupError::BadClasses);
        }
        Ok(q)
    }

    /// A small generating set, chosen greedily by decreasing element order.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = (0..self.order).collect();
        by_order.sort_by_key(|&a| (std::cmp::Reverse(self.element_order(a)), a));
        let mut gens = Vec::new();
        let mut span = vec![self.id];
        for a in by_order {
            if span.len() == self.order {
                break;
            }
            if span.binary_search(&a).is_err() {
                gens.push(a);
                span = self.subgroup_generated(&gens);
            }
        }
        gens
    }

    /// An isomorphism `self -> other` as an image table, if one exists.
    pub fn find_isomorphism(&self, other: &GroupTable) -> Option<Vec<usize>> {
        if self.order != other.order
            || self.is_abelian() != other.is_abelian()
            || self.center().len() != other.center().len()
            || self.order_profile() != other.order_profile()
        {
            return None;
        }
        let gens = self.generating_set();
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| {
                let k = self.element_order(g);
                (0..other.order).filter(|&h| other.element_order(h) == k).collect()
            })
            .collect();
        let mut images = Vec::with_capacity(gens.len());
        self.iso_search(other, &gens, &candidates, &mut images)
    }

    fn iso_search(
        &self,
        other: &GroupTable,
        gens: &[usize],
        candidates: &[Vec<usize>],
        images: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        if images.len() == gens.len() {
            return self.extend_to_isomorphism(other, gens, images);
        }
        for &h in &candidates[images.len()] {
            images.push(h);
            if let Some(map) = self.iso_search(other, gens, candidates, images) {
                return Some(map);
            }
            images.pop();
        }
        None
    }

    fn extend_to_isomorphism(&self, other: &GroupTable, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.order];
        map[self.id] = other.id;
        let mut queue = VecDeque::from([self.id]);
        while let Some(x) = queue.pop_front() {
            for (&g, &h) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let img = other.mul(map[x], h);
                if map[y] == usize::MAX {
                    map[y] = img;
                    queue.push_back(y);
                } else if map[y] != img {
                    return None;
                }
            }
        }
        let mut hit = vec![false; other.order];
        for &m in &map {
            if m == usize::MAX || std::mem::replace(&mut hit[m], true) {
                return None;
            }
        }
        let hom = (0..self.order).all(|a| (0..self.order).all(|b| map[self.mul(a, b)] == other.mul(map[a], map[b])));
        hom.then_some(map)
    }

    pub fn is_isomorphic(&self, other: &GroupTable) -> bool {
        self.find_isomorphism(other).is_some()
    }

    /// Relabels the elements: element `i` of the result is `perm[i]` of
    /// `self`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, GroupError> {
        let n = self.order;
        if perm.len() != n {
            return Err(GroupError::LengthMismatch { expected: n, found: perm.len() });
        }
        let mut pos = vec![usize::MAX; n];
        for (i, &p) in perm.iter().enumerate() {
            if p >= n || pos[p] != usize::MAX {
                return Err(GroupError::InvalidParameter("relabeling is not a permutation".into()));
            }
            pos[p] = i;
        }
        let mult = (0..n * n).map(|ab| pos[self.mul(perm[ab / n], perm[ab % n])]).collect();
        let names = self.names.as_ref().map(|names| perm.iter().map(|&p| names[p].clone()).collect());
        Self::from_flat(n, mult, names, Validation::SkipAssociativity)
    }
}

impl GroupLike for GroupTable {
    type Elem = usize;

    fn one(&self) -> usize {
        self.id
    }

    fn op(&self, a: &usize, b: &usize) -> usize {
        self.mul(*a, *b)
    }

    fn invert(&self, a: &usize) -> usize {
        self.inv(*a)
    }
}

/// A factor group `G/N` together with the factor map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub group: GroupTable,
    /// `projection[g]` is the coset of `g`.
    pub projection: Vec<usize>,
    /// Cosets ordered by least member; coset `i` of the list is element `i`
    /// of `group`.
    pub classes: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct QuotientFile {
    classes: Vec<Vec<usize>>,
}

impl Quotient {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&QuotientFile { classes: self.classes.clone() }).expect("serializable")
    }

    pub fn from_json(g: &GroupTable, json: &str) -> Result<Self, GroupError> {
        let file: QuotientFile = serde_json::from_str(json).map_err(|e| GroupError::InvalidParameter(e.to_string()))?;
        g.quotient_from_classes(&file.classes)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn parity(p: &[usize]) -> usize {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2
}
