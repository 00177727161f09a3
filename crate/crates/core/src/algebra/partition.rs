use petgraph::unionfind::UnionFind;
use serde::Serialize;

/// A partition of `0..size` into classes. Classes are numbered by their
/// least member, and each class lists its members in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
    #[serde(skip)]
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl Partition {
    /// Canonical partition from arbitrary class labels.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut rename = std::collections::HashMap::new();
        let mut class_of = Vec::with_capacity(labels.len());
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for (x, &l) in labels.iter().enumerate() {
            let id = *rename.entry(l).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[id].push(x);
            class_of.push(id);
        }
        Partition { class_of, classes }
    }

    /// The finest partition in which every listed pair shares a class.
    pub fn from_pairs(size: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut uf = UnionFind::<usize>::new(size);
        for (a, b) in pairs {
            uf.union(a, b);
        }
        Self::from_labels(&uf.into_labeling())
    }

    pub fn discrete(size: usize) -> Self {
        Self::from_labels(&(0..size).collect::<Vec<_>>())
    }

    pub fn single(size: usize) -> Self {
        Self::from_labels(&vec![0; size])
    }

    /// Size of the ground set.
    pub fn size(&self) -> usize {
        self.class_of.len()
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn class(&self, id: usize) -> &[usize] {
        &self.classes[id]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Class id of every element.
    pub fn labels(&self) -> &[usize] {
        &self.class_of
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    /// Whether every class of `self` lies inside a class of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.size() == coarser.size() && self.classes.iter().all(|c| c.iter().all(|&x| coarser.same(x, c[0])))
    }

    /// For a refinement, the induced map from classes of `self` to classes
    /// of `coarser`.
    pub fn induced_map(&self, coarser: &Partition) -> Option<Vec<usize>> {
        self.refines(coarser).then(|| self.classes.iter().map(|c| coarser.class_of(c[0])).collect())
    }
}
