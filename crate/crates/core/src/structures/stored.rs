use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use super::StructureError;

/// A cube structure given by explicit cube sets in every dimension
/// `0..=max_dim`.
#[derive(Clone, Debug)]
pub struct StoredStructure {
    size: usize,
    sorted: Vec<Vec<Vec<usize>>>,
    sets: Vec<HashSet<Vec<usize>>>,
}

impl PartialEq for StoredStructure {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.sorted == other.sorted
    }
}

impl Eq for StoredStructure {}

#[derive(Serialize)]
struct StoredFile<'a> {
    kind: &'static str,
    size: usize,
    max_dim: usize,
    cubes: BTreeMap<String, &'a Vec<Vec<usize>>>,
}

impl StoredStructure {
    /// `cubes[n]` lists the `n`-cubes. No axiom is assumed; see
    /// `algebra::check_axioms`.
    pub fn new(size: usize, cubes: Vec<Vec<Vec<usize>>>) -> Result<Self, StructureError> {
        if size == 0 {
            return Err(StructureError::EmptyGroundSet);
        }
        if cubes.is_empty() {
            return Err(StructureError::MissingDimension(0));
        }
        let mut sorted = Vec::with_capacity(cubes.len());
        let mut sets = Vec::with_capacity(cubes.len());
        for (n, list) in cubes.into_iter().enumerate() {
            if n > 16 {
                return Err(StructureError::DimensionAboveCap { dim: n, cap: 16 });
            }
            let mut set = HashSet::with_capacity(list.len());
            for c in list {
                if c.len() != 1 << n {
                    return Err(StructureError::WrongLength { expected: 1 << n, found: c.len() });
                }
                if let Some(&x) = c.iter().find(|&&x| x >= size) {
                    return Err(StructureError::ValueOutOfRange { value: x, size });
                }
                set.insert(c);
            }
            let mut list: Vec<Vec<usize>> = set.iter().cloned().collect();
            list.sort();
            sorted.push(list);
            sets.push(set);
        }
        Ok(StoredStructure { size, sorted, sets })
    }

    /// Builds from the JSON layout `{"2": [[...], ...], ...}`, where every
    /// dimension `0..=max_dim` must be present. Without an explicit size the
    /// ground set is `0..=max value`.
    pub fn from_dimension_map(
        size: Option<usize>,
        max_dim: usize,
        cubes: &BTreeMap<String, Vec<Vec<usize>>>,
    ) -> Result<Self, StructureError> {
        let mut by_dim = Vec::with_capacity(max_dim + 1);
        for n in 0..=max_dim {
            let list = cubes.get(&n.to_string()).ok_or(StructureError::MissingDimension(n))?;
            by_dim.push(list.clone());
        }
        if let Some(extra) = cubes.keys().find(|k| k.parse::<usize>().map_or(true, |n| n > max_dim)) {
            return Err(StructureError::Spec(format!("unexpected cube dimension key {extra:?}")));
        }
        let size = match size {
            Some(s) => s,
            None => by_dim.iter().flatten().flatten().max().map_or(0, |&m| m + 1),
        };
        Self::new(size, by_dim)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn max_dim(&self) -> usize {
        self.sorted.len() - 1
    }

    /// The `n`-cubes in increasing lexicographic order.
    pub fn cubes(&self, n: usize) -> Option<&[Vec<usize>]> {
        self.sorted.get(n).map(|v| v.as_slice())
    }

    pub(crate) fn contains_values(&self, n: usize, values: &[usize]) -> bool {
        self.sets[n].contains(values)
    }

    pub fn to_json(&self) -> String {
        let cubes = self.sorted.iter().enumerate().map(|(n, l)| (n.to_string(), l)).collect();
        serde_json::to_string(&StoredFile { kind: "stored", size: self.size, max_dim: self.max_dim(), cubes })
            .expect("serializable")
    }
}
