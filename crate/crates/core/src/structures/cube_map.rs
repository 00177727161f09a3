use serde::{Deserialize, Serialize};

use crate::cubes::{top_mask, CubeMorphism, MAX_DIM};

use super::StructureError;

/// A labeling of `{0,1}^n` by points, indexed by vertex mask.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct CubeMap {
    #[serde(skip)]
    dim: usize,
    values: Vec<usize>,
}

impl<'de> Deserialize<'de> for CubeMap {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let values = Vec::<usize>::deserialize(deserializer)?;
        CubeMap::from_values(values).map_err(serde::de::Error::custom)
    }
}

fn dim_of_len(len: usize) -> Option<usize> {
    (len.is_power_of_two() && len.trailing_zeros() as usize <= MAX_DIM).then(|| len.trailing_zeros() as usize)
}

impl CubeMap {
    pub fn new(dim: usize, values: Vec<usize>) -> Result<Self, StructureError> {
        if dim > MAX_DIM || values.len() != 1 << dim {
            return Err(StructureError::WrongLength { expected: 1usize << dim.min(MAX_DIM), found: values.len() });
        }
        Ok(CubeMap { dim, values })
    }

    /// Infers the dimension from a length that must be a power of two.
    pub fn from_values(values: Vec<usize>) -> Result<Self, StructureError> {
        let dim = dim_of_len(values.len())
            .ok_or(StructureError::WrongLength { expected: values.len().next_power_of_two(), found: values.len() })?;
        Ok(CubeMap { dim, values })
    }

    pub fn constant(dim: usize, x: usize) -> Self {
        assert!(dim <= MAX_DIM);
        CubeMap { dim, values: vec![x; 1 << dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn into_values(self) -> Vec<usize> {
        self.values
    }

    pub fn get(&self, bits: u32) -> usize {
        self.values[bits as usize]
    }

    pub fn set(&mut self, bits: u32, x: usize) {
        self.values[bits as usize] = x;
    }

    /// `c ∘ φ`.
    pub fn pullback(&self, phi: &CubeMorphism) -> Result<CubeMap, StructureError> {
        if phi.target_dim() != self.dim {
            return Err(StructureError::DimensionMismatch { expected: self.dim, found: phi.target_dim() });
        }
        Ok(CubeMap { dim: phi.source_dim(), values: phi.table().iter().map(|&b| self.get(b)).collect() })
    }

    /// The face `c ∘ e^n_{i,j}`.
    pub fn face(&self, i: usize, j: bool) -> Result<CubeMap, StructureError> {
        if i == 0 || i > self.dim {
            return Err(StructureError::IndexOutOfRange { index: i, dim: self.dim });
        }
        Ok(CubeMap { dim: self.dim - 1, values: face_values(&self.values, self.dim, i, j) })
    }

    /// Restriction to `{0,1}^n` minus the top vertex.
    pub fn corner(&self) -> Corner {
        Corner { dim: self.dim, values: self.values[..self.values.len() - 1].to_vec() }
    }
}

/// Values of the face `e^n_{i,j}` of a vertex table.
pub(crate) fn face_values(values: &[usize], dim: usize, i: usize, j: bool) -> Vec<usize> {
    let low = (1u32 << (i - 1)) - 1;
    let fixed = if j { 1u32 << (i - 1) } else { 0 };
    (0..1u32 << (dim - 1))
        .map(|b| {
            let full = (b & low) | ((b & !low) << 1) | fixed;
            values[full as usize]
        })
        .collect()
}

/// A labeling of `{0,1}^n_* = {0,1}^n \ {1^n}`, indexed by vertex mask.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Corner {
    #[serde(rename = "n")]
    dim: usize,
    values: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CornerRepr {
    Bare(Vec<usize>),
    Full { n: usize, values: Vec<usize> },
}

impl<'de> Deserialize<'de> for Corner {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        match CornerRepr::deserialize(deserializer)? {
            CornerRepr::Bare(values) => Corner::from_values(values),
            CornerRepr::Full { n, values } => Corner::new(n, values),
        }
        .map_err(serde::de::Error::custom)
    }
}

impl Corner {
    pub fn new(dim: usize, values: Vec<usize>) -> Result<Self, StructureError> {
        if dim > MAX_DIM || values.len() != (1usize << dim) - 1 {
            return Err(StructureError::WrongLength {
                expected: (1usize << dim.min(MAX_DIM)) - 1,
                found: values.len(),
            });
        }
        Ok(Corner { dim, values })
    }

    pub fn from_values(values: Vec<usize>) -> Result<Self, StructureError> {
        let dim = dim_of_len(values.len() + 1).ok_or(StructureError::WrongLength {
            expected: (values.len() + 1).next_power_of_two() - 1,
            found: values.len(),
        })?;
        Ok(Corner { dim, values })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn with_top(&self, x: usize) -> CubeMap {
        let mut values = Vec::with_capacity(self.values.len() + 1);
        values.extend_from_slice(&self.values);
        values.push(x);
        CubeMap { dim: self.dim, values }
    }

    /// The lower face `f ∘ e^n_{i,0}`, which lies entirely in the corner.
    pub fn lower_face(&self, i: usize) -> Result<CubeMap, StructureError> {
        if i == 0 || i > self.dim {
            return Err(StructureError::IndexOutOfRange { index: i, dim: self.dim });
        }
        // The top slot is never read by a lower face, so a placeholder works.
        let mut padded = self.values.clone();
        padded.push(usize::MAX);
        Ok(CubeMap { dim: self.dim - 1, values: face_values(&padded, self.dim, i, false) })
    }

    /// Mask of the top vertex this corner omits.
    pub fn top(&self) -> u32 {
        top_mask(self.dim)
    }
}
