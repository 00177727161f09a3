use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::CubeError;

/// Largest cube dimension a [`Vertex`] can carry.
pub const MAX_DIM: usize = 20;

/// A vertex of the discrete cube `{0,1}^n`.
///
/// Coordinates are numbered from 1. Coordinate `i` is stored in bit `i - 1`
/// of the mask, so the mask doubles as the index of the vertex in every
/// vertex-indexed table of this crate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    dim: u8,
    bits: u32,
}

impl Vertex {
    pub fn new(dim: usize, bits: u32) -> Result<Self, CubeError> {
        check_dim(dim)?;
        if u64::from(bits) >= 1u64 << dim {
            return Err(CubeError::BitsOutOfRange { bits, dim });
        }
        Ok(Vertex { dim: dim as u8, bits })
    }

    /// Builds a vertex from its coordinate list, coordinate 1 first.
    pub fn from_coords(coords: &[u8]) -> Result<Self, CubeError> {
        check_dim(coords.len())?;
        let mut bits = 0u32;
        for (i, &c) in coords.iter().enumerate() {
            match c {
                0 => {}
                1 => bits |= 1 << i,
                _ => return Err(CubeError::InvalidCoordinate(c)),
            }
        }
        Ok(Vertex { dim: coords.len() as u8, bits })
    }

    pub fn zero(dim: usize) -> Result<Self, CubeError> {
        Vertex::new(dim, 0)
    }

    /// The all-ones vertex `1^n`.
    pub fn top(dim: usize) -> Result<Self, CubeError> {
        check_dim(dim)?;
        Ok(Vertex { dim: dim as u8, bits: top_mask(dim) })
    }

    /// The unit vector with a single 1 at coordinate `i`.
    pub fn unit(dim: usize, i: usize) -> Result<Self, CubeError> {
        check_index(i, dim)?;
        Vertex::new(dim, 1 << (i - 1))
    }

    pub fn dim(self) -> usize {
        self.dim as usize
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    /// Value of coordinate `i` (1-based).
    pub fn coord(self, i: usize) -> u8 {
        assert!(i >= 1 && i <= self.dim(), "coordinate {i} out of range");
        ((self.bits >> (i - 1)) & 1) as u8
    }

    pub fn coords(self) -> Vec<u8> {
        (1..=self.dim()).map(|i| self.coord(i)).collect()
    }

    /// Height `h(v)`: the number of coordinates equal to 1.
    pub fn height(self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Coordinates equal to 1, in increasing order.
    pub fn support(self) -> Vec<usize> {
        (1..=self.dim()).filter(|&i| self.coord(i) == 1).collect()
    }

    /// All `2^n` vertices in mask order.
    pub fn all(dim: usize) -> impl Iterator<Item = Vertex> {
        assert!(dim <= MAX_DIM);
        (0..1u32 << dim).map(move |bits| Vertex { dim: dim as u8, bits })
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.dim() {
            write!(f, "{}", self.coord(i))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Vertex({self})")
    }
}

impl FromStr for Vertex {
    type Err = CubeError;

    /// Parses a bit string, coordinate 1 first: `"101"` is `(1,0,1)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let coords = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(CubeError::InvalidBitString(s.to_string())),
            })
            .collect::<Result<Vec<u8>, _>>()?;
        Vertex::from_coords(&coords)
    }
}

impl Serialize for Vertex {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Vertex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Mask of the top vertex `1^n`.
pub fn top_mask(dim: usize) -> u32 {
    if dim == 0 {
        0
    } else {
        u32::MAX >> (32 - dim)
    }
}

pub(crate) fn check_dim(dim: usize) -> Result<(), CubeError> {
    if dim > MAX_DIM {
        Err(CubeError::DimensionTooLarge { dim, cap: MAX_DIM })
    } else {
        Ok(())
    }
}

pub(crate) fn check_index(i: usize, dim: usize) -> Result<(), CubeError> {
    if i == 0 || i > dim {
        Err(CubeError::IndexOutOfRange { index: i, dim })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bit_string_is_coordinate_one_first() {
        let v: Vertex = "101".parse().unwrap();
        assert_eq!(v.bits(), 0b101);
        let w: Vertex = "100".parse().unwrap();
        assert_eq!(w.bits(), 1);
        assert_eq!(w.coord(1), 1);
        assert_eq!(w.to_string(), "100");
        assert_eq!(serde_json::to_string(&w).unwrap(), "\"100\"");
    }

    #[test]
    fn height_and_support() {
        let v = Vertex::from_coords(&[1, 0, 1, 1]).unwrap();
        assert_eq!(v.height(), 3);
        assert_eq!(v.support(), vec![1, 3, 4]);
    }

    #[test]
    fn zero_dimensional_cube_is_one_point() {
        assert_eq!(Vertex::all(0).count(), 1);
        assert_eq!(Vertex::top(0).unwrap(), Vertex::zero(0).unwrap());
        assert_eq!(Vertex::top(0).unwrap().to_string(), "");
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(Vertex::new(2, 4).is_err());
        assert!(Vertex::new(21, 0).is_err());
        assert!("10x".parse::<Vertex>().is_err());
        assert!(Vertex::unit(3, 0).is_err());
        assert!(Vertex::unit(3, 4).is_err());
    }
}
