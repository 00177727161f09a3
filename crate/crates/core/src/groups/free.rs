use std::fmt;

use serde::{Deserialize, Serialize};

use super::{GroupError, GroupLike};

/// An element of the free group `F_k = <g_1, ..., g_k>`, kept freely
/// reduced. Letters are `(generator, exponent)` with generators numbered
/// from 1 and exponents `±1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    rank: usize,
    letters: Vec<(usize, i8)>,
}

impl Word {
    /// Builds a word from arbitrary letters, reducing it.
    pub fn new(rank: usize, letters: impl IntoIterator<Item = (usize, i8)>) -> Result<Self, GroupError> {
        let mut w = Word { rank, letters: Vec::new() };
        for (g, e) in letters {
            if g == 0 || g > rank {
                return Err(GroupError::GeneratorOutOfRange { index: g, rank });
            }
            if e != 1 && e != -1 {
                return Err(GroupError::InvalidParameter(format!("exponent {e} is not ±1")));
            }
            w.push(g, e);
        }
        Ok(w)
    }

    pub fn identity(rank: usize) -> Self {
        Word { rank, letters: Vec::new() }
    }

    pub fn generator(rank: usize, i: usize) -> Result<Self, GroupError> {
        Word::new(rank, [(i, 1)])
    }

    /// `g_i^e` for an arbitrary integer exponent.
    pub fn generator_pow(rank: usize, i: usize, e: i64) -> Result<Self, GroupError> {
        let sign = if e < 0 { -1 } else { 1 };
        Word::new(rank, std::iter::repeat((i, sign)).take(e.unsigned_abs() as usize))
    }

    fn push(&mut self, g: usize, e: i8) {
        match self.letters.last() {
            Some(&(h, f)) if h == g && f == -e => {
                self.letters.pop();
            }
            _ => self.letters.push((g, e)),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| !(w[0].0 == w[1].0 && w[0].1 == -w[1].1))
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        w.rank = w.rank.max(other.rank);
        for &(g, e) in &other.letters {
            w.push(g, e);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word { rank: self.rank, letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect() }
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(Word::identity(self.rank), |acc, _| acc.mul(&base))
    }

    /// Evaluates the word in a group, given the images of the generators.
    pub fn evaluate<G: GroupLike>(&self, group: &G, images: &[G::Elem]) -> G::Elem {
        self.letters.iter().fold(group.one(), |acc, &(g, e)| {
            let x = &images[g - 1];
            if e > 0 {
                group.op(&acc, x)
            } else {
                group.op(&acc, &group.invert(x))
            }
        })
    }
}

/// Freely reduces a letter sequence. Idempotent.
pub fn reduce(letters: &[(usize, i8)]) -> Vec<(usize, i8)> {
    let mut out: Vec<(usize, i8)> = Vec::with_capacity(letters.len());
    for &(g, e) in letters {
        match out.last() {
            Some(&(h, f)) if h == g && f == -e => {
                out.pop();
            }
            _ => out.push((g, e)),
        }
    }
    out
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, &(g, e)) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if e > 0 {
                write!(f, "g{g}")?;
            } else {
                write!(f, "g{g}^-1")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(F{}: {self})", self.rank)
    }
}

/// The free group of a given rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FreeGroup {
    pub rank: usize,
}

impl GroupLike for FreeGroup {
    type Elem = Word;

    fn one(&self) -> Word {
        Word::identity(self.rank)
    }

    fn op(&self, a: &Word, b: &Word) -> Word {
        a.mul(b)
    }

    fn invert(&self, a: &Word) -> Word {
        a.inverse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduce_examples() {
        assert!(Word::new(1, [(1, 1), (1, -1)]).unwrap().is_empty());
        let w = Word::new(2, [(1, 1), (2, 1), (2, -1), (1, 1)]).unwrap();
        assert_eq!(w.letters(), &[(1, 1), (1, 1)]);
        let r = vec![(1, 1), (2, -1), (1, 1)];
        assert_eq!(reduce(&r), r);
        assert_eq!(w.to_string(), "g1 g1");
        assert_eq!(Word::identity(3).to_string(), "1");
    }

    #[test]
    fn rejects_bad_letters() {
        assert!(Word::new(2, [(3, 1)]).is_err());
        assert!(Word::new(2, [(0, 1)]).is_err());
        assert!(Word::new(2, [(1, 2)]).is_err());
    }

    #[test]
    fn evaluation_in_a_table_group() {
        let z5 = super::super::GroupTable::cyclic(5).unwrap();
        let w = Word::new(2, [(1, 1), (2, -1), (1, 1)]).unwrap();
        assert_eq!(w.evaluate(&z5, &[2, 1]), (2 + 4 + 2) % 5);
    }

    fn letters() -> impl Strategy<Value = Vec<(usize, i8)>> {
        prop::collection::vec((1usize..=3, prop::sample::select(vec![1i8, -1])), 0..24)
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent_and_reduced(ls in letters()) {
            let r = reduce(&ls);
            prop_assert_eq!(reduce(&r), r.clone());
            let w = Word::new(3, ls).unwrap();
            prop_assert!(w.is_reduced());
            prop_assert_eq!(w.letters(), &r[..]);
        }

        #[test]
        fn group_laws(a in letters(), b in letters(), c in letters()) {
            let (a, b, c) = (Word::new(3, a).unwrap(), Word::new(3, b).unwrap(), Word::new(3, c).unwrap());
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert!(a.mul(&a.inverse()).is_empty());
            prop_assert_eq!(a.mul(&b).inverse(), b.inverse().mul(&a.inverse()));
        }
    }
}
