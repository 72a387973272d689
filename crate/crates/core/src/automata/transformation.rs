use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A total map on `{0, .., n-1}`, written `[0·t, 1·t, .., (n-1)·t]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Transformation {
    images: Vec<usize>,
}

impl Transformation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if let Some(&bad) = images.iter().find(|&&x| x >= n) {
            return Err(Error::invalid(format!(
                "transformation image {bad} out of range for size {n}"
            )));
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    pub fn constant(n: usize, value: usize) -> Result<Self> {
        Self::new(vec![value; n])
    }

    /// Product of disjoint cycles, each written `(i0, i1, .., i_{l-1})` with
    /// `i_k ↦ i_{k+1}` and `i_{l-1} ↦ i0`. Points outside every cycle are fixed.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for cycle in cycles {
            for (pos, &i) in cycle.iter().enumerate() {
                if i >= n {
                    return Err(Error::invalid(format!(
                        "cycle point {i} out of range for size {n}"
                    )));
                }
                if std::mem::replace(&mut seen[i], true) {
                    return Err(Error::invalid(format!(
                        "cycles are not disjoint at point {i}"
                    )));
                }
                images[i] = cycle[(pos + 1) % cycle.len()];
            }
        }
        Ok(Self { images })
    }

    /// The map sending `from` to `to` and fixing every other point.
    pub fn point_move(n: usize, from: usize, to: usize) -> Result<Self> {
        if from >= n || to >= n {
            return Err(Error::invalid(format!(
                "point move {from}->{to} out of range for size {n}"
            )));
        }
        let mut images: Vec<usize> = (0..n).collect();
        images[from] = to;
        Ok(Self { images })
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.size()];
        self.images
            .iter()
            .all(|&x| !std::mem::replace(&mut seen[x], true))
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_permutation() {
            return None;
        }
        let mut inv = vec![0; self.size()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Some(Self { images: inv })
    }

    /// Left-to-right composition: `i·(self.then(other)) = (i·self)·other`.
    pub fn then(&self, other: &Self) -> Result<Self> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch {
                expected: self.size(),
                found: other.size(),
            });
        }
        Ok(Self {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        })
    }

    /// Iterates over all `n^n` transformations in mixed-radix lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Transformation> {
        let total = (n as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
        (0..total).map(move |mut code| {
            let mut images = vec![0; n];
            for slot in images.iter_mut().rev() {
                *slot = (code % n as u64) as usize;
                code /= n as u64;
            }
            Transformation { images }
        })
    }
}

impl TryFrom<Vec<usize>> for Transformation {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Self::new(images)
    }
}

impl From<Transformation> for Vec<usize> {
    fn from(t: Transformation) -> Self {
        t.images
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (pos, x) in self.images.iter().enumerate() {
            if pos > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_constructor() {
        let t = Transformation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        assert_eq!(t.images(), &[1, 2, 3, 0]);
        let swap = Transformation::from_cycles(2, &[&[0, 1]]).unwrap();
        assert_eq!(swap.images(), &[1, 0]);
        // (132)(45) on 1-based points, i.e. (0 2 1)(3 4) on 0-based points.
        let s = Transformation::from_cycles(5, &[&[0, 2, 1], &[3, 4]]).unwrap();
        assert_eq!(s.images(), &[2, 0, 1, 4, 3]);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(Transformation::new(vec![0, 2]).is_err());
        assert!(Transformation::from_cycles(3, &[&[0, 1], &[1, 2]]).is_err());
    }

    #[test]
    fn inverse_and_composition() {
        let s = Transformation::new(vec![2, 0, 1, 4, 3]).unwrap();
        let inv = s.inverse().unwrap();
        assert_eq!(s.then(&inv).unwrap(), Transformation::identity(5));
        assert!(Transformation::constant(3, 0).unwrap().inverse().is_none());
    }

    #[test]
    fn enumerates_all_maps() {
        let all: Vec<_> = Transformation::all(3).collect();
        assert_eq!(all.len(), 27);
        assert_eq!(all[0].images(), &[0, 0, 0]);
        assert_eq!(all[26].images(), &[2, 2, 2]);
        assert_eq!(
            Transformation::all(3)
                .filter(|t| t.is_permutation())
                .count(),
            6
        );
    }
}
