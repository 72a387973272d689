use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::SetVector;
use crate::automata::Transformation;
use crate::error::{Error, Result};
use crate::monster::{MonsterLetter, Tableau};

/// A pair `(Λ, P)` with `Λ` left-valid and `P` right-valid at grade `k`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct UPair {
    #[serde(rename = "k")]
    grade: u32,
    left: SetVector,
    right: SetVector,
}

#[derive(Deserialize)]
struct RawPair {
    k: u32,
    left: SetVector,
    right: SetVector,
}

impl<'de> Deserialize<'de> for UPair {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let raw = RawPair::deserialize(deserializer)?;
        let pair = UPair::new(raw.left, raw.right).map_err(serde::de::Error::custom)?;
        if pair.grade != raw.k {
            return Err(serde::de::Error::custom(format!(
                "declared grade {} but the vectors have grade {}",
                raw.k, pair.grade
            )));
        }
        Ok(pair)
    }
}

impl UPair {
    /// Checks that both sides share a grade and are left- and right-valid.
    pub fn new(left: SetVector, right: SetVector) -> Result<Self> {
        let grade = left
            .grade()
            .ok_or_else(|| Error::invalid(format!("{left} does not partition {{1,…,2^k}}")))?;
        if right.grade() != Some(grade) {
            return Err(Error::invalid(format!(
                "{right} does not partition {{1,…,2^{grade}}}"
            )));
        }
        if !left.is_lvalid(grade) {
            return Err(Error::invalid(format!("{left} is not left-valid")));
        }
        if !right.is_rvalid(grade) {
            return Err(Error::invalid(format!("{right} is not right-valid")));
        }
        Ok(Self { grade, left, right })
    }

    /// `([{1},∅,…], [{1},∅,…])`.
    pub fn base(m: usize, n: usize) -> Self {
        Self {
            grade: 0,
            left: SetVector::base(m),
            right: SetVector::base(n),
        }
    }

    pub fn grade(&self) -> u32 {
        self.grade
    }

    pub fn left(&self) -> &SetVector {
        &self.left
    }

    pub fn right(&self) -> &SetVector {
        &self.right
    }

    pub fn rows(&self) -> usize {
        self.left.len()
    }

    pub fn cols(&self) -> usize {
        self.right.len()
    }

    /// One more step of the path: `((Λ·f) ∪ Λ^↑, P ∪ (P·g)^↑)`.
    pub fn step(&self, letter: &MonsterLetter) -> Result<Self> {
        Ok(Self {
            grade: self.grade + 1,
            left: self.left.succ_left_unchecked(&letter.left, self.grade)?,
            right: self.right.succ_right_unchecked(&letter.right, self.grade)?,
        })
    }

    /// `𝔰(Λ, P) = {(i, j) | λ_i ∩ ρ_j ≠ ∅}`.
    pub fn s_projection(&self) -> Result<Tableau> {
        let cells = (0..self.rows()).flat_map(|i| {
            (0..self.cols())
                .filter(move |&j| !self.left.part(i).is_disjoint(self.right.part(j)))
                .map(move |j| (i, j))
        });
        Tableau::from_cells(self.rows(), self.cols(), cells)
    }
}

impl fmt::Display for UPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.left, self.right)
    }
}

impl fmt::Debug for UPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={} {}", self.grade, self)
    }
}

/// `𝒫` of a path given by its letters, starting from the base pair.
pub fn p_of_path(m: usize, n: usize, path: &[MonsterLetter]) -> Result<UPair> {
    if m == 0 || n == 0 {
        return Err(Error::invalid("sizes must be positive"));
    }
    path.iter().try_fold(UPair::base(m, n), |acc, letter| {
        if letter.left.size() != m || letter.right.size() != n {
            return Err(Error::SizeMismatch {
                expected: m * n,
                found: letter.left.size() * letter.right.size(),
            });
        }
        acc.step(letter)
    })
}

/// The useful path encoded by a pair, inverting [`p_of_path`]. Maps are
/// completed by the identity outside the nonempty parts.
///
/// With `P = P′ ∪ P″^↑` split at `2^{k−1}`, the last right map sends `i` to the
/// part of `P″` containing `ρ′_i`. On the left, `Λ = (Λ′·f) ∪ Λ′^↑`, so `Λ′` is
/// the upper half lowered and `f(i)` is the part of the lower half containing `λ′_i`.
pub fn unfold_path(pair: &UPair) -> Result<Vec<MonsterLetter>> {
    let mut left = pair.left.clone();
    let mut right = pair.right.clone();
    let mut letters = Vec::with_capacity(pair.grade as usize);
    for k in (1..=pair.grade).rev() {
        let half = BigUint::one() << (k - 1);
        let (r_lower, r_upper) = right.split_at(&half);
        let (l_lower, l_upper) = left.split_at(&half);
        let g = follow(&r_lower, &r_upper)?;
        let f = follow(&l_upper, &l_lower)?;
        letters.push(MonsterLetter::new(f, g));
        left = l_upper;
        right = r_lower;
    }
    letters.reverse();
    Ok(letters)
}

/// The map `h` with `from·h = to`, where each nonempty part of `from` must be
/// carried by `+0` onto a subset of a single part of `to`.
fn follow(from: &SetVector, to: &SetVector) -> Result<Transformation> {
    let images = from
        .parts()
        .iter()
        .enumerate()
        .map(|(i, part)| match part.first() {
            None => Ok(i),
            Some(x) => to
                .position(x)
                .filter(|&j| part.is_subset(to.part(j)))
                .ok_or_else(|| Error::invalid("the pair does not decompose into a path")),
        })
        .collect::<Result<Vec<_>>>()?;
    let h = Transformation::new(images)?;
    if &from.act(&h)? != to {
        return Err(Error::invalid("the pair does not decompose into a path"));
    }
    Ok(h)
}

/// A tableau of pairwise-disjoint sets: `T[i][j] = λ_i ∩ ρ_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetTableau {
    cells: Vec<Vec<BTreeSet<BigUint>>>,
}

impl SetTableau {
    pub fn new(cells: Vec<Vec<BTreeSet<BigUint>>>) -> Result<Self> {
        let width = cells.first().map_or(0, Vec::len);
        if cells.is_empty() || width == 0 || cells.iter().any(|r| r.len() != width) {
            return Err(Error::invalid("a set tableau is a nonempty rectangle"));
        }
        let mut seen = BTreeSet::new();
        for x in cells.iter().flatten().flatten() {
            if !seen.insert(x) {
                return Err(Error::invalid(format!("{x} appears in two cells")));
            }
        }
        Ok(Self { cells })
    }

    /// Builds a tableau from small integers, row by row.
    pub fn from_u64(rows: &[&[&[u64]]]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|row| {
                    row.iter()
                        .map(|cell| cell.iter().map(|&x| BigUint::from(x)).collect())
                        .collect()
                })
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.cells.len()
    }

    pub fn cols(&self) -> usize {
        self.cells[0].len()
    }

    pub fn cell(&self, i: usize, j: usize) -> &BTreeSet<BigUint> {
        &self.cells[i][j]
    }
}

/// `λ_i` is the union of row `i`, `ρ_j` the union of column `j`.
pub fn pair_of_settableau(t: &SetTableau) -> (SetVector, SetVector) {
    let left = t
        .cells
        .iter()
        .map(|row| row.iter().flatten().cloned().collect())
        .collect();
    let right = (0..t.cols())
        .map(|j| {
            t.cells
                .iter()
                .flat_map(|row| row[j].iter().cloned())
                .collect()
        })
        .collect();
    (SetVector::new(left), SetVector::new(right))
}

/// Inverse of [`pair_of_settableau`].
pub fn settableau_of_pair(left: &SetVector, right: &SetVector) -> Result<SetTableau> {
    SetTableau::new(
        left.parts()
            .iter()
            .map(|l| {
                right
                    .parts()
                    .iter()
                    .map(|r| l.intersection(r).cloned().collect())
                    .collect()
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(images: &[usize]) -> Transformation {
        Transformation::new(images.to_vec()).unwrap()
    }

    fn sv(s: &str) -> SetVector {
        s.parse().unwrap()
    }

    fn running_path() -> Vec<MonsterLetter> {
        vec![
            MonsterLetter::new(t(&[2, 1, 2, 3]), t(&[1, 1, 2])),
            MonsterLetter::new(t(&[0, 1, 3, 3]), t(&[2, 0, 2])),
            MonsterLetter::new(t(&[2, 1, 3, 3]), t(&[2, 2, 1])),
        ]
    }

    #[test]
    fn empty_path_is_the_base_pair() {
        let p = p_of_path(4, 3, &[]).unwrap();
        assert_eq!(p, UPair::base(4, 3));
        assert_eq!(p.s_projection().unwrap(), Tableau::initial(4, 3).unwrap());
    }

    #[test]
    fn running_path_pair() {
        let p = p_of_path(4, 3, &running_path()).unwrap();
        assert_eq!(p.grade(), 3);
        assert_eq!(p.left(), &sv("[{6,8},{},{2,4,7},{1,3,5}]"));
        assert_eq!(p.right(), &sv("[{1,4},{2,7},{3,5,6,8}]"));
        let expected = Tableau::from_cells(4, 3, [(0, 2), (2, 0), (2, 1), (3, 0), (3, 2)]).unwrap();
        assert_eq!(p.s_projection().unwrap(), expected);
        assert_eq!(UPair::new(p.left().clone(), p.right().clone()).unwrap(), p);
    }

    #[test]
    fn unfold_recovers_useful_letters() {
        let p = p_of_path(4, 3, &running_path()).unwrap();
        let letters = unfold_path(&p).unwrap();
        assert_eq!(letters.len(), 3);
        assert_eq!(p_of_path(4, 3, &letters).unwrap(), p);
    }

    #[test]
    fn set_tableau_round_trip() {
        let left = sv("[{6,8},{},{2,4,7},{1,3,5}]");
        let right = sv("[{1,4},{2,7},{3,5,6,8}]");
        let table = settableau_of_pair(&left, &right).unwrap();
        assert_eq!(
            table.cell(0, 2),
            &BTreeSet::from([BigUint::from(6u32), BigUint::from(8u32)])
        );
        assert_eq!(pair_of_settableau(&table), (left, right));
        assert!(SetTableau::from_u64(&[&[&[1], &[1]]]).is_err());
    }

    #[test]
    fn invalid_pairs_are_rejected() {
        assert!(UPair::new(sv("[{1},{2}]"), sv("[{1},{2}]")).is_err());
        assert!(UPair::new(sv("[{2},{1}]"), sv("[{1},{2}]")).is_ok());
        assert!(UPair::new(sv("[{2},{1}]"), sv("[{1},{}]")).is_err());
    }

    #[test]
    fn json_shape() {
        let p = UPair::new(sv("[{2},{1}]"), sv("[{1},{2}]")).unwrap();
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, r#"{"k":1,"left":[[2],[1]],"right":[[1],[2]]}"#);
        assert_eq!(serde_json::from_str::<UPair>(&text).unwrap(), p);
        assert!(
            serde_json::from_str::<UPair>(r#"{"k":2,"left":[[2],[1]],"right":[[1],[2]]}"#).is_err()
        );
    }
}
