use std::collections::BTreeSet;

use rayon::prelude::*;

use super::SetVector;
use crate::automata::Transformation;
use crate::enumeration::r_total;
use crate::error::{Error, Result};
use crate::guard::Guard;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// All right-valid (or left-valid) vectors of length `n` and grade `k`,
/// obtained by iterating `P ↦ P ∪ (P·g)^↑` from `[{1},∅,…,∅]`.
///
/// Only the values of `g` on nonempty parts matter, so `g` ranges over maps
/// from the support; the left side is the mirror image of the right. The
/// expected size is checked against `guard.max_graded` before any work.
pub fn generate_graded(n: usize, k: u32, side: Side, guard: &Guard) -> Result<BTreeSet<SetVector>> {
    if n == 0 {
        return Err(Error::invalid("vectors need at least one part"));
    }
    let expected = r_total(n, k as usize);
    let expected = u128::try_from(&expected).unwrap_or(u128::MAX);
    guard.check("graded component size", expected, guard.max_graded as u128)?;

    let mut level = BTreeSet::from([SetVector::base(n)]);
    for grade in 0..k {
        let next: Vec<Vec<SetVector>> = level
            .par_iter()
            .map(|p| successors(p, grade))
            .collect::<Result<_>>()?;
        level = next.into_iter().flatten().collect();
    }
    match side {
        Side::Right => Ok(level),
        Side::Left => level.iter().map(|v| v.mirror(k)).collect(),
    }
}

fn successors(p: &SetVector, grade: u32) -> Result<Vec<SetVector>> {
    let n = p.len();
    let support: Vec<usize> = (0..n).filter(|&i| !p.part(i).is_empty()).collect();
    let mut images: Vec<usize> = (0..n).collect();
    let mut assign = vec![0usize; support.len()];
    let mut out = Vec::new();
    loop {
        for (&i, &v) in support.iter().zip(&assign) {
            images[i] = v;
        }
        out.push(p.succ_right_unchecked(&Transformation::new(images.clone())?, grade)?);
        let mut pos = assign.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            assign[pos] += 1;
            if assign[pos] < n {
                break;
            }
            assign[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r22_listing() {
        let got = generate_graded(2, 2, Side::Right, &Guard::default()).unwrap();
        let expected: BTreeSet<SetVector> = [
            "[{1,2,3,4},{}]",
            "[{1,2},{3,4}]",
            "[{1,3,4},{2}]",
            "[{1,4},{2,3}]",
            "[{1,3},{2,4}]",
            "[{1},{2,3,4}]",
        ]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn l22_listing() {
        let got = generate_graded(2, 2, Side::Left, &Guard::default()).unwrap();
        let expected: BTreeSet<SetVector> = [
            "[{1,2,3,4},{}]",
            "[{3,4},{1,2}]",
            "[{1,2,4},{3}]",
            "[{1,4},{2,3}]",
            "[{2,4},{1,3}]",
            "[{4},{1,2,3}]",
        ]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
        assert_eq!(got, expected);
        assert!(got.iter().all(|v| v.is_lvalid(2)));
    }

    #[test]
    fn counts_for_two_parts() {
        let counts: Vec<usize> = (0..5)
            .map(|k| {
                generate_graded(2, k, Side::Right, &Guard::default())
                    .unwrap()
                    .len()
            })
            .collect();
        assert_eq!(counts, [1, 2, 6, 22, 86]);
    }

    #[test]
    fn grade_zero_is_the_base() {
        let got = generate_graded(4, 0, Side::Right, &Guard::default()).unwrap();
        assert_eq!(got.into_iter().collect::<Vec<_>>(), [SetVector::base(4)]);
    }

    #[test]
    fn guard_refuses_huge_components() {
        let guard = Guard {
            max_graded: 10,
            ..Guard::default()
        };
        let err = generate_graded(3, 3, Side::Right, &guard).unwrap_err();
        assert!(matches!(err, Error::GuardExceeded { .. }));
    }
}
