use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::One;

use super::{SetVector, UPair};
use crate::automata::Transformation;
use crate::error::{Error, Result};
use crate::guard::Guard;
use crate::monster::{tableau_step, MonsterLetter, Tableau};

type Part = BTreeSet<BigUint>;

fn part(xs: impl IntoIterator<Item = u64>) -> Part {
    xs.into_iter().map(BigUint::from).collect()
}

/// `⌈log₂ x⌉` for `x ≥ 1`.
pub(crate) fn ceil_log2(x: usize) -> u32 {
    x.next_power_of_two().trailing_zeros()
}

/// A pair whose projection is the permutation tableau `{(i, σ(i))}`.
///
/// When `σ(0) = 0` both sides are permutations of
/// `Π_n = [{1,2^k}, {2,2^k−1}, …, {2^k−n,n+1}, {2^k−n+1}, …, {n}]` with
/// `2^{k−1} ≤ n < 2^k`. Otherwise `2^{k−1} < n ≤ 2^k` and `Π_n` pairs `i` with
/// `2^{k−1}+i`; the part holding `2^k` is placed at `Λ[0] = P[σ(0)]`, the part
/// holding `1` at `Λ[σ⁻¹(0)] = P[0]`, the remaining parts of `Λ` follow in
/// `Π_n` order, and `P[σ(j)] = Λ[j]`.
pub fn witness_permutation(sigma: &Transformation) -> Result<UPair> {
    let inverse = sigma
        .inverse()
        .ok_or_else(|| Error::invalid(format!("{sigma} is not a permutation")))?;
    let n = sigma.size();
    if n == 0 {
        return Err(Error::invalid("empty permutation"));
    }
    if n >= 1 << 20 {
        return Err(Error::invalid("permutation too large"));
    }
    let (left, right) = if sigma.apply(0) == 0 {
        let pi = pi_fixed(n);
        let left = (0..n).map(|i| pi[sigma.apply(i)].clone()).collect();
        (left, pi)
    } else {
        let pi = pi_moved(n);
        let k = ceil_log2(n);
        let top = BigUint::one() << k;
        let one = BigUint::one();
        let a = pi
            .iter()
            .position(|p| p.contains(&top))
            .expect("2^k is covered");
        let b = pi
            .iter()
            .position(|p| p.contains(&one))
            .expect("1 is covered");
        let mut left: Vec<Option<Part>> = vec![None; n];
        left[0] = Some(pi[a].clone());
        left[inverse.apply(0)] = Some(pi[b].clone());
        let mut unused = pi
            .iter()
            .enumerate()
            .filter(|&(q, _)| q != a && q != b)
            .map(|(_, p)| p.clone());
        let left: Vec<Part> = left
            .into_iter()
            .map(|slot| slot.or_else(|| unused.next()).expect("Π_n has n parts"))
            .collect();
        let mut right = vec![Part::new(); n];
        for (j, p) in left.iter().enumerate() {
            right[sigma.apply(j)] = p.clone();
        }
        (left, right)
    };
    UPair::new(SetVector::new(left), SetVector::new(right))
}

fn pi_fixed(n: usize) -> Vec<Part> {
    let top = 1u64 << (usize::BITS - n.leading_zeros());
    let pairs = (1..=top - n as u64).map(|i| part([i, top + 1 - i]));
    let singles = (top - n as u64 + 1..=n as u64).map(|i| part([i]));
    pairs.chain(singles).collect()
}

fn pi_moved(n: usize) -> Vec<Part> {
    let h = 1u64 << (ceil_log2(n) - 1);
    let n = n as u64;
    let (q, last_pair, extra) = if n.is_multiple_of(2) {
        let q = h - n / 2;
        (q, q, 0)
    } else {
        let q = h - (n - 1) / 2;
        (q, q - 1, 1)
    };
    let low_pairs = (1..=q).map(|i| part([i, h + i]));
    let high_pairs = (0..last_pair).map(|t| part([h - t, 2 * h - t]));
    let low_singles = (q + 1..=h - q + extra).map(|i| part([i]));
    let high_singles = (h + q + 1..=2 * h - q + extra).map(|i| part([i]));
    low_pairs
        .chain(high_pairs)
        .chain(low_singles)
        .chain(high_singles)
        .collect()
}

/// A pair whose projection is the full tableau `⟦m⟧×⟦n⟧`, of grade `K = k+n−1`
/// where `2^{k−1} < m ≤ 2^k`.
///
/// The right side is `[{1,…,2^k}, {2^k+1,…,2^{k+1}}, …]`. The left side is the
/// mirror image of `[{1},…,{m−1},{m,…,2^k}]` repeated with period `2^k` up to
/// `2^K`: row `i < m−1` is `{2^k(α+1)−i}` and the last row is
/// `{2^kα+t : 1 ≤ t ≤ 2^k+1−m}`, for `α < 2^{n−1}`. Every part on either side
/// meets every residue class mod `2^k`.
pub fn witness_full(m: usize, n: usize, guard: &Guard) -> Result<UPair> {
    if m == 0 || n == 0 {
        return Err(Error::invalid("sizes must be positive"));
    }
    let k = ceil_log2(m);
    let grade = k as usize + n - 1;
    let elements = 1u128.checked_shl(grade as u32).unwrap_or(u128::MAX);
    guard.check(
        "elements of the full-tableau witness",
        elements,
        guard.max_graded as u128,
    )?;

    let block = 1u64 << k;
    let blocks = 1u64 << (n - 1);
    let m64 = m as u64;
    let left = (0..m64)
        .map(|i| {
            if i + 1 < m64 {
                part((0..blocks).map(|alpha| block * (alpha + 1) - i))
            } else {
                part(
                    (0..blocks)
                        .flat_map(|alpha| (1..=block + 1 - m64).map(move |t| block * alpha + t)),
                )
            }
        })
        .collect();
    let right = (0..n)
        .map(|j| {
            if j == 0 {
                part(1..=block)
            } else {
                part((block << (j - 1)) + 1..=block << j)
            }
        })
        .collect();
    UPair::new(SetVector::new(left), SetVector::new(right))
}

/// The letter `(i1 ↦ i2, j1 ↦ j2)`, which removes exactly the cell `(i1, j1)`
/// from `e` when row `i1` is contained in row `i2` and column `j1` in column `j2`.
pub fn erase_cell_letter(
    e: &Tableau,
    i1: usize,
    j1: usize,
    i2: usize,
    j2: usize,
) -> Result<MonsterLetter> {
    let (m, n) = (e.rows(), e.cols());
    if i1 >= m || i2 >= m || j1 >= n || j2 >= n {
        return Err(Error::invalid("cell indices out of range"));
    }
    if i1 == i2 || j1 == j2 {
        return Err(Error::precondition(
            "the moved row and column must differ from their targets",
        ));
    }
    if e.row_support(i1) & !e.row_support(i2) != 0 {
        return Err(Error::precondition(format!(
            "row {i1} is not contained in row {i2}"
        )));
    }
    if e.col_support(j1) & !e.col_support(j2) != 0 {
        return Err(Error::precondition(format!(
            "column {j1} is not contained in column {j2}"
        )));
    }
    Ok(MonsterLetter::new(
        Transformation::point_move(m, i1, i2)?,
        Transformation::point_move(n, j1, j2)?,
    ))
}

/// Letters leading from the full tableau down to `target`, which must contain
/// a full row and a full column. Cells are erased in row-major order, each
/// through the full row and column.
pub fn reduction_from_full(target: &Tableau) -> Result<Vec<MonsterLetter>> {
    let (m, n) = (target.rows(), target.cols());
    let full_row = (0..m)
        .find(|&i| target.row_support(i).count_ones() as usize == n)
        .ok_or_else(|| Error::precondition("no full row"))?;
    let full_col = (0..n)
        .find(|&j| target.col_support(j).count_ones() as usize == m)
        .ok_or_else(|| Error::precondition("no full column"))?;
    let mut current = Tableau::full(m, n)?;
    let mut letters = Vec::new();
    for (i, j) in Tableau::full(m, n)?.cells() {
        if !target.contains(i, j) {
            let letter = erase_cell_letter(&current, i, j, full_row, full_col)?;
            current = tableau_step(&current, &letter)?;
            letters.push(letter);
        }
    }
    debug_assert_eq!(current, *target);
    Ok(letters)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(s: &str) -> SetVector {
        s.parse().unwrap()
    }

    fn perm(images: &[usize]) -> Transformation {
        Transformation::new(images.to_vec()).unwrap()
    }

    fn permutation_tableau(sigma: &Transformation) -> Tableau {
        Tableau::from_cells(
            sigma.size(),
            sigma.size(),
            (0..sigma.size()).map(|i| (i, sigma.apply(i))),
        )
        .unwrap()
    }

    #[test]
    fn identity_of_size_five() {
        let w = witness_permutation(&Transformation::identity(5)).unwrap();
        let pi = sv("[{1,8},{2,7},{3,6},{4},{5}]");
        assert_eq!(w.left(), &pi);
        assert_eq!(w.right(), &pi);
        assert_eq!(
            w.s_projection().unwrap(),
            Tableau::from_cells(5, 5, (0..5).map(|i| (i, i))).unwrap()
        );
    }

    #[test]
    fn moved_zero_of_size_five() {
        // (132)(45) in 1-based cycle notation
        let sigma = perm(&[2, 0, 1, 4, 3]);
        assert_eq!(
            pi_moved(5),
            [
                part([1, 5]),
                part([2, 6]),
                part([4, 8]),
                part([3]),
                part([7])
            ]
        );
        let w = witness_permutation(&sigma).unwrap();
        assert_eq!(w.left(), &sv("[{4,8},{1,5},{2,6},{3},{7}]"));
        assert_eq!(w.s_projection().unwrap(), permutation_tableau(&sigma));
    }

    #[test]
    fn swap_of_size_two() {
        let w = witness_permutation(&perm(&[1, 0])).unwrap();
        assert_eq!(w.grade(), 1);
        assert_eq!(w.left(), &sv("[{2},{1}]"));
        assert_eq!(w.right(), &sv("[{1},{2}]"));
    }

    #[test]
    fn small_pi_vectors() {
        assert_eq!(pi_moved(3), [part([1, 3]), part([2]), part([4])]);
        assert_eq!(pi_moved(4), [part([1]), part([2]), part([3]), part([4])]);
        assert_eq!(pi_fixed(1), [part([1, 2])]);
        assert_eq!(
            pi_fixed(4),
            [part([1, 8]), part([2, 7]), part([3, 6]), part([4, 5])]
        );
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(witness_permutation(&perm(&[0, 0])).is_err());
    }

    #[test]
    fn full_three_by_five() {
        let w = witness_full(3, 5, &Guard::default()).unwrap();
        assert_eq!(w.grade(), 6);
        assert!(w.left().is_lvalid(6) && w.right().is_rvalid(6));
        assert_eq!(w.s_projection().unwrap(), Tableau::full(3, 5).unwrap());
        let rows: Vec<Vec<u64>> = (0..3)
            .map(|i| {
                w.left()
                    .part(i)
                    .iter()
                    .map(|x| x.try_into().unwrap())
                    .take(4)
                    .collect()
            })
            .collect();
        assert_eq!(
            rows,
            [vec![4, 8, 12, 16], vec![3, 7, 11, 15], vec![1, 2, 5, 6]]
        );
    }

    #[test]
    fn full_is_valid_for_small_sizes() {
        for m in 1..=5 {
            for n in 1..=4 {
                let w = witness_full(m, n, &Guard::default()).unwrap();
                assert_eq!(
                    w.s_projection().unwrap(),
                    Tableau::full(m, n).unwrap(),
                    "{m}×{n}"
                );
            }
        }
    }

    #[test]
    fn full_one_by_one_is_the_base() {
        assert_eq!(
            witness_full(1, 1, &Guard::default()).unwrap(),
            UPair::base(1, 1)
        );
    }

    #[test]
    fn erase_center_of_full() {
        let full = Tableau::full(3, 3).unwrap();
        let letter = erase_cell_letter(&full, 1, 1, 0, 0).unwrap();
        assert_eq!(tableau_step(&full, &letter).unwrap(), full.without(1, 1));
    }

    #[test]
    fn erase_needs_containment() {
        let e = Tableau::from_cells(2, 2, [(0, 0), (1, 1)]).unwrap();
        assert!(matches!(
            erase_cell_letter(&e, 1, 1, 0, 0),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn reduction_chain() {
        let target = Tableau::parse_grid("×××\n×..\n××.\n").unwrap();
        let letters = reduction_from_full(&target).unwrap();
        assert_eq!(letters.len(), 3);
        let mut t = Tableau::full(3, 3).unwrap();
        for l in &letters {
            t = tableau_step(&t, l).unwrap();
        }
        assert_eq!(t, target);
        assert!(reduction_from_full(&Tableau::initial(2, 2).unwrap()).is_err());
    }
}
