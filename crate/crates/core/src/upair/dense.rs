use crate::error::Result;
use crate::guard::Guard;
use crate::monster::Tableau;

/// Nonempty, and no row support is contained in another row's, and likewise
/// for columns.
pub fn is_dense(e: &Tableau) -> bool {
    let rows: Vec<u64> = (0..e.rows()).map(|i| e.row_support(i)).collect();
    let cols: Vec<u64> = (0..e.cols()).map(|j| e.col_support(j)).collect();
    // the empty tableau is never a state of the automaton, so it is left out
    !e.is_empty() && antichain(&rows) && antichain(&cols)
}

fn antichain(supports: &[u64]) -> bool {
    supports.iter().enumerate().all(|(a, &x)| {
        supports
            .iter()
            .enumerate()
            .all(|(b, &y)| a == b || x & !y != 0)
    })
}

/// Every dense `m×n` tableau, in increasing bit order.
pub fn enumerate_dense(m: usize, n: usize, guard: &Guard) -> Result<Vec<Tableau>> {
    guard.check(
        "m·n for a dense enumeration",
        (m * n) as u128,
        guard.max_cells as u128,
    )?;
    Ok(Tableau::all(m, n)?.filter(is_dense).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::Transformation;

    #[test]
    fn permutation_tableaux_are_dense() {
        for sigma in Transformation::all(3).filter(Transformation::is_permutation) {
            let e = Tableau::from_cells(3, 3, (0..3).map(|i| (i, sigma.apply(i)))).unwrap();
            assert!(is_dense(&e));
        }
    }

    #[test]
    fn three_by_three_has_twelve() {
        let dense = enumerate_dense(3, 3, &Guard::default()).unwrap();
        assert_eq!(dense.len(), 12);
        assert_eq!(dense.iter().filter(|e| e.len() == 3).count(), 6);
        assert_eq!(dense.iter().filter(|e| e.len() == 6).count(), 6);
    }

    #[test]
    fn full_is_not_dense() {
        assert!(!is_dense(&Tableau::full(2, 3).unwrap()));
        assert!(is_dense(&Tableau::full(1, 1).unwrap()));
    }

    #[test]
    fn two_by_two() {
        let dense = enumerate_dense(2, 2, &Guard::default()).unwrap();
        let grids: Vec<String> = dense.iter().map(Tableau::grid).collect();
        assert_eq!(grids, [".×\n×.\n", "×.\n.×\n"]);
    }
}
