use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;

use super::{col_image, row_image, Tableau};
use crate::error::Result;
use crate::guard::Guard;

/// Tableaux reachable from `{(0,0)}` with the minimal number of steps to each.
#[derive(Clone, Debug)]
pub struct Reachability {
    m: usize,
    n: usize,
    /// `levels[d]` holds the tableaux first reached after `d` steps, sorted by bits.
    levels: Vec<Vec<u64>>,
    depth: HashMap<u64, u32>,
    complete: bool,
}

impl Reachability {
    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.n
    }

    /// False when a depth limit stopped the search before the closure was reached.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn len(&self) -> usize {
        self.depth.len()
    }

    pub fn is_empty(&self) -> bool {
        self.depth.is_empty()
    }

    pub fn contains(&self, t: &Tableau) -> bool {
        t.m == self.m && t.n == self.n && self.depth.contains_key(&t.bits)
    }

    pub fn depth_of(&self, t: &Tableau) -> Option<u32> {
        if t.m != self.m || t.n != self.n {
            return None;
        }
        self.depth.get(&t.bits).copied()
    }

    /// Deepest level that contains a tableau.
    pub fn max_depth(&self) -> u32 {
        (self.levels.len() as u32).saturating_sub(1)
    }

    pub fn level(&self, d: usize) -> impl Iterator<Item = Tableau> + '_ {
        self.levels
            .get(d)
            .into_iter()
            .flatten()
            .map(move |&bits| Tableau {
                m: self.m,
                n: self.n,
                bits,
            })
    }

    /// All reached tableaux with their depths, in increasing bit order.
    pub fn tableaux(&self) -> Vec<(Tableau, u32)> {
        let mut out: Vec<(Tableau, u32)> = self
            .depth
            .iter()
            .map(|(&bits, &d)| {
                (
                    Tableau {
                        m: self.m,
                        n: self.n,
                        bits,
                    },
                    d,
                )
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn depth_histogram(&self) -> BTreeMap<u32, u64> {
        self.levels
            .iter()
            .enumerate()
            .filter(|(_, level)| !level.is_empty())
            .map(|(d, level)| (d as u32, level.len() as u64))
            .collect()
    }
}

/// Breadth-first closure of `{(0,0)}` under the shuffle of two monsters.
///
/// Only useful letters are applied: for a tableau `E`, the maps range over
/// `D_L(E) → ⟦m⟧` and `D_R(E) → ⟦n⟧`. A letter's image is the union of a row
/// image depending only on `f` and a column image depending only on `g`, so
/// both families are deduplicated before being combined.
///
/// With `depth_limit = Some(d)` the search stops once level `d` is known; the
/// result is flagged incomplete unless the closure was reached first. Without a
/// limit, `m·n` must respect `guard.max_cells`.
pub fn reachable_tableaux(
    m: usize,
    n: usize,
    depth_limit: Option<u32>,
    guard: &Guard,
) -> Result<Reachability> {
    let start = Tableau::initial(m, n)?;
    if depth_limit.is_none() {
        guard.check(
            "m·n for a full closure",
            (m * n) as u128,
            guard.max_cells as u128,
        )?;
    }
    let mut depth: HashMap<u64, u32> = HashMap::from([(start.bits, 0)]);
    let mut levels = vec![vec![start.bits]];
    let mut complete = false;
    loop {
        let current = levels.len() as u32 - 1;
        if depth_limit.is_some_and(|limit| current >= limit) {
            break;
        }
        let frontier = levels.last().expect("at least one level");
        let expanded: Vec<Vec<u64>> = frontier
            .par_iter()
            .map(|&bits| successors(bits, m, n))
            .collect();
        let mut next = Vec::new();
        for succ in expanded {
            for bits in succ {
                if let std::collections::hash_map::Entry::Vacant(slot) = depth.entry(bits) {
                    slot.insert(current + 1);
                    next.push(bits);
                }
            }
        }
        if next.is_empty() {
            complete = true;
            break;
        }
        next.sort_unstable();
        levels.push(next);
    }
    Ok(Reachability {
        m,
        n,
        levels,
        depth,
        complete,
    })
}

/// Distinct images of one tableau under every useful letter, sorted.
pub(crate) fn successors(bits: u64, m: usize, n: usize) -> Vec<u64> {
    let t = Tableau { m, n, bits };
    let rows = t.occupied_rows();
    let cols = t.occupied_cols();
    let row_images = images_over_domain(&rows, m, |assign| {
        row_image(bits, m, n, |i| {
            assign[rows.binary_search(&i).expect("occupied row")]
        })
    });
    let col_images = images_over_domain(&cols, n, |assign| {
        col_image(bits, m, n, |j| {
            assign[cols.binary_search(&j).expect("occupied column")]
        })
    });
    let mut out: Vec<u64> = Vec::with_capacity(row_images.len() * col_images.len());
    for &r in &row_images {
        for &c in &col_images {
            out.push(r | c);
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Evaluates `image` on every map from `domain` into `⟦range⟧`, enumerated in
/// mixed-radix lexicographic order, and returns the distinct results.
fn images_over_domain(domain: &[usize], range: usize, image: impl Fn(&[usize]) -> u64) -> Vec<u64> {
    let mut assign = vec![0usize; domain.len()];
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    loop {
        let img = image(&assign);
        if seen.insert(img) {
            out.push(img);
        }
        // increment the mixed-radix counter, last digit fastest
        let mut pos = assign.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            assign[pos] += 1;
            if assign[pos] < range {
                break;
            }
            assign[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monster::{tableau_step, MonsterLetter};

    #[test]
    fn two_by_two_has_ten_states() {
        let r = reachable_tableaux(2, 2, None, &Guard::default()).unwrap();
        assert!(r.is_complete());
        assert_eq!(r.len(), 10);
        assert!(r.tableaux().iter().all(|(t, _)| t.is_valid()));
    }

    #[test]
    fn one_by_one_is_trivial() {
        let r = reachable_tableaux(1, 1, None, &Guard::default()).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r.depth_of(&Tableau::initial(1, 1).unwrap()), Some(0));
    }

    #[test]
    fn diagonal_needs_two_steps() {
        let r = reachable_tableaux(2, 2, None, &Guard::default()).unwrap();
        let diag = Tableau::from_cells(2, 2, [(0, 0), (1, 1)]).unwrap();
        let anti = Tableau::from_cells(2, 2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(r.depth_of(&diag), Some(2));
        assert_eq!(r.depth_of(&anti), Some(1));
    }

    #[test]
    fn depth_limit_marks_incomplete() {
        let r = reachable_tableaux(3, 3, Some(1), &Guard::default()).unwrap();
        assert!(!r.is_complete());
        assert_eq!(r.max_depth(), 1);
        assert!(r.depth_histogram().keys().all(|&d| d <= 1));
    }

    #[test]
    fn guard_refuses_large_closures() {
        let err = reachable_tableaux(6, 6, None, &Guard::default()).unwrap_err();
        assert!(matches!(err, crate::Error::GuardExceeded { .. }));
        // a depth-limited search is allowed
        assert!(reachable_tableaux(6, 6, Some(1), &Guard::default()).is_ok());
    }

    #[test]
    fn successors_match_full_alphabet() {
        use crate::automata::Transformation;
        let t = Tableau::from_cells(2, 3, [(0, 0), (1, 2)]).unwrap();
        let mut brute: Vec<u64> = Vec::new();
        for f in Transformation::all(2) {
            for g in Transformation::all(3) {
                brute.push(
                    tableau_step(&t, &MonsterLetter::new(f.clone(), g))
                        .unwrap()
                        .bits,
                );
            }
        }
        brute.sort_unstable();
        brute.dedup();
        assert_eq!(successors(t.bits, 2, 3), brute);
    }
}
