use std::collections::{BTreeSet, HashMap, HashSet};

use serde::Serialize;

use super::{
    col_image, distinguishing_letters, reachable_tableaux, row_image, tableau_step, MonsterLetter,
    Tableau,
};
use crate::automata::{moore_partition, Dfa, Transformation};
use crate::error::Result;
use crate::guard::Guard;

/// How the right component of letter `c` is read: the constant map onto `n−1`.
pub const C_INTERPRETATION: &str = "C-const";

/// Final sets `(F1, F2)` of the two monsters.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct FinalPair {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ShuffleComplexity {
    pub m: usize,
    pub n: usize,
    /// Largest number of Nerode classes over all final-set pairs.
    pub value: usize,
    pub reachable: usize,
    /// Every `(F1, F2)` reaching `value`.
    pub maximizers: Vec<FinalPair>,
    /// Whether the letters `a`, `b`, `c` alone separate all reachable states for
    /// some maximizing pair.
    pub separated_by_abc: bool,
    pub c_interpretation: &'static str,
}

/// Exact state complexity of the shuffle at `(m, n)`: the maximum over all
/// final-set pairs of the size of the minimal DFA of the shuffle of two monsters.
///
/// Reachability is computed once. For each `(F1, F2)` the reachable part is
/// refined with the letters `a`, `b`, `c` first; if they already separate every
/// state the count is exact, otherwise the full alphabet (deduplicated by
/// action) decides.
pub fn state_complexity_shuffle(m: usize, n: usize, guard: &Guard) -> Result<ShuffleComplexity> {
    let reach = reachable_tableaux(m, n, None, guard)?;
    let states: Vec<Tableau> = reach.tableaux().into_iter().map(|(t, _)| t).collect();
    let count = states.len();
    if m < 2 || n < 2 {
        // one side has a single state; F empty gives one class, F full gives
        // the language of the other monster's shuffle with Σ*
        return degenerate(m, n, &states);
    }

    let index: HashMap<u64, usize> = states
        .iter()
        .enumerate()
        .map(|(i, t)| (t.bits, i))
        .collect();
    let initial = index[&Tableau::initial(m, n)?.bits];

    let abc = distinguishing_letters(m, n)?;
    let abc_delta: Vec<Vec<usize>> = states
        .iter()
        .map(|t| {
            abc.iter()
                .map(|letter| index[&tableau_step(t, letter).expect("sizes match").bits])
                .collect()
        })
        .collect();
    let abc_names: Vec<String> = abc.iter().map(MonsterLetter::name).collect();
    let abc_dfa = Dfa::new(abc_names, initial, BTreeSet::new(), abc_delta)?;

    let mut full_dfa: Option<Dfa> = None;
    let mut best = 0;
    let mut maximizers = Vec::new();
    let mut separated_by_abc = false;
    for left in 0u64..1 << m {
        for right in 0u64..1 << n {
            let pair = FinalPair {
                left: (0..m).filter(|i| left >> i & 1 == 1).collect(),
                right: (0..n).filter(|j| right >> j & 1 == 1).collect(),
            };
            let (classes, by_abc) = if left == 0 || right == 0 {
                (1, true)
            } else {
                let mask = final_mask(m, n, left, right);
                let finals: BTreeSet<usize> =
                    (0..count).filter(|&s| states[s].bits & mask != 0).collect();
                let (_, abc_classes) = moore_partition(&abc_dfa.with_finals(finals.clone())?);
                if abc_classes == count {
                    (count, true)
                } else {
                    let full = match &full_dfa {
                        Some(d) => d,
                        None => full_dfa.insert(full_alphabet_dfa(m, n, &states, &index, initial)?),
                    };
                    (moore_partition(&full.with_finals(finals)?).1, false)
                }
            };
            if classes > best {
                best = classes;
                maximizers.clear();
                separated_by_abc = false;
            }
            if classes == best {
                separated_by_abc |= by_abc;
                maximizers.push(pair);
            }
        }
    }
    Ok(ShuffleComplexity {
        m,
        n,
        value: best,
        reachable: count,
        maximizers,
        separated_by_abc,
        c_interpretation: C_INTERPRETATION,
    })
}

fn final_mask(m: usize, n: usize, left: u64, right: u64) -> u64 {
    let mut mask = 0;
    for i in (0..m).filter(|i| left >> i & 1 == 1) {
        for j in (0..n).filter(|j| right >> j & 1 == 1) {
            mask |= 1 << (i * n + j);
        }
    }
    mask
}

/// The reachable part over the whole monster alphabet, keeping one letter per
/// distinct action.
fn full_alphabet_dfa(
    m: usize,
    n: usize,
    states: &[Tableau],
    index: &HashMap<u64, usize>,
    initial: usize,
) -> Result<Dfa> {
    let lefts: Vec<Transformation> = Transformation::all(m).collect();
    let rights: Vec<Transformation> = Transformation::all(n).collect();
    let row_images: Vec<Vec<u64>> = lefts
        .iter()
        .map(|f| {
            states
                .iter()
                .map(|t| row_image(t.bits, m, n, |i| f.apply(i)))
                .collect()
        })
        .collect();
    let col_images: Vec<Vec<u64>> = rights
        .iter()
        .map(|g| {
            states
                .iter()
                .map(|t| col_image(t.bits, m, n, |j| g.apply(j)))
                .collect()
        })
        .collect();

    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut columns: Vec<Vec<usize>> = Vec::new();
    let mut names = Vec::new();
    for (fi, f) in lefts.iter().enumerate() {
        for (gi, g) in rights.iter().enumerate() {
            let column: Vec<usize> = (0..states.len())
                .map(|s| index[&(row_images[fi][s] | col_images[gi][s])])
                .collect();
            if seen.insert(column.clone()) {
                columns.push(column);
                names.push(MonsterLetter::new(f.clone(), g.clone()).name());
            }
        }
    }
    let delta = (0..states.len())
        .map(|s| columns.iter().map(|col| col[s]).collect())
        .collect();
    Dfa::new(names, initial, BTreeSet::new(), delta)
}

/// `m = 1` or `n = 1`: a single-state monster accepts `∅` or `Σ*`, and the
/// shuffle with `Σ*` has the reachable tableaux as its only candidates.
fn degenerate(m: usize, n: usize, states: &[Tableau]) -> Result<ShuffleComplexity> {
    let index: HashMap<u64, usize> = states
        .iter()
        .enumerate()
        .map(|(i, t)| (t.bits, i))
        .collect();
    let initial = index[&Tableau::initial(m, n)?.bits];
    let dfa = full_alphabet_dfa(m, n, states, &index, initial)?;
    let mut best = 0;
    let mut maximizers = Vec::new();
    for left in 0u64..1 << m {
        for right in 0u64..1 << n {
            let mask = final_mask(m, n, left, right);
            let finals = (0..states.len())
                .filter(|&s| states[s].bits & mask != 0)
                .collect();
            let classes = crate::automata::minimize(&dfa.with_finals(finals)?).state_count();
            if classes > best {
                best = classes;
                maximizers.clear();
            }
            if classes == best {
                maximizers.push(FinalPair {
                    left: (0..m).filter(|i| left >> i & 1 == 1).collect(),
                    right: (0..n).filter(|j| right >> j & 1 == 1).collect(),
                });
            }
        }
    }
    Ok(ShuffleComplexity {
        m,
        n,
        value: best,
        reachable: states.len(),
        maximizers,
        separated_by_abc: false,
        c_interpretation: C_INTERPRETATION,
    })
}
