//! Deterministic and nondeterministic automata over opaque letters, the
//! subset construction, Moore minimization and the classical shuffle NFA.
//!
//! States are dense indices. A letter is identified by its position in the
//! automaton's alphabet; the alphabet itself is a list of opaque names.

mod json;
mod transformation;

use std::collections::{BTreeSet, HashMap, VecDeque};

pub use transformation::Transformation;

use crate::error::{Error, Result};

/// A complete deterministic automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Vec<String>,
    initial: usize,
    finals: BTreeSet<usize>,
    /// `delta[state][letter]`
    delta: Vec<Vec<usize>>,
}

/// A nondeterministic automaton without ε-transitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Vec<String>,
    initials: BTreeSet<usize>,
    finals: BTreeSet<usize>,
    /// `delta[state][letter]`, sorted and deduplicated.
    delta: Vec<Vec<Vec<usize>>>,
}

fn check_alphabet(alphabet: &[String]) -> Result<()> {
    let distinct: BTreeSet<&String> = alphabet.iter().collect();
    if distinct.len() != alphabet.len() {
        return Err(Error::invalid("alphabet contains duplicate letters"));
    }
    Ok(())
}

fn check_states<'a>(
    what: &str,
    states: impl IntoIterator<Item = &'a usize>,
    count: usize,
) -> Result<()> {
    for &q in states {
        if q >= count {
            return Err(Error::invalid(format!(
                "{what} state {q} out of range ({count} states)"
            )));
        }
    }
    Ok(())
}

impl Dfa {
    pub fn new(
        alphabet: Vec<String>,
        initial: usize,
        finals: BTreeSet<usize>,
        delta: Vec<Vec<usize>>,
    ) -> Result<Self> {
        check_alphabet(&alphabet)?;
        let count = delta.len();
        if count == 0 {
            return Err(Error::invalid("a DFA needs at least one state"));
        }
        check_states("initial", [&initial], count)?;
        check_states("final", &finals, count)?;
        for row in &delta {
            if row.len() != alphabet.len() {
                return Err(Error::invalid("transition function is not total"));
            }
            check_states("target", row, count)?;
        }
        Ok(Self {
            alphabet,
            initial,
            finals,
            delta,
        })
    }

    pub fn state_count(&self) -> usize {
        self.delta.len()
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn finals(&self) -> &BTreeSet<usize> {
        &self.finals
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals.contains(&q)
    }

    #[inline]
    pub fn step(&self, q: usize, letter: usize) -> usize {
        self.delta[q][letter]
    }

    pub fn letter_index(&self, name: &str) -> Option<usize> {
        self.alphabet.iter().position(|l| l == name)
    }

    pub fn run(&self, word: &[usize]) -> usize {
        word.iter().fold(self.initial, |q, &a| self.step(q, a))
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        self.is_final(self.run(word))
    }

    /// Same automaton with every state final iff `is_final` says so.
    pub fn with_finals(&self, finals: BTreeSet<usize>) -> Result<Self> {
        check_states("final", &finals, self.state_count())?;
        Ok(Self {
            finals,
            ..self.clone()
        })
    }

    /// States reachable from the initial state, in breadth-first order.
    pub fn accessible(&self) -> Vec<usize> {
        let mut seen = vec![false; self.state_count()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut head = 0;
        while head < order.len() {
            let q = order[head];
            head += 1;
            for &t in &self.delta[q] {
                if !std::mem::replace(&mut seen[t], true) {
                    order.push(t);
                }
            }
        }
        order
    }

    /// Views this DFA as an NFA with a single initial state.
    pub fn to_nfa(&self) -> Nfa {
        Nfa {
            alphabet: self.alphabet.clone(),
            initials: BTreeSet::from([self.initial]),
            finals: self.finals.clone(),
            delta: self
                .delta
                .iter()
                .map(|row| row.iter().map(|&t| vec![t]).collect())
                .collect(),
        }
    }
}

impl Nfa {
    pub fn new(
        state_count: usize,
        alphabet: Vec<String>,
        initials: BTreeSet<usize>,
        finals: BTreeSet<usize>,
        transitions: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<Self> {
        check_alphabet(&alphabet)?;
        check_states("initial", &initials, state_count)?;
        check_states("final", &finals, state_count)?;
        let mut delta = vec![vec![Vec::new(); alphabet.len()]; state_count];
        for (src, letter, dst) in transitions {
            check_states("transition", [&src, &dst], state_count)?;
            if letter >= alphabet.len() {
                return Err(Error::invalid(format!(
                    "letter index {letter} out of range"
                )));
            }
            delta[src][letter].push(dst);
        }
        for row in &mut delta {
            for targets in row.iter_mut() {
                targets.sort_unstable();
                targets.dedup();
            }
        }
        Ok(Self {
            alphabet,
            initials,
            finals,
            delta,
        })
    }

    pub fn state_count(&self) -> usize {
        self.delta.len()
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn initials(&self) -> &BTreeSet<usize> {
        &self.initials
    }

    pub fn finals(&self) -> &BTreeSet<usize> {
        &self.finals
    }

    pub fn successors(&self, q: usize, letter: usize) -> &[usize] {
        &self.delta[q][letter]
    }

    pub fn transitions(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.delta.iter().enumerate().flat_map(|(src, row)| {
            row.iter().enumerate().flat_map(move |(letter, targets)| {
                targets.iter().map(move |&dst| (src, letter, dst))
            })
        })
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        let mut current: BTreeSet<usize> = self.initials.clone();
        for &a in word {
            current = current
                .iter()
                .flat_map(|&q| self.delta[q][a].iter().copied())
                .collect();
        }
        current.iter().any(|q| self.finals.contains(q))
    }
}

/// Product-state NFA for `L(k) ⧢ L(l)`: state `(p, q)` has index
/// `p * |Q_l| + q` and on letter `a` moves to `(δ_k(p,a), q)` and
/// `(p, δ_l(q,a))`.
pub fn shuffle_nfa(k: &Dfa, l: &Dfa) -> Result<Nfa> {
    let left: BTreeSet<&String> = k.alphabet.iter().collect();
    let right: BTreeSet<&String> = l.alphabet.iter().collect();
    if left != right {
        return Err(Error::AlphabetMismatch(format!(
            "{:?} vs {:?}",
            k.alphabet, l.alphabet
        )));
    }
    // l's letter index for each of k's letters
    let remap: Vec<usize> = k
        .alphabet
        .iter()
        .map(|name| l.letter_index(name).expect("alphabets are equal as sets"))
        .collect();
    let width = l.state_count();
    let pair = |p: usize, q: usize| p * width + q;

    let mut transitions = Vec::with_capacity(k.state_count() * width * remap.len() * 2);
    for p in 0..k.state_count() {
        for q in 0..width {
            for (a, &la) in remap.iter().enumerate() {
                transitions.push((pair(p, q), a, pair(k.step(p, a), q)));
                transitions.push((pair(p, q), a, pair(p, l.step(q, la))));
            }
        }
    }
    let finals = k
        .finals
        .iter()
        .flat_map(|&p| l.finals.iter().map(move |&q| pair(p, q)))
        .collect();
    Nfa::new(
        k.state_count() * width,
        k.alphabet.clone(),
        BTreeSet::from([pair(k.initial, l.initial)]),
        finals,
        transitions,
    )
}

/// Subset construction over the reachable subsets. State 0 is the initial
/// subset; the others are numbered in breadth-first discovery order, letters
/// taken in alphabet order.
pub fn determinize(nfa: &Nfa) -> Dfa {
    determinize_with_subsets(nfa).0
}

/// Like [`determinize`], also returning the NFA subset behind each DFA state.
pub fn determinize_with_subsets(nfa: &Nfa) -> (Dfa, Vec<BTreeSet<usize>>) {
    let words = nfa.state_count().div_ceil(64).max(1);
    let to_bits = |states: &mut dyn Iterator<Item = usize>| {
        let mut bits = vec![0u64; words];
        for q in states {
            bits[q / 64] |= 1 << (q % 64);
        }
        bits
    };
    let members = |bits: &[u64]| -> Vec<usize> {
        let mut out = Vec::new();
        for (w, &word) in bits.iter().enumerate() {
            let mut rest = word;
            while rest != 0 {
                out.push(w * 64 + rest.trailing_zeros() as usize);
                rest &= rest - 1;
            }
        }
        out
    };

    let start = to_bits(&mut nfa.initials.iter().copied());
    let mut index: HashMap<Vec<u64>, usize> = HashMap::from([(start.clone(), 0)]);
    let mut subsets = vec![start];
    let mut delta: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(s) = queue.pop_front() {
        let current = members(&subsets[s]);
        let mut row = Vec::with_capacity(nfa.alphabet.len());
        for a in 0..nfa.alphabet.len() {
            let next = to_bits(
                &mut current
                    .iter()
                    .flat_map(|&q| nfa.delta[q][a].iter().copied()),
            );
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    let id = subsets.len();
                    index.insert(next.clone(), id);
                    subsets.push(next);
                    queue.push_back(id);
                    id
                }
            };
            row.push(id);
        }
        if delta.len() <= s {
            delta.resize(s + 1, Vec::new());
        }
        delta[s] = row;
    }

    let subsets: Vec<BTreeSet<usize>> = subsets
        .iter()
        .map(|b| members(b).into_iter().collect())
        .collect();
    let finals = subsets
        .iter()
        .enumerate()
        .filter(|(_, set)| set.iter().any(|q| nfa.finals.contains(q)))
        .map(|(i, _)| i)
        .collect();
    let dfa = Dfa {
        alphabet: nfa.alphabet.clone(),
        initial: 0,
        finals,
        delta,
    };
    (dfa, subsets)
}

/// Moore partition refinement over every state of `dfa` (accessible or not).
/// Returns the class of each state and the number of classes. Class ids are
/// assigned in order of first appearance by state index.
pub fn moore_partition(dfa: &Dfa) -> (Vec<usize>, usize) {
    let n = dfa.state_count();
    let mut class: Vec<usize> = (0..n).map(|q| usize::from(dfa.is_final(q))).collect();
    let mut count = renumber(&mut class);
    loop {
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::with_capacity(count * 2);
        let mut next = Vec::with_capacity(n);
        for q in 0..n {
            let mut signature = Vec::with_capacity(dfa.alphabet.len() + 1);
            signature.push(class[q]);
            signature.extend(dfa.delta[q].iter().map(|&t| class[t]));
            let fresh = ids.len();
            next.push(*ids.entry(signature).or_insert(fresh));
        }
        let refined = ids.len();
        class = next;
        if refined == count {
            return (class, count);
        }
        count = refined;
    }
}

fn renumber(class: &mut [usize]) -> usize {
    let mut ids: HashMap<usize, usize> = HashMap::new();
    for c in class.iter_mut() {
        let fresh = ids.len();
        *c = *ids.entry(*c).or_insert(fresh);
    }
    ids.len()
}

/// The minimal complete DFA equivalent to `dfa`, with states numbered in
/// breadth-first order from the initial state. Two equivalent inputs over the
/// same alphabet produce identical outputs.
pub fn minimize(dfa: &Dfa) -> Dfa {
    let accessible = dfa.accessible();
    let mut local = vec![usize::MAX; dfa.state_count()];
    for (i, &q) in accessible.iter().enumerate() {
        local[q] = i;
    }
    let trimmed = Dfa {
        alphabet: dfa.alphabet.clone(),
        initial: 0,
        finals: accessible
            .iter()
            .enumerate()
            .filter(|(_, q)| dfa.is_final(**q))
            .map(|(i, _)| i)
            .collect(),
        delta: accessible
            .iter()
            .map(|&q| dfa.delta[q].iter().map(|&t| local[t]).collect())
            .collect(),
    };
    let (class, count) = moore_partition(&trimmed);

    // Quotient, then renumber classes in BFS order for a canonical result.
    let mut representative = vec![usize::MAX; count];
    for (q, &c) in class.iter().enumerate() {
        if representative[c] == usize::MAX {
            representative[c] = q;
        }
    }
    let mut order = vec![usize::MAX; count];
    let mut queue = VecDeque::from([class[0]]);
    let mut next_id = 0;
    order[class[0]] = 0;
    next_id += 1;
    let mut bfs = Vec::with_capacity(count);
    while let Some(c) = queue.pop_front() {
        bfs.push(c);
        for &t in &trimmed.delta[representative[c]] {
            let tc = class[t];
            if order[tc] == usize::MAX {
                order[tc] = next_id;
                next_id += 1;
                queue.push_back(tc);
            }
        }
    }
    let delta = bfs
        .iter()
        .map(|&c| {
            trimmed.delta[representative[c]]
                .iter()
                .map(|&t| order[class[t]])
                .collect()
        })
        .collect();
    let finals = bfs
        .iter()
        .filter(|&&c| trimmed.is_final(representative[c]))
        .map(|&c| order[c])
        .collect();
    Dfa {
        alphabet: dfa.alphabet.clone(),
        initial: 0,
        finals,
        delta,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn letters(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    /// Accepts exactly the one-letter word `target` (plus sink).
    fn single_letter(alphabet: &[&str], target: &str) -> Dfa {
        let t = alphabet.iter().position(|a| *a == target).unwrap();
        let row = |to: &dyn Fn(usize) -> usize| (0..alphabet.len()).map(to).collect::<Vec<_>>();
        Dfa::new(
            letters(alphabet),
            0,
            BTreeSet::from([1]),
            vec![
                row(&|a| if a == t { 1 } else { 2 }),
                row(&|_| 2),
                row(&|_| 2),
            ],
        )
        .unwrap()
    }

    #[test]
    fn shuffle_of_epsilon_languages() {
        // Over an empty alphabet a single state accepts exactly {ε}.
        let eps = Dfa::new(Vec::new(), 0, BTreeSet::from([0]), vec![vec![]]).unwrap();
        // Over {a} a complete DFA for {ε} needs a sink.
        let eps2 = Dfa::new(
            letters(&["a"]),
            0,
            BTreeSet::from([0]),
            vec![vec![1], vec![1]],
        )
        .unwrap();
        let nfa = shuffle_nfa(&eps2, &eps2).unwrap();
        assert_eq!(nfa.state_count(), 4);
        let min = minimize(&determinize(&nfa));
        assert!(min.accepts(&[]));
        assert!(!min.accepts(&[0]));
        assert_eq!(min.state_count(), 2);

        let one = shuffle_nfa(&eps, &eps).unwrap();
        assert_eq!(one.state_count(), 1);
        let d = determinize(&one);
        assert_eq!(d.state_count(), 1);
        assert!(d.accepts(&[]));
    }

    #[test]
    fn shuffle_of_two_letters() {
        let ab = ["a", "b"];
        let nfa = shuffle_nfa(&single_letter(&ab, "a"), &single_letter(&ab, "b")).unwrap();
        assert_eq!(nfa.state_count(), 9);
        assert_eq!(nfa.initials(), &BTreeSet::from([0]));
        for q in 0..9 {
            for a in 0..2 {
                assert!(nfa.successors(q, a).len() <= 2);
            }
        }
        let dfa = minimize(&determinize(&nfa));
        let mut accepted = Vec::new();
        for len in 0..=4u32 {
            for code in 0..(1u32 << len) {
                let word: Vec<usize> = (0..len).map(|i| ((code >> i) & 1) as usize).collect();
                if dfa.accepts(&word) {
                    accepted.push(word);
                }
            }
        }
        accepted.sort();
        assert_eq!(accepted, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn shuffle_rejects_alphabet_mismatch() {
        let k = single_letter(&["a", "b"], "a");
        let l = single_letter(&["a", "c"], "a");
        assert!(matches!(
            shuffle_nfa(&k, &l),
            Err(Error::AlphabetMismatch(_))
        ));
    }

    #[test]
    fn determinize_without_transitions() {
        let nfa = Nfa::new(
            1,
            letters(&["a"]),
            BTreeSet::from([0]),
            BTreeSet::from([0]),
            [],
        )
        .unwrap();
        let (dfa, subsets) = determinize_with_subsets(&nfa);
        assert_eq!(dfa.state_count(), 2);
        assert!(dfa.accepts(&[]));
        assert!(!dfa.accepts(&[0]));
        assert!(subsets[1].is_empty());
    }

    #[test]
    fn determinize_deterministic_input_is_isomorphic() {
        let d = single_letter(&["a", "b"], "b");
        let again = determinize(&d.to_nfa());
        assert_eq!(again.state_count(), 3);
        assert_eq!(minimize(&again), minimize(&d));
    }

    #[test]
    fn parity_language_minimizes_to_two_states() {
        let a = letters(&["a"]);
        let three = Dfa::new(
            a.clone(),
            0,
            BTreeSet::from([0, 2]),
            vec![vec![1], vec![2], vec![1]],
        )
        .unwrap();
        let four = Dfa::new(
            a,
            0,
            BTreeSet::from([0, 2]),
            vec![vec![1], vec![2], vec![3], vec![0]],
        )
        .unwrap();
        let m3 = minimize(&three);
        let m4 = minimize(&four);
        assert_eq!(m3.state_count(), 2);
        assert_eq!(m3, m4);
        assert_eq!(minimize(&m3), m3);
    }

    #[test]
    fn moore_partition_keeps_inaccessible_states() {
        let a = letters(&["a"]);
        let d = Dfa::new(a, 0, BTreeSet::from([2]), vec![vec![0], vec![2], vec![2]]).unwrap();
        let (_, count) = moore_partition(&d);
        assert_eq!(count, 3);
        assert_eq!(minimize(&d).state_count(), 1);
    }

    #[test]
    fn rejects_partial_dfa() {
        assert!(Dfa::new(letters(&["a", "b"]), 0, BTreeSet::new(), vec![vec![0]]).is_err());
        assert!(Dfa::new(letters(&["a"]), 3, BTreeSet::new(), vec![vec![0]]).is_err());
    }
}
