//! Brute-force models used as oracles. They share no code with the library
//! beyond its public value types.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};

use rand::Rng;
use shufsc::{MonsterLetter, Tableau, Transformation};

/// A tableau as a set of cells.
pub type Cells = BTreeSet<(usize, usize)>;

pub fn cells_of(t: &Tableau) -> Cells {
    t.cells().collect()
}

pub fn tableau_of(m: usize, n: usize, cells: &Cells) -> Tableau {
    Tableau::from_cells(m, n, cells.iter().copied()).unwrap()
}

/// `E·(f, g) = {(f(i), j)} ∪ {(i, g(j))}` straight from the definition.
pub fn step(cells: &Cells, f: &[usize], g: &[usize]) -> Cells {
    cells
        .iter()
        .flat_map(|&(i, j)| [(f[i], j), (i, g[j])])
        .collect()
}

/// Every map from `domain` into `0..size`, as full vectors with the identity
/// outside the domain.
pub fn maps_on(domain: &[usize], size: usize) -> Vec<Vec<usize>> {
    let mut out = vec![(0..size).collect::<Vec<_>>()];
    for &x in domain {
        out = out
            .into_iter()
            .flat_map(|base| {
                (0..size).map(move |y| {
                    let mut v = base.clone();
                    v[x] = y;
                    v
                })
            })
            .collect();
    }
    out
}

/// Oracle bitmask layout: cell `(i, j)` is bit `i·n + j`.
pub fn bits_of(cells: &Cells, n: usize) -> u64 {
    cells.iter().fold(0, |acc, &(i, j)| acc | 1 << (i * n + j))
}

pub fn cells_of_bits(bits: u64, m: usize, n: usize) -> Cells {
    (0..m)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| bits >> (i * n + j) & 1 == 1)
        .collect()
}

fn step_bits(bits: u64, n: usize, cells: &[(usize, usize)], f: &[usize], g: &[usize]) -> u64 {
    debug_assert!(cells.iter().all(|&(i, j)| bits >> (i * n + j) & 1 == 1));
    cells.iter().fold(0, |acc, &(i, j)| {
        acc | 1 << (f[i] * n + j) | 1 << (i * n + g[j])
    })
}

/// Minimal depth of every tableau reachable from `{(0,0)}` within `limit` steps,
/// trying every map on the occupied rows and columns. Keys use [`bits_of`].
pub fn naive_bfs(m: usize, n: usize, limit: usize) -> HashMap<u64, usize> {
    let mut depth = HashMap::from([(1u64, 0)]);
    let mut queue = VecDeque::from([1u64]);
    while let Some(e) = queue.pop_front() {
        let d = depth[&e];
        if d == limit {
            continue;
        }
        let cells: Vec<(usize, usize)> = cells_of_bits(e, m, n).into_iter().collect();
        let rows: Vec<usize> = cells
            .iter()
            .map(|c| c.0)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let cols: Vec<usize> = cells
            .iter()
            .map(|c| c.1)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let gs = maps_on(&cols, n);
        for f in maps_on(&rows, m) {
            for g in &gs {
                let next = step_bits(e, n, &cells, &f, g);
                if let std::collections::hash_map::Entry::Vacant(slot) = depth.entry(next) {
                    slot.insert(d + 1);
                    queue.push_back(next);
                }
            }
        }
    }
    depth
}

/// Valid means a mark in row 0 and a mark in column 0.
pub fn valid_count(m: usize, n: usize) -> u64 {
    (0u64..1 << (m * n))
        .filter(|&bits| {
            let row0 = (0..n).any(|j| bits >> j & 1 == 1);
            let col0 = (0..m).any(|i| bits >> (i * n) & 1 == 1);
            row0 && col0
        })
        .count() as u64
}

pub fn random_letter(rng: &mut impl Rng, m: usize, n: usize) -> MonsterLetter {
    let f = (0..m).map(|_| rng.gen_range(0..m)).collect();
    let g = (0..n).map(|_| rng.gen_range(0..n)).collect();
    MonsterLetter::new(
        Transformation::new(f).unwrap(),
        Transformation::new(g).unwrap(),
    )
}

pub fn random_path(rng: &mut impl Rng, m: usize, n: usize, len: usize) -> Vec<MonsterLetter> {
    (0..len).map(|_| random_letter(rng, m, n)).collect()
}

pub fn images(t: &Transformation) -> Vec<usize> {
    (0..t.size()).map(|i| t.apply(i)).collect()
}

/// Replays a path from `{(0,0)}` with the oracle step.
pub fn replay(m: usize, n: usize, path: &[MonsterLetter]) -> Cells {
    let end: Cells = path.iter().fold([(0, 0)].into(), |e, l| {
        step(&e, &images(&l.left), &images(&l.right))
    });
    assert!(
        end.iter().all(|&(i, j)| i < m && j < n),
        "path leaves the {m}×{n} grid"
    );
    end
}

/// Set partitions of `0..size` as block labels, by restricted growth strings.
pub fn set_partitions(size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut labels = vec![0usize; size];
    fn grow(pos: usize, max: usize, labels: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pos == labels.len() {
            out.push(labels.clone());
            return;
        }
        for b in 0..=max + 1 {
            labels[pos] = b;
            grow(pos + 1, max.max(b), labels, out);
        }
    }
    if size == 0 {
        return vec![Vec::new()];
    }
    grow(1, 0, &mut labels, &mut out);
    out
}

/// Partitions of an `a`-set into `b` blocks with the first `r` elements in
/// distinct blocks, counted one by one.
pub fn r_stirling_brute(a: usize, b: usize, r: usize) -> u64 {
    set_partitions(a)
        .into_iter()
        .filter(|p| {
            let blocks = p.iter().copied().collect::<BTreeSet<_>>().len();
            let firsts: BTreeSet<usize> = p.iter().take(r).copied().collect();
            blocks == b && firsts.len() == r.min(a)
        })
        .count() as u64
}

/// Vectors of plain `u64` sets for the successor oracle.
pub type Parts = Vec<BTreeSet<u64>>;

/// `P ∪ (P·g)^↑` at grade `k`, where `(P·g)_i` is the union of the parts sent to `i`.
pub fn succ_plain(p: &Parts, g: &[usize], k: u32) -> Parts {
    let shift = 1u64 << k;
    let mut out = p.clone();
    for (i, part) in p.iter().enumerate() {
        out[g[i]].extend(part.iter().map(|x| x + shift));
    }
    out
}

pub fn parts_from(v: &[&[u64]]) -> Parts {
    v.iter().map(|p| p.iter().copied().collect()).collect()
}

pub fn parts_to_string(p: &Parts) -> String {
    let inner: Vec<String> = p
        .iter()
        .map(|s| {
            format!(
                "{{{}}}",
                s.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            )
        })
        .collect();
    format!("[{}]", inner.join(","))
}

/// Monster DFA on `size` states: letter `(f, g)` acts by `f` (left) or `g` (right).
pub fn monster_dfa(
    size: usize,
    finals: &[usize],
    letters: &[MonsterLetter],
    left: bool,
) -> shufsc::Dfa {
    let alphabet: Vec<String> = letters.iter().map(MonsterLetter::name).collect();
    let delta = (0..size)
        .map(|q| {
            letters
                .iter()
                .map(|l| {
                    if left {
                        l.left.apply(q)
                    } else {
                        l.right.apply(q)
                    }
                })
                .collect()
        })
        .collect();
    shufsc::Dfa::new(alphabet, 0, finals.iter().copied().collect(), delta).unwrap()
}

pub fn all_letters(m: usize, n: usize) -> Vec<MonsterLetter> {
    let fs: Vec<Transformation> = Transformation::all(m).collect();
    let gs: Vec<Transformation> = Transformation::all(n).collect();
    fs.iter()
        .flat_map(|f| {
            gs.iter()
                .map(move |g| MonsterLetter::new(f.clone(), g.clone()))
        })
        .collect()
}
