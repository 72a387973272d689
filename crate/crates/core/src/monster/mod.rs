//! Monsters and the shuffle modifier acting on tableaux.
//!
//! A state of the determinized shuffle of two monsters of sizes `m` and `n`
//! is a subset of `⟦m⟧×⟦n⟧`, drawn as an `m×n` boolean tableau. A letter is a
//! pair `(f, g)` of transformations; it sends a tableau `E` to
//! `{(f(i), j)} ∪ {(i, g(j))}` over `(i, j) ∈ E`.

mod complexity;
mod reach;

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

pub use complexity::{state_complexity_shuffle, FinalPair, ShuffleComplexity, C_INTERPRETATION};
pub use reach::{reachable_tableaux, Reachability};

use crate::automata::Transformation;
use crate::error::{Error, Result};

/// A subset of `⟦m⟧×⟦n⟧`, stored row-major in the low `m·n` bits of a word:
/// cell `(i, j)` is bit `i·n + j`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    m: usize,
    n: usize,
    bits: u64,
}

impl Tableau {
    pub const MAX_CELLS: usize = 64;

    pub fn empty(m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::invalid("tableau dimensions must be positive"));
        }
        if m * n > Self::MAX_CELLS {
            return Err(Error::invalid(format!(
                "a {m}×{n} tableau exceeds {} cells",
                Self::MAX_CELLS
            )));
        }
        Ok(Self { m, n, bits: 0 })
    }

    /// `{(0,0)}`, the initial state.
    pub fn initial(m: usize, n: usize) -> Result<Self> {
        Ok(Self {
            bits: 1,
            ..Self::empty(m, n)?
        })
    }

    pub fn full(m: usize, n: usize) -> Result<Self> {
        let t = Self::empty(m, n)?;
        Ok(Self {
            bits: t.all_mask(),
            ..t
        })
    }

    pub fn from_cells(
        m: usize,
        n: usize,
        cells: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut t = Self::empty(m, n)?;
        for (i, j) in cells {
            if i >= m || j >= n {
                return Err(Error::invalid(format!(
                    "cell ({i},{j}) outside a {m}×{n} tableau"
                )));
            }
            t.bits |= 1 << (i * n + j);
        }
        Ok(t)
    }

    pub fn from_bits(m: usize, n: usize, bits: u64) -> Result<Self> {
        let t = Self::empty(m, n)?;
        if bits & !t.all_mask() != 0 {
            return Err(Error::invalid("bits outside the tableau"));
        }
        Ok(Self { bits, ..t })
    }

    /// Parses the grid form: `m` lines of `n` characters, `×` (or `x`) marked
    /// and `.` empty.
    pub fn parse_grid(text: &str) -> Result<Self> {
        let rows: Vec<Vec<bool>> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|line| {
                line.chars()
                    .map(|c| match c {
                        '×' | 'x' | 'X' => Ok(true),
                        '.' => Ok(false),
                        other => Err(Error::Parse(format!(
                            "unexpected character {other:?} in tableau"
                        ))),
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parse("tableau rows have different lengths".into()));
        }
        let cells = rows.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, &on)| on)
                .map(move |(j, _)| (i, j))
        });
        Self::from_cells(m, n, cells)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    fn all_mask(&self) -> u64 {
        low_mask(self.m * self.n)
    }

    #[inline]
    pub fn contains(&self, i: usize, j: usize) -> bool {
        i < self.m && j < self.n && self.bits >> (i * self.n + j) & 1 == 1
    }

    pub fn with(mut self, i: usize, j: usize) -> Self {
        assert!(i < self.m && j < self.n, "cell out of range");
        self.bits |= 1 << (i * self.n + j);
        self
    }

    pub fn without(mut self, i: usize, j: usize) -> Self {
        assert!(i < self.m && j < self.n, "cell out of range");
        self.bits &= !(1 << (i * self.n + j));
        self
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_subset(&self, other: &Tableau) -> bool {
        self.bits & !other.bits == 0
    }

    /// Cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        let mut rest = self.bits;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some((b / n, b % n))
        })
    }

    /// Columns marked in row `i`, as a bitmask over `⟦n⟧`.
    pub fn row_support(&self, i: usize) -> u64 {
        (self.bits >> (i * self.n)) & low_mask(self.n)
    }

    /// Rows marked in column `j`, as a bitmask over `⟦m⟧`.
    pub fn col_support(&self, j: usize) -> u64 {
        (0..self.m)
            .filter(|&i| self.contains(i, j))
            .fold(0, |acc, i| acc | 1 << i)
    }

    /// Left domain: the occupied rows.
    pub fn occupied_rows(&self) -> Vec<usize> {
        (0..self.m).filter(|&i| self.row_support(i) != 0).collect()
    }

    /// Right domain: the occupied columns.
    pub fn occupied_cols(&self) -> Vec<usize> {
        (0..self.n).filter(|&j| self.col_support(j) != 0).collect()
    }

    /// At least one mark in row 0 and one in column 0.
    pub fn is_valid(&self) -> bool {
        self.row_support(0) != 0 && self.col_support(0) != 0
    }

    /// The grid form used by the CLI.
    pub fn grid(&self) -> String {
        let mut out = String::with_capacity(self.m * (self.n + 1) * 2);
        for i in 0..self.m {
            for j in 0..self.n {
                out.push(if self.contains(i, j) { '×' } else { '.' });
            }
            out.push('\n');
        }
        out
    }

    /// Every tableau of the given shape, in increasing bit order.
    pub fn all(m: usize, n: usize) -> Result<impl Iterator<Item = Tableau>> {
        let t = Self::empty(m, n)?;
        if m * n >= 40 {
            return Err(Error::invalid(
                "refusing to enumerate more than 2^40 tableaux",
            ));
        }
        Ok((0..=t.all_mask()).map(move |bits| Tableau { bits, ..t }))
    }
}

/// `is_valid_tableau` as a free function.
pub fn is_valid_tableau(t: &Tableau) -> bool {
    t.is_valid()
}

impl fmt::Debug for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tableau{{{}×{}:", self.m, self.n)?;
        for (i, j) in self.cells() {
            write!(f, " ({i},{j})")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.grid())
    }
}

#[derive(Serialize, Deserialize)]
struct TableauJson {
    m: usize,
    n: usize,
    cells: Vec<[usize; 2]>,
}

impl Serialize for Tableau {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TableauJson {
            m: self.m,
            n: self.n,
            cells: self.cells().map(|(i, j)| [i, j]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tableau {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = TableauJson::deserialize(d)?;
        Tableau::from_cells(raw.m, raw.n, raw.cells.into_iter().map(|[i, j]| (i, j)))
            .map_err(serde::de::Error::custom)
    }
}

/// A letter of the monster pair: one transformation per component.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonsterLetter {
    pub left: Transformation,
    pub right: Transformation,
}

impl MonsterLetter {
    pub fn new(left: Transformation, right: Transformation) -> Self {
        Self { left, right }
    }

    pub fn identity(m: usize, n: usize) -> Self {
        Self::new(Transformation::identity(m), Transformation::identity(n))
    }

    /// Opaque letter name used when interning monster letters into a DFA alphabet.
    pub fn name(&self) -> String {
        format!("({},{})", self.left, self.right)
    }

    fn check(&self, m: usize, n: usize) -> Result<()> {
        if self.left.size() != m {
            return Err(Error::SizeMismatch {
                expected: m,
                found: self.left.size(),
            });
        }
        if self.right.size() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                found: self.right.size(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for MonsterLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A letter restricted to the occupied rows and columns of the tableau it is
/// read from; `None` marks a point outside the domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UsefulLetter {
    pub left: Vec<Option<usize>>,
    pub right: Vec<Option<usize>>,
}

pub fn useful_restriction(t: &Tableau, letter: &MonsterLetter) -> Result<UsefulLetter> {
    letter.check(t.m, t.n)?;
    let rows = t.occupied_rows();
    let cols = t.occupied_cols();
    Ok(UsefulLetter {
        left: (0..t.m)
            .map(|i| rows.contains(&i).then(|| letter.left.apply(i)))
            .collect(),
        right: (0..t.n)
            .map(|j| cols.contains(&j).then(|| letter.right.apply(j)))
            .collect(),
    })
}

/// The image of `t` under the shuffle modifier's transition for `letter`.
pub fn tableau_step(t: &Tableau, letter: &MonsterLetter) -> Result<Tableau> {
    letter.check(t.m, t.n)?;
    let bits = row_image(t.bits, t.m, t.n, |i| letter.left.apply(i))
        | col_image(t.bits, t.m, t.n, |j| letter.right.apply(j));
    Ok(Tableau { bits, ..*t })
}

/// `{(f(i), j) | (i, j) ∈ E}` on the bit encoding.
#[inline]
pub(crate) fn row_image(bits: u64, m: usize, n: usize, f: impl Fn(usize) -> usize) -> u64 {
    let row_mask = low_mask(n);
    let mut out = 0;
    for i in 0..m {
        let row = (bits >> (i * n)) & row_mask;
        if row != 0 {
            out |= row << (f(i) * n);
        }
    }
    out
}

/// `{(i, g(j)) | (i, j) ∈ E}` on the bit encoding.
#[inline]
pub(crate) fn col_image(bits: u64, m: usize, n: usize, g: impl Fn(usize) -> usize) -> u64 {
    let col_mask = column_mask(m, n);
    let mut out = 0;
    for j in 0..n {
        let col = bits & (col_mask << j);
        if col != 0 {
            let to = g(j);
            out |= if to >= j {
                col << (to - j)
            } else {
                col >> (j - to)
            };
        }
    }
    out
}

/// The `k` lowest bits, `1 ≤ k ≤ 64`.
#[inline]
pub(crate) fn low_mask(k: usize) -> u64 {
    u64::MAX >> (64 - k)
}

#[inline]
pub(crate) fn column_mask(m: usize, n: usize) -> u64 {
    (0..m).fold(0, |acc, i| acc | 1 << (i * n))
}

/// `f(m,n) = 2^{mn−1} + 2^{(m−1)(n−1)}(2^{m−1}−1)(2^{n−1}−1)`, the number of
/// valid `m×n` tableaux.
pub fn f_bound(m: usize, n: usize) -> Result<BigUint> {
    if m == 0 || n == 0 {
        return Err(Error::invalid("f(m,n) needs m, n ≥ 1"));
    }
    let pow2 = |e: usize| BigUint::one() << e;
    Ok(pow2(m * n - 1) + pow2((m - 1) * (n - 1)) * (pow2(m - 1) - 1u32) * (pow2(n - 1) - 1u32))
}

/// The letters `a`, `b`, `c` used to separate valid states:
/// `a = ((0,…,m−1), id)`, `b = (id, (0,…,n−1))` and
/// `c = (α ↦ δ_{0,α}, constant n−1)`.
///
/// The right component of `c` is read as the constant map onto `n−1`; see
/// [`C_INTERPRETATION`].
pub fn distinguishing_letters(m: usize, n: usize) -> Result<[MonsterLetter; 3]> {
    if m < 2 || n < 2 {
        return Err(Error::invalid("distinguishing letters need m, n ≥ 2"));
    }
    let rows: Vec<usize> = (0..m).collect();
    let cols: Vec<usize> = (0..n).collect();
    let a = MonsterLetter::new(
        Transformation::from_cycles(m, &[&rows])?,
        Transformation::identity(n),
    );
    let b = MonsterLetter::new(
        Transformation::identity(m),
        Transformation::from_cycles(n, &[&cols])?,
    );
    let kronecker = Transformation::new((0..m).map(|alpha| usize::from(alpha == 0)).collect())?;
    let c = MonsterLetter::new(kronecker, Transformation::constant(n, n - 1)?);
    Ok([a, b, c])
}
