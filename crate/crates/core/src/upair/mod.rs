//! Vectors of sets encoding useful paths.
//!
//! A path of length `k` from `{(0,0)}` is encoded by a pair `(Λ, P)` of
//! vectors of pairwise-disjoint sets whose unions are both `{1,…,2^k}`. The
//! step `(f, g)` sends `(Λ, P)` to `((Λ·f) ∪ Λ^↑, P ∪ (P·g)^↑)`, and the tableau
//! reached is `𝔰(Λ, P) = {(i, j) | λ_i ∩ ρ_j ≠ ∅}`.

mod dense;
mod graded;
mod pair;
mod witness;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use dense::{enumerate_dense, is_dense};
pub use graded::{generate_graded, Side};
pub use pair::{p_of_path, pair_of_settableau, settableau_of_pair, unfold_path, SetTableau, UPair};
pub use witness::{erase_cell_letter, reduction_from_full, witness_full, witness_permutation};

use crate::automata::Transformation;
use crate::error::{Error, Result};

/// An ordered list of finite sets of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SetVector {
    parts: Vec<BTreeSet<BigUint>>,
}

impl SetVector {
    pub fn new(parts: Vec<BTreeSet<BigUint>>) -> Self {
        Self { parts }
    }

    /// Builds a vector from small integers, e.g. `from_u64(&[&[1, 4], &[2]])`.
    pub fn from_u64(parts: &[&[u64]]) -> Self {
        Self::new(
            parts
                .iter()
                .map(|p| p.iter().map(|&x| BigUint::from(x)).collect())
                .collect(),
        )
    }

    /// `[{1}, ∅, …, ∅]` of length `len`, the grade-0 vector.
    pub fn base(len: usize) -> Self {
        let mut parts = vec![BTreeSet::new(); len];
        if let Some(first) = parts.first_mut() {
            first.insert(BigUint::one());
        }
        Self { parts }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> &[BTreeSet<BigUint>] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> &BTreeSet<BigUint> {
        &self.parts[i]
    }

    pub fn into_parts(self) -> Vec<BTreeSet<BigUint>> {
        self.parts
    }

    /// Number of nonempty parts.
    pub fn support(&self) -> usize {
        self.parts.iter().filter(|p| !p.is_empty()).count()
    }

    /// Index of the part holding `x`.
    pub fn position(&self, x: &BigUint) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(x))
    }

    pub fn max_element(&self) -> Option<&BigUint> {
        self.parts.iter().filter_map(|p| p.last()).max()
    }

    /// `k` when the parts are pairwise disjoint with union exactly `{1,…,2^k}`.
    pub fn grade(&self) -> Option<u32> {
        let total: usize = self.parts.iter().map(BTreeSet::len).sum();
        if total == 0 || !total.is_power_of_two() {
            return None;
        }
        self.dense_index(total)?;
        Some(total.trailing_zeros())
    }

    /// Maps each element `x ∈ {1,…,size}` to its part, or `None` if the parts
    /// are not a partition of `{1,…,size}`.
    fn dense_index(&self, size: usize) -> Option<Vec<usize>> {
        let mut owner = vec![usize::MAX; size + 1];
        let mut seen = 0;
        for (q, part) in self.parts.iter().enumerate() {
            for x in part {
                let x = x.to_usize().filter(|&x| 1 <= x && x <= size)?;
                if owner[x] != usize::MAX {
                    return None;
                }
                owner[x] = q;
                seen += 1;
            }
        }
        (seen == size).then_some(owner)
    }

    /// `[π_0,…]·h`: entry `j` is the union of the parts `π_q` with `h(q) = j`.
    pub fn act(&self, h: &Transformation) -> Result<Self> {
        if h.size() != self.len() {
            return Err(Error::SizeMismatch {
                expected: self.len(),
                found: h.size(),
            });
        }
        let mut parts = vec![BTreeSet::new(); self.len()];
        for (q, part) in self.parts.iter().enumerate() {
            parts[h.apply(q)].extend(part.iter().cloned());
        }
        Ok(Self { parts })
    }

    /// Every element increased by the largest element of the union.
    pub fn shift_up(&self) -> Result<Self> {
        let r = self
            .max_element()
            .cloned()
            .ok_or_else(|| Error::invalid("cannot shift an all-empty vector"))?;
        Ok(self.shifted_by(&r))
    }

    fn shifted_by(&self, r: &BigUint) -> Self {
        Self {
            parts: self
                .parts
                .iter()
                .map(|p| p.iter().map(|x| x + r).collect())
                .collect(),
        }
    }

    /// Entrywise union.
    pub fn union_vec(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(Self {
            parts: self
                .parts
                .iter()
                .zip(&other.parts)
                .map(|(a, b)| a.union(b).cloned().collect())
                .collect(),
        })
    }

    /// `P ∪ (P·g)^↑` for a right vector.
    pub fn succ_right(&self, g: &Transformation) -> Result<Self> {
        let k = self
            .grade()
            .filter(|&k| self.is_rvalid(k))
            .ok_or_else(|| Error::invalid(format!("{self} is not a right-valid vector")))?;
        self.succ_right_unchecked(g, k)
    }

    /// `(Λ·f) ∪ Λ^↑` for a left vector.
    pub fn succ_left(&self, f: &Transformation) -> Result<Self> {
        let k = self
            .grade()
            .filter(|&k| self.is_lvalid(k))
            .ok_or_else(|| Error::invalid(format!("{self} is not a left-valid vector")))?;
        self.succ_left_unchecked(f, k)
    }

    pub(crate) fn succ_right_unchecked(&self, g: &Transformation, k: u32) -> Result<Self> {
        self.union_vec(&self.act(g)?.shifted_by(&(BigUint::one() << k)))
    }

    pub(crate) fn succ_left_unchecked(&self, f: &Transformation, k: u32) -> Result<Self> {
        self.act(f)?
            .union_vec(&self.shifted_by(&(BigUint::one() << k)))
    }

    /// `1 ∈ ρ_0`, the parts partition `{1,…,2^k}`, and for every `k′ < k` the
    /// elements `≤ 2^{k′}` sharing a part are sent by `+2^{k′}` into a common part.
    pub fn is_rvalid(&self, k: u32) -> bool {
        let Some(size) = 1usize.checked_shl(k).filter(|_| k < usize::BITS) else {
            return false;
        };
        let Some(owner) = self.dense_index(size) else {
            return false;
        };
        if self.parts.is_empty() || owner[1] != 0 {
            return false;
        }
        for kp in 0..k {
            let half = 1usize << kp;
            // part of x + 2^{k′}, keyed by the part of x
            let mut image: HashMap<usize, usize> = HashMap::new();
            for x in 1..=half {
                let target = owner[x + half];
                if *image.entry(owner[x]).or_insert(target) != target {
                    return false;
                }
            }
        }
        true
    }

    /// Right validity of the mirror image.
    pub fn is_lvalid(&self, k: u32) -> bool {
        self.mirror(k).is_ok_and(|v| v.is_rvalid(k))
    }

    /// Replaces each element `i` by `2^k + 1 − i`.
    pub fn mirror(&self, k: u32) -> Result<Self> {
        let top = (BigUint::one() << k) + 1u32;
        let parts = self
            .parts
            .iter()
            .map(|p| {
                p.iter()
                    .map(|x| {
                        if x.is_zero() || *x >= top {
                            Err(Error::invalid(format!("{x} is outside 1..=2^{k}")))
                        } else {
                            Ok(&top - x)
                        }
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        Ok(Self { parts })
    }

    /// The elements `≤ bound` and the others lowered by `bound`.
    pub(crate) fn split_at(&self, bound: &BigUint) -> (Self, Self) {
        let lower = self
            .parts
            .iter()
            .map(|p| p.range(..=bound).cloned().collect())
            .collect();
        let upper = self
            .parts
            .iter()
            .map(|p| p.iter().filter(|x| *x > bound).map(|x| x - bound).collect())
            .collect();
        (Self { parts: lower }, Self { parts: upper })
    }
}

impl fmt::Display for SetVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (q, part) in self.parts.iter().enumerate() {
            if q > 0 {
                f.write_str(",")?;
            }
            f.write_str("{")?;
            for (pos, x) in part.iter().enumerate() {
                if pos > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for SetVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `[{1,4},{2,7},{}]`; `∅` is accepted for an empty part.
impl FromStr for SetVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::Parse(format!(
                "expected a set-vector like [{{1,4}},{{2}}], got {s:?}"
            ))
        };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        let mut parts = Vec::new();
        let mut rest = inner;
        while !rest.is_empty() {
            if let Some(r) = rest.strip_prefix('∅') {
                parts.push(BTreeSet::new());
                rest = r;
            } else {
                let body = rest.strip_prefix('{').ok_or_else(bad)?;
                let close = body.find('}').ok_or_else(bad)?;
                let mut part = BTreeSet::new();
                for item in body[..close].split(',').filter(|x| !x.is_empty()) {
                    let x: BigUint = item.parse().map_err(|_| bad())?;
                    if x.is_zero() || !part.insert(x) {
                        return Err(bad());
                    }
                }
                parts.push(part);
                rest = &body[close + 1..];
            }
            rest = match rest.strip_prefix(',') {
                Some(r) if !r.is_empty() => r,
                Some(_) => return Err(bad()),
                None if rest.is_empty() => rest,
                None => return Err(bad()),
            };
        }
        Ok(Self { parts })
    }
}

/// Elements are written as JSON numbers while they fit in `u64`, as decimal
/// strings beyond.
impl Serialize for SetVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let json: Vec<Vec<serde_json::Value>> = self
            .parts
            .iter()
            .map(|p| {
                p.iter()
                    .map(|x| match x.to_u64() {
                        Some(v) => serde_json::Value::from(v),
                        None => serde_json::Value::from(x.to_string()),
                    })
                    .collect()
            })
            .collect();
        json.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SetVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw: Vec<Vec<serde_json::Value>> = Vec::deserialize(deserializer)?;
        let parts = raw
            .into_iter()
            .map(|p| {
                p.into_iter()
                    .map(|v| match v {
                        serde_json::Value::Number(n) => n
                            .as_u64()
                            .map(BigUint::from)
                            .ok_or_else(|| D::Error::custom("elements are positive integers")),
                        serde_json::Value::String(s) => s.parse().map_err(D::Error::custom),
                        _ => Err(D::Error::custom("elements are positive integers")),
                    })
                    .collect()
            })
            .collect::<std::result::Result<_, _>>()?;
        Ok(Self { parts })
    }
}
