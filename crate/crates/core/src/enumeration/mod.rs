//! Exact counting of right-valid vectors.
//!
//! A vector with `ℓ` nonempty parts has `s_n^{(ℓ,ℓ+δ)}` successors with `ℓ+δ`
//! nonempty parts. These numbers form the upper triangular matrix `S_n`, which
//! factors as the entrywise product of an `n`-free matrix `B` and `A_n`; the
//! first row of `S_n^k` counts the graded component by support size.

mod matrix;
mod series;

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use matrix::ExactMatrix;
pub use series::{series_closed, series_direct, TruncatedSeries};

use crate::automata::Transformation;
use crate::error::{Error, Result};
use crate::guard::Guard;
use crate::upair::SetVector;

pub(crate) fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

fn choose(n: usize, k: usize) -> BigUint {
    if k > n {
        BigUint::zero()
    } else {
        binomial(BigUint::from(n), BigUint::from(k))
    }
}

fn pow(base: usize, exp: usize) -> BigUint {
    BigUint::from(base).pow(exp as u32)
}

/// Stirling number of the second kind `{a atop b}`: partitions of an
/// `a`-set into `b` nonempty blocks.
pub fn stirling2(a: usize, b: usize) -> BigUint {
    // row by row: {a b} = b{a−1 b} + {a−1 b−1}
    let mut row = vec![BigUint::one()];
    for n in 1..=a {
        let mut next = vec![BigUint::zero(); n + 1];
        for k in 1..=n {
            let stay = if k < n { &row[k] * k } else { BigUint::zero() };
            next[k] = stay + &row[k - 1];
        }
        row = next;
    }
    row.get(b).cloned().unwrap_or_default()
}

/// The `r`-Stirling number `{n atop k}_r`: partitions of an `n`-set into `k`
/// blocks with the first `r` elements in distinct blocks.
pub fn r_stirling2(n: usize, k: usize, r: usize) -> BigUint {
    if n < r || k < r || k > n {
        return BigUint::zero();
    }
    // base row n = r is δ_{k,r}; then {n k}_r = k{n−1 k}_r + {n−1 k−1}_r
    let mut row = vec![BigUint::zero(); n + 1];
    row[r] = BigUint::one();
    for m in r + 1..=n {
        let mut next = vec![BigUint::zero(); n + 1];
        for j in r..=m {
            next[j] = &row[j] * j
                + if j > r {
                    row[j - 1].clone()
                } else {
                    BigUint::zero()
                };
        }
        row = next;
    }
    row[k].clone()
}

/// `s_n^{(ℓ,ℓ+δ)} = δ!·C(n−ℓ,δ)·Σ_{α=δ}^{ℓ} C(ℓ,α) ℓ^{ℓ−α} {α atop δ}`.
pub fn succ_count(n: usize, l: usize, delta: usize) -> BigUint {
    if l == 0 || l > n || l + delta > n || delta > l {
        return BigUint::zero();
    }
    let sum: BigUint = (delta..=l)
        .map(|alpha| choose(l, alpha) * pow(l, l - alpha) * stirling2(alpha, delta))
        .sum();
    factorial(delta) * choose(n - l, delta) * sum
}

/// `[{1},…,{ℓ−1},{ℓ,…,2^k}, ∅, …]` of length `n`, with `k` least such that
/// `2^k ≥ ℓ`: a right-valid vector with exactly `ℓ` nonempty parts.
pub fn canonical_vector(n: usize, l: usize) -> Result<SetVector> {
    if l == 0 || l > n {
        return Err(Error::invalid(format!("need 1 ≤ ℓ ≤ n, got ℓ={l}, n={n}")));
    }
    let top = l.next_power_of_two() as u64;
    let l = l as u64;
    let mut parts: Vec<Vec<u64>> = (1..l).map(|x| vec![x]).collect();
    parts.push((l..=top).collect());
    parts.resize(n, Vec::new());
    let refs: Vec<&[u64]> = parts.iter().map(Vec::as_slice).collect();
    Ok(SetVector::from_u64(&refs))
}

/// Every successor `P ∪ (P·g)^↑` of a right-valid `P`, enumerating `g` on the
/// nonempty parts only.
pub fn successor_vectors(p: &SetVector, guard: &Guard) -> Result<BTreeSet<SetVector>> {
    let k = p
        .grade()
        .filter(|&k| p.is_rvalid(k))
        .ok_or_else(|| Error::invalid(format!("{p} is not right-valid")))?;
    let n = p.len();
    let support: Vec<usize> = (0..n).filter(|&i| !p.part(i).is_empty()).collect();
    let maps = (n as u128)
        .checked_pow(support.len() as u32)
        .unwrap_or(u128::MAX);
    guard.check(
        "maps enumerated by the oracle",
        maps,
        guard.max_oracle_maps as u128,
    )?;

    let mut out = BTreeSet::new();
    let mut images: Vec<usize> = (0..n).collect();
    for code in 0..maps {
        let mut rest = code;
        for &i in support.iter().rev() {
            images[i] = (rest % n as u128) as usize;
            rest /= n as u128;
        }
        out.insert(p.succ_right_unchecked(&Transformation::new(images.clone())?, k)?);
    }
    Ok(out)
}

/// Brute-force `s_n^{(ℓ,ℓ+δ)}`: the successors of [`canonical_vector`] with
/// `ℓ+δ` nonempty parts.
pub fn succ_count_oracle(n: usize, l: usize, delta: usize, guard: &Guard) -> Result<BigUint> {
    Ok(succ_oracle_vectors(n, l, delta, guard)?.len().into())
}

/// The successors counted by [`succ_count_oracle`].
pub fn succ_oracle_vectors(
    n: usize,
    l: usize,
    delta: usize,
    guard: &Guard,
) -> Result<Vec<SetVector>> {
    let p = canonical_vector(n, l)?;
    Ok(successor_vectors(&p, guard)?
        .into_iter()
        .filter(|v| v.support() == l + delta)
        .collect())
}

/// `S_n = (s_n^{(i,j)})` for `1 ≤ i, j ≤ n`, from the closed formula.
pub fn matrix_s(n: usize) -> ExactMatrix {
    ExactMatrix::from_fn(n, n, |i, j| {
        if j < i {
            BigInt::zero()
        } else {
            succ_count(n, i + 1, j - i).into()
        }
    })
}

/// `B_{i,j} = Σ_{k=j−i}^{i} C(i,k) i^{i−k} {k atop j−i}`, the first `d` rows
/// and columns (1-based `i`, `j`).
pub fn matrix_b(d: usize) -> ExactMatrix {
    ExactMatrix::from_fn(d, d, |i0, j0| {
        let (i, j) = (i0 + 1, j0 + 1);
        if j < i {
            return BigInt::zero();
        }
        let delta = j - i;
        (delta..=i)
            .map(|k| choose(i, k) * pow(i, i - k) * stirling2(k, delta))
            .sum::<BigUint>()
            .into()
    })
}

/// `A_n(i,j) = (j−i)!·C(n−i, j−i)`, zero when `j < i` or `j > n`.
pub fn matrix_a(n: usize, d: usize) -> ExactMatrix {
    ExactMatrix::from_fn(d, d, |i0, j0| {
        let (i, j) = (i0 + 1, j0 + 1);
        if j < i || j > n {
            BigInt::zero()
        } else {
            (factorial(j - i) * choose(n - i, j - i)).into()
        }
    })
}

/// `#R^{(k)}_{n,ℓ}`, entry `(1, ℓ)` of `S_n^k`.
pub fn graded_count(n: usize, k: usize, l: usize) -> Result<BigUint> {
    if l == 0 || l > n {
        return Ok(BigUint::zero());
    }
    Ok(first_row_of_power(n, k)?[l - 1].clone())
}

/// First row of `S_n^k`, computed by `k` vector–matrix products.
pub fn first_row_of_power(n: usize, k: usize) -> Result<Vec<BigUint>> {
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    let s = matrix_s(n);
    let mut row: Vec<BigInt> = (0..n).map(|j| BigInt::from(u8::from(j == 0))).collect();
    for _ in 0..k {
        row = (0..n)
            .map(|j| (0..=j).map(|i| &row[i] * s.get(i, j)).sum())
            .collect();
    }
    Ok(row
        .into_iter()
        .map(|x| x.to_biguint().expect("counts are nonnegative"))
        .collect())
}

/// `#R^{(k)}_n`, the sum of the first row of `S_n^k`.
pub fn r_total(n: usize, k: usize) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    first_row_of_power(n, k)
        .expect("n is positive")
        .into_iter()
        .sum()
}

/// `#U^{(k)}_{m,n} = #L^{(k)}_m · #R^{(k)}_n`.
pub fn u_total(m: usize, n: usize, k: usize) -> BigUint {
    r_total(m, k) * r_total(n, k)
}

/// The rationals `a_i^{(n)}` with `#R^{(k)}_n = Σ_i a_i^{(n)} (i^i)^k`, solved
/// exactly from `k = 0, …, n−1`.
pub fn closed_form_coeffs(n: usize) -> Result<Vec<BigRational>> {
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    let bases: Vec<BigRational> = (1..=n)
        .map(|i| BigRational::from(BigInt::from(pow(i, i))))
        .collect();
    let mut system: Vec<Vec<BigRational>> = (0..n)
        .map(|k| {
            let mut row: Vec<BigRational> = bases
                .iter()
                .map(|b| num_traits::pow(b.clone(), k))
                .collect();
            row.push(BigRational::from(BigInt::from(r_total(n, k))));
            row
        })
        .collect();
    solve(&mut system)
}

/// Gauss–Jordan elimination on an augmented `n×(n+1)` system.
fn solve(system: &mut [Vec<BigRational>]) -> Result<Vec<BigRational>> {
    let n = system.len();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !system[r][col].is_zero())
            .ok_or_else(|| Error::invalid("singular system"))?;
        system.swap(col, pivot);
        let lead = system[col][col].clone();
        for x in system[col].iter_mut() {
            *x /= &lead;
        }
        let pivot_row = system[col].clone();
        for (r, row) in system.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let factor = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &factor * p;
                }
            }
        }
    }
    Ok(system.iter().map(|row| row[n].clone()).collect())
}

/// `Σ_i a_i (i^i)^k` for the given coefficients.
pub fn evaluate_closed_form(coeffs: &[BigRational], k: usize) -> BigRational {
    coeffs
        .iter()
        .enumerate()
        .map(|(i, a)| a * BigRational::from(BigInt::from(pow(i + 1, i + 1).pow(k as u32))))
        .sum()
}

/// `Σ_{k=1}^{m} Σ_{ℓ=1}^{n} (−1)^{k+ℓ} C(m,k) C(n,ℓ) 2^{(m−k)(n−ℓ)}`, the number
/// of tableaux containing a full row and a full column.
pub fn lower_bound_ie(m: usize, n: usize) -> Result<BigUint> {
    if m == 0 || n == 0 {
        return Err(Error::invalid("m and n must be positive"));
    }
    let mut total = BigInt::zero();
    for k in 1..=m {
        for l in 1..=n {
            let term =
                BigInt::from(choose(m, k) * choose(n, l) * (BigUint::one() << ((m - k) * (n - l))));
            if (k + l) % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
    }
    debug_assert!(!total.is_negative());
    Ok(total.to_biguint().expect("the sum counts tableaux"))
}
