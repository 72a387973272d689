//! Computational checks of the two reachability conjectures and of the
//! witness families, reported as deterministic, serializable records.
//!
//! Conjecture 1 says the reachable tableaux are exactly the valid ones (a mark
//! in row 0 and one in column 0). Conjecture 2 says every dense tableau is
//! reachable. Both are checked through the breadth-first closure.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::automata::Transformation;
use crate::error::{Error, Result};
use crate::guard::Guard;
use crate::monster::{f_bound, reachable_tableaux, tableau_step, Reachability, Tableau};
use crate::upair::{enumerate_dense, unfold_path, witness_full, witness_permutation, UPair};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Holds,
    Fails,
    /// A depth limit stopped the search before the closure.
    Incomplete,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Conjecture {
    /// Reachable tableaux are exactly the valid ones.
    #[serde(rename = "valid-reachable")]
    ValidReachable,
    /// Every dense tableau is reachable.
    #[serde(rename = "dense-reachable")]
    DenseReachable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub conjecture: Conjecture,
    pub m: usize,
    pub n: usize,
    pub reachable_count: u64,
    /// `f(m, n)`, the number of valid tableaux.
    pub valid_count: u128,
    /// Valid tableaux that were not reached.
    pub missing: Vec<Tableau>,
    /// Reached tableaux that are not valid; always empty unless the search is wrong.
    pub invalid_reached: Vec<Tableau>,
    pub dense_count: Option<u64>,
    pub dense_unreached: Vec<Tableau>,
    pub depth_histogram: BTreeMap<u32, u64>,
    pub saturation_depth: u32,
    pub status: Status,
}

/// Conjecture 1 at `(m, n)`: status holds iff `missing` is empty.
pub fn check_conjecture1(m: usize, n: usize, guard: &Guard) -> Result<ConjectureReport> {
    check(Conjecture::ValidReachable, m, n, None, guard)
}

/// Conjecture 2 at `(m, n)`: status holds iff `dense_unreached` is empty.
pub fn check_conjecture2(m: usize, n: usize, guard: &Guard) -> Result<ConjectureReport> {
    check(Conjecture::DenseReachable, m, n, None, guard)
}

/// Either check, optionally stopping the search after `depth_limit` steps. A
/// truncated search can still prove a failure-free prefix but never a hold.
pub fn check(
    conjecture: Conjecture,
    m: usize,
    n: usize,
    depth_limit: Option<u32>,
    guard: &Guard,
) -> Result<ConjectureReport> {
    guard.check(
        "m·n for a conjecture check",
        (m * n) as u128,
        guard.max_cells as u128,
    )?;
    let reach = reachable_tableaux(m, n, depth_limit, guard)?;
    let valid_count: u128 = f_bound(m, n)?
        .try_into()
        .map_err(|_| Error::invalid("f(m, n) exceeds 128 bits"))?;

    let mut missing = Vec::new();
    let mut invalid_reached = Vec::new();
    for t in Tableau::all(m, n)? {
        match (t.is_valid(), reach.contains(&t)) {
            (true, false) => missing.push(t),
            (false, true) => invalid_reached.push(t),
            _ => {}
        }
    }

    let (dense_count, dense_unreached) = match conjecture {
        Conjecture::ValidReachable => (None, Vec::new()),
        Conjecture::DenseReachable => {
            let dense = enumerate_dense(m, n, guard)?;
            let unreached = dense
                .iter()
                .filter(|t| !reach.contains(t))
                .copied()
                .collect();
            (Some(dense.len() as u64), unreached)
        }
    };

    let failures = match conjecture {
        Conjecture::ValidReachable => &missing,
        Conjecture::DenseReachable => &dense_unreached,
    };
    let status = if !invalid_reached.is_empty() {
        Status::Fails
    } else if !reach.is_complete() {
        Status::Incomplete
    } else if failures.is_empty() {
        Status::Holds
    } else {
        Status::Fails
    };

    Ok(ConjectureReport {
        conjecture,
        m,
        n,
        reachable_count: reach.len() as u64,
        valid_count,
        missing,
        invalid_reached,
        dense_count,
        dense_unreached,
        depth_histogram: reach.depth_histogram(),
        saturation_depth: reach.max_depth(),
        status,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessKind {
    Permutation,
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessCheck {
    pub kind: WitnessKind,
    /// The permutation in one-line notation, or `m×n`.
    pub label: String,
    pub target: Tableau,
    pub pair: UPair,
    pub projection_ok: bool,
    pub grade: u32,
    pub expected_grade: u32,
    /// Whether replaying the path encoded by the pair lands on the target.
    pub path_reaches_target: bool,
    /// Least number of steps to the target, when it was determined.
    pub depth: Option<u32>,
    pub expected_depth: Option<u32>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub m: usize,
    pub n: usize,
    pub checks: Vec<WitnessCheck>,
    pub all_pass: bool,
}

/// `⌈log₂ n⌉` when `σ(0) ≠ 0`, `⌈log₂(n+1)⌉` otherwise.
pub fn permutation_depth(sigma: &Transformation) -> u32 {
    let n = sigma.size();
    let bound = if sigma.apply(0) == 0 { n + 1 } else { n };
    bound.next_power_of_two().trailing_zeros()
}

fn replay(pair: &UPair, target: &Tableau) -> Result<bool> {
    let mut t = Tableau::initial(target.rows(), target.cols())?;
    for letter in unfold_path(pair)? {
        t = tableau_step(&t, &letter)?;
    }
    Ok(t == *target)
}

/// Checks every permutation witness of size `n` and the full-tableau witness
/// at `(m, n)`.
///
/// Permutation depths are measured without a full closure: a search limited
/// to `D−1` steps, with `D` the largest predicted depth, gives exact depths
/// below `D`, and a target absent from it but reached by the witness path of
/// length `D` has depth exactly `D`. The 1×1 identity is the initial tableau,
/// so its expected depth is 0 although its witness has grade 1.
pub fn verify_witnesses(m: usize, n: usize, guard: &Guard) -> Result<WitnessReport> {
    if m == 0 || n == 0 {
        return Err(Error::invalid("sizes must be positive"));
    }
    guard.check(
        "n for the permutation sweep",
        n as u128,
        guard.max_permutation_n as u128,
    )?;
    let sigmas: Vec<Transformation> = Transformation::all(n)
        .filter(Transformation::is_permutation)
        .collect();
    let deepest = sigmas.iter().map(permutation_depth).max().expect("n ≥ 1");
    let limit = deepest - 1;
    let reach = reachable_tableaux(n, n, Some(limit), guard)?;

    let mut checks = Vec::with_capacity(sigmas.len() + 1);
    for sigma in &sigmas {
        checks.push(check_permutation(sigma, &reach, limit)?);
    }
    checks.push(check_full(m, n, guard)?);
    let all_pass = checks.iter().all(|c| c.pass);
    Ok(WitnessReport {
        m,
        n,
        checks,
        all_pass,
    })
}

fn check_permutation(
    sigma: &Transformation,
    reach: &Reachability,
    limit: u32,
) -> Result<WitnessCheck> {
    let n = sigma.size();
    let target = Tableau::from_cells(n, n, (0..n).map(|i| (i, sigma.apply(i))))?;
    let pair = witness_permutation(sigma)?;
    let projection_ok = pair.s_projection()? == target;
    let path_reaches_target = replay(&pair, &target)?;
    let expected_grade = permutation_depth(sigma);
    let expected_depth = if target == Tableau::initial(n, n)? {
        0
    } else {
        expected_grade
    };
    let depth = reach.depth_of(&target).or_else(|| {
        (!reach.is_complete() && path_reaches_target && pair.grade() == limit + 1)
            .then_some(limit + 1)
    });
    let pass = projection_ok
        && path_reaches_target
        && pair.grade() == expected_grade
        && depth == Some(expected_depth);
    Ok(WitnessCheck {
        kind: WitnessKind::Permutation,
        label: sigma.to_string(),
        target,
        projection_ok,
        grade: pair.grade(),
        expected_grade,
        path_reaches_target,
        depth,
        expected_depth: Some(expected_depth),
        pass,
        pair,
    })
}

fn check_full(m: usize, n: usize, guard: &Guard) -> Result<WitnessCheck> {
    let target = Tableau::full(m, n)?;
    let pair = witness_full(m, n, guard)?;
    let projection_ok = pair.s_projection()? == target;
    let path_reaches_target = replay(&pair, &target)?;
    let expected_grade = m.next_power_of_two().trailing_zeros() + n as u32 - 1;
    // a shortest path is only known when the closure fits the guard
    let depth = if m * n <= guard.max_cells {
        reachable_tableaux(m, n, None, guard)?.depth_of(&target)
    } else {
        None
    };
    let pass = projection_ok && path_reaches_target && pair.grade() == expected_grade;
    Ok(WitnessCheck {
        kind: WitnessKind::Full,
        label: format!("{m}×{n}"),
        target,
        projection_ok,
        grade: pair.grade(),
        expected_grade,
        path_reaches_target,
        depth,
        expected_depth: None,
        pass,
        pair,
    })
}
