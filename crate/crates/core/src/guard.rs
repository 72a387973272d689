/// Size limits for the exhaustive computations. Every limit can be raised,
/// but only explicitly; the defaults keep each call at desk scale.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Guard {
    /// Largest `m·n` for a full reachability closure or state complexity run.
    pub max_cells: usize,
    /// Largest number of set-vectors kept by a graded enumeration.
    pub max_graded: usize,
    /// Largest number of maps enumerated by the successor-count oracle.
    pub max_oracle_maps: u64,
    /// Largest y-order for the generating-series constructions.
    pub max_series_order: usize,
    /// Largest `n` for the all-permutations witness sweep.
    pub max_permutation_n: usize,
}

impl Default for Guard {
    fn default() -> Self {
        Self {
            max_cells: 12,
            max_graded: 2_000_000,
            max_oracle_maps: 50_000_000,
            max_series_order: 12,
            max_permutation_n: 6,
        }
    }
}

impl Guard {
    /// No limits at all.
    pub fn unlimited() -> Self {
        Self {
            max_cells: 64,
            max_graded: usize::MAX,
            max_oracle_maps: u64::MAX,
            max_series_order: usize::MAX,
            max_permutation_n: usize::MAX,
        }
    }

    pub(crate) fn check(
        &self,
        what: &'static str,
        requested: u128,
        limit: u128,
    ) -> crate::Result<()> {
        if requested > limit {
            Err(crate::Error::GuardExceeded {
                what,
                requested,
                limit,
            })
        } else {
            Ok(())
        }
    }
}
