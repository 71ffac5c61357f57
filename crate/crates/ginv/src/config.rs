/// Caps and budgets for the exhaustive algorithms.
///
/// All the algorithms here enumerate honestly; these limits only decide how
/// much work is attempted before giving up with an explicit error, never the
/// correctness of a completed answer.
#[derive(Debug, Clone)]
pub struct EngineConfig {
    /// Hard cap on the number of elements of a generated group.
    pub max_group_order: usize,
    /// Cap on `degree * order`, the number of stored permutation images.
    pub max_storage_cells: usize,
    /// Largest group for which automorphisms are searched without relators.
    pub relation_free_aut_cap: usize,
    /// Node budget for automorphism backtracking searches.
    pub search_budget: u64,
    /// Largest group for which Drinfeld-centre data is materialised.
    pub centre_max_order: usize,
    /// Largest group for which simultaneous-conjugation orbits are computed.
    pub double_class_max_order: usize,
    /// Upper bound for the prime search of the character table algorithm.
    pub prime_search_bound: u64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            max_group_order: 20_000,
            max_storage_cells: 50_000_000,
            relation_free_aut_cap: 2_000,
            search_budget: 10_000_000,
            centre_max_order: 200,
            double_class_max_order: 6_000,
            prime_search_bound: 1 << 26,
        }
    }
}
