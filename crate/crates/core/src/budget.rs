//! Enumeration guards shared by the exact routines.

/// Name of the environment variable that overrides the enumeration limits.
pub const BUDGET_ENV: &str = "ZELIST_BUDGET";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budget {
    /// Tuples visited by naive functional evaluation.
    pub enumeration: u128,
    /// Output alphabet size allowed for inclusion-exclusion.
    pub ix_outputs: usize,
    /// Codebooks visited by exact enumeration.
    pub codebooks: u128,
    /// Output words tabulated when building a list decoder.
    pub decoder_outputs: u128,
    /// Subset checks per Monte Carlo trial.
    pub subsets_per_trial: u128,
    /// Cell updates in the occupancy dynamic program.
    pub dp_cells: u128,
    /// Vertex cap for the multipartite union-find pass.
    pub multipartite_vertices: usize,
    /// Vertex cap for the hypergraph-to-channel construction.
    pub channel_vertices: usize,
    /// Vertex cap for clique search.
    pub clique_vertices: usize,
    /// Vertex cap for maximal independent set enumeration.
    pub mis_vertices: usize,
    /// Maximum number of maximal independent sets returned.
    pub mis_output: usize,
    /// Deterministic assignments visited by the exhaustive order-2 oracle.
    pub assignments: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            enumeration: 100_000_000,
            ix_outputs: 24,
            codebooks: 10_000_000,
            decoder_outputs: 1_000_000,
            subsets_per_trial: 1_000_000,
            dp_cells: 1_000_000_000,
            multipartite_vertices: 1 << 16,
            channel_vertices: 20,
            clique_vertices: 64,
            mis_vertices: 32,
            mis_output: 1_000_000,
            assignments: 10_000_000,
        }
    }
}

impl Budget {
    /// Defaults, with every enumeration count replaced by `ZELIST_BUDGET`
    /// when it is set to a positive integer.
    pub fn from_env() -> crate::Result<Self> {
        let mut budget = Budget::default();
        if let Ok(raw) = std::env::var(BUDGET_ENV) {
            let value: u128 = raw.trim().parse().map_err(|_| {
                crate::Error::Parse(format!("{BUDGET_ENV}={raw:?} is not a positive integer"))
            })?;
            budget = budget.with_enumeration_limit(value);
        }
        Ok(budget)
    }

    pub fn with_enumeration_limit(mut self, value: u128) -> Self {
        self.enumeration = value;
        self.codebooks = value;
        self.decoder_outputs = value;
        self.subsets_per_trial = value;
        self.dp_cells = value;
        self.assignments = value;
        self
    }

    pub(crate) fn check(&self, what: &'static str, needed: u128, limit: u128) -> crate::Result<()> {
        if needed > limit {
            Err(crate::Error::guard(what, needed, limit))
        } else {
            Ok(())
        }
    }
}

/// `base^exp` as u128, `None` on overflow.
pub(crate) fn checked_pow(base: u128, exp: u32) -> Option<u128> {
    base.checked_pow(exp)
}
