//! Size caps for enumeration-dependent operations.

/// Hard upper bound on the order of any constructed table. Nothing in the
/// crate allocates a table past this.
pub const HARD_MAX_ORDER: usize = 4096;

/// Caps for the operations whose cost is super-linear in the group order.
/// Everything is configurable downward from [`HARD_MAX_ORDER`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest group a table may be built for.
    pub max_order: usize,
    /// Largest group full subgroup-lattice enumeration will run on.
    pub enum_order: usize,
    /// Largest group the quadratic non-commuting-pair scans will run on.
    pub pair_order: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_order: HARD_MAX_ORDER,
            enum_order: 256,
            pair_order: 2048,
        }
    }
}

impl Caps {
    /// Default caps, with `max_order` taken from the `SELFCENT_MAX_ORDER`
    /// environment variable when set (clamped to the hard maximum).
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        if let Ok(v) = std::env::var("SELFCENT_MAX_ORDER") {
            if let Ok(n) = v.trim().parse::<usize>() {
                caps.max_order = n.min(HARD_MAX_ORDER);
            }
        }
        caps
    }

    pub fn clamped(mut self) -> Self {
        self.max_order = self.max_order.min(HARD_MAX_ORDER);
        self.enum_order = self.enum_order.min(HARD_MAX_ORDER);
        self.pair_order = self.pair_order.min(HARD_MAX_ORDER);
        self
    }
}
