use serde::{Deserialize, Serialize};

/// Resource caps shared by the pipeline stages.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest complex (number of subsets) materialised.
    pub max_complex: usize,
    /// Largest number of explored product-expansion states.
    pub max_states: usize,
    /// Largest transition semigroup (number of maps).
    pub max_tsgp: usize,
    /// Largest group order for normal-subgroup enumeration.
    pub max_group: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_complex: 4096,
            max_states: 200_000,
            max_tsgp: 500_000,
            max_group: crate::grp::DEFAULT_GROUP_CAP,
        }
    }
}
