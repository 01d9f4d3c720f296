//! Resource budgets shared by the engines.

use serde::{Deserialize, Serialize};

use crate::sieve::DEFAULT_MAX_N;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest summation bound `N`.
    pub max_n: u64,
    /// Largest `A(r)` used as a vector length (histograms, cylinder functions).
    pub max_modulus: u64,
    /// Largest number of characters enumerated per level.
    pub max_characters: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_n: DEFAULT_MAX_N, max_modulus: 1 << 20, max_characters: 1 << 16 }
    }
}
