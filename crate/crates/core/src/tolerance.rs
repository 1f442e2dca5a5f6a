use serde::{Deserialize, Serialize};

/// Numerical thresholds shared by every module.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Maximum `|A - A†|` entry accepted as Hermitian.
    pub hermiticity: f64,
    /// Eigenvalues above `-psd_cutoff` count as nonnegative.
    pub psd_cutoff: f64,
    /// Generic entrywise equality.
    pub equality: f64,
    /// Finder returns nothing when the best candidate expectation is at most this.
    pub finder_epsilon: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            hermiticity: 1e-10,
            psd_cutoff: 1e-9,
            equality: 1e-9,
            finder_epsilon: 1e-12,
        }
    }
}
