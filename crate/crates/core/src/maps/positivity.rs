use rayon::prelude::*;

use super::kraus::KrausPairMap;
use crate::error::Result;
use crate::linalg::{min_eigenvalue, Operator};
use crate::random::{haar_pure_state, substream};

/// Minimum eigenvalue of `Λ(|ψ⟩⟨ψ|)` over `samples` Haar-random pure states.
/// Each sample draws from its own substream, so the result does not depend
/// on thread scheduling.
pub fn min_output_eigenvalue(m: &KrausPairMap, samples: usize, seed: u64) -> Result<f64> {
    (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = substream(seed, i as u64);
            let psi = haar_pure_state(&mut rng, m.dim_in());
            min_eigenvalue(&m.apply(&Operator::projector(&psi))?)
        })
        .try_reduce(|| f64::INFINITY, |a, b| Ok(a.min(b)))
}
