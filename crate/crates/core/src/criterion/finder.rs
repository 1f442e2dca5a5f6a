use serde::{Deserialize, Serialize};

use super::subspace::{FamilyTag, MapSubspace};
use crate::error::{Error, Result};
use crate::linalg::{check_dim, hermitian_eig, partial_transpose, KetVector, Operator};
use crate::tolerance::ToleranceConfig;

/// A ket in `𝒲(𝒱)⊥` with `⟨ψ|Q^{T_B}|ψ⟩ = value`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PositiveExpectation {
    pub ket: KetVector,
    pub value: f64,
    /// Position of the winning candidate in [`MapSubspace::candidates`].
    pub candidate: usize,
}

/// Evaluates `⟨ψ|Q^{T_B}|ψ⟩` on every candidate ket of the family and
/// returns the maximiser, or `None` when the maximum does not exceed
/// `tol.finder_epsilon`.
///
/// The candidate lists are the exhaustive versions of the case splits in the
/// analytic arguments: instead of branching on exact zeros, all branches are
/// evaluated. For the antisymmetric family a maximum `ε` forces every
/// diagonal entry of `Q` below `4ε`, so the returned value is at least
/// `Tr(Q)/(2d² - d)`.
pub fn find_positive_expectation(
    sub: &MapSubspace,
    q: &Operator,
    tol: &ToleranceConfig,
) -> Result<Option<PositiveExpectation>> {
    if sub.family_tag == FamilyTag::Generic {
        return Err(Error::GenericFamily);
    }
    check_dim(sub.ambient_dim(), q.dim())?;
    let min_eigenvalue = hermitian_eig(q)?.min();
    if min_eigenvalue < -tol.psd_cutoff * q.max_abs().max(1.0) {
        return Err(Error::NotPositive { min_eigenvalue });
    }
    let q_tb = partial_transpose(q, sub.shape())?;
    let best = sub
        .candidates()
        .into_iter()
        .enumerate()
        .map(|(i, ket)| {
            let value = q_tb.expectation(&ket).re;
            PositiveExpectation {
                ket,
                value,
                candidate: i,
            }
        })
        .max_by(|a, b| a.value.total_cmp(&b.value).then(b.candidate.cmp(&a.candidate)));
    Ok(best.filter(|b| b.value > tol.finder_epsilon))
}
