//! Alternating-projection numerics around the decomposable form
//! `W = P + Q^{T_B}`.
//!
//! Both routines produce evidence, never proofs: a decomposition residual
//! near zero suggests decomposability, a stalled residual only reports that
//! none was found. A certified violation report, in contrast, carries a PPT
//! state that can be re-checked exactly.

mod decompose;
mod detection;
mod search;

pub use decompose::{decompose_witness, DecompositionReport, DecompositionStatus};
pub use detection::{apply_on_b, verify_detection};
pub use search::{ppt_violation_search, SearchParams, ViolationSearchReport};

use crate::linalg::{jacobi, Operator};

/// Frobenius projection onto the PSD cone of the Hermitian part of `x`.
pub(crate) fn project_psd(x: &Operator) -> Operator {
    jacobi(&x.hermitian_part()).reconstruct_with(|v| v.max(0.0))
}

pub(crate) fn min_eig(x: &Operator) -> f64 {
    jacobi(&x.hermitian_part()).min()
}
