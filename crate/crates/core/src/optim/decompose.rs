use serde::{Deserialize, Serialize};

use super::{min_eig, project_psd};
use crate::error::{Error, Result};
use crate::linalg::{partial_transpose, Operator};
use crate::maps::Witness;

/// Window and relative threshold of the stall test.
const STALL_WINDOW: usize = 100;
const STALL_RELATIVE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DecompositionStatus {
    /// Residual fell below the requested tolerance.
    Converged,
    /// No decomposition found (numerical): the residual stopped improving.
    Stalled,
    /// Iteration budget exhausted while still improving.
    MaxIterations,
}

/// Best `P, Q ≥ 0` found for `W ≈ P + Q^{T_B}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub witness: Witness,
    pub p: Operator,
    pub q: Operator,
    /// `‖W − P − Q^{T_B}‖_F`
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
    pub status: DecompositionStatus,
    pub residual_history: Vec<f64>,
}

impl DecompositionReport {
    pub fn recompute_residual(&self) -> Result<f64> {
        let q_tb = partial_transpose(&self.q, self.witness.shape())?;
        Ok((&(self.witness.op() - &self.p) - &q_tb).frobenius_norm())
    }

    /// Re-checks positivity of `P`, `Q` and the stored residual.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(format!("decomposition: {msg}")));
        let n = self.witness.op().dim();
        if self.p.dim() != n || self.q.dim() != n {
            return bad("P or Q has the wrong dimension".into());
        }
        for (name, x) in [("P", &self.p), ("Q", &self.q)] {
            let m = min_eig(x);
            if m < -1e-9 {
                return bad(format!("{name} has eigenvalue {m:e}"));
            }
        }
        let r = self.recompute_residual()?;
        if (r - self.residual).abs() > 1e-12 * r.max(1.0) {
            return bad(format!("stored residual {} but recomputed {r}", self.residual));
        }
        if self.converged != (self.status == DecompositionStatus::Converged) {
            return bad("converged flag disagrees with status".into());
        }
        Ok(())
    }
}

/// Block-coordinate descent on `‖W − P − Q^{T_B}‖_F` over PSD `P, Q`.
///
/// Each half-step is the exact minimiser over one block (`T_B` is a
/// Frobenius isometry), so the residual never increases. Starts from `Q = 0`
/// and stops once the residual is below `tol`, after `max_iter` iterations,
/// or when the residual changed by less than a relative `1e-10` over the last
/// hundred iterations.
pub fn decompose_witness(w: &Witness, max_iter: usize, tol: f64) -> Result<DecompositionReport> {
    if max_iter == 0 {
        return Err(Error::InvalidParameter("max_iter must be positive".into()));
    }
    let shape = w.shape();
    let op = w.op();
    let mut q = Operator::zeros(op.dim());
    let mut p = Operator::zeros(op.dim());
    let mut history = Vec::new();
    let mut status = DecompositionStatus::MaxIterations;

    for it in 0..max_iter {
        p = project_psd(&(op - &partial_transpose(&q, shape)?));
        q = project_psd(&partial_transpose(&(op - &p), shape)?);
        let residual = (&(op - &p) - &partial_transpose(&q, shape)?).frobenius_norm();
        history.push(residual);
        if residual < tol {
            status = DecompositionStatus::Converged;
            break;
        }
        if it >= STALL_WINDOW {
            let before = history[it - STALL_WINDOW];
            if before - residual < STALL_RELATIVE * before {
                status = DecompositionStatus::Stalled;
                break;
            }
        }
    }

    Ok(DecompositionReport {
        witness: w.clone(),
        p,
        q,
        residual: *history.last().expect("at least one iteration"),
        iterations: history.len(),
        converged: status == DecompositionStatus::Converged,
        status,
        residual_history: history,
    })
}
