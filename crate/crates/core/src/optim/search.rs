use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{min_eig, project_psd};
use crate::error::{Error, Result};
use crate::linalg::{partial_transpose, BipartiteShape, Operator};
use crate::maps::Witness;
use crate::random::{random_psd, substream};

/// Exact membership tolerance for a certified state.
const MEMBERSHIP_TOL: f64 = 1e-9;
/// A step is abandoned once it has been halved below this fraction of the
/// initial step.
const MIN_STEP_FRACTION: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchParams {
    pub restarts: usize,
    pub max_iter: usize,
    /// Gradient step; `None` uses `1/‖W‖_F`.
    pub step: Option<f64>,
    pub dykstra_cycles: usize,
    pub seed: u64,
    /// A certified report needs `Tr(Wρ) < −tol`.
    pub tol: f64,
}

impl Default for SearchParams {
    fn default() -> Self {
        Self {
            restarts: 4,
            max_iter: 300,
            step: None,
            dykstra_cycles: 20,
            seed: 0,
            tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViolationSearchReport {
    pub witness: Witness,
    pub state: Operator,
    /// `Tr(Wρ)`
    pub witness_value: f64,
    pub min_state_eig: f64,
    /// Smallest eigenvalue of `ρ^{T_B}`.
    pub min_ppt_eig: f64,
    /// `|Tr ρ − 1|`
    pub trace_err: f64,
    pub iterations: usize,
    pub certified: bool,
    pub best_restart: usize,
    /// Weight of `I/n` mixed into the last iterate to make it exactly feasible.
    pub repair_weight: f64,
    /// Objective after every accepted step of the best restart.
    pub objective_history: Vec<f64>,
    pub params: SearchParams,
}

struct Membership {
    witness_value: f64,
    min_state_eig: f64,
    min_ppt_eig: f64,
    trace_err: f64,
}

fn membership(w: &Witness, rho: &Operator) -> Result<Membership> {
    Ok(Membership {
        witness_value: w.value(rho),
        min_state_eig: min_eig(rho),
        min_ppt_eig: min_eig(&partial_transpose(rho, w.shape())?),
        trace_err: (rho.trace().re - 1.0).abs(),
    })
}

fn is_certified(m: &Membership, tol: f64) -> bool {
    m.min_state_eig >= -MEMBERSHIP_TOL
        && m.min_ppt_eig >= -MEMBERSHIP_TOL
        && m.trace_err <= MEMBERSHIP_TOL
        && m.witness_value < -tol
}

impl ViolationSearchReport {
    /// Recomputes every membership quantity from `state` and `witness` and
    /// checks them against the stored values and the `certified` flag.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(format!("search report: {msg}")));
        if self.state.dim() != self.witness.op().dim() {
            return bad("state and witness dimensions differ".into());
        }
        let m = membership(&self.witness, &self.state)?;
        let checks = [
            ("witness_value", m.witness_value, self.witness_value),
            ("min_state_eig", m.min_state_eig, self.min_state_eig),
            ("min_ppt_eig", m.min_ppt_eig, self.min_ppt_eig),
            ("trace_err", m.trace_err, self.trace_err),
        ];
        for (name, fresh, stored) in checks {
            if (fresh - stored).abs() > 1e-10 {
                return bad(format!("{name}: stored {stored:e}, recomputed {fresh:e}"));
            }
        }
        if self.certified && !is_certified(&m, self.params.tol) {
            return bad("certified flag set but membership checks fail".into());
        }
        Ok(())
    }
}

fn project_trace_one(x: &Operator) -> Operator {
    let n = x.dim();
    let shift = (1.0 - x.trace().re) / n as f64;
    x + &Operator::identity(n).scale_real(shift)
}

fn project_ppt(x: &Operator, shape: BipartiteShape) -> Result<Operator> {
    partial_transpose(&project_psd(&partial_transpose(x, shape)?), shape)
}

/// Dykstra's alternating projections onto PSD, PPT and trace one.
fn dykstra(x: &Operator, shape: BipartiteShape, cycles: usize) -> Result<Operator> {
    let n = x.dim();
    let mut y = x.clone();
    let (mut p, mut q, mut r) = (Operator::zeros(n), Operator::zeros(n), Operator::zeros(n));
    for _ in 0..cycles {
        let a_in = &y + &p;
        let a = project_psd(&a_in);
        p = &a_in - &a;
        let b_in = &a + &q;
        let b = project_ppt(&b_in, shape)?;
        q = &b_in - &b;
        let c_in = &b + &r;
        y = project_trace_one(&c_in);
        r = &c_in - &y;
    }
    Ok(y)
}

/// Mixes `x` with `I/n` just enough to lift both `x` and `x^{T_B}` to PSD.
/// Returns the mixed state and the weight of `I/n`.
fn repair(x: &Operator, shape: BipartiteShape) -> Result<(Operator, f64)> {
    let n = x.dim() as f64;
    let x = project_trace_one(&x.hermitian_part());
    let worst = (-min_eig(&x))
        .max(-min_eig(&partial_transpose(&x, shape)?))
        .max(0.0);
    if worst == 0.0 {
        return Ok((x, 0.0));
    }
    // (1 − t)(−worst) + t/n = 0, plus a little headroom against rounding.
    let t = (worst / (worst + 1.0 / n) * (1.0 + 1e-9)).min(1.0);
    let identity = Operator::identity(x.dim()).scale_real(t / n);
    Ok((&x.scale_real(1.0 - t) + &identity, t))
}

struct RestartOutcome {
    state: Operator,
    membership: Membership,
    iterations: usize,
    repair_weight: f64,
    history: Vec<f64>,
}

fn run_restart(w: &Witness, params: &SearchParams, index: usize) -> Result<RestartOutcome> {
    let shape = w.shape();
    let n = w.op().dim();
    let mut rng = substream(params.seed, index as u64);
    let eta0 = params
        .step
        .unwrap_or_else(|| 1.0 / w.op().frobenius_norm().max(f64::MIN_POSITIVE));
    let mut eta = eta0;

    let mut rho = dykstra(&random_psd(&mut rng, n, n), shape, params.dykstra_cycles)?;
    let mut objective = w.value(&rho);
    let mut history = vec![objective];
    let mut iterations = 0;
    for _ in 0..params.max_iter {
        iterations += 1;
        let stepped = &rho - &w.op().scale_real(eta);
        let candidate = dykstra(&stepped, shape, params.dykstra_cycles)?;
        let value = w.value(&candidate);
        if value <= objective {
            rho = candidate;
            objective = value;
            history.push(objective);
        } else {
            eta *= 0.5;
            if eta < MIN_STEP_FRACTION * eta0 {
                break;
            }
        }
    }

    let (state, repair_weight) = repair(&rho, shape)?;
    let membership = membership(w, &state)?;
    Ok(RestartOutcome {
        state,
        membership,
        iterations,
        repair_weight,
        history,
    })
}

/// Projected descent of `Tr(Wρ)` over `{ρ ≥ 0, ρ^{T_B} ≥ 0, Tr ρ = 1}`.
///
/// Restarts run in parallel from independent random states. A step is kept
/// only if it does not increase the objective and is halved otherwise. The
/// final iterate of each restart is mixed with the maximally mixed state
/// until it is exactly feasible, then checked with fresh eigendecompositions.
/// The reported restart is the certified one with the smallest witness value,
/// ties broken by restart index, falling back to the smallest value overall.
pub fn ppt_violation_search(w: &Witness, params: &SearchParams) -> Result<ViolationSearchReport> {
    if params.restarts == 0 {
        return Err(Error::InvalidParameter("restarts must be positive".into()));
    }
    if params.step.is_some_and(|s| !(s > 0.0)) {
        return Err(Error::InvalidParameter("step must be positive".into()));
    }
    let outcomes: Vec<RestartOutcome> = (0..params.restarts)
        .into_par_iter()
        .map(|i| run_restart(w, params, i))
        .collect::<Result<_>>()?;

    let (best_restart, best) = outcomes
        .into_iter()
        .enumerate()
        .min_by(|(i, a), (j, b)| {
            let ca = is_certified(&a.membership, params.tol);
            let cb = is_certified(&b.membership, params.tol);
            cb.cmp(&ca)
                .then(a.membership.witness_value.total_cmp(&b.membership.witness_value))
                .then(i.cmp(j))
        })
        .expect("at least one restart");

    let m = &best.membership;
    Ok(ViolationSearchReport {
        witness: w.clone(),
        certified: is_certified(m, params.tol),
        witness_value: m.witness_value,
        min_state_eig: m.min_state_eig,
        min_ppt_eig: m.min_ppt_eig,
        trace_err: m.trace_err,
        state: best.state,
        iterations: best.iterations,
        best_restart,
        repair_weight: best.repair_weight,
        objective_history: best.history,
        params: *params,
    })
}
