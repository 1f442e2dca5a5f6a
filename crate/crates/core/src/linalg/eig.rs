//! Cyclic complex Jacobi eigensolver for Hermitian matrices.
//!
//! Each rotation zeroes one off-diagonal pair `(p, q)`. Writing
//! `a_pq = |g| e^{iφ}`, the 2×2 block is unitarily similar to the real
//! symmetric block `[[a_pp, |g|], [|g|, a_qq]]` via `diag(1, e^{-iφ})`, so the
//! classical real rotation applies after absorbing the phase.

use super::operator::{KetVector, Operator, C64, ZERO};
use crate::error::{Error, Result};
use crate::tolerance::ToleranceConfig;

const MAX_SWEEPS: usize = 100;
const OFF_DIAGONAL_RELATIVE: f64 = 1e-12;

/// Spectral decomposition with eigenvalues in descending order.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: Vec<KetVector>,
}

impl Eigen {
    pub fn min(&self) -> f64 {
        *self.values.last().expect("empty spectrum")
    }

    pub fn max(&self) -> f64 {
        self.values[0]
    }

    /// `Σ f(λ_i) |v_i⟩⟨v_i|`
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> Operator {
        let n = self.values.len();
        let mut out = Operator::zeros(n);
        for (lambda, v) in self.values.iter().zip(&self.vectors) {
            let w = f(*lambda);
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                let vi = v[i] * w;
                if vi == ZERO {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += vi * v[j].conj();
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> Operator {
        self.reconstruct_with(|x| x)
    }
}

/// Eigendecomposition of a Hermitian operator, validated against the default
/// hermiticity tolerance (scaled by `max(1, max|h|)`).
pub fn hermitian_eig(h: &Operator) -> Result<Eigen> {
    hermitian_eig_with(h, &ToleranceConfig::default())
}

pub fn hermitian_eig_with(h: &Operator, tol: &ToleranceConfig) -> Result<Eigen> {
    check_hermitian(h, tol.hermiticity)?;
    Ok(jacobi(&h.hermitian_part()))
}

/// Nearest PSD operator in Frobenius norm: negative eigenvalues clipped to zero.
pub fn psd_project(h: &Operator) -> Result<Operator> {
    Ok(hermitian_eig(h)?.reconstruct_with(|x| x.max(0.0)))
}

pub fn min_eigenvalue(h: &Operator) -> Result<f64> {
    Ok(hermitian_eig(h)?.min())
}

pub(crate) fn check_hermitian(h: &Operator, tol: f64) -> Result<()> {
    let deviation = h.hermiticity_deviation();
    if deviation > tol * h.max_abs().max(1.0) {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(())
}

/// Jacobi on an exactly Hermitian input.
pub(crate) fn jacobi(h: &Operator) -> Eigen {
    let n = h.dim();
    let mut a: Vec<C64> = h.as_slice().to_vec();
    let mut v: Vec<C64> = Operator::identity(n).as_slice().to_vec();

    let total = h.frobenius_norm();
    let threshold = OFF_DIAGONAL_RELATIVE * total;

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= threshold || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, n, p, q);
            }
        }
    }

    let mut pairs: Vec<(f64, KetVector)> = (0..n)
        .map(|k| {
            let col = (0..n).map(|i| v[i * n + k]).collect();
            (a[k * n + k].re, KetVector::new(col))
        })
        .collect();
    pairs.sort_by(|x, y| y.0.total_cmp(&x.0));
    let (values, vectors) = pairs.into_iter().unzip();
    Eigen { values, vectors }
}

fn rotate(a: &mut [C64], v: &mut [C64], n: usize, p: usize, q: usize) {
    let g = a[p * n + q];
    let mag = g.norm();
    if mag == 0.0 {
        return;
    }
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    // Skip rotations that cannot change the diagonal at working precision.
    if mag < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[p * n + q] = ZERO;
        a[q * n + p] = ZERO;
        return;
    }
    let phase = g / mag;
    let theta = (aqq - app) / (2.0 * mag);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // J = diag(1, e^{-iφ}) · [[c, s], [-s, c]]
    let j_pp = C64::new(c, 0.0);
    let j_pq = C64::new(s, 0.0);
    let j_qp = -phase.conj() * s;
    let j_qq = phase.conj() * c;

    // A ← A J (columns p, q)
    for i in 0..n {
        let aip = a[i * n + p];
        let aiq = a[i * n + q];
        a[i * n + p] = aip * j_pp + aiq * j_qp;
        a[i * n + q] = aip * j_pq + aiq * j_qq;
    }
    // A ← J† A (rows p, q)
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = j_pp.conj() * apk + j_qp.conj() * aqk;
        a[q * n + k] = j_pq.conj() * apk + j_qq.conj() * aqk;
    }
    a[p * n + q] = ZERO;
    a[q * n + p] = ZERO;
    a[p * n + p] = C64::new(a[p * n + p].re, 0.0);
    a[q * n + q] = C64::new(a[q * n + q].re, 0.0);

    // V ← V J
    for i in 0..n {
        let vip = v[i * n + p];
        let viq = v[i * n + q];
        v[i * n + p] = vip * j_pp + viq * j_qp;
        v[i * n + q] = vip * j_pq + viq * j_qq;
    }
}
