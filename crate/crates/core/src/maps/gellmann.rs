use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Operator, C64};

/// Orthonormal Hermitian basis `{F_μ}` of `B(ℂ^d)` with `Tr(F_μ F_ν) = δ_μν`
/// and `F_1 = I/√d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HermitianBasis {
    pub dim: usize,
    pub elements: Vec<Operator>,
}

impl HermitianBasis {
    /// `max |Tr(F_μ F_ν) - δ_μν|`
    pub fn orthonormality_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (m, a) in self.elements.iter().enumerate() {
            for (n, b) in self.elements.iter().enumerate() {
                let expected = if m == n { 1.0 } else { 0.0 };
                worst = worst.max((a.trace_product(b) - C64::new(expected, 0.0)).norm());
            }
        }
        worst
    }

    /// Coordinates `c_μ = Tr(F_μ M)`.
    pub fn coordinates(&self, m: &Operator) -> Vec<C64> {
        self.elements.iter().map(|f| f.trace_product(m)).collect()
    }

    /// `Σ c_μ F_μ`
    pub fn synthesize(&self, coords: &[C64]) -> Operator {
        let mut out = Operator::zeros(self.dim);
        for (f, c) in self.elements.iter().zip(coords) {
            out += &f.scale(*c);
        }
        out
    }
}

/// Normalised generalised Gell-Mann matrices, ordered as: `I/√d`, then the
/// symmetric `(|j⟩⟨k| + |k⟩⟨j|)/√2`, then the antisymmetric
/// `(-i|j⟩⟨k| + i|k⟩⟨j|)/√2` (both for `j < k`), then the diagonal
/// `(Σ_{k<l} |k⟩⟨k| - l|l⟩⟨l|)/√(l(l+1))` for `l = 1..d-1`.
///
/// For `d = 2` this is `{I, X, Y, Z}/√2`.
pub fn gellmann_basis(d: usize) -> Result<HermitianBasis> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!(
            "Gell-Mann basis needs d >= 2, got {d}"
        )));
    }
    let r2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut elements = Vec::with_capacity(d * d);
    elements.push(Operator::identity(d).scale_real(1.0 / (d as f64).sqrt()));
    for j in 0..d {
        for k in (j + 1)..d {
            let mut f = Operator::zeros(d);
            f[(j, k)] = C64::new(r2, 0.0);
            f[(k, j)] = C64::new(r2, 0.0);
            elements.push(f);
        }
    }
    for j in 0..d {
        for k in (j + 1)..d {
            let mut f = Operator::zeros(d);
            f[(j, k)] = C64::new(0.0, -r2);
            f[(k, j)] = C64::new(0.0, r2);
            elements.push(f);
        }
    }
    for l in 1..d {
        let norm = 1.0 / ((l * (l + 1)) as f64).sqrt();
        let mut diag = vec![0.0; d];
        for x in diag.iter_mut().take(l) {
            *x = norm;
        }
        diag[l] = -(l as f64) * norm;
        elements.push(Operator::diag_real(&diag));
    }
    Ok(HermitianBasis { dim: d, elements })
}
