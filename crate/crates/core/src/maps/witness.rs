//! Choi–Jamiołkowski correspondence between maps and bipartite operators.
//!
//! `W_Λ = (Λ⊗I)(Σ_kl |k⟩⟨l|⊗|k⟩⟨l|)`: the first tensor factor carries the
//! output of `Λ`, the second the input. For the canonical form this is
//! `Σ λ_mn |V_m⟩⟨V_n|`, followed by `T_B` when the map acts on `ρᵀ`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::kraus::KrausPairMap;
use crate::error::{Error, Result};
use crate::linalg::{
    check_hermitian, devectorize, hermitian_eig, partial_transpose, BipartiteShape, KetVector,
    Operator,
};
use crate::random::{haar_pure_state, substream};
use crate::tolerance::ToleranceConfig;

/// Eigenvalues of `W` below this fraction of `max(1, max|λ|)` are dropped
/// when reading a map back from a witness.
const SUPPORT_CUTOFF: f64 = 1e-14;

/// Hermitian operator on a bipartite space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "WitnessJson")]
pub struct Witness {
    op: Operator,
    shape: BipartiteShape,
}

#[derive(Deserialize)]
struct WitnessJson {
    op: Operator,
    shape: BipartiteShape,
}

impl TryFrom<WitnessJson> for Witness {
    type Error = Error;

    fn try_from(json: WitnessJson) -> Result<Self> {
        Witness::new(json.op, json.shape)
    }
}

impl Witness {
    pub fn new(op: Operator, shape: BipartiteShape) -> Result<Self> {
        shape.check(op.dim())?;
        check_hermitian(&op, ToleranceConfig::default().hermiticity)?;
        Ok(Self {
            op: op.hermitian_part(),
            shape,
        })
    }

    pub fn op(&self) -> &Operator {
        &self.op
    }

    pub fn shape(&self) -> BipartiteShape {
        self.shape
    }

    pub fn into_op(self) -> Operator {
        self.op
    }

    /// `Tr(W ρ)` (real part).
    pub fn value(&self, rho: &Operator) -> f64 {
        self.op.trace_product(rho).re
    }

    pub fn spectrum(&self) -> Result<Vec<f64>> {
        Ok(hermitian_eig(&self.op)?.values)
    }

    /// Minimum of `⟨a⊗b|W|a⊗b⟩` over `samples` Haar-random product vectors.
    /// Nonnegative for every witness of a positive map.
    pub fn min_product_expectation(&self, samples: usize, seed: u64) -> f64 {
        let BipartiteShape { dim_a, dim_b } = self.shape;
        (0..samples)
            .into_par_iter()
            .map(|i| {
                let mut rng = substream(seed, i as u64);
                let a = haar_pure_state(&mut rng, dim_a);
                let b = haar_pure_state(&mut rng, dim_b);
                self.op.expectation(&a.kron(&b)).re
            })
            .reduce(|| f64::INFINITY, f64::min)
    }
}

pub fn jamiolkowski_witness(m: &KrausPairMap) -> Result<Witness> {
    if m.dim_in() != m.dim_out() {
        return Err(Error::NonSquareMap {
            dim_in: m.dim_in(),
            dim_out: m.dim_out(),
        });
    }
    let shape = BipartiteShape::square(m.dim_in());
    let pre = m.vectorized_witness();
    let op = if m.transposed_input() {
        partial_transpose(&pre, shape)?
    } else {
        pre
    };
    Witness::new(op, shape)
}

/// Reads a map off a Hermitian witness via its spectral decomposition
/// `W = Σ w_a |v_a⟩⟨v_a|`: Kraus basis `devec(v_a)`, diagonal coefficients
/// `w_a`, untransposed input. Acts as `ρ ↦ Tr_B(W (I⊗ρᵀ))`.
pub fn witness_to_map(w: &Witness) -> Result<KrausPairMap> {
    let BipartiteShape { dim_a, dim_b } = w.shape();
    if dim_a != dim_b {
        return Err(Error::NonSquareMap {
            dim_in: dim_b,
            dim_out: dim_a,
        });
    }
    let eig = hermitian_eig(w.op())?;
    let scale = eig
        .values
        .iter()
        .fold(1.0_f64, |acc, x| acc.max(x.abs()));
    let kept: Vec<(f64, &KetVector)> = eig
        .values
        .iter()
        .zip(&eig.vectors)
        .filter(|(x, _)| x.abs() > SUPPORT_CUTOFF * scale)
        .map(|(x, v)| (*x, v))
        .collect();
    let basis = kept
        .iter()
        .map(|(_, v)| devectorize(v, dim_a))
        .collect::<Result<Vec<_>>>()?;
    let weights: Vec<f64> = kept.iter().map(|(x, _)| *x).collect();
    KrausPairMap::new(dim_a, basis, Operator::diag_real(&weights), false)
}
