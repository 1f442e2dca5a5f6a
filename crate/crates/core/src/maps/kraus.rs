use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    check_dim, gram_rank, hermitian_eig, vectorize, KetVector, Operator, ZERO,
};

/// Coefficient matrices must be Hermitian to this (absolute) accuracy.
const COEFF_HERMITICITY: f64 = 1e-12;

/// A linear map in the canonical form
///
/// ```text
/// Λ(ρ) = Σ_{m,n} λ_mn V_m ρ' V_n†,   ρ' = ρᵀ if `transposed_input` else ρ
/// ```
///
/// with `{V_m}` linearly independent and `L = (λ_mn)` Hermitian.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "KrausPairMapJson", into = "KrausPairMapJson")]
pub struct KrausPairMap {
    dim: usize,
    kraus_basis: Vec<Operator>,
    coeff: Operator,
    transposed_input: bool,
}

#[derive(Serialize, Deserialize)]
struct KrausPairMapJson {
    dim_in: usize,
    dim_out: usize,
    transposed_input: bool,
    kraus_basis: Vec<Operator>,
    coeff: Operator,
}

impl TryFrom<KrausPairMapJson> for KrausPairMap {
    type Error = Error;

    fn try_from(json: KrausPairMapJson) -> Result<Self> {
        if json.dim_in != json.dim_out {
            return Err(Error::NonSquareMap {
                dim_in: json.dim_in,
                dim_out: json.dim_out,
            });
        }
        KrausPairMap::new(json.dim_in, json.kraus_basis, json.coeff, json.transposed_input)
    }
}

impl From<KrausPairMap> for KrausPairMapJson {
    fn from(m: KrausPairMap) -> Self {
        Self {
            dim_in: m.dim,
            dim_out: m.dim,
            transposed_input: m.transposed_input,
            kraus_basis: m.kraus_basis,
            coeff: m.coeff,
        }
    }
}

impl KrausPairMap {
    /// Validates dimensions, Hermiticity of `coeff` and linear independence
    /// of `kraus_basis`. An empty basis is the zero map.
    pub fn new(
        dim: usize,
        kraus_basis: Vec<Operator>,
        coeff: Operator,
        transposed_input: bool,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("map dimension must be positive".into()));
        }
        for v in &kraus_basis {
            check_dim(dim, v.dim())?;
        }
        check_dim(kraus_basis.len(), coeff.dim())?;
        let deviation = coeff.hermiticity_deviation();
        if deviation > COEFF_HERMITICITY {
            return Err(Error::NotHermitian { deviation });
        }
        let vectors: Vec<KetVector> = kraus_basis.iter().map(vectorize).collect();
        let rank = gram_rank(&vectors);
        if rank < kraus_basis.len() {
            return Err(Error::RankDeficient {
                rank,
                count: kraus_basis.len(),
            });
        }
        Ok(Self {
            dim,
            kraus_basis,
            coeff: coeff.hermitian_part(),
            transposed_input,
        })
    }

    pub fn dim_in(&self) -> usize {
        self.dim
    }

    pub fn dim_out(&self) -> usize {
        self.dim
    }

    pub fn kraus_basis(&self) -> &[Operator] {
        &self.kraus_basis
    }

    pub fn coeff(&self) -> &Operator {
        &self.coeff
    }

    pub fn transposed_input(&self) -> bool {
        self.transposed_input
    }

    pub fn len(&self) -> usize {
        self.kraus_basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kraus_basis.is_empty()
    }

    pub fn apply(&self, rho: &Operator) -> Result<Operator> {
        check_dim(self.dim, rho.dim())?;
        let input = if self.transposed_input {
            rho.transpose()
        } else {
            rho.clone()
        };
        // Σ_m V_m (Σ_n λ_mn ρ' V_n†)
        let right: Vec<Operator> = self
            .kraus_basis
            .iter()
            .map(|v| input.matmul_adjoint(v))
            .collect();
        let mut out = Operator::zeros(self.dim);
        for (m, vm) in self.kraus_basis.iter().enumerate() {
            let mut inner = Operator::zeros(self.dim);
            for (n, x) in right.iter().enumerate() {
                let lambda = self.coeff[(m, n)];
                if lambda != ZERO {
                    inner += &x.scale(lambda);
                }
            }
            out += &vm.matmul(&inner);
        }
        Ok(out)
    }

    /// Eigenvalues of the coefficient matrix `L`, descending.
    pub fn coefficient_spectrum(&self) -> Result<Vec<f64>> {
        if self.is_empty() {
            return Ok(Vec::new());
        }
        Ok(hermitian_eig(&self.coeff)?.values)
    }

    /// `Σ λ_mn |V_m⟩⟨V_n|`, the witness before any partial transpose.
    pub fn vectorized_witness(&self) -> Operator {
        let n2 = self.dim * self.dim;
        let vecs: Vec<KetVector> = self.kraus_basis.iter().map(vectorize).collect();
        let mut out = Operator::zeros(n2);
        for (m, vm) in vecs.iter().enumerate() {
            for (n, vn) in vecs.iter().enumerate() {
                let lambda = self.coeff[(m, n)];
                if lambda == ZERO {
                    continue;
                }
                for i in 0..n2 {
                    let a = vm[i] * lambda;
                    if a == ZERO {
                        continue;
                    }
                    for j in 0..n2 {
                        out[(i, j)] += a * vn[j].conj();
                    }
                }
            }
        }
        out
    }

    /// Largest entrywise deviation between the actions of two maps on `inputs`.
    pub fn max_action_deviation(&self, other: &Self, inputs: &[Operator]) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for rho in inputs {
            worst = worst.max(self.apply(rho)?.max_abs_diff(&other.apply(rho)?));
        }
        Ok(worst)
    }
}

/// `Λ ∘ T`: the same map acting on the transposed input.
pub fn compose_transpose(m: &KrausPairMap) -> KrausPairMap {
    KrausPairMap {
        transposed_input: !m.transposed_input,
        ..m.clone()
    }
}
