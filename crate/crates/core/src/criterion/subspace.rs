use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::{
    embed_left, embed_right, orthonormal_complement, orthonormalize, partial_trace, vectorize,
    BipartiteShape, KetVector, Operator, Side, C64, ONE,
};
use crate::maps::KrausPairMap;

/// Relative tolerance for structural recognition of the Kraus span.
const STRUCTURE_TOL: f64 = 1e-10;

/// Which analytic argument applies to the vectorised Kraus span.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FamilyTag {
    /// Span of all antisymmetric `A_kl` on `ℂ^d`.
    Antisymmetric { d: usize },
    /// Span of `{M₁⊗I + I⊗M₂}` on `ℂ^{d1} ⊗ ℂ^{d2}`.
    PianiSum { d1: usize, d2: usize },
    Generic,
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyTag::Antisymmetric { d } => write!(f, "Antisymmetric({d})"),
            FamilyTag::PianiSum { d1, d2 } => write!(f, "PianiSum({d1},{d2})"),
            FamilyTag::Generic => write!(f, "Generic"),
        }
    }
}

/// The operator span `𝒱` of a map's Kraus basis, its vectorisation `𝒲(𝒱)`
/// and the orthocomplement `𝒲(𝒱)⊥` in `ℂ^d ⊗ ℂ^d`.
#[derive(Debug, Clone)]
pub struct MapSubspace {
    pub dim: usize,
    pub operator_basis: Vec<Operator>,
    pub vector_basis: Vec<KetVector>,
    pub complement_basis: Vec<KetVector>,
    pub family_tag: FamilyTag,
}

impl MapSubspace {
    pub fn ambient_dim(&self) -> usize {
        self.dim * self.dim
    }

    pub fn shape(&self) -> BipartiteShape {
        BipartiteShape::square(self.dim)
    }

    /// `max |⟨v|ψ⟩|` over the orthonormal basis of `𝒲(𝒱)`.
    pub fn overlap_with_span(&self, ket: &KetVector) -> f64 {
        self.vector_basis
            .iter()
            .map(|v| v.inner(ket).norm())
            .fold(0.0, f64::max)
    }

    /// Frobenius norm of the part of `op` acting on `𝒲(𝒱)⊥`, i.e.
    /// `sqrt(Σ_c ‖op|c⟩‖²)` over the complement basis.
    pub fn complement_leakage(&self, op: &Operator) -> f64 {
        self.complement_basis
            .iter()
            .map(|c| op.apply(c).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Normalised kets of `𝒲(𝒱)⊥` on which the finder evaluates `Q^{T_B}`.
    pub fn candidates(&self) -> Vec<KetVector> {
        match self.family_tag {
            FamilyTag::Antisymmetric { d } => antisymmetric_candidates(d),
            FamilyTag::PianiSum { d1, d2 } => piani_candidates(d1, d2),
            FamilyTag::Generic => Vec::new(),
        }
    }
}

pub fn build_subspace(m: &KrausPairMap) -> Result<MapSubspace> {
    let dim = m.dim_in();
    let n2 = dim * dim;
    let vectors: Vec<KetVector> = m.kraus_basis().iter().map(vectorize).collect();
    let vector_basis = orthonormalize(&vectors, n2)?;
    let complement_basis = orthonormal_complement(&vectors, n2)?;
    Ok(MapSubspace {
        dim,
        operator_basis: m.kraus_basis().to_vec(),
        vector_basis,
        complement_basis,
        family_tag: recognize(dim, m.kraus_basis()),
    })
}

fn recognize(dim: usize, basis: &[Operator]) -> FamilyTag {
    if basis.is_empty() {
        return FamilyTag::Generic;
    }
    if dim >= 2 && basis.len() == dim * (dim - 1) / 2 && basis.iter().all(is_antisymmetric) {
        return FamilyTag::Antisymmetric { d: dim };
    }
    for d1 in 2..=dim / 2 {
        if dim % d1 != 0 {
            continue;
        }
        let d2 = dim / d1;
        if basis.len() == d1 * d1 + d2 * d2 - 1
            && basis.iter().all(|v| in_sum_subspace(v, d1, d2))
        {
            return FamilyTag::PianiSum { d1, d2 };
        }
    }
    FamilyTag::Generic
}

fn is_antisymmetric(v: &Operator) -> bool {
    (v + &v.transpose()).max_abs() <= STRUCTURE_TOL * v.max_abs().max(1.0)
}

/// `V ∈ {M₁⊗I + I⊗M₂}`: the candidate `M₁ = Tr₂V/d2`,
/// `M₂ = Tr₁V/d1 - Tr(V)/(d1 d2)·I` reproduces `V` exactly when it does.
fn in_sum_subspace(v: &Operator, d1: usize, d2: usize) -> bool {
    let shape = BipartiteShape::new(d1, d2);
    let (Ok(left), Ok(right)) = (
        partial_trace(v, shape, Side::B),
        partial_trace(v, shape, Side::A),
    ) else {
        return false;
    };
    let m1 = left.scale_real(1.0 / d2 as f64);
    let shift = v.trace() / (d1 * d2) as f64;
    let m2 = &right.scale_real(1.0 / d1 as f64) - &Operator::identity(d2).scale(shift);
    let rebuilt = &embed_left(&m1, d2) + &embed_right(d1, &m2);
    rebuilt.max_abs_diff(v) <= STRUCTURE_TOL * v.max_abs().max(1.0)
}

/// `{|kk⟩}_k ∪ {(|kl⟩ + |lk⟩)/√2}_{k<l}`
fn antisymmetric_candidates(d: usize) -> Vec<KetVector> {
    let n2 = d * d;
    let mut out: Vec<KetVector> = (0..d).map(|k| KetVector::basis(n2, k * d + k)).collect();
    let r2 = std::f64::consts::FRAC_1_SQRT_2;
    for k in 0..d {
        for l in (k + 1)..d {
            let mut v = KetVector::zeros(n2);
            v[k * d + l] = C64::new(r2, 0.0);
            v[l * d + k] = C64::new(r2, 0.0);
            out.push(v);
        }
    }
    out
}

/// Kets on the local pair `A_i B_i` of dimension `d × d`, stored as `d×d`
/// amplitude tables `φ[a][b]`.
type PairKet = Vec<Vec<C64>>;

fn pair_product(d: usize, k: usize, l: usize) -> PairKet {
    let mut t = vec![vec![C64::new(0.0, 0.0); d]; d];
    t[k][l] = ONE;
    t
}

/// `|Φ⊥⟩ = Σ_m ω^m |m⟩|m⟩ / √d` with `ω = e^{2πi/d}`, orthogonal to `Σ_m |mm⟩`.
fn pair_phase_diagonal(d: usize) -> PairKet {
    let mut t = vec![vec![C64::new(0.0, 0.0); d]; d];
    let norm = 1.0 / (d as f64).sqrt();
    for (m, row) in t.iter_mut().enumerate() {
        row[m] = C64::from_polar(norm, 2.0 * PI * m as f64 / d as f64);
    }
    t
}

fn off_diagonal_pairs(d: usize) -> Vec<PairKet> {
    (0..d)
        .flat_map(|k| (0..d).filter(move |&l| l != k).map(move |l| (k, l)))
        .map(|(k, l)| pair_product(d, k, l))
        .collect()
}

/// Embeds `φ₁(a1,b1) φ₂(a2,b2)` into `(A1 A2) ⊗ (B1 B2)`, the native order of
/// `ℂ^d ⊗ ℂ^d` with `d = d1 d2`.
fn embed_pair_product(d1: usize, d2: usize, phi1: &PairKet, phi2: &PairKet) -> KetVector {
    let d = d1 * d2;
    let mut out = KetVector::zeros(d * d);
    for a1 in 0..d1 {
        for b1 in 0..d1 {
            let x = phi1[a1][b1];
            if x == C64::new(0.0, 0.0) {
                continue;
            }
            for a2 in 0..d2 {
                for b2 in 0..d2 {
                    let row = a1 * d2 + a2;
                    let col = b1 * d2 + b2;
                    out[row * d + col] = x * phi2[a2][b2];
                }
            }
        }
    }
    out
}

fn piani_candidates(d1: usize, d2: usize) -> Vec<KetVector> {
    let off1 = off_diagonal_pairs(d1);
    let off2 = off_diagonal_pairs(d2);
    let phi1 = pair_phase_diagonal(d1);
    let phi2 = pair_phase_diagonal(d2);
    let mut out = Vec::new();
    for x in &off1 {
        for y in &off2 {
            out.push(embed_pair_product(d1, d2, x, y));
        }
    }
    for y in &off2 {
        out.push(embed_pair_product(d1, d2, &phi1, y));
    }
    for x in &off1 {
        out.push(embed_pair_product(d1, d2, x, &phi2));
    }
    out.push(embed_pair_product(d1, d2, &phi1, &phi2));
    out
}
