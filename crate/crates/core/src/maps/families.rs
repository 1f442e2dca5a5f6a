//! Constructors for the reduction, extended reduction, Piani and Choi maps.

use super::gellmann::gellmann_basis;
use super::kraus::KrausPairMap;
use crate::error::{Error, Result};
use crate::linalg::{embed_left, embed_right, Operator, C64, ONE};

const ORTHOGONALITY_TOL: f64 = 1e-10;
const UNITARITY_TOL: f64 = 1e-10;
const ANTISYMMETRY_TOL: f64 = 1e-12;

/// Index pairs `(k, l)` with `k < l`, in lexicographic order.
pub fn antisymmetric_pairs(d: usize) -> Vec<(usize, usize)> {
    (0..d)
        .flat_map(|k| ((k + 1)..d).map(move |l| (k, l)))
        .collect()
}

/// `A_kl = |k⟩⟨l| - |l⟩⟨k|` for `k < l`.
pub fn antisymmetric_basis(d: usize) -> Vec<Operator> {
    antisymmetric_pairs(d)
        .into_iter()
        .map(|(k, l)| &Operator::unit(d, k, l) - &Operator::unit(d, l, k))
        .collect()
}

/// `R(σ) = Tr(σ)1 - σ = Σ_{k<l} A_kl σᵀ A_kl†`.
pub fn reduction_map(d: usize) -> Result<KrausPairMap> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!(
            "reduction map needs d >= 2, got {d}"
        )));
    }
    let basis = antisymmetric_basis(d);
    let n = basis.len();
    KrausPairMap::new(d, basis, Operator::identity(n), true)
}

/// `U = O D Oᵀ` with `D = Σ_k e^{iφ_k}(|2k⟩⟨2k+1| - |2k+1⟩⟨2k|)` and `O` real
/// orthogonal. Antisymmetric unitaries exist only for even `d`.
pub fn antisymmetric_unitary(d: usize, phases: &[f64], orthogonal: &Operator) -> Result<Operator> {
    if d % 2 == 1 {
        return Err(Error::OddDimension(d));
    }
    if d == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    if phases.len() != d / 2 {
        return Err(Error::InvalidParameter(format!(
            "expected {} phases for d = {d}, got {}",
            d / 2,
            phases.len()
        )));
    }
    if orthogonal.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            actual: orthogonal.dim(),
        });
    }
    let imag = orthogonal
        .as_slice()
        .iter()
        .fold(0.0_f64, |acc, z| acc.max(z.im.abs()));
    let gram = &orthogonal.transpose() * orthogonal;
    let deviation = gram.max_abs_diff(&Operator::identity(d)).max(imag);
    if deviation > ORTHOGONALITY_TOL {
        return Err(Error::NotOrthogonal { deviation });
    }

    let mut block = Operator::zeros(d);
    for (k, phi) in phases.iter().enumerate() {
        let e = C64::from_polar(1.0, *phi);
        block[(2 * k, 2 * k + 1)] = e;
        block[(2 * k + 1, 2 * k)] = -e;
    }
    let u = &(orthogonal * &block) * &orthogonal.transpose();
    // Exact antisymmetrisation removes rounding in the two products.
    Ok(Operator::from_fn(d, |i, j| (u[(i, j)] - u[(j, i)]) * 0.5))
}

/// `(‖U + Uᵀ‖_max, ‖U†U - I‖_max)`
pub fn antisymmetric_unitary_defects(u: &Operator) -> (f64, f64) {
    let anti = (u + &u.transpose()).max_abs();
    let unit = (&u.adjoint() * u).max_abs_diff(&Operator::identity(u.dim()));
    (anti, unit)
}

/// Coordinates `u_(kl) = U_kl` (`k < l`) of an antisymmetric `U = Σ U_kl A_kl`.
pub fn antisymmetric_coordinates(u: &Operator) -> Vec<C64> {
    antisymmetric_pairs(u.dim())
        .into_iter()
        .map(|(k, l)| u[(k, l)])
        .collect()
}

/// `R_E(σ) = Tr(σ)1 - σ - U σᵀ U†`, in canonical form over `{A_kl}` with
/// coefficient matrix `L = I - |u⟩⟨u|`.
pub fn extended_reduction_map(d: usize, u: &Operator) -> Result<KrausPairMap> {
    if d % 2 == 1 {
        return Err(Error::OddDimension(d));
    }
    if u.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            actual: u.dim(),
        });
    }
    let (antisymmetry, unitarity) = antisymmetric_unitary_defects(u);
    if antisymmetry > ANTISYMMETRY_TOL || unitarity > UNITARITY_TOL {
        return Err(Error::NotAntisymmetricUnitary {
            antisymmetry,
            unitarity,
        });
    }
    let coords = antisymmetric_coordinates(u);
    let n = coords.len();
    let coeff = Operator::from_fn(n, |a, b| {
        let delta = if a == b { ONE } else { C64::new(0.0, 0.0) };
        delta - coords[a] * coords[b].conj()
    });
    KrausPairMap::new(d, antisymmetric_basis(d), coeff, true)
}

/// Piani's map `Λ = Λ₁⊗I + I⊗Λ₂` on `ℂ^{d1} ⊗ ℂ^{d2}` with
/// `Λ_k(ρ) = λ^{(k)}_1 ρ + Σ_{μ≥2} λ^{(k)}_μ F_μ ρ F_μ` over the Gell-Mann basis.
///
/// The first coefficient multiplies the identity Kraus operator `I` itself, so
/// with the normalised `F_1 = I/√d` it corresponds to `d·λ_1 F_1 ρ F_1`.
/// Requires `λ^{(2)}_{d2²} < 0` and every other coefficient `≥ |λ^{(2)}_{d2²}|`.
pub fn piani_map(d1: usize, d2: usize, lambda1: &[f64], lambda2: &[f64]) -> Result<KrausPairMap> {
    if d1 < 2 || d2 < 2 {
        return Err(Error::InvalidParameter(format!(
            "Piani map needs d1, d2 >= 2, got {d1}, {d2}"
        )));
    }
    if lambda1.len() != d1 * d1 || lambda2.len() != d2 * d2 {
        return Err(Error::InvalidParameter(format!(
            "expected {} and {} coefficients, got {} and {}",
            d1 * d1,
            d2 * d2,
            lambda1.len(),
            lambda2.len()
        )));
    }
    let negative = lambda2[d2 * d2 - 1];
    if negative >= 0.0 {
        return Err(Error::PianiCondition(format!(
            "last coefficient of the second factor must be negative, got {negative}"
        )));
    }
    let bound = negative.abs();
    let others = lambda1.iter().chain(&lambda2[..d2 * d2 - 1]);
    if let Some(bad) = others.copied().find(|&x| x < bound) {
        return Err(Error::PianiCondition(format!(
            "coefficient {bad} is below |{negative}|"
        )));
    }
    piani_map_unchecked(d1, d2, lambda1, lambda2)
}

/// Same construction without the positivity conditions; the map need not
/// be positive.
pub fn piani_map_unchecked(
    d1: usize,
    d2: usize,
    lambda1: &[f64],
    lambda2: &[f64],
) -> Result<KrausPairMap> {
    let f1 = gellmann_basis(d1)?;
    let f2 = gellmann_basis(d2)?;
    let d = d1 * d2;
    let mut basis = vec![Operator::identity(d)];
    let mut diag = vec![lambda1[0] + lambda2[0]];
    for (f, lambda) in f1.elements.iter().zip(lambda1).skip(1) {
        basis.push(embed_left(f, d2));
        diag.push(*lambda);
    }
    for (f, lambda) in f2.elements.iter().zip(lambda2).skip(1) {
        basis.push(embed_right(d1, f));
        diag.push(*lambda);
    }
    KrausPairMap::new(d, basis, Operator::diag_real(&diag), false)
}

/// Choi's map on `ℂ³`:
/// `C(ρ) = Σ_k (2 P_kk ρ P_kk† + 2 P_{k-1,k} ρ P_{k-1,k}†) - ρ`, indices mod 3.
///
/// Since `I = Σ P_kk`, the `-ρ` term is absorbed into the diagonal projector
/// block, giving the basis `{P_00, P_11, P_22, P_20, P_01, P_12}` and
/// `L = (2I - J) ⊕ 2I`.
pub fn choi_map() -> Result<KrausPairMap> {
    let d = 3;
    let mut basis: Vec<Operator> = (0..d).map(|k| Operator::unit(d, k, k)).collect();
    basis.extend((0..d).map(|k| Operator::unit(d, (k + d - 1) % d, k)));
    let coeff = Operator::from_fn(2 * d, |a, b| {
        let v = match (a < d, b < d) {
            (true, true) => {
                if a == b {
                    1.0
                } else {
                    -1.0
                }
            }
            (false, false) if a == b => 2.0,
            _ => 0.0,
        };
        C64::new(v, 0.0)
    });
    KrausPairMap::new(d, basis, coeff, false)
}
