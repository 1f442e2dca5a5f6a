//! Indecomposability from the coefficient spectrum of the canonical form.
//!
//! If `Λ(ρ) = Σ λ_mn V_m ρ V_n†` and every PSD `Q` has a ket in `𝒲(𝒱)⊥`
//! with `⟨ψ|Q^{T_B}|ψ⟩ > 0`, a decomposition `W = P + Q^{T_B}` forces `Q = 0`
//! (the witness is supported on `𝒲(𝒱)`), hence `W = P ≥ 0`, which fails as
//! soon as `L` has a negative eigenvalue.

mod certificate;
mod finder;
mod subspace;

pub use certificate::{certify, certify_with, IndecomposabilityCertificate, Verdict};
pub use finder::{find_positive_expectation, PositiveExpectation};
pub use subspace::{build_subspace, FamilyTag, MapSubspace};
