//! Positive maps on matrix algebras, their entanglement witnesses, and a
//! structural criterion for indecomposability.
//!
//! The crate is organised in four layers:
//!
//! * [`linalg`]: dense complex operators, partial transposes and traces,
//!   vectorisation, a Jacobi Hermitian eigensolver and PSD projection.
//! * [`maps`]: maps in the canonical form `Λ(ρ) = Σ λ_mn V_m ρ V_n†`
//!   (optionally acting on `ρᵀ`), the reduction, extended reduction, Piani and
//!   Choi families, and the Choi–Jamiołkowski correspondence.
//! * [`criterion`]: the operator subspace spanned by the Kraus basis, its
//!   vectorised orthocomplement, and the certificate that a map with a
//!   negative coefficient eigenvalue is indecomposable.
//! * [`optim`]: alternating-projection numerics for the decomposable form
//!   `W = P + Q^{T_B}` and for PPT states violating a witness.
//!
//! Composite indices are row-major throughout: `|i⟩|k⟩ ↦ i·dim_b + k`.

pub mod criterion;
pub mod error;
pub mod linalg;
pub mod maps;
pub mod optim;
pub mod random;
pub mod tolerance;

pub use error::{Error, Result};
pub use linalg::{
    hermitian_eig, kron, orthonormal_complement, partial_trace, partial_transpose, psd_project,
    vectorize, devectorize, BipartiteShape, Eigen, KetVector, Operator, Side, C64,
};
pub use tolerance::ToleranceConfig;
pub use maps::{
    antisymmetric_unitary, choi_map, compose_transpose, extended_reduction_map, gellmann_basis,
    jamiolkowski_witness, piani_map, reduction_map, witness_to_map, HermitianBasis, KrausPairMap,
    Witness,
};
pub use criterion::{
    build_subspace, certify, find_positive_expectation, FamilyTag, IndecomposabilityCertificate,
    MapSubspace, Verdict,
};
pub use optim::{
    decompose_witness, ppt_violation_search, verify_detection, DecompositionReport,
    SearchParams, ViolationSearchReport,
};
