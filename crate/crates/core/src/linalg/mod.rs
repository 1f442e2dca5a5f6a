//! Dense complex linear algebra on small square operators.

mod complement;
mod eig;
mod operator;
mod tensor;

pub use complement::{gram_rank, orthonormal_complement, orthonormalize};
pub use eig::{hermitian_eig, hermitian_eig_with, min_eigenvalue, psd_project, Eigen};
pub(crate) use eig::{check_hermitian, jacobi};
pub use operator::{BipartiteShape, KetVector, Operator, C64};
pub(crate) use operator::{check_dim, ONE, ZERO};
pub use tensor::{
    devectorize, embed_left, embed_right, kron, partial_trace, partial_transpose, swap_conjugate,
    vectorize, Side,
};
