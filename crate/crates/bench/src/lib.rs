//! Fixtures shared by the benchmarks.

use indecomp_core::maps::{antisymmetric_unitary, extended_reduction_map};
use indecomp_core::random::{gaussian_hermitian, seeded};
use indecomp_core::{KrausPairMap, Operator};

/// Extended reduction map with the block-diagonal unitary and zero phases.
pub fn extended_reduction(d: usize) -> KrausPairMap {
    let u = antisymmetric_unitary(d, &vec![0.0; d / 2], &Operator::identity(d))
        .expect("even dimension");
    extended_reduction_map(d, &u).expect("valid unitary")
}

pub fn random_hermitian(dim: usize, seed: u64) -> Operator {
    gaussian_hermitian(&mut seeded(seed), dim)
}
