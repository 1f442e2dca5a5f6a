//! Positive maps in canonical Kraus-pair form and their witnesses.

mod families;
mod gellmann;
mod kraus;
mod positivity;
mod witness;

pub use families::{
    antisymmetric_basis, antisymmetric_coordinates, antisymmetric_pairs, antisymmetric_unitary,
    antisymmetric_unitary_defects, choi_map, extended_reduction_map, piani_map,
    piani_map_unchecked, reduction_map,
};
pub use gellmann::{gellmann_basis, HermitianBasis};
pub use kraus::{compose_transpose, KrausPairMap};
pub use positivity::min_output_eigenvalue;
pub use witness::{jamiolkowski_witness, witness_to_map, Witness};
