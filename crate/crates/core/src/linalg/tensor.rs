//! Tensor-product bookkeeping on bipartite operators.

use serde::{Deserialize, Serialize};

use super::operator::{check_dim, exact_sqrt, BipartiteShape, KetVector, Operator, ZERO};
use crate::error::{Error, Result};

/// Subsystem of a bipartite space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

/// `(a⊗b)[(i,k),(j,l)] = a[i,j]·b[k,l]`
pub fn kron(a: &Operator, b: &Operator) -> Operator {
    let (da, db) = (a.dim(), b.dim());
    Operator::from_fn(da * db, |r, c| {
        let (i, k) = (r / db, r % db);
        let (j, l) = (c / db, c % db);
        a[(i, j)] * b[(k, l)]
    })
}

/// Transposes the second tensor factor: `out[(i,l),(j,k)] = w[(i,k),(j,l)]`.
pub fn partial_transpose(w: &Operator, shape: BipartiteShape) -> Result<Operator> {
    shape.check(w.dim())?;
    let db = shape.dim_b;
    Ok(Operator::from_fn(w.dim(), |r, c| {
        let (i, l) = (r / db, r % db);
        let (j, k) = (c / db, c % db);
        w[(shape.index(i, k), shape.index(j, l))]
    }))
}

/// Traces out the subsystem `side`.
pub fn partial_trace(w: &Operator, shape: BipartiteShape, side: Side) -> Result<Operator> {
    shape.check(w.dim())?;
    let BipartiteShape { dim_a, dim_b } = shape;
    Ok(match side {
        Side::B => Operator::from_fn(dim_a, |i, j| {
            (0..dim_b)
                .map(|k| w[(shape.index(i, k), shape.index(j, k))])
                .sum()
        }),
        Side::A => Operator::from_fn(dim_b, |k, l| {
            (0..dim_a)
                .map(|i| w[(shape.index(i, k), shape.index(i, l))])
                .sum()
        }),
    })
}

/// `|V⟩ = Σ_ij V_ij |i⟩|j⟩`, i.e. the row-major entries as a ket.
pub fn vectorize(v: &Operator) -> KetVector {
    KetVector::new(v.as_slice().to_vec())
}

/// Inverse of [`vectorize`]; `k` must have length `d²`.
pub fn devectorize(k: &KetVector, d: usize) -> Result<Operator> {
    let root = exact_sqrt(k.dim()).ok_or(Error::NotSquareLength(k.dim()))?;
    check_dim(d, root)?;
    Operator::from_row_major(k.amps().to_vec())
}

/// Operator `A ⊗ 1` with `A` acting on the first `dim_a` factor, built without
/// forming the identity.
pub fn embed_left(a: &Operator, dim_b: usize) -> Operator {
    let da = a.dim();
    Operator::from_fn(da * dim_b, |r, c| {
        if r % dim_b == c % dim_b {
            a[(r / dim_b, c / dim_b)]
        } else {
            ZERO
        }
    })
}

/// Operator `1 ⊗ B`.
pub fn embed_right(dim_a: usize, b: &Operator) -> Operator {
    let db = b.dim();
    Operator::from_fn(dim_a * db, |r, c| {
        if r / db == c / db {
            b[(r % db, c % db)]
        } else {
            ZERO
        }
    })
}

/// The swap `|i⟩|k⟩ ↦ |k⟩|i⟩` conjugation `F X F` on `d ⊗ d`.
pub fn swap_conjugate(x: &Operator, d: usize) -> Result<Operator> {
    check_dim(d * d, x.dim())?;
    Ok(Operator::from_fn(d * d, |r, c| {
        let (i, k) = (r / d, r % d);
        let (j, l) = (c / d, c % d);
        x[(k * d + i, l * d + j)]
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::operator::C64;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let i2 = Operator::identity(2);
        assert_eq!(kron(&i2, &i2), Operator::identity(4));
    }

    #[test]
    fn kron_of_projectors() {
        let p0 = Operator::diag_real(&[1.0, 0.0]);
        let p1 = Operator::diag_real(&[0.0, 1.0]);
        assert_eq!(kron(&p0, &p1), Operator::diag_real(&[0.0, 1.0, 0.0, 0.0]));
    }

    #[test]
    fn partial_transpose_rejects_bad_shape() {
        let w = Operator::identity(6);
        assert!(matches!(
            partial_transpose(&w, BipartiteShape::new(2, 2)),
            Err(Error::DimensionMismatch { expected: 4, actual: 6 })
        ));
    }

    #[test]
    fn partial_trace_of_bell_projector() {
        // |Ψ+⟩ = |00⟩ + |11⟩, unnormalised
        let psi = KetVector::from_real(&[1.0, 0.0, 0.0, 1.0]);
        let rho = Operator::projector(&psi);
        let shape = BipartiteShape::square(2);
        assert_eq!(partial_trace(&rho, shape, Side::B).unwrap(), Operator::identity(2));
        assert_eq!(partial_trace(&rho, shape, Side::A).unwrap(), Operator::identity(2));
    }

    #[test]
    fn vectorize_identity_and_antisymmetric_unit() {
        assert_eq!(
            vectorize(&Operator::identity(2)),
            KetVector::from_real(&[1.0, 0.0, 0.0, 1.0])
        );
        let a01 = &Operator::unit(2, 0, 1) - &Operator::unit(2, 1, 0);
        assert_eq!(vectorize(&a01), KetVector::from_real(&[0.0, 1.0, -1.0, 0.0]));
    }

    #[test]
    fn devectorize_rejects_non_square_length() {
        let k = KetVector::from_real(&[1.0, 2.0, 3.0]);
        assert!(matches!(devectorize(&k, 2), Err(Error::NotSquareLength(3))));
        let k4 = KetVector::from_real(&[1.0, 2.0, 3.0, 4.0]);
        assert!(devectorize(&k4, 3).is_err());
        assert_eq!(devectorize(&k4, 2).unwrap()[(1, 0)], c(3.0));
    }

    #[test]
    fn embeddings_match_kron() {
        let a = Operator::from_fn(2, |i, j| C64::new(i as f64 + 1.0, j as f64));
        let b = Operator::from_fn(3, |i, j| C64::new((i * j) as f64, 1.0));
        assert_eq!(embed_left(&a, 3), kron(&a, &Operator::identity(3)));
        assert_eq!(embed_right(2, &b), kron(&Operator::identity(2), &b));
    }

    #[test]
    fn swap_exchanges_factors() {
        let a = Operator::from_fn(2, |i, j| C64::new(i as f64, 2.0 * j as f64));
        let b = Operator::from_fn(2, |i, j| C64::new(1.0 + j as f64, i as f64));
        let swapped = swap_conjugate(&kron(&a, &b), 2).unwrap();
        assert!(swapped.max_abs_diff(&kron(&b, &a)) < 1e-15);
    }
}
