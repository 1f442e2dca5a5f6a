use super::eig::jacobi;
use super::operator::{check_dim, KetVector, Operator, ZERO};
use crate::error::{Error, Result};

/// Relative Gram eigenvalue below which input vectors count as dependent.
const RANK_TOLERANCE: f64 = 1e-10;

/// Orthonormal basis for the span of linearly independent `vectors`.
pub fn orthonormalize(vectors: &[KetVector], ambient_dim: usize) -> Result<Vec<KetVector>> {
    for v in vectors {
        check_dim(ambient_dim, v.dim())?;
    }
    let rank = gram_rank(vectors);
    if rank < vectors.len() {
        return Err(Error::RankDeficient {
            rank,
            count: vectors.len(),
        });
    }
    // Modified Gram-Schmidt, two passes.
    let mut out: Vec<KetVector> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for u in &out {
                let c = u.inner(&w);
                w.axpy(-c, u);
            }
        }
        out.push(w.normalized());
    }
    Ok(out)
}

/// Orthonormal basis of the orthogonal complement of `span(basis)` in
/// `ℂ^ambient_dim`, read off as the unit-eigenvalue eigenvectors of the
/// complementary projector.
pub fn orthonormal_complement(basis: &[KetVector], ambient_dim: usize) -> Result<Vec<KetVector>> {
    let ortho = orthonormalize(basis, ambient_dim)?;
    let mut projector = Operator::identity(ambient_dim);
    for u in &ortho {
        for i in 0..ambient_dim {
            let ui = u[i];
            if ui == ZERO {
                continue;
            }
            for j in 0..ambient_dim {
                projector[(i, j)] -= ui * u[j].conj();
            }
        }
    }
    let eig = jacobi(&projector.hermitian_part());
    let keep = ambient_dim - ortho.len();
    let mut out: Vec<KetVector> = eig.vectors.into_iter().take(keep).collect();
    // Polish against the input span.
    for w in &mut out {
        for u in &ortho {
            let c = u.inner(w);
            w.axpy(-c, u);
        }
    }
    orthonormalize(&out, ambient_dim)
}

/// Numerical rank from the Gram matrix `G_ij = ⟨v_i|v_j⟩`.
pub fn gram_rank(vectors: &[KetVector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let gram = Operator::from_fn(vectors.len(), |i, j| vectors[i].inner(&vectors[j]));
    let eig = jacobi(&gram.hermitian_part());
    let top = eig.max().max(0.0);
    if top == 0.0 {
        return 0;
    }
    eig.values
        .iter()
        .filter(|&&x| x > RANK_TOLERANCE * top)
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::operator::C64;

    fn max_overlap(a: &[KetVector], b: &[KetVector]) -> f64 {
        a.iter()
            .flat_map(|x| b.iter().map(move |y| x.inner(y).norm()))
            .fold(0.0, f64::max)
    }

    #[test]
    fn complement_of_bell_vector() {
        let psi = KetVector::from_real(&[1.0, 0.0, 0.0, 1.0]);
        let comp = orthonormal_complement(&[psi.clone()], 4).unwrap();
        assert_eq!(comp.len(), 3);
        assert!(max_overlap(&comp, &[psi]) < 1e-12);
        for (i, u) in comp.iter().enumerate() {
            for (j, w) in comp.iter().enumerate() {
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((u.inner(w) - C64::new(e, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn complement_of_antisymmetric_span_d4() {
        let d = 4;
        let mut anti = Vec::new();
        for k in 0..d {
            for l in (k + 1)..d {
                let mut v = KetVector::zeros(d * d);
                v[k * d + l] = C64::new(1.0, 0.0);
                v[l * d + k] = C64::new(-1.0, 0.0);
                anti.push(v);
            }
        }
        let comp = orthonormal_complement(&anti, d * d).unwrap();
        assert_eq!(comp.len(), 10);
        assert!(max_overlap(&comp, &anti) < 1e-12);
    }

    #[test]
    fn complement_of_full_space_is_empty() {
        let full: Vec<KetVector> = (0..3).map(|i| KetVector::basis(3, i)).collect();
        assert!(orthonormal_complement(&full, 3).unwrap().is_empty());
    }

    #[test]
    fn dependent_input_reports_rank() {
        let a = KetVector::from_real(&[1.0, 1.0, 0.0]);
        let b = KetVector::from_real(&[2.0, 2.0, 0.0]);
        assert!(matches!(
            orthonormal_complement(&[a, b], 3),
            Err(Error::RankDeficient { rank: 1, count: 2 })
        ));
    }
}
