use super::min_eig;
use crate::error::{Error, Result};
use crate::linalg::{check_dim, BipartiteShape, Operator};
use crate::maps::KrausPairMap;

/// `(I⊗Λ)(ρ)`: the map applied to every `dim_b × dim_b` block of `ρ`.
pub fn apply_on_b(m: &KrausPairMap, rho: &Operator, shape: BipartiteShape) -> Result<Operator> {
    shape.check(rho.dim())?;
    if m.dim_in() != shape.dim_b {
        return Err(Error::DimensionMismatch {
            expected: m.dim_in(),
            actual: shape.dim_b,
        });
    }
    let (da, db) = (shape.dim_a, shape.dim_b);
    let mut out = Operator::zeros(rho.dim());
    for i in 0..da {
        for j in 0..da {
            let block = Operator::from_fn(db, |k, l| rho[(shape.index(i, k), shape.index(j, l))]);
            let image = m.apply(&block)?;
            for k in 0..db {
                for l in 0..db {
                    out[(shape.index(i, k), shape.index(j, l))] = image[(k, l)];
                }
            }
        }
    }
    Ok(out)
}

/// Smallest eigenvalue of `(I⊗Λ)(ρ)`. For a positive map a negative value
/// shows that `ρ` is entangled.
pub fn verify_detection(m: &KrausPairMap, rho: &Operator, shape: BipartiteShape) -> Result<f64> {
    check_dim(shape.total(), rho.dim())?;
    Ok(min_eig(&apply_on_b(m, rho, shape)?))
}
