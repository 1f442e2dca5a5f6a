//! Seeded random matrices and states.
//!
//! Every generator takes an explicit RNG; [`seeded`] and [`substream`] give
//! reproducible, independent ChaCha streams so sampling loops can be split
//! across threads without changing results.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{KetVector, Operator, C64};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `index` derived from `seed`.
pub fn substream(seed: u64, index: u64) -> SeededRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index.wrapping_add(1));
    rng
}

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random unit vector (normalised complex Gaussian).
pub fn haar_pure_state<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> KetVector {
    KetVector::new((0..dim).map(|_| complex_gaussian(rng)).collect()).normalized()
}

/// Square matrix with i.i.d. complex Gaussian entries.
pub fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Operator {
    Operator::from_fn(dim, |_, _| complex_gaussian(rng))
}

pub fn gaussian_hermitian<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Operator {
    gaussian_matrix(rng, dim).hermitian_part()
}

/// `G G† / Tr(G G†)` with `G` a `dim × rank` complex Gaussian.
pub fn random_psd<R: Rng + ?Sized>(rng: &mut R, dim: usize, rank: usize) -> Operator {
    let cols: Vec<KetVector> = (0..rank)
        .map(|_| KetVector::new((0..dim).map(|_| complex_gaussian(rng)).collect()))
        .collect();
    let mut out = Operator::zeros(dim);
    for c in &cols {
        out += &Operator::projector(c);
    }
    let tr = out.trace().re;
    out.scale_real(1.0 / tr)
}

/// Random density matrix of random rank in `1..=dim`.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Operator {
    let rank = rng.gen_range(1..=dim);
    random_psd(rng, dim, rank)
}

/// Random real orthogonal matrix via Gram-Schmidt on a real Gaussian matrix.
pub fn random_orthogonal<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Operator {
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        for _ in 0..2 {
            for u in &cols {
                let c: f64 = u.iter().zip(&v).map(|(a, b)| a * b).sum();
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi -= c * ui;
                }
            }
        }
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-8 {
            cols.push(v.into_iter().map(|x| x / n).collect());
        }
    }
    Operator::from_fn(dim, |i, j| C64::new(cols[j][i], 0.0))
}
