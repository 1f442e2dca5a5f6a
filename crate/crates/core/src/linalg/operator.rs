use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// Dense complex square matrix stored row-major.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "OperatorJson", into = "OperatorJson")]
pub struct Operator {
    dim: usize,
    data: Vec<C64>,
}

/// Wire form: `{"dim": n, "entries": [[re, im], ...]}` in row-major order.
#[derive(Serialize, Deserialize)]
struct OperatorJson {
    dim: usize,
    entries: Vec<[f64; 2]>,
}

impl TryFrom<OperatorJson> for Operator {
    type Error = Error;

    fn try_from(json: OperatorJson) -> Result<Self> {
        if json.entries.len() != json.dim * json.dim {
            return Err(Error::DimensionMismatch {
                expected: json.dim * json.dim,
                actual: json.entries.len(),
            });
        }
        let data = json.entries.iter().map(|&[re, im]| C64::new(re, im)).collect();
        Ok(Self { dim: json.dim, data })
    }
}

impl From<Operator> for OperatorJson {
    fn from(op: Operator) -> Self {
        Self {
            dim: op.dim,
            entries: op.data.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl Operator {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    /// Builds an operator from row-major entries; the length must be a perfect square.
    pub fn from_row_major(data: Vec<C64>) -> Result<Self> {
        let dim = exact_sqrt(data.len()).ok_or(Error::NotSquareLength(data.len()))?;
        Ok(Self { dim, data })
    }

    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                actual: entries.len(),
            });
        }
        Ok(Self {
            dim,
            data: entries.iter().map(|&x| C64::new(x, 0.0)).collect(),
        })
    }

    pub fn diag_real(values: &[f64]) -> Self {
        Self::from_fn(values.len(), |i, j| {
            if i == j {
                C64::new(values[i], 0.0)
            } else {
                ZERO
            }
        })
    }

    /// `|a⟩⟨b|`
    pub fn outer(a: &KetVector, b: &KetVector) -> Result<Self> {
        check_dim(a.dim(), b.dim())?;
        Ok(Self::from_fn(a.dim(), |i, j| a[i] * b[j].conj()))
    }

    /// `|a⟩⟨a|`
    pub fn projector(a: &KetVector) -> Self {
        Self::from_fn(a.dim(), |i, j| a[i] * a[j].conj())
    }

    /// `|i⟩⟨j|` in dimension `dim`.
    pub fn unit(dim: usize, i: usize, j: usize) -> Self {
        let mut out = Self::zeros(dim);
        out[(i, j)] = ONE;
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "max_abs_diff on operators of different size");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |A - A†|`
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    /// `(A + A†)/2`
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.dim, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5)
    }

    /// Frobenius inner product `Tr(A† B)`.
    pub fn inner(&self, other: &Self) -> C64 {
        assert_eq!(self.dim, other.dim, "inner product of operators of different size");
        self.data.iter().zip(&other.data).map(|(a, b)| a.conj() * b).sum()
    }

    /// `Tr(A B)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> C64 {
        assert_eq!(self.dim, other.dim, "trace of product of operators of different size");
        let n = self.dim;
        let mut acc = ZERO;
        for i in 0..n {
            for k in 0..n {
                acc += self.data[i * n + k] * other.data[k * n + i];
            }
        }
        acc
    }

    pub fn apply(&self, ket: &KetVector) -> KetVector {
        assert_eq!(self.dim, ket.dim(), "operator applied to ket of different size");
        let amps = (0..self.dim)
            .map(|i| self.row(i).iter().zip(ket.amps()).map(|(a, b)| a * b).sum())
            .collect();
        KetVector::new(amps)
    }

    /// `⟨ψ|A|ψ⟩`
    pub fn expectation(&self, ket: &KetVector) -> C64 {
        ket.inner(&self.apply(ket))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "product of operators of different size");
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            let out_row = &mut out[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                let b_row = &other.data[k * n..(k + 1) * n];
                for (o, b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        Self { dim: n, data: out }
    }

    /// `A B†`
    pub fn matmul_adjoint(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "product of operators of different size");
        let n = self.dim;
        Self::from_fn(n, |i, j| {
            self.row(i)
                .iter()
                .zip(other.row(j))
                .map(|(a, b)| a * b.conj())
                .sum()
        })
    }
}

impl Index<(usize, usize)> for Operator {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for Operator {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Operator({}x{})", self.dim, self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = self
                .row(i)
                .iter()
                .map(|z| format!("{:+.4}{:+.4}i", z.re, z.im))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

macro_rules! elementwise {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Operator> for &Operator {
            type Output = Operator;

            fn $method(self, rhs: &Operator) -> Operator {
                assert_eq!(self.dim, rhs.dim, "elementwise op on operators of different size");
                Operator {
                    dim: self.dim,
                    data: self.data.iter().zip(&rhs.data).map(|(a, b)| a $op b).collect(),
                }
            }
        }

        impl $trait<Operator> for Operator {
            type Output = Operator;

            fn $method(self, rhs: Operator) -> Operator {
                &self $op &rhs
            }
        }

        impl $trait<&Operator> for Operator {
            type Output = Operator;

            fn $method(self, rhs: &Operator) -> Operator {
                &self $op rhs
            }
        }
    };
}

elementwise!(Add, add, +);
elementwise!(Sub, sub, -);

impl AddAssign<&Operator> for Operator {
    fn add_assign(&mut self, rhs: &Operator) {
        assert_eq!(self.dim, rhs.dim, "elementwise op on operators of different size");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }
}

impl SubAssign<&Operator> for Operator {
    fn sub_assign(&mut self, rhs: &Operator) {
        assert_eq!(self.dim, rhs.dim, "elementwise op on operators of different size");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
    }
}

impl Mul<&Operator> for &Operator {
    type Output = Operator;

    fn mul(self, rhs: &Operator) -> Operator {
        self.matmul(rhs)
    }
}

impl Mul<Operator> for Operator {
    type Output = Operator;

    fn mul(self, rhs: Operator) -> Operator {
        self.matmul(&rhs)
    }
}

impl Neg for &Operator {
    type Output = Operator;

    fn neg(self) -> Operator {
        self.scale_real(-1.0)
    }
}

impl Neg for Operator {
    type Output = Operator;

    fn neg(self) -> Operator {
        self.scale_real(-1.0)
    }
}

/// Column vector of complex amplitudes.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "KetJson", into = "KetJson")]
pub struct KetVector {
    amps: Vec<C64>,
}

#[derive(Serialize, Deserialize)]
struct KetJson {
    dim: usize,
    amps: Vec<[f64; 2]>,
}

impl TryFrom<KetJson> for KetVector {
    type Error = Error;

    fn try_from(json: KetJson) -> Result<Self> {
        check_dim(json.dim, json.amps.len())?;
        Ok(Self::new(json.amps.iter().map(|&[re, im]| C64::new(re, im)).collect()))
    }
}

impl From<KetVector> for KetJson {
    fn from(k: KetVector) -> Self {
        Self {
            dim: k.dim(),
            amps: k.amps.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl KetVector {
    pub fn new(amps: Vec<C64>) -> Self {
        Self { amps }
    }

    pub fn from_real(amps: &[f64]) -> Self {
        Self::new(amps.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Self::new(vec![ZERO; dim])
    }

    /// Computational basis vector `|index⟩`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut k = Self::zeros(dim);
        k.amps[index] = ONE;
        k
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    pub fn into_amps(self) -> Vec<C64> {
        self.amps
    }

    /// `⟨self|other⟩`, antilinear in `self`.
    pub fn inner(&self, other: &Self) -> C64 {
        assert_eq!(self.dim(), other.dim(), "inner product of kets of different size");
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm_sqr() - 1.0).abs() <= tol
    }

    /// Unit vector in the same direction; the zero vector is returned unchanged.
    pub fn normalized(&self) -> Self {
        let n = self.norm();
        if n == 0.0 {
            return self.clone();
        }
        self.scale(C64::new(1.0 / n, 0.0))
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::new(self.amps.iter().map(|z| z * s).collect())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.amps.iter().map(|z| z.conj()).collect())
    }

    pub fn kron(&self, other: &Self) -> Self {
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Self::new(amps)
    }

    /// `self += s · other`
    pub fn axpy(&mut self, s: C64, other: &Self) {
        assert_eq!(self.dim(), other.dim(), "axpy on kets of different size");
        for (a, b) in self.amps.iter_mut().zip(&other.amps) {
            *a += s * b;
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim(), "comparing kets of different size");
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Index<usize> for KetVector {
    type Output = C64;

    fn index(&self, i: usize) -> &C64 {
        &self.amps[i]
    }
}

impl IndexMut<usize> for KetVector {
    fn index_mut(&mut self, i: usize) -> &mut C64 {
        &mut self.amps[i]
    }
}

impl Add<&KetVector> for &KetVector {
    type Output = KetVector;

    fn add(self, rhs: &KetVector) -> KetVector {
        let mut out = self.clone();
        out.axpy(ONE, rhs);
        out
    }
}

impl Sub<&KetVector> for &KetVector {
    type Output = KetVector;

    fn sub(self, rhs: &KetVector) -> KetVector {
        let mut out = self.clone();
        out.axpy(-ONE, rhs);
        out
    }
}

impl fmt::Debug for KetVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let amps: Vec<String> = self
            .amps
            .iter()
            .map(|z| format!("{:+.4}{:+.4}i", z.re, z.im))
            .collect();
        write!(f, "KetVector[{}]", amps.join(", "))
    }
}

/// Factorisation `dim = dim_a · dim_b` of a bipartite space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BipartiteShape {
    pub dim_a: usize,
    pub dim_b: usize,
}

impl BipartiteShape {
    pub fn new(dim_a: usize, dim_b: usize) -> Self {
        Self { dim_a, dim_b }
    }

    /// `d ⊗ d`
    pub fn square(d: usize) -> Self {
        Self::new(d, d)
    }

    pub fn total(&self) -> usize {
        self.dim_a * self.dim_b
    }

    /// Row-major composite index of `|i⟩|k⟩`.
    pub fn index(&self, i: usize, k: usize) -> usize {
        i * self.dim_b + k
    }

    pub fn check(&self, dim: usize) -> Result<()> {
        check_dim(self.total(), dim)
    }
}

pub(crate) fn check_dim(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, actual })
    }
}

pub(crate) fn exact_sqrt(n: usize) -> Option<usize> {
    let r = (n as f64).sqrt().round() as usize;
    (r * r == n && r > 0).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_layout_is_row_major_pairs() {
        let mut op = Operator::zeros(2);
        op[(0, 1)] = C64::new(1.5, -2.0);
        let json = serde_json::to_value(&op).unwrap();
        assert_eq!(json["dim"], 2);
        assert_eq!(json["entries"][1][0], 1.5);
        assert_eq!(json["entries"][1][1], -2.0);
        let back: Operator = serde_json::from_value(json).unwrap();
        assert_eq!(back, op);
    }

    #[test]
    fn json_rejects_wrong_entry_count() {
        let bad = r#"{"dim": 2, "entries": [[1,0],[0,0],[0,0]]}"#;
        assert!(serde_json::from_str::<Operator>(bad).is_err());
    }

    #[test]
    fn shape_serializes_camel_case() {
        let json = serde_json::to_string(&BipartiteShape::new(2, 3)).unwrap();
        assert_eq!(json, r#"{"dimA":2,"dimB":3}"#);
    }

    #[test]
    fn matmul_adjoint_agrees_with_explicit_product() {
        let a = Operator::from_fn(3, |i, j| C64::new(i as f64, j as f64 - 1.0));
        let b = Operator::from_fn(3, |i, j| C64::new((i * j) as f64, 0.5));
        assert!(a.matmul_adjoint(&b).max_abs_diff(&(&a * &b.adjoint())) < 1e-14);
    }

    #[test]
    fn trace_product_matches_trace_of_product() {
        let a = Operator::from_fn(4, |i, j| C64::new(i as f64 - j as f64, 0.25 * i as f64));
        let b = Operator::from_fn(4, |i, j| C64::new(1.0 + (i + 2 * j) as f64, -0.5));
        assert!((a.trace_product(&b) - (&a * &b).trace()).norm() < 1e-12);
    }

    #[test]
    fn from_row_major_needs_square_length() {
        assert!(matches!(
            Operator::from_row_major(vec![ONE; 5]),
            Err(Error::NotSquareLength(5))
        ));
    }
}
