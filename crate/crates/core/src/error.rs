use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("operator is not Hermitian (max |A - A†| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("operator is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("length {0} is not a perfect square")]
    NotSquareLength(usize),

    #[error("input vectors are linearly dependent (rank {rank} of {count})")]
    RankDeficient { rank: usize, count: usize },

    #[error("no antisymmetric unitary exists in odd dimension {0}: an antisymmetric matrix of odd size always has a zero eigenvalue")]
    OddDimension(usize),

    #[error("matrix is not real orthogonal (max |OᵀO - I| = {deviation:e})")]
    NotOrthogonal { deviation: f64 },

    #[error("operator is not an antisymmetric unitary (antisymmetry {antisymmetry:e}, unitarity {unitarity:e})")]
    NotAntisymmetricUnitary { antisymmetry: f64, unitarity: f64 },

    #[error("map is not square: dim_in {dim_in} != dim_out {dim_out}")]
    NonSquareMap { dim_in: usize, dim_out: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("Piani positivity condition violated: {0}")]
    PianiCondition(String),

    #[error("positive-expectation finder is undefined for a generic subspace")]
    GenericFamily,

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
