use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use indecomp_core::ToleranceConfig;

/// Build positive maps, certify indecomposability and search for PPT states
/// that their witnesses detect. All artifacts are UTF-8 JSON.
///
/// Exit codes: 0 success or certified, 2 invalid input, 3 criterion not
/// satisfied, 4 criterion inapplicable, 5 no result (no violation found or
/// no decomposition found).
#[derive(Debug, Parser)]
#[command(name = "indecomp", version)]
pub struct Cli {
    /// Seed for every randomised step.
    #[arg(long, global = true, env = "INDECOMP_SEED", default_value_t = 0)]
    pub seed: u64,

    /// Omit the creation timestamp so repeated runs give identical bytes.
    #[arg(long, global = true)]
    pub reproducible: bool,

    #[command(flatten)]
    pub tolerances: ToleranceArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct ToleranceArgs {
    /// Relative Hermiticity tolerance for operators read from input.
    #[arg(long, global = true, default_value_t = ToleranceConfig::default().hermiticity)]
    pub tol_hermiticity: f64,
    /// Eigenvalues above `-tol` count as nonnegative.
    #[arg(long, global = true, default_value_t = ToleranceConfig::default().psd_cutoff)]
    pub tol_psd: f64,
    /// Coefficient eigenvalues below `-tol` count as negative.
    #[arg(long, global = true, default_value_t = ToleranceConfig::default().equality)]
    pub tol_equality: f64,
    /// Smallest finder value accepted as strictly positive.
    #[arg(long, global = true, default_value_t = ToleranceConfig::default().finder_epsilon)]
    pub finder_epsilon: f64,
}

impl ToleranceArgs {
    pub fn config(&self) -> ToleranceConfig {
        ToleranceConfig {
            hermiticity: self.tol_hermiticity,
            psd_cutoff: self.tol_psd,
            equality: self.tol_equality,
            finder_epsilon: self.finder_epsilon,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Map constructors.
    #[command(subcommand)]
    Maps(MapsCommand),
    /// Run the coefficient-spectrum criterion on a map.
    Certify(CertifyArgs),
    /// Look for W = P + Q^{T_B} with P, Q positive.
    Decompose(DecomposeArgs),
    /// Look for a PPT state with negative witness value.
    Search(SearchArgs),
    /// Smallest eigenvalue of (I⊗Λ)(ρ) for a given state.
    VerifyState(VerifyArgs),
    /// Operator bases.
    #[command(subcommand)]
    Bases(BasesCommand),
    /// Unitary constructors.
    #[command(subcommand)]
    Unitary(UnitaryCommand),
}

#[derive(Debug, Subcommand)]
pub enum MapsCommand {
    /// Build a map and its witness.
    Build(BuildArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Reduction,
    ExtendedReduction,
    Piani,
    Choi,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// Dimension for the reduction families.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Phases of the antisymmetric unitary (one per 2×2 block).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub phases: Option<Vec<f64>>,
    /// Real orthogonal matrix for the antisymmetric unitary (operator JSON).
    #[arg(long)]
    pub orthogonal: Option<PathBuf>,
    /// Ready-made antisymmetric unitary (operator JSON); overrides phases.
    #[arg(long, conflicts_with_all = ["phases", "orthogonal"])]
    pub unitary: Option<PathBuf>,
    /// Draw the orthogonal matrix and phases from the seed.
    #[arg(long, conflicts_with_all = ["phases", "orthogonal", "unitary"])]
    pub random_unitary: bool,
    #[arg(long, default_value_t = 2)]
    pub d1: usize,
    #[arg(long, default_value_t = 2)]
    pub d2: usize,
    /// Coefficients of the first Piani factor (d1² values); default all ones.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub lambda1: Option<Vec<f64>>,
    /// Coefficients of the second Piani factor (d2² values); default all ones
    /// with the last one set to -1.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub lambda2: Option<Vec<f64>>,
    /// Map output file (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Witness output file; defaults to `<out stem>.witness.json` next to `--out`.
    #[arg(long)]
    pub witness_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long)]
    pub map: PathBuf,
    /// Number of random PSD operators fed to the finder.
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A witness is given directly or derived from a map.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct WitnessSource {
    #[arg(long)]
    pub witness: Option<PathBuf>,
    #[arg(long)]
    pub map: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub source: WitnessSource,
    #[arg(long, default_value_t = 10_000)]
    pub max_iter: usize,
    /// Residual below which the decomposition counts as found.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[command(flatten)]
    pub source: WitnessSource,
    #[arg(long, default_value_t = 4)]
    pub restarts: usize,
    #[arg(long, default_value_t = 300)]
    pub max_iter: usize,
    /// Gradient step; defaults to 1/‖W‖_F.
    #[arg(long)]
    pub step: Option<f64>,
    #[arg(long, default_value_t = 20)]
    pub dykstra_cycles: usize,
    /// A violation must satisfy Tr(Wρ) < -tol.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub map: PathBuf,
    /// Operator JSON, or a search report whose `state` is used.
    #[arg(long)]
    pub state: PathBuf,
    /// Dimension of the untouched first party (defaults to the map dimension).
    #[arg(long)]
    pub dim_a: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum BasesCommand {
    /// Orthonormal Hermitian basis with the identity first.
    Gellmann {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum UnitaryCommand {
    /// Antisymmetric unitary O·D·Oᵀ (even dimension only).
    Antisym {
        #[arg(long)]
        dim: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        phases: Option<Vec<f64>>,
        #[arg(long)]
        orthogonal: Option<PathBuf>,
        /// Draw the orthogonal matrix and phases from the seed.
        #[arg(long, conflicts_with_all = ["phases", "orthogonal"])]
        random: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}
