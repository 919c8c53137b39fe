//! Entanglement entropy of a block of spins in the XX chain.
//!
//! The ground-state correlations of a block of `L` sites form a Toeplitz
//! matrix `G_L` whose spectrum fixes every entropy of the block. The crate
//! builds that matrix, diagonalizes it, evaluates von Neumann, Rényi and
//! Tsallis entropies, and compares them with closed-form asymptotics and with
//! exact diagonalization of short open chains.

pub mod asymptotics;
pub mod entropy;
pub mod error;
pub mod fisher_hartwig;
pub mod model;
pub mod oracle;
pub mod quadrature;
pub mod spectrum;
pub mod symbol;

pub use asymptotics::{
    large_block_entropy, small_block_entropy, upsilon1, upsilon_alpha, AsymptoticPrediction,
    QuadratureConfig, Regime,
};
pub use entropy::{
    block_entropy, density_matrix_spectrum, spectral_entropy, tsallis_from_renyi, DensitySpectrum,
    EntropyKind, EntropyReport,
};
pub use error::{Error, Result};
pub use fisher_hartwig::{beta_exponent, evaluate as fh_evaluate, FHEvaluation, JumpExponent};
pub use model::{ModelParams, CRITICAL_FIELD};
pub use oracle::{ed_ground_state_entropy, finite_chain_correlation_entropy, FiniteChainSpec, OracleResult};
pub use spectrum::{block_spectrum, correlation_spectrum, CorrelationSpectrum};
pub use symbol::{build_sign_matrix, SignMatrix, SymbolKind, SymbolSpec};
