//! Exact diagonalization of short open XX chains.
//!
//! Two independent routes to the entanglement entropy of a contiguous block:
//! the partial trace of the many-body ground state, and the eigenvalues of the
//! block correlation matrix built from the open-chain single-particle modes.
//!
//! Basis convention: bit value 1 is spin up, and site 1 is the most
//! significant bit of the state index (the slowest-varying label).

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::entropy::{renyi_of_probabilities, spectral_entropy, EntropyKind};
use crate::error::{Error, Result};
use crate::spectrum::{symmetric_eigenvalues, CorrelationSpectrum};

/// Largest chain handled by full-Hilbert-space diagonalization.
pub const MAX_ED_SITES: usize = 12;
/// Ground states closer than this to the first excited level are degenerate.
pub const DEGENERACY_GAP: f64 = 1e-10;
/// Single-particle energies below this magnitude make the filling ambiguous.
pub const ZERO_MODE_TOLERANCE: f64 = 1e-12;

/// An open chain of `n_sites` spins and the block `[block_start, block_start + block_len)`
/// (zero-based). [`FiniteChainSpec::new`] takes the first `block_len` sites.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiniteChainSpec {
    pub n_sites: usize,
    pub block_len: usize,
    pub block_start: usize,
    pub h: f64,
}

impl FiniteChainSpec {
    pub fn new(n_sites: usize, block_len: usize, h: f64) -> Result<Self> {
        Self::with_offset(n_sites, block_len, 0, h)
    }

    pub fn with_offset(n_sites: usize, block_len: usize, block_start: usize, h: f64) -> Result<Self> {
        if n_sites < 2 {
            return Err(Error::domain("chain needs at least two sites"));
        }
        if block_len == 0 || block_len >= n_sites {
            return Err(Error::domain(format!(
                "block length {block_len} must lie in 1..{}",
                n_sites - 1
            )));
        }
        if block_start + block_len > n_sites {
            return Err(Error::domain("block extends past the end of the chain"));
        }
        if !h.is_finite() {
            return Err(Error::domain("field must be finite"));
        }
        Ok(Self {
            n_sites,
            block_len,
            block_start,
            h,
        })
    }

    /// The block centred in the chain (left of centre when the parities differ).
    pub fn centered(n_sites: usize, block_len: usize, h: f64) -> Result<Self> {
        let start = n_sites.saturating_sub(block_len) / 2;
        Self::with_offset(n_sites, block_len, start, h)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleResult {
    pub entropy_partial_trace: f64,
    /// `None` when the single-particle spectrum has a zero mode.
    pub entropy_correlation: Option<f64>,
    pub ground_energy: f64,
    pub degeneracy_flag: bool,
}

impl OracleResult {
    pub fn discrepancy(&self) -> Option<f64> {
        self.entropy_correlation
            .map(|c| (c - self.entropy_partial_trace).abs())
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("alpha must be positive, got {alpha}")))
    }
}

/// `ε_k = −2 cos(πk/(N+1)) − h` for `k = 1..N`.
pub fn single_particle_energies(n_sites: usize, h: f64) -> Vec<f64> {
    let denom = (n_sites + 1) as f64;
    (1..=n_sites)
        .map(|k| -2.0 * (PI * k as f64 / denom).cos() - h)
        .collect()
}

fn filled_modes(spec: &FiniteChainSpec) -> Result<Vec<usize>> {
    let energies = single_particle_energies(spec.n_sites, spec.h);
    if let Some(e) = energies.iter().find(|e| e.abs() < ZERO_MODE_TOLERANCE) {
        return Err(Error::domain(format!(
            "single-particle level {e:.3e} sits at the Fermi energy; perturb h"
        )));
    }
    Ok((1..=spec.n_sites).filter(|&k| energies[k - 1] < 0.0).collect())
}

/// Ground energy of the many-body Hamiltonian from the filled modes.
pub fn free_fermion_ground_energy(spec: &FiniteChainSpec) -> Result<f64> {
    let energies = single_particle_energies(spec.n_sites, spec.h);
    let filled: f64 = filled_modes(spec)?.iter().map(|&k| energies[k - 1]).sum();
    Ok(2.0 * filled + spec.h * spec.n_sites as f64)
}

/// Eigenvalues `ν = 2p − 1` of the block correlation matrix.
pub fn finite_chain_spectrum(spec: &FiniteChainSpec) -> Result<CorrelationSpectrum> {
    let filled = filled_modes(spec)?;
    let len = spec.block_len;
    let denom = (spec.n_sites + 1) as f64;
    let norm = 2.0 / denom;
    let mut c = DMatrix::<f64>::zeros(len, len);
    for &k in &filled {
        let phase = PI * k as f64 / denom;
        let phi: Vec<f64> = (0..len)
            .map(|i| ((spec.block_start + i + 1) as f64 * phase).sin())
            .collect();
        for i in 0..len {
            for j in 0..=i {
                c[(i, j)] += norm * phi[i] * phi[j];
            }
        }
    }
    for i in 0..len {
        for j in 0..i {
            c[(j, i)] = c[(i, j)];
        }
    }
    let values = symmetric_eigenvalues(c)?;
    CorrelationSpectrum::from_values(values.into_iter().map(|p| 2.0 * p - 1.0).collect())
}

/// Block entropy from the finite-chain correlation matrix.
pub fn finite_chain_correlation_entropy(spec: &FiniteChainSpec, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let kind = if alpha == 1.0 {
        EntropyKind::VonNeumann
    } else {
        EntropyKind::Renyi
    };
    Ok(spectral_entropy(&finite_chain_spectrum(spec)?, alpha, kind)?.value)
}

fn sector_hamiltonian(n: usize, h: f64, basis: &[usize], index: &[usize]) -> DMatrix<f64> {
    let dim = basis.len();
    let mut m = DMatrix::<f64>::zeros(dim, dim);
    for (col, &s) in basis.iter().enumerate() {
        let up = s.count_ones() as f64;
        m[(col, col)] = -h * (2.0 * up - n as f64);
        for site in 0..n - 1 {
            // sites `site` and `site + 1`, most significant first
            let mask = 0b11 << (n - 2 - site);
            let pair = s & mask;
            if pair != 0 && pair != mask {
                m[(index[s ^ mask], col)] -= 2.0;
            }
        }
    }
    m
}

struct GroundState {
    vector: Vec<f64>,
    energy: f64,
    gap: f64,
}

fn ground_state(n: usize, h: f64) -> GroundState {
    let full = 1usize << n;
    let mut index = vec![usize::MAX; full];
    let mut candidates: Vec<(f64, Vec<f64>, Vec<usize>)> = Vec::new();
    let mut levels: Vec<f64> = Vec::new();
    for up in 0..=n {
        let basis: Vec<usize> = (0..full).filter(|s| s.count_ones() as usize == up).collect();
        for (i, &s) in basis.iter().enumerate() {
            index[s] = i;
        }
        let eig = SymmetricEigen::new(sector_hamiltonian(n, h, &basis, &index));
        let (imin, &emin) = eig
            .eigenvalues
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .expect("sector is non-empty");
        levels.extend(eig.eigenvalues.iter().copied());
        candidates.push((emin, eig.eigenvectors.column(imin).iter().copied().collect(), basis));
    }
    levels.sort_by(f64::total_cmp);
    let (energy, sector_vec, basis) = candidates
        .into_iter()
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .expect("at least one sector");
    let mut vector = vec![0.0; full];
    for (amp, s) in sector_vec.into_iter().zip(basis) {
        vector[s] = amp;
    }
    GroundState {
        vector,
        energy,
        gap: levels[1] - levels[0],
    }
}

/// Eigenvalues of the block reduced density matrix of `psi`.
pub fn reduced_density_spectrum(psi: &[f64], spec: &FiniteChainSpec) -> Result<Vec<f64>> {
    let n = spec.n_sites;
    if psi.len() != 1usize << n {
        return Err(Error::domain("state vector length must be 2^n_sites"));
    }
    let len = spec.block_len;
    let right = n - spec.block_start - len;
    let dim_a = 1usize << len;
    let dim_b = 1usize << (n - len);
    let mut m = DMatrix::<f64>::zeros(dim_a, dim_b);
    for (s, &amp) in psi.iter().enumerate() {
        let r = s & ((1 << right) - 1);
        let b = (s >> right) & (dim_a - 1);
        let l = s >> (right + len);
        m[(b, (l << right) | r)] = amp;
    }
    // The nonzero spectra of M Mᵀ and Mᵀ M coincide; use the smaller one.
    let gram = if dim_a <= dim_b {
        &m * m.transpose()
    } else {
        m.transpose() * &m
    };
    let mut values: Vec<f64> = SymmetricEigen::new(gram).eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Ground-state entropy of the block by exact diagonalization, with the
/// correlation-matrix value alongside.
pub fn ed_ground_state_entropy(spec: &FiniteChainSpec, alpha: f64) -> Result<OracleResult> {
    check_alpha(alpha)?;
    if spec.n_sites > MAX_ED_SITES {
        return Err(Error::Size(format!(
            "exact diagonalization is limited to {MAX_ED_SITES} sites, got {}",
            spec.n_sites
        )));
    }
    let gs = ground_state(spec.n_sites, spec.h);
    let degenerate = gs.gap < DEGENERACY_GAP;
    if degenerate {
        log::warn!("ground state of {spec:?} is degenerate (gap {:.3e})", gs.gap);
    }
    let probabilities = reduced_density_spectrum(&gs.vector, spec)?;
    let entropy_partial_trace = renyi_of_probabilities(&probabilities, alpha)?.max(0.0);
    let entropy_correlation = match finite_chain_correlation_entropy(spec, alpha) {
        Ok(v) => Some(v),
        Err(Error::Domain(_)) if degenerate => None,
        Err(e) => return Err(e),
    };
    Ok(OracleResult {
        entropy_partial_trace,
        entropy_correlation,
        ground_energy: gs.energy,
        degeneracy_flag: degenerate,
    })
}
