//! Block entropies from the correlation spectrum.
//!
//! The reduced density matrix factorizes into independent modes with
//! occupation `(1 + ν)/2`, so every entropy is a sum over `ν_m` of a one-mode
//! function. For short blocks the full `2^L` density spectrum can also be
//! enumerated, which gives an independent route to the same numbers.

use std::f64::consts::LN_2;

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::spectrum::{block_spectrum, CorrelationSpectrum};

/// Largest block whose density spectrum is enumerated explicitly.
pub const MAX_DENSITY_ORDER: usize = 20;

/// Modes this close to `|ν| = 1` are treated as pure.
const PURE_MODE_THRESHOLD: f64 = 1.0 - 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EntropyKind {
    VonNeumann,
    Renyi,
    Tsallis,
}

/// One entropy value, in nats.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyReport {
    /// Present when the report was produced from model parameters.
    pub params: Option<ModelParams>,
    pub order: usize,
    pub alpha: f64,
    pub kind: EntropyKind,
    pub value: f64,
    /// Set when `|h| = 2`, where the entropy is zero by definition.
    pub critical_boundary: bool,
}

/// Below this `|α − 1|` Rényi sums use [`log_trace_power_near_one`].
const NEAR_ONE: f64 = 0.5;

/// `ln(Σ p^α / Σ p)` as `ln1p(Σ p expm1((α−1) ln p) / Σ p)`. Dividing by the
/// total keeps round-off in the normalization from being amplified by
/// `1/(1 − α)`.
fn log_trace_power_near_one(probabilities: &[f64], alpha: f64) -> f64 {
    let delta = alpha - 1.0;
    let (total, excess) = probabilities
        .iter()
        .filter(|&&p| p > 0.0)
        .fold((0.0, 0.0), |(t, e), &p| (t + p, e + p * (delta * p.ln()).exp_m1()));
    (excess / total).ln_1p()
}

fn x_ln_x(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// `e(x, ν) = −((x+ν)/2) ln((x+ν)/2) − ((x−ν)/2) ln((x−ν)/2)`, with
/// `0 ln 0 = 0`.
pub fn binary_entropy_term(x: f64, nu: f64) -> Result<f64> {
    if !(x >= nu.abs()) {
        return Err(Error::domain(format!(
            "binary entropy term needs x >= |nu|, got x = {x}, nu = {nu}"
        )));
    }
    let plus = 0.5 * (x + nu);
    let minus = 0.5 * (x - nu);
    Ok(-x_ln_x(plus) - x_ln_x(minus))
}

/// Von Neumann contribution `e(1, ν)` of a single mode.
pub fn mode_entropy(nu: f64) -> f64 {
    if nu.abs() >= PURE_MODE_THRESHOLD {
        return 0.0;
    }
    let p = 0.5 * (1.0 + nu);
    let q = 0.5 * (1.0 - nu);
    -p * p.ln() - q * q.ln()
}

/// Rényi contribution `s_α(ν) = ln(((1+ν)/2)^α + ((1−ν)/2)^α) / (1 − α)`.
///
/// Near `α = 1` the numerator is formed as `ln(1 + Σ p (p^{α−1} − 1))`,
/// which vanishes with `α − 1` without cancellation. Elsewhere it is
/// `α ln p_max + ln(1 + (p_min/p_max)^α)` so the smaller power may underflow
/// harmlessly.
pub fn mode_renyi(nu: f64, alpha: f64) -> f64 {
    if alpha == 1.0 {
        return mode_entropy(nu);
    }
    let p = 0.5 * (1.0 + nu);
    let q = 0.5 * (1.0 - nu);
    if (alpha - 1.0).abs() < NEAR_ONE {
        return log_trace_power_near_one(&[p, q], alpha) / (1.0 - alpha);
    }
    let (hi, lo) = if p >= q { (p, q) } else { (q, p) };
    let log_sum = alpha * hi.ln() + (lo / hi).powf(alpha).ln_1p();
    log_sum / (1.0 - alpha)
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("alpha must be positive, got {alpha}")))
    }
}

fn report(spec: &CorrelationSpectrum, alpha: f64, kind: EntropyKind, value: f64) -> EntropyReport {
    EntropyReport {
        params: None,
        order: spec.len(),
        alpha,
        kind,
        value,
        critical_boundary: false,
    }
}

/// `S = Σ_m e(1, ν_m)`.
pub fn von_neumann_entropy(spec: &CorrelationSpectrum) -> EntropyReport {
    let value = spec.values().iter().map(|&nu| mode_entropy(nu)).sum();
    report(spec, 1.0, EntropyKind::VonNeumann, value)
}

/// `S_α = Σ_m s_α(ν_m)`. `α = 1` gives the von Neumann value.
pub fn renyi_entropy(spec: &CorrelationSpectrum, alpha: f64) -> Result<EntropyReport> {
    check_alpha(alpha)?;
    let value = if alpha == 1.0 {
        von_neumann_entropy(spec).value
    } else {
        spec.values().iter().map(|&nu| mode_renyi(nu, alpha)).sum()
    };
    Ok(report(spec, alpha, EntropyKind::Renyi, value))
}

/// Tsallis entropy `(Tr ρ^α − 1)/(1 − α) = (e^{(1−α) S_α} − 1)/(1 − α)`.
pub fn tsallis_entropy(spec: &CorrelationSpectrum, alpha: f64) -> Result<EntropyReport> {
    let renyi = renyi_entropy(spec, alpha)?.value;
    let value = tsallis_from_renyi(renyi, alpha);
    Ok(report(spec, alpha, EntropyKind::Tsallis, value))
}

/// Maps a Rényi entropy onto the Tsallis entropy of the same state.
pub fn tsallis_from_renyi(renyi: f64, alpha: f64) -> f64 {
    if alpha == 1.0 {
        renyi
    } else {
        ((1.0 - alpha) * renyi).exp_m1() / (1.0 - alpha)
    }
}

/// Dispatches on `kind`. `alpha` is ignored for von Neumann.
pub fn spectral_entropy(
    spec: &CorrelationSpectrum,
    alpha: f64,
    kind: EntropyKind,
) -> Result<EntropyReport> {
    match kind {
        EntropyKind::VonNeumann => Ok(von_neumann_entropy(spec)),
        EntropyKind::Renyi => renyi_entropy(spec, alpha),
        EntropyKind::Tsallis => tsallis_entropy(spec, alpha),
    }
}

/// Entropy of the block described by `params`.
///
/// At `|h| = 2` the ground state is a product state: the result is zero with
/// `critical_boundary` set, and no matrix is built.
pub fn block_entropy(params: &ModelParams, alpha: f64, kind: EntropyKind) -> Result<EntropyReport> {
    if kind != EntropyKind::VonNeumann {
        check_alpha(alpha)?;
    }
    let alpha = if kind == EntropyKind::VonNeumann { 1.0 } else { alpha };
    if params.at_critical_boundary() {
        return Ok(EntropyReport {
            params: Some(*params),
            order: params.length(),
            alpha,
            kind,
            value: 0.0,
            critical_boundary: true,
        });
    }
    let spec = block_spectrum(params)?;
    let mut r = spectral_entropy(&spec, alpha, kind)?;
    r.params = Some(*params);
    Ok(r)
}

/// All `2^L` eigenvalues of the block density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensitySpectrum {
    eigenvalues: Vec<f64>,
}

impl DensitySpectrum {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn total(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    pub fn shannon_entropy(&self) -> f64 {
        shannon_entropy(&self.eigenvalues)
    }

    /// `Tr ρ^α`.
    pub fn trace_power(&self, alpha: f64) -> f64 {
        trace_power(&self.eigenvalues, alpha)
    }
}

/// `∏_i (1 + (−1)^{x_i} ν_i)/2` over all `x ∈ {0,1}^L`.
pub fn density_matrix_spectrum(spec: &CorrelationSpectrum) -> Result<DensitySpectrum> {
    if spec.len() > MAX_DENSITY_ORDER {
        return Err(Error::Size(format!(
            "density spectrum of {} modes exceeds the limit of {MAX_DENSITY_ORDER}",
            spec.len()
        )));
    }
    let mut eigenvalues = Vec::with_capacity(1 << spec.len());
    eigenvalues.push(1.0);
    for &nu in spec.values() {
        let p = 0.5 * (1.0 + nu);
        let q = 0.5 * (1.0 - nu);
        let n = eigenvalues.len();
        for i in 0..n {
            let w = eigenvalues[i];
            eigenvalues[i] = w * p;
            eigenvalues.push(w * q);
        }
    }
    Ok(DensitySpectrum { eigenvalues })
}

/// `−Σ p ln p` over a probability list.
pub fn shannon_entropy(probabilities: &[f64]) -> f64 {
    -probabilities.iter().map(|&p| x_ln_x(p.max(0.0))).sum::<f64>()
}

/// `Σ p^α` over a probability list.
pub fn trace_power(probabilities: &[f64], alpha: f64) -> f64 {
    probabilities.iter().map(|&p| p.max(0.0).powf(alpha)).sum()
}

/// Rényi entropy of a probability list; `α = 1` gives Shannon.
pub fn renyi_of_probabilities(probabilities: &[f64], alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if alpha == 1.0 {
        Ok(shannon_entropy(probabilities))
    } else if (alpha - 1.0).abs() < NEAR_ONE {
        Ok(log_trace_power_near_one(probabilities, alpha) / (1.0 - alpha))
    } else {
        Ok(trace_power(probabilities, alpha).ln() / (1.0 - alpha))
    }
}

/// Upper bound `L ln 2` on von Neumann and Rényi entropies of `L` sites.
pub fn max_entropy(order: usize) -> f64 {
    order as f64 * LN_2
}
