//! Closed-form predictions for the block entropy in the two scaling regimes.
//!
//! For `𝓛 ≫ 1` the entropy grows as `((1 + 1/α)/6) ln 𝓛 + Υ₁^{(α)}`; for
//! `𝓛 < 1` the block carries a single partially occupied mode with occupation
//! `𝓛/2π`.

pub mod digamma;
pub mod upsilon;

use std::f64::consts::{LN_2, PI};

use crate::entropy::{mode_entropy, mode_renyi};
use crate::error::{Error, Result};
use crate::model::ModelParams;

pub use digamma::{digamma, digamma_critical_line};
pub use upsilon::{upsilon1, upsilon1_with, upsilon_alpha, upsilon_alpha_with, QuadratureConfig};

/// Even-index Bernoulli numbers `B_0, B_2, …, B_24`.
pub(crate) const BERNOULLI_EVEN: [f64; 13] = [
    1.0,
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

/// Below this scaled length the large-block law is reported with a warning.
pub const LARGE_BLOCK_WARN_BELOW: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    LargeL,
    SmallL,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::LargeL => "largeL",
            Regime::SmallL => "smallL",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticPrediction {
    pub params: ModelParams,
    pub alpha: f64,
    pub regime: Regime,
    pub value: f64,
    /// `Υ₁^{(α)}` for the large-block law, zero for the small-block one.
    pub constant_used: f64,
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("alpha must be positive, got {alpha}")))
    }
}

/// Coefficient `(1 + 1/α)/6` of `ln 𝓛`.
pub fn log_coefficient(alpha: f64) -> f64 {
    (1.0 + 1.0 / alpha) / 6.0
}

/// Large-block law with the default quadrature configuration.
pub fn large_block_entropy(params: &ModelParams, alpha: f64) -> Result<AsymptoticPrediction> {
    large_block_entropy_with(params, alpha, &QuadratureConfig::default())
}

pub fn large_block_entropy_with(
    params: &ModelParams,
    alpha: f64,
    config: &QuadratureConfig,
) -> Result<AsymptoticPrediction> {
    check_alpha(alpha)?;
    let scaled = params.scaled_length();
    if scaled <= 0.0 {
        return Err(Error::domain(format!(
            "large-block law needs a positive scaled length, got {scaled}"
        )));
    }
    if scaled < LARGE_BLOCK_WARN_BELOW {
        log::warn!("large-block law evaluated at scaled length {scaled:.4}, outside its accuracy range");
    }
    let constant = upsilon_alpha_with(alpha, config)?;
    Ok(AsymptoticPrediction {
        params: *params,
        alpha,
        regime: Regime::LargeL,
        value: log_coefficient(alpha) * scaled.ln() + constant,
        constant_used: constant,
    })
}

/// The von Neumann law written with `L` and `h` separately:
/// `(1/3) ln L + (1/6) ln(1 − (h/2)²) + (ln 2)/3 + Υ₁`.
pub fn large_block_entropy_expanded(params: &ModelParams) -> Result<f64> {
    let a = 0.5 * params.field();
    let gap = (1.0 - a) * (1.0 + a);
    if gap <= 0.0 {
        return Err(Error::domain("expanded law needs |h| < 2"));
    }
    Ok((params.length() as f64).ln() / 3.0 + gap.ln() / 6.0 + LN_2 / 3.0 + upsilon1()?)
}

/// Small-block law for `0 < 𝓛 < 1`: one mode with occupation `q = 𝓛/2π`.
///
/// The von Neumann value is the binary entropy `−q ln q − (1−q) ln(1−q)`,
/// the Rényi value `ln(q^α + (1−q)^α)/(1−α)`. Both leading behaviours as
/// `𝓛 → 0` are `q ln(1/q)`.
pub fn small_block_entropy(params: &ModelParams, alpha: f64) -> Result<AsymptoticPrediction> {
    check_alpha(alpha)?;
    let scaled = params.scaled_length();
    if !(scaled > 0.0 && scaled < 1.0) {
        return Err(Error::domain(format!(
            "small-block law needs 0 < scaled length < 1, got {scaled}"
        )));
    }
    // mode value ν = 2q − 1
    let nu = scaled / PI - 1.0;
    let value = if alpha == 1.0 {
        mode_entropy(nu)
    } else {
        mode_renyi(nu, alpha)
    };
    Ok(AsymptoticPrediction {
        params: *params,
        alpha,
        regime: Regime::SmallL,
        value,
        constant_used: 0.0,
    })
}

/// `(𝓛/π) ln(π/𝓛)`, the leading-logarithm estimate of the small-block
/// von Neumann entropy. It overshoots by about a factor two and is kept only
/// for comparison.
pub fn small_block_leading_log(scaled_length: f64) -> Result<f64> {
    if !(scaled_length > 0.0 && scaled_length < 1.0) {
        return Err(Error::domain("scaled length must lie in (0, 1)"));
    }
    Ok(scaled_length / PI * (PI / scaled_length).ln())
}
