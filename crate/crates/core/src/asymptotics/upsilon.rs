//! The constants `Υ₁` and `Υ₁^{(α)}` of the large-block entropy law.
//!
//! `Υ₁` is evaluated from the `t`-integral
//!
//! ```text
//! Υ₁ = −∫₀^∞ dt [ e^{−t}/(3t) + 1/(t sinh²(t/2)) − cosh(t/2)/(2 sinh³(t/2)) ]
//! ```
//!
//! whose last two terms each blow up like `4/t³` and cancel. Below
//! `series_cutoff` the cancelling pair is replaced by its Laurent series, which
//! follows from `1/sinh² s = Σ a_n s^{2n−2}` with
//! `a_n = −4ⁿ B_{2n} (2n−1)/(2n)!`.
//!
//! `Υ₁^{(α)}` is evaluated from the digamma representation after the
//! substitution `x = tanh(πw)`:
//!
//! ```text
//! Υ₁^{(α)} = −(4/π) ∫₀^∞ dw s_α(tanh πw) Re ψ(1/2 + i w)
//! ```
//!
//! At `α = 1` this is an independent second route to `Υ₁`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use super::digamma::digamma_critical_line;
use super::BERNOULLI_EVEN;
use crate::error::{Error, Result};
use crate::quadrature::integrate;

/// Upper limit of the `t`-integral; the integrand is `O(e^{−t})` beyond.
pub const T_MAX: f64 = 60.0;
/// Default upper limit of the `w`-integral at `α ≥ 1`.
pub const W_MAX: f64 = 20.0;

const MAX_SEGMENTS: usize = 4000;
const SERIES_TERMS: usize = 11;

/// Tolerances and break points for the constant-term integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Interior break point of the `t`-integral on `[series_cutoff, T_MAX]`.
    pub split_point: f64,
    /// Below this `t` the integrand is evaluated from its series.
    pub series_cutoff: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-13,
            rel_tol: 1e-13,
            split_point: 8.0,
            series_cutoff: 0.5,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !positive(self.abs_tol) || !(self.rel_tol.is_finite() && self.rel_tol >= 0.0) {
            return Err(Error::domain("quadrature tolerances must be positive"));
        }
        if !positive(self.split_point) || self.split_point >= T_MAX {
            return Err(Error::domain("split point must lie in (0, T_MAX)"));
        }
        if !positive(self.series_cutoff) || self.series_cutoff > 2.0 {
            // The series converges for t < 2π; 2 keeps it well inside.
            return Err(Error::domain("series cutoff must lie in (0, 2]"));
        }
        Ok(())
    }

    fn key(&self) -> [u64; 4] {
        [
            self.abs_tol.to_bits(),
            self.rel_tol.to_bits(),
            self.split_point.to_bits(),
            self.series_cutoff.to_bits(),
        ]
    }
}

/// Coefficients `c_n = n a_n / 2` of `s^{2n−3}`, `n ≥ 2`.
fn laurent_coefficients() -> &'static [f64; SERIES_TERMS] {
    static COEFFS: OnceLock<[f64; SERIES_TERMS]> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let mut out = [0.0; SERIES_TERMS];
        for (i, c) in out.iter_mut().enumerate() {
            let n = i + 2;
            let factorial: f64 = (1..=2 * n).map(|k| k as f64).product();
            let a_n = -(4f64.powi(n as i32)) * BERNOULLI_EVEN[n] * (2 * n - 1) as f64 / factorial;
            *c = 0.5 * n as f64 * a_n;
        }
        out
    })
}

/// The bracket of the `t`-integral, evaluated term by term.
pub fn upsilon1_integrand_direct(t: f64) -> f64 {
    let s = 0.5 * t;
    let sh = s.sinh();
    (-t).exp() / (3.0 * t) + 1.0 / (t * sh * sh) - s.cosh() / (2.0 * sh * sh * sh)
}

/// The same bracket with the cancelling pair replaced by its series.
pub fn upsilon1_integrand_series(t: f64) -> f64 {
    let s = 0.5 * t;
    let s2 = s * s;
    // Σ_{n≥2} c_n s^{2n−3}, Horner in s².
    let mut acc = 0.0;
    for &c in laurent_coefficients().iter().rev() {
        acc = acc * s2 + c;
    }
    (-t).exp_m1() / (3.0 * t) + acc * s
}

fn upsilon1_integrand(t: f64, cutoff: f64) -> f64 {
    if t == 0.0 {
        // Limit of the bracket at the origin.
        -1.0 / 3.0
    } else if t < cutoff {
        upsilon1_integrand_series(t)
    } else {
        upsilon1_integrand_direct(t)
    }
}

/// `Υ₁` from the `t`-integral, without caching.
pub fn compute_upsilon1(config: &QuadratureConfig) -> Result<f64> {
    config.validate()?;
    let cut = config.series_cutoff;
    let f = |t: f64| upsilon1_integrand(t, cut);
    let pieces = [(0.0, cut), (cut, config.split_point), (config.split_point, T_MAX)];
    let mut total = 0.0;
    for (a, b) in pieces {
        total += integrate(f, a, b, config.abs_tol / 3.0, config.rel_tol, MAX_SEGMENTS)?.value;
    }
    // Beyond T_MAX the bracket is e^{−t}(13/(3t) − 2) to leading order.
    total += (-T_MAX).exp() * (13.0 / (3.0 * T_MAX) - 2.0);
    Ok(-total)
}

/// `s_α(tanh πw)` written to avoid overflow and cancellation for large `w`.
fn renyi_weight(alpha: f64, w: f64) -> f64 {
    let x = PI * w.abs();
    if alpha == 1.0 {
        // ln(2 cosh x) − x tanh x
        (-2.0 * x).exp().ln_1p() + x * (1.0 - x.tanh())
    } else {
        ((-2.0 * alpha * x).exp().ln_1p() - alpha * (-2.0 * x).exp().ln_1p()) / (1.0 - alpha)
    }
}

fn w_cutoff(alpha: f64) -> f64 {
    W_MAX.max(7.0 / alpha.min(1.0))
}

/// `Υ₁^{(α)}` from the digamma integral, without caching. Valid at `α = 1`
/// too, where it gives `Υ₁` by the second route.
pub fn compute_upsilon_digamma_route(alpha: f64, config: &QuadratureConfig) -> Result<f64> {
    check_alpha(alpha)?;
    config.validate()?;
    let f = |w: f64| renyi_weight(alpha, w) * digamma_critical_line(w);
    let w_max = w_cutoff(alpha);
    let breaks = [0.0, 0.5, 2.0, 6.0, w_max];
    let mut total = 0.0;
    for pair in breaks.windows(2) {
        total += integrate(f, pair[0], pair[1], config.abs_tol / 4.0, config.rel_tol, MAX_SEGMENTS)?
            .value;
    }
    // Tail with Re ψ ≈ ln w and s_α ≈ (e^{−2απw} − α e^{−2πw})/(1 − α).
    let tail = if alpha == 1.0 {
        w_max.ln() * (w_max + 1.0 / PI) * (-2.0 * PI * w_max).exp()
    } else {
        w_max.ln()
            * ((-2.0 * alpha * PI * w_max).exp() / (2.0 * PI * alpha)
                - alpha * (-2.0 * PI * w_max).exp() / (2.0 * PI))
            / (1.0 - alpha)
    };
    Ok(-4.0 / PI * (total + tail))
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("alpha must be positive, got {alpha}")))
    }
}

type CacheKey = (u64, [u64; 4]);
type Slot = Arc<OnceLock<Result<f64>>>;

fn cache() -> &'static Mutex<HashMap<CacheKey, Slot>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Slot>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached(alpha: f64, config: &QuadratureConfig, compute: impl FnOnce() -> Result<f64>) -> Result<f64> {
    let key = (alpha.to_bits(), config.key());
    let slot = {
        let mut map = cache().lock().unwrap_or_else(|e| e.into_inner());
        Arc::clone(map.entry(key).or_default())
    };
    // Populated outside the map lock; concurrent callers for the same key
    // block on the slot, not on the whole cache.
    slot.get_or_init(compute).clone()
}

/// `Υ₁` with the default configuration, memoized.
pub fn upsilon1() -> Result<f64> {
    upsilon1_with(&QuadratureConfig::default())
}

/// `Υ₁` for a given configuration, memoized per configuration.
pub fn upsilon1_with(config: &QuadratureConfig) -> Result<f64> {
    cached(1.0, config, || compute_upsilon1(config))
}

/// `Υ₁^{(α)}` with the default configuration, memoized.
pub fn upsilon_alpha(alpha: f64) -> Result<f64> {
    upsilon_alpha_with(alpha, &QuadratureConfig::default())
}

/// `Υ₁^{(α)}`; at `α = 1` this is [`upsilon1_with`].
pub fn upsilon_alpha_with(alpha: f64, config: &QuadratureConfig) -> Result<f64> {
    check_alpha(alpha)?;
    if alpha == 1.0 {
        return upsilon1_with(config);
    }
    cached(alpha, config, || compute_upsilon_digamma_route(alpha, config))
}
