//! Complex digamma function.
//!
//! Upward recurrence `ψ(z) = ψ(z + 1) − 1/z` moves the argument out to
//! `|z| > 12`, where the Stirling-type expansion
//! `ψ(z) ~ ln z − 1/(2z) − Σ B_{2k} / (2k z^{2k})` is accurate to machine
//! precision with eight terms.

use num_complex::Complex64;

use super::BERNOULLI_EVEN;

const ASYMPTOTIC_RADIUS: f64 = 12.0;
const ASYMPTOTIC_TERMS: usize = 8;

/// `ψ(z)` for `z` away from the poles at non-positive integers.
pub fn digamma(z: Complex64) -> Complex64 {
    let mut z = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while z.re < 0.0 || z.norm() <= ASYMPTOTIC_RADIUS {
        shift -= z.inv();
        z += 1.0;
    }
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut power = inv2;
    let mut series = Complex64::new(0.0, 0.0);
    for k in 1..=ASYMPTOTIC_TERMS {
        series += power * (BERNOULLI_EVEN[k] / (2 * k) as f64);
        power *= inv2;
    }
    shift + z.ln() - 0.5 * inv - series
}

/// `Re ψ(1/2 + i w)`, which is also `Re ψ(1/2 − i w)`.
pub fn digamma_critical_line(w: f64) -> f64 {
    digamma(Complex64::new(0.5, w)).re
}
