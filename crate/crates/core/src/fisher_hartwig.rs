//! Asymptotics of the Toeplitz determinant `D_L(λ) = det(λ I − G_L)`.
//!
//! The shifted symbol `λ − g(θ)` has two jumps at `±k_F` with a common
//! exponent `β(λ)`, which gives
//!
//! ```text
//! D_L(λ) ~ (2 − 2 cos 2k_F)^{−β²} [G(1+β) G(1−β)]² [(λ+1) ((λ+1)/(λ−1))^{−k_F/π}]^L L^{−2β²}
//! ```
//!
//! Everything is evaluated in logarithmic form; every power uses the same
//! logarithm branch as `β`, so `((λ+1)/(λ−1))^{−k_F/π} = exp(−2iβ k_F)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::spectrum::{block_spectrum, CorrelationSpectrum};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Default truncation of the Barnes product.
pub const BARNES_TERMS: usize = 2000;
/// Distance below which `λ` is treated as an eigenvalue of `G_L`.
pub const POLE_TOLERANCE: f64 = 1e-15;

/// `β(λ)` together with the `λ` it came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JumpExponent {
    pub lambda: Complex64,
    pub beta: Complex64,
}

impl JumpExponent {
    /// `ln((λ+1)/(λ−1)) = 2πi β` on the fixed branch.
    pub fn log_ratio(&self) -> Complex64 {
        Complex64::new(0.0, 2.0 * PI) * self.beta
    }
}

/// Comparison of the asymptotic and exact determinants at one `(λ, L)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FHEvaluation {
    pub lambda: Complex64,
    pub order: usize,
    pub asymptotic: Complex64,
    pub exact: Complex64,
    /// `exact / asymptotic`, formed from the logarithms.
    pub ratio: Complex64,
}

impl FHEvaluation {
    pub fn relative_error(&self) -> f64 {
        (self.ratio - 1.0).norm()
    }
}

fn check_lambda(lambda: Complex64) -> Result<()> {
    if !(lambda.re.is_finite() && lambda.im.is_finite()) {
        return Err(Error::domain("lambda must be finite"));
    }
    if lambda.im == 0.0 && lambda.re.abs() <= 1.0 {
        return Err(Error::domain(format!(
            "lambda = {} lies on the cut [-1, 1]",
            lambda.re
        )));
    }
    Ok(())
}

/// Principal-branch logarithm with `arg ∈ [−π, π)`.
fn log_half_open(z: Complex64) -> Complex64 {
    let mut arg = z.arg();
    if arg == PI {
        arg = -PI;
    }
    Complex64::new(z.norm().ln(), arg)
}

/// `β(λ) = ln((λ+1)/(λ−1)) / (2πi)` with `−π ≤ arg < π`.
pub fn beta_exponent(lambda: Complex64) -> Result<JumpExponent> {
    check_lambda(lambda)?;
    let ratio = (lambda + 1.0) / (lambda - 1.0);
    let beta = log_half_open(ratio) / Complex64::new(0.0, 2.0 * PI);
    if beta.re.abs() >= 0.5 {
        return Err(Error::integrity(format!(
            "jump exponent {beta} left the window |Re β| < 1/2"
        )));
    }
    Ok(JumpExponent { lambda, beta })
}

/// `ζ(s) − Σ_{n≤N} n^{−s}` by Euler-Maclaurin, for `s ≥ 3`.
fn zeta_tail(s: f64, n: usize) -> f64 {
    let n = n as f64;
    n.powf(1.0 - s) / (s - 1.0) - 0.5 * n.powf(-s) + s / 12.0 * n.powf(-s - 1.0)
        - s * (s + 1.0) * (s + 2.0) / 720.0 * n.powf(-s - 3.0)
}

fn is_nonzero_integer(beta: Complex64) -> bool {
    beta.im == 0.0 && beta.re != 0.0 && beta.re.fract() == 0.0
}

/// `ln[G(1+β) G(1−β)]` from the product with `terms` factors. `None` when
/// the pair vanishes.
pub fn ln_barnes_g_pair_with(beta: Complex64, terms: usize) -> Result<Option<Complex64>> {
    if !(beta.re.is_finite() && beta.im.is_finite()) {
        return Err(Error::domain("beta must be finite"));
    }
    if terms == 0 {
        return Err(Error::domain("Barnes product needs at least one term"));
    }
    if is_nonzero_integer(beta) {
        return Ok(None);
    }
    let u = beta * beta;
    let n_max = terms as f64;
    if u.norm() > 0.25 * n_max * n_max {
        return Err(Error::computational(format!(
            "Barnes product with {terms} terms does not resolve |β| = {}",
            beta.norm()
        )));
    }
    let mut acc = -(1.0 + EULER_GAMMA) * u;
    // Sum from the small end so the late terms are not swamped.
    for n in (1..=terms).rev() {
        let nf = n as f64;
        acc += nf * (1.0 - u / (nf * nf)).ln() + u / nf;
    }
    // Σ_{n>N} [n ln(1 − u/n²) + u/n] = −Σ_{j≥2} u^j ζ_N(2j−1) / j
    let mut power = u;
    let mut tail = Complex64::new(0.0, 0.0);
    for j in 2..=8 {
        power *= u;
        let term = power * (zeta_tail((2 * j - 1) as f64, terms) / j as f64);
        tail -= term;
        if term.norm() < 1e-18 * acc.norm().max(1.0) {
            break;
        }
    }
    Ok(Some(acc + tail))
}

pub fn ln_barnes_g_pair(beta: Complex64) -> Result<Option<Complex64>> {
    ln_barnes_g_pair_with(beta, BARNES_TERMS)
}

/// `G(1+β) G(1−β)`, exactly zero at nonzero integers.
pub fn barnes_g_pair(beta: Complex64) -> Result<Complex64> {
    Ok(ln_barnes_g_pair(beta)?.map_or(Complex64::new(0.0, 0.0), |l| l.exp()))
}

fn check_order(order: usize, fermi_momentum: f64) -> Result<()> {
    if order == 0 {
        return Err(Error::domain("block length must be at least 1"));
    }
    if !(fermi_momentum > 0.0 && fermi_momentum < PI) {
        return Err(Error::domain(format!(
            "Fermi momentum must lie in (0, π), got {fermi_momentum}"
        )));
    }
    Ok(())
}

/// `ln D_L^{FH}(λ)`.
pub fn ln_fh_determinant(lambda: Complex64, order: usize, fermi_momentum: f64) -> Result<Complex64> {
    check_order(order, fermi_momentum)?;
    let jump = beta_exponent(lambda)?;
    let beta = jump.beta;
    let b2 = beta * beta;
    let l = order as f64;
    let ln_pair = ln_barnes_g_pair(beta)?
        .ok_or_else(|| Error::integrity("Barnes pair vanished inside the window"))?;
    let prefactor = -b2 * (2.0 - 2.0 * (2.0 * fermi_momentum).cos()).ln();
    let leading = (lambda + 1.0).ln() - jump.log_ratio() * (fermi_momentum / PI);
    Ok(prefactor + 2.0 * ln_pair + l * leading - 2.0 * b2 * l.ln())
}

pub fn fh_determinant(lambda: Complex64, order: usize, fermi_momentum: f64) -> Result<Complex64> {
    Ok(ln_fh_determinant(lambda, order, fermi_momentum)?.exp())
}

/// `Σ ln(λ − ν_m)`, or `None` when `λ` sits on an eigenvalue.
pub fn ln_exact_determinant(lambda: Complex64, spec: &CorrelationSpectrum) -> Option<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for &nu in spec.values() {
        let factor = lambda - nu;
        if factor.norm() < POLE_TOLERANCE {
            log::warn!("lambda {lambda} coincides with eigenvalue {nu}; determinant is zero");
            return None;
        }
        acc += factor.ln();
    }
    Some(acc)
}

/// `∏ (λ − ν_m)` as the exponential of the summed logarithms.
pub fn exact_determinant(lambda: Complex64, spec: &CorrelationSpectrum) -> Complex64 {
    ln_exact_determinant(lambda, spec).map_or(Complex64::new(0.0, 0.0), |l| l.exp())
}

/// Compares both determinants on a spectrum that remembers its source.
pub fn evaluate_spectrum(lambda: Complex64, spec: &CorrelationSpectrum) -> Result<FHEvaluation> {
    let source = spec
        .source()
        .ok_or_else(|| Error::domain("spectrum does not record its block length and Fermi momentum"))?;
    let ln_fh = ln_fh_determinant(lambda, source.order, source.fermi_momentum)?;
    let ln_exact = ln_exact_determinant(lambda, spec);
    let zero = Complex64::new(0.0, 0.0);
    Ok(FHEvaluation {
        lambda,
        order: source.order,
        asymptotic: ln_fh.exp(),
        exact: ln_exact.map_or(zero, |l| l.exp()),
        ratio: ln_exact.map_or(zero, |l| (l - ln_fh).exp()),
    })
}

pub fn evaluate(lambda: Complex64, params: &ModelParams) -> Result<FHEvaluation> {
    if params.at_critical_boundary() {
        return Err(Error::domain("Fermi momentum is zero at |h| = 2"));
    }
    evaluate_spectrum(lambda, &block_spectrum(params)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::build_sign_matrix;
    use nalgebra::DMatrix;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn params(h: f64, l: usize) -> ModelParams {
        ModelParams::new(h, l).unwrap()
    }

    /// `ln G(1+z)` from `(2π)^{z/2} e^{−(z + (1+γ)z²)/2} ∏ (1+z/k)^k e^{−z + z²/(2k)}`.
    fn ln_barnes_g(z: Complex64, terms: usize) -> Complex64 {
        let mut acc = 0.5 * z * (2.0 * PI).ln() - 0.5 * (z + (1.0 + EULER_GAMMA) * z * z);
        for k in (1..=terms).rev() {
            let kf = k as f64;
            acc += kf * (1.0 + z / kf).ln() - z + z * z / (2.0 * kf);
        }
        // leading remainder Σ_{k>N} z³/(3k²)
        acc + z * z * z / (3.0 * (terms as f64 + 0.5))
    }

    #[test]
    fn beta_at_three() {
        let j = beta_exponent(c(3.0, 0.0)).unwrap();
        assert!(j.beta.re.abs() < 1e-16);
        assert!((j.beta.im + 2f64.ln() / (2.0 * PI)).abs() < 1e-15);
        assert!((j.beta.im + 0.110_318).abs() < 1e-6);
    }

    #[test]
    fn beta_boundary_value_at_origin() {
        let j = beta_exponent(c(0.0, 1e-12)).unwrap();
        assert!((j.beta - c(-0.5, 0.0)).norm() < 1e-11, "{}", j.beta);
        let below = beta_exponent(c(0.0, -1e-12)).unwrap();
        assert!((below.beta - c(0.5, 0.0)).norm() < 1e-11);
    }

    #[test]
    fn beta_vanishes_at_infinity() {
        assert!(beta_exponent(c(1e12, 3e11)).unwrap().beta.norm() < 1e-12);
    }

    #[test]
    fn beta_rejects_cut() {
        for x in [-1.0, -0.3, 0.0, 0.9, 1.0] {
            assert!(matches!(beta_exponent(c(x, 0.0)), Err(Error::Domain(_))));
        }
        assert!(beta_exponent(c(1.0000001, 0.0)).is_ok());
    }

    #[test]
    fn beta_stays_in_window() {
        for re in [-3.0, -1.2, -0.5, 0.0, 0.5, 1.2, 3.0] {
            for im in [-2.0, -1e-6, 1e-6, 0.4, 5.0] {
                let j = beta_exponent(c(re, im)).unwrap();
                assert!(j.beta.re.abs() < 0.5);
                let back = (j.log_ratio().exp() * (c(re, im) - 1.0) - (c(re, im) + 1.0)).norm();
                assert!(back < 1e-12);
            }
        }
    }

    #[test]
    fn barnes_trivial_values() {
        assert_eq!(barnes_g_pair(c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
        assert_eq!(barnes_g_pair(c(1.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert_eq!(barnes_g_pair(c(-2.0, 0.0)).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn barnes_pair_matches_defining_product() {
        let betas = [
            c(0.0, -2f64.ln() / (2.0 * PI)),
            c(0.3, 0.2),
            c(-0.45, -0.7),
            c(0.9, 0.0),
        ];
        for beta in betas {
            let ours = ln_barnes_g_pair(beta).unwrap().unwrap();
            let terms = 10 * BARNES_TERMS;
            let oracle = ln_barnes_g(beta, terms) + ln_barnes_g(-beta, terms);
            let (a, b) = (ours.exp(), oracle.exp());
            assert!(((a - b) / b).norm() < 1e-9, "beta={beta}: {a} vs {b}");
        }
    }

    #[test]
    fn barnes_pair_is_truncation_stable() {
        let beta = c(0.2, -0.8);
        let coarse = ln_barnes_g_pair_with(beta, 500).unwrap().unwrap();
        let fine = ln_barnes_g_pair_with(beta, BARNES_TERMS).unwrap().unwrap();
        assert!((coarse - fine).norm() < 1e-10);
    }

    #[test]
    fn barnes_pair_real_value() {
        // G(3/2) G(1/2) from G(1/2) = 0.603244281209446… and G(3/2) = Γ(1/2) G(1/2).
        let g_half: f64 = 0.603_244_281_209_446_2;
        let expected = PI.sqrt() * g_half * g_half;
        let ours = barnes_g_pair(c(0.5, 0.0)).unwrap();
        assert!((ours.re - expected).abs() < 1e-10 * expected, "{ours} vs {expected}");
        assert!(ours.im.abs() < 1e-15);
    }

    #[test]
    fn exact_determinant_small_blocks() {
        let d1 = exact_determinant(c(2.0, 0.0), &block_spectrum(&params(0.0, 1)).unwrap());
        assert!((d1 - c(2.0, 0.0)).norm() < 1e-14);
        let d2 = exact_determinant(c(2.0, 0.0), &block_spectrum(&params(0.0, 2)).unwrap());
        let expected = 4.0 - 4.0 / (PI * PI);
        assert!((d2 - c(expected, 0.0)).norm() < 1e-13);
        assert!((expected - 3.5947).abs() < 1e-4);
    }

    #[test]
    fn exact_determinant_matches_characteristic_polynomial() {
        let k_f = 1.1;
        let g = build_sign_matrix(3, k_f).unwrap();
        let m = g.dense();
        // det(λI − G) = λ³ − tr(G) λ² + E₂ λ − det G, cofactor by cofactor.
        let det3 = |a: &DMatrix<f64>| {
            a[(0, 0)] * (a[(1, 1)] * a[(2, 2)] - a[(1, 2)] * a[(2, 1)])
                - a[(0, 1)] * (a[(1, 0)] * a[(2, 2)] - a[(1, 2)] * a[(2, 0)])
                + a[(0, 2)] * (a[(1, 0)] * a[(2, 1)] - a[(1, 1)] * a[(2, 0)])
        };
        let minor = |i: usize, j: usize| m[(i, i)] * m[(j, j)] - m[(i, j)] * m[(j, i)];
        let coeffs = [
            1.0,
            -(m[(0, 0)] + m[(1, 1)] + m[(2, 2)]),
            minor(0, 1) + minor(0, 2) + minor(1, 2),
            -det3(m),
        ];
        let spec = crate::spectrum::correlation_spectrum(&g).unwrap();
        let v = spec.values();
        let from_roots = [
            1.0,
            -(v[0] + v[1] + v[2]),
            v[0] * v[1] + v[0] * v[2] + v[1] * v[2],
            -(v[0] * v[1] * v[2]),
        ];
        for (a, b) in coeffs.iter().zip(&from_roots) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
        for lambda in [c(2.0, 0.0), c(-1.5, 0.7)] {
            let poly = coeffs.iter().fold(c(0.0, 0.0), |acc, &k| acc * lambda + k);
            assert!((poly - exact_determinant(lambda, &spec)).norm() < 1e-12);
        }
    }

    #[test]
    fn exp_log_product_equals_direct_product() {
        for l in [1, 7, 20, 50] {
            let spec = block_spectrum(&params(0.7, l)).unwrap();
            for lambda in [c(2.0, 0.0), c(1.5, 0.5), c(-3.0, 0.0), c(0.2, 0.3)] {
                let direct = spec.values().iter().fold(c(1.0, 0.0), |p, &nu| p * (lambda - nu));
                let ours = exact_determinant(lambda, &spec);
                assert!(((ours - direct) / direct).norm() < 1e-12, "L={l}, λ={lambda}");
            }
        }
    }

    #[test]
    fn pole_gives_zero() {
        let spec = CorrelationSpectrum::from_values(vec![0.25, -0.5]).unwrap();
        assert_eq!(exact_determinant(c(0.25, 0.0), &spec), c(0.0, 0.0));
        assert!(ln_exact_determinant(c(0.25, 0.0), &spec).is_none());
    }

    #[test]
    fn ratio_converges_at_lambda_two() {
        let mut prev = f64::INFINITY;
        for l in [25, 50, 100, 200, 400] {
            let e = evaluate(c(2.0, 0.0), &params(0.0, l)).unwrap();
            let err = e.relative_error();
            assert!(err < prev * 1.1, "L={l}: {err} vs {prev}");
            prev = err;
        }
        assert!(prev < 1e-2);
    }

    #[test]
    fn ratio_converges_across_lambdas_and_fields() {
        let cases: [(Complex64, f64, &[usize]); 6] = [
            (c(2.0, 0.0), 1.0, &[25, 50, 100, 200, 400]),
            (c(1.5, 0.5), 0.0, &[25, 50, 100, 200, 400]),
            (c(1.5, 0.5), 1.0, &[25, 50, 100, 200, 400]),
            // At h = 0 and λ = −3 the error alternates with the parity of L.
            (c(-3.0, 0.0), 0.0, &[50, 100, 200, 400]),
            (c(-3.0, 0.0), 1.0, &[25, 50, 100, 200, 400]),
            (c(0.0, 0.8), 0.5, &[25, 50, 100, 200, 400]),
        ];
        for (lambda, h, lengths) in cases {
            let mut prev = f64::INFINITY;
            for &l in lengths {
                let err = evaluate(lambda, &params(h, l)).unwrap().relative_error();
                assert!(err < prev * 1.1, "λ={lambda}, h={h}, L={l}: {err} vs {prev}");
                prev = err;
            }
            assert!(prev < 1e-3, "λ={lambda}, h={h}: {prev}");
        }
    }

    #[test]
    fn parity_at_zero_field() {
        for l in [10, 40, 100] {
            let spec = block_spectrum(&params(0.0, l)).unwrap();
            for x in [1.5, 2.0, 4.0] {
                let plus = fh_determinant(c(x, 0.0), l, PI / 2.0).unwrap().norm();
                let minus = fh_determinant(c(-x, 0.0), l, PI / 2.0).unwrap().norm();
                assert!(((plus - minus) / plus).abs() < 1e-10);
                let ep = exact_determinant(c(x, 0.0), &spec).norm();
                let em = exact_determinant(c(-x, 0.0), &spec).norm();
                assert!(((ep - em) / ep).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn large_lambda_limit() {
        let l = 12;
        let spec = block_spectrum(&params(0.4, l)).unwrap();
        let k_f = params(0.4, l).fermi_momentum();
        let lambda = c(1e6, 2e5);
        let lead = lambda.ln() * l as f64;
        let fh = ln_fh_determinant(lambda, l, k_f).unwrap();
        let ex = ln_exact_determinant(lambda, &spec).unwrap();
        assert!((fh - lead).norm() < 1e-4);
        assert!((ex - lead).norm() < 1e-4);
        assert!((fh - ex).norm() < 1e-9);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(matches!(fh_determinant(c(0.5, 0.0), 10, 1.0), Err(Error::Domain(_))));
        assert!(matches!(fh_determinant(c(2.0, 0.0), 0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(fh_determinant(c(2.0, 0.0), 5, PI), Err(Error::Domain(_))));
        assert!(matches!(evaluate(c(2.0, 0.0), &params(2.0, 5)), Err(Error::Domain(_))));
        let anonymous = CorrelationSpectrum::from_values(vec![0.1]).unwrap();
        assert!(evaluate_spectrum(c(2.0, 0.0), &anonymous).is_err());
    }
}
