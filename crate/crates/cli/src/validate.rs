//! Cross-module consistency checks run by `xx-entropy validate`.

use std::fmt;
use std::time::Instant;

use num_complex::Complex64;
use xx_entropy::asymptotics::upsilon::compute_upsilon_digamma_route;
use xx_entropy::entropy::{renyi_of_probabilities, shannon_entropy};
use xx_entropy::{
    block_entropy, block_spectrum, density_matrix_spectrum, ed_ground_state_entropy, fh_evaluate,
    large_block_entropy, spectral_entropy, upsilon1, EntropyKind, Error, FiniteChainSpec, ModelParams,
    QuadratureConfig, Result,
};

/// Published value of the constant term.
pub const UPSILON1_PUBLISHED: f64 = 0.4950179;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Fast,
    Full,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub measured: f64,
    pub tolerance: f64,
    pub detail: String,
    pub seconds: f64,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:<24} measured {:.3e} (tol {:.1e}) {} [{:.2}s]",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.measured,
            self.tolerance,
            self.detail,
            self.seconds
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub level: Level,
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn check(
    name: &'static str,
    tolerance: f64,
    body: impl FnOnce() -> Result<(f64, bool, String)>,
) -> CheckResult {
    let start = Instant::now();
    let (measured, passed, detail) = match body() {
        Ok((m, extra_ok, d)) => (m, extra_ok && m < tolerance, d),
        Err(e) => (f64::NAN, false, format!("error: {e}")),
    };
    CheckResult {
        name,
        passed,
        measured,
        tolerance,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

fn upsilon_value() -> CheckResult {
    check("upsilon1", 1e-6, || {
        let v = upsilon1()?;
        Ok(((v - UPSILON1_PUBLISHED).abs(), true, format!("Υ₁ = {v:.10}")))
    })
}

fn upsilon_dual_route(config: &QuadratureConfig) -> CheckResult {
    check("upsilon1 dual route", 1e-7, || {
        let t = upsilon1()?;
        let w = compute_upsilon_digamma_route(1.0, config)?;
        Ok(((t - w).abs(), true, format!("t-route {t:.12}, w-route {w:.12}")))
    })
}

fn oracle_equality(max_sites: usize) -> CheckResult {
    check("ed oracle equality", 1e-10, || {
        let mut worst: f64 = 0.0;
        let mut points = 0;
        for n in (2..=max_sites).step_by(2) {
            for len in [1, n / 2] {
                for h in [0.3, 0.7, 1.3] {
                    let r = ed_ground_state_entropy(&FiniteChainSpec::new(n, len, h)?, 1.0)?;
                    if r.degeneracy_flag {
                        continue;
                    }
                    let d = r
                        .discrepancy()
                        .ok_or_else(|| Error::Computational("missing correlation route".into()))?;
                    worst = worst.max(d);
                    points += 1;
                }
            }
        }
        Ok((worst, points > 0, format!("{points} points, N ≤ {max_sites}")))
    })
}

fn fh_convergence(lengths: &[usize]) -> CheckResult {
    check("fh ratio convergence", 1e-2, || {
        let lambda = Complex64::new(2.0, 0.0);
        let mut errors = Vec::with_capacity(lengths.len());
        for &l in lengths {
            errors.push(fh_evaluate(lambda, &ModelParams::new(0.0, l)?)?.relative_error());
        }
        let monotone = errors.windows(2).all(|w| w[1] < 1.1 * w[0]);
        let last = *errors.last().unwrap_or(&f64::NAN);
        Ok((
            last,
            monotone,
            format!("λ=2 h=0 L ≤ {}, monotone={monotone}", lengths.last().unwrap_or(&0)),
        ))
    })
}

fn route_equivalence(max_len: usize) -> CheckResult {
    check("route equivalence", 1e-10, || {
        let mut worst: f64 = 0.0;
        for l in 1..=max_len {
            for h in [0.0, 0.9, 1.7] {
                let spectrum = block_spectrum(&ModelParams::new(h, l)?)?;
                let density = density_matrix_spectrum(&spectrum)?;
                for alpha in [1.0, 0.5, 2.0, 3.0] {
                    let kind = if alpha == 1.0 {
                        EntropyKind::VonNeumann
                    } else {
                        EntropyKind::Renyi
                    };
                    let modes = spectral_entropy(&spectrum, alpha, kind)?.value;
                    let probs = density.eigenvalues();
                    let full = if alpha == 1.0 {
                        shannon_entropy(probs)
                    } else {
                        renyi_of_probabilities(probs, alpha)?
                    };
                    worst = worst.max((modes - full).abs());
                }
            }
        }
        Ok((worst, true, format!("L ≤ {max_len}, α ∈ {{1, 0.5, 2, 3}}")))
    })
}

fn residual(length: usize, tolerance: f64) -> CheckResult {
    check("large-block residual", tolerance, || {
        let p = ModelParams::new(0.0, length)?;
        let exact = block_entropy(&p, 1.0, EntropyKind::VonNeumann)?.value;
        let law = large_block_entropy(&p, 1.0)?.value;
        Ok(((exact - law).abs(), true, format!("L = {length}, h = 0")))
    })
}

pub fn run_validate(level: Level, config: &QuadratureConfig) -> ValidationReport {
    let (max_sites, fh_lengths, max_len, res_len): (usize, &[usize], usize, usize) = match level {
        Level::Fast => (8, &[25, 50, 100, 200], 10, 200),
        Level::Full => (10, &[25, 50, 100, 200, 400], 12, 1000),
    };
    let checks = vec![
        upsilon_value(),
        upsilon_dual_route(config),
        oracle_equality(max_sites),
        fh_convergence(fh_lengths),
        route_equivalence(max_len),
        residual(res_len, 2e-3),
    ];
    ValidationReport { level, checks }
}
