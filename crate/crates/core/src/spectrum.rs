//! Eigenvalues of the correlation matrix `G_L`.
//!
//! Dense Householder tridiagonalization followed by implicit-shift QL on the
//! tridiagonal form. Only eigenvalues are computed. Mathematically every
//! eigenvalue lies strictly inside `(−1, 1)`, but for blocks longer than about
//! twenty sites the outermost ones agree with `±1` to machine precision and
//! rounding can push them slightly past it; such overshoots are clamped and
//! logged.

use nalgebra::linalg::SymmetricTridiagonal;
use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::symbol::{build_sign_matrix, SignMatrix};

/// Largest overshoot past `±1` that is treated as rounding.
pub const CLAMP_TOLERANCE: f64 = 1e-8;

const MAX_QL_ITERATIONS: usize = 60;

/// Where a spectrum came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumSource {
    pub order: usize,
    pub fermi_momentum: f64,
}

/// Eigenvalues `ν_m` of `G_L`, ascending, each in `[−1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationSpectrum {
    values: Vec<f64>,
    clamp_log: Vec<(usize, f64)>,
    source: Option<SpectrumSource>,
}

impl CorrelationSpectrum {
    /// Wraps an arbitrary list of mode eigenvalues, sorting and clamping as
    /// [`correlation_spectrum`] does.
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        Self::sanitize(values, None)
    }

    fn sanitize(mut values: Vec<f64>, source: Option<SpectrumSource>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::computational("non-finite eigenvalue"));
        }
        values.sort_by(f64::total_cmp);
        let mut clamp_log = Vec::new();
        for (i, v) in values.iter_mut().enumerate() {
            let over = v.abs() - 1.0;
            if over > CLAMP_TOLERANCE {
                return Err(Error::integrity(format!(
                    "eigenvalue {v} at index {i} exceeds 1 by {over:.3e}"
                )));
            }
            if over > 0.0 {
                clamp_log.push((i, over));
                *v = v.signum();
            }
        }
        Ok(Self {
            values,
            clamp_log,
            source,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `(index, overshoot)` for every eigenvalue that was clamped onto `±1`.
    pub fn clamp_log(&self) -> &[(usize, f64)] {
        &self.clamp_log
    }

    pub fn source(&self) -> Option<SpectrumSource> {
        self.source
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn sum_of_squares(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum()
    }
}

/// All eigenvalues of `g`, sorted ascending and clamped into `[−1, 1]`.
pub fn correlation_spectrum(g: &SignMatrix) -> Result<CorrelationSpectrum> {
    let values = symmetric_eigenvalues(g.dense().clone())?;
    let source = SpectrumSource {
        order: g.order(),
        fermi_momentum: g.fermi_momentum(),
    };
    let spectrum = CorrelationSpectrum::sanitize(values, Some(source))?;
    for (i, over) in spectrum.clamp_log() {
        log::debug!("clamped eigenvalue {i} of G_{} (overshoot {over:.3e})", g.order());
    }
    Ok(spectrum)
}

/// Builds `G_L` for the block described by `params` and diagonalizes it.
///
/// Not defined at the critical boundary `|h| = 2`, where `k_F = 0`.
pub fn block_spectrum(params: &ModelParams) -> Result<CorrelationSpectrum> {
    let g = build_sign_matrix(params.length(), params.fermi_momentum())?;
    correlation_spectrum(&g)
}

/// Eigenvalues of a real symmetric matrix (unsorted).
pub fn symmetric_eigenvalues(m: DMatrix<f64>) -> Result<Vec<f64>> {
    let n = m.nrows();
    if n != m.ncols() {
        return Err(Error::domain("matrix is not square"));
    }
    match n {
        0 => return Ok(Vec::new()),
        1 => return Ok(vec![m[(0, 0)]]),
        _ => {}
    }
    let (diag, off) = SymmetricTridiagonal::new(m).unpack_tridiagonal();
    let mut d: Vec<f64> = diag.iter().copied().collect();
    let mut e: Vec<f64> = off.iter().copied().collect();
    e.push(0.0);
    tridiagonal_ql(&mut d, &mut e)?;
    Ok(d)
}

/// Implicit-shift QL on a symmetric tridiagonal matrix with diagonal `d` and
/// subdiagonal `e` (`e[i]` couples rows `i` and `i + 1`; `e[n − 1]` is
/// scratch). On return `d` holds the eigenvalues.
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > MAX_QL_ITERATIONS {
                return Err(Error::computational(format!(
                    "QL iteration did not converge for eigenvalue {l}"
                )));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}
