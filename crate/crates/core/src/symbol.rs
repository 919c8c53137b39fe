//! The jump symbol of the ground-state correlations and the Toeplitz matrix
//! it generates.
//!
//! The ground symbol is `+1` on `|θ| < k_F` and `−1` elsewhere on the circle.
//! Its Fourier coefficients have the closed form `g_0 = 2k_F/π − 1` and
//! `g_l = 2 sin(k_F l) / (π l)`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest block length accepted by [`build_sign_matrix`].
pub const MAX_ORDER: usize = 20_000;

/// Which piecewise-constant symbol is meant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SymbolKind {
    /// `g(θ) = ±1`.
    Ground,
    /// `λ − g(θ)`, the symbol of `λI − G_L`.
    Shifted(Complex64),
}

/// A symbol with jumps at `θ = ±k_F`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymbolSpec {
    pub fermi_momentum: f64,
    pub kind: SymbolKind,
}

impl SymbolSpec {
    pub fn ground(fermi_momentum: f64) -> Self {
        Self {
            fermi_momentum,
            kind: SymbolKind::Ground,
        }
    }

    pub fn shifted(fermi_momentum: f64, lambda: Complex64) -> Self {
        Self {
            fermi_momentum,
            kind: SymbolKind::Shifted(lambda),
        }
    }

    /// Symbol value at angle `theta` (any real; reduced mod 2π). Jump points
    /// themselves are assigned to the outer arc.
    pub fn value(&self, theta: f64) -> Complex64 {
        let t = theta.rem_euclid(2.0 * PI);
        let inside = t < self.fermi_momentum || t > 2.0 * PI - self.fermi_momentum;
        let g = if inside { 1.0 } else { -1.0 };
        match self.kind {
            SymbolKind::Ground => Complex64::new(g, 0.0),
            SymbolKind::Shifted(lambda) => lambda - g,
        }
    }
}

/// Fourier coefficient `g_l` of the ground symbol.
pub fn fourier_coefficient(l: i64, fermi_momentum: f64) -> f64 {
    debug_assert!(fermi_momentum > 0.0 && fermi_momentum < PI);
    if l == 0 {
        2.0 * fermi_momentum / PI - 1.0
    } else {
        let lf = l as f64;
        2.0 * (fermi_momentum * lf).sin() / (PI * lf)
    }
}

/// The real symmetric Toeplitz matrix `(G_L)_{ij} = g_{i−j}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SignMatrix {
    order: usize,
    fermi_momentum: f64,
    first_row: Vec<f64>,
    dense: DMatrix<f64>,
}

impl SignMatrix {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn fermi_momentum(&self) -> f64 {
        self.fermi_momentum
    }

    /// `g_0, g_{−1}, …, g_{1−L}`; equal to the first column since `g` is even.
    pub fn first_row(&self) -> &[f64] {
        &self.first_row
    }

    pub fn dense(&self) -> &DMatrix<f64> {
        &self.dense
    }

    pub fn trace(&self) -> f64 {
        self.first_row[0] * self.order as f64
    }

    /// `Σ_{|l|<L} (L − |l|) g_l²`, the squared Frobenius norm.
    pub fn frobenius_norm_squared(&self) -> f64 {
        let n = self.order as f64;
        let mut acc = n * self.first_row[0] * self.first_row[0];
        for (l, g) in self.first_row.iter().enumerate().skip(1) {
            acc += 2.0 * (n - l as f64) * g * g;
        }
        acc
    }
}

/// Builds `G_L` for a block of `order` sites at Fermi momentum `fermi_momentum`.
pub fn build_sign_matrix(order: usize, fermi_momentum: f64) -> Result<SignMatrix> {
    if order == 0 {
        return Err(Error::domain("matrix order must be at least 1"));
    }
    if order > MAX_ORDER {
        return Err(Error::Size(format!(
            "matrix order {order} exceeds the limit {MAX_ORDER}"
        )));
    }
    if !(fermi_momentum > 0.0 && fermi_momentum < PI) {
        return Err(Error::domain(format!(
            "Fermi momentum {fermi_momentum} outside (0, π)"
        )));
    }
    let first_row: Vec<f64> = (0..order as i64)
        .map(|l| fourier_coefficient(l, fermi_momentum))
        .collect();
    let dense = DMatrix::from_fn(order, order, |i, j| first_row[i.abs_diff(j)]);
    Ok(SignMatrix {
        order,
        fermi_momentum,
        first_row,
        dense,
    })
}
