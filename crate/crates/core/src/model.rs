//! Physical parameters of the XX chain in a transverse field and the scales
//! derived from them.
//!
//! The field enters every formula through `|h|` only. A signed `h` is accepted
//! and kept for reporting; everything derived from it uses the magnitude.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Critical field. For `|h| > 2` the ground state is fully polarized.
pub const CRITICAL_FIELD: f64 = 2.0;

/// Fermi momentum `k_F = arccos(|h|/2)`, in `[0, π/2]`.
pub fn fermi_momentum(h: f64) -> Result<f64> {
    check_field(h)?;
    Ok((h.abs() / 2.0).acos())
}

/// Fermi momentum folded onto `[0, π/2]`: `k_F` below `π/2`, `π − k_F` above.
pub fn reduced_fermi_momentum(k_f: f64) -> f64 {
    if k_f < PI / 2.0 {
        k_f
    } else {
        PI - k_f
    }
}

/// Scaling variable `2 L sqrt(1 − (h/2)²)`, equal to `2 L sin k_F`.
pub fn scaled_length(length: usize, h: f64) -> Result<f64> {
    check_field(h)?;
    if length == 0 {
        return Err(Error::domain("block length must be at least 1"));
    }
    let a = h.abs() / 2.0;
    // (1 - a)(1 + a) keeps relative accuracy as |h| approaches 2.
    Ok(2.0 * length as f64 * ((1.0 - a) * (1.0 + a)).sqrt())
}

fn check_field(h: f64) -> Result<()> {
    if !h.is_finite() {
        return Err(Error::domain(format!("field h = {h} is not finite")));
    }
    if h.abs() > CRITICAL_FIELD {
        return Err(Error::domain(format!(
            "field h = {h} is outside critical window |h| <= 2"
        )));
    }
    Ok(())
}

/// A block of `length` neighbouring spins at field `h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    h: f64,
    length: usize,
    fermi_momentum: f64,
    scaled_length: f64,
}

impl ModelParams {
    pub fn new(h: f64, length: usize) -> Result<Self> {
        let fermi_momentum = fermi_momentum(h)?;
        let scaled_length = scaled_length(length, h)?;
        Ok(Self {
            h,
            length,
            fermi_momentum,
            scaled_length,
        })
    }

    /// Field as supplied by the caller (sign preserved).
    pub fn field(&self) -> f64 {
        self.h
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn fermi_momentum(&self) -> f64 {
        self.fermi_momentum
    }

    pub fn reduced_fermi_momentum(&self) -> f64 {
        reduced_fermi_momentum(self.fermi_momentum)
    }

    pub fn scaled_length(&self) -> f64 {
        self.scaled_length
    }

    /// `|h| == 2`: the correlation symbol has lost its jumps and the block
    /// entropy is zero.
    pub fn at_critical_boundary(&self) -> bool {
        self.h.abs() == CRITICAL_FIELD
    }
}
