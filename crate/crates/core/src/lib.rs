//! Two-by-two matrix optics spoken in the language of the Lorentz group.
//!
//! Polarization elements (phase shifters, rotators, attenuators) and para-axial
//! ray matrices (lenses, free propagation) are all unit-determinant 2×2
//! matrices. This crate treats them as elements of SL(2,C), lifts them to
//! 4×4 Lorentz matrices acting on `(t, z, x, y)`, propagates Stokes
//! four-vectors, and factors the one-lens core matrix into Wigner
//! little-group form.
//!
//! Modules:
//!
//! * [`sl2c`]: generators, composition and trace classification.
//! * [`lorentz`]: the two-to-one lift and Minkowski utilities.
//! * [`polarization`]: Jones spinors, coherency matrices, Stokes vectors.
//! * [`lens`]: ABCD matrices, focal condition, core matrix decomposition,
//!   group-contraction sweep.

pub mod error;
pub mod lens;
pub mod lorentz;
pub mod polarization;
pub mod sl2c;

pub use error::{OpticsError, Result};
pub use num_complex::Complex64;

/// Tolerance set used by checks that need a threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative tolerance on `|det − 1|` for SL(2,C) elements.
    pub det: f64,
    /// Band around `|trace| = 2` (and `x = 2`) treated as parabolic.
    pub cls: f64,
    /// Pure when `M²/S₀² ≤ mix`, completely random when `M/S₀ ≥ 1 − mix`.
    pub mix: f64,
    /// Absolute tolerance (length units) on the focusing entry of a lens chain.
    pub focus: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            det: 1e-9,
            cls: 1e-9,
            mix: 1e-9,
            focus: 1e-9,
        }
    }
}

pub(crate) fn ensure_finite(name: &str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(OpticsError::Domain(format!(
            "{name} must be finite, got {value}"
        )))
    }
}
