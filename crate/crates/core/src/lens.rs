//! Para-axial one-lens optics in Lorentz-group form.
//!
//! The equal-arm one-lens chain `T(z)·L(f)·T(z)` renormalizes to the core
//! matrix `[[x − 1, x − 2], [x, x − 1]]` with `x = z/f`. For `0 < x < 2` the
//! core is a boosted rotation (elliptic, massive-like), for `x > 2` a
//! boosted boost (hyperbolic), and at `x = 2` it is the parabolic
//! `[[1, 0], [2, 1]]`. Approaching `x = 2` from either side sends the boost
//! rapidity to infinity while the angle shrinks to zero: a group contraction.

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;

use crate::sl2c::{attenuation, rotation, x_boost, ClassTag, Sl2c};
use crate::{ensure_finite, OpticsError, Result, Tolerances};

/// Real 2×2 ABCD matrix acting on `(height, slope)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RayMatrix {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl RayMatrix {
    pub const IDENTITY: RayMatrix = RayMatrix {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
    };

    pub fn new(a: f64, b: f64, c: f64, d: f64, tol: &Tolerances) -> Result<Self> {
        let m = RayMatrix { a, b, c, d };
        m.validate(tol)?;
        Ok(m)
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    /// `|det − 1|` relative to the magnitude of the products `ad` and `bc`.
    pub fn det_drift(&self) -> f64 {
        let scale = (self.a * self.d).abs() + (self.b * self.c).abs();
        (self.det() - 1.0).abs() / scale.max(1.0)
    }

    pub fn validate(&self, tol: &Tolerances) -> Result<()> {
        if ![self.a, self.b, self.c, self.d]
            .iter()
            .all(|v| v.is_finite())
        {
            return Err(OpticsError::Integrity(
                "ray matrix has non-finite entries".into(),
            ));
        }
        if self.det_drift() > tol.det {
            return Err(OpticsError::Integrity(format!(
                "ray matrix determinant {} differs from 1",
                self.det()
            )));
        }
        Ok(())
    }

    pub fn rows(&self) -> [[f64; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn max_abs_diff(&self, other: &RayMatrix) -> f64 {
        (self.a - other.a)
            .abs()
            .max((self.b - other.b).abs())
            .max((self.c - other.c).abs())
            .max((self.d - other.d).abs())
    }

    /// The same matrix as an SL(2,C) element with zero imaginary parts.
    pub fn to_sl2c(&self, tol: &Tolerances) -> Result<Sl2c> {
        Sl2c::from_real(self.a, self.b, self.c, self.d, tol)
    }
}

impl Mul for RayMatrix {
    type Output = RayMatrix;

    fn mul(self, rhs: RayMatrix) -> RayMatrix {
        RayMatrix {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }
}

impl fmt::Display for RayMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// Thin lens `[[1, 0], [−1/f, 1]]`.
pub fn lens(f: f64) -> Result<RayMatrix> {
    ensure_finite("focal length", f)?;
    if f == 0.0 {
        return Err(OpticsError::Domain("focal length must be non-zero".into()));
    }
    Ok(RayMatrix {
        a: 1.0,
        b: 0.0,
        c: -1.0 / f,
        d: 1.0,
    })
}

/// Free propagation over `z`: `[[1, z], [0, 1]]`.
pub fn translation(z: f64) -> Result<RayMatrix> {
    ensure_finite("distance", z)?;
    Ok(RayMatrix {
        a: 1.0,
        b: z,
        c: 0.0,
        d: 1.0,
    })
}

/// Object distance `z1`, image distance `z2`, focal length `f`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OneLensSystem {
    z1: f64,
    z2: f64,
    f: f64,
}

impl OneLensSystem {
    pub fn new(z1: f64, z2: f64, f: f64) -> Result<Self> {
        for (name, v) in [("z1", z1), ("z2", z2), ("f", f)] {
            ensure_finite(name, v)?;
        }
        if z1 <= 0.0 || z2 <= 0.0 {
            return Err(OpticsError::Domain(format!(
                "distances must be positive (z1 = {z1}, z2 = {z2})"
            )));
        }
        if f == 0.0 {
            return Err(OpticsError::Domain("focal length must be non-zero".into()));
        }
        Ok(OneLensSystem { z1, z2, f })
    }

    pub fn z1(&self) -> f64 {
        self.z1
    }

    pub fn z2(&self) -> f64 {
        self.z2
    }

    pub fn f(&self) -> f64 {
        self.f
    }
}

/// `T(z2)·L(f)·T(z1)`:
/// `[[1 − z2/f, z1 + z2 − z1·z2/f], [−1/f, 1 − z1/f]]`.
pub fn one_lens_chain(sys: &OneLensSystem) -> RayMatrix {
    // Inputs are validated by OneLensSystem, so the factors cannot fail.
    let t1 = RayMatrix {
        b: sys.z1,
        ..RayMatrix::IDENTITY
    };
    let l = RayMatrix {
        c: -1.0 / sys.f,
        ..RayMatrix::IDENTITY
    };
    let t2 = RayMatrix {
        b: sys.z2,
        ..RayMatrix::IDENTITY
    };
    t2 * l * t1
}

/// True when the upper-right entry of the chain is within `tol` of zero,
/// i.e. `1/z1 + 1/z2 = 1/f` and the image is in focus.
pub fn is_focused(sys: &OneLensSystem, tol: f64) -> Result<bool> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(OpticsError::Domain(format!(
            "focus tolerance must be positive, got {tol}"
        )));
    }
    Ok(one_lens_chain(sys).b.abs() <= tol)
}

/// The renormalized equal-arm core `[[x − 1, x − 2], [x, x − 1]]`.
///
/// `offset` holds `x − 2` separately so that matrices built right next to
/// the parabolic point keep it exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoreMatrix {
    x: f64,
    offset: f64,
}

impl CoreMatrix {
    /// Core with `x = 2 + offset`, storing `offset` unrounded.
    pub fn from_offset(offset: f64) -> Result<Self> {
        ensure_finite("offset", offset)?;
        Ok(CoreMatrix {
            x: 2.0 + offset,
            offset,
        })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    /// `x − 2`, the upper-right entry.
    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn to_ray_matrix(&self) -> RayMatrix {
        let diag = self.x - 1.0;
        RayMatrix {
            a: diag,
            b: self.offset,
            c: self.x,
            d: diag,
        }
    }

    pub fn trace(&self) -> f64 {
        2.0 * (self.x - 1.0)
    }
}

pub fn core_matrix(x: f64) -> Result<CoreMatrix> {
    ensure_finite("x", x)?;
    Ok(CoreMatrix { x, offset: x - 2.0 })
}

/// Result of conjugating the equal-arm chain into core form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Renormalization {
    /// `z / f`.
    pub x: f64,
    /// `√z`; the conjugating matrix is `diag(1/scale, scale)`.
    pub scale: f64,
    pub core: CoreMatrix,
}

/// Maps the equal-arm chain `M = T(z)·L(f)·T(z)` to its core.
///
/// With `D = diag(z^{−1/2}, z^{1/2})`, `−D·M·D⁻¹` equals
/// `core_matrix(z/f)`. The identity is re-checked on every call.
pub fn renormalize_core(z: f64, f: f64) -> Result<Renormalization> {
    let sys = OneLensSystem::new(z, z, f)?;
    let m = one_lens_chain(&sys);
    let scale = z.sqrt();
    let conjugated = conjugate_by_scale(&m, scale);
    let x = z / f;
    let core = core_matrix(x)?;
    let err = conjugated.max_abs_diff(&core.to_ray_matrix());
    if err > 1e-12 * x.abs().max(1.0) {
        return Err(OpticsError::Integrity(format!(
            "renormalized chain misses the core matrix by {err:.3e}"
        )));
    }
    Ok(Renormalization { x, scale, core })
}

/// `−D·M·D⁻¹` with `D = diag(1/scale, scale)`.
pub fn conjugate_by_scale(m: &RayMatrix, scale: f64) -> RayMatrix {
    let inv = 1.0 / scale;
    RayMatrix {
        a: -m.a,
        b: -(inv * m.b * inv),
        c: -(scale * m.c * scale),
        d: -m.d,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParticleLabel {
    MassiveLike,
    MasslessLike,
    TachyonLike,
}

impl ParticleLabel {
    pub fn name(&self) -> &'static str {
        match self {
            ParticleLabel::MassiveLike => "MassiveLike",
            ParticleLabel::MasslessLike => "MasslessLike",
            ParticleLabel::TachyonLike => "TachyonLike",
        }
    }
}

/// Little-group form of a core matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WignerDecomposition {
    /// Boosted rotation: `[[cos(φ/2), −e^{−η}sin(φ/2)], [e^{η}sin(φ/2), cos(φ/2)]]`.
    Elliptic { eta: f64, phi: f64 },
    /// Boosted boost: `[[cosh(χ/2), e^{−η}sinh(χ/2)], [e^{η}sinh(χ/2), cosh(χ/2)]]`.
    Hyperbolic { eta: f64, chi: f64 },
    /// `[[1, 0], [γ, 1]]`.
    Parabolic { gamma: f64 },
}

impl WignerDecomposition {
    pub fn tag(&self) -> ClassTag {
        match self {
            WignerDecomposition::Elliptic { .. } => ClassTag::Elliptic,
            WignerDecomposition::Hyperbolic { .. } => ClassTag::Hyperbolic,
            WignerDecomposition::Parabolic { .. } => ClassTag::Parabolic,
        }
    }

    pub fn particle_label(&self) -> ParticleLabel {
        match self {
            WignerDecomposition::Elliptic { .. } => ParticleLabel::MassiveLike,
            WignerDecomposition::Parabolic { .. } => ParticleLabel::MasslessLike,
            WignerDecomposition::Hyperbolic { .. } => ParticleLabel::TachyonLike,
        }
    }

    pub fn eta(&self) -> Option<f64> {
        match *self {
            WignerDecomposition::Elliptic { eta, .. }
            | WignerDecomposition::Hyperbolic { eta, .. } => Some(eta),
            WignerDecomposition::Parabolic { .. } => None,
        }
    }

    /// `φ` for elliptic, `χ` for hyperbolic.
    pub fn angle(&self) -> Option<f64> {
        match *self {
            WignerDecomposition::Elliptic { phi, .. } => Some(phi),
            WignerDecomposition::Hyperbolic { chi, .. } => Some(chi),
            WignerDecomposition::Parabolic { .. } => None,
        }
    }

    /// The product of generators equal to the reconstruction:
    /// `Z(−η)·R(φ)·Z(η)` or `Z(−η)·X(χ)·Z(η)`, with `Z` the attenuation matrix.
    pub fn generator_product(&self) -> Result<Sl2c> {
        match *self {
            WignerDecomposition::Elliptic { eta, phi } => {
                Ok(attenuation(-eta)? * rotation(phi)? * attenuation(eta)?)
            }
            WignerDecomposition::Hyperbolic { eta, chi } => {
                Ok(attenuation(-eta)? * x_boost(chi)? * attenuation(eta)?)
            }
            WignerDecomposition::Parabolic { gamma } => {
                let one = Complex64::new(1.0, 0.0);
                let zero = Complex64::new(0.0, 0.0);
                Sl2c::new(
                    one,
                    zero,
                    Complex64::new(gamma, 0.0),
                    one,
                    &Tolerances::default(),
                )
            }
        }
    }
}

/// Decomposes `core_matrix(x)`; see [`decompose`].
pub fn decompose_core(x: f64, tol: &Tolerances) -> Result<WignerDecomposition> {
    decompose(&core_matrix(x)?, tol)
}

/// Factors a core matrix into Wigner little-group form, in closed form.
///
/// Elliptic for `0 < x < 2`: `cos(φ/2) = x − 1`, `sin(φ/2) = √(x(2 − x))`,
/// `η = ½·ln(x/(2 − x))`. Hyperbolic for `x > 2`: `cosh(χ/2) = x − 1`,
/// `η = ½·ln(x/(x − 2))`. Within `tol.cls` of `x = 2` the exact parabolic
/// core with `γ = 2` is returned. `x ≤ 0` is rejected.
pub fn decompose(core: &CoreMatrix, tol: &Tolerances) -> Result<WignerDecomposition> {
    let x = core.x;
    if x <= 0.0 {
        return Err(OpticsError::Domain(format!(
            "x = {x} is outside the decomposable regime x > 0"
        )));
    }
    let offset = core.offset;
    if offset.abs() <= tol.cls {
        return Ok(WignerDecomposition::Parabolic { gamma: 2.0 });
    }
    if offset < 0.0 {
        let gap = -offset;
        let sin_half = (x * gap).sqrt();
        let cos_half = x - 1.0;
        Ok(WignerDecomposition::Elliptic {
            eta: 0.5 * (x / gap).ln(),
            phi: 2.0 * sin_half.atan2(cos_half),
        })
    } else {
        let sinh_half = (x * offset).sqrt();
        Ok(WignerDecomposition::Hyperbolic {
            eta: 0.5 * (x / offset).ln(),
            chi: 2.0 * sinh_half.asinh(),
        })
    }
}

/// Rebuilds the ray matrix from its little-group parameters.
pub fn reconstruct(d: &WignerDecomposition) -> RayMatrix {
    match *d {
        WignerDecomposition::Elliptic { eta, phi } => {
            let (s, c) = (phi / 2.0).sin_cos();
            RayMatrix {
                a: c,
                b: -(-eta).exp() * s,
                c: eta.exp() * s,
                d: c,
            }
        }
        WignerDecomposition::Hyperbolic { eta, chi } => {
            let (s, c) = ((chi / 2.0).sinh(), (chi / 2.0).cosh());
            RayMatrix {
                a: c,
                b: (-eta).exp() * s,
                c: eta.exp() * s,
                d: c,
            }
        }
        WignerDecomposition::Parabolic { gamma } => RayMatrix {
            a: 1.0,
            b: 0.0,
            c: gamma,
            d: 1.0,
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// `x = 2 − ε`, the elliptic side.
    Below,
    /// `x = 2 + ε`, the hyperbolic side.
    Above,
}

impl Side {
    pub fn name(&self) -> &'static str {
        match self {
            Side::Below => "below",
            Side::Above => "above",
        }
    }

    fn sign(&self) -> f64 {
        match self {
            Side::Below => -1.0,
            Side::Above => 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContractionRow {
    pub epsilon: f64,
    pub x: f64,
    pub eta: f64,
    /// `φ` below `x = 2`, `χ` above.
    pub angle: f64,
    /// `e^{η}·sin(φ/2)` or `e^{η}·sinh(χ/2)`.
    pub lower_left: f64,
    /// Upper-right entry of the core, `x − 2 = ∓ε`.
    pub upper_right: f64,
}

/// Decomposes the core at `x = 2 ∓ ε` for each `ε`, in input order.
pub fn contraction_sweep(
    epsilons: &[f64],
    side: Side,
    tol: &Tolerances,
) -> Result<Vec<ContractionRow>> {
    epsilons
        .iter()
        .map(|&eps| contraction_row(eps, side, tol))
        .collect()
}

fn contraction_row(eps: f64, side: Side, tol: &Tolerances) -> Result<ContractionRow> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(OpticsError::Domain(format!(
            "epsilon {eps} is outside (0, 1)"
        )));
    }
    if eps <= tol.cls {
        return Err(OpticsError::Domain(format!(
            "epsilon {eps} lies inside the parabolic band {}",
            tol.cls
        )));
    }
    let core = CoreMatrix::from_offset(side.sign() * eps)?;
    let d = decompose(&core, tol)?;
    let (eta, angle, lower_left) = match d {
        WignerDecomposition::Elliptic { eta, phi } => (eta, phi, eta.exp() * (phi / 2.0).sin()),
        WignerDecomposition::Hyperbolic { eta, chi } => (eta, chi, eta.exp() * (chi / 2.0).sinh()),
        WignerDecomposition::Parabolic { .. } => {
            return Err(OpticsError::Integrity(
                "contraction row collapsed to the parabolic point".into(),
            ))
        }
    };
    Ok(ContractionRow {
        epsilon: eps,
        x: core.x,
        eta,
        angle,
        lower_left,
        upper_right: core.offset,
    })
}
