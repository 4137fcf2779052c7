//! Jones spinors, coherency matrices and Stokes four-vectors.
//!
//! The coherency matrix `c_ij = <ψ_i ψ_j*>` is the state of record. It
//! transforms as `C → A·C·A†` and expands as
//! `C = ½ [[S0 + S1, S2 + i·S3], [S2 − i·S3, S0 − S1]]`, the same Hermitian
//! encoding used by [`crate::lorentz`], so Stokes vectors transform with
//! exactly `lift(A)`.

use std::fmt;

use num_complex::Complex64;

use crate::lorentz::{self, minkowski_interval, FourVector, LorentzMatrix};
use crate::sl2c::Sl2c;
use crate::{OpticsError, Result, Tolerances};

const HERMITIAN_TOL: f64 = 1e-12;
const PHYSICAL_TOL: f64 = 1e-9;

/// Complex envelope amplitudes of the two beams.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JonesSpinor {
    psi1: Complex64,
    psi2: Complex64,
}

impl JonesSpinor {
    pub fn new(psi1: Complex64, psi2: Complex64) -> Result<Self> {
        if !psi1.is_finite() || !psi2.is_finite() {
            return Err(OpticsError::Domain(
                "Jones amplitudes must be finite".into(),
            ));
        }
        if psi1.norm_sqr() + psi2.norm_sqr() == 0.0 {
            return Err(OpticsError::Domain("Jones spinor cannot be zero".into()));
        }
        Ok(JonesSpinor { psi1, psi2 })
    }

    pub fn psi1(&self) -> Complex64 {
        self.psi1
    }

    pub fn psi2(&self) -> Complex64 {
        self.psi2
    }

    /// `|ψ1|² + |ψ2|²`.
    pub fn intensity(&self) -> f64 {
        self.psi1.norm_sqr() + self.psi2.norm_sqr()
    }
}

/// Hermitian, positive semidefinite matrix of second moments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherencyMatrix {
    c11: f64,
    c12: Complex64,
    c22: f64,
}

impl CoherencyMatrix {
    /// Validates a full 2×2 complex matrix and stores its Hermitian content.
    pub fn new(c11: Complex64, c12: Complex64, c21: Complex64, c22: Complex64) -> Result<Self> {
        if ![c11, c12, c21, c22].iter().all(|z| z.is_finite()) {
            return Err(OpticsError::Domain(
                "coherency entries must be finite".into(),
            ));
        }
        let slack = HERMITIAN_TOL * (c11.re.abs() + c22.re.abs()).max(1.0);
        if c11.im.abs() > slack || c22.im.abs() > slack || (c21 - c12.conj()).norm() > slack {
            return Err(OpticsError::Domain(
                "coherency matrix is not Hermitian".into(),
            ));
        }
        let c12 = (c12 + c21.conj()) * 0.5;
        CoherencyMatrix::hermitian(c11.re, c12, c22.re)
    }

    /// Builds from the independent Hermitian entries, checking positivity.
    pub fn hermitian(c11: f64, c12: Complex64, c22: f64) -> Result<Self> {
        if !c11.is_finite() || !c22.is_finite() || !c12.is_finite() {
            return Err(OpticsError::Domain(
                "coherency entries must be finite".into(),
            ));
        }
        let trace = c11 + c22;
        let slack = HERMITIAN_TOL * trace.abs().max(1.0);
        if c11 < -slack || c22 < -slack {
            return Err(OpticsError::Domain(
                "coherency diagonal must be non-negative".into(),
            ));
        }
        if c11 * c22 - c12.norm_sqr() < -slack * trace.abs().max(1.0) {
            return Err(OpticsError::Domain(
                "coherency matrix is not positive semidefinite".into(),
            ));
        }
        Ok(CoherencyMatrix { c11, c12, c22 })
    }

    /// Entries as `[[c11, c12], [c21, c22]]`.
    pub fn rows(&self) -> [[Complex64; 2]; 2] {
        [
            [Complex64::new(self.c11, 0.0), self.c12],
            [self.c12.conj(), Complex64::new(self.c22, 0.0)],
        ]
    }

    pub fn trace(&self) -> f64 {
        self.c11 + self.c22
    }

    pub fn det(&self) -> f64 {
        self.c11 * self.c22 - self.c12.norm_sqr()
    }

    pub fn max_abs_diff(&self, other: &CoherencyMatrix) -> f64 {
        (self.c11 - other.c11)
            .abs()
            .max((self.c22 - other.c22).abs())
            .max((self.c12 - other.c12).norm())
    }
}

/// `(S0, S1, S2, S3)`: intensity and the three polarization observables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StokesVector {
    pub s0: f64,
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
}

impl StokesVector {
    /// Checks physicality: `S0 ≥ 0` and a non-negative interval.
    pub fn new(s0: f64, s1: f64, s2: f64, s3: f64) -> Result<Self> {
        let s = StokesVector { s0, s1, s2, s3 };
        if !s.as_four_vector().is_finite() {
            return Err(OpticsError::Domain(
                "Stokes components must be finite".into(),
            ));
        }
        if s0 < 0.0 {
            return Err(OpticsError::Domain(format!("S0 = {s0} is negative")));
        }
        let m2 = minkowski_interval(&s.as_four_vector());
        if m2 < -PHYSICAL_TOL * (s0 * s0).max(1.0) {
            return Err(OpticsError::Domain(format!(
                "unphysical Stokes vector: S0² − S1² − S2² − S3² = {m2}"
            )));
        }
        Ok(s)
    }

    pub fn as_four_vector(&self) -> FourVector {
        FourVector::new(self.s0, self.s1, self.s2, self.s3)
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.s0, self.s1, self.s2, self.s3]
    }

    pub fn max_abs_diff(&self, other: &StokesVector) -> f64 {
        self.as_four_vector().max_abs_diff(&other.as_four_vector())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MixClass {
    Pure,
    PartiallyMixed,
    CompletelyRandom,
}

impl MixClass {
    pub fn name(&self) -> &'static str {
        match self {
            MixClass::Pure => "Pure",
            MixClass::PartiallyMixed => "PartiallyMixed",
            MixClass::CompletelyRandom => "CompletelyRandom",
        }
    }
}

impl fmt::Display for MixClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The mass-like measure `M² = S0² − S1² − S2² − S3²` and its normalized size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixednessReport {
    pub m_squared: f64,
    /// `M / S0`, in `[0, 1]`.
    pub ratio: f64,
    pub class: MixClass,
}

/// `c_ij = ψ_i·conj(ψ_j)`, a rank-one coherency matrix.
pub fn coherency_from_jones(psi: &JonesSpinor) -> CoherencyMatrix {
    CoherencyMatrix {
        c11: psi.psi1.norm_sqr(),
        c12: psi.psi1 * psi.psi2.conj(),
        c22: psi.psi2.norm_sqr(),
    }
}

pub fn stokes_from_coherency(c: &CoherencyMatrix) -> StokesVector {
    StokesVector {
        s0: c.c11 + c.c22,
        s1: c.c11 - c.c22,
        s2: 2.0 * c.c12.re,
        s3: 2.0 * c.c12.im,
    }
}

pub fn coherency_from_stokes(s: &StokesVector) -> Result<CoherencyMatrix> {
    let s = StokesVector::new(s.s0, s.s1, s.s2, s.s3)?;
    Ok(CoherencyMatrix {
        c11: 0.5 * (s.s0 + s.s1),
        c12: Complex64::new(0.5 * s.s2, 0.5 * s.s3),
        c22: 0.5 * (s.s0 - s.s1),
    })
}

/// Stokes vector of a pure beam.
pub fn stokes_from_jones(psi: &JonesSpinor) -> StokesVector {
    stokes_from_coherency(&coherency_from_jones(psi))
}

/// `ψ' = A·ψ`.
pub fn transform_jones(a: &Sl2c, psi: &JonesSpinor) -> JonesSpinor {
    let [psi1, psi2] = a.apply([psi.psi1, psi.psi2]);
    // det A = 1, so a non-zero spinor stays non-zero.
    JonesSpinor { psi1, psi2 }
}

/// `C' = A·C·A†`, keeping only the Hermitian part of the rounded product.
pub fn transform_coherency(a: &Sl2c, c: &CoherencyMatrix) -> Result<CoherencyMatrix> {
    let m = a.rows();
    let cr = c.rows();
    let mut ac = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            ac[i][j] = m[i][0] * cr[0][j] + m[i][1] * cr[1][j];
        }
    }
    let entry = |i: usize, j: usize| ac[i][0] * m[j][0].conj() + ac[i][1] * m[j][1].conj();
    CoherencyMatrix::hermitian(
        entry(0, 0).re,
        (entry(0, 1) + entry(1, 0).conj()) * 0.5,
        entry(1, 1).re,
    )
}

/// The Mueller matrix of a deterministic element: its Lorentz lift.
pub fn mueller_from_sl2c(a: &Sl2c, tol: &Tolerances) -> Result<LorentzMatrix> {
    lorentz::lift(a, tol)
}

/// `M·S` for a Mueller matrix `M`.
pub fn apply_mueller(m: &LorentzMatrix, s: &StokesVector) -> Result<StokesVector> {
    let v = lorentz::apply(m, &s.as_four_vector());
    StokesVector::new(v.t, v.z, v.x, v.y)
}

/// Scales the off-diagonal coherence by `r ∈ [0, 1]`, leaving intensities alone.
pub fn decohere(c: &CoherencyMatrix, r: f64) -> Result<CoherencyMatrix> {
    if !(0.0..=1.0).contains(&r) {
        return Err(OpticsError::Domain(format!(
            "coherence factor {r} is outside [0, 1]"
        )));
    }
    Ok(CoherencyMatrix {
        c11: c.c11,
        c12: c.c12 * r,
        c22: c.c22,
    })
}

pub fn mixedness(s: &StokesVector, tol: &Tolerances) -> Result<MixednessReport> {
    let s = StokesVector::new(s.s0, s.s1, s.s2, s.s3)?;
    if s.s0 == 0.0 {
        return Err(OpticsError::Domain(
            "mixedness is undefined for zero intensity".into(),
        ));
    }
    let m_squared = minkowski_interval(&s.as_four_vector());
    let ratio = (m_squared.max(0.0).sqrt() / s.s0).min(1.0);
    // M is the square root of a cancelling difference, so a pure state
    // computed in f64 carries M/S0 ~ 1e-8; the pure test is made on M²/S0².
    let class = if m_squared <= tol.mix * s.s0 * s.s0 {
        MixClass::Pure
    } else if ratio >= 1.0 - tol.mix {
        MixClass::CompletelyRandom
    } else {
        MixClass::PartiallyMixed
    };
    Ok(MixednessReport {
        m_squared,
        ratio,
        class,
    })
}
