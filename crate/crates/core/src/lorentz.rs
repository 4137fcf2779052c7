//! Lorentz matrices on `(t, z, x, y)` and the two-to-one lift from SL(2,C).
//!
//! A four-vector is encoded as the Hermitian matrix
//!
//! ```text
//! X(v) = [[t + z, x + iy],
//!         [x − iy, t − z]]
//! ```
//!
//! with `det X = t² − z² − x² − y²`. An element `A` acts by `X → A·X·A†`,
//! which preserves the determinant and hence the interval. The basis is
//! chosen so that phase shift, rotation and attenuation lift to the
//! `(x, y)` rotation, the `(z, x)` rotation and the `(t, z)` boost.

use std::fmt;
use std::ops::{Index, Mul};

use crate::sl2c::Sl2c;
use crate::{OpticsError, Result, Tolerances};

/// Diagonal of the Minkowski metric in `(t, z, x, y)` order.
pub const METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FourVector {
    pub t: f64,
    pub z: f64,
    pub x: f64,
    pub y: f64,
}

impl FourVector {
    pub const fn new(t: f64, z: f64, x: f64, y: f64) -> Self {
        FourVector { t, z, x, y }
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.t, self.z, self.x, self.y]
    }

    pub fn from_array(v: [f64; 4]) -> Self {
        FourVector::new(v[0], v[1], v[2], v[3])
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|c| c.is_finite())
    }

    pub fn max_abs_diff(&self, other: &FourVector) -> f64 {
        self.to_array()
            .iter()
            .zip(other.to_array())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// `t² − z² − x² − y²`.
pub fn minkowski_interval(v: &FourVector) -> f64 {
    v.t * v.t - v.z * v.z - v.x * v.x - v.y * v.y
}

/// A proper orthochronous Lorentz matrix, row-major in `(t, z, x, y)` order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzMatrix {
    rows: [[f64; 4]; 4],
}

impl LorentzMatrix {
    pub const IDENTITY: LorentzMatrix = LorentzMatrix {
        rows: [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ],
    };

    /// Wraps `rows` after checking metric preservation, orientation and time direction.
    pub fn new(rows: [[f64; 4]; 4], tol: &Tolerances) -> Result<Self> {
        let m = LorentzMatrix { rows };
        m.validate(tol)?;
        Ok(m)
    }

    pub fn rows(&self) -> &[[f64; 4]; 4] {
        &self.rows
    }

    /// Max entry of `|ΛᵀgΛ − g|`.
    pub fn metric_defect(&self) -> f64 {
        let r = &self.rows;
        let mut worst = 0.0_f64;
        for i in 0..4 {
            for j in 0..4 {
                let s: f64 = (0..4).map(|k| r[k][i] * METRIC[k] * r[k][j]).sum();
                let target = if i == j { METRIC[i] } else { 0.0 };
                worst = worst.max((s - target).abs());
            }
        }
        worst
    }

    pub fn det(&self) -> f64 {
        det4(self.rows)
    }

    /// Checks the invariants with tolerances scaled by `Λ₀₀²`, the size of
    /// the largest products that enter them.
    pub fn validate(&self, tol: &Tolerances) -> Result<()> {
        if !self.rows.iter().flatten().all(|v| v.is_finite()) {
            return Err(OpticsError::Integrity(
                "Lorentz matrix has non-finite entries".into(),
            ));
        }
        let scale = self.rows[0][0].abs().max(1.0).powi(2);
        let defect = self.metric_defect();
        if defect > tol.det * scale {
            return Err(OpticsError::Integrity(format!(
                "Lorentz matrix violates the metric by {defect:.3e}"
            )));
        }
        if self.rows[0][0] < 1.0 - tol.det {
            return Err(OpticsError::Integrity(format!(
                "Lorentz matrix is not orthochronous (Λ00 = {})",
                self.rows[0][0]
            )));
        }
        let det = self.det();
        if (det - 1.0).abs() > tol.det * scale * scale {
            return Err(OpticsError::Integrity(format!(
                "Lorentz matrix is not proper (det = {det})"
            )));
        }
        Ok(())
    }

    pub fn max_abs_diff(&self, other: &LorentzMatrix) -> f64 {
        self.rows
            .iter()
            .flatten()
            .zip(other.rows.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for LorentzMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.rows[i][j]
    }
}

impl Mul for LorentzMatrix {
    type Output = LorentzMatrix;

    fn mul(self, rhs: LorentzMatrix) -> LorentzMatrix {
        let mut rows = [[0.0; 4]; 4];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = (0..4).map(|k| self.rows[i][k] * rhs.rows[k][j]).sum();
            }
        }
        LorentzMatrix { rows }
    }
}

impl fmt::Display for LorentzMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            writeln!(
                f,
                "{:>12.6} {:>12.6} {:>12.6} {:>12.6}",
                row[0], row[1], row[2], row[3]
            )?;
        }
        Ok(())
    }
}

fn det4(mut m: [[f64; 4]; 4]) -> f64 {
    let mut det = 1.0;
    for col in 0..4 {
        let pivot = (col..4)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .unwrap_or(col);
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        for row in col + 1..4 {
            let factor = m[row][col] / m[col][col];
            let pivot_row = m[col];
            for (v, p) in m[row].iter_mut().zip(pivot_row).skip(col) {
                *v -= factor * p;
            }
        }
    }
    det
}

/// The Lorentz matrix `Λ` with `X(Λv) = A·X(v)·A†`.
///
/// Closed-form bilinear expressions in the entries of `A`; `lift(A)` and
/// `lift(−A)` coincide. The input is re-checked against `tol.det` and the
/// output against the Lorentz invariants.
pub fn lift(m: &Sl2c, tol: &Tolerances) -> Result<LorentzMatrix> {
    if m.det_drift() > tol.det {
        return Err(OpticsError::Domain(format!(
            "cannot lift a matrix with determinant {}",
            m.det()
        )));
    }
    let (a, b, c, d) = (m.alpha(), m.beta(), m.gamma(), m.delta());
    let (na, nb, nc, nd) = (a.norm_sqr(), b.norm_sqr(), c.norm_sqr(), d.norm_sqr());
    let ac = a * c.conj();
    let bd = b * d.conj();
    let ab = a * b.conj();
    let cd = c * d.conj();
    let ad = a * d.conj();
    let bc = b * c.conj();

    let rows = [
        [
            0.5 * (na + nb + nc + nd),
            0.5 * (na - nb + nc - nd),
            (ab + cd).re,
            -(ab + cd).im,
        ],
        [
            0.5 * (na + nb - nc - nd),
            0.5 * (na - nb - nc + nd),
            (ab - cd).re,
            -(ab - cd).im,
        ],
        [(ac + bd).re, (ac - bd).re, (ad + bc).re, -(ad - bc).im],
        [(ac + bd).im, (ac - bd).im, (ad + bc).im, (ad - bc).re],
    ];
    LorentzMatrix::new(rows, tol)
}

/// `L·v`.
pub fn apply(l: &LorentzMatrix, v: &FourVector) -> FourVector {
    let v = v.to_array();
    let mut out = [0.0; 4];
    for (i, o) in out.iter_mut().enumerate() {
        *o = (0..4).map(|k| l.rows[i][k] * v[k]).sum();
    }
    FourVector::from_array(out)
}
