//! Unit-determinant 2×2 complex matrices.
//!
//! Every optical element handled by the crate is an [`Sl2c`]. The four
//! generator families use the half-angle convention, so that the lift to
//! Lorentz matrices reproduces full-angle rotations and boosts.

use std::fmt;
use std::ops::{Mul, Neg};

use num_complex::Complex64;

use crate::{ensure_finite, OpticsError, Result, Tolerances};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A 2×2 complex matrix `[[alpha, beta], [gamma, delta]]` with determinant one.
///
/// Constructors either guarantee the determinant analytically (the
/// generators) or check it ([`Sl2c::new`]). Products through [`compose`]
/// are re-checked; `*` multiplies without checking.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sl2c {
    alpha: Complex64,
    beta: Complex64,
    gamma: Complex64,
    delta: Complex64,
}

impl Sl2c {
    pub const IDENTITY: Sl2c = Sl2c {
        alpha: ONE,
        beta: ZERO,
        gamma: ZERO,
        delta: ONE,
    };

    /// Builds a matrix from row-major entries, checking finiteness and `det = 1`.
    pub fn new(
        alpha: Complex64,
        beta: Complex64,
        gamma: Complex64,
        delta: Complex64,
        tol: &Tolerances,
    ) -> Result<Self> {
        for (name, z) in [
            ("alpha", alpha),
            ("beta", beta),
            ("gamma", gamma),
            ("delta", delta),
        ] {
            if !z.is_finite() {
                return Err(OpticsError::Domain(format!("entry {name} is not finite")));
            }
        }
        let m = Sl2c::raw(alpha, beta, gamma, delta);
        let drift = m.det_drift();
        if drift > tol.det {
            return Err(OpticsError::Domain(format!(
                "determinant {} differs from 1 (relative drift {drift:.3e})",
                m.det()
            )));
        }
        Ok(m)
    }

    /// Real-entry convenience wrapper around [`Sl2c::new`].
    pub fn from_real(a: f64, b: f64, c: f64, d: f64, tol: &Tolerances) -> Result<Self> {
        Sl2c::new(
            Complex64::new(a, 0.0),
            Complex64::new(b, 0.0),
            Complex64::new(c, 0.0),
            Complex64::new(d, 0.0),
            tol,
        )
    }

    const fn raw(alpha: Complex64, beta: Complex64, gamma: Complex64, delta: Complex64) -> Self {
        Sl2c {
            alpha,
            beta,
            gamma,
            delta,
        }
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    pub fn gamma(&self) -> Complex64 {
        self.gamma
    }

    pub fn delta(&self) -> Complex64 {
        self.delta
    }

    /// Entries as `[[alpha, beta], [gamma, delta]]`.
    pub fn rows(&self) -> [[Complex64; 2]; 2] {
        [[self.alpha, self.beta], [self.gamma, self.delta]]
    }

    pub fn det(&self) -> Complex64 {
        self.alpha * self.delta - self.beta * self.gamma
    }

    pub fn trace(&self) -> Complex64 {
        self.alpha + self.delta
    }

    /// `|det − 1|` relative to the size of the two products forming the determinant.
    pub fn det_drift(&self) -> f64 {
        let scale = (self.alpha * self.delta).norm() + (self.beta * self.gamma).norm();
        (self.det() - ONE).norm() / scale.max(1.0)
    }

    /// True when every imaginary part is at most `tol` in magnitude.
    pub fn is_real(&self, tol: f64) -> bool {
        [self.alpha, self.beta, self.gamma, self.delta]
            .iter()
            .all(|z| z.im.abs() <= tol)
    }

    /// Matrix inverse, `[[delta, −beta], [−gamma, alpha]]`.
    pub fn inverse(&self) -> Sl2c {
        Sl2c::raw(self.delta, -self.beta, -self.gamma, self.alpha)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Sl2c {
        Sl2c::raw(
            self.alpha.conj(),
            self.gamma.conj(),
            self.beta.conj(),
            self.delta.conj(),
        )
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Sl2c) -> f64 {
        let a = self.rows();
        let b = other.rows();
        let mut worst = 0.0_f64;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((a[i][j] - b[i][j]).norm());
            }
        }
        worst
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [
            self.alpha * v[0] + self.beta * v[1],
            self.gamma * v[0] + self.delta * v[1],
        ]
    }
}

impl Mul for Sl2c {
    type Output = Sl2c;

    fn mul(self, rhs: Sl2c) -> Sl2c {
        Sl2c::raw(
            self.alpha * rhs.alpha + self.beta * rhs.gamma,
            self.alpha * rhs.beta + self.beta * rhs.delta,
            self.gamma * rhs.alpha + self.delta * rhs.gamma,
            self.gamma * rhs.beta + self.delta * rhs.delta,
        )
    }
}

impl Neg for Sl2c {
    type Output = Sl2c;

    fn neg(self) -> Sl2c {
        Sl2c::raw(-self.alpha, -self.beta, -self.gamma, -self.delta)
    }
}

impl fmt::Display for Sl2c {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.alpha, self.beta, self.gamma, self.delta
        )
    }
}

/// Relative phase shift between the two beams: `diag(e^{iφ/2}, e^{−iφ/2})`.
pub fn phase_shift(phi: f64) -> Result<Sl2c> {
    ensure_finite("phi", phi)?;
    let half = Complex64::from_polar(1.0, phi / 2.0);
    Ok(Sl2c::raw(half, ZERO, ZERO, half.conj()))
}

/// Beam-mixing rotation `[[cos(θ/2), −sin(θ/2)], [sin(θ/2), cos(θ/2)]]`.
pub fn rotation(theta: f64) -> Result<Sl2c> {
    ensure_finite("theta", theta)?;
    let (s, c) = (theta / 2.0).sin_cos();
    Ok(Sl2c::raw(
        Complex64::new(c, 0.0),
        Complex64::new(-s, 0.0),
        Complex64::new(s, 0.0),
        Complex64::new(c, 0.0),
    ))
}

/// Relative attenuation, a boost along z: `diag(e^{η/2}, e^{−η/2})`.
pub fn attenuation(eta: f64) -> Result<Sl2c> {
    ensure_finite("eta", eta)?;
    let half = eta / 2.0;
    Ok(Sl2c::raw(
        Complex64::new(half.exp(), 0.0),
        ZERO,
        ZERO,
        Complex64::new((-half).exp(), 0.0),
    ))
}

/// Boost along x: `[[cosh(χ/2), sinh(χ/2)], [sinh(χ/2), cosh(χ/2)]]`.
pub fn x_boost(chi: f64) -> Result<Sl2c> {
    ensure_finite("chi", chi)?;
    let ch = Complex64::new((chi / 2.0).cosh(), 0.0);
    let sh = Complex64::new((chi / 2.0).sinh(), 0.0);
    Ok(Sl2c::raw(ch, sh, sh, ch))
}

/// Composes elements in beam-traversal order.
///
/// The first element of `elements` acts first on the beam, so it sits
/// rightmost in the product. The determinant of the result is re-checked
/// against `tol.det`; drift is reported, never renormalized away.
pub fn compose(elements: &[Sl2c], tol: &Tolerances) -> Result<Sl2c> {
    let (first, rest) = elements
        .split_first()
        .ok_or_else(|| OpticsError::Usage("cannot compose an empty chain".into()))?;
    let product = rest.iter().fold(*first, |acc, m| *m * acc);
    let drift = product.det_drift();
    if drift > tol.det {
        return Err(OpticsError::Integrity(format!(
            "determinant of composed chain drifted to {} (relative {drift:.3e})",
            product.det()
        )));
    }
    Ok(product)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassTag {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl ClassTag {
    pub fn name(&self) -> &'static str {
        match self {
            ClassTag::Elliptic => "Elliptic",
            ClassTag::Parabolic => "Parabolic",
            ClassTag::Hyperbolic => "Hyperbolic",
        }
    }

    /// Trace rule: `|tr| < 2` elliptic, `|tr| = 2` parabolic, `|tr| > 2` hyperbolic.
    pub fn from_trace(trace: f64, tol_cls: f64) -> ClassTag {
        let gap = trace.abs() - 2.0;
        if gap.abs() <= tol_cls {
            ClassTag::Parabolic
        } else if gap < 0.0 {
            ClassTag::Elliptic
        } else {
            ClassTag::Hyperbolic
        }
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Conjugacy class of a real SL(2) element together with the trace that decided it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConjugacyClass {
    pub tag: ClassTag,
    pub trace: f64,
}

/// Classifies a real unit-determinant matrix by its trace.
///
/// `±M` describe the same Lorentz transformation, so only `|trace|` matters.
pub fn classify_real(m: &Sl2c, tol: &Tolerances) -> Result<ConjugacyClass> {
    if !m.is_real(tol.det) {
        return Err(OpticsError::Domain(
            "classification requires a matrix with real entries".into(),
        ));
    }
    if m.det_drift() > tol.det {
        return Err(OpticsError::Domain(format!(
            "determinant {} differs from 1",
            m.det()
        )));
    }
    let trace = m.trace().re;
    Ok(ConjugacyClass {
        tag: ClassTag::from_trace(trace, tol.cls),
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real(a: f64, b: f64, cc: f64, d: f64) -> Sl2c {
        Sl2c::from_real(a, b, cc, d, &Tolerances::default()).unwrap()
    }

    #[test]
    fn generators_at_zero_are_identity() {
        for g in [phase_shift, rotation, attenuation, x_boost] {
            assert_eq!(g(0.0).unwrap(), Sl2c::IDENTITY);
        }
    }

    #[test]
    fn phase_shift_at_pi() {
        let m = phase_shift(PI).unwrap();
        assert!(m.max_abs_diff(&Sl2c::raw(c(0.0, 1.0), ZERO, ZERO, c(0.0, -1.0))) < 1e-15);
    }

    #[test]
    fn rotation_at_pi_and_two_pi() {
        assert!(
            rotation(PI)
                .unwrap()
                .max_abs_diff(&real(0.0, -1.0, 1.0, 0.0))
                < 1e-15
        );
        assert!(rotation(2.0 * PI).unwrap().max_abs_diff(&-Sl2c::IDENTITY) < 1e-15);
    }

    #[test]
    fn attenuation_at_ln3() {
        let m = attenuation(3f64.ln()).unwrap();
        let s3 = 3f64.sqrt();
        assert!(m.max_abs_diff(&real(s3, 0.0, 0.0, 1.0 / s3)) < 1e-15);
    }

    #[test]
    fn x_boost_at_two_arccosh_two() {
        let m = x_boost(2.0 * 2f64.acosh()).unwrap();
        let s3 = 3f64.sqrt();
        assert!(m.max_abs_diff(&real(2.0, s3, s3, 2.0)) < 1e-14);
    }

    #[test]
    fn non_finite_parameters_are_domain_errors() {
        for g in [phase_shift, rotation, attenuation, x_boost] {
            assert!(matches!(g(f64::NAN), Err(OpticsError::Domain(_))));
            assert!(matches!(g(f64::INFINITY), Err(OpticsError::Domain(_))));
        }
    }

    #[test]
    fn new_rejects_bad_determinant() {
        let tol = Tolerances::default();
        assert!(Sl2c::from_real(2.0, 0.0, 0.0, 1.0, &tol).is_err());
        assert!(Sl2c::new(c(f64::NAN, 0.0), ZERO, ZERO, ONE, &tol).is_err());
        assert!(Sl2c::new(c(0.0, 1.0), ZERO, ZERO, c(0.0, -1.0), &tol).is_ok());
    }

    #[test]
    fn compose_orders_by_beam_traversal() {
        let tol = Tolerances::default();
        let r = rotation(0.7).unwrap();
        let p = phase_shift(1.3).unwrap();
        assert_eq!(compose(&[r], &tol).unwrap(), r);
        assert_eq!(compose(&[r, p], &tol).unwrap(), p * r);
    }

    #[test]
    fn compose_rejects_empty_and_drift() {
        let tol = Tolerances::default();
        assert!(matches!(compose(&[], &tol), Err(OpticsError::Usage(_))));
        let bad = Sl2c::raw(c(1.0 + 1e-6, 0.0), ZERO, ZERO, ONE);
        assert!(matches!(
            compose(&[bad, Sl2c::IDENTITY], &tol),
            Err(OpticsError::Integrity(_))
        ));
    }

    #[test]
    fn classify_examples() {
        let tol = Tolerances::default();
        let e = classify_real(&rotation(FRAC_PI_2).unwrap(), &tol).unwrap();
        assert_eq!(e.tag, ClassTag::Elliptic);
        assert_abs_diff_eq!(e.trace, 2f64.sqrt(), epsilon = 1e-12);

        let p = classify_real(&real(1.0, 0.0, 2.0, 1.0), &tol).unwrap();
        assert_eq!(p.tag, ClassTag::Parabolic);
        assert_eq!(p.trace, 2.0);

        let h = classify_real(&x_boost(1.0).unwrap(), &tol).unwrap();
        assert_eq!(h.tag, ClassTag::Hyperbolic);
        assert_abs_diff_eq!(h.trace, 2.0 * 0.5f64.cosh(), epsilon = 1e-12);
        assert_abs_diff_eq!(h.trace, 2.255251, epsilon = 1e-6);

        // −M classifies like M.
        let neg = classify_real(&-x_boost(1.0).unwrap(), &tol).unwrap();
        assert_eq!(neg.tag, ClassTag::Hyperbolic);
    }

    #[test]
    fn classify_rejects_complex() {
        let tol = Tolerances::default();
        assert!(classify_real(&phase_shift(0.3).unwrap(), &tol).is_err());
    }

    #[test]
    fn long_chain_keeps_unit_determinant() {
        let tol = Tolerances::default();
        let gens = [phase_shift, rotation, attenuation, x_boost];
        let chain: Vec<Sl2c> = (0..100)
            .map(|k| {
                let p = ((k as f64) * 0.37).sin();
                gens[k % 4](p).unwrap()
            })
            .collect();
        let m = compose(&chain, &tol).unwrap();
        assert!((m.det() - ONE).norm() < 1e-9);
    }

    type Generator = fn(f64) -> Result<Sl2c>;

    fn generator() -> impl Strategy<Value = (usize, Generator)> {
        prop_oneof![
            Just((0usize, phase_shift as Generator)),
            Just((1usize, rotation as Generator)),
            Just((2usize, attenuation as Generator)),
            Just((3usize, x_boost as Generator)),
        ]
    }

    fn element() -> impl Strategy<Value = Sl2c> {
        (generator(), -3.0..3.0f64).prop_map(|((_, g), p)| g(p).unwrap())
    }

    proptest! {
        #[test]
        fn generators_have_unit_determinant((_, g) in generator(), p in -10.0..10.0f64) {
            let m = g(p).unwrap();
            prop_assert!(m.det_drift() <= 1e-12);
        }

        #[test]
        fn one_parameter_group_law((_, g) in generator(), a in -10.0..10.0f64, b in -10.0..10.0f64) {
            let lhs = g(a).unwrap() * g(b).unwrap();
            let rhs = g(a + b).unwrap();
            // Boost entries reach e^{10}; compare relative to entry size.
            let scale = rhs.rows().iter().flatten().map(|z| z.norm()).fold(1.0, f64::max);
            prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12 * scale);
        }

        #[test]
        fn compose_is_associative(a in element(), b in element(), cc in element()) {
            let tol = Tolerances::default();
            let flat = compose(&[a, b, cc], &tol).unwrap();
            let nested = compose(&[compose(&[a, b], &tol).unwrap(), cc], &tol).unwrap();
            let scale = flat.rows().iter().flatten().map(|z| z.norm()).fold(1.0, f64::max);
            prop_assert!(flat.max_abs_diff(&nested) <= 1e-12 * scale);
        }

        #[test]
        fn classification_is_conjugation_invariant(
            x in prop_oneof![0.01..1.99f64, 2.01..10.0f64],
            theta in -3.0..3.0f64,
            eta in -2.0..2.0f64,
        ) {
            let tol = Tolerances::default();
            let core = real(x - 1.0, x - 2.0, x, x - 1.0);
            let s = rotation(theta).unwrap() * attenuation(eta).unwrap();
            let conj = s * core * s.inverse();
            prop_assert_eq!(
                classify_real(&conj, &tol).unwrap().tag,
                classify_real(&core, &tol).unwrap().tag
            );
        }
    }
}
