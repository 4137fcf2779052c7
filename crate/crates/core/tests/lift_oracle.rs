//! The closed-form lift checked against the conjugation relation
//! `Λ_μν = ½·tr(E_μ·A·E_ν·A†)`, evaluated with plain complex 2×2 products.

use num_complex::Complex64;
use proptest::prelude::*;
use spinoptics::lorentz::{apply, lift, minkowski_interval, FourVector};
use spinoptics::polarization::{
    coherency_from_jones, coherency_from_stokes, decohere, mixedness, stokes_from_coherency,
    stokes_from_jones, transform_jones, JonesSpinor, StokesVector,
};
use spinoptics::sl2c::{attenuation, compose, phase_shift, rotation, x_boost, Sl2c};
use spinoptics::Tolerances;

type M2 = [[Complex64; 2]; 2];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn mul(a: &M2, b: &M2) -> M2 {
    let mut out = [[c(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn dagger(a: &M2) -> M2 {
    [
        [a[0][0].conj(), a[1][0].conj()],
        [a[0][1].conj(), a[1][1].conj()],
    ]
}

/// Hermitian basis for (t, z, x, y): I, σ3, σ1, −σ2.
fn basis() -> [M2; 4] {
    let o = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    [
        [[one, o], [o, one]],
        [[one, o], [o, -one]],
        [[o, one], [one, o]],
        [[o, i], [-i, o]],
    ]
}

fn oracle_lift(a: &Sl2c) -> [[f64; 4]; 4] {
    let a = a.rows();
    let ad = dagger(&a);
    let e = basis();
    let mut out = [[0.0; 4]; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            let p = mul(&e[mu], &mul(&a, &mul(&e[nu], &ad)));
            out[mu][nu] = 0.5 * (p[0][0] + p[1][1]).re;
        }
    }
    out
}

fn generator() -> impl Strategy<Value = Sl2c> {
    (0usize..4, -3.0..3.0f64).prop_map(|(k, p)| match k {
        0 => phase_shift(p).unwrap(),
        1 => rotation(p).unwrap(),
        2 => attenuation(p).unwrap(),
        _ => x_boost(p).unwrap(),
    })
}

fn chain() -> impl Strategy<Value = Sl2c> {
    prop::collection::vec(generator(), 1..8)
        .prop_map(|els| compose(&els, &Tolerances::default()).unwrap())
}

fn spinor() -> impl Strategy<Value = JonesSpinor> {
    (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64).prop_filter_map(
        "non-zero spinor",
        |(a, b, cc, d)| {
            JonesSpinor::new(c(a, b), c(cc, d))
                .ok()
                .filter(|p| p.intensity() > 1e-3)
        },
    )
}

fn scale_of(rows: &[[f64; 4]; 4]) -> f64 {
    rows.iter().flatten().fold(1.0, |m, v| m.max(v.abs()))
}

proptest! {
    #[test]
    fn closed_form_lift_matches_conjugation(a in chain()) {
        let tol = Tolerances::default();
        let l = lift(&a, &tol).unwrap();
        let oracle = oracle_lift(&a);
        let scale = scale_of(&oracle);
        for i in 0..4 {
            for j in 0..4 {
                prop_assert!((l[(i, j)] - oracle[i][j]).abs() <= 1e-12 * scale);
            }
        }
    }

    #[test]
    fn lift_is_blind_to_sign(a in chain()) {
        let tol = Tolerances::default();
        let l = lift(&a, &tol).unwrap();
        prop_assert_eq!(lift(&-a, &tol).unwrap(), l);
    }

    #[test]
    fn lift_is_a_homomorphism(a in chain(), b in chain()) {
        let tol = Tolerances::default();
        let lhs = lift(&(a * b), &tol).unwrap();
        let rhs = lift(&a, &tol).unwrap() * lift(&b, &tol).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12 * scale_of(lhs.rows()).powi(2));
    }

    #[test]
    fn interval_is_preserved(a in chain(), t in 0.0..3.0f64, z in -1.0..1.0f64, x in -1.0..1.0f64, y in -1.0..1.0f64) {
        let tol = Tolerances::default();
        let l = lift(&a, &tol).unwrap();
        let v = FourVector::new(t, z, x, y);
        let w = apply(&l, &v);
        let scale = scale_of(l.rows()).powi(2) * 10.0;
        prop_assert!((minkowski_interval(&w) - minkowski_interval(&v)).abs() <= 1e-12 * scale);
    }

    #[test]
    fn stokes_covariance(a in chain(), psi in spinor()) {
        let tol = Tolerances::default();
        let direct = stokes_from_jones(&transform_jones(&a, &psi));
        let l = lift(&a, &tol).unwrap();
        let via_mueller = apply(&l, &stokes_from_jones(&psi).as_four_vector());
        let scale = scale_of(l.rows()).powi(2);
        prop_assert!(direct.as_four_vector().max_abs_diff(&via_mueller) <= 1e-12 * scale);
    }

    #[test]
    fn pure_states_are_massless(psi in spinor()) {
        let tol = Tolerances::default();
        let s = stokes_from_jones(&psi);
        let report = mixedness(&s, &tol).unwrap();
        prop_assert!(report.m_squared.abs() <= 1e-9 * s.s0 * s.s0);
        prop_assert_eq!(report.class, spinoptics::polarization::MixClass::Pure);
    }

    #[test]
    fn decoherence_keeps_states_physical(psi in spinor(), r in 0.0..=1.0f64) {
        let tol = Tolerances::default();
        let cm = coherency_from_jones(&psi);
        let s_before = stokes_from_coherency(&cm);
        let s_after = stokes_from_coherency(&decohere(&cm, r).unwrap());
        let after = StokesVector::new(s_after.s0, s_after.s1, s_after.s2, s_after.s3);
        prop_assert!(after.is_ok());
        let m_before = mixedness(&s_before, &tol).unwrap().m_squared;
        let m_after = mixedness(&s_after, &tol).unwrap().m_squared;
        prop_assert!(m_after >= m_before - 1e-12);
    }

    #[test]
    fn stokes_round_trip(s0 in 0.01..5.0f64, u in -1.0..1.0f64, v in -1.0..1.0f64, w in -1.0..1.0f64, p in 0.0..=1.0f64) {
        let norm = (u * u + v * v + w * w).sqrt().max(1e-12);
        let k = p * s0 / norm;
        let s = StokesVector::new(s0, k * u, k * v, k * w).unwrap();
        let back = stokes_from_coherency(&coherency_from_stokes(&s).unwrap());
        prop_assert!(back.max_abs_diff(&s) <= 1e-12);
    }
}
