//! Cartesian, Jacobi and polar (hyperspherical) coordinates for three
//! particles, and the hyperradius for any `N`.

use crate::error::{Error, Result};
use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

/// Relative Jacobi coordinates in oscillator lengths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiPoint {
    /// `(x1 - x2)/√2`, the pair coordinate.
    pub x1p: f64,
    /// `(x1 + x2 - 2 x3)/√6`, the spectator coordinate.
    pub x2p: f64,
    /// `(x1 + x2 + x3)/√3`, the scaled center of mass.
    pub x3p: f64,
}

/// Relative hyperradius, polar angle and center-of-mass coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarPoint {
    pub rho: f64,
    /// In `[0, 2π)`, measured from the `x1p` axis.
    pub phi: f64,
    pub xcm: f64,
}

/// Particle pair whose coincidence defines a pair of interaction lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pair {
    P12,
    P23,
    P31,
}

const INV_SQRT_3: f64 = 0.577_350_269_189_625_8;
const INV_SQRT_6: f64 = 0.408_248_290_463_863;

/// The orthogonal Jacobi matrix, rows `(1,-1,0)/√2`, `(1,1,-2)/√6`, `(1,1,1)/√3`.
pub const JACOBI: [[f64; 3]; 3] = [
    [FRAC_1_SQRT_2, -FRAC_1_SQRT_2, 0.0],
    [INV_SQRT_6, INV_SQRT_6, -2.0 * INV_SQRT_6],
    [INV_SQRT_3, INV_SQRT_3, INV_SQRT_3],
];

pub fn to_jacobi(x: [f64; 3]) -> JacobiPoint {
    let row = |r: &[f64; 3]| r[0] * x[0] + r[1] * x[1] + r[2] * x[2];
    JacobiPoint {
        x1p: row(&JACOBI[0]),
        x2p: row(&JACOBI[1]),
        x3p: row(&JACOBI[2]),
    }
}

/// Inverse transform; `J` is orthogonal so this is `Jᵀ x'`.
pub fn from_jacobi(p: JacobiPoint) -> [f64; 3] {
    let v = [p.x1p, p.x2p, p.x3p];
    let mut out = [0.0; 3];
    for (i, o) in out.iter_mut().enumerate() {
        *o = (0..3).map(|r| JACOBI[r][i] * v[r]).sum();
    }
    out
}

/// Relative hyperradius `(1/√N) √((N-1) Σ x_i² - 2 Σ_{i<j} x_i x_j)`.
///
/// Evaluated as `√(Σ (x_i - x̄)²)`, the same quadratic form with the
/// center of mass removed first, so the result is translation invariant to
/// rounding and the radicand is never negative.
pub fn hyperradius(x: &[f64]) -> Result<f64> {
    let n = x.len();
    if n < 2 {
        return Err(Error::Argument(format!(
            "hyperradius needs at least 2 particles, got {n}"
        )));
    }
    let mean = x.iter().sum::<f64>() / n as f64;
    Ok(x.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>().sqrt())
}

pub fn to_polar(x: [f64; 3]) -> Result<PolarPoint> {
    let j = to_jacobi(x);
    let rho = j.x1p.hypot(j.x2p);
    if rho == 0.0 {
        return Err(Error::AngleUndefined);
    }
    Ok(PolarPoint {
        rho,
        phi: j.x2p.atan2(j.x1p).rem_euclid(TAU),
        xcm: j.x3p,
    })
}

pub fn from_polar(p: PolarPoint) -> [f64; 3] {
    from_jacobi(JacobiPoint {
        x1p: p.rho * p.phi.cos(),
        x2p: p.rho * p.phi.sin(),
        x3p: p.xcm,
    })
}

/// The two polar angles on which the given pair of particles coincide.
pub fn coincidence_angles(pair: Pair) -> [f64; 2] {
    match pair {
        Pair::P12 => [PI / 2.0, 3.0 * PI / 2.0],
        Pair::P23 => [PI / 6.0, 7.0 * PI / 6.0],
        Pair::P31 => [5.0 * PI / 6.0, 11.0 * PI / 6.0],
    }
}

/// The six interaction lines `φ_n = (2n-1)π/6`, `n = 1..=6`.
pub fn interaction_lines() -> [f64; 6] {
    std::array::from_fn(|i| (2 * i + 1) as f64 * PI / 6.0)
}

/// Sector index `1..=6` containing `phi`; sector 1 spans `(-π/6, π/6)`.
pub fn sector_of(phi: f64) -> usize {
    let shifted = (phi + PI / 6.0).rem_euclid(TAU);
    ((shifted / (PI / 3.0)).floor() as usize).min(5) + 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn jacobi_examples() {
        let p = to_jacobi([1.0, 1.0, 1.0]);
        assert!(p.x1p.abs() < 1e-15 && p.x2p.abs() < 1e-15);
        assert_relative_eq!(p.x3p, 3f64.sqrt(), max_relative = 1e-15);
        let p = to_jacobi([1.0, -1.0, 0.0]);
        assert_relative_eq!(p.x1p, 2f64.sqrt(), max_relative = 1e-15);
        assert!(p.x2p.abs() < 1e-15 && p.x3p.abs() < 1e-15);
    }

    #[test]
    fn jacobi_matrix_is_orthogonal() {
        for a in 0..3 {
            for b in 0..3 {
                let dot: f64 = (0..3).map(|k| JACOBI[a][k] * JACOBI[b][k]).sum();
                let expected = if a == b { 1.0 } else { 0.0 };
                assert!((dot - expected).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn hyperradius_examples() {
        assert!(hyperradius(&[2.5, 2.5, 2.5]).unwrap() < 1e-12);
        assert_relative_eq!(
            hyperradius(&[1.0, -1.0, 0.0]).unwrap(),
            2f64.sqrt(),
            max_relative = 1e-14
        );
        // N = 4, (1,0,0,0): both forms give √(3/4)
        let via_formula = hyperradius(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        let x = [1.0f64, 0.0, 0.0, 0.0];
        let n = x.len() as f64;
        let s: f64 = x.iter().sum();
        let sq: f64 = x.iter().map(|v| v * v).sum();
        let rewritten = ((n * sq - s * s) / n).sqrt();
        let literal = {
            let pairs: f64 = (0..4)
                .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                .map(|(i, j)| x[i] * x[j])
                .sum();
            (((n - 1.0) * sq - 2.0 * pairs) / n).sqrt()
        };
        assert_relative_eq!(via_formula, literal, max_relative = 1e-14);
        assert_relative_eq!(via_formula, rewritten, max_relative = 1e-14);
        assert_relative_eq!(via_formula, 0.75f64.sqrt(), max_relative = 1e-14);
        assert!(hyperradius(&[1.0]).is_err());
    }

    #[test]
    fn pair_coincidence_lines() {
        assert_eq!(coincidence_angles(Pair::P12), [PI / 2.0, 3.0 * PI / 2.0]);
        for (pair, (i, j)) in [(Pair::P12, (0, 1)), (Pair::P23, (1, 2)), (Pair::P31, (2, 0))] {
            let lines = coincidence_angles(pair);
            for k in 0..50 {
                let t = k as f64 * 0.37 - 9.0;
                let mut x = [0.3 * t, -0.7 * t + 1.1, 0.2 - t];
                x[j] = x[i];
                let Ok(p) = to_polar(x) else { continue };
                let hit = lines.iter().any(|&l| (p.phi - l).abs() < 1e-10);
                assert!(hit, "pair {pair:?}: phi = {}", p.phi);
            }
        }
    }

    #[test]
    fn polar_rejects_origin() {
        assert_eq!(to_polar([0.4, 0.4, 0.4]), Err(Error::AngleUndefined));
    }

    #[test]
    fn sectors() {
        assert_eq!(sector_of(0.0), 1);
        assert_eq!(sector_of(-0.1), 1);
        assert_eq!(sector_of(TAU - 0.1), 1);
        assert_eq!(sector_of(PI / 3.0), 2);
        assert_eq!(sector_of(PI), 4);
        assert_eq!(sector_of(5.0 * PI / 3.0), 6);
        let lines = interaction_lines();
        assert_relative_eq!(lines[0], PI / 6.0);
        assert_relative_eq!(lines[5], 11.0 * PI / 6.0);
    }

    proptest! {
        #[test]
        fn jacobi_preserves_norm_and_round_trips(a in -50.0f64..50.0, b in -50.0f64..50.0, c in -50.0f64..50.0) {
            let x = [a, b, c];
            let p = to_jacobi(x);
            let n0 = a * a + b * b + c * c;
            let n1 = p.x1p * p.x1p + p.x2p * p.x2p + p.x3p * p.x3p;
            prop_assert!((n0 - n1).abs() <= 1e-12 * n0.max(1.0));
            let back = from_jacobi(p);
            for k in 0..3 {
                prop_assert!((back[k] - x[k]).abs() <= 1e-12 * n0.sqrt().max(1.0));
            }
        }

        #[test]
        fn hyperradius_matches_jacobi(a in -20.0f64..20.0, b in -20.0f64..20.0, c in -20.0f64..20.0) {
            let p = to_jacobi([a, b, c]);
            let r = hyperradius(&[a, b, c]).unwrap();
            let scale = (a * a + b * b + c * c).sqrt().max(1.0);
            prop_assert!((r - p.x1p.hypot(p.x2p)).abs() <= 1e-12 * scale);
        }

        #[test]
        fn hyperradius_translation_invariant(x in prop::collection::vec(-10.0f64..10.0, 2..7), shift in -30.0f64..30.0) {
            let shifted: Vec<f64> = x.iter().map(|v| v + shift).collect();
            let r0 = hyperradius(&x).unwrap();
            let r1 = hyperradius(&shifted).unwrap();
            prop_assert!((r0 - r1).abs() <= 1e-12);
        }

        #[test]
        fn polar_round_trip(rho in 0.01f64..30.0, phi in 0.0f64..TAU, xcm in -5.0f64..5.0) {
            let x = from_polar(PolarPoint { rho, phi, xcm });
            let p = to_polar(x).unwrap();
            prop_assert!((p.rho - rho).abs() < 1e-12 * rho.max(1.0));
            let dphi = (p.phi - phi).rem_euclid(TAU);
            prop_assert!(dphi.min(TAU - dphi) < 1e-10);
            prop_assert!((p.xcm - xcm).abs() < 1e-12 * rho.max(1.0));
        }
    }
}
