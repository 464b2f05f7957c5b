use super::{classify, AngularRoot, Coupling, RootKind, RotationFamily};
use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Open interval `(lo, hi)` holding exactly one moving root for `0 < δ < π/2`.
///
/// `lo` is the free value `|m|`, `hi` the unitary value (a multiple of 3).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

/// Flat roots `λ = 3j ≤ lambda_max`, `cos(jπ) = c`; only families 0 and 3 have them.
pub fn flat_roots(family: RotationFamily, lambda_max: f64, coupling: Coupling) -> Vec<AngularRoot> {
    let first = match family.m_bar() {
        0 => 6,
        3 => 3,
        _ => return Vec::new(),
    };
    (0..)
        .map(|k| (first + 6 * k) as f64)
        .take_while(|&l| l <= lambda_max)
        .enumerate()
        .map(|(branch, lambda)| AngularRoot {
            family,
            branch,
            kind: RootKind::Flat,
            lambda,
            irrep: classify(family, RootKind::Flat),
            delta: coupling.delta(),
        })
        .collect()
}

/// Brackets of the moving roots whose free value is at most `lambda_max`.
pub fn moving_brackets(family: RotationFamily, lambda_max: f64) -> impl Iterator<Item = Bracket> {
    // (lo, hi) offsets within one period of 6
    let pattern: &'static [(u32, u32)] = match family.m_bar() {
        0 => &[(0, 3)],
        1 => &[(1, 3), (5, 6)],
        2 => &[(2, 3), (4, 6)],
        _ => &[(3, 6)],
    };
    (0u32..)
        .flat_map(move |period| {
            pattern.iter().map(move |&(lo, hi)| Bracket {
                lo: (6 * period + lo) as f64,
                hi: (6 * period + hi) as f64,
            })
        })
        .take_while(move |b| b.lo <= lambda_max)
}

/// The reduced quantization function for the family and its `λ` derivative.
///
/// Families 1, 2 use `F(λ) = sin δ sin(λπ/3) - cos δ λ (c - cos(λπ/3))`.
/// For families 0 and 3 the flat roots are divided out of `F`:
/// `F = 2 sin(λπ/6)·h₀` and `F = 2 cos(λπ/6)·h₃` respectively.
fn reduced(family: RotationFamily, sd: f64, cd: f64, lambda: f64) -> (f64, f64) {
    match family.m_bar() {
        0 => {
            let y = lambda * PI / 6.0;
            let (s, c) = y.sin_cos();
            let h = sd * c - cd * lambda * s;
            let dh = -sd * (PI / 6.0) * s - cd * (s + lambda * (PI / 6.0) * c);
            (h, dh)
        }
        3 => {
            let y = lambda * PI / 6.0;
            let (s, c) = y.sin_cos();
            let h = sd * s + cd * lambda * c;
            let dh = sd * (PI / 6.0) * c + cd * (c - lambda * (PI / 6.0) * s);
            (h, dh)
        }
        _ => {
            let x = lambda * PI / 3.0;
            let (s, c) = x.sin_cos();
            let cm = family.c();
            let f = sd * s - cd * lambda * (cm - c);
            let df = sd * (PI / 3.0) * c - cd * ((cm - c) + lambda * (PI / 3.0) * s);
            (f, df)
        }
    }
}

/// `F(λ) = sin δ sin(λπ/3) - cos δ λ (c - cos(λπ/3))` for the family.
pub fn quantization_function(family: RotationFamily, coupling: Coupling, lambda: f64) -> f64 {
    let (sd, cd) = coupling.delta().sin_cos();
    let x = lambda * PI / 3.0;
    sd * x.sin() - cd * lambda * (family.c() - x.cos())
}

/// `cos(λπ/3) + (kink/2λ) sin(λπ/3) - cos(mπ/3)`; only meaningful for `δ < π/2`, `λ > 0`.
pub fn quantization_residual(root: &AngularRoot) -> f64 {
    let kink = 2.0 * root.delta.tan();
    let x = root.lambda * PI / 3.0;
    x.cos() + kink / (2.0 * root.lambda) * x.sin() - root.family.c()
}

/// The unique moving root inside `bracket` at the given coupling.
///
/// Bisection down to a width of 1e-8, then a safeguarded Newton polish.
pub fn solve_lambda(family: RotationFamily, bracket: Bracket, coupling: Coupling) -> Result<f64> {
    if coupling.is_free() {
        return Ok(bracket.lo);
    }
    if coupling.is_unitary() {
        return Ok(bracket.hi);
    }
    let (sd, cd) = coupling.delta().sin_cos();
    let f = |l: f64| reduced(family, sd, cd, l);
    let (mut lo, mut hi) = (bracket.lo, bracket.hi);
    let (flo, _) = f(lo);
    let (fhi, _) = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::Internal(format!(
            "no sign change for family {family} on ({}, {}) at delta = {}: F = {flo}, {fhi}",
            bracket.lo,
            bracket.hi,
            coupling.delta()
        )));
    }
    let lo_sign = flo.signum();
    while hi - lo > 1e-8 {
        let mid = 0.5 * (lo + hi);
        let (fm, _) = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..60 {
        let (fx, dfx) = f(x);
        if fx == 0.0 {
            break;
        }
        if fx.signum() == lo_sign {
            lo = x;
        } else {
            hi = x;
        }
        let mut next = x - fx / dfx;
        if !(next > lo && next < hi) || !next.is_finite() {
            next = 0.5 * (lo + hi);
        }
        let step = (next - x).abs();
        x = next;
        if step <= 4.0 * f64::EPSILON * x.abs().max(1.0) {
            break;
        }
    }
    Ok(x)
}

/// A single root identified by family, kind and branch ordinal.
pub fn root(family: RotationFamily, kind: RootKind, branch: usize, coupling: Coupling) -> Result<AngularRoot> {
    let lambda = match kind {
        RootKind::Flat => {
            let first = match family.m_bar() {
                0 => 6,
                3 => 3,
                m => return Err(Error::Argument(format!("family {m} has no flat roots"))),
            };
            (first + 6 * branch) as f64
        }
        RootKind::Moving => {
            let bracket = moving_brackets(family, f64::INFINITY)
                .nth(branch)
                .expect("moving brackets are unbounded");
            solve_lambda(family, bracket, coupling)?
        }
    };
    Ok(AngularRoot {
        family,
        branch,
        kind,
        lambda,
        irrep: classify(family, kind),
        delta: coupling.delta(),
    })
}

/// Every root of the family with `λ ≤ lambda_max`, ascending.
pub fn roots_up_to(family: RotationFamily, lambda_max: f64, coupling: Coupling) -> Result<Vec<AngularRoot>> {
    let mut out = flat_roots(family, lambda_max, coupling);
    for (branch, bracket) in moving_brackets(family, lambda_max).enumerate() {
        let lambda = solve_lambda(family, bracket, coupling)?;
        if lambda <= lambda_max {
            out.push(AngularRoot {
                family,
                branch,
                kind: RootKind::Moving,
                lambda,
                irrep: classify(family, RootKind::Moving),
                delta: coupling.delta(),
            });
        }
    }
    out.sort_by(|a, b| a.lambda.total_cmp(&b.lambda).then(a.kind.cmp(&b.kind)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angular::Irrep;
    use std::f64::consts::FRAC_PI_2;

    fn fam(m: u8) -> RotationFamily {
        RotationFamily::new(m).unwrap()
    }

    fn brackets(m: u8, max: f64) -> Vec<(f64, f64)> {
        moving_brackets(fam(m), max).map(|b| (b.lo, b.hi)).collect()
    }

    #[test]
    fn flat_root_examples() {
        let c = Coupling::new(0.7).unwrap();
        let l: Vec<f64> = flat_roots(fam(3), 10.0, c).iter().map(|r| r.lambda).collect();
        assert_eq!(l, vec![3.0, 9.0]);
        let l: Vec<f64> = flat_roots(fam(0), 13.0, c).iter().map(|r| r.lambda).collect();
        assert_eq!(l, vec![6.0, 12.0]);
        assert!(flat_roots(fam(1), 100.0, c).is_empty());
        assert!(flat_roots(fam(2), 100.0, c).is_empty());
        for r in flat_roots(fam(0), 40.0, c).iter().chain(&flat_roots(fam(3), 40.0, c)) {
            let j = (r.lambda / 3.0).round();
            assert_eq!(r.lambda, 3.0 * j);
            assert!(((j * PI).cos() - r.family.c()).abs() < 1e-15);
        }
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(brackets(1, 6.0), vec![(1.0, 3.0), (5.0, 6.0)]);
        assert_eq!(brackets(0, 4.0), vec![(0.0, 3.0)]);
        assert_eq!(brackets(0, 13.0), vec![(0.0, 3.0), (6.0, 9.0), (12.0, 15.0)]);
        assert_eq!(brackets(3, 12.0), vec![(3.0, 6.0), (9.0, 12.0)]);
        assert_eq!(
            brackets(2, 12.0),
            vec![(2.0, 3.0), (4.0, 6.0), (8.0, 9.0), (10.0, 12.0)]
        );
        assert_eq!(
            brackets(1, 12.0),
            vec![(1.0, 3.0), (5.0, 6.0), (7.0, 9.0), (11.0, 12.0)]
        );
    }

    #[test]
    fn brackets_disjoint_and_interleave_flat_roots() {
        let c = Coupling::new(0.4).unwrap();
        for m in 0..4 {
            let b = brackets(m, 60.0);
            for w in b.windows(2) {
                assert!(w[0].1 <= w[1].0);
            }
            for r in flat_roots(fam(m), 60.0, c) {
                assert!(b.iter().all(|&(lo, hi)| !(r.lambda > lo && r.lambda < hi)));
            }
        }
        // at δ = 0, moving (doublets counted twice) plus flat roots reproduce
        // the free |m| content: one state for m = 0, two for every |m| > 0
        let mut count = vec![0; 31];
        for m in 0..4u8 {
            let weight = if fam(m).is_doublet() { 2 } else { 1 };
            for (lo, _) in brackets(m, 30.0) {
                count[lo as usize] += weight;
            }
            for r in flat_roots(fam(m), 30.0, c) {
                count[r.lambda as usize] += 1;
            }
        }
        assert_eq!(count[0], 1);
        assert!(count[1..].iter().all(|&n| n == 2), "{count:?}");
    }

    #[test]
    fn solve_examples() {
        let b = Bracket { lo: 0.0, hi: 3.0 };
        assert_eq!(solve_lambda(fam(0), b, Coupling::free()).unwrap(), 0.0);
        assert_eq!(
            solve_lambda(fam(1), Bracket { lo: 1.0, hi: 3.0 }, Coupling::unitary()).unwrap(),
            3.0
        );
        let small = Coupling::new(1e-4).unwrap();
        let l = solve_lambda(fam(0), b, small).unwrap();
        let series = (6.0 * 1e-4f64.tan() / PI).sqrt();
        assert!((l / series - 1.0).abs() < 0.01, "{l} vs {series}");
        assert!((l - 0.013820).abs() / 0.013820 < 0.01);
        // plain bisection on F (with λ divided out) as an independent oracle
        let oracle = {
            let g = |x: f64| {
                let s = (x * PI / 3.0).sin() / x;
                1e-4f64.sin() * s - 1e-4f64.cos() * (1.0 - (x * PI / 3.0).cos())
            };
            let (mut a, mut c) = (1e-6, 3.0 - 1e-9);
            for _ in 0..200 {
                let m = 0.5 * (a + c);
                if g(m) > 0.0 {
                    a = m
                } else {
                    c = m
                }
            }
            0.5 * (a + c)
        };
        assert!((l - oracle).abs() < 1e-13);
    }

    #[test]
    fn residual_small_on_grid() {
        for m in 0..4 {
            for k in 1..50 {
                let delta = k as f64 * FRAC_PI_2 / 50.0;
                let c = Coupling::new(delta).unwrap();
                for r in roots_up_to(fam(m), 20.0, c).unwrap() {
                    if r.kind == RootKind::Moving {
                        let f = quantization_function(fam(m), c, r.lambda);
                        assert!(f.abs() < 1e-13 * r.lambda.max(1.0), "F = {f} at {r:?}");
                        if !c.is_unitary() {
                            assert!(quantization_residual(&r).abs() < 1e-10, "{r:?}");
                        }
                        let b = r.bracket().unwrap();
                        if !c.is_unitary() {
                            assert!(r.lambda > b.lo && r.lambda < b.hi);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn monotone_in_delta() {
        for m in 0..4 {
            for (branch, b) in moving_brackets(fam(m), 24.0).enumerate() {
                let mut prev = b.lo;
                for k in 0..=50 {
                    let c = Coupling::new(k as f64 * FRAC_PI_2 / 50.0).unwrap();
                    let l = root(fam(m), RootKind::Moving, branch, c).unwrap().lambda;
                    assert!(l >= prev, "family {m} branch {branch}: {l} < {prev}");
                    prev = l;
                }
                assert_eq!(prev, b.hi);
            }
        }
    }

    #[test]
    fn roots_sorted_and_labelled() {
        let c = Coupling::new(1.0).unwrap();
        let r = roots_up_to(fam(0), 13.0, c).unwrap();
        assert!(r.windows(2).all(|w| w[0].lambda <= w[1].lambda));
        assert_eq!(r[0].irrep.irrep, Irrep::A1);
        assert!(r
            .iter()
            .any(|x| x.kind == RootKind::Flat && x.lambda == 6.0 && x.irrep.irrep == Irrep::A2));
        assert!(root(fam(1), RootKind::Flat, 0, c).is_err());
    }
}
