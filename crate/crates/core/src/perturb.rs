//! First-order results: the contact-interaction slope `dE/dg` at `g = 0`,
//! and the near-unitary expansion of the angular coefficients.

use crate::angular::{root, roots_up_to, AngularWaveFunction, Coupling, Irrep, RootKind};
use crate::error::{Error, Result};
use crate::radial::{radial_eval, RadialState};
use crate::specfun::{gauss_legendre, hyper3f2_terminating, log_gamma};
use num_complex::Complex64;
use std::f64::consts::{PI, SQRT_2};

/// Exchange character of an `|m| = 3j > 0` state in the contact model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    Generic,
    Bosonic,
    Fermionic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContactSlopeInput {
    pub nu: usize,
    pub m_abs: usize,
    pub flavor: Flavor,
}

impl ContactSlopeInput {
    pub fn new(nu: usize, m_abs: usize, flavor: Flavor) -> Self {
        Self { nu, m_abs, flavor }
    }

    /// Angular factor `Σ_n |Φ(φ_n)|²`: `3/π` unless `|m| = 3j > 0`, where
    /// the bosonic combination gives `6/π` and the fermionic one `0`.
    pub fn angular_factor(&self) -> Result<f64> {
        if self.m_abs == 0 || self.m_abs % 3 != 0 {
            return Ok(3.0 / PI);
        }
        match self.flavor {
            Flavor::Bosonic => Ok(6.0 / PI),
            Flavor::Fermionic => Ok(0.0),
            Flavor::Generic => Err(Error::Argument(format!(
                "|m| = {} is a multiple of 3: choose bosonic or fermionic",
                self.m_abs
            ))),
        }
    }
}

/// `dE/dg` at `g = 0`:
/// `A Γ(ν+½) Γ(|m|+½) / (ν! |m|! √(2π)) · ₃F₂(-ν, |m|+½, ½; -ν+½, |m|+1; 1)`.
pub fn contact_weak_slope(input: &ContactSlopeInput) -> Result<f64> {
    let a = input.angular_factor()?;
    if a == 0.0 {
        return Ok(0.0);
    }
    let nu = input.nu as f64;
    let m = input.m_abs as f64;
    let ln_pref = log_gamma(nu + 0.5)? + log_gamma(m + 0.5)? - log_gamma(nu + 1.0)? - log_gamma(m + 1.0)?;
    let f = hyper3f2_terminating(input.nu, m + 0.5, 0.5, 0.5 - nu, m + 1.0)?;
    Ok(a * ln_pref.exp() / (2.0 * PI).sqrt() * f)
}

/// Same slope as `(A/√2) ∫₀^∞ R_{ν,|m|}(ρ)² dρ`, by quadrature.
pub fn contact_weak_slope_quadrature(input: &ContactSlopeInput) -> Result<f64> {
    let a = input.angular_factor()?;
    if a == 0.0 {
        return Ok(0.0);
    }
    let state = RadialState::three(input.nu, input.m_abs as f64)?;
    let rule = gauss_legendre(160)?;
    let rho_max = state.energy().sqrt() + 10.0;
    let integral = rule.integrate(0.0, rho_max, |r| radial_eval(&state, r).powi(2));
    Ok(a / SQRT_2 * integral)
}

/// First-order coefficient ratio near unitarity,
/// `b₁/a₁ ≈ (-1)^{λ+1} (1 + (π/3) sin μ / ((-1)^λ - cos μ) ΔE)`, `μ = m̄π/3`,
/// with `ΔE = E_∞ - E ≥ 0` below the unitary limit.
pub fn perturbed_ratio(lambda_inf: f64, m_bar: u8, delta_e: f64) -> Result<f64> {
    let j = (lambda_inf / 3.0).round();
    if !(lambda_inf > 0.0) || lambda_inf != 3.0 * j {
        return Err(Error::Argument(format!(
            "lambda_inf must be a positive multiple of 3, got {lambda_inf}"
        )));
    }
    if m_bar > 3 {
        return Err(Error::Argument(format!("rotation family must be 0..=3, got {m_bar}")));
    }
    let parity = if (lambda_inf as i64) % 2 == 0 { 1.0 } else { -1.0 };
    let mu = m_bar as f64 * PI / 3.0;
    let (s, c) = match m_bar {
        0 => (0.0, 1.0),
        3 => (0.0, -1.0),
        _ => (mu.sin(), mu.cos()),
    };
    if s == 0.0 {
        return Ok(-parity);
    }
    Ok(-parity * (1.0 + PI / 3.0 * s / (parity - c) * delta_e))
}

/// Where the energy shifts `ΔE` of a near-unitary basis come from.
#[derive(Debug, Clone, PartialEq)]
pub enum DeltaESource {
    /// Exact shifts of the Goldilocks branches at coupling `delta`.
    Goldilocks { delta: f64 },
    /// One shift per moving state, in ascending `λ_∞`.
    External(Vec<f64>),
}

/// Angular functions built from the first-order coefficients, with the
/// Gram–Schmidt orthonormalized combinations.
#[derive(Debug, Clone)]
pub struct NearUnitaryBasis {
    pub sector: Irrep,
    pub lambda_inf: Vec<f64>,
    pub delta_e: Vec<f64>,
    /// Normalized but not mutually orthogonal.
    pub raw: Vec<AngularWaveFunction>,
    pub raw_gram: Vec<Vec<Complex64>>,
    /// Row `i` expands orthonormal function `i` over `raw[0..=i]`.
    pub coefficients: Vec<Vec<Complex64>>,
}

impl NearUnitaryBasis {
    pub fn len(&self) -> usize {
        self.raw.len()
    }

    pub fn is_empty(&self) -> bool {
        self.raw.is_empty()
    }

    /// Orthonormalized function `i` at `phi`.
    pub fn evaluate(&self, i: usize, phi: f64) -> Complex64 {
        self.coefficients[i]
            .iter()
            .zip(&self.raw)
            .map(|(c, f)| c * f.evaluate(phi))
            .sum()
    }

    /// `max |G - I|` of the raw functions' Gram matrix.
    pub fn raw_gram_deviation(&self) -> f64 {
        gram_deviation(&self.raw_gram)
    }

    /// Gram matrix of the orthonormalized functions, from the raw overlaps.
    pub fn orthonormal_gram(&self) -> Vec<Vec<Complex64>> {
        let n = self.len();
        let mut g = vec![vec![Complex64::new(0.0, 0.0); n]; n];
        for i in 0..n {
            for j in 0..n {
                for (k, ck) in self.coefficients[i].iter().enumerate() {
                    for (l, cl) in self.coefficients[j].iter().enumerate() {
                        g[i][j] += ck.conj() * cl * self.raw_gram[k][l];
                    }
                }
            }
        }
        g
    }
}

pub fn gram_deviation(g: &[Vec<Complex64>]) -> f64 {
    let mut worst = 0.0f64;
    for (i, row) in g.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((v - target).norm());
        }
    }
    worst
}

/// Near-unitary basis of one symmetry sector, for states with `1 + λ_∞ ≤ e_max`.
///
/// E sectors use the `m = +m̄` column. Flat sectors (A2, B1) are unaffected by
/// the interaction and come out as the exact functions.
pub fn near_unitary_basis(sector: Irrep, e_max: f64, source: &DeltaESource) -> Result<NearUnitaryBasis> {
    let (family, kind) = sector.family_and_kind();
    let lambda_max = e_max - 1.0;
    let unitary: Vec<_> = roots_up_to(family, lambda_max, Coupling::unitary())?
        .into_iter()
        .filter(|r| r.kind == kind && r.lambda <= lambda_max)
        .collect();
    if unitary.is_empty() {
        return Err(Error::Argument(format!("no {sector} states with energy <= {e_max}")));
    }
    let m = family.m_bar() as i32;
    let (delta_e, kink): (Vec<f64>, f64) = match source {
        _ if kind == RootKind::Flat => (vec![0.0; unitary.len()], Coupling::unitary().kink()),
        DeltaESource::Goldilocks { delta } => {
            let c = Coupling::new(*delta)?;
            let shifts = unitary
                .iter()
                .map(|r| Ok(r.lambda - root(family, kind, r.branch, c)?.lambda))
                .collect::<Result<Vec<_>>>()?;
            (shifts, c.kink())
        }
        DeltaESource::External(shifts) => {
            if shifts.len() != unitary.len() {
                return Err(Error::Argument(format!(
                    "{} energy shifts given for {} states",
                    shifts.len(),
                    unitary.len()
                )));
            }
            (shifts.clone(), f64::INFINITY)
        }
    };

    let mut raw = Vec::with_capacity(unitary.len());
    for (r, &de) in unitary.iter().zip(&delta_e) {
        let wf = if kind == RootKind::Flat {
            crate::angular::build_wavefunction(r, Coupling::unitary(), 1)?
        } else {
            let ratio = perturbed_ratio(r.lambda, family.m_bar(), de)?;
            AngularWaveFunction::from_sector_one(r.lambda - de, m, 1.0.into(), ratio.into(), kink)?
        };
        raw.push(wf);
    }
    let n = raw.len();
    let raw_gram: Vec<Vec<Complex64>> = (0..n)
        .map(|i| (0..n).map(|j| raw[i].overlap(&raw[j])).collect())
        .collect();

    // modified Gram–Schmidt in coefficient space
    let mut coefficients: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    let inner = |x: &[Complex64], y: &[Complex64]| -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        for (k, xk) in x.iter().enumerate() {
            for (l, yl) in y.iter().enumerate() {
                s += xk.conj() * yl * raw_gram[k][l];
            }
        }
        s
    };
    for i in 0..n {
        let mut v = vec![Complex64::new(0.0, 0.0); i + 1];
        v[i] = Complex64::new(1.0, 0.0);
        for q in &coefficients {
            let p = inner(q, &v);
            for (k, qk) in q.iter().enumerate() {
                v[k] -= p * qk;
            }
        }
        let norm = inner(&v, &v).re.sqrt();
        if !(norm > 1e-12) {
            return Err(Error::Internal(format!(
                "near-unitary basis is linearly dependent at state {i}"
            )));
        }
        for x in &mut v {
            *x /= norm;
        }
        coefficients.push(v);
    }
    Ok(NearUnitaryBasis {
        sector,
        lambda_inf: unitary.iter().map(|r| r.lambda).collect(),
        delta_e,
        raw,
        raw_gram,
        coefficients,
    })
}

/// The coupling at which a moving root of `family` sits at `lambda`:
/// `tan δ = λ (cos(m̄π/3) - cos θ) / sin θ`, `θ = λπ/3`.
pub fn delta_for_lambda(family: crate::angular::RotationFamily, lambda: f64) -> Result<f64> {
    let theta = lambda * PI / 3.0;
    let num = lambda * (family.c() - theta.cos());
    let den = theta.sin();
    let delta = (num / den).atan();
    if !(num / den >= 0.0) {
        return Err(Error::Argument(format!(
            "lambda = {lambda} is not on a moving branch of family {family}"
        )));
    }
    Ok(delta)
}
