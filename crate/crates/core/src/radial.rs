//! Hyperradial eigenfunctions in an isotropic trap for `N` particles and the
//! `SO(2,1)` ladder algebra that connects them.
//!
//! Units are oscillator units. The relative Hamiltonian at fixed angular
//! eigenvalue `λ(λ+N-3)` is
//! `H = ½(-∂² - (N-2)/ρ ∂ + λ(λ+N-3)/ρ² + ρ²)`.

use crate::error::{Error, Result};
use crate::specfun::{gauss_legendre, laguerre, laguerre_derivative, log_gamma};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialState {
    pub nu: usize,
    pub lambda: f64,
    pub n_particles: usize,
}

impl RadialState {
    pub fn new(nu: usize, lambda: f64, n_particles: usize) -> Result<Self> {
        if !(lambda >= 0.0) || !lambda.is_finite() {
            return Err(Error::Argument(format!(
                "lambda must be finite and non-negative, got {lambda}"
            )));
        }
        if n_particles < 3 {
            return Err(Error::Argument(format!(
                "n_particles must be at least 3, got {n_particles}"
            )));
        }
        Ok(Self {
            nu,
            lambda,
            n_particles,
        })
    }

    /// Three-particle state.
    pub fn three(nu: usize, lambda: f64) -> Result<Self> {
        Self::new(nu, lambda, 3)
    }

    /// `(N-3)/2`, the shift between `λ` and the Laguerre order.
    fn shift(&self) -> f64 {
        0.5 * (self.n_particles as f64 - 3.0)
    }

    /// Laguerre order `λ + (N-3)/2`.
    pub fn alpha(&self) -> f64 {
        self.lambda + self.shift()
    }

    /// `E_rel = 2ν + λ + (N-1)/2`.
    pub fn energy(&self) -> f64 {
        2.0 * self.nu as f64 + self.lambda + 0.5 * (self.n_particles as f64 - 1.0)
    }

    /// Eigenvalue of the hyperangular operator, `λ(λ+N-3)`.
    pub fn angular_eigenvalue(&self) -> f64 {
        self.lambda * (self.lambda + self.n_particles as f64 - 3.0)
    }

    /// Exponent of the inner-product measure `ρ^{N-2} dρ`.
    pub fn measure_power(&self) -> i32 {
        self.n_particles as i32 - 2
    }

    fn log_norm(&self) -> f64 {
        let nu = self.nu as f64;
        let ln_nu_fact = log_gamma(nu + 1.0).expect("positive argument");
        let ln_gamma = log_gamma(nu + self.alpha() + 1.0).expect("positive argument");
        0.5 * (std::f64::consts::LN_2 + ln_nu_fact - ln_gamma)
    }
}

/// `√(2ν!/Γ(ν+λ+(N-1)/2)) ρ^λ e^{-ρ²/2} L_ν^{λ+(N-3)/2}(ρ²)`.
pub fn radial_eval(state: &RadialState, rho: f64) -> f64 {
    let x = rho * rho;
    (state.log_norm() - 0.5 * x).exp() * rho.powf(state.lambda) * laguerre(state.nu, state.alpha(), x)
}

/// `dR/dρ`, from the analytic Laguerre derivative.
pub fn radial_derivative(state: &RadialState, rho: f64) -> f64 {
    let x = rho * rho;
    let l = laguerre(state.nu, state.alpha(), x);
    let dl = laguerre_derivative(state.nu, state.alpha(), x);
    let lam = state.lambda;
    // d/dρ [ρ^λ e^{-ρ²/2} L(ρ²)] = ρ^{λ-1} e^{-ρ²/2} [(λ - ρ²) L + 2ρ² L']
    let inner = (lam - x) * l + 2.0 * x * dl;
    let power = if lam == 0.0 {
        inner / rho
    } else {
        rho.powf(lam - 1.0) * inner
    };
    (state.log_norm() - 0.5 * x).exp() * power
}

/// Coefficient and target of `W₊`: `√((ν+1)(ν+λ'+1))`, `λ' = λ + (N-3)/2`.
pub fn ladder_up(state: &RadialState) -> (f64, RadialState) {
    let nu = state.nu as f64;
    let coeff = ((nu + 1.0) * (nu + state.alpha() + 1.0)).sqrt();
    (
        coeff,
        RadialState {
            nu: state.nu + 1,
            ..*state
        },
    )
}

/// Coefficient and target of `W₋`: `√(ν(ν+λ'))`; zero at `ν = 0`, where
/// the returned state is the input.
pub fn ladder_down(state: &RadialState) -> (f64, RadialState) {
    if state.nu == 0 {
        return (0.0, *state);
    }
    let nu = state.nu as f64;
    let coeff = (nu * (nu + state.alpha())).sqrt();
    (
        coeff,
        RadialState {
            nu: state.nu - 1,
            ..*state
        },
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderSign {
    Raise,
    Lower,
}

/// `W± R = ½[(E - ρ²) R ± ((N-1)/2 R + ρ R')]` sampled on `grid`, with `H`
/// replaced by its eigenvalue on `state`.
pub fn apply_w_operator(sign: LadderSign, state: &RadialState, grid: &[f64]) -> Vec<f64> {
    let e = state.energy();
    let half_dim = 0.5 * (state.n_particles as f64 - 1.0);
    let s = match sign {
        LadderSign::Raise => 1.0,
        LadderSign::Lower => -1.0,
    };
    grid.iter()
        .map(|&rho| {
            let r = radial_eval(state, rho);
            let dr = radial_derivative(state, rho);
            0.5 * ((e - rho * rho) * r + s * (half_dim * r + rho * dr))
        })
        .collect()
}

/// `E² - 2[ν(ν+λ) + (ν+1)(ν+λ+1)]` for three particles; equals `λ² - 1`.
pub fn casimir_eigenvalue(state: &RadialState) -> Result<f64> {
    if state.n_particles != 3 {
        return Err(Error::Argument(format!(
            "the Casimir value is defined here for 3 particles, got {}",
            state.n_particles
        )));
    }
    let nu = state.nu as f64;
    let lam = state.lambda;
    let e = state.energy();
    Ok(e * e - 2.0 * (nu * (nu + lam) + (nu + 1.0) * (nu + lam + 1.0)))
}

/// `∫₀^∞ R_a R_b ρ^{N-2} dρ` by Gauss–Legendre on `[0, √E_max + 10]`.
pub fn overlap(a: &RadialState, b: &RadialState, order: usize) -> Result<f64> {
    if a.n_particles != b.n_particles {
        return Err(Error::Argument(
            "overlap of states with different particle numbers".into(),
        ));
    }
    let rule = gauss_legendre(order)?;
    let rho_max = a.energy().max(b.energy()).sqrt() + 10.0;
    let p = a.measure_power();
    Ok(rule.integrate(0.0, rho_max, |r| radial_eval(a, r) * radial_eval(b, r) * r.powi(p)))
}

/// `e^{-ρ²/2} Σ_k c_k ρ^{λ+k}` with integer `k`: closed under `∂`, `ρ^j` and
/// so under `H` and the full `W±`, which lets the algebra be checked with
/// exact derivatives instead of eigenvalue substitution.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianSeries {
    pub lambda: f64,
    pub coeffs: BTreeMap<i32, f64>,
}

impl GaussianSeries {
    pub fn zero(lambda: f64) -> Self {
        Self {
            lambda,
            coeffs: BTreeMap::new(),
        }
    }

    /// The normalized radial function as a series.
    pub fn from_state(state: &RadialState) -> Self {
        let alpha = state.alpha();
        let nu = state.nu;
        let norm = state.log_norm().exp();
        // L_ν^α(x) = Σ_j l_j x^j, l_0 = C(ν+α, ν)
        let mut l = (1..=nu).map(|i| (alpha + i as f64) / i as f64).product::<f64>();
        let mut out = Self::zero(state.lambda);
        for j in 0..=nu {
            out.coeffs.insert(2 * j as i32, norm * l);
            l *= -((nu - j) as f64) / ((alpha + j as f64 + 1.0) * (j as f64 + 1.0));
        }
        out
    }

    pub fn eval(&self, rho: f64) -> f64 {
        let sum: f64 = self
            .coeffs
            .iter()
            .map(|(&k, &c)| c * rho.powf(self.lambda + k as f64))
            .sum();
        sum * (-0.5 * rho * rho).exp()
    }

    fn add_term(&mut self, k: i32, c: f64) {
        *self.coeffs.entry(k).or_insert(0.0) += c;
    }

    pub fn add(&self, other: &Self, scale: f64) -> Self {
        let mut out = self.clone();
        for (&k, &c) in &other.coeffs {
            out.add_term(k, scale * c);
        }
        out
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            lambda: self.lambda,
            coeffs: self.coeffs.iter().map(|(&k, &c)| (k, s * c)).collect(),
        }
    }

    /// Multiplication by `ρ^j`.
    pub fn times_power(&self, j: i32) -> Self {
        Self {
            lambda: self.lambda,
            coeffs: self.coeffs.iter().map(|(&k, &c)| (k + j, c)).collect(),
        }
    }

    pub fn derivative(&self) -> Self {
        let mut out = Self::zero(self.lambda);
        for (&k, &c) in &self.coeffs {
            let p = self.lambda + k as f64;
            if p != 0.0 {
                out.add_term(k - 1, c * p);
            }
            out.add_term(k + 1, -c);
        }
        out
    }

    /// Full radial Hamiltonian with angular eigenvalue `ang` and `N` particles.
    pub fn apply_hamiltonian(&self, ang: f64, n_particles: usize) -> Self {
        let d1 = self.derivative();
        let d2 = d1.derivative();
        let n = n_particles as f64;
        d2.scaled(-0.5)
            .add(&d1.times_power(-1), -0.5 * (n - 2.0))
            .add(&self.times_power(-2), 0.5 * ang)
            .add(&self.times_power(2), 0.5)
    }

    /// `W± = ½(H - ρ² ± ((N-1)/2 + ρ∂))` with the full `H`.
    pub fn apply_w(&self, sign: LadderSign, ang: f64, n_particles: usize) -> Self {
        let s = match sign {
            LadderSign::Raise => 1.0,
            LadderSign::Lower => -1.0,
        };
        let dil = self
            .scaled(0.5 * (n_particles as f64 - 1.0))
            .add(&self.derivative().times_power(1), 1.0);
        self.apply_hamiltonian(ang, n_particles)
            .add(&self.times_power(2), -1.0)
            .add(&dil, s)
            .scaled(0.5)
    }

    pub fn max_abs_on(&self, grid: &[f64]) -> f64 {
        grid.iter().map(|&r| self.eval(r).abs()).fold(0.0, f64::max)
    }
}

/// Residuals of the operator identities on `state`, each a max over `grid`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgebraResiduals {
    /// `[H, W₊] - 2W₊`.
    pub commutator_up: f64,
    /// `[H, W₋] + 2W₋`.
    pub commutator_down: f64,
    /// `[W₋, W₊] - H`.
    pub commutator_w: f64,
    /// `(H² - 2(W₊W₋ + W₋W₊)) R - (λ'² - 1) R` with `λ' = λ + (N-3)/2`;
    /// for three particles `λ'² - 1 = λ² - 1`.
    pub casimir: f64,
}

/// Applies the full operators to `state` and measures the `SO(2,1)` relations.
pub fn algebra_residuals(state: &RadialState, grid: &[f64]) -> AlgebraResiduals {
    let n = state.n_particles;
    let ang = state.angular_eigenvalue();
    let f = GaussianSeries::from_state(state);
    let h = |g: &GaussianSeries| g.apply_hamiltonian(ang, n);
    let up = |g: &GaussianSeries| g.apply_w(LadderSign::Raise, ang, n);
    let down = |g: &GaussianSeries| g.apply_w(LadderSign::Lower, ang, n);

    let wu = up(&f);
    let wd = down(&f);
    let comm_up = h(&wu).add(&up(&h(&f)), -1.0).add(&wu, -2.0);
    let comm_down = h(&wd).add(&down(&h(&f)), -1.0).add(&wd, 2.0);
    let comm_w = down(&wu).add(&up(&wd), -1.0).add(&h(&f), -1.0);
    let hf = h(&f);
    let c = h(&hf).add(&up(&wd).add(&down(&wu), 1.0), -2.0);
    let lp = state.alpha();
    let casimir = c.add(&f, -(lp * lp - 1.0));
    AlgebraResiduals {
        commutator_up: comm_up.max_abs_on(grid),
        commutator_down: comm_down.max_abs_on(grid),
        commutator_w: comm_w.max_abs_on(grid),
        casimir: casimir.max_abs_on(grid),
    }
}
