use super::{AngularRoot, Coupling, RootKind};
use crate::error::{Error, Result};
use crate::specfun::gauss_legendre;
use num_complex::Complex64;
use std::f64::consts::{PI, TAU};

const SECTOR_WIDTH: f64 = PI / 3.0;

/// Lower bound of sector `k` (0-based), `(2k - 1)π/6`.
fn sector_lo(k: usize) -> f64 {
    (2.0 * k as f64 - 1.0) * PI / 6.0
}

/// Which one-sided limit to take at an interaction line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `Φ(φ) = a_n e^{iλφ} + b_n e^{-iλφ}` on sector `n`, with sector `n` spanning
/// `((2n-3)π/6, (2n-1)π/6)` and `φ` taken in `[-π/6, 11π/6)`.
///
/// Coefficients are stored already normalized; `norm` is the factor that
/// was applied to the raw solution.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularWaveFunction {
    pub lambda: f64,
    /// Representative of the `C₆` eigenvalue `e^{imπ/3}`.
    pub m: i32,
    pub a: [Complex64; 6],
    pub b: [Complex64; 6],
    pub norm: f64,
    /// Strength of the delta lines the function was built for.
    pub kink: f64,
}

/// Builds the normalized six-sector wave function of a root.
///
/// Moving roots take `(a₁, b₁) ∝ (sin((θ+μ)/2), sin((θ-μ)/2))` with
/// `θ = λπ/3`, `μ = mπ/3`; this is the continuity-matched ratio and equals
/// `b₁/a₁ = (2λ/kink)(sin θ - sin μ) - cos θ` on the quantization curve, but
/// stays finite at `δ = 0`. Flat roots are `sin(λ(φ - π/6))` everywhere.
pub fn build_wavefunction(root: &AngularRoot, coupling: Coupling, m_sign: i8) -> Result<AngularWaveFunction> {
    if m_sign != 1 && m_sign != -1 {
        return Err(Error::Argument(format!("m_sign must be +1 or -1, got {m_sign}")));
    }
    if root.kind == RootKind::Moving && root.delta != coupling.delta() {
        return Err(Error::Argument(format!(
            "root was solved at delta = {} but the wave function was requested at {}",
            root.delta,
            coupling.delta()
        )));
    }
    let lambda = root.lambda;
    let m_bar = root.family.m_bar() as i32;
    let m = if root.family.is_doublet() {
        m_sign as i32 * m_bar
    } else {
        m_bar
    };

    match root.kind {
        RootKind::Flat => {
            let two_i = Complex64::new(0.0, 2.0);
            let a = Complex64::from_polar(1.0, -lambda * PI / 6.0) / two_i;
            let b = -Complex64::from_polar(1.0, lambda * PI / 6.0) / two_i;
            normalized(lambda, m, [a; 6], [b; 6], coupling.kink())
        }
        RootKind::Moving => {
            let (a1, b1) = match m_bar {
                0 => (1.0, 1.0),
                3 => (1.0, -1.0),
                _ => {
                    let theta = lambda * PI / 3.0;
                    let mu = m as f64 * PI / 3.0;
                    (((theta + mu) / 2.0).sin(), ((theta - mu) / 2.0).sin())
                }
            };
            AngularWaveFunction::from_sector_one(lambda, m, a1.into(), b1.into(), coupling.kink())
        }
    }
}

fn normalized(lambda: f64, m: i32, a: [Complex64; 6], b: [Complex64; 6], kink: f64) -> Result<AngularWaveFunction> {
    let mut wf = AngularWaveFunction {
        lambda,
        m,
        a,
        b,
        norm: 1.0,
        kink,
    };
    let raw = wf.norm_squared();
    if !(raw > 0.0) || !raw.is_finite() {
        return Err(Error::Internal(format!(
            "cannot normalize wave function with lambda = {lambda}, m = {m}"
        )));
    }
    // global phase: a₁ real and positive, or b₁ when a₁ vanishes
    let lead = if wf.a[0].norm() > 1e-12 * wf.b[0].norm() {
        wf.a[0]
    } else {
        wf.b[0]
    };
    let phase = lead.conj() / lead.norm();
    let scale = 1.0 / raw.sqrt();
    for k in 0..6 {
        wf.a[k] *= phase * scale;
        wf.b[k] *= phase * scale;
    }
    wf.norm = scale;
    Ok(wf)
}

/// `∫_lo^hi e^{ikφ} dφ`, stable at `k → 0`.
fn exp_integral(k: f64, lo: f64, hi: f64) -> Complex64 {
    let half = 0.5 * (hi - lo);
    let x = k * half;
    let sinc = if x.abs() < 1e-8 { 1.0 - x * x / 6.0 } else { x.sin() / x };
    Complex64::from_polar(2.0 * half * sinc, k * (lo + hi) / 2.0)
}

impl AngularWaveFunction {
    /// Propagates sector-1 coefficients around the circle with the `C₆`
    /// recursion `a_{n+1} = e^{i(m-λ)π/3} a_n`, `b_{n+1} = e^{i(m+λ)π/3} b_n`
    /// and normalizes. `kink` only labels the result for residual checks.
    pub fn from_sector_one(lambda: f64, m: i32, a1: Complex64, b1: Complex64, kink: f64) -> Result<Self> {
        let step_a = Complex64::from_polar(1.0, (m as f64 - lambda) * PI / 3.0);
        let step_b = Complex64::from_polar(1.0, (m as f64 + lambda) * PI / 3.0);
        let mut a = [a1; 6];
        let mut b = [b1; 6];
        for n in 1..6 {
            a[n] = a[n - 1] * step_a;
            b[n] = b[n - 1] * step_b;
        }
        normalized(lambda, m, a, b, kink)
    }

    /// Value inside sector `k` (0-based) at a sector-local angle.
    pub fn value_in_sector(&self, k: usize, phi: f64) -> Complex64 {
        let e = Complex64::from_polar(1.0, self.lambda * phi);
        self.a[k] * e + self.b[k] * e.conj()
    }

    pub fn derivative_in_sector(&self, k: usize, phi: f64) -> Complex64 {
        let e = Complex64::from_polar(1.0, self.lambda * phi);
        Complex64::new(0.0, self.lambda) * (self.a[k] * e - self.b[k] * e.conj())
    }

    fn locate(phi: f64) -> (usize, f64) {
        let local = (phi + PI / 6.0).rem_euclid(TAU) - PI / 6.0;
        let k = (((local + PI / 6.0) / SECTOR_WIDTH).floor() as usize).min(5);
        (k, local)
    }

    /// `Φ(φ)` for any real `φ`; points on a line use the sector to the right.
    pub fn evaluate(&self, phi: f64) -> Complex64 {
        let (k, local) = Self::locate(phi);
        self.value_in_sector(k, local)
    }

    /// `Φ'(φ)`; at an interaction line, the requested one-sided limit.
    pub fn evaluate_derivative(&self, phi: f64, side: Side) -> Complex64 {
        let (k, local) = Self::locate(phi);
        let on_line = (local - sector_lo(k)).abs() < 1e-12;
        if on_line && side == Side::Left {
            let prev = (k + 5) % 6;
            let at = if k == 0 { 11.0 * PI / 6.0 } else { sector_lo(k) };
            return self.derivative_in_sector(prev, at);
        }
        self.derivative_in_sector(k, if on_line { sector_lo(k) } else { local })
    }

    /// One-sided values and derivatives at line `n ∈ 1..=6`:
    /// `(Φ⁻, Φ⁺, Φ'⁻, Φ'⁺)`.
    pub fn line_limits(&self, n: usize) -> (Complex64, Complex64, Complex64, Complex64) {
        assert!((1..=6).contains(&n), "interaction lines are numbered 1..=6");
        let phi_n = (2 * n - 1) as f64 * PI / 6.0;
        let left = n - 1;
        let right = n % 6;
        let phi_right = if n == 6 { -PI / 6.0 } else { phi_n };
        (
            self.value_in_sector(left, phi_n),
            self.value_in_sector(right, phi_right),
            self.derivative_in_sector(left, phi_n),
            self.derivative_in_sector(right, phi_right),
        )
    }

    /// `max_n |Φ(φ_n⁺) - Φ(φ_n⁻)|`.
    pub fn continuity_residual(&self) -> f64 {
        (1..=6)
            .map(|n| {
                let (l, r, _, _) = self.line_limits(n);
                (r - l).norm()
            })
            .fold(0.0, f64::max)
    }

    /// Relative residual of `Φ'(φ_n⁺) - Φ'(φ_n⁻) = kink·Φ(φ_n)`, maximized over lines.
    ///
    /// At infinite kink the condition degenerates to `Φ(φ_n) = 0`, and the
    /// absolute value there is returned instead.
    pub fn kink_residual(&self) -> f64 {
        (1..=6).map(|n| self.kink_residual_at(n)).fold(0.0, f64::max)
    }

    pub fn kink_residual_at(&self, n: usize) -> f64 {
        let (l, r, dl, dr) = self.line_limits(n);
        let value = 0.5 * (l + r);
        if self.kink.is_infinite() {
            return value.norm();
        }
        let jump = dr - dl;
        let rhs = value * self.kink;
        let scale = (dl.norm() + dr.norm()).max(rhs.norm()).max(1e-300);
        (jump - rhs).norm() / scale
    }

    /// `∫₀^{2π} |Φ|² dφ` from closed-form sector integrals.
    pub fn norm_squared(&self) -> f64 {
        self.overlap(self).re
    }

    /// `⟨self|other⟩ = ∫ conj(Φ_self) Φ_other dφ`, closed form.
    pub fn overlap(&self, other: &AngularWaveFunction) -> Complex64 {
        let (la, lb) = (self.lambda, other.lambda);
        let mut sum = Complex64::new(0.0, 0.0);
        for k in 0..6 {
            let lo = sector_lo(k);
            let hi = lo + SECTOR_WIDTH;
            let (aa, ba) = (self.a[k].conj(), self.b[k].conj());
            let (ab, bb) = (other.a[k], other.b[k]);
            sum += aa * ab * exp_integral(lb - la, lo, hi)
                + aa * bb * exp_integral(-la - lb, lo, hi)
                + ba * ab * exp_integral(la + lb, lo, hi)
                + ba * bb * exp_integral(la - lb, lo, hi);
        }
        sum
    }

    /// `⟨self|other⟩` by Gauss–Legendre quadrature on each sector.
    pub fn overlap_quadrature(&self, other: &AngularWaveFunction, order: usize) -> Result<Complex64> {
        let rule = gauss_legendre(order)?;
        let mut sum = Complex64::new(0.0, 0.0);
        for k in 0..6 {
            let lo = sector_lo(k);
            let (x, w) = rule.mapped(lo, lo + SECTOR_WIDTH);
            for (&phi, &wi) in x.iter().zip(&w) {
                sum += self.value_in_sector(k, phi).conj() * other.value_in_sector(k, phi) * wi;
            }
        }
        Ok(sum)
    }

    /// Real-valued form of the same state, for use as a real basis function.
    pub fn real_form(&self) -> RealAngular {
        if self.m.rem_euclid(3) != 0 {
            // doublet member: √2 Re Φ is the σ_d-even real partner, unit norm
            return RealAngular {
                wf: self.clone(),
                phase: Complex64::new(1.0, 0.0),
                scale: std::f64::consts::SQRT_2,
            };
        }
        // one-dimensional irreps are real up to a global phase
        let best = (0..48)
            .map(|i| self.evaluate(i as f64 * TAU / 48.0 + 0.013))
            .max_by(|x, y| x.norm().total_cmp(&y.norm()))
            .expect("non-empty sample");
        RealAngular {
            wf: self.clone(),
            phase: best.conj() / best.norm(),
            scale: 1.0,
        }
    }
}

/// `scale · Re(phase · Φ(φ))`, a real unit-norm angular function.
#[derive(Debug, Clone, PartialEq)]
pub struct RealAngular {
    pub wf: AngularWaveFunction,
    pub phase: Complex64,
    pub scale: f64,
}

impl RealAngular {
    pub fn evaluate(&self, phi: f64) -> f64 {
        self.scale * (self.phase * self.wf.evaluate(phi)).re
    }

    pub fn lambda(&self) -> f64 {
        self.wf.lambda
    }

    /// Values on the six interaction lines (average of one-sided limits).
    pub fn line_values(&self) -> [f64; 6] {
        std::array::from_fn(|i| {
            let (l, r, _, _) = self.wf.line_limits(i + 1);
            self.scale * (self.phase * 0.5 * (l + r)).re
        })
    }
}
