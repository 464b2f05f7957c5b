//! Exact diagonalization of the three-body contact interaction
//! `V_g = (g/(√2 ρ)) Σ_n δ(φ - φ_n)` in the relative plane.
//!
//! The basis is the eigenbasis of the separable Goldilocks Hamiltonian
//! `H_G(δ_b)` (`δ_b = 0` is the harmonic-oscillator basis). In that basis
//! `H_c = H_G(δ_b) + Σ_n Φ_i(φ_n) Φ_j(φ_n) [(g/√2) I₁ - (kink_b/2) I₂]`
//! with `I₁ = ∫ R_i R_j dρ` and `I₂ = ∫ R_i R_j dρ/ρ`.

mod jacobi;

pub use jacobi::{diagonalize, Eigen, SymmetricMatrix};

use crate::angular::{build_wavefunction, roots_up_to, AngularRoot, Coupling, Irrep, RealAngular};
use crate::error::{Error, Result};
use crate::radial::{radial_eval, RadialState};
use crate::specfun::gauss_legendre;
use rayon::prelude::*;
use std::f64::consts::{FRAC_PI_2, SQRT_2};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BasisKind {
    Harmonic,
    /// Goldilocks eigenbasis at coupling phase `delta_b ∈ [0, π/2)`.
    Goldilocks {
        delta_b: f64,
    },
}

impl BasisKind {
    pub fn delta_b(&self) -> f64 {
        match self {
            BasisKind::Harmonic => 0.0,
            BasisKind::Goldilocks { delta_b } => *delta_b,
        }
    }

    /// Goldilocks basis whose kink strength `2 tan δ_b` equals `g`.
    pub fn matched(g: f64) -> Self {
        BasisKind::Goldilocks {
            delta_b: (0.5 * g).atan(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EDProblem {
    pub g: f64,
    /// E sectors are represented by the real `√2 Re Φ_{+m̄}` column.
    pub sector: Irrep,
    pub basis_kind: BasisKind,
    pub e_max: f64,
    pub quadrature_order: usize,
    /// Keep only the lowest `max_basis` states, to compare bases at equal size.
    pub max_basis: Option<usize>,
}

impl EDProblem {
    /// Problem with a quadrature order sized for `e_max`.
    pub fn new(g: f64, sector: Irrep, basis_kind: BasisKind, e_max: f64) -> Self {
        Self {
            g,
            sector,
            basis_kind,
            e_max,
            quadrature_order: default_quadrature_order(e_max),
            max_basis: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.g >= 0.0) || !self.g.is_finite() {
            return Err(Error::Argument(format!(
                "g must be finite and non-negative, got {}",
                self.g
            )));
        }
        let d = self.basis_kind.delta_b();
        if !(0.0..FRAC_PI_2).contains(&d) {
            return Err(Error::Argument(format!("basis delta_b must lie in [0, pi/2), got {d}")));
        }
        if !(self.e_max >= 1.0) || !self.e_max.is_finite() {
            return Err(Error::Argument(format!("e_max must be >= 1, got {}", self.e_max)));
        }
        if self.quadrature_order < 2 {
            return Err(Error::Argument("quadrature order must be at least 2".into()));
        }
        Ok(())
    }
}

/// Gauss–Legendre points per segment adequate for basis energies up to `e_max`.
pub fn default_quadrature_order(e_max: f64) -> usize {
    64 + 4 * e_max.max(0.0).ceil() as usize
}

/// One basis state `R_{ν,λ}(ρ) Φ(φ)`.
#[derive(Debug, Clone)]
pub struct BasisState {
    pub nu: usize,
    pub root: AngularRoot,
    pub angular: RealAngular,
    /// `1 + 2ν + λ`, the `H_G(δ_b)` eigenvalue.
    pub energy: f64,
}

impl BasisState {
    pub fn radial(&self) -> RadialState {
        RadialState {
            nu: self.nu,
            lambda: self.root.lambda,
            n_particles: 3,
        }
    }
}

/// All sector states with `1 + 2ν + λ ≤ e_max`, ascending in energy.
pub fn build_basis(problem: &EDProblem) -> Result<Vec<BasisState>> {
    problem.validate()?;
    let mut basis = sector_states(problem.sector, problem.basis_kind, problem.e_max)?;
    if let Some(n) = problem.max_basis {
        basis.truncate(n);
    }
    if basis.is_empty() {
        return Err(Error::Argument(format!(
            "empty {} basis for e_max = {}",
            problem.sector, problem.e_max
        )));
    }
    Ok(basis)
}

fn sector_states(sector: Irrep, kind: BasisKind, e_max: f64) -> Result<Vec<BasisState>> {
    let coupling = Coupling::new(kind.delta_b())?;
    let (family, root_kind) = sector.family_and_kind();
    let roots: Vec<AngularRoot> = roots_up_to(family, e_max - 1.0, coupling)?
        .into_iter()
        .filter(|r| r.kind == root_kind)
        .collect();
    let mut basis = Vec::new();
    for r in roots {
        let angular = build_wavefunction(&r, coupling, 1)?.real_form();
        let mut nu = 0;
        while 1.0 + 2.0 * nu as f64 + r.lambda <= e_max {
            basis.push(BasisState {
                nu,
                root: r,
                angular: angular.clone(),
                energy: 1.0 + 2.0 * nu as f64 + r.lambda,
            });
            nu += 1;
        }
    }
    basis.sort_by(|a, b| {
        a.energy
            .total_cmp(&b.energy)
            .then(a.root.branch.cmp(&b.root.branch))
            .then(a.nu.cmp(&b.nu))
    });
    Ok(basis)
}

/// Radial functions sampled on a shared quadrature grid: `[0, 1]` with
/// `ρ = u^p` (so `ρ^s` endpoint behaviour becomes a high power of `u`) and
/// plain Gauss–Legendre on `[1, ρ_max]`.
struct RadialGrid {
    rho: Vec<f64>,
    weights: Vec<f64>,
    /// `samples[i][k] = R_i(ρ_k)`.
    samples: Vec<Vec<f64>>,
}

impl RadialGrid {
    fn new(states: &[RadialState], order: usize, e_max: f64) -> Result<Self> {
        let rule = gauss_legendre(order)?;
        let lambda_min = states.iter().map(|s| s.lambda).fold(f64::INFINITY, f64::min);
        let all_integer = states.iter().all(|s| s.lambda.fract() == 0.0);
        let p = if all_integer {
            1
        } else {
            // exponent of u in ρ^{2λ_min - 1} dρ is 2pλ_min - 1 ≥ 11
            ((12.0 / (2.0 * lambda_min)).ceil() as i32).clamp(2, 64)
        };
        let rho_max = e_max.sqrt() + 10.0;
        let mut rho = Vec::with_capacity(2 * order);
        let mut weights = Vec::with_capacity(2 * order);
        let (u, w) = rule.mapped(0.0, 1.0);
        for (&ui, &wi) in u.iter().zip(&w) {
            rho.push(ui.powi(p));
            weights.push(wi * p as f64 * ui.powi(p - 1));
        }
        let (x, w) = rule.mapped(1.0, rho_max);
        rho.extend_from_slice(&x);
        weights.extend_from_slice(&w);
        let samples = states
            .par_iter()
            .map(|s| rho.iter().map(|&r| radial_eval(s, r)).collect())
            .collect();
        Ok(Self { rho, weights, samples })
    }

    /// `(I₁, I₂)` for states `i`, `j`.
    fn integrals(&self, i: usize, j: usize) -> (f64, f64) {
        let (a, b) = (&self.samples[i], &self.samples[j]);
        let mut i1 = 0.0;
        let mut i2 = 0.0;
        for k in 0..self.rho.len() {
            let v = self.weights[k] * a[k] * b[k];
            i1 += v;
            i2 += v / self.rho[k];
        }
        (i1, i2)
    }
}

/// Assembled Hamiltonian and the pieces it was built from.
#[derive(Debug, Clone)]
pub struct EDMatrix {
    pub basis: Vec<BasisState>,
    pub matrix: SymmetricMatrix,
}

/// `H_c(g)` in the basis of `problem`.
pub fn assemble(problem: &EDProblem) -> Result<EDMatrix> {
    let basis = build_basis(problem)?;
    assemble_basis(problem, basis)
}

fn assemble_basis(problem: &EDProblem, basis: Vec<BasisState>) -> Result<EDMatrix> {
    let kink_b = Coupling::new(problem.basis_kind.delta_b())?.kink();
    let radial: Vec<RadialState> = basis.iter().map(BasisState::radial).collect();
    if kink_b > 0.0 && radial.iter().any(|s| s.lambda == 0.0) {
        return Err(Error::Internal(
            "divergent 1/rho integral for a lambda = 0 basis state".into(),
        ));
    }
    let grid = RadialGrid::new(&radial, problem.quadrature_order, problem.e_max)?;
    let lines: Vec<[f64; 6]> = basis.iter().map(|b| b.angular.line_values()).collect();
    let n = basis.len();
    let g_coeff = problem.g / SQRT_2;
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| {
                    let ang: f64 = (0..6).map(|k| lines[i][k] * lines[j][k]).sum();
                    let (i1, i2) = grid.integrals(i, j);
                    let mut v = ang * (g_coeff * i1 - if kink_b > 0.0 { 0.5 * kink_b * i2 } else { 0.0 });
                    if i == j {
                        v += basis[i].energy;
                    }
                    v
                })
                .collect()
        })
        .collect();
    Ok(EDMatrix {
        basis,
        matrix: SymmetricMatrix::from_rows(&rows)?,
    })
}

/// Single element `⟨i|H_c(g)|j⟩` (indices into the sorted basis).
pub fn matrix_element(problem: &EDProblem, i: usize, j: usize) -> Result<f64> {
    let m = assemble(problem)?;
    if i >= m.basis.len() || j >= m.basis.len() {
        return Err(Error::Argument(format!(
            "index ({i}, {j}) outside basis of size {}",
            m.basis.len()
        )));
    }
    Ok(m.matrix.get(i, j))
}

#[derive(Debug, Clone, PartialEq)]
pub struct EDResult {
    pub eigenvalues: Vec<f64>,
    pub basis_size: usize,
    pub residual: f64,
}

pub fn solve(problem: &EDProblem) -> Result<EDResult> {
    let m = assemble(problem)?;
    let e = diagonalize(&m.matrix)?;
    Ok(EDResult {
        basis_size: m.basis.len(),
        eigenvalues: e.values,
        residual: e.residual,
    })
}

/// Eigenvalues in the union of several sector bases, with every cross
/// element computed rather than assumed zero.
pub fn solve_combined(problem: &EDProblem, sectors: &[Irrep]) -> Result<EDResult> {
    problem.validate()?;
    let mut basis = Vec::new();
    for &s in sectors {
        basis.extend(sector_states(s, problem.basis_kind, problem.e_max)?);
    }
    if basis.is_empty() {
        return Err(Error::Argument("empty combined basis".into()));
    }
    let m = assemble_basis(problem, basis)?;
    let e = diagonalize(&m.matrix)?;
    Ok(EDResult {
        basis_size: m.basis.len(),
        eigenvalues: e.values,
        residual: e.residual,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StudyRow {
    pub e_max: f64,
    pub basis_size: usize,
    pub e0: f64,
}

/// Ground energies along a sequence of cutoffs, with a linear fit
/// `E₀ ≈ E_∞ + c / basis_size` through all rows and, from three rows on, a
/// power-law fit in the cutoff energy.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundStudy {
    pub g: f64,
    pub sector: Irrep,
    pub basis_kind: BasisKind,
    pub rows: Vec<StudyRow>,
    /// Intercept of the fit.
    pub extrapolated: f64,
    /// Root-mean-square deviation of the rows from the fit.
    pub fit_residual: f64,
    /// `E₀ ≈ E_∞ + c E_max^{-a}`. The cusp of the contact ground state makes
    /// the error decay like a low power of the cutoff, which a fit in
    /// `1/basis_size` does not capture.
    pub power_law: Option<PowerLawFit>,
}

impl GroundStudy {
    /// True if `E₀` never increases by more than `slack` along the table.
    pub fn is_monotone(&self, slack: f64) -> bool {
        self.rows.windows(2).all(|w| w[1].e0 <= w[0].e0 + slack)
    }
}

pub fn ground_energy_study(g: f64, sector: Irrep, basis_kind: BasisKind, cutoffs: &[f64]) -> Result<GroundStudy> {
    if cutoffs.is_empty() {
        return Err(Error::Argument("no cutoffs given".into()));
    }
    if cutoffs.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Argument("cutoffs must be strictly ascending".into()));
    }
    let top = *cutoffs.last().expect("non-empty");
    let order = default_quadrature_order(top);
    let rows = cutoffs
        .iter()
        .map(|&e_max| {
            let mut p = EDProblem::new(g, sector, basis_kind, e_max);
            p.quadrature_order = order;
            let r = solve(&p)?;
            Ok(StudyRow {
                e_max,
                basis_size: r.basis_size,
                e0: r.eigenvalues[0],
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let pts: Vec<(f64, f64)> = rows.iter().map(|r| (1.0 / r.basis_size as f64, r.e0)).collect();
    let (extrapolated, fit_residual) = linear_intercept(&pts);
    let power_law = if rows.len() >= 3 {
        let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.e_max, r.e0)).collect();
        Some(fit_power_law(&pts)?)
    } else {
        None
    };
    Ok(GroundStudy {
        g,
        sector,
        basis_kind,
        rows,
        extrapolated,
        fit_residual,
        power_law,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawFit {
    /// `E_∞`.
    pub limit: f64,
    pub amplitude: f64,
    pub exponent: f64,
    pub rms: f64,
}

/// Least-squares `y ≈ E_∞ + c x^{-a}` over `a ∈ [0.05, 4]`; for fixed `a`
/// the problem is linear, so only `a` is searched (grid, then golden section).
pub fn fit_power_law(points: &[(f64, f64)]) -> Result<PowerLawFit> {
    if points.len() < 3 || points.iter().any(|p| !(p.0 > 0.0)) {
        return Err(Error::Argument(
            "power-law fit needs at least 3 points with x > 0".into(),
        ));
    }
    let fit_at = |a: f64| -> PowerLawFit {
        let pts: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.powf(-a), y)).collect();
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let c = if sxx > 0.0 { sxy / sxx } else { 0.0 };
        let limit = my - c * mx;
        let rms = (pts.iter().map(|p| (p.1 - limit - c * p.0).powi(2)).sum::<f64>() / n).sqrt();
        PowerLawFit {
            limit,
            amplitude: c,
            exponent: a,
            rms,
        }
    };
    let (lo, hi) = (0.05, 4.0);
    let steps = 400;
    let mut best = 0;
    let mut best_rms = f64::INFINITY;
    for i in 0..=steps {
        let r = fit_at(lo + (hi - lo) * i as f64 / steps as f64).rms;
        if r < best_rms {
            best_rms = r;
            best = i;
        }
    }
    let h = (hi - lo) / steps as f64;
    let mut a = (lo + h * best as f64 - h).max(lo);
    let mut b = (lo + h * best as f64 + h).min(hi);
    let inv_phi = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..80 {
        let c = b - inv_phi * (b - a);
        let d = a + inv_phi * (b - a);
        if fit_at(c).rms < fit_at(d).rms {
            b = d;
        } else {
            a = c;
        }
    }
    Ok(fit_at(0.5 * (a + b)))
}

/// Least-squares line through `(x, y)`; returns the value at `x = 0` and the
/// RMS residual. A single point is returned unchanged.
pub fn linear_intercept(points: &[(f64, f64)]) -> (f64, f64) {
    let n = points.len() as f64;
    if points.len() < 2 {
        return (points.first().map_or(f64::NAN, |p| p.1), 0.0);
    }
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = my - slope * mx;
    let rms = (points
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    (intercept, rms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angular::sigma_v_parity;
    use crate::perturb::{contact_weak_slope, ContactSlopeInput, Flavor};
    use std::f64::consts::PI;

    #[test]
    fn harmonic_a1_small_basis() {
        let p = EDProblem::new(0.0, Irrep::A1, BasisKind::Harmonic, 4.0);
        let b = build_basis(&p).unwrap();
        let labels: Vec<_> = b.iter().map(|s| (s.nu, s.root.lambda)).collect();
        assert_eq!(labels, vec![(0, 0.0), (1, 0.0)]);
    }

    #[test]
    fn harmonic_angular_functions_are_the_oscillator_ones() {
        let cases: [(Irrep, fn(f64, f64) -> f64); 4] = [
            (Irrep::A1, |l, p| (l * p).cos()),
            (Irrep::A2, |l, p| (l * p).sin()),
            (Irrep::B1, |l, p| (l * p).cos()),
            (Irrep::B2, |l, p| (l * p).sin()),
        ];
        for (irrep, f) in cases {
            let p = EDProblem::new(0.0, irrep, BasisKind::Harmonic, 20.0);
            for s in build_basis(&p).unwrap().iter().filter(|s| s.nu == 0) {
                let l = s.root.lambda;
                let norm = if l == 0.0 { (2.0 * PI).sqrt() } else { PI.sqrt() };
                let sign = (s.angular.evaluate(0.37) * f(l, 0.37)).signum();
                for k in 0..40 {
                    let phi = 0.1 + k as f64 * 0.157;
                    let expected = if l == 0.0 { 1.0 / norm } else { f(l, phi) / norm };
                    assert!(
                        (s.angular.evaluate(phi) - sign * expected).abs() < 1e-12,
                        "{irrep} λ={l}"
                    );
                }
            }
        }
    }

    #[test]
    fn basis_respects_exchange_symmetry() {
        for irrep in [Irrep::A1, Irrep::A2, Irrep::B1, Irrep::B2] {
            for kind in [BasisKind::Harmonic, BasisKind::Goldilocks { delta_b: 0.9 }] {
                let p = EDProblem::new(0.0, irrep, kind, 18.0);
                let parity = sigma_v_parity(irrep).unwrap() as f64;
                for s in build_basis(&p).unwrap() {
                    for k in 0..30 {
                        let phi = 0.05 + 0.2 * k as f64;
                        let d = s.angular.evaluate(PI - phi) - parity * s.angular.evaluate(phi);
                        assert!(d.abs() < 1e-10);
                    }
                }
            }
        }
    }

    #[test]
    fn goldilocks_basis_satisfies_kink_condition() {
        let p = EDProblem::new(1.0, Irrep::A1, BasisKind::Goldilocks { delta_b: 1.4 }, 16.0);
        for s in build_basis(&p).unwrap() {
            assert!((s.angular.wf.kink - 2.0 * 1.4f64.tan()).abs() < 1e-12);
            assert!(s.angular.wf.kink_residual() < 1e-8);
        }
    }

    #[test]
    fn free_matrix_is_diagonal_oscillator() {
        let m = assemble(&EDProblem::new(0.0, Irrep::E1, BasisKind::Harmonic, 12.0)).unwrap();
        for i in 0..m.basis.len() {
            for j in 0..m.basis.len() {
                let expected = if i == j { m.basis[i].energy } else { 0.0 };
                assert_eq!(m.matrix.get(i, j), expected);
            }
        }
    }

    #[test]
    fn ground_element_closed_form() {
        let g = 2.5;
        let v = matrix_element(&EDProblem::new(g, Irrep::A1, BasisKind::Harmonic, 6.0), 0, 0).unwrap();
        assert!((v - 1.0 - 3.0 * g / (2.0 * PI).sqrt()).abs() < 1e-12);
        assert!(matrix_element(&EDProblem::new(g, Irrep::A1, BasisKind::Harmonic, 6.0), 0, 50).is_err());
    }

    #[test]
    fn diagonal_elements_match_weak_slope_formula() {
        // ⟨ν,|m||V|ν,|m|⟩/g is the first-order slope
        let g = 1.0;
        for irrep in [Irrep::A1, Irrep::B2, Irrep::E1, Irrep::E2] {
            let m = assemble(&EDProblem::new(g, irrep, BasisKind::Harmonic, 14.0)).unwrap();
            for (i, s) in m.basis.iter().enumerate() {
                let m_abs = s.root.lambda as usize;
                // the symmetric sectors hold the bosonic combinations
                let flavor = if m_abs > 0 && m_abs % 3 == 0 {
                    Flavor::Bosonic
                } else {
                    Flavor::Generic
                };
                let slope = contact_weak_slope(&ContactSlopeInput::new(s.nu, m_abs, flavor)).unwrap();
                assert!(
                    (m.matrix.get(i, i) - s.energy - g * slope).abs() < 1e-10,
                    "{irrep} {:?}",
                    (s.nu, s.root.lambda)
                );
            }
        }
    }

    #[test]
    fn fermionic_sectors_are_blind_to_contact() {
        for irrep in [Irrep::A2, Irrep::B1] {
            let r = solve(&EDProblem::new(50.0, irrep, BasisKind::Harmonic, 14.0)).unwrap();
            let free = solve(&EDProblem::new(0.0, irrep, BasisKind::Harmonic, 14.0)).unwrap();
            for (a, b) in r.eigenvalues.iter().zip(&free.eigenvalues) {
                assert!((a - b).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn hermiticity() {
        let m = assemble(&EDProblem::new(
            3.0,
            Irrep::E2,
            BasisKind::Goldilocks { delta_b: 0.8 },
            14.0,
        ))
        .unwrap();
        let n = m.basis.len();
        for i in 0..n {
            for j in 0..n {
                assert!((m.matrix.get(i, j) - m.matrix.get(j, i)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn goldilocks_basis_approaches_free_ground_state() {
        // at g = 0 the Goldilocks basis only sees -V_b; the exact ground energy
        // is the oscillator value 1, approached from above
        let s = ground_energy_study(
            0.0,
            Irrep::A1,
            BasisKind::Goldilocks { delta_b: 0.3 },
            &[6.0, 14.0, 22.0, 30.0],
        )
        .unwrap();
        assert!(s.is_monotone(1e-10));
        assert!(s.rows.iter().all(|r| r.e0 > 1.0));
        assert!(s.rows.last().unwrap().e0 < s.rows[0].e0 - 0.05);
    }

    #[test]
    fn quadrature_robustness() {
        for kind in [
            BasisKind::Harmonic,
            BasisKind::Goldilocks { delta_b: 1.2 },
            BasisKind::Goldilocks { delta_b: 0.05 },
        ] {
            let mut p = EDProblem::new(7.0, Irrep::A1, kind, 20.0);
            let a = assemble(&p).unwrap();
            p.quadrature_order *= 2;
            let b = assemble(&p).unwrap();
            let n = a.basis.len();
            for i in 0..n {
                for j in 0..n {
                    let d = (a.matrix.get(i, j) - b.matrix.get(i, j)).abs();
                    assert!(d < 1e-10, "{kind:?} ({i},{j}): {d}");
                }
            }
        }
    }

    #[test]
    fn zero_coupling_ground_energy() {
        let s = ground_energy_study(0.0, Irrep::A1, BasisKind::Harmonic, &[4.0, 8.0, 12.0]).unwrap();
        assert!(s.rows.iter().all(|r| r.e0 == 1.0));
        assert!(ground_energy_study(0.0, Irrep::A1, BasisKind::Harmonic, &[8.0, 4.0]).is_err());
    }

    #[test]
    fn variational_monotonicity() {
        for kind in [BasisKind::Harmonic, BasisKind::matched(5.0)] {
            let s = ground_energy_study(5.0, Irrep::A1, kind, &[6.0, 10.0, 14.0, 18.0, 22.0]).unwrap();
            assert!(s.is_monotone(1e-10), "{kind:?}: {:?}", s.rows);
        }
    }

    #[test]
    fn small_g_slope() {
        let g = 1e-3;
        let e0 = solve(&EDProblem::new(g, Irrep::A1, BasisKind::Harmonic, 20.0))
            .unwrap()
            .eigenvalues[0];
        let slope = contact_weak_slope(&ContactSlopeInput::new(0, 0, Flavor::Generic)).unwrap();
        assert!(((e0 - 1.0) / g / slope - 1.0).abs() < 1e-3);
    }

    #[test]
    fn sectors_do_not_mix() {
        let p = EDProblem::new(8.0, Irrep::A1, BasisKind::Harmonic, 16.0);
        let combined = solve_combined(&p, &[Irrep::A1, Irrep::B2]).unwrap();
        let mut separate = solve(&p).unwrap().eigenvalues;
        separate.extend(
            solve(&EDProblem {
                sector: Irrep::B2,
                ..p.clone()
            })
            .unwrap()
            .eigenvalues,
        );
        separate.sort_by(f64::total_cmp);
        assert_eq!(combined.eigenvalues.len(), separate.len());
        for (a, b) in combined.eigenvalues.iter().zip(&separate) {
            assert!((a - b).abs() < 1e-8);
        }
    }

    #[test]
    fn argument_errors() {
        assert!(build_basis(&EDProblem::new(-1.0, Irrep::A1, BasisKind::Harmonic, 4.0)).is_err());
        assert!(build_basis(&EDProblem::new(1.0, Irrep::A2, BasisKind::Harmonic, 4.0)).is_err());
        assert!(build_basis(&EDProblem::new(
            1.0,
            Irrep::A1,
            BasisKind::Goldilocks { delta_b: FRAC_PI_2 },
            4.0
        ))
        .is_err());
    }

    #[test]
    fn power_law_recovers_known_parameters() {
        let pts: Vec<(f64, f64)> = (3..12)
            .map(|k| {
                let x = 10.0 * k as f64;
                (x, 3.75 + 2.3 * x.powf(-0.62))
            })
            .collect();
        let f = fit_power_law(&pts).unwrap();
        assert!(
            (f.limit - 3.75).abs() < 1e-8 && (f.exponent - 0.62).abs() < 1e-6,
            "{f:?}"
        );
        assert!(fit_power_law(&pts[..2]).is_err());
    }

    #[test]
    fn intercept_fit() {
        let (b, r) = linear_intercept(&[(1.0, 3.0), (2.0, 5.0), (3.0, 7.0)]);
        assert!((b - 1.0).abs() < 1e-14 && r < 1e-14);
    }
}
