//! Full three-body spectrum at a given coupling, level curves `λ(δ)`, and
//! the analytic and finite-difference slopes `dE/dδ` at the two limits.

use crate::angular::{
    classify, flat_roots, moving_brackets, root, roots_up_to, AngularRoot, Coupling, Irrep, IrrepLabel, RootKind,
    RotationFamily,
};
use crate::error::{Error, Result};
use rayon::prelude::*;
use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

/// Default tolerance for grouping energies into one degenerate level.
pub const LEVEL_TOLERANCE: f64 = 1e-9;

/// Particle statistics, acting as a filter on the allowed irreps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Statistics {
    Distinguishable,
    Bosons3,
    Fermions3,
    Bosons2Plus1,
    Fermions2Plus1,
}

impl Statistics {
    pub const ALL: [Statistics; 5] = [
        Statistics::Distinguishable,
        Statistics::Bosons3,
        Statistics::Fermions3,
        Statistics::Bosons2Plus1,
        Statistics::Fermions2Plus1,
    ];

    /// Number of physical states contributed by one solution in `irrep`.
    pub fn multiplicity(&self, irrep: Irrep) -> usize {
        use Irrep::*;
        match (self, irrep) {
            (Statistics::Distinguishable, E1 | E2) => 2,
            (Statistics::Distinguishable, _) => 1,
            (Statistics::Bosons3, A1 | B2) => 1,
            (Statistics::Fermions3, A2 | B1) => 1,
            (Statistics::Bosons2Plus1, A1 | B2 | E1 | E2) => 1,
            (Statistics::Fermions2Plus1, A2 | B1 | E1 | E2) => 1,
            _ => 0,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Statistics::Distinguishable => "distinguishable",
            Statistics::Bosons3 => "bosons3",
            Statistics::Fermions3 => "fermions3",
            Statistics::Bosons2Plus1 => "bosons2plus1",
            Statistics::Fermions2Plus1 => "fermions2plus1",
        }
    }
}

impl fmt::Display for Statistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Statistics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Statistics::ALL
            .into_iter()
            .find(|st| st.as_str() == s)
            .ok_or_else(|| Error::Argument(format!("unknown statistics '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumRecord {
    pub root: AngularRoot,
    pub nu: usize,
    /// Center-of-mass oscillator quantum number, when requested.
    pub cm_n: Option<usize>,
    pub energy: f64,
    pub irrep: IrrepLabel,
    pub multiplicity: usize,
}

/// A group of records whose energies agree within the grouping tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct Level {
    pub energy: f64,
    pub multiplicity: usize,
    /// Indices into the table's records.
    pub members: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTable {
    pub coupling: Coupling,
    pub statistics: Statistics,
    pub include_cm: bool,
    pub e_max: f64,
    /// Ascending in energy; ties broken by (family, kind, branch, ν, n).
    pub records: Vec<SpectrumRecord>,
}

impl SpectrumTable {
    /// Degenerate levels; consecutive energies within `tol` are chained into one level.
    pub fn levels(&self, tol: f64) -> Vec<Level> {
        let mut out: Vec<Level> = Vec::new();
        let mut last = f64::NEG_INFINITY;
        for (i, r) in self.records.iter().enumerate() {
            match out.last_mut() {
                Some(level) if r.energy - last <= tol => {
                    level.multiplicity += r.multiplicity;
                    level.members.push(i);
                }
                _ => out.push(Level {
                    energy: r.energy,
                    multiplicity: r.multiplicity,
                    members: vec![i],
                }),
            }
            last = r.energy;
        }
        out
    }

    pub fn total_multiplicity(&self) -> usize {
        self.records.iter().map(|r| r.multiplicity).sum()
    }
}

/// All states with energy `≤ e_max` allowed by `statistics`.
///
/// Relative energies are `1 + 2ν + λ`; with the center of mass included the
/// energy is `n + 2ν + λ + 3/2`.
pub fn enumerate(coupling: Coupling, e_max: f64, statistics: Statistics, include_cm: bool) -> Result<SpectrumTable> {
    if !(e_max >= 1.0) || !e_max.is_finite() {
        return Err(Error::Argument(format!(
            "e_max must be a finite value >= 1, got {e_max}"
        )));
    }
    let base = if include_cm { 1.5 } else { 1.0 };
    let lambda_max = e_max - base;
    let mut roots = Vec::new();
    for family in RotationFamily::ALL {
        roots.extend(roots_up_to(family, lambda_max, coupling)?);
    }
    let mut records = Vec::new();
    for r in roots {
        let multiplicity = statistics.multiplicity(r.irrep.irrep);
        if multiplicity == 0 {
            continue;
        }
        let mut nu = 0;
        loop {
            let rel = base + 2.0 * nu as f64 + r.lambda;
            if rel > e_max {
                break;
            }
            if include_cm {
                let mut n = 0;
                while rel + n as f64 <= e_max {
                    records.push(SpectrumRecord {
                        root: r,
                        nu,
                        cm_n: Some(n),
                        energy: rel + n as f64,
                        irrep: r.irrep,
                        multiplicity,
                    });
                    n += 1;
                }
            } else {
                records.push(SpectrumRecord {
                    root: r,
                    nu,
                    cm_n: None,
                    energy: rel,
                    irrep: r.irrep,
                    multiplicity,
                });
            }
            nu += 1;
        }
    }
    records.sort_by(|a, b| {
        a.energy
            .total_cmp(&b.energy)
            .then(a.root.family.cmp(&b.root.family))
            .then(a.root.kind.cmp(&b.root.kind))
            .then(a.root.branch.cmp(&b.root.branch))
            .then(a.nu.cmp(&b.nu))
            .then(a.cm_n.cmp(&b.cm_n))
    });
    Ok(SpectrumTable {
        coupling,
        statistics,
        include_cm,
        e_max,
        records,
    })
}

/// Identity of a branch `λ(δ)` together with its limiting values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchId {
    pub family: RotationFamily,
    pub branch: usize,
    pub kind: RootKind,
    pub irrep: IrrepLabel,
    pub free_lambda: f64,
    pub unitary_lambda: f64,
}

/// Every branch whose free value `λ(0)` is at most `lambda_max`, ordered by
/// family, kind and branch.
pub fn branch_catalog(lambda_max: f64) -> Vec<BranchId> {
    let mut out = Vec::new();
    for family in RotationFamily::ALL {
        for (branch, b) in moving_brackets(family, lambda_max).enumerate() {
            out.push(BranchId {
                family,
                branch,
                kind: RootKind::Moving,
                irrep: classify(family, RootKind::Moving),
                free_lambda: b.lo,
                unitary_lambda: b.hi,
            });
        }
        for r in flat_roots(family, lambda_max, Coupling::free()) {
            out.push(BranchId {
                family,
                branch: r.branch,
                kind: RootKind::Flat,
                irrep: r.irrep,
                free_lambda: r.lambda,
                unitary_lambda: r.lambda,
            });
        }
    }
    out
}

/// `λ` along one branch for each `δ` in the grid.
pub fn level_curve(
    family: RotationFamily,
    branch: usize,
    kind: RootKind,
    delta_grid: &[f64],
) -> Result<Vec<(f64, f64)>> {
    delta_grid
        .par_iter()
        .map(|&delta| {
            let c = Coupling::new(delta)?;
            Ok((delta, root(family, kind, branch, c)?.lambda))
        })
        .collect()
}

/// Weak-coupling slope `dE/dδ` at `δ = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeakSlope {
    Finite(f64),
    /// `λ(δ) ≈ √(coefficient · δ)`, so the slope is infinite at zero.
    Divergent {
        coefficient: f64,
    },
}

impl WeakSlope {
    pub fn finite(&self) -> Option<f64> {
        match self {
            WeakSlope::Finite(v) => Some(*v),
            WeakSlope::Divergent { .. } => None,
        }
    }
}

/// `0` for flat roots, `3/(π|m|)` for the doublet families, `6/(π|m|)` for
/// families 0 and 3 with `|m| > 0`, and a divergent marker for the ground branch.
pub fn slope_weak(root: &AngularRoot) -> Result<WeakSlope> {
    if root.delta != 0.0 {
        return Err(Error::Argument(format!(
            "weak slope needs a root at delta = 0, got {}",
            root.delta
        )));
    }
    if root.kind == RootKind::Flat {
        return Ok(WeakSlope::Finite(0.0));
    }
    let m = root.lambda;
    if m == 0.0 {
        return Ok(WeakSlope::Divergent { coefficient: 6.0 / PI });
    }
    let a = if root.family.is_doublet() { 3.0 } else { 6.0 };
    Ok(WeakSlope::Finite(a / (PI * m)))
}

/// `(3/π) λ ((-1)^{λ+1} cos(m̄π/3) + 1)` at `δ = π/2`.
pub fn slope_unitary(root: &AngularRoot) -> Result<f64> {
    if root.delta != FRAC_PI_2 {
        return Err(Error::Argument(format!(
            "unitary slope needs a root at delta = pi/2, got {}",
            root.delta
        )));
    }
    let lam = root.lambda;
    let parity = if (lam.round() as i64) % 2 == 0 { -1.0 } else { 1.0 };
    Ok(3.0 / PI * lam * (parity * root.family.c() + 1.0))
}

/// Central difference of `E(δ) = 1 + 2ν + λ(δ)` along a branch.
pub fn slope_numeric(family: RotationFamily, branch: usize, kind: RootKind, delta: f64, step: f64) -> Result<f64> {
    if !(step >= 1e-12) {
        return Err(Error::Argument(format!(
            "finite-difference step must be >= 1e-12, got {step}"
        )));
    }
    if delta - step < 0.0 || delta + step > FRAC_PI_2 {
        return Err(Error::Argument(format!(
            "delta +- step must lie in [0, pi/2], got {delta} +- {step}"
        )));
    }
    let lo = root(family, kind, branch, Coupling::new(delta - step)?)?.lambda;
    let hi = root(family, kind, branch, Coupling::new(delta + step)?)?.lambda;
    Ok((hi - lo) / (2.0 * step))
}
