//! One function per subcommand. Each returns the table it would print and
//! the list of numerical invariants it found violated.

use crate::args::{
    BasisChoice, Command, ContactArgs, LadderArgs, LevelsArgs, Regime, SlopesArgs, SpectrumArgs, WavefunctionArgs,
};
use crate::output::{format_float, Cell, OutputRecord, Table};
use goldilocks::angular::{build_wavefunction, root, Coupling, RootKind, RotationFamily};
use goldilocks::contact_ed::{ground_energy_study, BasisKind};
use goldilocks::coords::interaction_lines;
use goldilocks::radial::{
    algebra_residuals, apply_w_operator, casimir_eigenvalue, ladder_up, radial_eval, LadderSign, RadialState,
};
use goldilocks::spectrum::{
    branch_catalog, enumerate, level_curve, slope_numeric, slope_unitary, slope_weak, WeakSlope,
};
use rayon::prelude::*;
use std::f64::consts::{FRAC_PI_2, PI};

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or arguments; exit code 2.
    Usage(String),
    /// The solver itself failed; exit code 3.
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl From<goldilocks::Error> for CliError {
    fn from(e: goldilocks::Error) -> Self {
        match e {
            goldilocks::Error::Argument(_) | goldilocks::Error::Domain(_) => CliError::Usage(e.to_string()),
            other => CliError::Numerical(other.to_string()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub record: OutputRecord,
    /// Empty on success; otherwise the run exits with code 3.
    pub violations: Vec<String>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.violations.is_empty() {
            0
        } else {
            3
        }
    }
}

pub fn run(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Spectrum(a) => spectrum(a),
        Command::Levels(a) => levels(a),
        Command::Wavefunction(a) => wavefunction(a),
        Command::Slopes(a) => slopes(a),
        Command::LadderCheck(a) => ladder_check(a),
        Command::ContactEd(a) => contact_ed(a),
    }
}

fn params(pairs: &[(&str, String)]) -> Vec<(String, String)> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn family(m_bar: u8) -> Result<RotationFamily, CliError> {
    Ok(RotationFamily::new(m_bar)?)
}

fn rel_diff(analytic: f64, numeric: f64) -> f64 {
    let d = (numeric - analytic).abs();
    if analytic == 0.0 {
        d
    } else {
        d / analytic.abs()
    }
}

pub fn spectrum(a: &SpectrumArgs) -> Result<Outcome, CliError> {
    if !(a.group_tol >= 0.0) {
        return Err(CliError::Usage(format!(
            "--group-tol must be >= 0, got {}",
            a.group_tol
        )));
    }
    let table = enumerate(Coupling::new(a.delta)?, a.e_max, a.stats, a.include_cm)?;
    let levels = table.levels(a.group_tol);
    let mut level_of = vec![0; table.records.len()];
    for (k, l) in levels.iter().enumerate() {
        for &i in &l.members {
            level_of[i] = k;
        }
    }
    let out = if a.levels {
        let mut t = Table::new(&["level", "energy", "multiplicity", "irreps"]);
        for (k, l) in levels.iter().enumerate() {
            let mut irreps: Vec<&str> = l
                .members
                .iter()
                .map(|&i| table.records[i].irrep.irrep.as_str())
                .collect();
            irreps.sort_unstable();
            irreps.dedup();
            t.push(vec![
                k.into(),
                l.energy.into(),
                l.multiplicity.into(),
                irreps.join("+").into(),
            ]);
        }
        t
    } else {
        let mut cols = vec!["family", "branch", "kind", "irrep", "m", "lambda", "nu"];
        if a.include_cm {
            cols.push("n");
        }
        cols.extend(["energy", "multiplicity", "level"]);
        let mut t = Table::new(&cols);
        for (i, r) in table.records.iter().enumerate() {
            let mut row: Vec<Cell> = vec![
                (r.root.family.m_bar() as usize).into(),
                r.root.branch.into(),
                r.root.kind.as_str().into(),
                r.irrep.irrep.as_str().into(),
                (r.root.free_lambda().round() as i64).into(),
                r.root.lambda.into(),
                r.nu.into(),
            ];
            if a.include_cm {
                row.push(r.cm_n.into());
            }
            row.extend([r.energy.into(), r.multiplicity.into(), level_of[i].into()]);
            t.push(row);
        }
        t
    };
    Ok(Outcome {
        record: OutputRecord {
            command: "spectrum".into(),
            parameters: params(&[
                ("delta", format_float(a.delta)),
                ("emax", format_float(a.e_max)),
                ("stats", a.stats.to_string()),
                ("include_cm", a.include_cm.to_string()),
                ("group_tol", format_float(a.group_tol)),
                ("levels", a.levels.to_string()),
            ]),
            table: out,
        },
        violations: Vec::new(),
    })
}

pub fn levels(a: &LevelsArgs) -> Result<Outcome, CliError> {
    let grid = &a.grid.values;
    let mut t = Table::new(&[
        "family",
        "branch",
        "kind",
        "irrep",
        "delta",
        "lambda",
        "free_lambda",
        "unitary_lambda",
    ]);
    let mut violations = Vec::new();
    for b in branch_catalog(a.lambda_max) {
        let curve = level_curve(b.family, b.branch, b.kind, grid)?;
        let label = format!(
            "{} branch {} ({}, family {})",
            b.irrep,
            b.branch,
            b.kind.as_str(),
            b.family.m_bar()
        );
        for w in curve.windows(2) {
            if w[1].1 < w[0].1 - 1e-12 {
                violations.push(format!("{label} decreases between delta = {} and {}", w[0].0, w[1].0));
            }
        }
        if b.kind == RootKind::Flat && curve.iter().any(|p| p.1 != b.free_lambda) {
            violations.push(format!("{label} is not constant"));
        }
        for &(d, lam) in &curve {
            if d == 0.0 && (lam - b.free_lambda).abs() > 1e-10 {
                violations.push(format!("{label}: lambda(0) = {lam}, expected {}", b.free_lambda));
            }
            if d == FRAC_PI_2 && (lam - b.unitary_lambda).abs() > 1e-10 {
                violations.push(format!("{label}: lambda(pi/2) = {lam}, expected {}", b.unitary_lambda));
            }
            t.push(vec![
                (b.family.m_bar() as usize).into(),
                b.branch.into(),
                b.kind.as_str().into(),
                b.irrep.irrep.as_str().into(),
                d.into(),
                lam.into(),
                b.free_lambda.into(),
                b.unitary_lambda.into(),
            ]);
        }
    }
    Ok(Outcome {
        record: OutputRecord {
            command: "levels".into(),
            parameters: params(&[
                ("grid", a.grid.text.clone()),
                ("lambda_max", format_float(a.lambda_max)),
            ]),
            table: t,
        },
        violations,
    })
}

pub fn wavefunction(a: &WavefunctionArgs) -> Result<Outcome, CliError> {
    if a.samples < 2 {
        return Err(CliError::Usage(format!("--samples must be >= 2, got {}", a.samples)));
    }
    let coupling = Coupling::new(a.delta)?;
    let r = root(family(a.family)?, a.kind, a.branch, coupling)?;
    let wf = build_wavefunction(&r, coupling, a.m_sign)?;
    let continuity = wf.continuity_residual();
    let norm = (wf.norm_squared() - 1.0).abs();

    let mut rows: Vec<(f64, Option<usize>)> = (0..a.samples)
        .map(|k| (2.0 * PI * k as f64 / (a.samples - 1) as f64, None))
        .collect();
    rows.extend(
        interaction_lines()
            .iter()
            .enumerate()
            .map(|(i, &phi)| (phi, Some(i + 1))),
    );
    rows.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));

    let mut t = Table::new(&["phi", "re", "im", "line", "kink_residual", "continuity_residual"]);
    let mut violations = Vec::new();
    for (phi, line) in rows {
        let v = wf.evaluate(phi);
        let (kink, cont) = match line {
            Some(n) => {
                let (lo, hi, _, _) = wf.line_limits(n);
                let k = wf.kink_residual_at(n);
                if k > 1e-8 {
                    violations.push(format!("kink residual {k:e} at line {n}"));
                }
                (Cell::Float(k), Cell::Float((hi - lo).norm()))
            }
            None => (Cell::Null, Cell::Null),
        };
        t.push(vec![phi.into(), v.re.into(), v.im.into(), line.into(), kink, cont]);
    }
    if continuity > 1e-10 {
        violations.push(format!("continuity residual {continuity:e}"));
    }
    if norm > 1e-10 {
        violations.push(format!("normalization off by {norm:e}"));
    }
    Ok(Outcome {
        record: OutputRecord {
            command: "wavefunction".into(),
            parameters: params(&[
                ("family", a.family.to_string()),
                ("branch", a.branch.to_string()),
                ("kind", a.kind.as_str().into()),
                ("delta", format_float(a.delta)),
                ("m_sign", a.m_sign.to_string()),
                ("samples", a.samples.to_string()),
                ("lambda", format_float(r.lambda)),
                ("irrep", r.irrep.irrep.as_str().into()),
            ]),
            table: t,
        },
        violations,
    })
}

pub fn slopes(a: &SlopesArgs) -> Result<Outcome, CliError> {
    if !(a.offset > a.step && a.offset < 0.5) {
        return Err(CliError::Usage(format!(
            "--offset must exceed --step and be < 0.5, got {}",
            a.offset
        )));
    }
    let (limit, center, name) = match a.regime {
        Regime::Weak => (Coupling::free(), a.offset, "weak"),
        Regime::Unitary => (Coupling::unitary(), FRAC_PI_2 - a.offset, "unitary"),
    };
    let catalog: Vec<_> = branch_catalog(a.lambda_max)
        .into_iter()
        .filter(|b| match a.regime {
            Regime::Weak => b.free_lambda <= a.lambda_max,
            Regime::Unitary => b.unitary_lambda <= a.lambda_max,
        })
        .collect();
    let rows: Vec<Result<Vec<Cell>, CliError>> = catalog
        .par_iter()
        .map(|b| {
            let r = root(b.family, b.kind, b.branch, limit)?;
            let numeric = slope_numeric(b.family, b.branch, b.kind, center, a.step)?;
            let (analytic, note) = match a.regime {
                Regime::Weak => match slope_weak(&r)? {
                    WeakSlope::Finite(v) => (Some(v), String::new()),
                    WeakSlope::Divergent { coefficient } => {
                        let at = root(b.family, b.kind, b.branch, Coupling::new(center)?)?.lambda;
                        let ratio = at / (coefficient * center).sqrt();
                        (
                            None,
                            format!("divergent; lambda/sqrt({:.6}*delta) = {:.9}", coefficient, ratio),
                        )
                    }
                },
                Regime::Unitary => (Some(slope_unitary(&r)?), String::new()),
            };
            let (abs, rel): (Cell, Cell) = match analytic {
                Some(v) => ((numeric - v).abs().into(), rel_diff(v, numeric).into()),
                None => (Cell::Null, Cell::Null),
            };
            Ok(vec![
                (b.family.m_bar() as usize).into(),
                b.branch.into(),
                b.kind.as_str().into(),
                b.irrep.irrep.as_str().into(),
                r.lambda.into(),
                analytic.into(),
                numeric.into(),
                abs,
                rel,
                note.into(),
            ])
        })
        .collect();
    let mut t = Table::new(&[
        "family", "branch", "kind", "irrep", "lambda", "analytic", "numeric", "abs_diff", "rel_diff", "note",
    ]);
    let mut violations = Vec::new();
    let rel_col = 8;
    for row in rows {
        let row = row?;
        if let Some(rel) = row[rel_col].as_f64() {
            if !(rel <= a.tolerance) {
                violations.push(format!(
                    "slope of family {:?} branch {:?} off by {rel:e}",
                    row[0], row[1]
                ));
            }
        }
        t.push(row);
    }
    Ok(Outcome {
        record: OutputRecord {
            command: "slopes".into(),
            parameters: params(&[
                ("regime", name.into()),
                ("lambda_max", format_float(a.lambda_max)),
                ("offset", format_float(a.offset)),
                ("step", format_float(a.step)),
                ("tolerance", format_float(a.tolerance)),
            ]),
            table: t,
        },
        violations,
    })
}

/// Points where the radial identities are sampled.
pub fn ladder_grid() -> Vec<f64> {
    (1..=80).map(|i| i as f64 * 0.075).collect()
}

pub fn ladder_check(a: &LadderArgs) -> Result<Outcome, CliError> {
    let grid = ladder_grid();
    let mut t = Table::new(&[
        "nu",
        "lambda",
        "w_minus_ground",
        "w_plus_map",
        "commutator_up",
        "commutator_down",
        "commutator_w",
        "casimir_operator",
        "casimir_analytic",
        "casimir_numeric",
        "casimir_abs_diff",
    ]);
    let mut violations = Vec::new();
    for &lam in &a.lambdas {
        for nu in 0..=a.nu_max {
            let s = RadialState::three(nu, lam)?;
            let w_minus = if nu == 0 {
                let v = apply_w_operator(LadderSign::Lower, &s, &grid);
                Cell::Float(v.iter().fold(0.0f64, |m, x| m.max(x.abs())))
            } else {
                Cell::Null
            };
            let (c, up) = ladder_up(&s);
            let w_plus = apply_w_operator(LadderSign::Raise, &s, &grid)
                .iter()
                .zip(&grid)
                .fold(0.0f64, |m, (w, &rho)| m.max((w - c * radial_eval(&up, rho)).abs()));
            let alg = algebra_residuals(&s, &grid);
            let analytic = lam * lam - 1.0;
            let numeric = casimir_eigenvalue(&s)?;
            let diff = (numeric - analytic).abs();
            let checks = [
                ("W- on ground state", w_minus.as_f64().unwrap_or(0.0), a.tolerance),
                ("W+ map", w_plus, a.tolerance),
                ("[H, W+]", alg.commutator_up, a.tolerance),
                ("[H, W-]", alg.commutator_down, a.tolerance),
                ("[W-, W+]", alg.commutator_w, a.tolerance),
                ("Casimir operator", alg.casimir, a.tolerance),
                ("Casimir value", diff, 1e-12 * analytic.abs().max(1.0)),
            ];
            for (name, v, tol) in checks {
                if !(v <= tol) {
                    violations.push(format!("{name} residual {v:e} at nu = {nu}, lambda = {lam}"));
                }
            }
            t.push(vec![
                nu.into(),
                lam.into(),
                w_minus,
                w_plus.into(),
                alg.commutator_up.into(),
                alg.commutator_down.into(),
                alg.commutator_w.into(),
                alg.casimir.into(),
                analytic.into(),
                numeric.into(),
                diff.into(),
            ]);
        }
    }
    let lambdas: Vec<String> = a.lambdas.iter().map(|&l| format_float(l)).collect();
    Ok(Outcome {
        record: OutputRecord {
            command: "ladder-check".into(),
            parameters: params(&[
                ("nu_max", a.nu_max.to_string()),
                ("lambdas", lambdas.join(",")),
                ("tolerance", format_float(a.tolerance)),
            ]),
            table: t,
        },
        violations,
    })
}

pub fn contact_ed(a: &ContactArgs) -> Result<Outcome, CliError> {
    let kind = match (a.basis, a.delta_b) {
        (BasisChoice::Harmonic, None) => BasisKind::Harmonic,
        (BasisChoice::Matched, None) => BasisKind::matched(a.g),
        (BasisChoice::Goldilocks, Some(delta_b)) => BasisKind::Goldilocks { delta_b },
        (BasisChoice::Goldilocks, None) => return Err(CliError::Usage("--basis goldilocks needs --delta-b".into())),
        (_, Some(_)) => return Err(CliError::Usage("--delta-b is only used with --basis goldilocks".into())),
    };
    let study = ground_energy_study(a.g, a.sector, kind, &a.e_max)?;
    let mut t = Table::new(&["row", "e_max", "basis_size", "e0", "fit_residual", "exponent"]);
    for r in &study.rows {
        t.push(vec![
            "cutoff".into(),
            r.e_max.into(),
            r.basis_size.into(),
            r.e0.into(),
            Cell::Null,
            Cell::Null,
        ]);
    }
    t.push(vec![
        "inverse_size_fit".into(),
        Cell::Null,
        Cell::Null,
        study.extrapolated.into(),
        study.fit_residual.into(),
        Cell::Null,
    ]);
    if let Some(p) = study.power_law {
        t.push(vec![
            "power_law_fit".into(),
            Cell::Null,
            Cell::Null,
            p.limit.into(),
            p.rms.into(),
            p.exponent.into(),
        ]);
    }
    let mut violations = Vec::new();
    if !study.is_monotone(1e-10) {
        violations.push("ground energy increases with the cutoff".into());
    }
    let e_max: Vec<String> = a.e_max.iter().map(|&e| format_float(e)).collect();
    Ok(Outcome {
        record: OutputRecord {
            command: "contact-ed".into(),
            parameters: params(&[
                ("g", format_float(a.g)),
                ("sector", a.sector.as_str().into()),
                ("basis", format!("{:?}", a.basis).to_lowercase()),
                ("delta_b", format_float(kind.delta_b())),
                ("emax", e_max.join(",")),
            ]),
            table: t,
        },
        violations,
    })
}
