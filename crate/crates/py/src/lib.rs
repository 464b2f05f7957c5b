//! Python module `goldilocks`: thin wrappers over the Rust solver.

use ::goldilocks::angular::{build_wavefunction, root, roots_up_to, Coupling, Irrep, RootKind, RotationFamily};
use ::goldilocks::contact_ed::{solve, BasisKind, EDProblem};
use ::goldilocks::perturb::{contact_weak_slope as weak_slope, ContactSlopeInput, Flavor};
use ::goldilocks::radial::{radial_eval, RadialState};
use ::goldilocks::spectrum::{enumerate, slope_numeric as numeric_slope, Statistics, LEVEL_TOLERANCE};
use ::goldilocks::Error;
use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Argument(_) | Error::Domain(_) => PyValueError::new_err(e.to_string()),
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn family(m_bar: u8) -> PyResult<RotationFamily> {
    RotationFamily::new(m_bar).map_err(py_err)
}

fn kind(s: &str) -> PyResult<RootKind> {
    s.parse().map_err(py_err)
}

fn coupling(delta: f64) -> PyResult<Coupling> {
    Coupling::new(delta).map_err(py_err)
}

/// λ of one branch at coupling phase `delta`.
#[pyfunction]
#[pyo3(signature = (family_m, branch, delta, kind_name = "moving"))]
fn angular_root(family_m: u8, branch: usize, delta: f64, kind_name: &str) -> PyResult<f64> {
    Ok(root(family(family_m)?, kind(kind_name)?, branch, coupling(delta)?)
        .map_err(py_err)?
        .lambda)
}

/// All roots of a rotation family with λ ≤ `lambda_max`, as dicts.
#[pyfunction]
fn roots<'py>(py: Python<'py>, family_m: u8, lambda_max: f64, delta: f64) -> PyResult<Vec<Bound<'py, PyDict>>> {
    roots_up_to(family(family_m)?, lambda_max, coupling(delta)?)
        .map_err(py_err)?
        .into_iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("family", r.family.m_bar())?;
            d.set_item("branch", r.branch)?;
            d.set_item("kind", r.kind.as_str())?;
            d.set_item("irrep", r.irrep.irrep.as_str())?;
            d.set_item("lambda", r.lambda)?;
            Ok(d)
        })
        .collect()
}

/// Degenerate levels `(energy, multiplicity)` up to `e_max`.
#[pyfunction]
#[pyo3(signature = (delta, e_max, stats = "distinguishable", include_cm = false, tol = LEVEL_TOLERANCE))]
fn levels(delta: f64, e_max: f64, stats: &str, include_cm: bool, tol: f64) -> PyResult<Vec<(f64, usize)>> {
    let stats: Statistics = stats.parse().map_err(py_err)?;
    let table = enumerate(coupling(delta)?, e_max, stats, include_cm).map_err(py_err)?;
    Ok(table
        .levels(tol)
        .into_iter()
        .map(|l| (l.energy, l.multiplicity))
        .collect())
}

/// Normalized angular wave function sampled at `phis`.
#[pyfunction]
#[pyo3(signature = (family_m, branch, delta, phis, kind_name = "moving", m_sign = 1))]
fn wavefunction(
    family_m: u8,
    branch: usize,
    delta: f64,
    phis: Vec<f64>,
    kind_name: &str,
    m_sign: i8,
) -> PyResult<Vec<Complex64>> {
    let c = coupling(delta)?;
    let r = root(family(family_m)?, kind(kind_name)?, branch, c).map_err(py_err)?;
    let wf = build_wavefunction(&r, c, m_sign).map_err(py_err)?;
    Ok(phis.iter().map(|&p| wf.evaluate(p)).collect())
}

/// Central-difference `dE/dδ` along a branch.
#[pyfunction]
#[pyo3(signature = (family_m, branch, delta, step = 1e-7, kind_name = "moving"))]
fn slope_numeric(family_m: u8, branch: usize, delta: f64, step: f64, kind_name: &str) -> PyResult<f64> {
    numeric_slope(family(family_m)?, branch, kind(kind_name)?, delta, step).map_err(py_err)
}

/// Normalized hyperradial function `R_{ν,λ}(ρ)` for three particles.
#[pyfunction]
fn radial(nu: usize, lam: f64, rhos: Vec<f64>) -> PyResult<Vec<f64>> {
    let s = RadialState::three(nu, lam).map_err(py_err)?;
    Ok(rhos.iter().map(|&r| radial_eval(&s, r)).collect())
}

/// `dE/dg` at `g = 0` for the contact interaction.
#[pyfunction]
#[pyo3(signature = (nu, m_abs, flavor = "generic"))]
fn contact_weak_slope(nu: usize, m_abs: usize, flavor: &str) -> PyResult<f64> {
    let flavor = match flavor {
        "generic" => Flavor::Generic,
        "bosonic" => Flavor::Bosonic,
        "fermionic" => Flavor::Fermionic,
        other => return Err(PyValueError::new_err(format!("unknown flavor '{other}'"))),
    };
    weak_slope(&ContactSlopeInput::new(nu, m_abs, flavor)).map_err(py_err)
}

/// Contact-model ED: `(eigenvalues, basis_size)`. `basis` is `harmonic`,
/// `matched` or `goldilocks` (which needs `delta_b`).
#[pyfunction]
#[pyo3(signature = (g, e_max, sector = "A1", basis = "harmonic", delta_b = None))]
fn contact_ed(g: f64, e_max: f64, sector: &str, basis: &str, delta_b: Option<f64>) -> PyResult<(Vec<f64>, usize)> {
    let sector: Irrep = sector.parse().map_err(py_err)?;
    let kind = match (basis, delta_b) {
        ("harmonic", None) => BasisKind::Harmonic,
        ("matched", None) => BasisKind::matched(g),
        ("goldilocks", Some(delta_b)) => BasisKind::Goldilocks { delta_b },
        _ => {
            return Err(PyValueError::new_err(
                "basis must be harmonic, matched, or goldilocks with delta_b",
            ))
        }
    };
    let r = solve(&EDProblem::new(g, sector, kind, e_max)).map_err(py_err)?;
    Ok((r.eigenvalues, r.basis_size))
}

#[pymodule]
pub fn goldilocks(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(angular_root, m)?)?;
    m.add_function(wrap_pyfunction!(roots, m)?)?;
    m.add_function(wrap_pyfunction!(levels, m)?)?;
    m.add_function(wrap_pyfunction!(wavefunction, m)?)?;
    m.add_function(wrap_pyfunction!(slope_numeric, m)?)?;
    m.add_function(wrap_pyfunction!(radial, m)?)?;
    m.add_function(wrap_pyfunction!(contact_weak_slope, m)?)?;
    m.add_function(wrap_pyfunction!(contact_ed, m)?)?;
    Ok(())
}
