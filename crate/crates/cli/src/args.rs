use clap::{Args, Parser, Subcommand, ValueEnum};
use goldilocks::angular::{Irrep, RootKind};
use goldilocks::spectrum::{Statistics, LEVEL_TOLERANCE};
use std::f64::consts::FRAC_PI_2;

#[derive(Debug, Parser)]
#[command(
    name = "goldilocks",
    version,
    about = "Three-body spectra, wave functions and contact-model ED in a 1D harmonic trap"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// All states up to an energy cutoff at fixed coupling.
    Spectrum(SpectrumArgs),
    /// Branches λ(δ) over a grid of couplings.
    Levels(LevelsArgs),
    /// Samples of one angular wave function.
    Wavefunction(WavefunctionArgs),
    /// Analytic against finite-difference slopes dE/dδ at either limit.
    Slopes(SlopesArgs),
    /// Residuals of the radial ladder and Casimir identities.
    LadderCheck(LadderArgs),
    /// Exact diagonalization of the contact interaction.
    ContactEd(ContactArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    /// Coupling phase in [0, π/2], or `unitary`.
    #[arg(long, value_parser = parse_delta)]
    pub delta: f64,
    #[arg(long = "emax")]
    pub e_max: f64,
    #[arg(long, default_value = "distinguishable", value_parser = parse_statistics)]
    pub stats: Statistics,
    /// Add the center-of-mass oscillator.
    #[arg(long)]
    pub include_cm: bool,
    /// Energies closer than this are one level.
    #[arg(long, default_value_t = LEVEL_TOLERANCE)]
    pub group_tol: f64,
    /// One row per degenerate level instead of per state.
    #[arg(long)]
    pub levels: bool,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct LevelsArgs {
    /// `start:stop:count`; endpoints may be `unitary`.
    #[arg(long, value_parser = parse_grid, default_value = "0:unitary:33")]
    pub grid: DeltaGrid,
    /// Branches whose free value λ(0) is at most this.
    #[arg(long, default_value_t = 9.0)]
    pub lambda_max: f64,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct WavefunctionArgs {
    /// Rotation family m̄ in 0..=3.
    #[arg(long)]
    pub family: u8,
    #[arg(long, default_value_t = 0)]
    pub branch: usize,
    #[arg(long, default_value = "moving", value_parser = parse_kind)]
    pub kind: RootKind,
    #[arg(long, value_parser = parse_delta)]
    pub delta: f64,
    /// Sign of m; selects the partner in the doublet families.
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub m_sign: i8,
    #[arg(long, default_value_t = 121)]
    pub samples: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Regime {
    Weak,
    Unitary,
}

#[derive(Debug, Clone, Args)]
pub struct SlopesArgs {
    #[arg(long, value_enum)]
    pub regime: Regime,
    /// Branches whose limiting λ is at most this.
    #[arg(long, default_value_t = 6.0)]
    pub lambda_max: f64,
    /// Distance of the finite-difference center from the limit.
    #[arg(long, default_value_t = 1e-6)]
    pub offset: f64,
    #[arg(long, default_value_t = 1e-7)]
    pub step: f64,
    /// Relative difference above which the run exits with code 3.
    #[arg(long, default_value_t = 1e-3)]
    pub tolerance: f64,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct LadderArgs {
    #[arg(long, default_value_t = 5)]
    pub nu_max: usize,
    #[arg(long, value_delimiter = ',', default_value = "0,3,4.7")]
    pub lambdas: Vec<f64>,
    #[arg(long, default_value_t = 1e-8)]
    pub tolerance: f64,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BasisChoice {
    Harmonic,
    /// Goldilocks basis with 2 tan δ_b = g.
    Matched,
    /// Goldilocks basis at `--delta-b`.
    Goldilocks,
}

#[derive(Debug, Clone, Args)]
pub struct ContactArgs {
    #[arg(long)]
    pub g: f64,
    #[arg(long, value_parser = parse_irrep, default_value = "A1")]
    pub sector: Irrep,
    #[arg(long, value_enum, default_value = "harmonic")]
    pub basis: BasisChoice,
    #[arg(long, value_parser = parse_delta)]
    pub delta_b: Option<f64>,
    /// Ascending energy cutoffs.
    #[arg(long = "emax", value_delimiter = ',', required = true)]
    pub e_max: Vec<f64>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

/// Evenly spaced couplings, endpoints included.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaGrid {
    pub text: String,
    pub values: Vec<f64>,
}

/// Radians in `[0, π/2]`, or the token `unitary` for exactly π/2.
pub fn parse_delta(s: &str) -> Result<f64, String> {
    let v = match s.trim() {
        "unitary" => return Ok(FRAC_PI_2),
        t => t.parse::<f64>().map_err(|e| format!("'{s}' is not a number: {e}"))?,
    };
    if !(0.0..=FRAC_PI_2).contains(&v) {
        return Err(format!("delta must lie in [0, pi/2], got {v}"));
    }
    Ok(v)
}

pub fn parse_grid(s: &str) -> Result<DeltaGrid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [start, stop, count] = parts[..] else {
        return Err(format!("grid must be start:stop:count, got '{s}'"));
    };
    let start = parse_delta(start)?;
    let stop = parse_delta(stop)?;
    let count: usize = count.trim().parse().map_err(|e| format!("grid count '{count}': {e}"))?;
    if count == 0 || (count == 1 && start != stop) {
        return Err(format!("grid count must be >= 2 for distinct endpoints, got {count}"));
    }
    if stop < start {
        return Err(format!("grid must be ascending, got {start} > {stop}"));
    }
    let values = (0..count)
        .map(|i| match i {
            0 => start,
            i if i + 1 == count => stop,
            i => start + (stop - start) * i as f64 / (count - 1) as f64,
        })
        .collect();
    Ok(DeltaGrid {
        text: s.to_string(),
        values,
    })
}

fn parse_statistics(s: &str) -> Result<Statistics, String> {
    s.parse().map_err(|e: goldilocks::Error| e.to_string())
}

fn parse_kind(s: &str) -> Result<RootKind, String> {
    s.parse().map_err(|e: goldilocks::Error| e.to_string())
}

fn parse_irrep(s: &str) -> Result<Irrep, String> {
    s.parse().map_err(|e: goldilocks::Error| e.to_string())
}
