//! The angular eigenproblem `Λ Φ = λ² Φ` on the circle with six
//! delta-function interaction lines at `φ_n = (2n-1)π/6`.
//!
//! Solutions are organized by rotation family `m̄ ∈ {0,1,2,3}`: the
//! quantization condition depends on the `C₆` eigenvalue `e^{imπ/3}` only
//! through `cos(mπ/3)`. Within a family, a root is either *moving*
//! (its `λ` depends on the coupling and lies in a fixed bracket between
//! the free and unitary values) or *flat* (`λ = 3j`, antisymmetric under
//! every pair exchange, blind to the interaction).

mod roots;
mod symmetry;
mod wavefunction;

pub use roots::{
    flat_roots, moving_brackets, quantization_function, quantization_residual, root, roots_up_to, solve_lambda, Bracket,
};
pub use symmetry::{classify, sigma_v_parity, Irrep, IrrepLabel};
pub use wavefunction::{build_wavefunction, AngularWaveFunction, RealAngular, Side};

use crate::error::{Error, Result};
use std::f64::consts::FRAC_PI_2;
use std::fmt;

/// Interaction strength stored as the phase `δ ∈ [0, π/2]`, `tan δ = kink/2`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Coupling {
    delta: f64,
}

impl Coupling {
    pub fn new(delta: f64) -> Result<Self> {
        if !(0.0..=FRAC_PI_2).contains(&delta) {
            return Err(Error::Argument(format!("delta must lie in [0, pi/2], got {delta}")));
        }
        Ok(Self { delta })
    }

    pub fn free() -> Self {
        Self { delta: 0.0 }
    }

    pub fn unitary() -> Self {
        Self { delta: FRAC_PI_2 }
    }

    /// From the strength multiplying `Σ δ(φ - φ_n)` in `Λ`.
    pub fn from_kink(kink: f64) -> Result<Self> {
        if kink.is_nan() || kink < 0.0 {
            return Err(Error::Argument(format!(
                "kink strength must be non-negative, got {kink}"
            )));
        }
        if kink.is_infinite() {
            return Ok(Self::unitary());
        }
        Ok(Self {
            delta: (0.5 * kink).atan(),
        })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// `2 tan δ`; infinite at the unitary point.
    pub fn kink(&self) -> f64 {
        if self.is_unitary() {
            f64::INFINITY
        } else {
            2.0 * self.delta.tan()
        }
    }

    pub fn is_free(&self) -> bool {
        self.delta == 0.0
    }

    pub fn is_unitary(&self) -> bool {
        self.delta == FRAC_PI_2
    }
}

/// Rotation family `m̄`, standing for all `m ≡ ±m̄ (mod 6)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RotationFamily(u8);

impl RotationFamily {
    pub const ALL: [RotationFamily; 4] = [Self(0), Self(1), Self(2), Self(3)];

    pub fn new(m_bar: u8) -> Result<Self> {
        if m_bar > 3 {
            return Err(Error::Argument(format!("rotation family must be 0..=3, got {m_bar}")));
        }
        Ok(Self(m_bar))
    }

    pub fn m_bar(&self) -> u8 {
        self.0
    }

    /// `cos(m̄π/3)`, exact.
    pub fn c(&self) -> f64 {
        [1.0, 0.5, -0.5, -1.0][self.0 as usize]
    }

    /// `sin(m̄π/3)`.
    pub fn s(&self) -> f64 {
        const HALF_SQRT_3: f64 = 0.866_025_403_784_438_6;
        [0.0, HALF_SQRT_3, HALF_SQRT_3, 0.0][self.0 as usize]
    }

    /// Families 1 and 2 hold the degenerate `±m` doublets.
    pub fn is_doublet(&self) -> bool {
        matches!(self.0, 1 | 2)
    }
}

impl fmt::Display for RotationFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootKind {
    Moving,
    Flat,
}

impl RootKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            RootKind::Moving => "moving",
            RootKind::Flat => "flat",
        }
    }
}

impl std::str::FromStr for RootKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "moving" => Ok(RootKind::Moving),
            "flat" => Ok(RootKind::Flat),
            other => Err(Error::Argument(format!("unknown root kind '{other}'"))),
        }
    }
}

/// One solution `λ` of the quantization condition at a given coupling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularRoot {
    pub family: RotationFamily,
    /// Ordinal among the family's roots of the same kind, ascending in `λ`.
    pub branch: usize,
    pub kind: RootKind,
    pub lambda: f64,
    pub irrep: IrrepLabel,
    /// Coupling phase at which `lambda` was solved.
    pub delta: f64,
}

impl AngularRoot {
    /// `λ` in the non-interacting limit, i.e. the `|m|` label of the branch.
    pub fn free_lambda(&self) -> f64 {
        match self.kind {
            RootKind::Flat => self.lambda,
            RootKind::Moving => moving_brackets(self.family, f64::INFINITY)
                .nth(self.branch)
                .map(|b| b.lo)
                .unwrap_or(f64::NAN),
        }
    }

    /// `λ` in the unitary limit.
    pub fn unitary_lambda(&self) -> f64 {
        match self.kind {
            RootKind::Flat => self.lambda,
            RootKind::Moving => moving_brackets(self.family, f64::INFINITY)
                .nth(self.branch)
                .map(|b| b.hi)
                .unwrap_or(f64::NAN),
        }
    }

    pub fn bracket(&self) -> Option<Bracket> {
        match self.kind {
            RootKind::Flat => None,
            RootKind::Moving => moving_brackets(self.family, f64::INFINITY).nth(self.branch),
        }
    }
}
