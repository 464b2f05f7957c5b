use super::{RootKind, RotationFamily};
use crate::error::{Error, Result};
use std::fmt;

/// Irreducible representations of the hexagonal dihedral group, Mulliken labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Irrep {
    A1,
    A2,
    B1,
    B2,
    E1,
    E2,
}

impl Irrep {
    pub const ALL: [Irrep; 6] = [Irrep::A1, Irrep::A2, Irrep::B1, Irrep::B2, Irrep::E1, Irrep::E2];

    pub fn dim(&self) -> usize {
        match self {
            Irrep::E1 | Irrep::E2 => 2,
            _ => 1,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Irrep::A1 => "A1",
            Irrep::A2 => "A2",
            Irrep::B1 => "B1",
            Irrep::B2 => "B2",
            Irrep::E1 => "E1",
            Irrep::E2 => "E2",
        }
    }

    /// The rotation family and root kind spanning this irrep.
    pub fn family_and_kind(&self) -> (RotationFamily, RootKind) {
        let (m, kind) = match self {
            Irrep::A1 => (0, RootKind::Moving),
            Irrep::A2 => (0, RootKind::Flat),
            Irrep::B1 => (3, RootKind::Flat),
            Irrep::B2 => (3, RootKind::Moving),
            Irrep::E1 => (1, RootKind::Moving),
            Irrep::E2 => (2, RootKind::Moving),
        };
        (RotationFamily::ALL[m], kind)
    }
}

impl fmt::Display for Irrep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Irrep {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Irrep::ALL
            .into_iter()
            .find(|i| i.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Argument(format!("unknown irrep '{s}'")))
    }
}

/// Irrep together with its dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IrrepLabel {
    pub irrep: Irrep,
    pub dim: usize,
}

impl From<Irrep> for IrrepLabel {
    fn from(irrep: Irrep) -> Self {
        Self {
            irrep,
            dim: irrep.dim(),
        }
    }
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.irrep.fmt(f)
    }
}

/// Flat roots are the exchange-antisymmetric states, moving roots in
/// families 0 and 3 the symmetric ones; families 1 and 2 are the doublets.
pub fn classify(family: RotationFamily, kind: RootKind) -> IrrepLabel {
    let irrep = match (family.m_bar(), kind) {
        (0, RootKind::Moving) => Irrep::A1,
        (0, RootKind::Flat) => Irrep::A2,
        (3, RootKind::Moving) => Irrep::B2,
        (3, RootKind::Flat) => Irrep::B1,
        (1, _) => Irrep::E1,
        _ => Irrep::E2,
    };
    irrep.into()
}

/// Eigenvalue of a pair exchange `σ_v: φ ↦ π - φ` for one-dimensional irreps.
pub fn sigma_v_parity(irrep: Irrep) -> Option<i8> {
    match irrep {
        Irrep::A1 | Irrep::B2 => Some(1),
        Irrep::A2 | Irrep::B1 => Some(-1),
        Irrep::E1 | Irrep::E2 => None,
    }
}
