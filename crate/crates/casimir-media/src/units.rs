//! Unit systems: Gaussian CGS with explicit ħ and c, or reduced units ħ = c = 1.

use serde::{Deserialize, Serialize};

/// Physical constants threaded through every force integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Units {
    /// Reduced Planck constant (erg·s in Gaussian CGS, 1 in reduced units).
    pub hbar: f64,
    /// Speed of light (cm/s in Gaussian CGS, 1 in reduced units).
    pub c: f64,
}

impl Units {
    /// Reduced units ħ = c = 1. Lengths are measured in c/ω_ref,
    /// polarizabilities in (c/ω_ref)³ for a caller-chosen reference frequency.
    pub const fn reduced() -> Self {
        Units { hbar: 1.0, c: 1.0 }
    }

    /// Gaussian CGS: ħ in erg·s, c in cm/s.
    pub const fn gaussian() -> Self {
        Units {
            hbar: 1.054_571_817e-27,
            c: 2.997_924_58e10,
        }
    }
}

impl Default for Units {
    fn default() -> Self {
        Units::reduced()
    }
}
