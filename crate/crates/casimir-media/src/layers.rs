//! Perpendicular wavevectors and reflection/transmission coefficients at
//! imaginary frequency: single interface, symmetrically bounded slab, and
//! the three mirror kinds (half-space, dilute atomic layer, perfect).
//!
//! All coefficients are real on the imaginary-frequency axis. Sign
//! convention: a perfect mirror has (R^p, R^s) = (+1, −1), which makes the
//! ideal-limit round-trip product r·R = +1 correspond to attraction.

use serde::{Deserialize, Serialize};

use crate::materials::{AtomModel, Medium, MediumAt};

/// Wave polarization: p (TM) or s (TE).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Polarization {
    P,
    S,
}

impl Polarization {
    pub const BOTH: [Polarization; 2] = [Polarization::P, Polarization::S];
}

/// One point of the (ξ, k) integration plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KPoint {
    /// Imaginary-frequency coordinate ξ ≥ 0.
    pub xi: f64,
    /// In-plane wavevector k ≥ 0.
    pub k: f64,
}

/// Slab Fresnel coefficients (r, t) for one polarization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlabCoeffs {
    pub r: f64,
    pub t: f64,
}

/// Mirror description entering the force formulas through R^q(iξ, k).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MirrorSpec {
    /// Semi-infinite medium behind the cavity.
    HalfSpace { medium: Medium },
    /// Host medium with a small number density of atoms B embedded in it;
    /// R^q linearized in N_B. The atom's polarizabilities are the in-medium
    /// effective ones.
    Dilute { number_density: f64, atom: AtomModel },
    /// Ideal reflector: R^p = +1, R^s = −1 for all (ξ, k).
    Perfect,
}

impl MirrorSpec {
    /// Mirror with electric and magnetic quantities exchanged.
    pub fn duality_swapped(&self) -> Self {
        match self {
            MirrorSpec::HalfSpace { medium } => MirrorSpec::HalfSpace {
                medium: medium.duality_swapped(),
            },
            MirrorSpec::Dilute {
                number_density,
                atom,
            } => MirrorSpec::Dilute {
                number_density: *number_density,
                atom: atom.duality_swapped(),
            },
            // R^p ↔ R^s of a perfect mirror is not itself a perfect mirror.
            MirrorSpec::Perfect => MirrorSpec::Perfect,
        }
    }

    pub fn max_frequency_scale(&self) -> Option<f64> {
        match self {
            MirrorSpec::HalfSpace { medium } => medium.max_frequency_scale(),
            MirrorSpec::Dilute { atom, .. } => atom.max_frequency_scale(),
            MirrorSpec::Perfect => None,
        }
    }
}

/// Perpendicular wavevector κ = √(n²ξ²/c² + k²) in the given medium.
pub fn kappa(point: KPoint, medium: MediumAt, c: f64) -> f64 {
    let nxi = medium.n() * point.xi / c;
    (nxi * nxi + point.k * point.k).sqrt()
}

/// Single-interface Fresnel coefficient at imaginary frequency, for a wave
/// going from `from` into `to`:
/// r^p = (ε₂κ₁ − ε₁κ₂)/(ε₂κ₁ + ε₁κ₂), r^s = (μ₂κ₁ − μ₁κ₂)/(μ₂κ₁ + μ₁κ₂).
pub fn interface_r(q: Polarization, from: MediumAt, to: MediumAt, point: KPoint, c: f64) -> f64 {
    let k1 = kappa(point, from, c);
    let k2 = kappa(point, to, c);
    match q {
        Polarization::P => (to.eps * k1 - from.eps * k2) / (to.eps * k1 + from.eps * k2),
        Polarization::S => (to.mu * k1 - from.mu * k2) / (to.mu * k1 + from.mu * k2),
    }
}

/// Reflection and transmission of a slab of thickness `d_s` symmetrically
/// bounded by the host medium (Fabry-Pérot forms):
/// r = ρ(1 − e^(−2κ_s d_s))/(1 − ρ²e^(−2κ_s d_s)),
/// t = (1 − ρ²)e^(−κ_s d_s)/(1 − ρ²e^(−2κ_s d_s)),
/// with ρ the host→slab interface coefficient and κ_s the perpendicular
/// wavevector inside the slab.
pub fn slab_rt(
    q: Polarization,
    host: MediumAt,
    slab: MediumAt,
    d_s: f64,
    point: KPoint,
    c: f64,
) -> SlabCoeffs {
    debug_assert!(d_s >= 0.0);
    let rho = interface_r(q, host, slab, point, c);
    let ks = kappa(point, slab, c);
    let e1 = (-ks * d_s).exp();
    let e2 = e1 * e1;
    let denom = 1.0 - rho * rho * e2;
    SlabCoeffs {
        r: rho * (1.0 - e2) / denom,
        t: (1.0 - rho * rho) * e1 / denom,
    }
}

/// Mirror reflection coefficient R^q(iξ, k) seen from the host medium.
///
/// The dilute branch is the first-order-in-N_B approximation
/// R^p = (πN_Bξ²/κ²c²)·[α^B_e μ(2κ²c²/(n²ξ²) − 1) − α^B_m ε] and
/// R^s = R^p(ε↔μ, α_e↔α_m), written here with ξ² folded into the bracket so
/// the static limit is regular.
pub fn mirror_r(q: Polarization, host: &Medium, mirror: &MirrorSpec, point: KPoint, c: f64) -> f64 {
    match mirror {
        MirrorSpec::Perfect => match q {
            Polarization::P => 1.0,
            Polarization::S => -1.0,
        },
        MirrorSpec::HalfSpace { medium } => {
            interface_r(q, host.at(point.xi), medium.at(point.xi), point, c)
        }
        MirrorSpec::Dilute {
            number_density,
            atom,
        } => {
            let at = host.at(point.xi);
            let kap = kappa(point, at, c);
            let (eps, mu, a_lead, a_sub) = match q {
                Polarization::P => (at.eps, at.mu, atom.alpha_e(point.xi), atom.alpha_m(point.xi)),
                Polarization::S => (at.mu, at.eps, atom.alpha_m(point.xi), atom.alpha_e(point.xi)),
            };
            let xi2 = point.xi * point.xi;
            let k2c2 = kap * kap * c * c;
            std::f64::consts::PI * number_density / k2c2
                * (a_lead * mu * (2.0 * k2c2 / (eps * mu) - xi2) - a_sub * eps * xi2)
        }
    }
}
