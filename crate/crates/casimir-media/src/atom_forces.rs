//! Force on an atom embedded in the host medium at distance d from a
//! mirror: the Minkowski part f_A, the medium part f̃_A, the Lorentz total,
//! and the potential U_A(d).
//!
//! The atom's polarizabilities are the in-medium effective ones; build the
//! model with [`crate::materials::embed_atom`] when starting from vacuum
//! values. Positive force means attraction toward the mirror, and U_A is
//! positive for attractive configurations (U_A(d) = ∫_d^∞ f_A).

use serde::{Deserialize, Serialize};

use crate::layers::{mirror_r, KPoint, MirrorSpec, Polarization};
use crate::materials::{AtomModel, Medium};
use crate::quadrature::{nested_force_integral, IntegralResult, QuadratureConfig, QuadratureError};
use crate::units::Units;

/// Embedded-atom-near-mirror geometry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtomMirrorSystem {
    pub host: Medium,
    /// In-medium effective polarizabilities of the atom.
    pub atom: AtomModel,
    pub mirror: MirrorSpec,
    /// Atom-mirror separation d > 0.
    pub d: f64,
}

impl AtomMirrorSystem {
    pub fn duality_swapped(&self) -> Self {
        AtomMirrorSystem {
            host: self.host.duality_swapped(),
            atom: self.atom.duality_swapped(),
            mirror: self.mirror.duality_swapped(),
            d: self.d,
        }
    }

    fn omega_cutoff(&self, cfg: &QuadratureConfig, units: &Units) -> f64 {
        let scale = [
            self.host.max_frequency_scale(),
            self.atom.max_frequency_scale(),
            self.mirror.max_frequency_scale(),
        ]
        .into_iter()
        .flatten()
        .fold(None::<f64>, |acc, w| Some(acc.map_or(w, |a| a.max(w))))
        .unwrap_or(units.c / self.d);
        cfg.xi_cutoff_factor * scale
    }
}

/// Which form of the medium-force cross term to evaluate. `Corrected` is the
/// published form with the α_e → α_e/ε, α_m → α_m/μ replacements already
/// absorbed; `Uncorrected` undoes them for comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MediumTermVariant {
    #[default]
    Corrected,
    Uncorrected,
}

/// Minkowski, medium and total force on the atom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomForceParts {
    pub minkowski: f64,
    pub medium: f64,
    pub total: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

fn prefactor(units: &Units) -> f64 {
    units.hbar / (std::f64::consts::PI * units.c * units.c)
}

/// The two polarization brackets of the Minkowski integrand, with ξ²
/// multiplied through so the static limit is regular:
///   p: α_e(2κ²c²/ε − μξ²) − α_m ε ξ²,   s: α_m(2κ²c²/μ − εξ²) − α_e μ ξ².
fn brackets(
    atom: &AtomModel,
    eps: f64,
    mu: f64,
    xi: f64,
    kap: f64,
    c: f64,
) -> (f64, f64) {
    let ae = atom.alpha_e(xi);
    let am = atom.alpha_m(xi);
    let xi2 = xi * xi;
    let k2c2 = kap * kap * c * c;
    (
        ae * (2.0 * k2c2 / eps - mu * xi2) - am * eps * xi2,
        am * (2.0 * k2c2 / mu - eps * xi2) - ae * mu * xi2,
    )
}

fn integrate_atom_kernel(
    system: &AtomMirrorSystem,
    cfg: &QuadratureConfig,
    units: &Units,
    exp_weight: impl Fn(f64, f64) -> f64,
    combine: impl Fn(&AtomModel, f64, f64, f64, f64, f64, f64) -> f64,
) -> Result<IntegralResult, QuadratureError> {
    let omega = system.omega_cutoff(cfg, units);
    let c = units.c;
    let pref = prefactor(units);
    nested_force_integral(
        |xi, kap| {
            let at = system.host.at(xi);
            let n = at.n();
            let k2 = (kap * kap - n * n * xi * xi / (c * c)).max(0.0);
            let point = KPoint { xi, k: k2.sqrt() };
            let rp = mirror_r(Polarization::P, &system.host, &system.mirror, point, c);
            let rs = mirror_r(Polarization::S, &system.host, &system.mirror, point, c);
            // Measure: ∫dk k → ∫dκ κ.
            pref * kap
                * exp_weight(kap, system.d)
                * combine(&system.atom, at.eps, at.mu, xi, kap, rp, rs)
        },
        &system.host,
        system.d,
        omega,
        cfg,
        units,
    )
}

fn minkowski_combine(
    atom: &AtomModel,
    eps: f64,
    mu: f64,
    xi: f64,
    kap: f64,
    rp: f64,
    rs: f64,
    c: f64,
) -> f64 {
    let (bp, bs) = brackets(atom, eps, mu, xi, kap, c);
    bp * rp + bs * rs
}

/// Minkowski force f_A(d) on the embedded atom.
pub fn atom_mirror_force(
    system: &AtomMirrorSystem,
    cfg: &QuadratureConfig,
    units: &Units,
) -> Result<IntegralResult, QuadratureError> {
    let c = units.c;
    integrate_atom_kernel(
        system,
        cfg,
        units,
        |kap, d| (-2.0 * kap * d).exp(),
        move |atom, eps, mu, xi, kap, rp, rs| minkowski_combine(atom, eps, mu, xi, kap, rp, rs, c),
    )
}

/// Potential U_A(d) = ∫_d^∞ f_A(l) dl, computed in closed form under the
/// integral sign: the distance integral turns e^(−2κd) into e^(−2κd)/(2κ).
pub fn atom_potential(
    system: &AtomMirrorSystem,
    cfg: &QuadratureConfig,
    units: &Units,
) -> Result<IntegralResult, QuadratureError> {
    let c = units.c;
    integrate_atom_kernel(
        system,
        cfg,
        units,
        |kap, d| (-2.0 * kap * d).exp() / (2.0 * kap),
        move |atom, eps, mu, xi, kap, rp, rs| minkowski_combine(atom, eps, mu, xi, kap, rp, rs, c),
    )
}

/// Medium force f̃_A(d): the atom-induced force on the medium, per atom.
pub fn atom_medium_force_variant(
    system: &AtomMirrorSystem,
    variant: MediumTermVariant,
    cfg: &QuadratureConfig,
    units: &Units,
) -> Result<IntegralResult, QuadratureError> {
    let c = units.c;
    integrate_atom_kernel(
        system,
        cfg,
        units,
        |kap, d| (-2.0 * kap * d).exp(),
        move |atom, eps, mu, xi, kap, rp, rs| {
            let (bp, bs) = brackets(atom, eps, mu, xi, kap, c);
            let xi2 = xi * xi;
            let ae = atom.alpha_e(xi);
            let am = atom.alpha_m(xi);
            let cross = match variant {
                MediumTermVariant::Corrected => ae * mu * rp - am * eps * rs,
                // Undo the α_e → α_e/ε, α_m → α_m/μ replacements.
                MediumTermVariant::Uncorrected => ae * eps * mu * rp - am * mu * eps * rs,
            };
            (1.0 / eps - 1.0) * bp * rp + (mu - 1.0) * bs * rs + (mu - 1.0 / eps) * xi2 * cross
        },
    )
}

/// Medium force f̃_A(d) in its published (corrected) form.
pub fn atom_medium_force(
    system: &AtomMirrorSystem,
    cfg: &QuadratureConfig,
    units: &Units,
) -> Result<IntegralResult, QuadratureError> {
    atom_medium_force_variant(system, MediumTermVariant::Corrected, cfg, units)
}

/// Lorentz decomposition f^(L)_A = f_A + f̃_A.
pub fn lorentz_atom_force(
    system: &AtomMirrorSystem,
    cfg: &QuadratureConfig,
    units: &Units,
) -> Result<AtomForceParts, QuadratureError> {
    let mink = atom_mirror_force(system, cfg, units)?;
    let med = atom_medium_force(system, cfg, units)?;
    Ok(AtomForceParts {
        minkowski: mink.value,
        medium: med.value,
        total: mink.value + med.value,
        error_estimate: mink.error_estimate + med.error_estimate,
        evaluations: mink.evaluations + med.evaluations,
        converged: mink.converged && med.converged,
    })
}
