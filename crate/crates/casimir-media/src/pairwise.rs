//! Atom-atom interaction in a magnetodielectric host: the full
//! imaginary-frequency energy U_AB(r), its force f_AB = −dU_AB/dr, the
//! non-retarded (van der Waals-London) and retarded limits, and the
//! dilute-mirror consistency oracle linking this module to the atom-mirror
//! force.
//!
//! Atom polarizabilities are the in-medium effective ones, consistent with
//! the atom-mirror module; see [`crate::materials::embed_atom`]. Sign
//! convention: U_AB > 0 and f_AB > 0 for a net attractive interaction.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::atom_forces::{atom_mirror_force, AtomMirrorSystem};
use crate::layers::MirrorSpec;
use crate::materials::{AtomModel, Medium};
use crate::quadrature::{
    integrate_semi_inf_from, IntegralResult, QuadratureConfig, QuadratureError,
};
use crate::units::Units;

#[derive(Debug, Error)]
pub enum PairwiseError {
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error("cross-term integral ∫ξ²α_eα_m dξ diverges for nondispersive polarizabilities")]
    DivergentCrossTerm,
}

/// Two atoms embedded in a common host medium.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairSystem {
    pub host: Medium,
    pub atom_a: AtomModel,
    pub atom_b: AtomModel,
    /// Separation r = |r_B − r_A| > 0.
    pub r: f64,
}

impl PairSystem {
    pub fn duality_swapped(&self) -> Self {
        PairSystem {
            host: self.host.duality_swapped(),
            atom_a: self.atom_a.duality_swapped(),
            atom_b: self.atom_b.duality_swapped(),
            r: self.r,
        }
    }

    pub fn atoms_exchanged(&self) -> Self {
        PairSystem {
            host: self.host.clone(),
            atom_a: self.atom_b,
            atom_b: self.atom_a,
            r: self.r,
        }
    }

    fn max_atom_frequency(&self) -> f64 {
        [
            self.atom_a.max_frequency_scale(),
            self.atom_b.max_frequency_scale(),
            self.host.max_frequency_scale(),
        ]
        .into_iter()
        .flatten()
        .fold(1.0, f64::max)
    }
}

/// Retardation polynomial F(x) = x⁴ + 4x³ + 20x² + 48x + 48.
pub fn polynomial_f(x: f64) -> f64 {
    (((x + 4.0) * x + 20.0) * x + 48.0) * x + 48.0
}

/// Retardation polynomial G(x) = (x + 2)².
pub fn polynomial_g(x: f64) -> f64 {
    (x + 2.0) * (x + 2.0)
}

fn polynomial_f_prime(x: f64) -> f64 {
    ((4.0 * x + 12.0) * x + 40.0) * x + 48.0
}

fn polynomial_g_prime(x: f64) -> f64 {
    2.0 * (x + 2.0)
}

/// Same-type polarizability product α^A_eα^B_e/ε² + α^A_mα^B_m/μ².
fn same_type_product(pair: &PairSystem, xi: f64) -> f64 {
    let at = pair.host.at(xi);
    pair.atom_a.alpha_e(xi) * pair.atom_b.alpha_e(xi) / (at.eps * at.eps)
        + pair.atom_a.alpha_m(xi) * pair.atom_b.alpha_m(xi) / (at.mu * at.mu)
}

/// Cross-type product α^A_eα^B_m + α^A_mα^B_e; independent of the host.
fn cross_type_product(pair: &PairSystem, xi: f64) -> f64 {
    pair.atom_a.alpha_e(xi) * pair.atom_b.alpha_m(xi)
        + pair.atom_a.alpha_m(xi) * pair.atom_b.alpha_e(xi)
}

fn map_scale(pair: &PairSystem, units: &Units) -> f64 {
    // Exponential scale of e^(−2nξr/c) in ξ.
    units.c / (2.0 * pair.host.static_at().n() * pair.r)
}

/// Full interaction energy U_AB(r) (Feinberg-Sucher form extended to media).
pub fn interaction_energy(
    pair: &PairSystem,
    cfg: &QuadratureConfig,
    units: &Units,
) -> Result<IntegralResult, QuadratureError> {
    assert!(pair.r > 0.0, "separation must be positive");
    let r = pair.r;
    let c = units.c;
    let pi = std::f64::consts::PI;
    let pref_same = units.hbar / (16.0 * pi * r.powi(6));
    let pref_cross = units.hbar / (4.0 * pi * c * c * r.powi(4));
    integrate_semi_inf_from(
        |xi| {
            let n = pair.host.at(xi).n();
            let x = 2.0 * n * xi * r / c;
            let e = (-x).exp();
            pref_same * e * polynomial_f(x) * same_type_product(pair, xi)
                - pref_cross * xi * xi * e * polynomial_g(x) * cross_type_product(pair, xi)
        },
        0.0,
        map_scale(pair, units),
        cfg,
    )
}

/// Force f_AB(r) = −dU_AB/dr, with the r-derivative taken analytically
/// inside the ξ integral.
pub fn pair_force(
    pair: &PairSystem,
    cfg: &QuadratureConfig,
    units: &Units,
) -> Result<IntegralResult, QuadratureError> {
    assert!(pair.r > 0.0, "separation must be positive");
    let r = pair.r;
    let c = units.c;
    let pi = std::f64::consts::PI;
    let pref_same = units.hbar / (16.0 * pi * r.powi(6));
    let pref_cross = units.hbar / (4.0 * pi * c * c * r.powi(4));
    integrate_semi_inf_from(
        |xi| {
            let n = pair.host.at(xi).n();
            let a = 2.0 * n * xi / c; // dx/dr for x = 2nξr/c
            let x = a * r;
            let e = (-x).exp();
            // −d/dr [r⁻⁶ e⁻ˣ F(x)] = r⁻⁶ e⁻ˣ [6F/r + a(F − F′)]
            let same = pref_same
                * e
                * (6.0 * polynomial_f(x) / r + a * (polynomial_f(x) - polynomial_f_prime(x)))
                * same_type_product(pair, xi);
            // +d/dr of the cross term, with its leading minus sign folded in:
            // −(−d/dr)[−r⁻⁴ e⁻ˣ G(x) ...] = −r⁻⁴ e⁻ˣ [4G/r + a(G − G′)] ...
            let cross = pref_cross
                * e
                * (4.0 * polynomial_g(x) / r + a * (polynomial_g(x) - polynomial_g_prime(x)))
                * xi
                * xi
                * cross_type_product(pair, xi);
            same - cross
        },
        0.0,
        map_scale(pair, units),
        cfg,
    )
}

/// Non-retarded (van der Waals-London) limit of the force.
pub fn vdw_limit_force(
    pair: &PairSystem,
    cfg: &QuadratureConfig,
    units: &Units,
) -> Result<IntegralResult, PairwiseError> {
    assert!(pair.r > 0.0, "separation must be positive");
    let has_cross = pair.atom_a.alpha_e0 * pair.atom_b.alpha_m0 != 0.0
        || pair.atom_a.alpha_m0 * pair.atom_b.alpha_e0 != 0.0;
    if has_cross {
        // ∫ξ²α_eα_m dξ needs both factors to decay.
        let dispersive = |a: &AtomModel, b: &AtomModel| {
            (a.alpha_e0 == 0.0 || a.omega_e.is_finite()) && (b.alpha_m0 == 0.0 || b.omega_m.is_finite())
        };
        if !dispersive(&pair.atom_a, &pair.atom_b) || !dispersive(&pair.atom_b, &pair.atom_a) {
            return Err(PairwiseError::DivergentCrossTerm);
        }
    }
    let pi = std::f64::consts::PI;
    let scale = pair.max_atom_frequency();
    let same = integrate_semi_inf_from(|xi| same_type_product(pair, xi), 0.0, scale, cfg)?;
    let cross = if has_cross {
        integrate_semi_inf_from(|xi| xi * xi * cross_type_product(pair, xi), 0.0, scale, cfg)?
    } else {
        IntegralResult::zero()
    };
    let r = pair.r;
    let f_same = 18.0 * units.hbar / (pi * r.powi(7));
    let f_cross = 4.0 * units.hbar / (pi * units.c * units.c * r.powi(5));
    Ok(IntegralResult {
        value: f_same * same.value - f_cross * cross.value,
        error_estimate: f_same * same.error_estimate + f_cross * cross.error_estimate,
        evaluations: same.evaluations + cross.evaluations,
        converged: same.converged && cross.converged,
    })
}

/// Retarded limit of the force: all response functions at their static
/// values, pure algebra (no quadrature).
pub fn retarded_limit_force(pair: &PairSystem, units: &Units) -> f64 {
    let at0 = pair.host.static_at();
    let n0 = at0.n();
    let same = 23.0
        * (pair.atom_a.alpha_e0 * pair.atom_b.alpha_e0 * at0.mu * at0.mu
            + pair.atom_a.alpha_m0 * pair.atom_b.alpha_m0 * at0.eps * at0.eps);
    let cross = 7.0
        * (pair.atom_a.alpha_e0 * pair.atom_b.alpha_m0
            + pair.atom_a.alpha_m0 * pair.atom_b.alpha_e0)
        * at0.eps
        * at0.mu;
    7.0 * units.hbar * units.c / (4.0 * std::f64::consts::PI * n0.powi(5) * pair.r.powi(8))
        * (same - cross)
}

/// Both sides of the dilute-mirror identity and their relative gap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConsistencyReport {
    /// Atom-mirror force with the dilute mirror (Minkowski part).
    pub atom_mirror: f64,
    /// 2πN_B ∫_d^∞ r·U_AB(r) dr from the pairwise energy.
    pub pair_integral: f64,
    /// |lhs − rhs| / max(|lhs|, |rhs|); `None` when both sides vanish.
    pub relative_gap: Option<f64>,
    pub converged: bool,
    pub evaluations: usize,
}

/// Cross-validates the atom-mirror force against the half-space volume
/// integral of the pairwise energy, at first order in N_B. Both routes use
/// the same in-medium effective polarizabilities.
pub fn mirror_consistency_check(
    host: &Medium,
    atom_a: &AtomModel,
    atom_b: &AtomModel,
    number_density: f64,
    d: f64,
    cfg: &QuadratureConfig,
    units: &Units,
) -> Result<ConsistencyReport, QuadratureError> {
    let system = AtomMirrorSystem {
        host: host.clone(),
        atom: *atom_a,
        mirror: MirrorSpec::Dilute {
            number_density,
            atom: *atom_b,
        },
        d,
    };
    let lhs = atom_mirror_force(&system, cfg, units)?;

    let inner_cfg = cfg.tightened(0.1);
    let mut evaluations = lhs.evaluations;
    let mut inner_converged = true;
    let mut failure: Option<QuadratureError> = None;
    let rhs = integrate_semi_inf_from(
        |r| {
            if failure.is_some() || r == 0.0 {
                return 0.0;
            }
            let pair = PairSystem {
                host: host.clone(),
                atom_a: *atom_a,
                atom_b: *atom_b,
                r,
            };
            match interaction_energy(&pair, &inner_cfg, units) {
                Ok(u) => {
                    evaluations += u.evaluations;
                    inner_converged &= u.converged;
                    r * u.value
                }
                Err(e) => {
                    failure = Some(e);
                    0.0
                }
            }
        },
        d,
        d,
        cfg,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    let rhs_value = 2.0 * std::f64::consts::PI * number_density * rhs.value;

    let scale = lhs.value.abs().max(rhs_value.abs());
    Ok(ConsistencyReport {
        atom_mirror: lhs.value,
        pair_integral: rhs_value,
        relative_gap: (scale > 0.0).then(|| (lhs.value - rhs_value).abs() / scale),
        converged: lhs.converged && rhs.converged && inner_converged,
        evaluations: evaluations + rhs.evaluations,
    })
}
