//! Zero-temperature force per unit area on a slab near a mirror, split into
//! the Minkowski part f(d), the medium part f̃(d) and their sum.
//!
//! Sign convention: positive values mean attraction (slab pulled toward the
//! mirror). The "screened" and "assisted" fields expose the alternative
//! regrouping in which the Minkowski integrand is rescaled by 1/ε (TM) and
//! μ (TE); the decomposition is reported as data, with f read as the force
//! on the slab and f̃ as the force on the intervening medium.

use serde::{Deserialize, Serialize};

use crate::layers::{mirror_r, slab_rt, KPoint, MirrorSpec, Polarization};
use crate::materials::Medium;
use crate::quadrature::{nested_force_integral, IntegralResult, QuadratureConfig, QuadratureError};
use crate::units::Units;

/// Slab-near-mirror geometry of the planar cavity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlabSystem {
    /// Cavity medium filling the gap (and bounding the slab on both sides).
    pub host: Medium,
    /// Slab material.
    pub slab: Medium,
    /// Slab thickness d_s ≥ 0.
    pub d_s: f64,
    pub mirror: MirrorSpec,
    /// Slab-mirror separation d > 0.
    pub d: f64,
}

impl SlabSystem {
    /// System with all electric and magnetic quantities exchanged.
    pub fn duality_swapped(&self) -> Self {
        SlabSystem {
            host: self.host.duality_swapped(),
            slab: self.slab.duality_swapped(),
            mirror: self.mirror.duality_swapped(),
            ..self.clone()
        }
    }

    fn omega_cutoff(&self, cfg: &QuadratureConfig, units: &Units) -> f64 {
        let scale = [
            self.host.max_frequency_scale(),
            self.slab.max_frequency_scale(),
            self.mirror.max_frequency_scale(),
        ]
        .into_iter()
        .flatten()
        .fold(None::<f64>, |acc, w| Some(acc.map_or(w, |a| a.max(w))))
        // Pure-vacuum models carry no frequency scale; the cavity width
        // itself then bounds the relevant ξ range.
        .unwrap_or(units.c / self.d);
        cfg.xi_cutoff_factor * scale
    }
}

/// Per-polarization split of one force contribution.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PolarizationSplit {
    pub p: f64,
    pub s: f64,
}

impl PolarizationSplit {
    pub fn total(&self) -> f64 {
        self.p + self.s
    }
}

/// Full decomposition of the force on the slab at one distance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ForceBreakdown {
    /// Traditional (Minkowski) force f(d).
    pub minkowski: f64,
    /// Medium force f̃(d).
    pub medium: f64,
    /// Lorentz total f^(L) = f + f̃.
    pub total: f64,
    /// Minkowski plus the screening line of f̃ (TM scaled by 1/ε, TE by μ).
    pub screened: f64,
    /// Remaining medium-assisted term; screened + assisted = total.
    pub assisted: f64,
    pub minkowski_by_polarization: PolarizationSplit,
    pub medium_by_polarization: PolarizationSplit,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

/// Round-trip factor x/(1 − x) with x = r R e^(−2κd), the regularized form
/// of [(r R e^(−2κd))^(−1) − 1]^(−1).
fn round_trip(r: f64, big_r: f64, exp2kd: f64) -> f64 {
    let x = r * big_r * exp2kd;
    x / (1.0 - x)
}

struct SlabKernelPoint {
    #[cfg_attr(not(test), allow(dead_code))]
    eps: f64,
    mu: f64,
    n2: f64,
    /// κ²·x_q/(1−x_q) per polarization: the Minkowski integrand.
    minkowski: PolarizationSplit,
    /// Screening line of f̃ per polarization.
    screening: PolarizationSplit,
    /// Assisted line of f̃ per polarization (Δ_q sign folded in).
    assisted: PolarizationSplit,
}

fn eval_point(system: &SlabSystem, units: &Units, xi: f64, kap: f64) -> SlabKernelPoint {
    let host_at = system.host.at(xi);
    let slab_at = system.slab.at(xi);
    let n = host_at.n();
    let c = units.c;
    // Recover k from the integration variable κ; clamp tiny negative
    // round-off at the κ = nξ/c lower edge.
    let k2 = (kap * kap - n * n * xi * xi / (c * c)).max(0.0);
    let point = KPoint {
        xi,
        k: k2.sqrt(),
    };
    let exp2kd = (-2.0 * kap * system.d).exp();

    let mut minkowski = PolarizationSplit::default();
    let mut screening = PolarizationSplit::default();
    let mut assisted = PolarizationSplit::default();
    for q in Polarization::BOTH {
        let sc = slab_rt(q, host_at, slab_at, system.d_s, point, c);
        let big_r = mirror_r(q, &system.host, &system.mirror, point, c);
        let mink = kap * kap * round_trip(sc.r, big_r, exp2kd);
        // Assisted bracket: [(1+r)² − t²]·y/(1 − r·y), y = R e^(−2κd).
        let y = big_r * exp2kd;
        let bracket = ((1.0 + sc.r) * (1.0 + sc.r) - sc.t * sc.t) * y / (1.0 - sc.r * y);
        match q {
            Polarization::P => {
                minkowski.p = mink;
                screening.p = (1.0 / host_at.eps - 1.0) * mink;
                assisted.p = bracket; // Δ_p = +1
            }
            Polarization::S => {
                minkowski.s = mink;
                screening.s = (host_at.mu - 1.0) * mink;
                assisted.s = -bracket; // Δ_s = −1
            }
        }
    }
    SlabKernelPoint {
        eps: host_at.eps,
        mu: host_at.mu,
        n2: n * n,
        minkowski,
        screening,
        assisted,
    }
}

fn integrate_slab_kernel(
    system: &SlabSystem,
    cfg: &QuadratureConfig,
    units: &Units,
    select: impl Fn(&SlabKernelPoint, f64, f64) -> f64,
) -> Result<IntegralResult, QuadratureError> {
    let omega = system.omega_cutoff(cfg, units);
    nested_force_integral(
        |xi, kap| select(&eval_point(system, units, xi, kap), xi, kap),
        &system.host,
        system.d,
        omega,
        cfg,
        units,
    )
}

fn minkowski_prefactor(units: &Units) -> f64 {
    units.hbar / (2.0 * std::f64::consts::PI * std::f64::consts::PI)
}

/// Assisted-line prefactor, including the ξ²μ(n²−1)/c² weight applied
/// pointwise inside the kernel.
fn assisted_prefactor(units: &Units) -> f64 {
    units.hbar / (8.0 * std::f64::consts::PI * std::f64::consts::PI * units.c * units.c)
}

/// Minkowski force f(d) per unit area, Lifshitz form over both polarizations.
pub fn minkowski_slab_force(
    system: &SlabSystem,
    cfg: &QuadratureConfig,
    units: &Units,
) -> Result<IntegralResult, QuadratureError> {
    let mut r = integrate_slab_kernel(system, cfg, units, |pt, _, _| pt.minkowski.total())?;
    let pref = minkowski_prefactor(units);
    r.value *= pref;
    r.error_estimate *= pref;
    Ok(r)
}

/// Medium force f̃(d) per unit area: screening line plus assisted line.
pub fn medium_slab_force(
    system: &SlabSystem,
    cfg: &QuadratureConfig,
    units: &Units,
) -> Result<IntegralResult, QuadratureError> {
    let mink_pref = minkowski_prefactor(units);
    let asst_pref = assisted_prefactor(units);
    integrate_slab_kernel(system, cfg, units, move |pt, xi, _| {
        let weight = xi * xi * pt.mu * (pt.n2 - 1.0);
        mink_pref * pt.screening.total() + asst_pref * weight * pt.assisted.total()
    })
}

/// Ideal Casimir limit: the Minkowski integrand with the round-trip
/// product r^q R^q forced to 1 in vacuum. Equals π²ħc/(240 d⁴).
pub fn ideal_casimir_force(
    d: f64,
    cfg: &QuadratureConfig,
    units: &Units,
) -> Result<IntegralResult, QuadratureError> {
    let host = Medium::vacuum();
    let omega = cfg.xi_cutoff_factor * units.c / d;
    let mut r = nested_force_integral(
        |_xi, kap| {
            let x = (-2.0 * kap * d).exp();
            2.0 * kap * kap * x / (1.0 - x)
        },
        &host,
        d,
        omega,
        cfg,
        units,
    )?;
    let pref = minkowski_prefactor(units);
    r.value *= pref;
    r.error_estimate *= pref;
    Ok(r)
}

/// Full force breakdown at one distance: Minkowski, medium, Lorentz total,
/// screened/assisted regrouping and per-polarization parts.
pub fn lorentz_slab_force(
    system: &SlabSystem,
    cfg: &QuadratureConfig,
    units: &Units,
) -> Result<ForceBreakdown, QuadratureError> {
    let mink_pref = minkowski_prefactor(units);
    let asst_pref = assisted_prefactor(units);

    let mut parts = [IntegralResult::zero(); 6];
    let selectors: [Box<dyn Fn(&SlabKernelPoint, f64) -> f64>; 6] = [
        Box::new(move |pt, _| mink_pref * pt.minkowski.p),
        Box::new(move |pt, _| mink_pref * pt.minkowski.s),
        Box::new(move |pt, _| mink_pref * pt.screening.p),
        Box::new(move |pt, _| mink_pref * pt.screening.s),
        Box::new(move |pt, xi| asst_pref * xi * xi * pt.mu * (pt.n2 - 1.0) * pt.assisted.p),
        Box::new(move |pt, xi| asst_pref * xi * xi * pt.mu * (pt.n2 - 1.0) * pt.assisted.s),
    ];
    for (slot, select) in parts.iter_mut().zip(selectors.iter()) {
        *slot = integrate_slab_kernel(system, cfg, units, |pt, xi, _| select(pt, xi))?;
    }
    let [mink_p, mink_s, screen_p, screen_s, asst_p, asst_s] = parts;

    let minkowski = mink_p.value + mink_s.value;
    let medium = screen_p.value + screen_s.value + asst_p.value + asst_s.value;
    let screened = minkowski + screen_p.value + screen_s.value;
    let assisted = asst_p.value + asst_s.value;
    Ok(ForceBreakdown {
        minkowski,
        medium,
        total: minkowski + medium,
        screened,
        assisted,
        minkowski_by_polarization: PolarizationSplit {
            p: mink_p.value,
            s: mink_s.value,
        },
        medium_by_polarization: PolarizationSplit {
            p: screen_p.value + asst_p.value,
            s: screen_s.value + asst_s.value,
        },
        error_estimate: parts.iter().map(|r| r.error_estimate).sum(),
        evaluations: parts.iter().map(|r| r.evaluations).sum(),
        converged: parts.iter().all(|r| r.converged),
    })
}
