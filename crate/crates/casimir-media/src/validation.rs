//! Built-in validation suite: analytic limits and internal-consistency
//! oracles, each with a pinned tolerance. Run from the CLI with the
//! `validate` subcommand; the acceptance integration tests assert every
//! criterion here.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::atom_forces::{
    atom_medium_force, atom_mirror_force, atom_potential, AtomMirrorSystem,
};
use crate::layers::MirrorSpec;
use crate::materials::{AtomModel, Medium, OscillatorModel};
use crate::pairwise::{
    mirror_consistency_check, pair_force, retarded_limit_force, vdw_limit_force, PairSystem,
};
use crate::quadrature::{integrate_semi_inf, QuadratureConfig};
use crate::slab_forces::{ideal_casimir_force, medium_slab_force, minkowski_slab_force, SlabSystem};
use crate::units::Units;

/// Outcome of a single validation criterion.
#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn outcome(name: &'static str, passed: bool, detail: String) -> CriterionOutcome {
    CriterionOutcome {
        name,
        passed,
        detail,
    }
}

fn rel_err(value: f64, reference: f64) -> f64 {
    (value - reference).abs() / reference.abs()
}

/// Runs the full suite in reduced units. Failures are reported, not fatal.
pub fn run_suite(cfg: &QuadratureConfig) -> Vec<CriterionOutcome> {
    let units = Units::reduced();
    vec![
        ideal_casimir(cfg, &units),
        casimir_polder(cfg, &units),
        feinberg_sucher_asymptote(cfg, &units),
        london_limit(cfg, &units),
        dilute_mirror_oracle(cfg, &units),
        medium_nulls(cfg, &units),
        duality_suite(cfg, &units),
        medium_scaling(cfg, &units),
        quadrature_contract(cfg),
        limit_stitching(cfg, &units),
    ]
}

/// 1. Perfect-reflectivity limit: f·d⁴/(ħc) = π²/240 across two decades.
fn ideal_casimir(cfg: &QuadratureConfig, units: &Units) -> CriterionOutcome {
    let exact = PI * PI / 240.0;
    let mut worst = 0.0f64;
    for i in 0..9 {
        let d = 0.1 * 10f64.powf(i as f64 / 4.0);
        match ideal_casimir_force(d, cfg, units) {
            Ok(f) => worst = worst.max(rel_err(f.value * d.powi(4), exact)),
            Err(e) => return outcome("ideal Casimir limit", false, format!("error: {e}")),
        }
    }
    outcome(
        "ideal Casimir limit",
        worst <= 1e-4,
        format!("worst relative error {worst:.2e} vs pi^2/240 (tol 1e-4)"),
    )
}

/// 2. Retarded Casimir-Polder coefficients for an electric atom in vacuum.
fn casimir_polder(cfg: &QuadratureConfig, units: &Units) -> CriterionOutcome {
    let d = 50.0;
    let system = AtomMirrorSystem {
        host: Medium::vacuum(),
        atom: AtomModel::electric(1.0, 1.0),
        mirror: MirrorSpec::Perfect,
        d,
    };
    let (f, u) = match (
        atom_mirror_force(&system, cfg, units),
        atom_potential(&system, cfg, units),
    ) {
        (Ok(f), Ok(u)) => (f, u),
        (Err(e), _) | (_, Err(e)) => {
            return outcome("Casimir-Polder limit", false, format!("error: {e}"))
        }
    };
    let err_f = rel_err(f.value * d.powi(5), 3.0 / (2.0 * PI));
    let err_u = rel_err(u.value * d.powi(4), 3.0 / (8.0 * PI));
    outcome(
        "Casimir-Polder limit",
        err_f <= 1e-2 && err_u <= 1e-2,
        format!("force error {err_f:.2e}, potential error {err_u:.2e} (tol 1e-2)"),
    )
}

/// 3. Retarded atom-atom asymptote: f·r⁸/(ħc α_A0 α_B0) = 161/(4π).
fn feinberg_sucher_asymptote(cfg: &QuadratureConfig, units: &Units) -> CriterionOutcome {
    let r = 100.0;
    let pair = PairSystem {
        host: Medium::vacuum(),
        atom_a: AtomModel::electric(1.0, 1.0),
        atom_b: AtomModel::electric(1.0, 1.0),
        r,
    };
    match pair_force(&pair, cfg, units) {
        Ok(f) => {
            let err = rel_err(f.value * r.powi(8), 161.0 / (4.0 * PI));
            outcome(
                "Feinberg-Sucher asymptote",
                err <= 1e-2,
                format!("relative error {err:.2e} vs 161/(4pi) (tol 1e-2)"),
            )
        }
        Err(e) => outcome("Feinberg-Sucher asymptote", false, format!("error: {e}")),
    }
}

/// 4. London limit: full force at r = 10⁻² c/ω vs the analytic
/// single-oscillator value, and the non-retarded formula at 10⁻⁶.
fn london_limit(cfg: &QuadratureConfig, units: &Units) -> CriterionOutcome {
    let r = 1e-2;
    let pair = PairSystem {
        host: Medium::vacuum(),
        atom_a: AtomModel::electric(1.0, 1.0),
        atom_b: AtomModel::electric(1.0, 1.0),
        r,
    };
    let analytic = 9.0 * units.hbar * 1.0 * 1.0 * (1.0 * 1.0 / (1.0 + 1.0)) / r.powi(7);
    let full = match pair_force(&pair, cfg, units) {
        Ok(f) => f,
        Err(e) => return outcome("London limit", false, format!("error: {e}")),
    };
    let vdw = match vdw_limit_force(&pair, cfg, units) {
        Ok(f) => f,
        Err(e) => return outcome("London limit", false, format!("error: {e}")),
    };
    let err_full = rel_err(full.value, analytic);
    let err_vdw = rel_err(vdw.value, analytic);
    outcome(
        "London limit",
        err_full <= 1e-2 && err_vdw <= 1e-6,
        format!("full-force error {err_full:.2e} (tol 1e-2), 1-D formula error {err_vdw:.2e} (tol 1e-6)"),
    )
}

/// 5. Dilute-mirror oracle: atom-mirror force vs half-space integral of the
/// pairwise energy, vacuum and magnetodielectric hosts.
fn dilute_mirror_oracle(cfg: &QuadratureConfig, units: &Units) -> CriterionOutcome {
    let atom = AtomModel::electric(1.0, 1.0);
    let n_b = 1e-4;
    let d = 1.0;
    let vacuum = match mirror_consistency_check(
        &Medium::vacuum(),
        &atom,
        &atom,
        n_b,
        d,
        cfg,
        units,
    ) {
        Ok(r) => r,
        Err(e) => return outcome("dilute-mirror oracle", false, format!("error: {e}")),
    };
    let host = Medium {
        permittivity: OscillatorModel::single_resonance(2.0, 1.0),
        permeability: OscillatorModel::single_resonance(1.5, 1.0),
    };
    let medium = match mirror_consistency_check(&host, &atom, &atom, n_b, d, cfg, units) {
        Ok(r) => r,
        Err(e) => return outcome("dilute-mirror oracle", false, format!("error: {e}")),
    };
    let gap_vac = vacuum.relative_gap.unwrap_or(f64::NAN);
    let gap_med = medium.relative_gap.unwrap_or(f64::NAN);
    outcome(
        "dilute-mirror oracle",
        gap_vac < 1e-3 && gap_med < 1e-2,
        format!("relative gap {gap_vac:.2e} vacuum (tol 1e-3), {gap_med:.2e} magnetodielectric (tol 1e-2)"),
    )
}

/// 6. Medium force nulls and non-nulls.
fn medium_nulls(cfg: &QuadratureConfig, units: &Units) -> CriterionOutcome {
    let dielectric_slab = Medium {
        permittivity: OscillatorModel::single_resonance(4.0, 1.0),
        permeability: OscillatorModel::vacuum(),
    };
    let vacuum_slab_system = SlabSystem {
        host: Medium::vacuum(),
        slab: dielectric_slab,
        d_s: 0.5,
        mirror: MirrorSpec::Perfect,
        d: 1.0,
    };
    let host = Medium {
        permittivity: OscillatorModel::single_resonance(2.0, 1.0),
        permeability: OscillatorModel::single_resonance(1.5, 1.0),
    };
    let no_slab_system = SlabSystem {
        host: host.clone(),
        slab: host.clone(),
        d_s: 0.5,
        mirror: MirrorSpec::Perfect,
        d: 1.0,
    };
    let atom_system = AtomMirrorSystem {
        host: Medium::vacuum(),
        atom: AtomModel::electric(1.0, 1.0),
        mirror: MirrorSpec::Perfect,
        d: 1.0,
    };
    let (f_slab_vac, f_no_slab, f_atom_vac) = match (
        medium_slab_force(&vacuum_slab_system, cfg, units),
        medium_slab_force(&no_slab_system, cfg, units),
        atom_medium_force(&atom_system, cfg, units),
    ) {
        (Ok(a), Ok(b), Ok(c)) => (a, b, c),
        _ => return outcome("medium nulls", false, "quadrature error".into()),
    };
    let pass = f_slab_vac.value.abs() < 1e-12
        && f_atom_vac.value.abs() < 1e-12
        && f_no_slab.value.abs() > 1e-6;
    outcome(
        "medium nulls",
        pass,
        format!(
            "vacuum host: slab {:.1e}, atom {:.1e} (tol 1e-12); no-slab medium force {:.3e} (must be nonzero)",
            f_slab_vac.value, f_atom_vac.value, f_no_slab.value
        ),
    )
}

fn random_oscillator(rng: &mut impl Rng, max_static: f64) -> OscillatorModel {
    OscillatorModel::single_resonance(
        1.0 + rng.gen_range(0.1..max_static),
        rng.gen_range(0.5..2.0),
    )
}

/// 7. Duality suite: f and f_A invariant under the electric-magnetic swap;
/// f̃_A not invariant at an ε ≠ μ point.
fn duality_suite(cfg: &QuadratureConfig, units: &Units) -> CriterionOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4361_7369_6d69_7221);
    let mut worst_gap = 0.0f64;
    for _ in 0..5 {
        let host = Medium {
            permittivity: random_oscillator(&mut rng, 1.5),
            permeability: random_oscillator(&mut rng, 0.8),
        };
        let slab = Medium {
            permittivity: random_oscillator(&mut rng, 4.0),
            permeability: random_oscillator(&mut rng, 1.0),
        };
        let mirror = MirrorSpec::HalfSpace {
            medium: Medium {
                permittivity: random_oscillator(&mut rng, 6.0),
                permeability: random_oscillator(&mut rng, 1.2),
            },
        };
        let atom = AtomModel {
            alpha_e0: rng.gen_range(0.1..1.0),
            omega_e: rng.gen_range(0.5..2.0),
            alpha_m0: rng.gen_range(0.1..1.0),
            omega_m: rng.gen_range(0.5..2.0),
        };
        let d = rng.gen_range(0.5..2.0);

        let slab_system = SlabSystem {
            host: host.clone(),
            slab,
            d_s: rng.gen_range(0.2..1.0),
            mirror: mirror.clone(),
            d,
        };
        let atom_system = AtomMirrorSystem {
            host,
            atom,
            mirror,
            d,
        };
        let results = (
            minkowski_slab_force(&slab_system, cfg, units),
            minkowski_slab_force(&slab_system.duality_swapped(), cfg, units),
            atom_mirror_force(&atom_system, cfg, units),
            atom_mirror_force(&atom_system.duality_swapped(), cfg, units),
        );
        let (f, f_sw, fa, fa_sw) = match results {
            (Ok(a), Ok(b), Ok(c), Ok(d)) => (a, b, c, d),
            _ => return outcome("duality suite", false, "quadrature error".into()),
        };
        let tol_f = 2.0 * (f.error_estimate + f_sw.error_estimate)
            + 4.0 * f64::EPSILON * f.value.abs();
        let tol_fa = 2.0 * (fa.error_estimate + fa_sw.error_estimate)
            + 4.0 * f64::EPSILON * fa.value.abs();
        if (f.value - f_sw.value).abs() > tol_f || (fa.value - fa_sw.value).abs() > tol_fa {
            return outcome(
                "duality suite",
                false,
                format!(
                    "invariance violated: slab {} vs {}, atom {} vs {}",
                    f.value, f_sw.value, fa.value, fa_sw.value
                ),
            );
        }
        worst_gap = worst_gap
            .max((f.value - f_sw.value).abs() / f.value.abs())
            .max((fa.value - fa_sw.value).abs() / fa.value.abs());
    }

    // Non-invariance of the medium force at an eps != mu point.
    let host = Medium {
        permittivity: OscillatorModel::single_resonance(2.0, 1.0),
        permeability: OscillatorModel::single_resonance(1.5, 1.0),
    };
    let system = AtomMirrorSystem {
        host,
        atom: AtomModel {
            alpha_e0: 0.8,
            omega_e: 1.2,
            alpha_m0: 0.3,
            omega_m: 0.9,
        },
        mirror: MirrorSpec::HalfSpace {
            medium: Medium {
                permittivity: OscillatorModel::single_resonance(6.0, 2.0),
                permeability: OscillatorModel::single_resonance(1.3, 2.0),
            },
        },
        d: 1.0,
    };
    let (fm, fm_sw) = match (
        atom_medium_force(&system, cfg, units),
        atom_medium_force(&system.duality_swapped(), cfg, units),
    ) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return outcome("duality suite", false, "quadrature error".into()),
    };
    let breaking = (fm.value - fm_sw.value).abs();
    let pass = breaking > 10.0 * (fm.error_estimate + fm_sw.error_estimate);
    outcome(
        "duality suite",
        pass,
        format!(
            "f, f_A invariant at 5 random points (worst gap {worst_gap:.2e}); medium-force breaking {breaking:.3e}"
        ),
    )
}

/// 8. Algebraic medium-scaling claims for the limit formulas.
fn medium_scaling(cfg: &QuadratureConfig, units: &Units) -> CriterionOutcome {
    let cross_pair = |host: Medium, r: f64| PairSystem {
        host,
        atom_a: AtomModel::electric(0.7, 1.0),
        atom_b: AtomModel::magnetic(0.4, 1.0),
        r,
    };
    let host = Medium {
        permittivity: OscillatorModel::constant(2.0),
        permeability: OscillatorModel::constant(1.5),
    };
    let n0 = host.static_at().n();
    let ret_vac = retarded_limit_force(&cross_pair(Medium::vacuum(), 5.0), units);
    let ret_med = retarded_limit_force(&cross_pair(host, 5.0), units);
    let scaling_err = rel_err(ret_med, ret_vac / n0.powi(3));

    let weak_host = Medium {
        permittivity: OscillatorModel::single_resonance(1.05, 1.0),
        permeability: OscillatorModel::vacuum(),
    };
    let (vdw_vac, vdw_med) = match (
        vdw_limit_force(&cross_pair(Medium::vacuum(), 0.01), cfg, units),
        vdw_limit_force(&cross_pair(weak_host, 0.01), cfg, units),
    ) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return outcome("medium scaling", false, "quadrature error".into()),
    };
    let bit_identical = vdw_vac.value.to_bits() == vdw_med.value.to_bits();
    outcome(
        "medium scaling",
        scaling_err < 4.0 * f64::EPSILON && bit_identical,
        format!(
            "retarded cross term n0^-3 scaling error {scaling_err:.2e}; non-retarded cross term bit-identical: {bit_identical}"
        ),
    )
}

/// 9. Quadrature contract on the analytic test set.
fn quadrature_contract(cfg: &QuadratureConfig) -> CriterionOutcome {
    let planck = match integrate_semi_inf(|x| x.powi(3) / x.exp_m1(), cfg) {
        Ok(r) => r,
        Err(e) => return outcome("quadrature contract", false, format!("error: {e}")),
    };
    let exact = PI.powi(4) / 15.0;
    let planck_err = rel_err(planck.value, exact);
    let mut bounded = (planck.value - exact).abs() <= 3.0 * planck.error_estimate;

    let cases: [(fn(f64) -> f64, f64); 3] = [
        (|x| (-x).exp(), 1.0),
        (|x| x * (-x).exp(), 1.0),
        (
            |x| 1.0 / ((1.0 + x * x) * (1.0 + x * x)),
            std::f64::consts::FRAC_PI_4,
        ),
    ];
    for (f, reference) in cases {
        match integrate_semi_inf(f, cfg) {
            Ok(r) => {
                bounded &= (r.value - reference).abs()
                    <= 3.0 * r.error_estimate.max(2.0 * f64::EPSILON * reference)
            }
            Err(e) => return outcome("quadrature contract", false, format!("error: {e}")),
        }
    }
    outcome(
        "quadrature contract",
        planck_err <= cfg.rel_tol * 3.0 && bounded,
        format!("pi^4/15 relative error {planck_err:.2e} at rel_tol {:.0e}; error estimates bound truth within 3x: {bounded}", cfg.rel_tol),
    )
}

/// 10. The full pair force stitches onto both limit formulas.
fn limit_stitching(cfg: &QuadratureConfig, units: &Units) -> CriterionOutcome {
    let pair_at = |r: f64| PairSystem {
        host: Medium::vacuum(),
        atom_a: AtomModel {
            alpha_e0: 0.8,
            omega_e: 1.5,
            alpha_m0: 0.2,
            omega_m: 0.7,
        },
        atom_b: AtomModel::electric(1.0, 1.0),
        r,
    };
    // omega_max = 1.5, omega_min = 0.7 among the atomic resonances.
    let r_small = 1e-2 / 1.5;
    let r_large = 1e2 / 0.7;
    let small = pair_at(r_small);
    let large = pair_at(r_large);
    let (f_small, vdw, f_large) = match (
        pair_force(&small, cfg, units),
        vdw_limit_force(&small, cfg, units),
        pair_force(&large, cfg, units),
    ) {
        (Ok(a), Ok(b), Ok(c)) => (a, b, c),
        _ => return outcome("limit stitching", false, "quadrature error".into()),
    };
    let ret = retarded_limit_force(&large, units);
    let err_small = rel_err(f_small.value, vdw.value);
    let err_large = rel_err(f_large.value, ret);
    outcome(
        "limit stitching",
        err_small <= 1e-2 && err_large <= 1e-2,
        format!("non-retarded match {err_small:.2e}, retarded match {err_large:.2e} (tol 1e-2)"),
    )
}
