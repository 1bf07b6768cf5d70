//! Sweep execution: one result row per sweep point, computed in parallel
//! and emitted in sweep order.

use rayon::prelude::*;
use thiserror::Error;

use super::config::{ConfigError, MirrorConfig, RunConfig, Scenario, SweepVariable};
use crate::atom_forces::{atom_potential, lorentz_atom_force, AtomMirrorSystem};
use crate::pairwise::{
    interaction_energy, pair_force, retarded_limit_force, vdw_limit_force, PairSystem,
};
use crate::quadrature::QuadratureError;
use crate::slab_forces::{lorentz_slab_force, SlabSystem};

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("quadrature failure at {variable} = {value}: {source}")]
    Quadrature {
        variable: &'static str,
        value: f64,
        source: QuadratureError,
    },
    #[error("scenario '{0}' does not support sweeping '{1}'")]
    UnsupportedSweep(&'static str, &'static str),
}

/// One sweep point worth of output.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub sweep_value: f64,
    pub values: Vec<f64>,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

/// Ordered rows plus the summary footer data.
#[derive(Debug, Clone)]
pub struct RunOutput {
    /// Name of the sweep variable (first CSV column).
    pub sweep_name: &'static str,
    /// Names of the value columns, fixed per scenario.
    pub columns: Vec<&'static str>,
    pub unit_label: String,
    pub rows: Vec<ResultRow>,
    pub total_evaluations: usize,
    pub worst_error_estimate: f64,
}

fn variable_name(v: SweepVariable) -> &'static str {
    match v {
        SweepVariable::D => "d",
        SweepVariable::R => "r",
        SweepVariable::DS => "d_s",
        SweepVariable::NB => "n_b",
    }
}

fn apply_sweep_slab(
    system: &mut SlabSystem,
    mirror: &MirrorConfig,
    variable: SweepVariable,
    value: f64,
) -> Result<(), RunError> {
    match variable {
        SweepVariable::D => system.d = value,
        SweepVariable::DS => system.d_s = value,
        SweepVariable::NB => match (&mut system.mirror, mirror) {
            (crate::layers::MirrorSpec::Dilute { number_density, .. }, MirrorConfig::Dilute { .. }) => {
                *number_density = value
            }
            _ => return Err(RunError::UnsupportedSweep("slab_force", "n_b")),
        },
        SweepVariable::R => return Err(RunError::UnsupportedSweep("slab_force", "r")),
    }
    Ok(())
}

/// Executes the configured sweep. Rows are computed in parallel and returned
/// in sweep order; non-converged quadrature marks the row rather than
/// failing the run.
pub fn run(config: &RunConfig) -> Result<RunOutput, RunError> {
    let units = config.unit_system.units();
    let cfg = config.quadrature;
    let sweep = config
        .sweep
        .expect("validated configs with force scenarios always carry a sweep");
    let grid = sweep.grid();
    let sweep_name = variable_name(sweep.variable);

    let (columns, rows): (Vec<&'static str>, Result<Vec<ResultRow>, RunError>) =
        match &config.scenario {
            Scenario::SlabForce {
                host,
                slab,
                d_s,
                mirror,
                d,
            } => {
                let base = SlabSystem {
                    host: config.medium("host", host)?,
                    slab: config.medium("slab", slab)?,
                    d_s: *d_s,
                    mirror: config.mirror(mirror)?,
                    d: *d,
                };
                let columns = vec![
                    "minkowski",
                    "medium",
                    "total",
                    "screened",
                    "assisted",
                    "minkowski_p",
                    "minkowski_s",
                    "medium_p",
                    "medium_s",
                ];
                let rows = grid
                    .par_iter()
                    .map(|&value| {
                        let mut system = base.clone();
                        apply_sweep_slab(&mut system, mirror, sweep.variable, value)?;
                        let b = lorentz_slab_force(&system, &cfg, &units).map_err(|source| {
                            RunError::Quadrature {
                                variable: sweep_name,
                                value,
                                source,
                            }
                        })?;
                        Ok(ResultRow {
                            sweep_value: value,
                            values: vec![
                                b.minkowski,
                                b.medium,
                                b.total,
                                b.screened,
                                b.assisted,
                                b.minkowski_by_polarization.p,
                                b.minkowski_by_polarization.s,
                                b.medium_by_polarization.p,
                                b.medium_by_polarization.s,
                            ],
                            error_estimate: b.error_estimate,
                            evaluations: b.evaluations,
                            converged: b.converged,
                        })
                    })
                    .collect();
                (columns, rows)
            }
            Scenario::AtomMirror {
                host,
                atom,
                mirror,
                d,
            } => {
                let base = AtomMirrorSystem {
                    host: config.medium("host", host)?,
                    atom: config.atom("atom", atom)?,
                    mirror: config.mirror(mirror)?,
                    d: *d,
                };
                let columns = vec!["f_atom", "f_medium", "total", "potential"];
                let rows = grid
                    .par_iter()
                    .map(|&value| {
                        let mut system = base.clone();
                        match sweep.variable {
                            SweepVariable::D => system.d = value,
                            SweepVariable::NB => match &mut system.mirror {
                                crate::layers::MirrorSpec::Dilute { number_density, .. } => {
                                    *number_density = value
                                }
                                _ => {
                                    return Err(RunError::UnsupportedSweep("atom_mirror", "n_b"))
                                }
                            },
                            other => {
                                return Err(RunError::UnsupportedSweep(
                                    "atom_mirror",
                                    variable_name(other),
                                ))
                            }
                        }
                        let quad_err = |source| RunError::Quadrature {
                            variable: sweep_name,
                            value,
                            source,
                        };
                        let parts = lorentz_atom_force(&system, &cfg, &units).map_err(quad_err)?;
                        let potential = atom_potential(&system, &cfg, &units).map_err(quad_err)?;
                        Ok(ResultRow {
                            sweep_value: value,
                            values: vec![
                                parts.minkowski,
                                parts.medium,
                                parts.total,
                                potential.value,
                            ],
                            error_estimate: parts.error_estimate + potential.error_estimate,
                            evaluations: parts.evaluations + potential.evaluations,
                            converged: parts.converged && potential.converged,
                        })
                    })
                    .collect();
                (columns, rows)
            }
            Scenario::AtomAtom {
                host,
                atom_a,
                atom_b,
                r,
            } => {
                let base = PairSystem {
                    host: config.medium("host", host)?,
                    atom_a: config.atom("atom_a", atom_a)?,
                    atom_b: config.atom("atom_b", atom_b)?,
                    r: *r,
                };
                let columns = vec!["energy", "force", "vdw_limit", "retarded_limit"];
                let rows = grid
                    .par_iter()
                    .map(|&value| {
                        let mut pair = base.clone();
                        match sweep.variable {
                            SweepVariable::R => pair.r = value,
                            other => {
                                return Err(RunError::UnsupportedSweep(
                                    "atom_atom",
                                    variable_name(other),
                                ))
                            }
                        }
                        let quad_err = |source| RunError::Quadrature {
                            variable: sweep_name,
                            value,
                            source,
                        };
                        let energy = interaction_energy(&pair, &cfg, &units).map_err(quad_err)?;
                        let force = pair_force(&pair, &cfg, &units).map_err(quad_err)?;
                        // The limit columns are informational; a divergent
                        // cross term is reported as NaN rather than an error.
                        let vdw = vdw_limit_force(&pair, &cfg, &units)
                            .map(|r| r.value)
                            .unwrap_or(f64::NAN);
                        let retarded = retarded_limit_force(&pair, &units);
                        Ok(ResultRow {
                            sweep_value: value,
                            values: vec![energy.value, force.value, vdw, retarded],
                            error_estimate: energy.error_estimate + force.error_estimate,
                            evaluations: energy.evaluations + force.evaluations,
                            converged: energy.converged && force.converged,
                        })
                    })
                    .collect();
                (columns, rows)
            }
            Scenario::Validate => {
                // Handled by the binary front end directly.
                (Vec::new(), Ok(Vec::new()))
            }
        };

    let rows = rows?;
    Ok(RunOutput {
        sweep_name,
        columns,
        unit_label: config.unit_system.label(),
        total_evaluations: rows.iter().map(|r| r.evaluations).sum(),
        worst_error_estimate: rows
            .iter()
            .map(|r| r.error_estimate)
            .fold(0.0, f64::max),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::config::{Spacing, Sweep};

    #[test]
    fn slab_sweep_decays_monotonically() {
        let mut config = RunConfig::example();
        config.sweep = Some(Sweep {
            variable: SweepVariable::D,
            start: 0.1,
            stop: 10.0,
            points: 25,
            spacing: Spacing::Log,
        });
        let out = run(&config).unwrap();
        assert_eq!(out.rows.len(), 25);
        let totals: Vec<f64> = out
            .rows
            .iter()
            .map(|r| r.values[out.columns.iter().position(|c| *c == "total").unwrap()])
            .collect();
        for pair in totals.windows(2) {
            assert!(pair[0].abs() > pair[1].abs());
        }
        assert!(out.total_evaluations > 0);
    }

    #[test]
    fn zero_polarizability_atoms_give_zero_columns() {
        let mut config = RunConfig::example();
        config
            .atoms
            .insert("null_atom".to_string(), crate::materials::AtomModel::electric(0.0, 1.0));
        config.scenario = Scenario::AtomAtom {
            host: "vacuum".to_string(),
            atom_a: "null_atom".to_string(),
            atom_b: "null_atom".to_string(),
            r: 1.0,
        };
        config.sweep = Some(Sweep {
            variable: SweepVariable::R,
            start: 0.5,
            stop: 2.0,
            points: 3,
            spacing: Spacing::Linear,
        });
        let out = run(&config).unwrap();
        for row in &out.rows {
            for v in &row.values {
                assert_eq!(*v, 0.0);
            }
        }
    }

    #[test]
    fn unsupported_sweep_variable_is_an_error() {
        let mut config = RunConfig::example();
        config.sweep = Some(Sweep {
            variable: SweepVariable::R,
            start: 0.5,
            stop: 2.0,
            points: 2,
            spacing: Spacing::Linear,
        });
        assert!(matches!(
            run(&config),
            Err(RunError::UnsupportedSweep("slab_force", "r"))
        ));
    }
}
