//! Run configuration: named materials and atoms, a scenario, a sweep and
//! quadrature settings, read from a single JSON file.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::layers::MirrorSpec;
use crate::materials::{AtomModel, Medium};
use crate::quadrature::QuadratureConfig;
use crate::units::Units;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("failed to read config file: {0}")]
    Io(#[from] std::io::Error),
    #[error("config parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("scenario.{field}: unknown {kind} name '{name}' (known: {known})")]
    UnknownName {
        field: &'static str,
        kind: &'static str,
        name: String,
        known: String,
    },
    #[error("{field}: {message}")]
    Invalid {
        field: &'static str,
        message: String,
    },
}

/// Unit system declared by the config; column headers carry it verbatim.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "system", rename_all = "snake_case")]
pub enum UnitSystem {
    /// Gaussian CGS with physical ħ and c.
    Gaussian,
    /// ħ = c = 1; lengths in c/ω_ref, polarizabilities in (c/ω_ref)³.
    Reduced { omega_ref: f64 },
}

impl UnitSystem {
    pub fn units(&self) -> Units {
        match self {
            UnitSystem::Gaussian => Units::gaussian(),
            UnitSystem::Reduced { .. } => Units::reduced(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            UnitSystem::Gaussian => "gaussian_cgs".to_string(),
            UnitSystem::Reduced { omega_ref } => format!("reduced_hbar_c_1_omega_ref_{omega_ref}"),
        }
    }
}

/// Mirror description by reference to the named tables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MirrorConfig {
    Perfect,
    HalfSpace { medium: String },
    Dilute { number_density: f64, atom: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Scenario {
    SlabForce {
        host: String,
        slab: String,
        d_s: f64,
        mirror: MirrorConfig,
        d: f64,
    },
    AtomMirror {
        host: String,
        atom: String,
        mirror: MirrorConfig,
        d: f64,
    },
    AtomAtom {
        host: String,
        atom_a: String,
        atom_b: String,
        r: f64,
    },
    Validate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    D,
    R,
    DS,
    NB,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sweep {
    pub variable: SweepVariable,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl Sweep {
    pub fn grid(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.start];
        }
        (0..self.points)
            .map(|i| {
                let t = i as f64 / (self.points - 1) as f64;
                match self.spacing {
                    Spacing::Linear => self.start + t * (self.stop - self.start),
                    Spacing::Log => {
                        (self.start.ln() + t * (self.stop.ln() - self.start.ln())).exp()
                    }
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub unit_system: UnitSystem,
    #[serde(default)]
    pub materials: BTreeMap<String, Medium>,
    #[serde(default)]
    pub atoms: BTreeMap<String, AtomModel>,
    pub scenario: Scenario,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Sweep>,
    #[serde(default)]
    pub quadrature: QuadratureConfig,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let config: RunConfig = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self, ConfigError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialization cannot fail")
    }

    fn known(names: &BTreeMap<String, impl Sized>) -> String {
        if names.is_empty() {
            "<none>".to_string()
        } else {
            names.keys().cloned().collect::<Vec<_>>().join(", ")
        }
    }

    pub fn medium(&self, field: &'static str, name: &str) -> Result<Medium, ConfigError> {
        self.materials
            .get(name)
            .cloned()
            .ok_or_else(|| ConfigError::UnknownName {
                field,
                kind: "material",
                name: name.to_string(),
                known: Self::known(&self.materials),
            })
    }

    pub fn atom(&self, field: &'static str, name: &str) -> Result<AtomModel, ConfigError> {
        self.atoms
            .get(name)
            .copied()
            .ok_or_else(|| ConfigError::UnknownName {
                field,
                kind: "atom",
                name: name.to_string(),
                known: Self::known(&self.atoms),
            })
    }

    pub fn mirror(&self, mirror: &MirrorConfig) -> Result<MirrorSpec, ConfigError> {
        Ok(match mirror {
            MirrorConfig::Perfect => MirrorSpec::Perfect,
            MirrorConfig::HalfSpace { medium } => MirrorSpec::HalfSpace {
                medium: self.medium("mirror.medium", medium)?,
            },
            MirrorConfig::Dilute {
                number_density,
                atom,
            } => MirrorSpec::Dilute {
                number_density: *number_density,
                atom: self.atom("mirror.atom", atom)?,
            },
        })
    }

    fn validate(&self) -> Result<(), ConfigError> {
        let invalid = |field: &'static str, message: String| ConfigError::Invalid { field, message };
        if self.quadrature.rel_tol <= 0.0 {
            return Err(invalid(
                "quadrature.rel_tol",
                format!("must be positive, got {}", self.quadrature.rel_tol),
            ));
        }
        if self.quadrature.xi_cutoff_factor < 10.0 {
            return Err(invalid(
                "quadrature.xi_cutoff_factor",
                format!("must be at least 10, got {}", self.quadrature.xi_cutoff_factor),
            ));
        }
        if let Some(sweep) = &self.sweep {
            if sweep.points < 1 {
                return Err(invalid("sweep.points", "must be at least 1".into()));
            }
            if sweep.points > 1 && sweep.start >= sweep.stop {
                return Err(invalid(
                    "sweep",
                    format!("start {} must be below stop {}", sweep.start, sweep.stop),
                ));
            }
            if matches!(sweep.spacing, Spacing::Log) && sweep.start <= 0.0 {
                return Err(invalid(
                    "sweep.start",
                    "log spacing requires a positive start".into(),
                ));
            }
        }
        match &self.scenario {
            Scenario::SlabForce {
                host,
                slab,
                d_s,
                mirror,
                d,
            } => {
                self.medium("host", host)?;
                self.medium("slab", slab)?;
                self.mirror(mirror)?;
                if *d <= 0.0 {
                    return Err(invalid("scenario.d", format!("must be positive, got {d}")));
                }
                if *d_s < 0.0 {
                    return Err(invalid(
                        "scenario.d_s",
                        format!("must be nonnegative, got {d_s}"),
                    ));
                }
            }
            Scenario::AtomMirror {
                host,
                atom,
                mirror,
                d,
            } => {
                self.medium("host", host)?;
                self.atom("atom", atom)?;
                self.mirror(mirror)?;
                if *d <= 0.0 {
                    return Err(invalid("scenario.d", format!("must be positive, got {d}")));
                }
            }
            Scenario::AtomAtom {
                host,
                atom_a,
                atom_b,
                r,
            } => {
                self.medium("host", host)?;
                self.atom("atom_a", atom_a)?;
                self.atom("atom_b", atom_b)?;
                if *r <= 0.0 {
                    return Err(invalid("scenario.r", format!("must be positive, got {r}")));
                }
            }
            Scenario::Validate => {}
        }
        if !matches!(self.scenario, Scenario::Validate) && self.sweep.is_none() {
            return Err(invalid("sweep", "required for force scenarios".into()));
        }
        Ok(())
    }

    /// A ready-to-edit example configuration.
    pub fn example() -> Self {
        use crate::materials::OscillatorModel;
        let mut materials = BTreeMap::new();
        materials.insert("vacuum".to_string(), Medium::vacuum());
        materials.insert(
            "weak_magnetodielectric".to_string(),
            Medium {
                permittivity: OscillatorModel::single_resonance(2.0, 1.0),
                permeability: OscillatorModel::single_resonance(1.5, 1.0),
            },
        );
        materials.insert(
            "dielectric_slab".to_string(),
            Medium {
                permittivity: OscillatorModel::single_resonance(4.0, 1.0),
                permeability: OscillatorModel::vacuum(),
            },
        );
        let mut atoms = BTreeMap::new();
        atoms.insert("electric_atom".to_string(), AtomModel::electric(1.0, 1.0));
        RunConfig {
            unit_system: UnitSystem::Reduced { omega_ref: 1.0 },
            materials,
            atoms,
            scenario: Scenario::SlabForce {
                host: "vacuum".to_string(),
                slab: "dielectric_slab".to_string(),
                d_s: 0.5,
                mirror: MirrorConfig::Perfect,
                d: 1.0,
            },
            sweep: Some(Sweep {
                variable: SweepVariable::D,
                start: 0.1,
                stop: 10.0,
                points: 25,
                spacing: Spacing::Log,
            }),
            quadrature: QuadratureConfig::default(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_round_trips() {
        let config = RunConfig::example();
        let text = config.to_json();
        let reparsed = RunConfig::from_json(&text).unwrap();
        assert_eq!(config, reparsed);
    }

    #[test]
    fn unknown_material_is_rejected_with_field() {
        let mut config = RunConfig::example();
        config.scenario = Scenario::SlabForce {
            host: "nope".to_string(),
            slab: "dielectric_slab".to_string(),
            d_s: 0.5,
            mirror: MirrorConfig::Perfect,
            d: 1.0,
        };
        let err = RunConfig::from_json(&config.to_json()).unwrap_err();
        let message = err.to_string();
        assert!(message.contains("host") && message.contains("nope"), "{message}");
    }

    #[test]
    fn nonpositive_distance_is_rejected() {
        let mut config = RunConfig::example();
        if let Scenario::SlabForce { d, .. } = &mut config.scenario {
            *d = -1.0;
        }
        assert!(RunConfig::from_json(&config.to_json()).is_err());
    }

    #[test]
    fn log_sweep_grid_is_geometric() {
        let sweep = Sweep {
            variable: SweepVariable::D,
            start: 0.1,
            stop: 10.0,
            points: 3,
            spacing: Spacing::Log,
        };
        let grid = sweep.grid();
        assert_eq!(grid.len(), 3);
        assert!((grid[1] - 1.0).abs() < 1e-12);
    }
}
