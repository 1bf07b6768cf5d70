//! Material response on the imaginary-frequency axis.
//!
//! Permittivity and permeability are Lorentz-oscillator sums evaluated at
//! ω = iξ, where they are real, positive and monotonically non-increasing
//! in ξ. Drude behaviour is the ω₀ = 0 special case. Atomic polarizabilities
//! are single-oscillator forms α(iξ) = α₀ / (1 + ξ²/ω²).

use serde::{Deserialize, Serialize};

/// One Lorentz oscillator contribution ω_p² / (ω₀² + γξ + ξ²).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscillatorTerm {
    /// Oscillator strength ω_p² (squared plasma frequency).
    pub strength: f64,
    /// Resonance frequency ω₀; zero gives a Drude term.
    pub resonance: f64,
    /// Damping rate γ ≥ 0.
    #[serde(default)]
    pub damping: f64,
}

/// Oscillator-sum response model for ε(iξ) or μ(iξ).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OscillatorModel {
    /// Value approached as ξ → ∞; 1 for any transparent medium.
    #[serde(default = "one")]
    pub baseline: f64,
    #[serde(default)]
    pub terms: Vec<OscillatorTerm>,
}

fn one() -> f64 {
    1.0
}

impl OscillatorModel {
    /// Vacuum response: identically 1.
    pub fn vacuum() -> Self {
        OscillatorModel {
            baseline: 1.0,
            terms: Vec::new(),
        }
    }

    /// Nondispersive response with the given constant value. Degenerate
    /// model: lacks high-frequency transparency, so full force integrals
    /// depend on the ξ-cutoff. See [`OscillatorModel::is_dispersive`].
    pub fn constant(value: f64) -> Self {
        OscillatorModel {
            baseline: value,
            terms: Vec::new(),
        }
    }

    /// Single undamped oscillator chosen so the static value is `static_value`.
    pub fn single_resonance(static_value: f64, resonance: f64) -> Self {
        OscillatorModel {
            baseline: 1.0,
            terms: vec![OscillatorTerm {
                strength: (static_value - 1.0) * resonance * resonance,
                resonance,
                damping: 0.0,
            }],
        }
    }

    /// Response at imaginary frequency iξ: baseline + Σ ω_p²/(ω₀² + γξ + ξ²).
    pub fn eval(&self, xi: f64) -> f64 {
        assert!(xi >= 0.0, "imaginary frequency must be nonnegative, got {xi}");
        self.baseline
            + self
                .terms
                .iter()
                .map(|t| t.strength / (t.resonance * t.resonance + t.damping * xi + xi * xi))
                .sum::<f64>()
    }

    /// Static value ε(0) (or μ(0)).
    pub fn static_value(&self) -> f64 {
        self.eval(0.0)
    }

    /// True when the model relaxes to its baseline at high frequency.
    /// A constant model with baseline > 1 is not dispersive.
    pub fn is_dispersive(&self) -> bool {
        !self.terms.is_empty() || self.baseline == 1.0
    }

    /// Largest frequency scale among the oscillator terms, used for the
    /// ξ-cutoff Ω. `None` for a term-free (constant) model.
    pub fn max_frequency_scale(&self) -> Option<f64> {
        self.terms
            .iter()
            .map(|t| t.resonance.max(t.strength.sqrt()).max(t.damping))
            .fold(None, |acc, w| Some(acc.map_or(w, |a| a.max(w))))
    }
}

/// Polarizability channel selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Channel {
    Electric,
    Magnetic,
}

/// Two-channel atomic polarizability, single-oscillator in each channel.
///
/// In every force formula of this crate the stored static values are the
/// *in-medium effective* polarizabilities of the atom. For an atom specified
/// by its vacuum polarizability, apply [`embed_atom`] (the Clausius-Mossotti
/// local-field factor) before building a system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AtomModel {
    /// Static electric polarizability α_e0 (a volume).
    #[serde(default)]
    pub alpha_e0: f64,
    /// Electric transition frequency ω_e.
    #[serde(default = "one")]
    pub omega_e: f64,
    /// Static magnetic polarizability α_m0 (a volume).
    #[serde(default)]
    pub alpha_m0: f64,
    /// Magnetic transition frequency ω_m.
    #[serde(default = "one")]
    pub omega_m: f64,
}

impl AtomModel {
    /// Purely electric atom.
    pub fn electric(alpha_e0: f64, omega_e: f64) -> Self {
        AtomModel {
            alpha_e0,
            omega_e,
            alpha_m0: 0.0,
            omega_m: 1.0,
        }
    }

    /// Purely magnetic atom.
    pub fn magnetic(alpha_m0: f64, omega_m: f64) -> Self {
        AtomModel {
            alpha_e0: 0.0,
            omega_e: 1.0,
            alpha_m0,
            omega_m,
        }
    }

    /// α(iξ) = α₀ / (1 + ξ²/ω²) for the requested channel.
    pub fn polarizability(&self, channel: Channel, xi: f64) -> f64 {
        assert!(xi >= 0.0, "imaginary frequency must be nonnegative, got {xi}");
        let (alpha0, omega) = match channel {
            Channel::Electric => (self.alpha_e0, self.omega_e),
            Channel::Magnetic => (self.alpha_m0, self.omega_m),
        };
        if alpha0 == 0.0 {
            return 0.0;
        }
        alpha0 / (1.0 + (xi / omega) * (xi / omega))
    }

    pub fn alpha_e(&self, xi: f64) -> f64 {
        self.polarizability(Channel::Electric, xi)
    }

    pub fn alpha_m(&self, xi: f64) -> f64 {
        self.polarizability(Channel::Magnetic, xi)
    }

    /// Atom with electric and magnetic channels exchanged (duality partner).
    pub fn duality_swapped(&self) -> Self {
        AtomModel {
            alpha_e0: self.alpha_m0,
            omega_e: self.omega_m,
            alpha_m0: self.alpha_e0,
            omega_m: self.omega_e,
        }
    }

    /// Largest finite transition frequency among the active channels.
    pub fn max_frequency_scale(&self) -> Option<f64> {
        let mut best = None;
        for (alpha0, omega) in [(self.alpha_e0, self.omega_e), (self.alpha_m0, self.omega_m)] {
            if alpha0 != 0.0 && omega.is_finite() {
                best = Some(best.map_or(omega, |b: f64| b.max(omega)));
            }
        }
        best
    }
}

/// Magnetodielectric medium: permittivity and permeability models.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Medium {
    pub permittivity: OscillatorModel,
    pub permeability: OscillatorModel,
}

/// Medium response evaluated at one imaginary frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MediumAt {
    pub eps: f64,
    pub mu: f64,
}

impl MediumAt {
    pub const VACUUM: MediumAt = MediumAt { eps: 1.0, mu: 1.0 };

    /// Refraction index n = √(εμ).
    pub fn n(&self) -> f64 {
        (self.eps * self.mu).sqrt()
    }

    /// ε ↔ μ exchanged.
    pub fn duality_swapped(&self) -> Self {
        MediumAt {
            eps: self.mu,
            mu: self.eps,
        }
    }
}

impl Medium {
    pub fn vacuum() -> Self {
        Medium {
            permittivity: OscillatorModel::vacuum(),
            permeability: OscillatorModel::vacuum(),
        }
    }

    /// (ε, μ) at imaginary frequency iξ.
    pub fn at(&self, xi: f64) -> MediumAt {
        MediumAt {
            eps: self.permittivity.eval(xi),
            mu: self.permeability.eval(xi),
        }
    }

    /// Static (ξ = 0) response.
    pub fn static_at(&self) -> MediumAt {
        self.at(0.0)
    }

    /// Medium with ε and μ models exchanged (duality partner).
    pub fn duality_swapped(&self) -> Self {
        Medium {
            permittivity: self.permeability.clone(),
            permeability: self.permittivity.clone(),
        }
    }

    pub fn is_vacuum(&self) -> bool {
        self.permittivity.baseline == 1.0
            && self.permittivity.terms.is_empty()
            && self.permeability.baseline == 1.0
            && self.permeability.terms.is_empty()
    }

    pub fn max_frequency_scale(&self) -> Option<f64> {
        match (
            self.permittivity.max_frequency_scale(),
            self.permeability.max_frequency_scale(),
        ) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        }
    }
}

/// Local-field (Clausius-Mossotti) enhancement of a vacuum polarizability:
/// α = α₀ ((x + 2)/3)², x the host response (ε for the electric channel,
/// μ for the magnetic one). Leading order in N·α₀.
pub fn effective_polarizability(atom_vacuum_alpha: f64, host_response: f64) -> f64 {
    let factor = (host_response + 2.0) / 3.0;
    atom_vacuum_alpha * factor * factor
}

/// Static in-medium effective atom: Clausius-Mossotti factors applied to
/// both channels at the host's static response.
pub fn embed_atom(atom_vacuum: &AtomModel, host: &Medium) -> AtomModel {
    let at0 = host.static_at();
    AtomModel {
        alpha_e0: effective_polarizability(atom_vacuum.alpha_e0, at0.eps),
        alpha_m0: effective_polarizability(atom_vacuum.alpha_m0, at0.mu),
        ..*atom_vacuum
    }
}

/// Dilute-mixture response (ε_s, μ_s) at iξ:
/// ε_s = ε + 4πN α_e^eff, μ_s = μ + 4πN α_m^eff, with the effective
/// polarizabilities built from the atom's vacuum values and the host
/// response at the same frequency. Valid to first order in N·α.
pub fn dilute_mix(host: &Medium, number_density: f64, atom: &AtomModel, xi: f64) -> (f64, f64) {
    let at = host.at(xi);
    let ae = effective_polarizability(atom.alpha_e(xi), at.eps);
    let am = effective_polarizability(atom.alpha_m(xi), at.mu);
    let four_pi_n = 4.0 * std::f64::consts::PI * number_density;
    (at.eps + four_pi_n * ae, at.mu + four_pi_n * am)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn vacuum_model_is_one_everywhere() {
        let m = OscillatorModel::vacuum();
        for xi in [0.0, 1e-3, 1.0, 1e6] {
            assert_eq!(m.eval(xi), 1.0);
        }
    }

    #[test]
    fn single_term_static_and_transparent_limits() {
        let m = OscillatorModel {
            baseline: 1.0,
            terms: vec![OscillatorTerm {
                strength: 1.0,
                resonance: 1.0,
                damping: 0.0,
            }],
        };
        assert_eq!(m.eval(0.0), 2.0);
        assert_relative_eq!(m.eval(1e6), 1.0 + 1e-12, max_relative = 1e-6);
    }

    #[test]
    #[should_panic(expected = "nonnegative")]
    fn negative_xi_is_a_domain_error() {
        OscillatorModel::vacuum().eval(-1.0);
    }

    #[test]
    fn polarizability_static_and_halfwidth() {
        let a = AtomModel::electric(3.0, 2.0);
        assert_eq!(a.alpha_e(0.0), 3.0);
        assert_eq!(a.alpha_e(2.0), 1.5);
        assert_eq!(a.alpha_m(5.0), 0.0);
    }

    #[test]
    fn effective_polarizability_examples() {
        assert_eq!(effective_polarizability(2.0, 1.0), 2.0);
        assert_eq!(effective_polarizability(2.0, 4.0), 8.0);
        assert_eq!(effective_polarizability(0.0, 7.0), 0.0);
    }

    #[test]
    fn dilute_mix_vacuum_host_static() {
        let host = Medium::vacuum();
        let atom = AtomModel::electric(1.0, 1.0);
        let n = 1e-3;
        let (eps, mu) = dilute_mix(&host, n, &atom, 0.0);
        assert_relative_eq!(eps, 1.0 + 4.0 * std::f64::consts::PI * n * 1.0);
        assert_eq!(mu, 1.0);
    }

    #[test]
    fn dilute_mix_zero_density_returns_host() {
        let host = Medium {
            permittivity: OscillatorModel::single_resonance(2.0, 1.0),
            permeability: OscillatorModel::single_resonance(1.5, 1.0),
        };
        let atom = AtomModel::electric(1.0, 1.0);
        let at = host.at(0.3);
        let (eps, mu) = dilute_mix(&host, 0.0, &atom, 0.3);
        assert_eq!((eps, mu), (at.eps, at.mu));
    }

    #[test]
    fn dilute_mix_channel_symmetry() {
        // Purely magnetic atom in vacuum: only mu shifts.
        let host = Medium::vacuum();
        let atom = AtomModel::magnetic(0.5, 1.0);
        let (eps, mu) = dilute_mix(&host, 1e-3, &atom, 0.0);
        assert_eq!(eps, 1.0);
        assert_relative_eq!(mu, 1.0 + 4.0 * std::f64::consts::PI * 1e-3 * 0.5);
        // Swapping channels on host and atom swaps the outputs.
        let host2 = Medium {
            permittivity: OscillatorModel::single_resonance(1.5, 1.0),
            permeability: OscillatorModel::single_resonance(2.0, 1.0),
        };
        let atom2 = AtomModel {
            alpha_e0: 0.7,
            omega_e: 2.0,
            alpha_m0: 0.2,
            omega_m: 3.0,
        };
        let (e1, m1) = dilute_mix(&host2, 1e-4, &atom2, 0.4);
        let (e2, m2) = dilute_mix(&host2.duality_swapped(), 1e-4, &atom2.duality_swapped(), 0.4);
        assert_eq!((e1, m1), (m2, e2));
    }

    #[test]
    fn refraction_index_at_least_one() {
        let host = Medium {
            permittivity: OscillatorModel::single_resonance(3.0, 2.0),
            permeability: OscillatorModel::single_resonance(1.2, 0.7),
        };
        let mut prev = f64::INFINITY;
        for i in 0..40 {
            let xi = 1e-3 * 1.6f64.powi(i);
            let n = host.at(xi).n();
            assert!(n >= 1.0);
            assert!(n <= prev + 1e-15);
            prev = n;
        }
    }
}
