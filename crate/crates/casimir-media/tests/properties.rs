//! Randomized invariant checks for the response models and layer optics.

use casimir_media::layers::{mirror_r, slab_rt, KPoint, MirrorSpec, Polarization};
use casimir_media::materials::{
    dilute_mix, AtomModel, Medium, OscillatorModel, OscillatorTerm,
};
use casimir_media::pairwise::{polynomial_f, polynomial_g};
use proptest::prelude::*;

fn oscillator_strategy() -> impl Strategy<Value = OscillatorModel> {
    let term = (1e-3..10.0f64, 1e-2..10.0f64, 0.0..1.0f64).prop_map(
        |(strength, resonance, damping)| OscillatorTerm {
            strength,
            resonance,
            damping,
        },
    );
    (Just(1.0f64), prop::collection::vec(term, 1..4)).prop_map(|(baseline, terms)| {
        OscillatorModel { baseline, terms }
    })
}

fn medium_strategy() -> impl Strategy<Value = Medium> {
    (oscillator_strategy(), oscillator_strategy()).prop_map(|(permittivity, permeability)| {
        Medium {
            permittivity,
            permeability,
        }
    })
}

proptest! {
    // ε(iξ) and μ(iξ) are real, ≥ baseline, and monotonically decreasing
    // toward the baseline along the imaginary axis.
    #[test]
    fn oscillator_monotone_decreasing(model in oscillator_strategy(), start in 1e-4..1.0f64) {
        let mut prev = f64::INFINITY;
        let mut xi = start;
        for _ in 0..12 {
            let v = model.eval(xi);
            prop_assert!(v.is_finite());
            prop_assert!(v >= model.baseline);
            prop_assert!(v <= prev + 1e-12 * prev.abs());
            prev = v;
            xi *= 4.0;
        }
        // Far above every resonance the response returns to the baseline.
        prop_assert!((model.eval(1e12) - model.baseline).abs() < 1e-6);
    }

    // n(iξ) ≥ 1 for passive media built from positive oscillator sums.
    #[test]
    fn refraction_index_at_least_one(medium in medium_strategy(), xi in 0.0..1e3f64) {
        let n = medium.at(xi).n();
        prop_assert!(n.is_finite());
        prop_assert!(n >= 1.0 - 1e-12);
    }

    // Swapping the atom's electric and magnetic channels together with the
    // host's ε and μ swaps the two mixed responses.
    #[test]
    fn dilute_mix_duality_swap(
        medium in medium_strategy(),
        alpha in 1e-6..1e-2f64,
        omega in 0.1..10.0f64,
        density in 1e-4..1.0f64,
        xi in 0.0..50.0f64,
    ) {
        let atom = AtomModel { alpha_e0: alpha, omega_e: omega, alpha_m0: 0.5 * alpha, omega_m: 2.0 * omega };
        let (eps, mu) = dilute_mix(&medium, density, &atom, xi);
        let (eps_sw, mu_sw) = dilute_mix(&medium.duality_swapped(), density, &atom.duality_swapped(), xi);
        prop_assert!((eps - mu_sw).abs() <= 1e-12 * eps.abs());
        prop_assert!((mu - eps_sw).abs() <= 1e-12 * mu.abs());
    }

    // Reflection off any passive half-space or symmetric slab stays in [−1, 1].
    #[test]
    fn reflection_bounded(
        host in medium_strategy(),
        mirror_medium in medium_strategy(),
        slab in medium_strategy(),
        xi in 0.0..10.0f64,
        kap_off in 1e-3..10.0f64,
        d_s in 1e-3..10.0f64,
    ) {
        let c = 1.0;
        let kap_min = host.at(xi).n() * xi / c;
        let point = KPoint { xi, k: 0.0 };
        // Reconstruct k from the chosen κ so the point is propagating in the host.
        let kappa = kap_min + kap_off;
        let n = host.at(xi).n();
        let k = (kappa * kappa - n * n * xi * xi / (c * c)).max(0.0).sqrt();
        let point = KPoint { k, ..point };
        for &q in &[Polarization::P, Polarization::S] {
            let r = mirror_r(q, &host, &MirrorSpec::HalfSpace { medium: mirror_medium.clone() }, point, c);
            prop_assert!(r.is_finite());
            prop_assert!(r.abs() <= 1.0 + 1e-9, "half-space |r| = {}", r.abs());
            let coeffs = slab_rt(q, host.at(xi), slab.at(xi), d_s, point, c);
            prop_assert!(coeffs.r.is_finite() && coeffs.t.is_finite());
            prop_assert!(coeffs.r.abs() <= 1.0 + 1e-9, "slab |r| = {}", coeffs.r.abs());
            prop_assert!(coeffs.t.abs() <= 1.0 + 1e-9, "slab |t| = {}", coeffs.t.abs());
        }
    }

    // F(x) e^{−x} and G(x) e^{−x} are positive and decreasing for x > 0, and
    // F − F′, G − G′ stay positive, so both closed-form force terms are
    // attractive monotone envelopes.
    #[test]
    fn pair_polynomials_positive_decreasing(x in 1e-3..60.0f64) {
        let f = polynomial_f(x);
        let g = polynomial_g(x);
        prop_assert!(f > 0.0 && g > 0.0);
        let h = 1e-5 * x;
        let df = (polynomial_f(x + h) - polynomial_f(x - h)) / (2.0 * h);
        let dg = (polynomial_g(x + h) - polynomial_g(x - h)) / (2.0 * h);
        // d/dx [P(x) e^{−x}] = (P′ − P) e^{−x} < 0  ⇔  P > P′.
        prop_assert!(f > df);
        prop_assert!(g > dg);
    }
}
