//! Adaptive quadrature on finite and semi-infinite domains, plus the nested
//! (ξ, κ) driver shared by all force integrals.
//!
//! The base rule is the 7-15 Gauss-Kronrod pair with QUADPACK-style error
//! estimation; intervals are bisected worst-first. Semi-infinite domains are
//! mapped onto [0, 1) with x = a + s·t/(1 − t), where s sets the decay scale.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::materials::Medium;
use crate::units::Units;

#[derive(Debug, Error)]
pub enum QuadratureError {
    #[error("integrand returned a non-finite value near x = {x}")]
    NonFinite { x: f64 },
}

/// Tolerances and cutoffs for one integration call.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureConfig {
    /// Relative tolerance on the integral value.
    pub rel_tol: f64,
    /// Absolute tolerance floor, in the integrand's units.
    pub abs_tol: f64,
    /// Ω = xi_cutoff_factor × (largest model resonance frequency); the
    /// effective upper limit of every ξ integration.
    pub xi_cutoff_factor: f64,
    /// Maximum number of interval bisections per 1-D integration.
    pub max_subdivisions: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            rel_tol: 1e-8,
            abs_tol: 0.0,
            xi_cutoff_factor: 1e3,
            max_subdivisions: 200,
        }
    }
}

impl QuadratureConfig {
    /// Tolerances tightened by the given factor (used for inner integrals).
    pub fn tightened(&self, factor: f64) -> Self {
        QuadratureConfig {
            rel_tol: self.rel_tol * factor,
            abs_tol: self.abs_tol * factor,
            ..*self
        }
    }

    fn tolerance_for(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// Value with error estimate and convergence diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl IntegralResult {
    pub fn zero() -> Self {
        IntegralResult {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
            converged: true,
        }
    }
}

// 7-15 Gauss-Kronrod nodes and weights (QUADPACK dqk15).
const XGK: [f64; 8] = [
    0.991_455_371_120_813,
    0.949_107_912_342_759,
    0.864_864_423_359_769,
    0.741_531_185_599_394,
    0.586_087_235_467_691,
    0.405_845_151_377_397,
    0.207_784_955_007_898,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529,
    0.063_092_092_629_979,
    0.104_790_010_322_250,
    0.140_653_259_715_525,
    0.169_004_726_639_267,
    0.190_350_578_064_785,
    0.204_432_940_075_298,
    0.209_482_141_084_728,
];
const WG: [f64; 4] = [
    0.129_484_966_168_870,
    0.279_705_391_489_277,
    0.381_830_050_505_119,
    0.417_959_183_673_469,
];

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// One Gauss-Kronrod 7-15 pass over [a, b].
fn gk15(f: &mut dyn FnMut(f64) -> f64, a: f64, b: f64) -> Result<Segment, QuadratureError> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let fc = f(center);
    let mut resk = WGK[7] * fc;
    let mut resg = WG[3] * fc;
    let mut resabs = WGK[7] * fc.abs();
    let mut samples = [0.0f64; 15];
    samples[7] = fc;

    for j in 0..7 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        samples[j] = f1;
        samples[14 - j] = f2;
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }

    if !resk.is_finite() {
        // Locate an offending node for the diagnostic.
        let x = (0..7)
            .flat_map(|j| [center - half * XGK[j], center + half * XGK[j]])
            .chain(std::iter::once(center))
            .find(|&x| !f(x).is_finite())
            .unwrap_or(center);
        return Err(QuadratureError::NonFinite { x });
    }

    let mean = 0.5 * resk;
    let mut resasc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((samples[j] - mean).abs() + (samples[14 - j] - mean).abs());
    }

    let value = resk * half;
    let resabs = resabs * half.abs();
    let resasc = resasc * half.abs();
    let mut error = ((resk - resg) * half).abs();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * (200.0 * error / resasc).powf(1.5).min(1.0);
    }
    let eps = f64::EPSILON * 50.0;
    if resabs > f64::MIN_POSITIVE / eps {
        error = error.max(eps * resabs);
    }

    Ok(Segment {
        a,
        b,
        value,
        error,
    })
}

/// Adaptive integration of `f` over the finite interval [a, b].
pub fn integrate(
    mut f: impl FnMut(f64) -> f64,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<IntegralResult, QuadratureError> {
    if a == b {
        return Ok(IntegralResult::zero());
    }
    let f = &mut f as &mut dyn FnMut(f64) -> f64;
    let mut evaluations = 15;
    let first = gk15(f, a, b)?;
    let mut total_value = first.value;
    let mut total_error = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(first);

    let mut splits = 0;
    while total_error > cfg.tolerance_for(total_value) && splits < cfg.max_subdivisions {
        let worst = heap.pop().expect("heap never empty while error > 0");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval at floating-point resolution; cannot refine further.
            heap.push(worst);
            break;
        }
        let left = gk15(f, worst.a, mid)?;
        let right = gk15(f, mid, worst.b)?;
        evaluations += 30;
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        splits += 1;
    }

    // Resum for a rounding-robust final answer.
    let segs = heap.into_vec();
    let value: f64 = segs.iter().map(|s| s.value).sum();
    let error_estimate: f64 = segs.iter().map(|s| s.error).sum();
    Ok(IntegralResult {
        value,
        error_estimate,
        evaluations,
        converged: error_estimate <= cfg.tolerance_for(value),
    })
}

/// ∫_a^∞ f(x) dx via the map x = a + s·t/(1 − t), t ∈ [0, 1).
/// `scale` (s) should match the integrand's decay scale.
pub fn integrate_semi_inf_from(
    mut f: impl FnMut(f64) -> f64,
    a: f64,
    scale: f64,
    cfg: &QuadratureConfig,
) -> Result<IntegralResult, QuadratureError> {
    assert!(scale > 0.0, "map scale must be positive");
    integrate(
        |t| {
            let u = 1.0 - t;
            f(a + scale * t / u) * scale / (u * u)
        },
        0.0,
        1.0,
        cfg,
    )
}

/// ∫_0^∞ f(x) dx for integrands decaying exponentially or faster than x⁻²
/// on an O(1) scale.
pub fn integrate_semi_inf(
    f: impl FnMut(f64) -> f64,
    cfg: &QuadratureConfig,
) -> Result<IntegralResult, QuadratureError> {
    integrate_semi_inf_from(f, 0.0, 1.0, cfg)
}

/// Nested (ξ, κ) integral driver:
///
///   ∫₀^Ω dξ ∫_{κ_min(ξ)}^∞ dκ kernel(ξ, κ),   κ_min = n(iξ)·ξ/c,
///
/// the form every force formula takes after the substitution k dk = κ dκ
/// (weights such as κ² belong to the kernel). The inner integral uses the
/// substitution u = 2κd so its exponential scale is O(1); inner tolerances
/// are tightened ×0.1. The tail beyond Ω is estimated with a single mapped
/// Kronrod pass and folded into the error estimate.
pub fn nested_force_integral(
    kernel: impl Fn(f64, f64) -> f64,
    host: &Medium,
    distance: f64,
    omega_cutoff: f64,
    cfg: &QuadratureConfig,
    units: &Units,
) -> Result<IntegralResult, QuadratureError> {
    assert!(distance > 0.0, "separation must be positive");
    assert!(omega_cutoff > 0.0, "xi cutoff must be positive");
    let inner_cfg = cfg.tightened(0.1);
    let inner_scale = 1.0 / (2.0 * distance);

    let mut evaluations = 0usize;
    let mut inner_failure: Option<QuadratureError> = None;
    // Worst absolute error among inner passes that missed their own relative
    // target. Deep in the exponential tail the inner value underflows toward
    // zero and a pure relative test is unmeetable, so non-convergence there
    // only counts if the leftover error is significant for the outer result.
    let mut inner_stray_error = 0.0f64;

    let mut outer_integrand = |xi: f64| -> f64 {
        if inner_failure.is_some() {
            return 0.0;
        }
        let kappa_min = host.at(xi).n() * xi / units.c;
        match integrate_semi_inf_from(|kap| kernel(xi, kap), kappa_min, inner_scale, &inner_cfg) {
            Ok(inner) => {
                evaluations += inner.evaluations;
                if !inner.converged {
                    inner_stray_error = inner_stray_error.max(inner.error_estimate);
                }
                inner.value
            }
            Err(e) => {
                inner_failure = Some(e);
                0.0
            }
        }
    };

    let outer = integrate(&mut outer_integrand, 0.0, omega_cutoff, cfg)?;

    // One Kronrod pass over the mapped tail [Ω, ∞) as a truncation bound.
    let n0 = host.static_at().n();
    let tail_scale = units.c / (2.0 * n0 * distance);
    let tail = gk15(
        &mut |t: f64| {
            let u = 1.0 - t;
            outer_integrand(omega_cutoff + tail_scale * t / u) * tail_scale / (u * u)
        },
        0.0,
        1.0,
    )?;
    if let Some(e) = inner_failure {
        return Err(e);
    }

    let tail_bound = tail.value.abs() + tail.error;
    let value = outer.value;
    let tolerance = cfg.abs_tol.max(cfg.rel_tol * value.abs());
    let budget = 0.1 * tolerance.max(f64::MIN_POSITIVE);
    let inner_ok = inner_stray_error * omega_cutoff <= budget;
    Ok(IntegralResult {
        value,
        error_estimate: outer.error_estimate + tail_bound,
        evaluations: evaluations + outer.evaluations,
        converged: outer.converged && inner_ok && tail_bound <= budget,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn exponential_decay() {
        let r = integrate_semi_inf(|x| (-x).exp(), &cfg()).unwrap();
        assert!(r.converged);
        assert_relative_eq!(r.value, 1.0, max_relative = 1e-10);
        assert!((r.value - 1.0).abs() <= 3.0 * r.error_estimate.max(f64::EPSILON));
    }

    #[test]
    fn planck_kernel() {
        // ∫ x³/(eˣ−1) dx = π⁴/15, the ideal-Casimir kernel shape.
        let exact = std::f64::consts::PI.powi(4) / 15.0;
        let r = integrate_semi_inf(|x| x.powi(3) / x.exp_m1(), &cfg()).unwrap();
        assert!(r.converged);
        assert_relative_eq!(r.value, exact, max_relative = 1e-8);
        assert!((r.value - exact).abs() <= 3.0 * r.error_estimate);
    }

    #[test]
    fn zero_integrand() {
        let r = integrate_semi_inf(|_| 0.0, &cfg()).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.error_estimate, 0.0);
        assert!(r.converged);
    }

    #[test]
    fn nan_is_a_hard_error() {
        let err = integrate(|x| if x > 0.4 { f64::NAN } else { 1.0 }, 0.0, 1.0, &cfg());
        assert!(matches!(err, Err(QuadratureError::NonFinite { .. })));
    }

    #[test]
    fn non_convergence_is_flagged_not_fatal() {
        let tight = QuadratureConfig {
            rel_tol: 1e-14,
            max_subdivisions: 3,
            ..cfg()
        };
        let r = integrate(|x| (10.0 * x).sin() / (x + 1e-3).sqrt(), 0.0, 1.0, &tight).unwrap();
        assert!(!r.converged);
    }

    #[test]
    fn error_estimate_bounds_truth_on_analytic_set() {
        let cases: [(fn(f64) -> f64, f64); 4] = [
            (|x| (-x).exp(), 1.0),
            (|x| x * (-x).exp(), 1.0),
            (|x| x.powi(3) / x.exp_m1(), std::f64::consts::PI.powi(4) / 15.0),
            (
                |x| 1.0 / ((1.0 + x * x) * (1.0 + x * x)),
                std::f64::consts::FRAC_PI_4,
            ),
        ];
        for (f, exact) in cases {
            let r = integrate_semi_inf(f, &cfg()).unwrap();
            assert!(
                (r.value - exact).abs() <= 3.0 * r.error_estimate.max(2.0 * f64::EPSILON * exact),
                "value {} exact {} err {}",
                r.value,
                exact,
                r.error_estimate
            );
        }
    }

    #[test]
    fn halving_tolerance_never_hurts() {
        let cases: [(fn(f64) -> f64, f64); 2] = [
            (|x| x.powi(3) / x.exp_m1(), std::f64::consts::PI.powi(4) / 15.0),
            (|x| (-x).exp() * (3.0 * x).cos(), 0.1),
        ];
        for (f, exact) in cases {
            let mut rel = 1e-4;
            let mut prev_err = f64::INFINITY;
            for _ in 0..6 {
                let c = QuadratureConfig {
                    rel_tol: rel,
                    ..cfg()
                };
                let r = integrate_semi_inf(f, &c).unwrap();
                let err = (r.value - exact).abs();
                assert!(
                    err <= prev_err + 1e-14,
                    "accuracy regressed when tightening rel_tol to {rel}"
                );
                prev_err = err;
                rel *= 0.5;
            }
        }
    }

    #[test]
    fn substitution_direction_agrees() {
        // ∫dk k κ g == ∫dκ κ² g for an e^{-2κd} kernel (vacuum, fixed ξ).
        let c = cfg();
        let xi: f64 = 0.7;
        let d = 1.3;
        let g = |kap: f64| (-2.0 * kap * d).exp();
        let in_kappa =
            integrate_semi_inf_from(|kap| kap * kap * g(kap), xi, 1.0 / (2.0 * d), &c).unwrap();
        let in_k = integrate_semi_inf_from(
            |k| {
                let kap = (xi * xi + k * k).sqrt();
                k * kap * g(kap)
            },
            0.0,
            1.0 / (2.0 * d),
            &c,
        )
        .unwrap();
        assert_relative_eq!(
            in_kappa.value,
            in_k.value,
            max_relative = 1e-8,
            epsilon = in_kappa.error_estimate + in_k.error_estimate
        );
    }

    #[test]
    fn nested_driver_against_fixed_grid_simpson() {
        // kernel = κ² e^(−2κd), vacuum medium, d = 1: oracle by brute force.
        let units = Units::reduced();
        let host = Medium::vacuum();
        let d = 1.0;
        let kernel = |_xi: f64, kap: f64| kap * kap * (-2.0 * kap * d).exp();

        // Fixed-grid Simpson in (xi, kappa) over a generously truncated box.
        let (xi_max, n_xi) = (30.0, 1500);
        let simpson = |f: &dyn Fn(f64) -> f64, a: f64, b: f64, n: usize| {
            let h = (b - a) / n as f64;
            let mut s = f(a) + f(b);
            for i in 1..n {
                s += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
            }
            s * h / 3.0
        };
        let oracle = simpson(
            &|xi: f64| {
                let kmin = xi; // vacuum, c = 1
                simpson(&|kap| kernel(xi, kap), kmin, kmin + 30.0, 1200)
            },
            0.0,
            xi_max,
            n_xi,
        );

        let r = nested_force_integral(kernel, &host, d, 1e3, &cfg(), &units).unwrap();
        assert!(r.converged);
        assert_relative_eq!(r.value, oracle, max_relative = 1e-6);
    }

    #[test]
    fn nested_driver_zero_kernel() {
        let r = nested_force_integral(
            |_, _| 0.0,
            &Medium::vacuum(),
            1.0,
            1e3,
            &cfg(),
            &Units::reduced(),
        )
        .unwrap();
        assert_eq!(r.value, 0.0);
        assert!(r.converged);
    }
}
