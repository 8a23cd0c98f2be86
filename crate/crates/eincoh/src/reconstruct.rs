//! Inversion of the compactifying coordinate change: turn an integrated
//! trajectory back into the metric profile `(t, f₁, f₂)` and verify the
//! original second-order Einstein equations on it.
//!
//! With `W = √(tr²L + nΛ)` the conservation law gives `Λ = W²(1−H²)/n`,
//! hence on a trajectory `W = √(nΛ/(1−H²))` and
//!
//! ```text
//! f₁ = 1/(YW),   f₂ = √(f₁/(ZW)),   ḟᵢ = XᵢWfᵢ,   dt = dη/W.
//! ```

use crate::dynamics::{PhaseState, TrajectoryRecord};
use crate::thresholds::StructuralTriple;
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum ReconstructError {
    #[error("Einstein constant must be positive, got {0}")]
    BadLambda(f64),
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("H² reached 1 in the interior at eta = {0}; profile undefined there")]
    HSquaredOne(f64),
    #[error("Z vanished in the interior at eta = {0}; f2 undefined there")]
    ZVanishes(f64),
    #[error("no real slice-ratio root: the cone oracle needs delta >= 0")]
    NoRealRoots,
}

/// One metric profile sample.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ProfileSample {
    pub t: f64,
    pub f1: f64,
    pub f2: f64,
    pub f1dot: f64,
    pub f2dot: f64,
}

/// Metric profile on the orbit-space interval `(0, t_*)`.
#[derive(Clone, Debug, Serialize)]
pub struct MetricProfile {
    pub lambda: f64,
    pub samples: Vec<ProfileSample>,
    /// Total interval length, extrapolated to the `f₁ = 0` boundaries.
    pub t_star: f64,
}

/// Quadratic (three-point Lagrange) extrapolation of all profile fields
/// to the abscissa `t`. The Lagrange weights are exact ratios of `t`
/// differences, so the result commutes bitwise with homothety scaling.
fn quad_extrapolate(rows: [&ProfileSample; 3], t: f64) -> ProfileSample {
    let ts = [rows[0].t, rows[1].t, rows[2].t];
    let mut out = ProfileSample {
        t,
        f1: 0.0,
        f2: 0.0,
        f1dot: 0.0,
        f2dot: 0.0,
    };
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let w = ((t - ts[j]) * (t - ts[k])) / ((ts[i] - ts[j]) * (ts[i] - ts[k]));
        out.f1 += w * rows[i].f1;
        out.f2 += w * rows[i].f2;
        out.f1dot += w * rows[i].f1dot;
        out.f2dot += w * rows[i].f2dot;
    }
    out
}

/// Invert the coordinate change on a trajectory.
///
/// `t` is obtained by Hermite quadrature of `dη/W`, then shifted so that
/// `t = 0` is the extrapolation of the initial boundary `f₁ → 0`; `t_star`
/// extrapolates the terminal boundary the same way. The boundary limits
/// themselves (where `Y`, `Z` degenerate together with `W → ∞`) are appended
/// as first and last samples by quadratic fit of the three nearest interior
/// samples.
pub fn reconstruct_profile(
    traj: &TrajectoryRecord,
    triple: &StructuralTriple,
    lambda: f64,
) -> Result<MetricProfile, ReconstructError> {
    if !(lambda > 0.0) {
        return Err(ReconstructError::BadLambda(lambda));
    }
    if traj.samples.len() < 2 {
        return Err(ReconstructError::TooFewSamples {
            needed: 2,
            got: traj.samples.len(),
        });
    }
    let (d1, d2) = (triple.d1 as f64, triple.d2 as f64);
    let n = d1 + d2;
    // 1/W and its η-derivative (for Hermite quadrature of dt = dη/W):
    // with g = 1/W = √((1−H²)/(nΛ)) and H' = (H²−1)(1/n + (d₁d₂/n)(X₁−X₂)²),
    // g' = −H·H'/(nΛg).
    let inv_w_pair = |state: &PhaseState| {
        let h = state.h(triple);
        let g = ((1.0 - h * h) / (n * lambda)).sqrt();
        let dx = state.x1 - state.x2;
        let hprime = (h * h - 1.0) * (1.0 / n + d1 * d2 / n * dx * dx);
        (g, -h * hprime / (n * lambda * g))
    };
    let mut samples = Vec::with_capacity(traj.samples.len());
    let mut t = 0.0;
    let mut prev: Option<(f64, f64, f64)> = None;
    let mut first_failure: Option<ReconstructError> = None;
    for (eta, state) in &traj.samples {
        let h = state.h(triple);
        let one_minus_h2 = 1.0 - h * h;
        // Samples that numerically reach the boundary `H² = 1` or `Z = 0`
        // are endpoint artifacts: skip a bad prefix, truncate a bad tail,
        // and only report an error when no usable interior remains.
        let valid = one_minus_h2 > 0.0 && state.z > 0.0;
        if !valid {
            if first_failure.is_none() {
                first_failure = Some(if one_minus_h2 <= 0.0 {
                    ReconstructError::HSquaredOne(*eta)
                } else {
                    ReconstructError::ZVanishes(*eta)
                });
            }
            if samples.len() >= 2 {
                break;
            }
            samples.clear();
            prev = None;
            continue;
        }
        let (inv_w, inv_w_prime) = inv_w_pair(state);
        let w = 1.0 / inv_w;
        if let Some((eta_prev, g_prev, gp_prev)) = prev {
            let span = eta - eta_prev;
            t += 0.5 * span * (g_prev + inv_w)
                + span * span / 12.0 * (gp_prev - inv_w_prime);
        }
        prev = Some((*eta, inv_w, inv_w_prime));
        let f1 = 1.0 / (state.y * w);
        let f2 = (f1 / (state.z * w)).sqrt();
        samples.push(ProfileSample {
            t,
            f1,
            f2,
            f1dot: state.x1 * w * f1,
            f2dot: state.x2 * w * f2,
        });
    }
    if samples.len() < 2 {
        return Err(first_failure.unwrap_or(ReconstructError::TooFewSamples {
            needed: 2,
            got: samples.len(),
        }));
    }
    // Shift so the extrapolated initial f₁ zero sits at t = 0.
    let first = samples[0];
    let shift = if first.f1dot != 0.0 {
        first.t - first.f1 / first.f1dot
    } else {
        first.t
    };
    for s in &mut samples {
        s.t -= shift;
    }
    let last = *samples.last().unwrap();
    let t_star = if last.f1dot != 0.0 {
        last.t - last.f1 / last.f1dot
    } else {
        last.t
    };
    // Boundary rows by quadratic fit. Near the boundaries W → ∞ compresses
    // the η-grid to nearly coincident t values, so the stencil must enforce a
    // minimum t separation (the nearest sample's boundary distance) to stay
    // well conditioned.
    let m = samples.len();
    if m >= 3 {
        let head = {
            let d0 = samples[0].t.max(t_star * 1e-12);
            let mut idx = [0usize; 3];
            let mut found = 1;
            let mut next_t = samples[0].t + d0;
            for (i, s) in samples.iter().enumerate().skip(1) {
                if s.t >= next_t {
                    idx[found] = i;
                    found += 1;
                    if found == 3 {
                        break;
                    }
                    next_t = s.t + d0;
                }
            }
            (found == 3).then(|| {
                quad_extrapolate([&samples[idx[0]], &samples[idx[1]], &samples[idx[2]]], 0.0)
            })
        };
        let tail = {
            let d0 = (t_star - samples[m - 1].t).max(t_star * 1e-12);
            let mut idx = [m - 1; 3];
            let mut found = 1;
            let mut next_t = samples[m - 1].t - d0;
            for (i, s) in samples.iter().enumerate().rev().skip(1) {
                if s.t <= next_t {
                    idx[found] = i;
                    found += 1;
                    if found == 3 {
                        break;
                    }
                    next_t = s.t - d0;
                }
            }
            (found == 3).then(|| {
                quad_extrapolate(
                    [&samples[idx[2]], &samples[idx[1]], &samples[idx[0]]],
                    t_star,
                )
            })
        };
        if let Some(row) = head {
            samples.insert(0, row);
        }
        if let Some(row) = tail {
            samples.push(row);
        }
    }
    Ok(MetricProfile {
        lambda,
        samples,
        t_star,
    })
}

/// Ricci endomorphism entries of the principal-orbit metric at `(f₁, f₂)`.
fn ricci(triple: &StructuralTriple, f1: f64, f2: f64) -> (f64, f64) {
    let (d1, d2) = (triple.d1 as f64, triple.d2 as f64);
    let a = triple.a.to_f64();
    let r1 = (d1 - 1.0) / (f1 * f1) + a * f1 * f1 / (f2 * f2 * f2 * f2);
    let r2 = (d2 - 1.0) / (f2 * f2) - 2.0 * d1 / d2 * a * f1 * f1 / (f2 * f2 * f2 * f2);
    (r1, r2)
}

/// Second-order derivative of sampled data on a nonuniform grid by the
/// three-point formula applied to the recorded first derivatives.
fn deriv_nonuniform(t: &[f64], g: &[f64], k: usize) -> f64 {
    let hm = t[k] - t[k - 1];
    let hp = t[k + 1] - t[k];
    (g[k + 1] * hm * hm - g[k - 1] * hp * hp + g[k] * (hp * hp - hm * hm))
        / (hm * hp * (hm + hp))
}

/// Maximum relative residual of the two second-order Einstein equations and
/// the first-order constraint over the interior samples of a profile.
///
/// Each second-order residual is normalized by the magnitude of its stiffest
/// term so boundary samples (where the curvature terms individually blow up
/// but cancel) are judged on the achievable relative scale.
pub fn einstein_residual(
    profile: &MetricProfile,
    triple: &StructuralTriple,
) -> Result<f64, ReconstructError> {
    let m = profile.samples.len();
    if m < 5 {
        return Err(ReconstructError::TooFewSamples { needed: 5, got: m });
    }
    let (d1, d2) = (triple.d1 as f64, triple.d2 as f64);
    let n = d1 + d2;
    let lambda = profile.lambda;
    // Decimate to a minimum t spacing: near the boundaries W → ∞ leaves
    // nearly coincident samples, and differencing across them only amplifies
    // integration noise.
    let span = profile.samples[m - 1].t - profile.samples[0].t;
    let min_gap = span * 1e-6;
    let mut keep: Vec<usize> = vec![0];
    for i in 1..m {
        if profile.samples[i].t - profile.samples[*keep.last().unwrap()].t >= min_gap {
            keep.push(i);
        }
    }
    let m = keep.len();
    if m < 5 {
        return Err(ReconstructError::TooFewSamples { needed: 5, got: m });
    }
    let t: Vec<f64> = keep.iter().map(|&i| profile.samples[i].t).collect();
    let f1dot: Vec<f64> = keep.iter().map(|&i| profile.samples[i].f1dot).collect();
    let f2dot: Vec<f64> = keep.iter().map(|&i| profile.samples[i].f2dot).collect();
    let mut worst = 0.0f64;
    // Skip the outermost pair on each side: the first and last rows are
    // extrapolated boundary limits, not integrated data, and differencing
    // across them would only measure the extrapolation bias.
    for k in 2..m - 2 {
        let s = profile.samples[keep[k]];
        let (r1, r2) = ricci(triple, s.f1, s.f2);
        let l1 = s.f1dot / s.f1;
        let l2 = s.f2dot / s.f2;
        let tr = d1 * l1 + d2 * l2;
        let f1dd = deriv_nonuniform(&t, &f1dot, k);
        let f2dd = deriv_nonuniform(&t, &f2dot, k);
        let eq1 = f1dd / s.f1 - l1 * l1 + tr * l1 - r1 + lambda;
        let eq2 = f2dd / s.f2 - l2 * l2 + tr * l2 - r2 + lambda;
        let sc1 = 1.0 + (f1dd / s.f1).abs() + l1 * l1 + (tr * l1).abs() + r1.abs() + lambda;
        let sc2 = 1.0 + (f2dd / s.f2).abs() + l2 * l2 + (tr * l2).abs() + r2.abs() + lambda;
        // First integral: tr(L²) − tr²(L) + d₁r₁ + d₂r₂ − (n−1)Λ = 0.
        let tr_l2 = d1 * l1 * l1 + d2 * l2 * l2;
        let cons = tr_l2 - tr * tr + d1 * r1 + d2 * r2 - (n - 1.0) * lambda;
        let sc3 = 1.0 + tr_l2 + tr * tr + (d1 * r1 + d2 * r2).abs() + (n - 1.0) * lambda;
        worst = worst
            .max((eq1 / sc1).abs())
            .max((eq2 / sc2).abs())
            .max((cons / sc3).abs());
    }
    Ok(worst)
}

/// Closed-form sine-cone profile over the homogeneous Einstein metric with
/// slice ratio `μ₂`: `fᵢ(t) = cᵢ·sin(√(Λ/n)·t)` on `(0, π√(n/Λ))` with
/// `c₂² = n((d₁−1)/μ₂ + Aμ₂)/((n−1)Λ)` and `c₁ = √μ₂·c₂`.
pub fn sine_cone_profile(
    triple: &StructuralTriple,
    lambda: f64,
    count: usize,
) -> Result<MetricProfile, ReconstructError> {
    if !(lambda > 0.0) {
        return Err(ReconstructError::BadLambda(lambda));
    }
    let (d1, d2) = (triple.d1 as f64, triple.d2 as f64);
    let n = d1 + d2;
    let rep = crate::thresholds::discriminant_and_mu(triple);
    let mu2 = rep
        .mu2
        .as_ref()
        .ok_or(ReconstructError::NoRealRoots)?
        .to_f64();
    let a = triple.a.to_f64();
    let omega = (lambda / n).sqrt();
    let c2 = (n * ((d1 - 1.0) / mu2 + a * mu2) / ((n - 1.0) * lambda)).sqrt();
    let c1 = mu2.sqrt() * c2;
    let t_star = std::f64::consts::PI / omega;
    let samples = (1..=count)
        .map(|i| {
            let t = t_star * i as f64 / (count as f64 + 1.0);
            let (sin, cos) = (omega * t).sin_cos();
            ProfileSample {
                t,
                f1: c1 * sin,
                f2: c2 * sin,
                f1dot: c1 * omega * cos,
                f2dot: c2 * omega * cos,
            }
        })
        .collect();
    Ok(MetricProfile {
        lambda,
        samples,
        t_star,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{
        critical_points, gamma_init, integrate, shoot, IntegrationControls, PhaseState,
    };
    use crate::exact::{rat, Rational};

    fn triple(d1: u32, d2: u32, a: Rational) -> StructuralTriple {
        StructuralTriple::new(d1, d2, a).unwrap()
    }

    /// Conservation-exact point of the sine-cone invariant manifold with
    /// `X₁ = X₂ = x`; along it `Y` is constant in `x`.
    fn cone_state(t: &StructuralTriple, x: f64) -> PhaseState {
        let (d1, d2) = (t.d1 as f64, t.d2 as f64);
        let n = d1 + d2;
        let mu2 = critical_points(t).mu2.unwrap();
        let a = t.a.to_f64();
        let kappa = d1 * (d1 - 1.0) + d2 * (d2 - 1.0) * mu2 - d1 * a * mu2 * mu2;
        let y = ((n - 1.0) / (n * kappa)).sqrt();
        PhaseState::new(x, x, y, mu2 * y)
    }

    #[test]
    fn sine_cone_oracle_is_einstein() {
        let t = triple(2, 4, rat(1));
        let profile = sine_cone_profile(&t, 5.0, 2001).unwrap();
        let res = einstein_residual(&profile, &t).unwrap();
        assert!(res < 1e-6, "oracle residual {res:e}");
    }

    #[test]
    fn cone_trajectory_matches_oracle() {
        // Integrate along the invariant cone manifold and compare the
        // reconstructed profile against the closed form, sup-norm 1e−6.
        let t = triple(2, 4, rat(1));
        let n = 6.0;
        let lambda = n - 1.0;
        let start = cone_state(&t, (1.0 - 1e-8) / n);
        let controls = IntegrationControls {
            horizon: 120.0,
            max_step: 0.02,
            ..Default::default()
        };
        let traj = integrate(&start, &t, &controls).unwrap();
        let profile = reconstruct_profile(&traj, &t, lambda).unwrap();
        let mu2 = critical_points(&t).mu2.unwrap();
        let a = 1.0;
        let omega = (lambda / n).sqrt();
        let c2 = (n * ((2.0 - 1.0) / mu2 + a * mu2) / ((n - 1.0) * lambda)).sqrt();
        let c1 = mu2.sqrt() * c2;
        let mut sup = 0.0f64;
        for s in &profile.samples {
            let model1 = c1 * (omega * s.t).sin();
            let model2 = c2 * (omega * s.t).sin();
            sup = sup.max((s.f1 - model1).abs()).max((s.f2 - model2).abs());
        }
        assert!(sup < 1e-6, "sup-norm gap {sup:e}");
        // The total interval length matches the cone period.
        assert!((profile.t_star - std::f64::consts::PI / omega).abs() < 1e-5);
    }

    #[test]
    fn heterocline_profile_is_einstein_with_boundary_conditions() {
        let t = triple(2, 4, rat(1));
        let controls = IntegrationControls {
            max_step: 0.02,
            ..Default::default()
        };
        let res = shoot(&t, &controls).unwrap();
        assert!(res.certified);
        let profile = reconstruct_profile(&res.trajectory, &t, 5.0).unwrap();
        let resid = einstein_residual(&profile, &t).unwrap();
        assert!(resid < 1e-5, "residual {resid:e}");
        let first = profile.samples.first().unwrap();
        let last = profile.samples.last().unwrap();
        assert!(first.f1.abs() < 1e-4 && last.f1.abs() < 1e-4);
        assert!((first.f1dot.abs() - 1.0).abs() < 1e-3);
        assert!((last.f1dot.abs() - 1.0).abs() < 1e-3);
        // Positive on the open interval (the extrapolated boundary rows may
        // round either way around f₁ = 0).
        let m = profile.samples.len();
        assert!(profile.samples[1..m - 1]
            .iter()
            .all(|s| s.f1 > 0.0 && s.f2 > 0.0));
    }

    #[test]
    fn homothety_scaling_is_bitwise() {
        // Λ → 4Λ halves f and t exactly in floating point (all factors are
        // powers of two).
        let t = triple(2, 4, rat(1));
        let start = gamma_init(&t, 1.0, 1e-6).unwrap();
        let traj = integrate(&start, &t, &IntegrationControls::default()).unwrap();
        let p1 = reconstruct_profile(&traj, &t, 5.0).unwrap();
        let p4 = reconstruct_profile(&traj, &t, 20.0).unwrap();
        for (a, b) in p1.samples.iter().zip(&p4.samples) {
            assert_eq!(a.f1 / 2.0, b.f1);
            assert_eq!(a.f2 / 2.0, b.f2);
            assert_eq!(a.t / 2.0, b.t);
            // Velocities are scale-invariant under homothety.
            assert_eq!(a.f1dot, b.f1dot);
            assert_eq!(a.f2dot, b.f2dot);
        }
        assert_eq!(p1.t_star / 2.0, p4.t_star);
    }

    #[test]
    fn round_trip_recovers_states() {
        // Re-apply the coordinate change to the reconstructed profile and
        // compare against the trajectory states.
        let t = triple(2, 4, rat(1));
        let (d1, d2) = (2.0, 4.0);
        let n = 6.0;
        let lambda = 5.0;
        let start = gamma_init(&t, 1.0, 1e-6).unwrap();
        let traj = integrate(&start, &t, &IntegrationControls::default()).unwrap();
        let profile = reconstruct_profile(&traj, &t, lambda).unwrap();
        // Interior rows correspond one-to-one to leading trajectory samples
        // (the boundary rows at index 0 and m−1 are extrapolated).
        let interior = &profile.samples[1..profile.samples.len() - 1];
        for (s, (_, state)) in interior.iter().zip(&traj.samples) {
            let l1 = s.f1dot / s.f1;
            let l2 = s.f2dot / s.f2;
            let tr = d1 * l1 + d2 * l2;
            let w = (tr * tr + n * lambda).sqrt();
            let rebuilt = PhaseState::new(
                l1 / w,
                l2 / w,
                1.0 / (s.f1 * w),
                s.f1 / (s.f2 * s.f2 * w),
            );
            assert!(rebuilt.dist(state) < 1e-8, "round-trip gap at t = {}", s.t);
        }
    }

    #[test]
    fn perturbation_is_detected() {
        let t = triple(2, 4, rat(1));
        let mut profile = sine_cone_profile(&t, 5.0, 801).unwrap();
        for s in &mut profile.samples {
            s.f2 += 1e-3;
        }
        let res = einstein_residual(&profile, &t).unwrap();
        assert!(res > 1e-3, "perturbed residual {res:e} too small");
    }

    #[test]
    fn error_paths() {
        let t = triple(2, 4, rat(1));
        let start = gamma_init(&t, 1.0, 1e-6).unwrap();
        let traj = integrate(&start, &t, &IntegrationControls::default()).unwrap();
        assert!(matches!(
            reconstruct_profile(&traj, &t, 0.0),
            Err(ReconstructError::BadLambda(_))
        ));
        // γ_0 lives in {Z = 0}: f₂ is undefined.
        let z0 = gamma_init(&t, 0.0, 1e-6).unwrap();
        let traj0 = integrate(&z0, &t, &IntegrationControls::default()).unwrap();
        assert!(matches!(
            reconstruct_profile(&traj0, &t, 5.0),
            Err(ReconstructError::ZVanishes(_))
        ));
        let profile = sine_cone_profile(&t, 5.0, 3).unwrap();
        assert!(matches!(
            einstein_residual(&profile, &t),
            Err(ReconstructError::TooFewSamples { .. })
        ));
    }
}
