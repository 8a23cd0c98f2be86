//! Numerical layer: integrate the compactified cohomogeneity one Einstein
//! system, count windings around the sine-cone orbit, shoot for heteroclines
//! joining the endpoint critical points `p₀±`, and run the angular limit
//! initial value problem used to certify a second metric.
//!
//! The phase space is `(X₁, X₂, Y, Z)` with
//!
//! ```text
//! Xᵢ' = XᵢH(G + (1−H²)/n − 1) + Rᵢ − (1−H²)/n
//! Y'  = Y(H(G + (1−H²)/n) − X₁)
//! Z'  = Z(H(G + (1−H²)/n) + X₁ − 2X₂)
//! ```
//!
//! where `H = d₁X₁ + d₂X₂`, `G = d₁X₁² + d₂X₂²`, `R₁ = (d₁−1)Y² + AZ²` and
//! `R₂ = (d₂−1)YZ − (2d₁/d₂)AZ²`. The conservation surface
//! `(G − H² + d₁R₁ + d₂R₂)/(n−1) = (1−H²)/n` is a first integral and its
//! residual is the drift monitored by the integrator.

use crate::thresholds::StructuralTriple;
use serde::Serialize;
use std::f64::consts::PI;

/// Errors from the numerical layer.
#[derive(Debug, thiserror::Error)]
pub enum DynamicsError {
    #[error("initial offset eps must be positive, got {0}")]
    BadEps(f64),
    #[error("conservation drift {max_drift:e} exceeded tolerance {tol:e} at eta = {eta}")]
    DriftExceeded { max_drift: f64, tol: f64, eta: f64 },
    #[error("step count exceeded {0} before reaching the horizon")]
    StepLimit(usize),
    #[error("no sign change of the shooting objective for s up to {0}")]
    NoSignChange(f64),
    #[error("shooting refused: A = 0 admits the product metric directly")]
    ProductTriple,
    #[error("trajectory left the invariant set before the objective was defined (s = {0})")]
    ObjectiveUndefined(f64),
    #[error("angular slope undefined: radicand {0} is negative (focus condition fails)")]
    NegativeRadicand(f64),
    #[error("discriminant is negative: no real slice-ratio roots")]
    NoRealRoots,
    #[error("theta did not stabilize before eta = {0}")]
    NoStabilization(f64),
}

/// A point of the compactified phase space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PhaseState {
    pub x1: f64,
    pub x2: f64,
    pub y: f64,
    pub z: f64,
}

impl PhaseState {
    pub fn new(x1: f64, x2: f64, y: f64, z: f64) -> Self {
        PhaseState { x1, x2, y, z }
    }

    pub fn h(&self, triple: &StructuralTriple) -> f64 {
        triple.d1 as f64 * self.x1 + triple.d2 as f64 * self.x2
    }

    pub fn g(&self, triple: &StructuralTriple) -> f64 {
        triple.d1 as f64 * self.x1 * self.x1 + triple.d2 as f64 * self.x2 * self.x2
    }

    pub fn r1(&self, triple: &StructuralTriple) -> f64 {
        let a = triple.a.to_f64();
        (triple.d1 as f64 - 1.0) * self.y * self.y + a * self.z * self.z
    }

    pub fn r2(&self, triple: &StructuralTriple) -> f64 {
        let (d1, d2) = (triple.d1 as f64, triple.d2 as f64);
        let a = triple.a.to_f64();
        (d2 - 1.0) * self.y * self.z - (2.0 * d1 / d2) * a * self.z * self.z
    }

    /// Residual of the conservation surface; zero on exact solutions.
    pub fn conservation_residual(&self, triple: &StructuralTriple) -> f64 {
        let (d1, d2) = (triple.d1 as f64, triple.d2 as f64);
        let n = d1 + d2;
        let h = self.h(triple);
        (self.g(triple) - h * h + d1 * self.r1(triple) + d2 * self.r2(triple)) / (n - 1.0)
            - (1.0 - h * h) / n
    }

    pub fn dist(&self, other: &PhaseState) -> f64 {
        let dx1 = self.x1 - other.x1;
        let dx2 = self.x2 - other.x2;
        let dy = self.y - other.y;
        let dz = self.z - other.z;
        (dx1 * dx1 + dx2 * dx2 + dy * dy + dz * dz).sqrt()
    }

    fn add_scaled(&self, k: &PhaseState, c: f64) -> PhaseState {
        PhaseState::new(
            self.x1 + c * k.x1,
            self.x2 + c * k.x2,
            self.y + c * k.y,
            self.z + c * k.z,
        )
    }
}

/// Right-hand side of the compactified system.
pub fn vector_field(state: &PhaseState, triple: &StructuralTriple) -> PhaseState {
    let (d1, d2) = (triple.d1 as f64, triple.d2 as f64);
    let n = d1 + d2;
    let h = state.h(triple);
    let g = state.g(triple);
    let w = (1.0 - h * h) / n;
    let r1 = state.r1(triple);
    let r2 = state.r2(triple);
    PhaseState {
        x1: state.x1 * h * (g + w - 1.0) + r1 - w,
        x2: state.x2 * h * (g + w - 1.0) + r2 - w,
        y: state.y * (h * (g + w) - state.x1),
        z: state.z * (h * (g + w) + state.x1 - 2.0 * state.x2),
    }
}

/// Endpoint and interior critical points with their local data.
#[derive(Clone, Debug)]
pub struct CriticalPointSet {
    pub p0_plus: PhaseState,
    pub p0_minus: PhaseState,
    /// Cone point over the larger slice ratio; absent when `Δ ≤ 0` or `A = 0`.
    pub p1_plus: Option<PhaseState>,
    /// Cone point over the smaller slice ratio; absent when `Δ ≤ 0`.
    pub p2_plus: Option<PhaseState>,
    pub mu1: Option<f64>,
    pub mu2: Option<f64>,
    pub y2: Option<f64>,
    /// Unstable eigenvalue `2/d₁` at `p₀⁺`.
    pub unstable_eigenvalue: f64,
    pub v1: [f64; 4],
    pub v2: [f64; 4],
    /// Roots of `λ² + ((n−1)/n)λ + 2y₂²((d₂−1)μ₂ − 2((n+d₁)/d₂)Aμ₂²)`,
    /// as (re, im) pairs; complex pair signals a stable focus.
    pub lambda: Option<[(f64, f64); 2]>,
}

/// Build the critical points of the system for a triple.
pub fn critical_points(triple: &StructuralTriple) -> CriticalPointSet {
    let (d1, d2) = (triple.d1 as f64, triple.d2 as f64);
    let n = d1 + d2;
    let p0_plus = PhaseState::new(1.0 / d1, 0.0, 1.0 / d1, 0.0);
    let p0_minus = PhaseState::new(-1.0 / d1, 0.0, 1.0 / d1, 0.0);
    let v1 = [
        -2.0 * d2 * (d2 - 1.0),
        2.0 * d1 * (d2 - 1.0),
        -d2 * (d2 - 1.0),
        2.0 * d1 * (d1 + 1.0),
    ];
    let v2 = [-d1 * d1 + d1 * d2 - n, -2.0 * d1 * d1, -d2, 0.0];
    let rep = crate::thresholds::discriminant_and_mu(triple);
    let mu1 = rep.mu1.as_ref().map(|m| m.to_f64());
    let mu2 = rep.mu2.as_ref().map(|m| m.to_f64());
    let a = triple.a.to_f64();
    let mut p1_plus = None;
    let mut p2_plus = None;
    let mut y2v = None;
    let mut lambda = None;
    if let Some(mu2) = mu2 {
        let y_of = |mu: f64| {
            ((n - 1.0) / n * (n + d1) / (2.0 * d1 * n * (d1 - 1.0) + d2 * n * (d2 - 1.0) * mu))
                .sqrt()
        };
        let y2 = y_of(mu2);
        y2v = Some(y2);
        p2_plus = Some(PhaseState::new(1.0 / n, 1.0 / n, y2, mu2 * y2));
        if let Some(mu1) = mu1 {
            let y1 = y_of(mu1);
            p1_plus = Some(PhaseState::new(1.0 / n, 1.0 / n, y1, mu1 * y1));
        }
        // λ² + ((n−1)/n)λ + q = 0 with
        // q = 2y₂²((d₂−1)μ₂ − 2((n+d₁)/d₂)Aμ₂²).
        let q = 2.0 * y2 * y2 * ((d2 - 1.0) * mu2 - 2.0 * (n + d1) / d2 * a * mu2 * mu2);
        let b = (n - 1.0) / n;
        let disc = b * b - 4.0 * q;
        lambda = Some(if disc >= 0.0 {
            let r = disc.sqrt();
            [((-b + r) / 2.0, 0.0), ((-b - r) / 2.0, 0.0)]
        } else {
            let r = (-disc).sqrt();
            [(-b / 2.0, r / 2.0), (-b / 2.0, -r / 2.0)]
        });
    }
    CriticalPointSet {
        p0_plus,
        p0_minus,
        p1_plus,
        p2_plus,
        mu1,
        mu2,
        y2: y2v,
        unstable_eigenvalue: 2.0 / d1,
        v1,
        v2,
        lambda,
    }
}

/// Initial state on the unstable manifold of `p₀⁺`:
/// `p₀⁺ + eps·(s·v₁ + v₂)/‖s·v₁ + v₂‖`, then projected back onto the
/// conservation surface by a Newton correction in `Y` alone (monotone
/// influence; preserves the geometric ratios `X₂/X₁` and `Z/Y`).
pub fn gamma_init(
    triple: &StructuralTriple,
    s: f64,
    eps: f64,
) -> Result<PhaseState, DynamicsError> {
    if !(eps > 0.0) {
        return Err(DynamicsError::BadEps(eps));
    }
    let cp = critical_points(triple);
    let dir: Vec<f64> = (0..4).map(|i| s * cp.v1[i] + cp.v2[i]).collect();
    let norm = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
    let mut state = PhaseState::new(
        cp.p0_plus.x1 + eps * dir[0] / norm,
        cp.p0_plus.x2 + eps * dir[1] / norm,
        cp.p0_plus.y + eps * dir[2] / norm,
        cp.p0_plus.z + eps * dir[3] / norm,
    );
    // Newton in Y: residual is quadratic in Y with derivative
    // (2(d₁−1)(d₁Y) + d₂(d₂−1)Z)/(n−1).
    let (d1, d2) = (triple.d1 as f64, triple.d2 as f64);
    let n = d1 + d2;
    for _ in 0..50 {
        let res = state.conservation_residual(triple);
        if res.abs() < 1e-16 {
            break;
        }
        let dres = (2.0 * d1 * (d1 - 1.0) * state.y + d2 * (d2 - 1.0) * state.z) / (n - 1.0);
        state.y -= res / dres;
    }
    Ok(state)
}

/// Kinds of event logged along a trajectory.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EventKind {
    /// Transversal crossing of `{X₁ = X₂}`.
    CrossX1eqX2,
    /// Crossing of `{H = 0}` (unique along interior trajectories).
    CrossH0,
    /// Left the invariant set (`Y` or `Z` went negative, or `H` reached −1
    /// away from the endpoint).
    ExitE,
    /// Entered the endpoint ball around `p₀⁻`.
    NearP0Minus,
    /// Passed through `Γ = {X₁ = X₂ = 0}` within tolerance.
    HitGamma,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Event {
    pub kind: EventKind,
    pub eta: f64,
    pub state: PhaseState,
    /// `R₁ − R₂` at the event, recording transversality of slice crossings.
    pub transversality: f64,
}

/// Integrator and event-detection tuning.
#[derive(Clone, Copy, Debug)]
pub struct IntegrationControls {
    pub rtol: f64,
    pub atol: f64,
    pub horizon: f64,
    pub endpoint_tol: f64,
    pub drift_tol: f64,
    pub max_steps: usize,
    /// `|X₁| + |X₂|` threshold for flagging a pass through `Γ`.
    pub gamma_tol: f64,
    /// Upper bound on the step size; lower it when dense, uniformly accurate
    /// samples are needed downstream (profile reconstruction).
    pub max_step: f64,
}

impl Default for IntegrationControls {
    fn default() -> Self {
        IntegrationControls {
            rtol: 1e-10,
            atol: 1e-13,
            horizon: 200.0,
            // Must exceed the gamma_init offset: by the Z₂ symmetry the
            // closest approach to p₀⁻ is bounded below by that offset.
            endpoint_tol: 5e-6,
            drift_tol: 1e-9,
            max_steps: 2_000_000,
            gamma_tol: 1e-7,
            max_step: 1.0,
        }
    }
}

/// Dense integrator output with its event log.
#[derive(Clone, Debug)]
pub struct TrajectoryRecord {
    pub samples: Vec<(f64, PhaseState)>,
    pub events: Vec<Event>,
    /// Count of transversal `{X₁ = X₂}` crossings with `H > 0`.
    pub winding: usize,
    pub max_drift: f64,
    /// Set when a slice crossing had `|R₁ − R₂|` below tolerance, making the
    /// winding count indeterminate.
    pub non_transversal: bool,
}

/// Recompute the winding count from the event log.
pub fn winding_count(traj: &TrajectoryRecord, triple: &StructuralTriple) -> usize {
    traj.events
        .iter()
        .filter(|e| e.kind == EventKind::CrossX1eqX2 && e.state.h(triple) > 0.0)
        .count()
}

// Dormand–Prince 5(4) tableau (the system is autonomous, so the stage
// abscissae never enter the right-hand side).
const DP_A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const DP_E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];
// Dense-output coefficients (quartic interpolant of the 5(4) pair).
const DP_D: [f64; 7] = [
    -12715105075.0 / 11282082432.0,
    0.0,
    87487479700.0 / 32700410799.0,
    -10690763975.0 / 1880347072.0,
    701980252875.0 / 199316789632.0,
    -1453857185.0 / 822651844.0,
    69997945.0 / 29380423.0,
];

struct DenseStep {
    eta0: f64,
    h: f64,
    r: [[f64; 5]; 4],
}

impl DenseStep {
    fn eval(&self, eta: f64) -> PhaseState {
        let th = (eta - self.eta0) / self.h;
        let th1 = 1.0 - th;
        let mut out = [0.0; 4];
        for (i, r) in self.r.iter().enumerate() {
            out[i] = r[0] + th * (r[1] + th1 * (r[2] + th * (r[3] + th1 * r[4])));
        }
        PhaseState::new(out[0], out[1], out[2], out[3])
    }
}

fn dp_step(
    state: &PhaseState,
    eta: f64,
    h: f64,
    triple: &StructuralTriple,
    k0: &PhaseState,
) -> (PhaseState, PhaseState, f64, DenseStep) {
    let _ = eta;
    let mut k = [PhaseState::new(0.0, 0.0, 0.0, 0.0); 7];
    k[0] = *k0;
    for i in 1..7 {
        let mut yi = *state;
        for (j, kj) in k.iter().enumerate().take(i) {
            let aij = DP_A[i][j];
            if aij != 0.0 {
                yi = yi.add_scaled(kj, h * aij);
            }
        }
        k[i] = vector_field(&yi, triple);
    }
    // 5th-order solution is the stage-7 argument (FSAL).
    let mut y5 = *state;
    for (j, kj) in k.iter().enumerate().take(6) {
        let a = DP_A[6][j];
        if a != 0.0 {
            y5 = y5.add_scaled(kj, h * a);
        }
    }
    // Error estimate.
    let mut err = [0.0f64; 4];
    for (j, kj) in k.iter().enumerate() {
        err[0] += DP_E[j] * kj.x1;
        err[1] += DP_E[j] * kj.x2;
        err[2] += DP_E[j] * kj.y;
        err[3] += DP_E[j] * kj.z;
    }
    let y_old = [state.x1, state.x2, state.y, state.z];
    let y_new = [y5.x1, y5.x2, y5.y, y5.z];
    let mut errnorm = 0.0f64;
    for i in 0..4 {
        let sc = 1e-13 + 1e-10 * y_old[i].abs().max(y_new[i].abs());
        let e = h * err[i] / sc;
        errnorm += e * e;
    }
    let errnorm = (errnorm / 4.0).sqrt();
    // Dense-output coefficients.
    let ks = [
        [k[0].x1, k[1].x1, k[2].x1, k[3].x1, k[4].x1, k[5].x1, k[6].x1],
        [k[0].x2, k[1].x2, k[2].x2, k[3].x2, k[4].x2, k[5].x2, k[6].x2],
        [k[0].y, k[1].y, k[2].y, k[3].y, k[4].y, k[5].y, k[6].y],
        [k[0].z, k[1].z, k[2].z, k[3].z, k[4].z, k[5].z, k[6].z],
    ];
    let mut r = [[0.0f64; 5]; 4];
    for i in 0..4 {
        let ydiff = y_new[i] - y_old[i];
        let bspl = h * ks[i][0] - ydiff;
        r[i][0] = y_old[i];
        r[i][1] = ydiff;
        r[i][2] = bspl;
        r[i][3] = ydiff - h * ks[i][6] - bspl;
        r[i][4] = (0..7).map(|j| DP_D[j] * ks[i][j]).sum::<f64>() * h;
    }
    let k_last = k[6];
    (
        y5,
        k_last,
        errnorm,
        DenseStep {
            eta0: 0.0, // caller fills in
            h,
            r,
        },
    )
}

/// Locate a sign change of `f` on the dense interpolant by bisection,
/// to an `η` uncertainty below 1e−12.
fn bisect_event(dense: &DenseStep, lo: f64, hi: f64, f: impl Fn(&PhaseState) -> f64) -> f64 {
    let (mut lo, mut hi) = (lo, hi);
    let flo = f(&dense.eval(lo));
    let mut sign_lo = flo.is_sign_positive();
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        let fm = f(&dense.eval(mid));
        if fm.is_sign_positive() == sign_lo {
            lo = mid;
            sign_lo = fm.is_sign_positive();
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Integrate the system from `start` with adaptive Dormand–Prince 5(4) and
/// dense-output event localization.
///
/// Terminates on: entry into the endpoint ball around `p₀⁻`, exit from the
/// invariant set, or reaching the η horizon. A conservation drift above
/// `controls.drift_tol` is a hard error.
pub fn integrate(
    start: &PhaseState,
    triple: &StructuralTriple,
    controls: &IntegrationControls,
) -> Result<TrajectoryRecord, DynamicsError> {
    let cp = critical_points(triple);
    let mut eta = 0.0;
    let mut state = *start;
    let mut k0 = vector_field(&state, triple);
    let mut h = 1e-4;
    let mut samples = vec![(eta, state)];
    let mut events: Vec<Event> = Vec::new();
    let mut max_drift = start.conservation_residual(triple).abs();
    let mut non_transversal = false;

    let mut steps = 0usize;
    while eta < controls.horizon {
        if steps >= controls.max_steps {
            return Err(DynamicsError::StepLimit(controls.max_steps));
        }
        steps += 1;
        if eta + h > controls.horizon {
            h = controls.horizon - eta;
        }
        let (y_new, k_new, errnorm, mut dense) = dp_step(&state, eta, h, triple, &k0);
        if errnorm > 1.0 {
            // Reject and retry with a smaller step.
            h *= (0.9 * errnorm.powf(-0.2)).clamp(0.2, 1.0);
            continue;
        }
        dense.eta0 = eta;
        let eta_new = eta + h;

        // Event detection on the accepted step.
        let fx = |s: &PhaseState| s.x1 - s.x2;
        let fh = |s: &PhaseState| s.h(triple);
        let old_fx = fx(&state);
        let new_fx = fx(&y_new);
        if old_fx != 0.0 && old_fx.is_sign_positive() != new_fx.is_sign_positive() {
            let e_eta = bisect_event(&dense, eta, eta_new, fx);
            let e_state = dense.eval(e_eta);
            let trans = e_state.r1(triple) - e_state.r2(triple);
            if trans.abs() < 1e-10 {
                non_transversal = true;
            }
            events.push(Event {
                kind: EventKind::CrossX1eqX2,
                eta: e_eta,
                state: e_state,
                transversality: trans,
            });
            if e_state.x1.abs() + e_state.x2.abs() < controls.gamma_tol {
                events.push(Event {
                    kind: EventKind::HitGamma,
                    eta: e_eta,
                    state: e_state,
                    transversality: trans,
                });
            }
        }
        let old_fh = fh(&state);
        let new_fh = fh(&y_new);
        if old_fh > 0.0 && new_fh <= 0.0 {
            let e_eta = bisect_event(&dense, eta, eta_new, fh);
            let e_state = dense.eval(e_eta);
            let trans = e_state.r1(triple) - e_state.r2(triple);
            events.push(Event {
                kind: EventKind::CrossH0,
                eta: e_eta,
                state: e_state,
                transversality: trans,
            });
            if e_state.x1.abs() + e_state.x2.abs() < controls.gamma_tol {
                events.push(Event {
                    kind: EventKind::HitGamma,
                    eta: e_eta,
                    state: e_state,
                    transversality: trans,
                });
            }
        }

        state = y_new;
        k0 = k_new;
        eta = eta_new;
        samples.push((eta, state));

        let drift = state.conservation_residual(triple).abs();
        if drift > max_drift {
            max_drift = drift;
        }
        if max_drift > controls.drift_tol {
            return Err(DynamicsError::DriftExceeded {
                max_drift,
                tol: controls.drift_tol,
                eta,
            });
        }

        // Termination checks.
        if state.dist(&cp.p0_minus) < controls.endpoint_tol {
            events.push(Event {
                kind: EventKind::NearP0Minus,
                eta,
                state,
                transversality: state.r1(triple) - state.r2(triple),
            });
            break;
        }
        let exit_tol = 1e-8;
        let h_val = state.h(triple);
        let near_minus = state.dist(&cp.p0_minus) < 1e-2;
        if state.y < -exit_tol || state.z < -exit_tol || (h_val < -1.0 + 1e-12 && !near_minus) {
            events.push(Event {
                kind: EventKind::ExitE,
                eta,
                state,
                transversality: state.r1(triple) - state.r2(triple),
            });
            break;
        }

        // Step-size update (order 5 controller).
        let fac = if errnorm == 0.0 {
            5.0
        } else {
            (0.9 * errnorm.powf(-0.2)).clamp(0.2, 5.0)
        };
        h = (h * fac).min(controls.max_step);
    }

    events.sort_by(|a, b| a.eta.total_cmp(&b.eta));
    let mut record = TrajectoryRecord {
        samples,
        events,
        winding: 0,
        max_drift,
        non_transversal,
    };
    record.winding = winding_count(&record, triple);
    Ok(record)
}

/// Result of the heterocline shooting.
#[derive(Clone, Debug)]
pub struct ShootingResult {
    pub s_star: f64,
    /// `X₁` at the `H = 0` crossing of the final trajectory.
    pub objective_at_root: f64,
    pub bracket: (f64, f64),
    /// Every bracket evaluated, as `(s, objective)` pairs in evaluation order.
    pub bracket_history: Vec<(f64, f64)>,
    pub trajectory: TrajectoryRecord,
    /// True when the objective is below tolerance and the trajectory closes
    /// to `p₀⁻` (the mirror half follows by the `Z₂` symmetry).
    pub certified: bool,
}

const SHOOT_EPS: f64 = 1e-6;
const SHOOT_OBJECTIVE_TOL: f64 = 1e-9;

/// Objective `g(s)`: `X₁` at the unique `H = 0` crossing of the trajectory
/// from `gamma_init(s)`. `H` strictly decreases along interior trajectories,
/// so the crossing is unique when it exists.
fn objective(
    triple: &StructuralTriple,
    s: f64,
    controls: &IntegrationControls,
) -> Result<(f64, TrajectoryRecord), DynamicsError> {
    let start = gamma_init(triple, s, SHOOT_EPS)?;
    let traj = integrate(&start, triple, controls)?;
    let cross = traj
        .events
        .iter()
        .find(|e| e.kind == EventKind::CrossH0)
        .ok_or(DynamicsError::ObjectiveUndefined(s))?;
    Ok((cross.state.x1, traj))
}

/// Shoot for a heterocline joining `p₀±` by bisection on the scalar
/// objective. The initial upper bracket is the barrier-selected parameter
/// `s• = d₁σ/((d₂−1)σ−(d₁+1))` (falling back to 1 when the barrier
/// degenerates), doubled until the objective changes sign.
pub fn shoot(
    triple: &StructuralTriple,
    controls: &IntegrationControls,
) -> Result<ShootingResult, DynamicsError> {
    if triple.a.is_zero() {
        return Err(DynamicsError::ProductTriple);
    }
    let tau = triple.tau();
    let s_ref = if tau.is_positive() {
        triple.s_bullet().to_f64()
    } else {
        1.0
    };
    let mut history: Vec<(f64, f64)> = Vec::new();
    let mut eval = |s: f64| -> Result<f64, DynamicsError> {
        let (g, _) = objective(triple, s, controls)?;
        history.push((s, g));
        Ok(g)
    };

    let s_lo = 1e-3 * s_ref;
    let g_lo = eval(s_lo)?;
    let mut s_hi = s_ref;
    let mut g_hi = eval(s_hi)?;
    let s_max = 1e6 * s_ref;
    while g_hi.is_sign_positive() == g_lo.is_sign_positive() {
        s_hi *= 2.0;
        if s_hi > s_max {
            return Err(DynamicsError::NoSignChange(s_max));
        }
        g_hi = eval(s_hi)?;
    }

    // Bisect until the bracket is exhausted at machine precision, keeping
    // the parameter with the smallest objective seen. Stopping as soon as
    // the objective first dips below tolerance leaves the trajectory too far
    // from the terminal critical point at closest approach.
    let (mut lo, mut hi) = (s_lo, s_hi);
    let mut s_best = 0.5 * (lo + hi);
    let mut g_best = f64::INFINITY;
    let sign_lo = g_lo.is_sign_positive();
    loop {
        let mid = 0.5 * (lo + hi);
        let g_mid = eval(mid)?;
        if g_mid.abs() < g_best {
            s_best = mid;
            g_best = g_mid.abs();
        }
        if g_mid.is_sign_positive() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo) < 4.0 * f64::EPSILON * hi.abs() {
            break;
        }
    }

    // Final trajectory with a long horizon so the endpoint check can fire.
    let mut final_controls = *controls;
    final_controls.horizon = controls.horizon.max(400.0);
    let (g_final, traj) = objective(triple, s_best, &final_controls)?;
    let closes = traj
        .events
        .iter()
        .any(|e| e.kind == EventKind::NearP0Minus);
    let certified = g_final.abs() < SHOOT_OBJECTIVE_TOL && closes;
    Ok(ShootingResult {
        s_star: s_best,
        objective_at_root: g_final,
        bracket: (lo, hi),
        bracket_history: history,
        trajectory: traj,
        certified,
    })
}

/// Result of the angular limit initial value problem.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ThetaIVPResult {
    pub theta_limit: f64,
    pub eta_horizon: f64,
    pub mu2_used: f64,
    /// Constant forcing term of the scalar equation.
    pub c: f64,
}

/// Integrate `dθ/dη = ((n−1)/2n)·tanh(η/n)·sin(2θ) + c` with `θ(0) = 0`,
/// where `c` is the sine-cone winding rate
/// `(√((n−1)(n+d₁))/n)·√((4(d₁−1)−2(d₂−1)μ₂)/(2d₁(d₁−1)+d₂(d₂−1)μ₂))`
/// built from the smaller slice-ratio root `μ₂`. A stabilized limit below
/// `3π/4` certifies a second metric on top of an existence verdict.
pub fn theta_ivp(triple: &StructuralTriple, horizon: f64) -> Result<ThetaIVPResult, DynamicsError> {
    let (d1, d2) = (triple.d1 as f64, triple.d2 as f64);
    let n = d1 + d2;
    let a = triple.a.to_f64();
    let delta = (d2 - 1.0) * (d2 - 1.0) - 4.0 * (d1 - 1.0) * (n + d1) * a / d2;
    if delta < 0.0 {
        return Err(DynamicsError::NoRealRoots);
    }
    let mu2 = 2.0 * (d1 - 1.0) / (d2 - 1.0 + delta.sqrt());
    let radicand = (4.0 * (d1 - 1.0) - 2.0 * (d2 - 1.0) * mu2)
        / (2.0 * d1 * (d1 - 1.0) + d2 * (d2 - 1.0) * mu2);
    if radicand < 0.0 {
        return Err(DynamicsError::NegativeRadicand(radicand));
    }
    let c = ((n - 1.0) * (n + d1)).sqrt() / n * radicand.sqrt();

    // The η → ∞ equation θ' = ((n−1)/2n)sin(2θ) + c has no zero when
    // c > (n−1)/2n: θ then grows without bound and the limit is +∞
    // (no second-metric upgrade).
    if c > (n - 1.0) / (2.0 * n) {
        return Ok(ThetaIVPResult {
            theta_limit: f64::INFINITY,
            eta_horizon: horizon,
            mu2_used: mu2,
            c,
        });
    }

    let rhs = |eta: f64, th: f64| (n - 1.0) / (2.0 * n) * (eta / n).tanh() * (2.0 * th).sin() + c;
    // Classic RK4 with a fixed fine step; the equation is scalar and smooth.
    let h = 1e-3;
    let mut eta = 0.0;
    let mut th = 0.0;
    let mut stable_from: Option<f64> = None;
    let asymptote = |th: f64| (n - 1.0) / (2.0 * n) * (2.0 * th).sin() + c;
    while eta < horizon {
        let k1 = rhs(eta, th);
        let k2 = rhs(eta + 0.5 * h, th + 0.5 * h * k1);
        let k3 = rhs(eta + 0.5 * h, th + 0.5 * h * k2);
        let k4 = rhs(eta + h, th + h * k3);
        th += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        eta += h;
        // Trailing-window stabilization: dθ/dη must agree with the η→∞
        // asymptote to 1e−10 over at least 10 η-units.
        if (rhs(eta, th) - asymptote(th)).abs() < 1e-10 && asymptote(th).abs() < 1e-10 {
            if stable_from.is_none() {
                stable_from = Some(eta);
            }
        } else {
            stable_from = None;
        }
        if let Some(from) = stable_from {
            if eta - from > 10.0 {
                return Ok(ThetaIVPResult {
                    theta_limit: th,
                    eta_horizon: eta,
                    mu2_used: mu2,
                    c,
                });
            }
        }
    }
    if c == 0.0 {
        // θ ≡ 0 identically; the trailing window never sees tanh stabilize
        // but the limit is exact.
        return Ok(ThetaIVPResult {
            theta_limit: 0.0,
            eta_horizon: horizon,
            mu2_used: mu2,
            c,
        });
    }
    if stable_from.is_some() {
        return Ok(ThetaIVPResult {
            theta_limit: th,
            eta_horizon: horizon,
            mu2_used: mu2,
            c,
        });
    }
    Err(DynamicsError::NoStabilization(horizon))
}

/// Whether a stabilized angular limit certifies the second metric.
pub fn theta_upgrades(result: &ThetaIVPResult) -> bool {
    result.theta_limit < 3.0 * PI / 4.0
}

/// Barrier diagnostics at a state; components are `None` where their
/// defining quotient degenerates.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct BarrierValues {
    /// `S = (Z/Y)·(X₁ + (d₂/2d₁)X₂)/X₂`
    pub s: Option<f64>,
    /// `T = (1−H²)/(n·YZ)`
    pub t: Option<f64>,
    /// `P = X₁(R₂ − (1−H²)/n) − X₂(R₁ − (1−H²)/n) − 2X₂(X₁−X₂)(X₁ + (d₂/2d₁)X₂)`
    pub p: f64,
    /// Escape-rate companion of `P` along the flow.
    pub q: f64,
}

/// Evaluate the barrier functions at a state.
pub fn barrier_values(state: &PhaseState, triple: &StructuralTriple) -> BarrierValues {
    let (d1, d2) = (triple.d1 as f64, triple.d2 as f64);
    let n = d1 + d2;
    let h = state.h(triple);
    let w = (1.0 - h * h) / n;
    let r1 = state.r1(triple);
    let r2 = state.r2(triple);
    let wedge = state.x1 + d2 / (2.0 * d1) * state.x2;

    let s = if state.x2 != 0.0 && state.y != 0.0 {
        Some(state.z / state.y * wedge / state.x2)
    } else {
        None
    };
    let t = if state.y != 0.0 && state.z != 0.0 {
        Some(w / (state.y * state.z))
    } else {
        None
    };
    let p = state.x1 * (r2 - w) - state.x2 * (r1 - w)
        - 2.0 * state.x2 * (state.x1 - state.x2) * wedge;
    let q = 4.0 * state.x2 * wedge * (h + d2 / (2.0 * d1) * state.x2)
        + (2.0 * state.x1 + 2.0 * state.x2 + 3.0 * d2 / d1 * state.x2) * w
        - 2.0 * (d2 - 1.0) * state.x1 * state.y * state.z
        - state.x2
            * (2.0 * (d1 - 1.0) * state.y * state.y
                + 3.0 * d2 / d1 * (d2 - 1.0) * state.y * state.z);
    BarrierValues { s, t, p, q }
}
