//! Exact classification layer: polynomial families, thresholds, and the
//! existence / non-existence decision ladder for a structural triple
//! `(d₁, d₂, A)`.
//!
//! A triple describes a two-summands cohomogeneity one space: `d₁` is the
//! collapsing-sphere dimension, `d₂` the base-summand dimension, and `A ≥ 0`
//! the squared norm of the O'Neill tensor of the underlying fibration. All
//! decisions here are made in exact rational (or quadratic-surd) arithmetic;
//! the numerics live in [`crate::dynamics`].

use crate::exact::poly::IntervalSign;
use crate::exact::{rat, ratq, PolyQ, QuadraticInL, QuadraticSurd, Rational};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Errors from triple validation and threshold evaluation.
#[derive(Debug, thiserror::Error)]
pub enum ThresholdError {
    #[error("dimension constraint violated: need d2 >= d1 >= 2, got d1={d1}, d2={d2}")]
    BadDimensions { d1: u32, d2: u32 },
    #[error("A must be non-negative, got {0}")]
    NegativeA(Rational),
    #[error("chi-tilde is only defined for d1 in {{2, 3}}, got d1={0}")]
    ChiTildeUndefined(u32),
    #[error("denominator vanished while evaluating {0}")]
    ZeroDenominator(&'static str),
    #[error("k must lie in the open interval (0, 1), got {0}")]
    KOutOfRange(Rational),
}

/// The structural triple `(d₁, d₂, A)` with `n = d₁ + d₂`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralTriple {
    pub d1: u32,
    pub d2: u32,
    #[serde(rename = "A")]
    pub a: Rational,
}

impl StructuralTriple {
    pub fn new(d1: u32, d2: u32, a: Rational) -> Result<Self, ThresholdError> {
        if !(2 <= d1 && d1 <= d2) {
            return Err(ThresholdError::BadDimensions { d1, d2 });
        }
        if a.is_negative() {
            return Err(ThresholdError::NegativeA(a));
        }
        Ok(StructuralTriple { d1, d2, a })
    }

    pub fn n(&self) -> u32 {
        self.d1 + self.d2
    }

    fn d1r(&self) -> Rational {
        rat(self.d1 as i64)
    }

    fn d2r(&self) -> Rational {
        rat(self.d2 as i64)
    }

    fn nr(&self) -> Rational {
        rat(self.n() as i64)
    }

    /// Discriminant `(d₂−1)² − 4(d₁−1)(n+d₁)A/d₂` of the homogeneous-metric
    /// quadratic in the slice ratio; non-positive means the base carries no
    /// homogeneous Einstein metric of the required kind.
    pub fn delta(&self) -> Rational {
        let (d1, d2, n) = (self.d1r(), self.d2r(), self.nr());
        (&d2 - &rat(1)).pow(2) - rat(4) * (&d1 - &rat(1)) * (&n + &d1) * &self.a / &d2
    }

    /// Upper barrier parameter `σ = d₂(d₂−1)/(2d₁²A)`; requires `A > 0`.
    pub fn sigma(&self) -> Rational {
        assert!(self.a.is_positive(), "sigma requires A > 0");
        let (d1, d2) = (self.d1r(), self.d2r());
        &d2 * (&d2 - &rat(1)) / (rat(2) * d1.pow(2) * &self.a)
    }

    /// Lower barrier parameter `τ = d₂ − 1 − 2d₁²(d₁+1)A/(d₂(d₂−1))`.
    pub fn tau(&self) -> Rational {
        let (d1, d2) = (self.d1r(), self.d2r());
        &d2 - &rat(1) - rat(2) * d1.pow(2) * (&d1 + &rat(1)) * &self.a / (&d2 * (&d2 - &rat(1)))
    }

    /// Shooting-parameter anchor `s• = d₁/τ = d₁σ/((d₂−1)σ − (d₁+1))`.
    pub fn s_bullet(&self) -> Rational {
        self.d1r() / self.tau()
    }
}

impl fmt::Display for StructuralTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.d1, self.d2, self.a)
    }
}

/// Exact threshold that may be rational or a quadratic surd.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ThresholdValue {
    Rational(Rational),
    Surd(QuadraticSurd),
}

impl ThresholdValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            ThresholdValue::Rational(r) => r.to_f64(),
            ThresholdValue::Surd(s) => s.to_f64(),
        }
    }

    /// `true` iff `r` is strictly below this threshold.
    pub fn strictly_above(&self, r: &Rational) -> bool {
        match self {
            ThresholdValue::Rational(t) => r < t,
            ThresholdValue::Surd(s) => s.cmp_rational(r) == std::cmp::Ordering::Greater,
        }
    }
}

impl fmt::Display for ThresholdValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThresholdValue::Rational(r) => write!(f, "{r}"),
            ThresholdValue::Surd(s) => write!(f, "{s}"),
        }
    }
}

/// Every named polynomial family for a fixed `(d₁, d₂)`, in the fiber-ratio
/// variable `k`. The `l`-quadratics (`P_Y`, `Q_Y`, `ω`, `ζ`) are produced by
/// constructor methods because some of their coefficients carry the weight
/// `A`, which must be substituted first.
#[derive(Clone, Debug)]
pub struct PolynomialFamilySet {
    pub d1: u32,
    pub d2: u32,
    pub p_x: PolyQ,
    pub q_x: PolyQ,
    pub omega0: PolyQ,
    pub omega1: PolyQ,
    pub omega2: PolyQ,
    pub beta0: PolyQ,
    pub beta1: PolyQ,
    pub beta2: PolyQ,
    pub beta3: PolyQ,
    pub theta0: PolyQ,
    pub theta1: PolyQ,
    pub theta2: PolyQ,
    pub rho0: PolyQ,
    pub rho1: PolyQ,
    pub rho3: PolyQ,
    pub alpha1: PolyQ,
    pub alpha2: PolyQ,
    pub alpha3: PolyQ,
    pub alpha4: PolyQ,
}

/// Build a polynomial from ascending `i128` coefficients.
fn poly(coeffs: &[i128]) -> PolyQ {
    PolyQ::new(coeffs.iter().map(|&c| Rational::from_int(c)).collect())
}

/// Construct every polynomial family for `(d₁, d₂)`.
pub fn build_families(d1: u32, d2: u32) -> Result<PolynomialFamilySet, ThresholdError> {
    if !(2 <= d1 && d1 <= d2) {
        return Err(ThresholdError::BadDimensions { d1, d2 });
    }
    let (a, b) = (d1 as i128, d2 as i128);
    let n = a + b;
    let k = PolyQ::monomial(Rational::one(), 1);
    let one = PolyQ::constant(Rational::one());

    // P_X = (quadratic in k)·(1−k)/(d₁(n−1))
    let p_x_quad = poly(&[
        a * a * (a - 1),
        2 * (b - 1) * (a - 1) * a,
        b * (a * b - 2 * a - b + 1),
    ]);
    let p_x = (&p_x_quad * &(&one - &k)).scale(&Rational::new(1, a * (n - 1)));

    // Q_X = 4k(1 + d₂k/2d₁)(d₁ + d₂k + d₂k/2d₁)
    //       + (2 + 2k + 3d₂k/d₁)(d₁ + d₂k² − (d₁+d₂k)²)/(n−1)
    let half_ratio = PolyQ::new(vec![Rational::one(), Rational::new(b, 2 * a)]);
    let inner = PolyQ::new(vec![
        Rational::from_int(a),
        Rational::from_int(b) + Rational::new(b, 2 * a),
    ]);
    let first = (&(&k * &half_ratio) * &inner).scale(&rat(4));
    let wedge = PolyQ::new(vec![rat(2), rat(2) + Rational::new(3 * b, a)]);
    let trace_defect = poly(&[a - a * a, -2 * a * b, b - b * b]);
    let second = (&wedge * &trace_defect).scale(&Rational::new(1, n - 1));
    let q_x = &first + &second;

    let omega2 = poly(&[
        -2 * a.pow(4) + 2 * a.pow(3),
        2 * a.pow(4) - 5 * a.pow(3) * b - 2 * a.pow(3) + 5 * a.pow(2) * b,
        4 * a.pow(3) * b - 4 * a.pow(2) * b.pow(2) - 2 * a.pow(2) * b + 4 * a * b.pow(2)
            - 2 * a * b,
        2 * a.pow(2) * b.pow(2) - a * b.pow(3) + b.pow(3) - b.pow(2),
    ]);
    let omega1 = poly(&[
        4 * a.pow(3) - 4 * a.pow(2),
        a.pow(3) * b - 4 * a.pow(3) + 5 * a.pow(2) * b + 4 * a.pow(2) - 6 * a * b,
        2 * a.pow(2) * b.pow(2) - 8 * a.pow(2) * b + 8 * a * b - 2 * b.pow(2),
        a * b.pow(3) - 4 * a * b.pow(2) - b.pow(3) + 3 * b.pow(2),
    ]);
    let omega0 = poly(&[
        a.pow(3) * b - a.pow(2) * b + 4 * a.pow(2),
        2 * a.pow(2) * b.pow(2) - 2 * a.pow(2) * b - 2 * a * b.pow(2) - 4 * a.pow(2) + 4 * a * b,
        a * b.pow(3) - 2 * a * b.pow(2) - b.pow(3) - 2 * a * b + b.pow(2),
    ]);

    let beta0 = poly(&[
        a.pow(3) - a,
        2 * a.pow(2) * b - 2 * a.pow(2) - a * b + 2 * a,
        a * b.pow(2) - 2 * a * b - b.pow(2) + b,
    ]);
    let beta1 = poly(&[
        2 * a.pow(4) + a.pow(3) * b - 2 * a.pow(2) * b + 2 * a.pow(2) + a * b - 4 * a,
        4 * a.pow(3) * b + 2 * a.pow(2) * b.pow(2) - 4 * a.pow(3) - 2 * a.pow(2) * b
            - 3 * a * b.pow(2)
            + 4 * a * b
            + b.pow(2)
            + 4 * a
            - 2 * b,
        2 * a.pow(2) * b.pow(2) + a * b.pow(3)
            - 4 * a.pow(2) * b
            - 2 * a * b.pow(2)
            - b.pow(3)
            - 2 * a * b
            + 2 * b,
    ]);
    let beta2 = poly(&[
        2 * a.pow(3),
        a.pow(3) * b - 2 * a.pow(3) + a.pow(2) * b,
        2 * a.pow(2) * b.pow(2) - 4 * a.pow(2) * b - 2 * a * b.pow(2) + 2 * a * b,
        a * b.pow(3) - 2 * a * b.pow(2) - b.pow(3) + b.pow(2),
    ]);
    let beta3 = poly(&[
        a.pow(3) - a.pow(2),
        2 * a.pow(2) * b - 2 * a.pow(2) - 2 * a * b + 2 * a,
        a * b.pow(2) - 2 * a * b - b.pow(2) + b,
    ]);

    // θ₂ = 4d₁⁴(d₁+1)²·θ₂ₐ·θ₂ᵦ with θ₂ₐ = ω₀ and θ₂ᵦ = ω₂ (same printed
    // coefficients), θ₁ = θ₁ₐ·θ₁ᵦ, θ₀ = θ₀ₐ·θ₀ᵦ.
    let theta2 =
        (&omega0 * &omega2).scale(&Rational::from_int(4 * a.pow(4) * (a + 1) * (a + 1)));
    let theta1b = poly(&[
        -2 * a.pow(7) + 2 * a.pow(5),
        a.pow(7) * b + 4 * a.pow(7) - 9 * a.pow(6) * b + 8 * a.pow(6) + 3 * a.pow(5) * b
            - 12 * a.pow(5)
            + 5 * a.pow(4) * b,
        4 * a.pow(6) * b.pow(2) + 12 * a.pow(6) * b - 16 * a.pow(5) * b.pow(2) - 8 * a.pow(6)
            + 28 * a.pow(5) * b
            + 8 * a.pow(4) * b.pow(2)
            + 8 * a.pow(5)
            - 32 * a.pow(4) * b
            + 4 * a.pow(3) * b.pow(2)
            - 8 * a.pow(3) * b,
        6 * a.pow(5) * b.pow(3) + 12 * a.pow(5) * b.pow(2)
            - 14 * a.pow(4) * b.pow(3)
            - 20 * a.pow(5) * b
            + 35 * a.pow(4) * b.pow(2)
            + 7 * a.pow(3) * b.pow(3)
            + 12 * a.pow(4) * b
            - 29 * a.pow(3) * b.pow(2)
            + a.pow(2) * b.pow(3)
            + 8 * a.pow(3) * b
            - 12 * a.pow(2) * b.pow(2),
        4 * a.pow(4) * b.pow(4) + 4 * a.pow(4) * b.pow(3) - 6 * a.pow(3) * b.pow(4)
            - 16 * a.pow(4) * b.pow(2)
            + 18 * a.pow(3) * b.pow(3)
            + 2 * a.pow(2) * b.pow(4)
            + 4 * a.pow(3) * b.pow(2)
            - 10 * a.pow(2) * b.pow(3)
            + 8 * a.pow(2) * b.pow(2)
            - 6 * a * b.pow(3),
        a.pow(3) * b.pow(5) - a.pow(2) * b.pow(5) - 4 * a.pow(3) * b.pow(3)
            + 3 * a.pow(2) * b.pow(4)
            - a * b.pow(4)
            + 2 * a * b.pow(3)
            - b.pow(4),
    ]);
    let theta1 = theta1b.scale(&Rational::from_int(-4 * a.pow(2) * b * (b - 1).pow(2) * (a + 1)));
    let theta0a = (&poly(&[2 * a, b]) * &poly(&[2 * a * a + 2 * a, 2 * a * b - 2 * a + b]))
        .scale(&Rational::from_int(b.pow(2) * (b - 1).pow(4)))
        .mul_by_k();
    let theta0b = poly(&[
        2 * a.pow(3) * (a - 1),
        (4 * a.pow(3) - 2 * a.pow(2) - 2 * a) * b,
        (2 * a.pow(2) - 1) * b.pow(2),
    ]);
    let theta0 = &theta0a * &theta0b;

    let rho1_inner = poly(&[2 * a * a, 4 * a * b + 2 * a, 2 * b * b + b]);
    let rho1 = (&rho1_inner * &rho1_inner).scale(&Rational::from_int(4 * a * a * (a - 1)));
    let rho0_inner = poly(&[
        4 * a.pow(3) - 4 * a.pow(2),
        8 * a.pow(2) * b - 8 * a * b,
        4 * a * b.pow(2) - 3 * b.pow(2),
    ]);
    let rho0 = (&poly(&[4 * a, 3 * b]) * &rho0_inner)
        .scale(&Rational::from_int(b * (b - 1).pow(2)))
        .mul_by_k();
    let rho3 = poly(&[
        4 * a.pow(3) - 4 * a.pow(2),
        10 * a.pow(2) * b - 4 * a.pow(2) - 10 * a * b + 4 * a,
        8 * a * b.pow(2) - 2 * a * b - 5 * b.pow(2) + 2 * b,
        2 * b.pow(3) + b.pow(2),
    ]);

    let alpha1 = omega1.clone();
    let alpha2 = beta3.clone();
    let alpha3 = poly(&[
        a.pow(3) - 4 * a.pow(2),
        2 * a.pow(2) * b + 2 * a.pow(2) - 4 * a * b,
        a * b.pow(2) + a * b - b.pow(2),
    ]);
    let alpha4 = poly(&[
        2 * a.pow(5) * b - 4 * a.pow(5) - 4 * a.pow(4) * b + 8 * a.pow(4) + 2 * a.pow(3) * b
            - 4 * a.pow(3),
        -a.pow(5) * b + 5 * a.pow(4) * b.pow(2) + 4 * a.pow(5)
            - 10 * a.pow(4) * b
            - 10 * a.pow(3) * b.pow(2)
            - 8 * a.pow(4)
            + 17 * a.pow(3) * b
            + 5 * a.pow(2) * b.pow(2)
            + 4 * a.pow(3)
            - 6 * a.pow(2) * b,
        -2 * a.pow(4) * b.pow(2) + 4 * a.pow(3) * b.pow(3) + 8 * a.pow(4) * b
            - 8 * a.pow(3) * b.pow(2)
            - 8 * a.pow(2) * b.pow(3)
            - 8 * a.pow(3) * b
            + 14 * a.pow(2) * b.pow(2)
            + 4 * a * b.pow(3)
            - 4 * a * b.pow(2),
        -a.pow(3) * b.pow(3) + a.pow(2) * b.pow(4) + 4 * a.pow(3) * b.pow(2)
            - 2 * a.pow(2) * b.pow(3)
            - 2 * a * b.pow(4)
            - a.pow(2) * b.pow(2)
            + 4 * a * b.pow(3)
            + b.pow(4)
            - a * b.pow(2)
            - b.pow(3),
    ]);

    Ok(PolynomialFamilySet {
        d1,
        d2,
        p_x,
        q_x,
        omega0,
        omega1,
        omega2,
        beta0,
        beta1,
        beta2,
        beta3,
        theta0,
        theta1,
        theta2,
        rho0,
        rho1,
        rho3,
        alpha1,
        alpha2,
        alpha3,
        alpha4,
    })
}

impl PolyQ {
    /// Multiply by the variable (degree shift by one).
    fn mul_by_k(&self) -> PolyQ {
        if self.is_zero() {
            return PolyQ::zero();
        }
        let mut coeffs = vec![Rational::zero()];
        coeffs.extend(self.coeffs().iter().cloned());
        PolyQ::new(coeffs)
    }
}

impl PolynomialFamilySet {
    fn dims(&self) -> (i128, i128, i128) {
        let (a, b) = (self.d1 as i128, self.d2 as i128);
        (a, b, a + b)
    }

    /// The quadratic `P_Y(A, k, l)` with `A` substituted.
    pub fn p_y(&self, a_val: &Rational) -> QuadraticInL {
        let (a, b, n) = self.dims();
        let c2 = poly(&[a * (n + a - 2), b * (n + a - 1)])
            .scale(&(Rational::new(-1, b * (n - 1)) * a_val));
        let c1 = poly(&[(b - 1) * (a - 1), (b - 1) * b]).scale(&Rational::new(1, n - 1));
        let c0 = poly(&[a * (a - 1), (a - 1) * (b - 1)]).scale(&Rational::new(-1, n - 1));
        QuadraticInL::new(c2, c1, c0)
    }

    /// The quadratic `Q_Y(A, k, l)` with `A` substituted.
    pub fn q_y(&self, a_val: &Rational) -> QuadraticInL {
        let (a, b, n) = self.dims();
        let c2 = poly(&[2 * a, 2 * n + b]).scale(&(Rational::new(-1, n - 1) * a_val));
        let c1 =
            poly(&[2 * a * (a - 1), a * b - 3 * b]).scale(&Rational::new(-(b - 1), a * (n - 1)));
        let c0 = poly(&[2 * a * (a - 1), (b + 2) * (a - 1)]).scale(&Rational::new(1, n - 1));
        QuadraticInL::new(c2, c1, c0)
    }

    /// `ω(A,k,l) = (1/(d₁²(n−1)))·((2d₁+d₂k)ω₂A/d₂·l² + (d₂−1)kω₁·l − (d₁−1)k²ω₀)`,
    /// the sign of the escape function `Q` on the face `{P = 0}`.
    pub fn omega(&self, a_val: &Rational) -> QuadraticInL {
        let (a, b, n) = self.dims();
        let pre = Rational::new(1, a * a * (n - 1));
        let c2 = (&poly(&[2 * a, b]) * &self.omega2)
            .scale(&(&pre * a_val * Rational::new(1, b)));
        let c1 = self
            .omega1
            .mul_by_k()
            .scale(&(&pre * Rational::from_int(b - 1)));
        let c0 = self
            .omega0
            .mul_by_k()
            .mul_by_k()
            .scale(&(&pre * Rational::from_int(-(a - 1))));
        QuadraticInL::new(c2, c1, c0)
    }

    /// `ζ(A,k,l) = ζ₂A·l² + ζ₁(k,τ)·l + ζ₀`, the sign of `T − τ` on `{P = 0}`.
    pub fn zeta(&self, triple: &StructuralTriple) -> QuadraticInL {
        let (a, b, _n) = self.dims();
        let tau = triple.tau();
        let c2 = (&(&poly(&[a, b]) * &poly(&[a - 1, b])) * &poly(&[2 * a, b]))
            .scale(&(Rational::new(-1, b) * &triple.a));
        let part1 = (&poly(&[a, b]) * &poly(&[a * (a - 1), b * (a - 1), b]))
            .scale(&Rational::new(b - 1, a));
        let part2 = (&poly(&[1, -1])
            * &poly(&[
                a * a * (a - 1),
                2 * a * a * b - 2 * a * a - 2 * a * b + 2 * a,
                a * b * b - 2 * a * b - b * b + b,
            ]))
        .scale(&(Rational::new(1, a) * &tau));
        let c1 = &part1 - &part2;
        let c0 = (&poly(&[a, b]) * &poly(&[a + 1, b - 2]))
            .scale(&Rational::from_int(-(a - 1)))
            .mul_by_k();
        QuadraticInL::new(c2, c1, c0)
    }

    /// `Θ(A, k) = θ₂A² + θ₁A + θ₀` with `A` substituted, a polynomial in `k`.
    pub fn theta_at(&self, a_val: &Rational) -> PolyQ {
        let a2 = self.theta2.scale(&a_val.pow(2));
        let a1 = self.theta1.scale(a_val);
        &(&a2 + &a1) + &self.theta0
    }
}

/// Exact non-existence threshold
/// `Ψ = ((4(d₁−1)n² + d₂²)(3n + d₁)/((2n² + n + d₁)²d₁²))·d₂(d₂−1)²/(4(d₁−1))`.
pub fn psi(d1: u32, d2: u32) -> Result<Rational, ThresholdError> {
    if !(2 <= d1 && d1 <= d2) {
        return Err(ThresholdError::BadDimensions { d1, d2 });
    }
    let (a, b) = (d1 as i128, d2 as i128);
    let n = a + b;
    let numer = (4 * (a - 1) * n * n + b * b) * (3 * n + a);
    let denom = (2 * n * n + n + a).pow(2) * a * a;
    Ok(Rational::new(numer, denom) * bohm_factor(a, b))
}

/// The common factor `d₂(d₂−1)²/(4(d₁−1))` appearing in every A-threshold.
fn bohm_factor(a: i128, b: i128) -> Rational {
    Rational::new(b * (b - 1) * (b - 1), 4 * (a - 1))
}

/// Classical non-existence lower bound `(1/(n+d₁))·d₂(d₂−1)²/(4(d₁−1))`:
/// at or above it the homogeneous-metric discriminant is non-positive.
pub fn bohm_lower(d1: u32, d2: u32) -> Rational {
    let (a, b) = (d1 as i128, d2 as i128);
    Rational::new(1, a + b + a) * bohm_factor(a, b)
}

/// Simplified sufficient existence threshold `χ̃`, defined for `d₁ ∈ {2,3}`.
pub fn chi_tilde(d1: u32, d2: u32) -> Result<Rational, ThresholdError> {
    if !(2 <= d1 && d1 <= d2) {
        return Err(ThresholdError::BadDimensions { d1, d2 });
    }
    let b = d2 as i128;
    let base = Rational::new(b * (b - 1) * (b - 1), (b + 8) * (b + 8));
    match d1 {
        2 => Ok(rat(4) * base),
        3 if d2 <= 19 => Ok(base),
        3 => Ok(ratq(3, 2) * base),
        other => Err(ThresholdError::ChiTildeUndefined(other)),
    }
}

/// First existence threshold `A₁`: rational for `d₁ ≥ 4` and `(2,2)`,
/// a closed-form quadratic surd for `d₁ ∈ {2,3}` otherwise.
pub fn a1_threshold(d1: u32, d2: u32) -> Result<ThresholdValue, ThresholdError> {
    if !(2 <= d1 && d1 <= d2) {
        return Err(ThresholdError::BadDimensions { d1, d2 });
    }
    let (a, b) = (d1 as i128, d2 as i128);
    if d1 >= 4 || (d1, d2) == (2, 2) {
        return Ok(ThresholdValue::Rational(Rational::new(
            b * (b - 1) * (b - 1),
            a * a * (a * b - b + 4),
        )));
    }
    let sq = Rational::new((b - 1) * (b - 1), 1);
    let value = match d1 {
        2 => {
            let denom = Rational::new(4 * b * (b.pow(3) - 8 * b.pow(2) - 16 * b - 16), 1);
            let rad = 2 * b * b + 4 * b + 4;
            let rational_part =
                Rational::from_int(-5 * b.pow(4) - 12 * b.pow(3) + 8 * b.pow(2) + 32 * b + 32);
            let surd_part = Rational::from_int(4 * b.pow(3) - 8 * b - 16);
            QuadraticSurd::new(
                &sq * &rational_part / &denom,
                &sq * &surd_part / &denom,
                rad as u64,
            )
        }
        3 => {
            let denom = Rational::new(9 * b * (2 * b.pow(3) - 9 * b.pow(2) - 36 * b - 36), 1);
            let rad = 3 * b * b + 9 * b + 9;
            let rational_part =
                Rational::from_int(-6 * b.pow(4) - 23 * b.pow(3) + 72 * b + 72);
            let surd_part = Rational::from_int(4 * b.pow(3) + 4 * b.pow(2) - 12 * b - 24);
            QuadraticSurd::new(
                &sq * &rational_part / &denom,
                &sq * &surd_part / &denom,
                rad as u64,
            )
        }
        _ => unreachable!(),
    };
    Ok(if value.is_rational() {
        ThresholdValue::Rational(value.a)
    } else {
        ThresholdValue::Surd(value)
    })
}

/// Result of the exact discriminant and slice-ratio root computation.
#[derive(Clone, Debug)]
pub struct DiscriminantReport {
    pub delta: Rational,
    /// Larger root; `None` when `A = 0` (the quadratic degenerates to linear
    /// and one root escapes to infinity) or when `Δ < 0` (no real roots).
    pub mu1: Option<QuadraticSurd>,
    /// Smaller root; `None` only when `Δ < 0`.
    pub mu2: Option<QuadraticSurd>,
}

/// Discriminant `Δ` and the roots `μ₁ ≥ μ₂` of
/// `((n+d₁)/d₂)A·l² − (d₂−1)l + (d₁−1) = 0`.
pub fn discriminant_and_mu(triple: &StructuralTriple) -> DiscriminantReport {
    let (a, b) = (triple.d1 as i128, triple.d2 as i128);
    let n = a + b;
    let delta = triple.delta();
    if triple.a.is_zero() {
        // Linear degeneration: single root (d₁−1)/(d₂−1).
        return DiscriminantReport {
            delta,
            mu1: None,
            mu2: Some(QuadraticSurd::from_rational(Rational::new(a - 1, b - 1))),
        };
    }
    if delta.is_negative() {
        return DiscriminantReport {
            delta,
            mu1: None,
            mu2: None,
        };
    }
    // μ = d₂((d₂−1) ± √Δ)/(2(n+d₁)A); with Δ = p/q in lowest terms,
    // √Δ = √(pq)/q keeps the radicand an integer.
    let scale = Rational::new(b, 2 * (n + a)) / &triple.a;
    let pq = delta.numer() * delta.denom();
    let rad = u64::try_from(&pq).expect("discriminant radicand exceeds u64 range");
    let sqrt_coeff = &scale * Rational::new(1, delta.denom().clone());
    let mid = &scale * Rational::from_int(b - 1);
    let mu1 = QuadraticSurd::new(mid.clone(), sqrt_coeff.clone(), rad);
    let mu2 = QuadraticSurd::new(mid, -sqrt_coeff, rad);
    DiscriminantReport {
        delta,
        mu1: Some(mu1),
        mu2: Some(mu2),
    }
}

/// Sufficient second-threshold check: substitute `A` into `Θ` and certify
/// strict positivity on the open interval `(0, 1)`.
pub fn check_a2_sufficient(triple: &StructuralTriple) -> bool {
    let fams = build_families(triple.d1, triple.d2).expect("validated triple");
    let theta = fams.theta_at(&triple.a);
    matches!(
        theta.sign_on_interval(&rat(0), &rat(1), true, true),
        IntervalSign::StrictlyPositive
    )
}

/// Stable-focus criterion: `A` below
/// `((9−n)(d₂n+7n+9d₁)/(d₁n−8n−9d₁)²)·d₂(d₂−1)²/(4(d₁−1))`, with a
/// non-positive (or undefined) right-hand side yielding `false`.
pub fn focus_condition(triple: &StructuralTriple) -> bool {
    match focus_upper_bound(triple.d1, triple.d2) {
        Some(bound) if bound.is_positive() => triple.a < bound,
        _ => false,
    }
}

/// Right-hand side of the focus criterion; `None` when the squared
/// denominator vanishes.
pub fn focus_upper_bound(d1: u32, d2: u32) -> Option<Rational> {
    let (a, b) = (d1 as i128, d2 as i128);
    let n = a + b;
    let denom = a * n - 8 * n - 9 * a;
    if denom == 0 {
        return None;
    }
    Some(Rational::new((9 - n) * (b * n + 7 * n + 9 * a), denom * denom) * bohm_factor(a, b))
}

/// Discriminant bounds of the two `l`-quadratics at a fixed `k ∈ (0,1)`:
/// `Ω(k)` controls real roots of `ω`, `Ξ(k)` those of `P_Y`.
pub struct OmegaXiBounds {
    pub omega: Rational,
    pub xi: Rational,
}

pub fn omega_xi_bounds(d1: u32, d2: u32, k: &Rational) -> Result<OmegaXiBounds, ThresholdError> {
    let fams = build_families(d1, d2)?;
    if !(k >= &rat(0) && k <= &rat(1)) {
        return Err(ThresholdError::KOutOfRange(k.clone()));
    }
    let (a, b) = (d1 as i128, d2 as i128);
    let n = a + b;
    let _ = n;
    let w0 = fams.omega0.eval(k);
    let w1 = fams.omega1.eval(k);
    let w2 = fams.omega2.eval(k);
    let lead = Rational::from_int(2 * a) + Rational::from_int(b) * k;
    let denom = &lead * &w0 * &w2;
    if denom.is_zero() {
        return Err(ThresholdError::ZeroDenominator("omega discriminant bound"));
    }
    // Ω(k) = −ω₁²/((2d₁+d₂k)ω₀ω₂)·d₂(d₂−1)²/(4(d₁−1))
    let omega = -(w1.pow(2)) / denom * bohm_factor(a, b);

    let r1 = Rational::from_int(a) + Rational::from_int(b) * k - Rational::one(); // d₁+d₂k−1
    let r2 = Rational::from_int(a) + Rational::from_int(b - 1) * k; // d₁+kd₂−k
    let r3 = Rational::from_int(a * (n + a - 2)) + Rational::from_int(b * (n + a - 1)) * k;
    let xi_denom = Rational::from_int(4 * (a - 1)) * &r2 * &r3;
    if xi_denom.is_zero() {
        return Err(ThresholdError::ZeroDenominator("P_Y discriminant bound"));
    }
    let xi = Rational::from_int(b * (b - 1) * (b - 1)) * r1.pow(2) / xi_denom;
    Ok(OmegaXiBounds { omega, xi })
}

/// Classification outcome tags.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerdictTag {
    /// `A = 0`: the bundle is trivial and carries a product Einstein metric.
    ExistenceProduct,
    /// At least one cohomogeneity one Einstein metric exists.
    Existence,
    /// Existence upgraded by the numerical second-metric criterion.
    TwoMetricsNumeric,
    /// Non-existence because the homogeneous discriminant is non-positive.
    NonexistenceBohm,
    /// Non-existence from the two-summands obstruction `A ≥ Ψ`.
    NonexistenceTwoSummands,
    /// No implemented criterion applies.
    Indeterminable,
}

impl fmt::Display for VerdictTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            VerdictTag::ExistenceProduct => "ExistenceProduct",
            VerdictTag::Existence => "Existence",
            VerdictTag::TwoMetricsNumeric => "TwoMetricsNumeric",
            VerdictTag::NonexistenceBohm => "NonexistenceBohm",
            VerdictTag::NonexistenceTwoSummands => "NonexistenceTwoSummands",
            VerdictTag::Indeterminable => "Indeterminable",
        };
        f.write_str(s)
    }
}

/// Classification verdict with the full evidence ladder: every threshold
/// comparison that was evaluated, in order, as `(predicate, value)` pairs.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Verdict {
    pub tag: VerdictTag,
    pub evidence: Vec<(String, String)>,
}

/// Full exact threshold report for a triple.
#[derive(Clone, Debug, Serialize)]
pub struct ThresholdReport {
    pub delta: Rational,
    pub bohm_lower: Rational,
    pub bohm_focus_upper: Option<Rational>,
    pub chi_tilde: Option<Rational>,
    pub psi: Rational,
    pub a1: ThresholdValue,
    pub a2_check: bool,
    pub omega_at_0: Rational,
    pub omega_at_1: Rational,
}

/// Assemble the threshold report for a triple (exact throughout).
pub fn threshold_report(triple: &StructuralTriple) -> ThresholdReport {
    let (d1, d2) = (triple.d1, triple.d2);
    let (a, b) = (d1 as i128, d2 as i128);
    ThresholdReport {
        delta: triple.delta(),
        bohm_lower: bohm_lower(d1, d2),
        bohm_focus_upper: focus_upper_bound(d1, d2),
        chi_tilde: chi_tilde(d1, d2).ok(),
        psi: psi(d1, d2).expect("validated triple"),
        a1: a1_threshold(d1, d2).expect("validated triple"),
        a2_check: check_a2_sufficient(triple),
        omega_at_0: Rational::new(b * (b - 1) * (b - 1), a * a * (a * b - b + 4)),
        omega_at_1: bohm_lower(d1, d2),
    }
}

/// Decide existence / non-existence / indeterminacy of a cohomogeneity one
/// Einstein metric for the given structural triple.
///
/// Decision ladder (exact non-existence before sufficient existence):
/// 1. `A = 0` → [`VerdictTag::ExistenceProduct`];
/// 2. `Δ ≤ 0` → [`VerdictTag::NonexistenceBohm`];
/// 3. `(d₁,d₂) ∉ {(2,2),(2,3),(2,4)}` and `A ≥ Ψ` →
///    [`VerdictTag::NonexistenceTwoSummands`];
/// 4. `d₁ ∈ {2,3}` and `A ≤ χ̃` → [`VerdictTag::Existence`];
/// 5. `A < A₁` and the `Θ`-positivity check → [`VerdictTag::Existence`];
/// 6. otherwise [`VerdictTag::Indeterminable`].
///
/// [`VerdictTag::TwoMetricsNumeric`] is never produced here; the dynamics
/// layer may upgrade an `Existence` verdict after its limit computation.
pub fn classify(triple: &StructuralTriple) -> Verdict {
    let mut evidence: Vec<(String, String)> = Vec::new();
    fn push(evidence: &mut Vec<(String, String)>, pred: &str, val: String) {
        evidence.push((pred.to_string(), val));
    }

    // Rung 1: product degeneration.
    push(&mut evidence, "A = 0", format!("A = {}", triple.a));
    if triple.a.is_zero() {
        return Verdict {
            tag: VerdictTag::ExistenceProduct,
            evidence,
        };
    }

    // Rung 2: homogeneous discriminant.
    let delta = triple.delta();
    push(&mut evidence, "delta <= 0", format!("delta = {delta}"));
    if !delta.is_positive() {
        return Verdict {
            tag: VerdictTag::NonexistenceBohm,
            evidence,
        };
    }

    // Rung 3: two-summands non-existence (excluded for three small pairs).
    let excluded = matches!((triple.d1, triple.d2), (2, 2) | (2, 3) | (2, 4));
    if !excluded {
        let psi_v = psi(triple.d1, triple.d2).expect("validated triple");
        push(
            &mut evidence,
            "A >= psi",
            format!("psi = {psi_v}, A = {}", triple.a),
        );
        if triple.a >= psi_v {
            return Verdict {
                tag: VerdictTag::NonexistenceTwoSummands,
                evidence,
            };
        }
    } else {
        push(
            &mut evidence,
            "A >= psi",
            "skipped: pair excluded from the two-summands obstruction".to_string(),
        );
    }

    // Rung 4: simplified sufficient existence threshold.
    if triple.d1 <= 3 {
        let chi = chi_tilde(triple.d1, triple.d2).expect("d1 in {2,3}");
        push(
            &mut evidence,
            "A <= chi_tilde",
            format!("chi_tilde = {chi}, A = {}", triple.a),
        );
        if triple.a <= chi {
            return Verdict {
                tag: VerdictTag::Existence,
                evidence,
            };
        }
    } else {
        push(
            &mut evidence,
            "A <= chi_tilde",
            "skipped: chi_tilde undefined for d1 >= 4".to_string(),
        );
    }

    // Rung 5: A < A₁ together with the Θ-positivity (sufficient A₂) check.
    let a1 = a1_threshold(triple.d1, triple.d2).expect("validated triple");
    let below_a1 = a1.strictly_above(&triple.a);
    push(
        &mut evidence,
        "A < a1",
        format!("a1 = {a1}, A = {}", triple.a),
    );
    if below_a1 {
        let theta_ok = check_a2_sufficient(triple);
        push(
            &mut evidence,
            "theta positive on (0,1)",
            format!("{theta_ok}"),
        );
        if theta_ok {
            return Verdict {
                tag: VerdictTag::Existence,
                evidence,
            };
        }
    }

    push(
        &mut evidence,
        "fallthrough",
        "no exact criterion applies; sufficient check failed or A >= a1".to_string(),
    );
    Verdict {
        tag: VerdictTag::Indeterminable,
        evidence,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::IntervalSign;

    fn triple(d1: u32, d2: u32, a: &str) -> StructuralTriple {
        StructuralTriple::new(d1, d2, a.parse().unwrap()).unwrap()
    }

    #[test]
    fn px_vanishes_at_one() {
        for (d1, d2) in [(2u32, 2u32), (2, 5), (3, 7), (4, 9)] {
            let fams = build_families(d1, d2).unwrap();
            assert!(fams.p_x.eval(&rat(1)).is_zero(), "({d1},{d2})");
        }
    }

    #[test]
    fn omega_closed_form_values_at_one() {
        // ω₂(1) = −d₂(n−1)(d₁n−n−d₁), ω₀(1) = d₂(n−1)(d₁n−n−d₁).
        let fams = build_families(2, 2).unwrap();
        assert_eq!(fams.omega2.eval(&rat(1)), rat(-12));
        assert_eq!(fams.omega0.eval(&rat(1)), rat(12));
        for (d1, d2) in [(3u32, 5u32), (4, 7), (6, 11)] {
            let fams = build_families(d1, d2).unwrap();
            let (a, b) = (d1 as i64, d2 as i64);
            let n = a + b;
            let expect = rat(b * (n - 1) * (a * n - n - a));
            assert_eq!(fams.omega2.eval(&rat(1)), -expect.clone());
            assert_eq!(fams.omega0.eval(&rat(1)), expect);
        }
    }

    #[test]
    fn omega_identity_against_defining_relation() {
        // ω = Q_Y·P_X − Q_X·P_Y as polynomials in k, coefficient of each
        // power of l, for a spread of dimensions and weights.
        for (d1, d2) in [(2u32, 2u32), (2, 3), (3, 5), (4, 8), (5, 8), (7, 8)] {
            let fams = build_families(d1, d2).unwrap();
            for a_str in ["1/8", "1/2", "3"] {
                let a_val: Rational = a_str.parse().unwrap();
                let omega = fams.omega(&a_val);
                let p_y = fams.p_y(&a_val);
                let q_y = fams.q_y(&a_val);
                let lhs2 = &(&q_y.c2 * &fams.p_x) - &(&fams.q_x * &p_y.c2);
                let lhs1 = &(&q_y.c1 * &fams.p_x) - &(&fams.q_x * &p_y.c1);
                let lhs0 = &(&q_y.c0 * &fams.p_x) - &(&fams.q_x * &p_y.c0);
                assert_eq!(lhs2, omega.c2, "c2 ({d1},{d2},{a_str})");
                assert_eq!(lhs1, omega.c1, "c1 ({d1},{d2},{a_str})");
                assert_eq!(lhs0, omega.c0, "c0 ({d1},{d2},{a_str})");
            }
        }
    }

    #[test]
    fn zeta_identity_against_defining_relation() {
        // ζ = T_Y·P_X − T_X·P_Y with T_X = d₁ + d₂k² − (d₁+d₂k)² and
        // T_Y = −d₁A·l² + (d₂(d₂−1) − (n−1)τ)·l + d₁(d₁−1).
        for (d1, d2) in [(2u32, 2u32), (2, 4), (3, 3), (3, 8), (5, 8)] {
            let (a, b) = (d1 as i128, d2 as i128);
            let n = a + b;
            let fams = build_families(d1, d2).unwrap();
            for a_str in ["1/8", "1/2", "3"] {
                let t = triple(d1, d2, a_str);
                let zeta = fams.zeta(&t);
                let tau = t.tau();
                let t_x = poly(&[a - a * a, -2 * a * b, b - b * b]);
                let ty2 = PolyQ::constant(Rational::from_int(-a) * &t.a);
                let ty1 = PolyQ::constant(
                    Rational::from_int(b * (b - 1)) - Rational::from_int(n - 1) * &tau,
                );
                let ty0 = PolyQ::constant(Rational::from_int(a * (a - 1)));
                let p_y = fams.p_y(&t.a);
                assert_eq!(zeta.c2, &(&ty2 * &fams.p_x) - &(&t_x * &p_y.c2));
                assert_eq!(zeta.c1, &(&ty1 * &fams.p_x) - &(&t_x * &p_y.c1));
                assert_eq!(zeta.c0, &(&ty0 * &fams.p_x) - &(&t_x * &p_y.c0));
            }
        }
    }

    #[test]
    fn theta_printed_quintic_for_3_3_at_one_eighth() {
        let fams = build_families(3, 3).unwrap();
        let theta = fams.theta_at(&ratq(1, 8));
        // 166941k⁵ + 535086k⁴ + 635688k³ + 379080k² + 166212k + 52488,
        // which is strictly positive on (0, 1).
        let expect = poly(&[52488, 166212, 379080, 635688, 535086, 166941]);
        assert_eq!(theta, expect);
    }

    #[test]
    fn psi_table_values() {
        let cases = [
            (5u32, 8u32, "186494/198025"),
            (7, 8, "8879/20886"),
            (7, 14, "11/6"),
            (11, 64, "26823819708/1214772845"),
            (15, 128, "28882022881/576131150"),
        ];
        for (d1, d2, expect) in cases {
            assert_eq!(psi(d1, d2).unwrap(), expect.parse().unwrap(), "({d1},{d2})");
        }
    }

    #[test]
    fn chi_tilde_values() {
        assert_eq!(chi_tilde(2, 4).unwrap(), rat(1));
        assert_eq!(chi_tilde(2, 28).unwrap(), rat(63));
        assert_eq!(chi_tilde(3, 19).unwrap(), ratq(76, 9));
        assert_eq!(chi_tilde(3, 20).unwrap(), ratq(3 * 20 * 361, 2 * 784));
        assert!(chi_tilde(4, 5).is_err());
    }

    #[test]
    fn a1_threshold_values() {
        assert_eq!(
            a1_threshold(4, 4).unwrap(),
            ThresholdValue::Rational(ratq(9, 64))
        );
        assert_eq!(
            a1_threshold(2, 2).unwrap(),
            ThresholdValue::Rational(ratq(1, 12))
        );
        match a1_threshold(3, 3).unwrap() {
            ThresholdValue::Surd(s) => {
                // 364/513 − (112/1539)√63, with √63 normalized to 3√7.
                let expect = QuadraticSurd::new(ratq(364, 513), ratq(-112, 1539), 63);
                assert_eq!(s, expect);
                assert!((s.to_f64() - 0.1319).abs() < 5e-4);
                assert_eq!(
                    s.cmp_rational(&ratq(13, 100)),
                    std::cmp::Ordering::Greater
                );
                assert_eq!(s.cmp_rational(&ratq(1, 8)), std::cmp::Ordering::Greater);
            }
            other => panic!("expected surd, got {other:?}"),
        }
    }

    #[test]
    fn discriminant_and_mu_cases() {
        // Double root at A on the boundary.
        let t = triple(3, 6, "25/16");
        let rep = discriminant_and_mu(&t);
        assert!(rep.delta.is_zero());
        let mu = QuadraticSurd::from_rational(ratq(4, 5));
        assert_eq!(rep.mu2.unwrap(), mu);
        assert_eq!(rep.mu1.unwrap(), mu);

        let t = triple(7, 7, "1/2");
        assert!(discriminant_and_mu(&t).delta.is_zero());

        // (2,4,1): roots {1, 1/2}.
        let t = triple(2, 4, "1");
        let rep = discriminant_and_mu(&t);
        assert_eq!(rep.mu1.unwrap(), QuadraticSurd::from_rational(rat(1)));
        assert_eq!(rep.mu2.unwrap(), QuadraticSurd::from_rational(ratq(1, 2)));

        // A = 0 degeneration.
        let t = triple(2, 4, "0");
        let rep = discriminant_and_mu(&t);
        assert!(rep.mu1.is_none());
        assert_eq!(rep.mu2.unwrap(), QuadraticSurd::from_rational(ratq(1, 3)));

        // Δ < 0: no real roots.
        let t = triple(7, 8, "3");
        let rep = discriminant_and_mu(&t);
        assert!(rep.delta.is_negative());
        assert!(rep.mu1.is_none() && rep.mu2.is_none());
    }

    #[test]
    fn a2_sufficient_check() {
        assert!(check_a2_sufficient(&triple(3, 3, "1/8")));
        assert!(check_a2_sufficient(&triple(4, 4, "9/64")));
        // Large A on (5,8) must eventually fail the positivity check.
        let fams = build_families(5, 8).unwrap();
        let big = rat(100);
        assert!(matches!(
            fams.theta_at(&big)
                .sign_on_interval(&rat(0), &rat(1), true, true),
            IntervalSign::Mixed { .. } | IntervalSign::StrictlyNegative
        ));
        assert!(!check_a2_sufficient(&triple(5, 8, "100")));
    }

    #[test]
    fn classify_ladder() {
        assert_eq!(classify(&triple(2, 4, "0")).tag, VerdictTag::ExistenceProduct);
        assert_eq!(
            classify(&triple(3, 6, "25/16")).tag,
            VerdictTag::NonexistenceBohm
        );
        assert_eq!(
            classify(&triple(7, 8, "1/2")).tag,
            VerdictTag::NonexistenceTwoSummands
        );
        assert_eq!(classify(&triple(2, 28, "63")).tag, VerdictTag::Existence);
        assert_eq!(classify(&triple(3, 3, "1/8")).tag, VerdictTag::Existence);
        assert_eq!(
            classify(&triple(5, 20, "361/50")).tag,
            VerdictTag::Indeterminable
        );
        // Evidence ladder is populated.
        let v = classify(&triple(7, 8, "1/2"));
        assert!(v.evidence.len() >= 2);
    }

    #[test]
    fn focus_condition_cases() {
        assert!(focus_condition(&triple(2, 4, "1/100")));
        assert!(!focus_condition(&triple(7, 8, "1/2")));
        assert!(!focus_condition(&triple(2, 2, "1")));
        assert_eq!(
            focus_upper_bound(2, 4).unwrap(),
            ratq(7, 9) // (9−6)(24+42+18)/(12−48−18)²·(4·9/4) = 3·84/2916·9
        );
    }

    #[test]
    fn omega_xi_boundary_values() {
        for (d1, d2) in [(2u32, 5u32), (3, 7), (7, 8)] {
            let (a, b) = (d1 as i128, d2 as i128);
            let n = a + b;
            // k → 0 and k → 1 limits match the closed forms (evaluated at
            // interior points very close to the ends they are continuous,
            // but the formulas are exact at the ends themselves).
            let at0 = omega_xi_bounds(d1, d2, &rat(0)).unwrap();
            assert_eq!(
                at0.omega,
                Rational::new(b * (b - 1) * (b - 1), a * a * (a * b - b + 4))
            );
            let at1 = omega_xi_bounds(d1, d2, &rat(1)).unwrap();
            let bohm = Rational::new(b * (b - 1) * (b - 1), 4 * (a - 1) * (n + a));
            assert_eq!(at1.omega, bohm);
            assert_eq!(at1.xi, bohm);
        }
    }

    #[test]
    fn omega_interior_positive() {
        for (d1, d2) in [(2u32, 2u32), (3, 8), (7, 8), (11, 64)] {
            for num in 1..8i64 {
                let v = omega_xi_bounds(d1, d2, &ratq(num, 8)).unwrap();
                assert!(v.omega.is_positive(), "omega ({d1},{d2}) at {num}/8");
                assert!(v.xi.is_positive(), "xi ({d1},{d2}) at {num}/8");
            }
        }
    }

    #[test]
    fn triple_validation() {
        assert!(StructuralTriple::new(1, 5, rat(1)).is_err());
        assert!(StructuralTriple::new(3, 2, rat(1)).is_err());
        assert!(StructuralTriple::new(2, 2, rat(-1)).is_err());
    }
}
