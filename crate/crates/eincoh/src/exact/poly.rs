//! Dense univariate polynomials with exact rational coefficients, plus
//! Sturm-sequence machinery for certified root counting and sign analysis
//! on intervals.
//!
//! Coefficients are stored in ascending degree and kept normalized (no
//! trailing zero coefficients). Degrees stay small (≤ 8 for every family in
//! this crate), so classical quadratic-time arithmetic is plenty.

use super::rational::Rational;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense univariate polynomial over the rationals, ascending coefficients.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct PolyQ {
    coeffs: Vec<Rational>,
}

/// Result of exact sign determination on an interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntervalSign {
    StrictlyPositive,
    StrictlyNegative,
    /// The polynomial vanishes somewhere on the interval. Each entry is a
    /// rational isolating interval `[lo, hi]` (degenerate when the root is
    /// rational and hit exactly) of width below 2⁻⁴⁰, one per distinct root.
    Mixed { roots: Vec<(Rational, Rational)> },
    /// Distinct code for the zero polynomial: never "strictly" anything.
    ZeroPolynomial,
}

/// Isolating-interval refinement target: width below 2⁻⁴⁰ seeds binary64
/// numerics with roughly 12 correct digits.
fn refinement_width() -> Rational {
    Rational::new(1, 1i64 << 40)
}

impl PolyQ {
    /// Build from ascending coefficients; trailing zeros are trimmed.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        PolyQ { coeffs }
    }

    pub fn zero() -> Self {
        PolyQ { coeffs: vec![] }
    }

    pub fn constant(c: Rational) -> Self {
        PolyQ::new(vec![c])
    }

    /// `c·x^deg`.
    pub fn monomial(c: Rational, deg: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); deg + 1];
        coeffs[deg] = c;
        PolyQ::new(coeffs)
    }

    /// Ascending-degree integer coefficients, for readable constructors.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        PolyQ::new(coeffs.iter().map(|&c| Rational::from_int(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> PolyQ {
        if c.is_zero() {
            return PolyQ::zero();
        }
        PolyQ {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn derivative(&self) -> PolyQ {
        if self.coeffs.len() <= 1 {
            return PolyQ::zero();
        }
        PolyQ::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| Rational::from_int(i as i64) * c)
                .collect(),
        )
    }

    /// Exact Euclidean division; returns `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &PolyQ) -> (PolyQ, PolyQ) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dlead = divisor.leading().unwrap().clone();
        let ddeg = divisor.degree().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(ddeg)];
        while rem.len() > ddeg {
            let shift = rem.len() - 1 - ddeg;
            let factor = rem.last().unwrap() / &dlead;
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                let t = &factor * dc;
                rem[shift + i] = &rem[shift + i] - &t;
            }
            // The leading term cancels by construction.
            rem.pop();
            while rem.last().is_some_and(Rational::is_zero) {
                rem.pop();
            }
            quot[shift] = factor;
            if rem.len() <= ddeg {
                break;
            }
        }
        (PolyQ::new(quot), PolyQ::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &PolyQ) -> PolyQ {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        match a.leading() {
            Some(l) => {
                let inv = l.recip();
                a.scale(&inv)
            }
            None => a,
        }
    }

    /// Square-free part `p / gcd(p, p′)` (same distinct real roots).
    pub fn squarefree_part(&self) -> PolyQ {
        if self.is_zero() {
            return PolyQ::zero();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            self.clone()
        } else {
            self.div_rem(&g).0
        }
    }

    /// Sturm chain of the square-free part.
    fn sturm_chain(squarefree: &PolyQ) -> Vec<PolyQ> {
        let mut chain = vec![squarefree.clone(), squarefree.derivative()];
        while !chain.last().unwrap().is_zero() {
            let n = chain.len();
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            chain.push(-r);
        }
        chain.pop();
        chain
    }

    /// Number of distinct real roots in the open interval `(lo, hi)`.
    pub fn count_roots_in_open(&self, lo: &Rational, hi: &Rational) -> usize {
        assert!(lo < hi, "empty interval");
        if self.is_zero() {
            panic!("root counting on the zero polynomial");
        }
        let mut q = self.squarefree_part();
        // Sturm's theorem needs nonvanishing endpoints; deflate exact
        // endpoint roots (they lie outside the open interval anyway).
        for endpoint in [lo, hi] {
            while q.eval(endpoint).is_zero() {
                let linear = PolyQ::new(vec![-endpoint, Rational::one()]);
                q = q.div_rem(&linear).0;
            }
        }
        if q.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let chain = Self::sturm_chain(&q);
        sign_variations(&chain, lo).saturating_sub(sign_variations(&chain, hi))
    }

    /// Certified sign on the interval between `lo` and `hi`; `lo_open` /
    /// `hi_open` select open or closed endpoints.
    pub fn sign_on_interval(
        &self,
        lo: &Rational,
        hi: &Rational,
        lo_open: bool,
        hi_open: bool,
    ) -> IntervalSign {
        assert!(lo < hi, "empty interval");
        if self.is_zero() {
            return IntervalSign::ZeroPolynomial;
        }
        let mut roots: Vec<(Rational, Rational)> = Vec::new();
        if !lo_open && self.eval(lo).is_zero() {
            roots.push((lo.clone(), lo.clone()));
        }
        let interior = self.isolate_roots_open(lo, hi);
        roots.extend(interior);
        if !hi_open && self.eval(hi).is_zero() {
            roots.push((hi.clone(), hi.clone()));
        }
        if !roots.is_empty() {
            return IntervalSign::Mixed { roots };
        }
        // No roots on the (closure-adjusted) interval: the sign is constant
        // and any interior point witnesses it.
        let mid = (lo + hi) * Rational::new(1, 2);
        match self.eval(&mid).sign() {
            Ordering::Greater => IntervalSign::StrictlyPositive,
            Ordering::Less => IntervalSign::StrictlyNegative,
            Ordering::Equal => unreachable!("midpoint root escaped isolation"),
        }
    }

    /// Isolating intervals (refined below 2⁻⁴⁰) for distinct roots in the
    /// open interval `(lo, hi)`, in ascending order.
    pub fn isolate_roots_open(&self, lo: &Rational, hi: &Rational) -> Vec<(Rational, Rational)> {
        let total = self.count_roots_in_open(lo, hi);
        let mut out = Vec::with_capacity(total);
        if total > 0 {
            self.isolate_recurse(lo, hi, total, &mut out);
        }
        out
    }

    fn isolate_recurse(
        &self,
        lo: &Rational,
        hi: &Rational,
        count: usize,
        out: &mut Vec<(Rational, Rational)>,
    ) {
        debug_assert!(count > 0);
        let width = hi - lo;
        if count == 1 && width < refinement_width() {
            out.push((lo.clone(), hi.clone()));
            return;
        }
        let mid = (lo + hi) * Rational::new(1, 2);
        let mid_is_root = self.eval(&mid).is_zero();
        let left = self.count_roots_in_open(lo, &mid);
        let right = count - left - usize::from(mid_is_root);
        if left > 0 {
            self.isolate_recurse(lo, &mid, left, out);
        }
        if mid_is_root {
            out.push((mid.clone(), mid.clone()));
        }
        if right > 0 {
            self.isolate_recurse(&mid, hi, right, out);
        }
    }
}

/// Sign variations of the chain evaluated at `x`, ignoring zeros.
fn sign_variations(chain: &[PolyQ], x: &Rational) -> usize {
    let mut prev: Option<Ordering> = None;
    let mut variations = 0;
    for p in chain {
        let s = p.eval(x).sign();
        if s == Ordering::Equal {
            continue;
        }
        if let Some(prev_sign) = prev {
            if prev_sign != s {
                variations += 1;
            }
        }
        prev = Some(s);
    }
    variations
}

impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let mag = c.abs();
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != Rational::one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "k")?;
                    } else {
                        write!(f, "k^{i}")?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &PolyQ {
    type Output = PolyQ;
    fn add(self, rhs: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyQ::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &PolyQ {
    type Output = PolyQ;
    fn sub(self, rhs: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyQ::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &PolyQ {
    type Output = PolyQ;
    fn mul(self, rhs: &PolyQ) -> PolyQ {
        if self.is_zero() || rhs.is_zero() {
            return PolyQ::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        PolyQ::new(coeffs)
    }
}

impl Neg for PolyQ {
    type Output = PolyQ;
    fn neg(self) -> PolyQ {
        PolyQ {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for &PolyQ {
    type Output = PolyQ;
    fn neg(self) -> PolyQ {
        PolyQ {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! impl_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for PolyQ {
            type Output = PolyQ;
            fn $method(self, rhs: PolyQ) -> PolyQ {
                (&self).$method(&rhs)
            }
        }
    };
}
impl_owned_binop!(Add, add);
impl_owned_binop!(Sub, sub);
impl_owned_binop!(Mul, mul);
