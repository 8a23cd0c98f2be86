//! Exact quadratic surds `a + b·√m`.
//!
//! Only a single square root is supported: every closed-form threshold in
//! this crate has that shape. The radicand is normalized to be square-free
//! (square factors are absorbed into `b`), so two surds are equal iff their
//! components are equal. Comparison against a rational is decided exactly by
//! a sign analysis that squares out the radical.

use super::rational::Rational;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// The exact value `a + b·√m` with `m` square-free (or zero).
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticSurd {
    pub a: Rational,
    pub b: Rational,
    pub m: u64,
}

impl QuadraticSurd {
    /// Build `a + b·√m`, normalizing the radicand to its square-free part.
    ///
    /// If `m` is a perfect square the value degenerates to a rational and is
    /// stored with `b = 0, m = 0`.
    pub fn new(a: Rational, b: Rational, m: u64) -> Self {
        if b.is_zero() || m == 0 {
            return QuadraticSurd {
                a,
                b: Rational::zero(),
                m: 0,
            };
        }
        let (square_root, free) = squarefree_decomposition(m);
        let b = b * Rational::from_int(square_root);
        if free == 1 {
            QuadraticSurd {
                a: a + b,
                b: Rational::zero(),
                m: 0,
            }
        } else {
            QuadraticSurd { a, b, m: free }
        }
    }

    pub fn from_rational(a: Rational) -> Self {
        QuadraticSurd {
            a,
            b: Rational::zero(),
            m: 0,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Exact sign of the value.
    pub fn sign(&self) -> Ordering {
        if self.b.is_zero() {
            return self.a.sign();
        }
        if self.a.is_zero() {
            return self.b.sign();
        }
        let sa = self.a.sign();
        let sb = self.b.sign();
        if sa == sb {
            return sa;
        }
        // Opposite signs: compare a² against b²·m; the larger magnitude wins.
        let a2 = self.a.pow(2);
        let b2m = self.b.pow(2) * Rational::from_int(self.m);
        match a2.cmp(&b2m) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    /// Exact trichotomy against a rational value.
    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        QuadraticSurd {
            a: &self.a - r,
            b: self.b.clone(),
            m: self.m,
        }
        .sign()
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * (self.m as f64).sqrt()
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.b.is_negative() {
            write!(f, "{} - {}*sqrt({})", self.a, self.b.abs(), self.m)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.m)
        }
    }
}

impl fmt::Debug for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Split `m = s²·f` with `f` square-free; returns `(s, f)`.
///
/// Trial division runs over small primes only (≤ 10⁴) and finishes with a
/// perfect-square check on the remainder; a square factor whose prime
/// exceeds that bound is left in place. That never affects exactness of
/// comparisons (which square the radical), only canonical-form uniqueness,
/// and every closed-form radicand in this crate is tiny.
fn squarefree_decomposition(mut m: u64) -> (u64, u64) {
    assert!(m > 0);
    let mut s = 1u64;
    let mut f = 1u64;
    let mut p = 2u64;
    while p * p <= m && p <= 10_000 {
        if m % p == 0 {
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            s *= p.pow(e / 2);
            if e % 2 == 1 {
                f *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // Remainder: either 1, a prime, or a rough composite. Absorb it if it
    // is a perfect square, otherwise leave it under the radical.
    if m > 1 {
        let r = m.isqrt();
        if r * r == m {
            s *= r;
        } else {
            f *= m;
        }
    }
    (s, f)
}
