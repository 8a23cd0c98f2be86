//! Quadratics in the slice ratio `l` whose coefficients are polynomials in
//! `k`, together with exact resultants that eliminate `l`.
//!
//! Families that carry a weight `A` on some coefficients resolve that
//! dependence at construction time by substituting a rational `A`, so a
//! stored value is always a pure `C2(k)·l² + C1(k)·l + C0(k)`.

use super::poly::PolyQ;
use super::rational::Rational;
use std::fmt;

/// `C2(k)·l² + C1(k)·l + C0(k)` with exact polynomial coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadraticInL {
    pub c2: PolyQ,
    pub c1: PolyQ,
    pub c0: PolyQ,
}

impl QuadraticInL {
    pub fn new(c2: PolyQ, c1: PolyQ, c0: PolyQ) -> Self {
        QuadraticInL { c2, c1, c0 }
    }

    pub fn is_zero(&self) -> bool {
        self.c2.is_zero() && self.c1.is_zero() && self.c0.is_zero()
    }

    /// Exact evaluation at `(k, l)`.
    pub fn eval(&self, k: &Rational, l: &Rational) -> Rational {
        (self.c2.eval(k) * l + self.c1.eval(k)) * l + self.c0.eval(k)
    }

    /// Coefficients in descending degree of `l`, with identically-zero
    /// leading coefficients removed.
    fn coeffs_desc(&self) -> Vec<&PolyQ> {
        let mut v = vec![&self.c2, &self.c1, &self.c0];
        while v.len() > 1 && v[0].is_zero() {
            v.remove(0);
        }
        if v.len() == 1 && v[0].is_zero() {
            v.clear();
        }
        v
    }
}

impl fmt::Debug for QuadraticInL {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})*l^2 + ({:?})*l + ({:?})", self.c2, self.c1, self.c0)
    }
}

/// Resultant in `l` of two quadratics, as a polynomial in `k`.
///
/// For genuine quadratics this is the closed 2×2 formula
/// `(a₂b₀ − a₀b₂)² − (a₁b₀ − a₀b₁)(a₂b₁ − a₁b₂)`, which equals the 4×4
/// Sylvester determinant. Degenerate leading coefficients (identically zero
/// `c2`) fall back to the Sylvester matrix of the true degrees.
pub fn quad_resultant_in_l(f: &QuadraticInL, g: &QuadraticInL) -> PolyQ {
    if !f.c2.is_zero() && !g.c2.is_zero() {
        let (a2, a1, a0) = (&f.c2, &f.c1, &f.c0);
        let (b2, b1, b0) = (&g.c2, &g.c1, &g.c0);
        let m0 = &(a2 * b0) - &(a0 * b2);
        let m1 = &(a1 * b0) - &(a0 * b1);
        let m2 = &(a2 * b1) - &(a1 * b2);
        return &(&m0 * &m0) - &(&m1 * &m2);
    }
    sylvester_resultant(&f.coeffs_desc(), &g.coeffs_desc())
}

/// Sylvester resultant for descending coefficient lists of any small degree.
fn sylvester_resultant(f: &[&PolyQ], g: &[&PolyQ]) -> PolyQ {
    // Conventions for degenerate inputs: Res(const, const) = 1 (empty
    // matrix); Res with a zero polynomial = 0.
    if f.is_empty() || g.is_empty() {
        return PolyQ::zero();
    }
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    if size == 0 {
        return PolyQ::constant(Rational::one());
    }
    let mut rows: Vec<Vec<PolyQ>> = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![PolyQ::zero(); size];
        for (j, c) in f.iter().enumerate() {
            row[shift + j] = (*c).clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![PolyQ::zero(); size];
        for (j, c) in g.iter().enumerate() {
            row[shift + j] = (*c).clone();
        }
        rows.push(row);
    }
    determinant(rows)
}

/// Determinant by Laplace expansion along the first column; matrices here
/// are at most 4×4 so the factorial cost is irrelevant.
fn determinant(m: Vec<Vec<PolyQ>>) -> PolyQ {
    let n = m.len();
    if n == 0 {
        return PolyQ::constant(Rational::one());
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det = PolyQ::zero();
    for i in 0..n {
        if m[i][0].is_zero() {
            continue;
        }
        let minor: Vec<Vec<PolyQ>> = m
            .iter()
            .enumerate()
            .filter(|(r, _)| *r != i)
            .map(|(_, row)| row[1..].to_vec())
            .collect();
        let term = &m[i][0] * &determinant(minor);
        det = if i % 2 == 0 { &det + &term } else { &det - &term };
    }
    det
}
