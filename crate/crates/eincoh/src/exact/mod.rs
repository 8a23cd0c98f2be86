//! Exact arithmetic layer: rationals, quadratic surds, univariate rational
//! polynomials with Sturm-certified sign analysis, and resultants of
//! quadratics in the slice ratio `l`.
//!
//! Everything here is exact; no floating point enters until the dynamics
//! layer. All values are immutable after construction and freely shareable
//! across threads.

pub mod lquad;
pub mod poly;
pub mod rational;
pub mod surd;

pub use lquad::{quad_resultant_in_l, QuadraticInL};
pub use poly::{IntervalSign, PolyQ};
pub use rational::{rat, ratq, ParseRationalError, Rational};
pub use surd::QuadraticSurd;
