//! Existence analysis and numerical construction of cohomogeneity one
//! Einstein metrics on two-summands double disk bundles.
//!
//! A metric candidate is described by a structural triple `(d₁, d₂, A)`:
//! fiber dimension, base dimension, and the squared norm of the O'Neill
//! tensor of the underlying homogeneous fibration. The crate
//!
//! * decides existence / non-existence / indeterminacy exactly, via
//!   certified polynomial positivity and threshold comparisons
//!   ([`thresholds`]),
//! * constructs metrics numerically by shooting for heteroclines of a
//!   compactified first-order system ([`dynamics`]),
//! * inverts the compactification to recover metric profiles and checks the
//!   Einstein equations on them ([`reconstruct`]), and
//! * ships a catalog of homogeneous principal orbits with their structural
//!   data and expected verdicts ([`catalog`]).

pub mod catalog;
pub mod dynamics;
pub mod exact;
pub mod reconstruct;
pub mod thresholds;
