//! Exact computation of the Υ concordance invariant of torus knots and their
//! connected sums, Levine–Tristram signatures of braid closures, and the
//! cobordism-distance and braid-index bounds built from them.

pub mod bounds;
pub mod braid;
pub mod error;
pub mod homogenize;
pub mod knot;
pub mod plcalc;
pub mod poly;
pub mod rational;
pub mod selftest;
pub mod semigroup;
pub mod signature;
pub mod svg;
pub mod upsilon;

pub use error::{Error, Result};
pub use rational::Rational;
