//! Exact Diophantine approximation and equidistribution experiments over the field of
//! formal Laurent series `K = F_q((1/t))` and its polynomial ring `Z = F_q[t]`.
//!
//! The crate is organized bottom-up:
//!
//! * [`algebra`]: `F_q`, `F_q[t]`, finite-support Laurent numbers and log-norms.
//! * [`lattice`]: weak Popov reduction of `F_q[t]`-lattices, shortest vectors,
//!   the height `alpha`, wedge covolumes and exact point enumeration.
//! * [`diophantine`]: weighted quasi-norms, the regions `E_{T,R}` / `F_{S,R}`, their
//!   exact volumes, solution counters and the expectation oracle.
//! * [`dynamics`]: the diagonal flow, Siegel transforms and Birkhoff averages.
//! * [`experiments`]: seeded sampling, statistical experiments and brute-force oracles.
//!
//! Measures are generic over [`Scalar`]; [`Rational`] is the exact instantiation used
//! everywhere results are compared, `f64` is available for quick inspection.

pub mod algebra;
pub mod diophantine;
pub mod dynamics;
pub mod experiments;
pub mod lattice;
mod scalar;

pub use scalar::Scalar;

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;
/// Arbitrary precision integer.
pub type Integer = num_bigint::BigInt;
/// Exact measure values.
pub type ExactMeasure = Rational;
/// Floating point measure values.
pub type FloatMeasure = f64;
