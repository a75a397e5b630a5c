//! Exponential polynomials over ℂⁿ and Fermat-type partial
//! differential-difference equations (PDDEs).
//!
//! The engine works in the class of finite sums Σ pᵢ(z)·exp(qᵢ(z)) with
//! polynomial pᵢ, qᵢ, which is closed under addition, multiplication,
//! partial differentiation and shifts z ↦ z + c. Within that class, equality
//! of functions reduces to equality of canonical forms (Borel-type linear
//! independence of exponentials), so identity verification is exact up to
//! floating-point cancellation.
//!
//! Modules:
//! - [`poly`]: sparse multivariate polynomials over ℂ, shifts, periodicity
//! - [`exppoly`]: the exponential-polynomial algebra and its canonical form
//! - [`pdde`]: the four Fermat-type equations, residuals, verification
//! - [`theorems`]: closed-form solution families and their constraints
//! - [`solver`]: completing parameter sets from the exponential constraints
//! - [`testkit`]: seeded random generators used by the test suites

pub mod error;
pub mod exppoly;
pub mod pdde;
pub mod poly;
pub mod solver;
pub mod testkit;
pub mod theorems;
pub mod tol;

pub use error::Error;
pub use exppoly::{ExpPoly, ExpTerm};
pub use poly::{MultiIndex, Point, Polynomial};

/// Complex scalar used throughout: a pair of 64-bit floats.
pub type Scalar = num_complex::Complex64;
