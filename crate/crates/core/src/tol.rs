//! Numeric tolerances and resource caps.
//!
//! Genuine cancellation in this engine comes from IEEE double rounding and
//! sits at ~1e-15 relative; genuinely distinct parameters in the equations
//! differ by at least ~1e-3. MERGE sits between the two with more than six
//! orders of margin each way.

/// Canonical-form tolerance: exponents closer than this (∞-norm, relative to
/// max(1, ‖q‖∞)) are merged, and coefficients below this fraction of the
/// containing polynomial's scale are dropped.
pub const MERGE: f64 = 1e-9;

/// Absolute floor below which a coefficient is dropped regardless of scale.
pub const ABS_FLOOR: f64 = 1e-300;

/// Default tolerance for scalar constraint identities.
pub const SCALAR_CONSTRAINT: f64 = 1e-9;

/// Real part of an exponent beyond which exp() evaluation is flagged
/// (f64 exp overflows near 709).
pub const OVERFLOW_RE: f64 = 700.0;

/// Total-degree cap for polynomials; exceeded caps fail loudly.
pub const MAX_DEGREE: u32 = 64;

/// Term-count cap; multiplication is quadratic in term count.
pub const MAX_TERMS: usize = 1_000_000;

/// Deduplication radius for Newton roots.
pub const ROOT_DEDUP: f64 = 1e-8;

/// Newton convergence tolerance.
pub const NEWTON: f64 = 1e-12;
