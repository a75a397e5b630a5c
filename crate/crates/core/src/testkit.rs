//! Seeded random generators shared by the property and acceptance suites.
//! Nothing here is used by the engine itself.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exppoly::ExpPoly;
use crate::poly::{Point, Polynomial};
use crate::Scalar;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform draw from the complex disc of the given radius.
pub fn random_scalar(rng: &mut ChaCha8Rng, radius: f64) -> Scalar {
    loop {
        let re: f64 = rng.gen_range(-radius..=radius);
        let im: f64 = rng.gen_range(-radius..=radius);
        if re * re + im * im <= radius * radius {
            return Scalar::new(re, im);
        }
    }
}

/// Nonzero scalar with magnitude in [lo, radius].
pub fn random_scalar_away_from_zero(rng: &mut ChaCha8Rng, radius: f64, lo: f64) -> Scalar {
    loop {
        let z = random_scalar(rng, radius);
        if z.norm() >= lo {
            return z;
        }
    }
}

pub fn random_point(rng: &mut ChaCha8Rng, dim: usize, radius: f64) -> Point {
    Point::new((0..dim).map(|_| random_scalar(rng, radius)).collect())
        .expect("random coordinates are finite")
}

/// Sparse polynomial with up to `max_terms` monomials of total degree at
/// most `max_degree`, coefficients in the disc of `radius`.
pub fn random_polynomial(
    rng: &mut ChaCha8Rng,
    dim: usize,
    max_degree: u32,
    max_terms: usize,
    radius: f64,
) -> Polynomial {
    let count = rng.gen_range(0..=max_terms);
    let mut raw = Vec::with_capacity(count);
    for _ in 0..count {
        let mut index = vec![0u32; dim];
        let mut budget = max_degree;
        for e in index.iter_mut() {
            let step = rng.gen_range(0..=budget);
            *e = step;
            budget -= step;
        }
        raw.push((index, random_scalar(rng, radius)));
    }
    Polynomial::from_terms(dim, raw).expect("random terms satisfy the caps")
}

/// Random exponential polynomial: up to `max_terms` terms with coefficient
/// polynomials of degree ≤ `coeff_degree` and exponents of degree ≤
/// `exp_degree` whose coefficients live in the disc of `exp_radius`.
pub fn random_exppoly(
    rng: &mut ChaCha8Rng,
    dim: usize,
    max_terms: usize,
    coeff_degree: u32,
    exp_degree: u32,
    exp_radius: f64,
) -> ExpPoly {
    let count = rng.gen_range(0..=max_terms);
    let mut raw = Vec::with_capacity(count);
    for _ in 0..count {
        let coeff = random_polynomial(rng, dim, coeff_degree, 3, 1.0);
        let exponent = random_polynomial(rng, dim, exp_degree, 3, exp_radius);
        raw.push((coeff, exponent));
    }
    ExpPoly::from_raw_terms(dim, raw).expect("random terms share the dimension")
}

/// Nonzero variant of [`random_exppoly`].
pub fn random_exppoly_nonzero(
    rng: &mut ChaCha8Rng,
    dim: usize,
    max_terms: usize,
    coeff_degree: u32,
    exp_degree: u32,
    exp_radius: f64,
) -> ExpPoly {
    loop {
        let f = random_exppoly(rng, dim, max_terms, coeff_degree, exp_degree, exp_radius);
        if !f.is_zero() {
            return f;
        }
    }
}

/// A term list that canonicalizes back to `f`: terms reshuffled, one split
/// in two, plus an added-and-subtracted decoy term.
pub fn obfuscated_copy(rng: &mut ChaCha8Rng, f: &ExpPoly) -> ExpPoly {
    let mut raw: Vec<(Polynomial, Polynomial)> = f
        .terms()
        .iter()
        .map(|t| (t.coeff().clone(), t.exponent().clone()))
        .collect();
    if let Some((coeff, exponent)) = raw.pop() {
        let t = random_scalar(rng, 1.0);
        let one_minus = Scalar::new(1.0, 0.0) - t;
        raw.push((coeff.scale(t), exponent.clone()));
        raw.push((coeff.scale(one_minus), exponent));
    }
    let decoy_coeff = random_polynomial(rng, f.dim(), 1, 2, 1.0);
    let decoy_exp = random_polynomial(rng, f.dim(), 1, 2, 1.0);
    raw.push((decoy_coeff.clone(), decoy_exp.clone()));
    raw.push((decoy_coeff.scale(Scalar::new(-1.0, 0.0)), decoy_exp));
    for i in (1..raw.len()).rev() {
        let j = rng.gen_range(0..=i);
        raw.swap(i, j);
    }
    ExpPoly::from_raw_terms(f.dim(), raw).expect("terms share the dimension")
}
