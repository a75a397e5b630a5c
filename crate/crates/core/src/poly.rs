//! Sparse multivariate polynomials over ℂ.
//!
//! Representation: `BTreeMap<MultiIndex, Scalar>` keyed by exponent vectors
//! of fixed length `dim`. Invariants after construction: no stored
//! coefficient is below the drop tolerance relative to the polynomial's
//! scale, every multi-index has length `dim`, and the zero polynomial is the
//! empty map.
//!
//! Cancellation control: every constructor accumulates raw contributions and
//! drops result coefficients that are tiny relative to the largest
//! contribution seen, so a sum that cancels to rounding noise normalizes to
//! an exact zero.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::tol;
use crate::Scalar;

/// Exponent vector of one monomial; length equals the ambient dimension.
pub type MultiIndex = Vec<u32>;

/// Total degree ‖I‖ of a multi-index.
pub fn index_length(index: &[u32]) -> u32 {
    index.iter().sum()
}

/// A point of ℂⁿ; also used as a shift vector c.
#[derive(Clone, Debug, PartialEq)]
pub struct Point {
    coords: Vec<Scalar>,
}

impl Point {
    pub fn new(coords: Vec<Scalar>) -> Result<Self, Error> {
        if coords.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        if coords
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        Ok(Point { coords })
    }

    pub fn zero(dim: usize) -> Self {
        Point {
            coords: vec![Scalar::new(0.0, 0.0); dim.max(1)],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    /// Coordinate at 1-based index.
    pub fn coord(&self, j: usize) -> Result<Scalar, Error> {
        if j == 0 || j > self.coords.len() {
            return Err(Error::IndexOutOfRange {
                index: j,
                dim: self.coords.len(),
            });
        }
        Ok(self.coords[j - 1])
    }

    pub fn plus(&self, other: &Point) -> Result<Point, Error> {
        check_dim(self.dim(), other.dim())?;
        Ok(Point {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn negated(&self) -> Point {
        Point {
            coords: self.coords.iter().map(|z| -z).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|z| z.norm() <= tol::MERGE)
    }
}

fn check_dim(expected: usize, found: usize) -> Result<(), Error> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// Accumulates raw (multi-index, value) contributions and tracks the largest
/// contribution magnitude, which is the scale against which near-total
/// cancellation is detected.
struct Accumulator {
    map: BTreeMap<MultiIndex, Scalar>,
    contribution: f64,
}

impl Accumulator {
    fn new() -> Self {
        Accumulator {
            map: BTreeMap::new(),
            contribution: 0.0,
        }
    }

    fn push(&mut self, index: MultiIndex, value: Scalar) {
        self.contribution = self.contribution.max(value.norm());
        let entry = self
            .map
            .entry(index)
            .or_insert_with(|| Scalar::new(0.0, 0.0));
        *entry += value;
    }

    fn finish(self, dim: usize) -> Polynomial {
        let result_max = self.map.values().map(|v| v.norm()).fold(0.0f64, f64::max);
        let threshold = tol::ABS_FLOOR.max(tol::MERGE * self.contribution.max(result_max));
        let terms: BTreeMap<MultiIndex, Scalar> = self
            .map
            .into_iter()
            .filter(|(_, v)| v.norm() > threshold)
            .collect();
        Polynomial { dim, terms }
    }
}

/// Sparse multivariate polynomial Σ a_I z₁^{i₁}⋯zₙ^{iₙ} over ℂ.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<MultiIndex, Scalar>,
}

impl Polynomial {
    pub fn zero(dim: usize) -> Self {
        Polynomial {
            dim: dim.max(1),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, value: Scalar) -> Self {
        let mut acc = Accumulator::new();
        acc.push(vec![0; dim.max(1)], value);
        acc.finish(dim.max(1))
    }

    /// The monomial z_j (1-based index).
    pub fn variable(dim: usize, j: usize) -> Result<Self, Error> {
        if j == 0 || j > dim {
            return Err(Error::IndexOutOfRange { index: j, dim });
        }
        let mut index = vec![0u32; dim];
        index[j - 1] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(index, Scalar::new(1.0, 0.0));
        Ok(Polynomial { dim, terms })
    }

    /// Σ `coeffs[j]`·z_{j+1}; `coeffs` must have length `dim`.
    pub fn linear(dim: usize, coeffs: &[Scalar]) -> Result<Self, Error> {
        check_dim(dim, coeffs.len())?;
        let mut acc = Accumulator::new();
        for (j, &w) in coeffs.iter().enumerate() {
            let mut index = vec![0u32; dim];
            index[j] = 1;
            acc.push(index, w);
        }
        Ok(acc.finish(dim))
    }

    /// Builds a polynomial from raw terms, normalizing: indices must have
    /// length `dim`, coefficients must be finite, sub-tolerance coefficients
    /// are dropped relative to the largest supplied one.
    pub fn from_terms<I>(dim: usize, raw: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (MultiIndex, Scalar)>,
    {
        let dim = dim.max(1);
        let mut acc = Accumulator::new();
        let mut count = 0usize;
        for (index, value) in raw {
            check_dim(dim, index.len())?;
            if !value.re.is_finite() || !value.im.is_finite() {
                return Err(Error::NonFinite);
            }
            if index_length(&index) > tol::MAX_DEGREE {
                return Err(Error::ResourceLimit("polynomial degree"));
            }
            count += 1;
            if count > tol::MAX_TERMS {
                return Err(Error::ResourceLimit("polynomial term count"));
            }
            acc.push(index, value);
        }
        Ok(acc.finish(dim))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|i| index_length(i)).max()
    }

    /// Degree in the single variable z_j (1-based); `None` for zero.
    pub fn degree_in(&self, j: usize) -> Result<Option<u32>, Error> {
        if j == 0 || j > self.dim {
            return Err(Error::IndexOutOfRange {
                index: j,
                dim: self.dim,
            });
        }
        Ok(self.terms.keys().map(|i| i[j - 1]).max())
    }

    pub fn is_constant(&self) -> bool {
        self.degree().unwrap_or(0) == 0
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, index: &[u32]) -> Scalar {
        self.terms
            .get(index)
            .copied()
            .unwrap_or_else(|| Scalar::new(0.0, 0.0))
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&vec![0u32; self.dim])
    }

    /// Splits off the constant term: returns (p − p(0), p(0)).
    pub fn without_constant(&self) -> (Polynomial, Scalar) {
        let c = self.constant_term();
        if c.norm() == 0.0 {
            return (self.clone(), c);
        }
        let mut terms = self.terms.clone();
        terms.remove(&vec![0u32; self.dim]);
        (
            Polynomial {
                dim: self.dim,
                terms,
            },
            c,
        )
    }

    /// Largest coefficient magnitude; 0 for the zero polynomial.
    pub fn inf_norm(&self) -> f64 {
        self.terms.values().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, Error> {
        check_dim(self.dim, other.dim)?;
        let mut acc = Accumulator::new();
        for (i, &v) in &self.terms {
            acc.push(i.clone(), v);
        }
        for (i, &v) in &other.terms {
            acc.push(i.clone(), v);
        }
        Ok(acc.finish(self.dim))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial, Error> {
        self.add(&other.scale(Scalar::new(-1.0, 0.0)))
    }

    pub fn scale(&self, k: Scalar) -> Polynomial {
        if k.norm() == 0.0 {
            return Polynomial::zero(self.dim);
        }
        let terms = self.terms.iter().map(|(i, v)| (i.clone(), v * k)).collect();
        Polynomial {
            dim: self.dim,
            terms,
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, Error> {
        check_dim(self.dim, other.dim)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(self.dim));
        }
        let deg = self.degree().unwrap_or(0) + other.degree().unwrap_or(0);
        if deg > tol::MAX_DEGREE {
            return Err(Error::ResourceLimit("product degree"));
        }
        if self.terms.len().saturating_mul(other.terms.len()) > tol::MAX_TERMS {
            return Err(Error::ResourceLimit("product term count"));
        }
        let mut acc = Accumulator::new();
        for (i, &a) in &self.terms {
            for (j, &b) in &other.terms {
                let index: MultiIndex = i.iter().zip(j).map(|(x, y)| x + y).collect();
                acc.push(index, a * b);
            }
        }
        Ok(acc.finish(self.dim))
    }

    /// Value at a point by monomial summation.
    pub fn eval(&self, z: &Point) -> Result<Scalar, Error> {
        check_dim(self.dim, z.dim())?;
        let mut sum = Scalar::new(0.0, 0.0);
        for (index, &coeff) in &self.terms {
            let mut monomial = coeff;
            for (e, zj) in index.iter().zip(z.coords()) {
                if *e > 0 {
                    monomial *= zj.powu(*e);
                }
            }
            sum += monomial;
        }
        Ok(sum)
    }

    /// Formal partial derivative ∂/∂z_j (1-based).
    pub fn partial(&self, j: usize) -> Result<Polynomial, Error> {
        if j == 0 || j > self.dim {
            return Err(Error::IndexOutOfRange {
                index: j,
                dim: self.dim,
            });
        }
        let mut acc = Accumulator::new();
        for (index, &coeff) in &self.terms {
            let e = index[j - 1];
            if e == 0 {
                continue;
            }
            let mut lowered = index.clone();
            lowered[j - 1] = e - 1;
            acc.push(lowered, coeff * Scalar::new(e as f64, 0.0));
        }
        Ok(acc.finish(self.dim))
    }

    /// p(z + c) via binomial expansion.
    pub fn shift(&self, c: &Point) -> Result<Polynomial, Error> {
        check_dim(self.dim, c.dim())?;
        let mut acc = Accumulator::new();
        for (index, &coeff) in &self.terms {
            let mut partial: Vec<(MultiIndex, Scalar)> = vec![(vec![0u32; self.dim], coeff)];
            for (j, &e) in index.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cj = c.coords()[j];
                if cj.norm() == 0.0 {
                    for item in &mut partial {
                        item.0[j] = e;
                    }
                    continue;
                }
                // (z_j + c_j)^e = Σ_k C(e,k) c_j^{e-k} z_j^k
                let mut row = Vec::with_capacity(e as usize + 1);
                let mut binom = 1.0f64;
                for k in 0..=e {
                    if k > 0 {
                        binom = binom * ((e - k + 1) as f64) / (k as f64);
                    }
                    row.push((k, Scalar::new(binom, 0.0) * cj.powu(e - k)));
                }
                let mut next = Vec::with_capacity(partial.len() * row.len());
                for (base, v) in &partial {
                    for (k, w) in &row {
                        let mut idx = base.clone();
                        idx[j] = *k;
                        next.push((idx, v * w));
                    }
                }
                partial = next;
            }
            for (idx, v) in partial {
                acc.push(idx, v);
            }
        }
        Ok(acc.finish(self.dim))
    }

    /// Antiderivative in z_j with integration constant zero.
    pub fn integrate(&self, j: usize) -> Result<Polynomial, Error> {
        if j == 0 || j > self.dim {
            return Err(Error::IndexOutOfRange {
                index: j,
                dim: self.dim,
            });
        }
        if self.degree().unwrap_or(0) + 1 > tol::MAX_DEGREE {
            return Err(Error::ResourceLimit("antiderivative degree"));
        }
        let mut acc = Accumulator::new();
        for (index, &coeff) in &self.terms {
            let mut raised = index.clone();
            raised[j - 1] += 1;
            let divisor = Scalar::new(raised[j - 1] as f64, 0.0);
            acc.push(raised, coeff / divisor);
        }
        Ok(acc.finish(self.dim))
    }
}

/// Whether G(z + c) ≡ G(z) within the merge tolerance.
pub fn is_periodic(g: &Polynomial, c: &Point) -> Result<bool, Error> {
    Ok(g.shift(c)?.sub(g)?.is_zero())
}

/// One direction of the periodic decomposition: a profile polynomial
/// Φ(u) = Σ `phi[k]`·u^k applied to the linear form Σ `weights[j]`·z_{j+1}.
#[derive(Clone, Debug)]
pub struct PeriodicDirection {
    pub weights: Vec<Scalar>,
    pub phi: Vec<Scalar>,
}

/// Builds Σ_k Φ_k(t_k·z) from kernel directions t_k·c = 0, expanded as a
/// polynomial. Errors with `NotInKernel` if some direction fails t·c = 0.
pub fn build_periodic_polynomial(
    c: &Point,
    directions: &[PeriodicDirection],
) -> Result<Polynomial, Error> {
    let dim = c.dim();
    let mut result = Polynomial::zero(dim);
    for dir in directions {
        check_dim(dim, dir.weights.len())?;
        let dot: Scalar = dir
            .weights
            .iter()
            .zip(c.coords())
            .map(|(t, cj)| t * cj)
            .sum();
        let scale = dir
            .weights
            .iter()
            .zip(c.coords())
            .map(|(t, cj)| (t * cj).norm())
            .fold(1.0f64, f64::max);
        if dot.norm() > tol::MERGE * scale {
            return Err(Error::NotInKernel);
        }
        let linear = Polynomial::linear(dim, &dir.weights)?;
        // Horner on polynomials: Φ(L) = φ₀ + L(φ₁ + L(φ₂ + …))
        let mut value = Polynomial::zero(dim);
        for &pk in dir.phi.iter().rev() {
            value = value.mul(&linear)?.add(&Polynomial::constant(dim, pk))?;
        }
        result = result.add(&value)?;
    }
    Ok(result)
}
