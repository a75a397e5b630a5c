//! Exponential polynomials: finite sums Σ pᵢ(z)·exp(qᵢ(z)).
//!
//! Canonical form:
//! - each exponent has zero constant term (e^{q+k} = e^k·e^q, the constant
//!   is folded into the coefficient),
//! - exponents are pairwise distinct beyond the merge tolerance,
//! - no term has a zero coefficient polynomial; the zero function is the
//!   empty term list.
//!
//! Distinct non-constant exponent differences make exponentials linearly
//! independent over polynomials, so the canonical form is faithful: a
//! canonical sum vanishes identically iff it has no terms. That is the basis
//! of every symbolic zero test in this crate.

use crate::error::Error;
use crate::poly::{Point, Polynomial};
use crate::tol;
use crate::Scalar;

/// One term p(z)·e^{q(z)}; the exponent is constant-free by construction.
#[derive(Clone, Debug)]
pub struct ExpTerm {
    coeff: Polynomial,
    exponent: Polynomial,
}

impl ExpTerm {
    pub fn coeff(&self) -> &Polynomial {
        &self.coeff
    }

    pub fn exponent(&self) -> &Polynomial {
        &self.exponent
    }
}

/// Canonical exponential polynomial.
#[derive(Clone, Debug)]
pub struct ExpPoly {
    dim: usize,
    terms: Vec<ExpTerm>,
}

fn check_dim(expected: usize, found: usize) -> Result<(), Error> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// Exponent equality under the merge tolerance:
/// ‖q₁ − q₂‖∞ ≤ MERGE · max(1, ‖q₁‖∞, ‖q₂‖∞), coefficient-wise over the
/// union of monomials.
fn exponents_close(a: &Polynomial, b: &Polynomial) -> bool {
    let scale = 1.0f64.max(a.inf_norm()).max(b.inf_norm());
    let mut max_diff = 0.0f64;
    for (index, &va) in a.terms() {
        max_diff = max_diff.max((va - b.coeff(index)).norm());
    }
    for (index, &vb) in b.terms() {
        if a.coeff(index).norm() == 0.0 {
            max_diff = max_diff.max(vb.norm());
        }
    }
    max_diff <= tol::MERGE * scale
}

/// Deterministic ordering of polynomials for the canonical term sort:
/// by degree, then lexicographically over (multi-index, re, im).
fn cmp_polynomials(a: &Polynomial, b: &Polynomial) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    let by_degree = a.degree().unwrap_or(0).cmp(&b.degree().unwrap_or(0));
    if by_degree != Ordering::Equal {
        return by_degree;
    }
    let mut ita = a.terms();
    let mut itb = b.terms();
    loop {
        match (ita.next(), itb.next()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some((ia, va)), Some((ib, vb))) => {
                let c = ia.cmp(ib);
                if c != Ordering::Equal {
                    return c;
                }
                let c = va.re.total_cmp(&vb.re);
                if c != Ordering::Equal {
                    return c;
                }
                let c = va.im.total_cmp(&vb.im);
                if c != Ordering::Equal {
                    return c;
                }
            }
        }
    }
}

impl ExpPoly {
    pub fn zero(dim: usize) -> Self {
        ExpPoly {
            dim: dim.max(1),
            terms: Vec::new(),
        }
    }

    pub fn constant(dim: usize, value: Scalar) -> Self {
        Self::from_poly(&Polynomial::constant(dim, value))
    }

    /// Embeds a plain polynomial as p·e^0.
    pub fn from_poly(p: &Polynomial) -> Self {
        if p.is_zero() {
            return ExpPoly::zero(p.dim());
        }
        ExpPoly {
            dim: p.dim(),
            terms: vec![ExpTerm {
                coeff: p.clone(),
                exponent: Polynomial::zero(p.dim()),
            }],
        }
    }

    /// e^{q(z)}; the constant term of q folds into the coefficient.
    pub fn exp_of_poly(q: &Polynomial) -> Self {
        let one = Polynomial::constant(q.dim(), Scalar::new(1.0, 0.0));
        Self::from_raw_terms(q.dim(), vec![(one, q.clone())])
            .expect("dimensions agree by construction")
    }

    /// Single term coeff·e^{exponent}, normalized.
    pub fn term(coeff: Polynomial, exponent: Polynomial) -> Result<Self, Error> {
        let dim = coeff.dim();
        check_dim(dim, exponent.dim())?;
        Self::from_raw_terms(dim, vec![(coeff, exponent)])
    }

    /// Canonicalizes a raw term list: folds exponent constants, merges terms
    /// with tolerance-equal exponents, drops vanished coefficients, and
    /// sorts the surviving terms deterministically.
    pub fn from_raw_terms(dim: usize, raw: Vec<(Polynomial, Polynomial)>) -> Result<Self, Error> {
        let dim = dim.max(1);
        let mut terms: Vec<ExpTerm> = Vec::new();
        for (coeff, exponent) in raw {
            check_dim(dim, coeff.dim())?;
            check_dim(dim, exponent.dim())?;
            if coeff.is_zero() {
                continue;
            }
            let (exponent, constant) = exponent.without_constant();
            let coeff = if constant.norm() == 0.0 {
                coeff
            } else {
                coeff.scale(constant.exp())
            };
            debug_assert!(
                coeff.inf_norm().is_finite(),
                "folded coefficient overflowed"
            );
            if coeff.is_zero() {
                continue;
            }
            match terms
                .iter()
                .position(|t| exponents_close(&t.exponent, &exponent))
            {
                Some(i) => {
                    let merged = terms[i].coeff.add(&coeff)?;
                    if merged.is_zero() {
                        terms.remove(i);
                    } else {
                        terms[i].coeff = merged;
                    }
                }
                None => terms.push(ExpTerm { coeff, exponent }),
            }
        }
        terms.sort_by(|a, b| cmp_polynomials(&a.exponent, &b.exponent));
        Ok(ExpPoly { dim, terms })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[ExpTerm] {
        &self.terms
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Zero test: a canonical form vanishes iff it has no terms.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest coefficient magnitude over all terms.
    pub fn max_coeff_magnitude(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coeff.inf_norm())
            .fold(0.0, f64::max)
    }

    fn raw(&self) -> Vec<(Polynomial, Polynomial)> {
        self.terms
            .iter()
            .map(|t| (t.coeff.clone(), t.exponent.clone()))
            .collect()
    }

    pub fn add(&self, other: &ExpPoly) -> Result<ExpPoly, Error> {
        check_dim(self.dim, other.dim)?;
        let mut raw = self.raw();
        raw.extend(other.raw());
        Self::from_raw_terms(self.dim, raw)
    }

    pub fn sub(&self, other: &ExpPoly) -> Result<ExpPoly, Error> {
        self.add(&other.scale(Scalar::new(-1.0, 0.0)))
    }

    pub fn scale(&self, k: Scalar) -> ExpPoly {
        if k.norm() == 0.0 {
            return ExpPoly::zero(self.dim);
        }
        ExpPoly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|t| ExpTerm {
                    coeff: t.coeff.scale(k),
                    exponent: t.exponent.clone(),
                })
                .collect(),
        }
    }

    /// (p₁e^{q₁})(p₂e^{q₂}) = (p₁p₂)e^{q₁+q₂}, all pairs, renormalized.
    pub fn mul(&self, other: &ExpPoly) -> Result<ExpPoly, Error> {
        check_dim(self.dim, other.dim)?;
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                raw.push((a.coeff.mul(&b.coeff)?, a.exponent.add(&b.exponent)?));
            }
        }
        Self::from_raw_terms(self.dim, raw)
    }

    /// Term-wise product and chain rule: ∂(p·e^q) = (∂p + p·∂q)·e^q.
    pub fn partial(&self, j: usize) -> Result<ExpPoly, Error> {
        if j == 0 || j > self.dim {
            return Err(Error::IndexOutOfRange {
                index: j,
                dim: self.dim,
            });
        }
        let mut raw = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let dp = t.coeff.partial(j)?;
            let p_dq = t.coeff.mul(&t.exponent.partial(j)?)?;
            raw.push((dp.add(&p_dq)?, t.exponent.clone()));
        }
        Self::from_raw_terms(self.dim, raw)
    }

    /// f(z + c); shifted exponent constants fold into the coefficients.
    pub fn shift(&self, c: &Point) -> Result<ExpPoly, Error> {
        check_dim(self.dim, c.dim())?;
        let mut raw = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            raw.push((t.coeff.shift(c)?, t.exponent.shift(c)?));
        }
        Self::from_raw_terms(self.dim, raw)
    }

    /// Δf = f(z + c) − f(z).
    pub fn difference(&self, c: &Point) -> Result<ExpPoly, Error> {
        self.shift(c)?.sub(self)
    }

    pub fn eval(&self, z: &Point) -> Result<Scalar, Error> {
        Ok(self.eval_flagged(z)?.0)
    }

    /// Value at a point plus an overflow flag set when some term's exponent
    /// has |Re q(z)| beyond the exp() guard.
    pub fn eval_flagged(&self, z: &Point) -> Result<(Scalar, bool), Error> {
        check_dim(self.dim, z.dim())?;
        let mut sum = Scalar::new(0.0, 0.0);
        let mut flagged = false;
        for t in &self.terms {
            let q = t.exponent.eval(z)?;
            if q.re.abs() > tol::OVERFLOW_RE {
                flagged = true;
            }
            sum += t.coeff.eval(z)? * q.exp();
        }
        Ok((sum, flagged))
    }

    /// Order of growth: max over terms of deg(exponent); 0 when no term has
    /// an exponential part. Undefined for the zero function.
    pub fn order(&self) -> Result<u32, Error> {
        if self.terms.is_empty() {
            return Err(Error::ZeroFunction);
        }
        Ok(self
            .terms
            .iter()
            .map(|t| t.exponent.degree().unwrap_or(0))
            .max()
            .unwrap_or(0))
    }

    /// Antiderivative in z_j with integration constant zero.
    ///
    /// Each exponent must depend on z_j through a pure λ·z_j part with
    /// constant λ (equivalently ∂q/∂z_j is constant); otherwise the
    /// antiderivative leaves the class. For λ ≠ 0 the finite recurrence
    /// ∫p·e^{λz_j+…} = e^{λz_j+…}·(p/λ − ∂_j p/λ² + ∂_j²p/λ³ − …) applies;
    /// for λ = 0 the coefficient integrates as a plain polynomial.
    pub fn antiderivative(&self, j: usize) -> Result<ExpPoly, Error> {
        if j == 0 || j > self.dim {
            return Err(Error::IndexOutOfRange {
                index: j,
                dim: self.dim,
            });
        }
        let mut raw = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let dq = t.exponent.partial(j)?;
            if !dq.is_constant() {
                return Err(Error::NotIntegrableInClass);
            }
            let lambda = dq.constant_term();
            if lambda.norm() == 0.0 {
                raw.push((t.coeff.integrate(j)?, t.exponent.clone()));
                continue;
            }
            let mut series = Polynomial::zero(self.dim);
            let mut derivative = t.coeff.clone();
            let mut sign = 1.0f64;
            let mut lambda_power = lambda;
            loop {
                series = series.add(&derivative.scale(Scalar::new(sign, 0.0) / lambda_power))?;
                derivative = derivative.partial(j)?;
                if derivative.is_zero() {
                    break;
                }
                sign = -sign;
                lambda_power *= lambda;
            }
            raw.push((series, t.exponent.clone()));
        }
        Self::from_raw_terms(self.dim, raw)
    }

    /// Canonical equality: the difference normalizes to zero.
    pub fn equivalent(&self, other: &ExpPoly) -> Result<bool, Error> {
        Ok(self.sub(other)?.is_zero())
    }

    /// The plain polynomial this function equals, if it has no exponential
    /// part.
    pub fn as_polynomial(&self) -> Option<Polynomial> {
        match self.terms.as_slice() {
            [] => Some(Polynomial::zero(self.dim)),
            [t] if t.exponent.is_zero() => Some(t.coeff.clone()),
            _ => None,
        }
    }

    /// The constant this function equals, if any.
    pub fn as_constant(&self) -> Option<Scalar> {
        let p = self.as_polynomial()?;
        if p.is_constant() {
            Some(p.constant_term())
        } else {
            None
        }
    }
}
