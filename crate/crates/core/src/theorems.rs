//! Closed-form solution families of the four equations and their
//! side-constraint identities.
//!
//! Each constructor assembles a candidate (f, g) from a parameter bundle and
//! returns, alongside it, every identity the corresponding theorem imposes:
//! scalar exponential relations between the parameters and the shift,
//! polynomial identities on the periodic parts, and functional equations on
//! the arbitrary auxiliary functions. The constraints are emitted for
//! checking, never solved here; when every emitted item passes, the
//! constructed f satisfies its equation identically.

use crate::error::Error;
use crate::exppoly::ExpPoly;
use crate::pdde::{EquationKind, EquationSpec};
use crate::poly::{is_periodic, Point, Polynomial};
use crate::tol;
use crate::Scalar;

fn one() -> Scalar {
    Scalar::new(1.0, 0.0)
}

fn i_unit() -> Scalar {
    Scalar::new(0.0, 1.0)
}

/// Shared equation context for the constructors: coefficients, the
/// distinguished indices and the shift. The right-hand exponent g is an
/// output of construction, not an input.
#[derive(Clone, Debug)]
pub struct TheoremContext {
    pub a: [Scalar; 4],
    pub mu: usize,
    pub nu: Option<usize>,
    pub c: Point,
}

impl TheoremContext {
    pub fn new(a: [Scalar; 4], mu: usize, nu: Option<usize>, c: Point) -> Result<Self, Error> {
        const NAMES: [&str; 4] = ["a1", "a2", "a3", "a4"];
        for (i, ai) in a.iter().enumerate() {
            if ai.norm() <= tol::MERGE {
                return Err(Error::ZeroCoefficient(NAMES[i]));
            }
        }
        if c.is_zero() {
            return Err(Error::ZeroShift);
        }
        let dim = c.dim();
        if mu == 0 || mu > dim {
            return Err(Error::IndexOutOfRange { index: mu, dim });
        }
        if let Some(v) = nu {
            if mu >= v || v > dim {
                return Err(Error::IndexOrder);
            }
        }
        Ok(TheoremContext { a, mu, nu, c })
    }

    pub fn dim(&self) -> usize {
        self.c.dim()
    }

    fn require_nu(&self) -> Result<usize, Error> {
        self.nu.ok_or(Error::CaseMismatch)
    }

    /// The shift restricted to the y₁-coordinates: c with the μ-component
    /// zeroed, so shifting by it realizes g(y₁ + s₁) on functions of y₁.
    fn s1_shift(&self) -> Point {
        let mut coords = self.c.coords().to_vec();
        coords[self.mu - 1] = Scalar::new(0.0, 0.0);
        Point::new(coords).expect("masked shift stays finite")
    }
}

/// A shift-periodic polynomial part (one of g₁, ξ₁, ξ₂): G(z+c) ≡ G(z) and
/// zero constant term (constants live in β, A, B).
#[derive(Clone, Debug)]
pub struct PeriodicPart {
    poly: Polynomial,
    c: Point,
}

impl PeriodicPart {
    pub fn new(poly: Polynomial, c: &Point) -> Result<Self, Error> {
        if !is_periodic(&poly, c)? {
            return Err(Error::NotPeriodic);
        }
        if poly.constant_term().norm() > tol::MERGE * poly.inf_norm().max(1.0) {
            return Err(Error::NotPeriodic);
        }
        Ok(PeriodicPart { poly, c: c.clone() })
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn shift_vector(&self) -> &Point {
        &self.c
    }
}

/// Which coordinate family an auxiliary function lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuxKind {
    /// Function of y₁ = (z₁,…,ẑ_μ,…,zₙ): independent of z_μ.
    Y1,
    /// Function of y: constant on level sets of a₁a₄z_μ + a₂a₃z_ν, i.e.
    /// a₂a₃ ∂h/∂z_μ ≡ a₁a₄ ∂h/∂z_ν.
    Y,
}

/// An arbitrary entire function slot (g_k(y₁) or h_j(y)) supplied by the
/// caller; its defining invariant and functional equation are emitted as
/// constraints rather than assumed.
#[derive(Clone, Debug)]
pub struct AuxiliaryFunction {
    pub expr: ExpPoly,
    pub kind: AuxKind,
}

impl AuxiliaryFunction {
    pub fn y1(expr: ExpPoly) -> Self {
        AuxiliaryFunction {
            expr,
            kind: AuxKind::Y1,
        }
    }

    pub fn y(expr: ExpPoly) -> Self {
        AuxiliaryFunction {
            expr,
            kind: AuxKind::Y,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn scalar(self) -> Scalar {
        match self {
            Sign::Plus => Scalar::new(1.0, 0.0),
            Sign::Minus => Scalar::new(-1.0, 0.0),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

/// Single-exponential parameter bundle (theorem cases with K₃, K₄ and β).
#[derive(Clone, Debug)]
pub struct SingleTermParams {
    pub k3: Scalar,
    pub k4: Scalar,
    pub beta: Vec<Scalar>,
    pub beta_const: Scalar,
    pub periodic: Option<PeriodicPart>,
    pub aux: Option<AuxiliaryFunction>,
}

/// Two-exponential parameter bundle (theorem cases with K₁, K₂, b, d).
#[derive(Clone, Debug)]
pub struct TwoTermParams {
    pub k1: Scalar,
    pub k2: Scalar,
    pub b: Vec<Scalar>,
    pub d: Vec<Scalar>,
    pub a_const: Scalar,
    pub b_const: Scalar,
    pub periodic1: Option<PeriodicPart>,
    pub periodic2: Option<PeriodicPart>,
    pub aux: Option<AuxiliaryFunction>,
}

/// Parameters of the f = ±(1/a₁)e^{g(z−c)/2} family; `sign: None` resolves
/// the branch by testing both residuals.
#[derive(Clone, Debug)]
pub struct PolyExponentParams {
    pub sign: Option<Sign>,
    pub g: Polynomial,
}

/// A user-supplied h₃(y) for the checker case of the second theorem,
/// together with the right-hand exponent g it is checked against.
#[derive(Clone, Debug)]
pub struct GivenAuxParams {
    pub h: ExpPoly,
    pub g: Polynomial,
}

#[derive(Clone, Debug)]
pub enum SolutionParams {
    SingleTerm(SingleTermParams),
    TwoTerm(TwoTermParams),
    PolyExponent(PolyExponentParams),
    GivenAux(GivenAuxParams),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theorem1Case {
    BetaMuNonzero,
    BetaMuZero,
    TwoTerm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theorem2Case {
    Checker,
    SingleTerm,
    TwoTerm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theorem34Case {
    PolyExponent,
    SingleTerm,
    TwoTerm,
}

/// One identity to check: a scalar equality, a polynomial that must
/// normalize to zero, or a functional equation between two exponential
/// polynomials.
#[derive(Clone, Debug)]
pub enum Constraint {
    Scalar {
        label: String,
        lhs: Scalar,
        rhs: Scalar,
    },
    PolyIdentity {
        label: String,
        poly: Polynomial,
    },
    Functional {
        label: String,
        lhs: ExpPoly,
        rhs: ExpPoly,
    },
}

#[derive(Clone, Debug)]
pub struct ConstraintItem {
    pub label: String,
    pub pass: bool,
    pub deviation: f64,
    pub lhs: Option<Scalar>,
    pub rhs: Option<Scalar>,
}

#[derive(Clone, Debug)]
pub struct ConstraintReport {
    pub items: Vec<ConstraintItem>,
    pub all_pass: bool,
}

/// Evaluates each constraint. Scalar equalities pass when
/// |lhs − rhs| ≤ tol·max(1, |lhs|, |rhs|); identities pass when their
/// canonical form is zero. Never errors: rule violations are report content.
pub fn check_constraints(constraints: &[Constraint], tol: f64) -> ConstraintReport {
    let items: Vec<ConstraintItem> = constraints
        .iter()
        .map(|c| match c {
            Constraint::Scalar { label, lhs, rhs } => {
                let deviation = (lhs - rhs).norm();
                let pass = deviation <= tol * 1.0f64.max(lhs.norm()).max(rhs.norm());
                ConstraintItem {
                    label: label.clone(),
                    pass,
                    deviation,
                    lhs: Some(*lhs),
                    rhs: Some(*rhs),
                }
            }
            Constraint::PolyIdentity { label, poly } => ConstraintItem {
                label: label.clone(),
                pass: poly.is_zero(),
                deviation: poly.inf_norm(),
                lhs: None,
                rhs: None,
            },
            Constraint::Functional { label, lhs, rhs } => match lhs.sub(rhs) {
                Ok(diff) => ConstraintItem {
                    label: label.clone(),
                    pass: diff.is_zero(),
                    deviation: diff.max_coeff_magnitude(),
                    lhs: None,
                    rhs: None,
                },
                Err(_) => ConstraintItem {
                    label: label.clone(),
                    pass: false,
                    deviation: f64::INFINITY,
                    lhs: None,
                    rhs: None,
                },
            },
        })
        .collect();
    let all_pass = items.iter().all(|item| item.pass);
    ConstraintReport { items, all_pass }
}

/// Result of a constructor: the candidate solution, its right-hand
/// exponent, and the theorem's constraint list.
#[derive(Clone, Debug)]
pub struct Construction {
    pub f: ExpPoly,
    pub g: Polynomial,
    pub constraints: Vec<Constraint>,
    pub resolved_sign: Option<Sign>,
}

fn dot(weights: &[Scalar], c: &Point) -> Scalar {
    weights.iter().zip(c.coords()).map(|(w, cj)| w * cj).sum()
}

fn exp_term(k: Scalar, exponent: &Polynomial) -> ExpPoly {
    ExpPoly::exp_of_poly(exponent).scale(k)
}

fn check_len(dim: usize, v: &[Scalar]) -> Result<(), Error> {
    if v.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: v.len(),
        });
    }
    Ok(())
}

fn periodic_poly(ctx: &TheoremContext, part: &Option<PeriodicPart>) -> Result<Polynomial, Error> {
    match part {
        None => Ok(Polynomial::zero(ctx.dim())),
        Some(p) => {
            if p.poly().dim() != ctx.dim() {
                return Err(Error::DimensionMismatch {
                    expected: ctx.dim(),
                    found: p.poly().dim(),
                });
            }
            // the part must be periodic for this context's shift, not just
            // the one it was built with
            if !is_periodic(p.poly(), &ctx.c)? {
                return Err(Error::NotPeriodic);
            }
            Ok(p.poly().clone())
        }
    }
}

fn aux_expr(
    ctx: &TheoremContext,
    aux: &Option<AuxiliaryFunction>,
    expected: AuxKind,
) -> Result<ExpPoly, Error> {
    match aux {
        None => Ok(ExpPoly::zero(ctx.dim())),
        Some(a) => {
            if a.kind != expected {
                return Err(Error::CaseMismatch);
            }
            if a.expr.dim() != ctx.dim() {
                return Err(Error::DimensionMismatch {
                    expected: ctx.dim(),
                    found: a.expr.dim(),
                });
            }
            Ok(a.expr.clone())
        }
    }
}

/// g₁ (or ξ) independence items demanded by "G ≡ 0 when G contains z_μ".
fn independence_item(label: &str, part: &Polynomial, j: usize) -> Result<Constraint, Error> {
    Ok(Constraint::PolyIdentity {
        label: label.to_string(),
        poly: part.partial(j)?,
    })
}

/// a₂a₃ ∂h/∂z_μ ≡ a₁a₄ ∂h/∂z_ν, the defining invariant of a function of y.
fn y_invariant_item(ctx: &TheoremContext, h: &ExpPoly, label: &str) -> Result<Constraint, Error> {
    let nu = ctx.require_nu()?;
    let [a1, a2, a3, a4] = ctx.a;
    Ok(Constraint::Functional {
        label: label.to_string(),
        lhs: h.partial(ctx.mu)?.scale(a2 * a3),
        rhs: h.partial(nu)?.scale(a1 * a4),
    })
}

const K34_LABEL: &str = "K3^2 + K4^2 = 1";
const K12_LABEL: &str = "K1 K2 = 1";

fn k34_item(k3: Scalar, k4: Scalar) -> Constraint {
    Constraint::Scalar {
        label: K34_LABEL.to_string(),
        lhs: k3 * k3 + k4 * k4,
        rhs: one(),
    }
}

fn k12_item(k1: Scalar, k2: Scalar) -> Constraint {
    Constraint::Scalar {
        label: K12_LABEL.to_string(),
        lhs: k1 * k2,
        rhs: one(),
    }
}

/// First theorem: solution families of
/// (a₁ ∂f/∂z_μ)² + (a₂f + a₃f(z+c) + a₄ ∂²f/∂z_μ²)² = e^{g}.
pub fn construct_t1(
    ctx: &TheoremContext,
    params: &SolutionParams,
    case: Theorem1Case,
) -> Result<Construction, Error> {
    let dim = ctx.dim();
    let [a1, a2, a3, a4] = ctx.a;
    let mu = ctx.mu;
    match (case, params) {
        (Theorem1Case::BetaMuNonzero, SolutionParams::SingleTerm(p)) => {
            check_len(dim, &p.beta)?;
            let beta_mu = p.beta[mu - 1];
            if beta_mu.norm() <= tol::MERGE {
                return Err(Error::ZeroBetaMu);
            }
            if (a3 * p.k3).norm() <= tol::MERGE {
                return Err(Error::DegenerateDenominator);
            }
            let g1 = periodic_poly(ctx, &p.periodic)?;
            let g = Polynomial::linear(dim, &p.beta)?
                .add(&g1)?
                .add(&Polynomial::constant(dim, p.beta_const))?;
            let half_exp = g.scale(Scalar::new(0.5, 0.0));
            let aux = aux_expr(ctx, &p.aux, AuxKind::Y1)?;
            let f = exp_term(Scalar::new(2.0, 0.0) * p.k3 / (a1 * beta_mu), &half_exp).add(&aux)?;

            let mut constraints = vec![k34_item(p.k3, p.k4)];
            let lhs = (dot(&p.beta, &ctx.c) * Scalar::new(0.5, 0.0)).exp();
            let rhs = a1 / (a3 * p.k3)
                * (p.k4 * beta_mu / Scalar::new(2.0, 0.0)
                    - a4 * p.k3 * beta_mu * beta_mu / (Scalar::new(4.0, 0.0) * a1)
                    - a2 * p.k3 / a1);
            constraints.push(Constraint::Scalar {
                label: "exp((1/2)<beta,c>) identity".to_string(),
                lhs,
                rhs,
            });
            if p.periodic.is_some() {
                constraints.push(independence_item("g1 independent of z_mu", &g1, mu)?);
            }
            if p.aux.is_some() {
                constraints.push(Constraint::Functional {
                    label: "aux depends only on y1".to_string(),
                    lhs: aux.partial(mu)?,
                    rhs: ExpPoly::zero(dim),
                });
                constraints.push(Constraint::Functional {
                    label: "a3 g2(y1+s1) + a2 g2(y1) = 0".to_string(),
                    lhs: aux.shift(&ctx.s1_shift())?.scale(a3).add(&aux.scale(a2))?,
                    rhs: ExpPoly::zero(dim),
                });
            }
            Ok(Construction {
                f,
                g,
                constraints,
                resolved_sign: None,
            })
        }
        (Theorem1Case::BetaMuZero, SolutionParams::SingleTerm(p)) => {
            check_len(dim, &p.beta)?;
            if p.beta[mu - 1].norm() > tol::MERGE {
                return Err(Error::CaseMismatch);
            }
            let g1 = periodic_poly(ctx, &p.periodic)?;
            let g = Polynomial::linear(dim, &p.beta)?
                .add(&g1)?
                .add(&Polynomial::constant(dim, p.beta_const))?;
            let half_exp = g.scale(Scalar::new(0.5, 0.0));
            let aux = aux_expr(ctx, &p.aux, AuxKind::Y1)?;
            let z_mu = Polynomial::variable(dim, mu)?;
            let f = ExpPoly::term(z_mu.scale(p.k3 / a1), half_exp.clone())?.add(&aux)?;

            let mut constraints = vec![k34_item(p.k3, p.k4)];
            constraints.push(Constraint::Scalar {
                label: "exp((1/2)<beta,c>) = -a2/a3".to_string(),
                lhs: (dot(&p.beta, &ctx.c) * Scalar::new(0.5, 0.0)).exp(),
                rhs: -a2 / a3,
            });
            if p.periodic.is_some() {
                constraints.push(independence_item("g1 independent of z_mu", &g1, mu)?);
            }
            if p.aux.is_some() {
                constraints.push(Constraint::Functional {
                    label: "aux depends only on y1".to_string(),
                    lhs: aux.partial(mu)?,
                    rhs: ExpPoly::zero(dim),
                });
            }
            // the g4 equation binds even when the aux slot is empty
            let c_mu = ctx.c.coord(mu)?;
            let coeff = p.k4 + a2 * c_mu * p.k3 / a1;
            constraints.push(Constraint::Functional {
                label: "a2 g4(y1) + a3 g4(y1+s1) = (K4 + a2 c_mu K3/a1) e^{...}".to_string(),
                lhs: aux.scale(a2).add(&aux.shift(&ctx.s1_shift())?.scale(a3))?,
                rhs: exp_term(coeff, &half_exp),
            });
            Ok(Construction {
                f,
                g,
                constraints,
                resolved_sign: None,
            })
        }
        (Theorem1Case::TwoTerm, SolutionParams::TwoTerm(p)) => {
            check_len(dim, &p.b)?;
            check_len(dim, &p.d)?;
            let b_mu = p.b[mu - 1];
            let d_mu = p.d[mu - 1];
            let b_zero = b_mu.norm() <= tol::MERGE;
            let d_zero = d_mu.norm() <= tol::MERGE;
            let xi1 = periodic_poly(ctx, &p.periodic1)?;
            let xi2 = periodic_poly(ctx, &p.periodic2)?;
            let exp_b = Polynomial::linear(dim, &p.b)?
                .add(&xi1)?
                .add(&Polynomial::constant(dim, p.a_const))?;
            let exp_d = Polynomial::linear(dim, &p.d)?
                .add(&xi2)?
                .add(&Polynomial::constant(dim, p.b_const))?;
            let aux = aux_expr(ctx, &p.aux, AuxKind::Y1)?;
            let z_mu = Polynomial::variable(dim, mu)?;
            let two_a1 = Scalar::new(2.0, 0.0) * a1;

            let term_b = if b_zero {
                ExpPoly::term(z_mu.scale(p.k1 / two_a1), exp_b.clone())?
            } else {
                exp_term(p.k1 / (two_a1 * b_mu), &exp_b)
            };
            let term_d = if d_zero {
                ExpPoly::term(z_mu.scale(p.k2 / two_a1), exp_d.clone())?
            } else {
                exp_term(p.k2 / (two_a1 * d_mu), &exp_d)
            };
            let f = term_b.add(&term_d)?.add(&aux)?;

            let sum: Vec<Scalar> = p.b.iter().zip(&p.d).map(|(x, y)| x + y).collect();
            let g = Polynomial::linear(dim, &sum)?
                .add(&xi1)?
                .add(&xi2)?
                .add(&Polynomial::constant(dim, p.a_const + p.b_const))?;

            let mut constraints = vec![k12_item(p.k1, p.k2)];
            if b_zero {
                constraints.push(Constraint::Scalar {
                    label: "exp(<b,c>) = -a2/a3 (b_mu = 0)".to_string(),
                    lhs: dot(&p.b, &ctx.c).exp(),
                    rhs: -a2 / a3,
                });
            } else {
                constraints.push(Constraint::Scalar {
                    label: "exp(<b,c>) identity".to_string(),
                    lhs: dot(&p.b, &ctx.c).exp(),
                    rhs: -(i_unit() * a1 * b_mu + a4 * b_mu * b_mu + a2) / a3,
                });
            }
            if d_zero {
                constraints.push(Constraint::Scalar {
                    label: "exp(<d,c>) = -a2/a3 (d_mu = 0)".to_string(),
                    lhs: dot(&p.d, &ctx.c).exp(),
                    rhs: -a2 / a3,
                });
            } else {
                constraints.push(Constraint::Scalar {
                    label: "exp(<d,c>) identity".to_string(),
                    lhs: dot(&p.d, &ctx.c).exp(),
                    rhs: -(-i_unit() * a1 * d_mu + a4 * d_mu * d_mu + a2) / a3,
                });
            }
            if p.periodic1.is_some() {
                constraints.push(independence_item("xi1 independent of z_mu", &xi1, mu)?);
            }
            if p.periodic2.is_some() {
                constraints.push(independence_item("xi2 independent of z_mu", &xi2, mu)?);
            }
            if p.aux.is_some() {
                constraints.push(Constraint::Functional {
                    label: "aux depends only on y1".to_string(),
                    lhs: aux.partial(mu)?,
                    rhs: ExpPoly::zero(dim),
                });
            }
            // functional equation for the aux slot; inhomogeneous whenever a
            // z_mu-carrying term is present, so it binds even for aux = 0
            let c_mu = ctx.c.coord(mu)?;
            let shifted = aux.shift(&ctx.s1_shift())?.scale(a3).add(&aux.scale(a2))?;
            let mut rhs = ExpPoly::zero(dim);
            if d_zero {
                let coeff = p.k2 / Scalar::new(2.0, 0.0) * (a2 * c_mu / a1 + i_unit());
                rhs = rhs.add(&exp_term(coeff, &exp_d))?;
            }
            if b_zero {
                let coeff = p.k1 / Scalar::new(2.0, 0.0) * (a2 * c_mu / a1 - i_unit());
                rhs = rhs.add(&exp_term(coeff, &exp_b))?;
            }
            if b_zero || d_zero || p.aux.is_some() {
                constraints.push(Constraint::Functional {
                    label: "a3 g_k(y1+s1) + a2 g_k(y1) = rhs".to_string(),
                    lhs: shifted,
                    rhs,
                });
            }
            Ok(Construction {
                f,
                g,
                constraints,
                resolved_sign: None,
            })
        }
        _ => Err(Error::CaseMismatch),
    }
}

/// Second theorem: solution families of
/// (a₁Δf + a₂ ∂f/∂z_μ)² + (a₃Δf + a₄ ∂f/∂z_ν)² = e^{g}, a₁² + a₃² ≠ 0.
pub fn construct_t2(
    ctx: &TheoremContext,
    params: &SolutionParams,
    case: Theorem2Case,
) -> Result<Construction, Error> {
    let dim = ctx.dim();
    let [a1, a2, a3, a4] = ctx.a;
    let mu = ctx.mu;
    let nu = ctx.require_nu()?;
    let hyp = a1 * a1 + a3 * a3;
    if hyp.norm() <= tol::MERGE * a1.norm().powi(2).max(a3.norm().powi(2)) {
        return Err(Error::ZeroCoefficient("a1^2 + a3^2"));
    }
    match (case, params) {
        (Theorem2Case::Checker, SolutionParams::GivenAux(p)) => {
            if p.h.dim() != dim || p.g.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.h.dim(),
                });
            }
            if p.g.degree().unwrap_or(0) == 0 {
                return Err(Error::ConstantRhs);
            }
            let mut constraints = vec![y_invariant_item(
                ctx,
                &p.h,
                "a2 a3 dh3/dz_mu = a1 a4 dh3/dz_nu",
            )?];

            let half_g = p.g.scale(Scalar::new(0.5, 0.0));
            let lhs =
                p.h.shift(&ctx.c)?
                    .sub(&p.h)?
                    .scale(a1)
                    .add(&p.h.partial(mu)?.scale(a2))?;
            // the square root of a1^2 + a3^2 is only defined up to sign;
            // keep whichever branch matches
            let root = hyp.sqrt();
            let mut branch = Sign::Plus;
            let mut rhs = exp_term(a1 / root, &half_g);
            if !lhs.equivalent(&rhs)? {
                let other = exp_term(a1 / -root, &half_g);
                if lhs.equivalent(&other)? {
                    branch = Sign::Minus;
                    rhs = other;
                }
            }
            constraints.push(Constraint::Functional {
                label: format!(
                    "a1(h3(y+s) - h3(y)) + a2 dh3/dz_mu = a1/sqrt(a1^2+a3^2) e^{{g/2}} (branch {})",
                    branch.label()
                ),
                lhs,
                rhs,
            });
            Ok(Construction {
                f: p.h.clone(),
                g: p.g.clone(),
                constraints,
                resolved_sign: Some(branch),
            })
        }
        (Theorem2Case::SingleTerm, SolutionParams::SingleTerm(p)) => {
            check_len(dim, &p.beta)?;
            let beta_mu = p.beta[mu - 1];
            let beta_nu = p.beta[nu - 1];
            let denom = a2 * a3 * beta_mu - a1 * a4 * beta_nu;
            let denom_scale = (a2 * a3 * beta_mu)
                .norm()
                .max((a1 * a4 * beta_nu).norm())
                .max(1.0);
            if denom.norm() <= tol::MERGE * denom_scale {
                return Err(Error::DegenerateDenominator);
            }
            let numer = a3 * p.k3 - a1 * p.k4;
            let numer_scale = (a3 * p.k3).norm().max((a1 * p.k4).norm()).max(1.0);
            if numer.norm() <= tol::MERGE * numer_scale {
                return Err(Error::DegenerateDenominator);
            }
            let g1 = periodic_poly(ctx, &p.periodic)?;
            let g = Polynomial::linear(dim, &p.beta)?
                .add(&g1)?
                .add(&Polynomial::constant(dim, p.beta_const))?;
            let half_exp = g.scale(Scalar::new(0.5, 0.0));
            let aux = aux_expr(ctx, &p.aux, AuxKind::Y)?;
            let f = exp_term(Scalar::new(2.0, 0.0) * numer / denom, &half_exp).add(&aux)?;

            let mut constraints = vec![k34_item(p.k3, p.k4)];
            let eq_num = a4 * beta_nu * p.k3 - a2 * beta_mu * p.k4;
            constraints.push(Constraint::Scalar {
                label: "exp((1/2)<beta,c>) - 1 = (a4 beta_nu K3 - a2 beta_mu K4)/(a1 K4 - a3 K3)"
                    .to_string(),
                lhs: (dot(&p.beta, &ctx.c) * Scalar::new(0.5, 0.0)).exp() - one(),
                rhs: eq_num / (a1 * p.k4 - a3 * p.k3),
            });
            if p.periodic.is_some() {
                constraints.push(independence_item("g1 independent of z_mu", &g1, mu)?);
                constraints.push(independence_item("g1 independent of z_nu", &g1, nu)?);
            }
            if p.aux.is_some() {
                constraints.push(y_invariant_item(ctx, &aux, "aux is a function of y")?);
            }
            // h2 shift equation binds even when the slot is empty
            constraints.push(Constraint::Functional {
                label: "h2(y+s) - h2(y) = ((a4 beta_nu K3 - a2 beta_mu K4)/D) e^{...} - (a2/a1) dh2/dz_mu"
                    .to_string(),
                lhs: aux.shift(&ctx.c)?.sub(&aux)?,
                rhs: exp_term(eq_num / denom, &half_exp)
                    .sub(&aux.partial(mu)?.scale(a2 / a1))?,
            });
            Ok(Construction {
                f,
                g,
                constraints,
                resolved_sign: None,
            })
        }
        (Theorem2Case::TwoTerm, SolutionParams::TwoTerm(p)) => {
            check_len(dim, &p.b)?;
            check_len(dim, &p.d)?;
            let b_mu = p.b[mu - 1];
            let b_nu = p.b[nu - 1];
            let d_mu = p.d[mu - 1];
            let d_nu = p.d[nu - 1];
            let denom_b = a2 * a3 * b_mu - a1 * a4 * b_nu;
            let scale_b = (a2 * a3 * b_mu)
                .norm()
                .max((a1 * a4 * b_nu).norm())
                .max(1.0);
            if denom_b.norm() <= tol::MERGE * scale_b {
                return Err(Error::DegenerateDenominator);
            }
            let denom_d = a2 * a3 * d_mu - a1 * a4 * d_nu;
            let scale_d = (a2 * a3 * d_mu)
                .norm()
                .max((a1 * a4 * d_nu).norm())
                .max(1.0);
            if denom_d.norm() <= tol::MERGE * scale_d {
                return Err(Error::DegenerateDenominator);
            }
            let xi1 = periodic_poly(ctx, &p.periodic1)?;
            let xi2 = periodic_poly(ctx, &p.periodic2)?;
            let exp_b = Polynomial::linear(dim, &p.b)?
                .add(&xi1)?
                .add(&Polynomial::constant(dim, p.a_const))?;
            let exp_d = Polynomial::linear(dim, &p.d)?
                .add(&xi2)?
                .add(&Polynomial::constant(dim, p.b_const))?;
            let aux = aux_expr(ctx, &p.aux, AuxKind::Y)?;
            let two_i = Scalar::new(0.0, 2.0);
            let coeff_b = (a3 * i_unit() - a1) * p.k1 / (two_i * denom_b);
            let coeff_d = (a3 * i_unit() + a1) * p.k2 / (two_i * denom_d);
            let f = exp_term(coeff_b, &exp_b)
                .add(&exp_term(coeff_d, &exp_d))?
                .add(&aux)?;

            let sum: Vec<Scalar> = p.b.iter().zip(&p.d).map(|(x, y)| x + y).collect();
            let g = Polynomial::linear(dim, &sum)?
                .add(&xi1)?
                .add(&xi2)?
                .add(&Polynomial::constant(dim, p.a_const + p.b_const))?;

            let mut constraints = vec![k12_item(p.k1, p.k2)];
            constraints.push(Constraint::Scalar {
                label: "exp(<b,c>) - 1 = (a4 b_nu i - a2 b_mu)/(a1 - i a3)".to_string(),
                lhs: dot(&p.b, &ctx.c).exp() - one(),
                rhs: (a4 * b_nu * i_unit() - a2 * b_mu) / (a1 - i_unit() * a3),
            });
            constraints.push(Constraint::Scalar {
                label: "exp(<d,c>) - 1 = -(a4 d_nu i + a2 d_mu)/(a1 + i a3)".to_string(),
                lhs: dot(&p.d, &ctx.c).exp() - one(),
                rhs: -(a4 * d_nu * i_unit() + a2 * d_mu) / (a1 + i_unit() * a3),
            });
            for (part, poly, name) in [(&p.periodic1, &xi1, "xi1"), (&p.periodic2, &xi2, "xi2")] {
                if part.is_some() {
                    constraints.push(independence_item(
                        &format!("{name} independent of z_mu"),
                        poly,
                        mu,
                    )?);
                    constraints.push(independence_item(
                        &format!("{name} independent of z_nu"),
                        poly,
                        nu,
                    )?);
                }
            }
            if p.aux.is_some() {
                constraints.push(y_invariant_item(ctx, &aux, "aux is a function of y")?);
                let delta = aux.shift(&ctx.c)?.sub(&aux)?;
                constraints.push(Constraint::Functional {
                    label: "h5(y+s) - h5(y) = -(a2/a1) dh5/dz_mu".to_string(),
                    lhs: delta.clone(),
                    rhs: aux.partial(mu)?.scale(-a2 / a1),
                });
                constraints.push(Constraint::Functional {
                    label: "h5(y+s) - h5(y) = -(a4/a3) dh5/dz_nu".to_string(),
                    lhs: delta,
                    rhs: aux.partial(nu)?.scale(-a4 / a3),
                });
            }
            Ok(Construction {
                f,
                g,
                constraints,
                resolved_sign: None,
            })
        }
        _ => Err(Error::CaseMismatch),
    }
}

/// Third theorem: families of a₁²f²(z+c) + (a₂ ∂f/∂z_μ + a₃ ∂²f/∂z_μ²)² = e^{g}.
pub fn construct_t3(
    ctx: &TheoremContext,
    params: &SolutionParams,
    case: Theorem34Case,
) -> Result<Construction, Error> {
    construct_t34(EquationKind::E3, ctx, params, case)
}

/// Fourth theorem: families of
/// a₁²f²(z+c) + (a₂ ∂f/∂z_μ + a₃ ∂²f/∂z_μ∂z_ν)² = e^{g}.
pub fn construct_t4(
    ctx: &TheoremContext,
    params: &SolutionParams,
    case: Theorem34Case,
) -> Result<Construction, Error> {
    construct_t34(EquationKind::E4, ctx, params, case)
}

fn construct_t34(
    kind: EquationKind,
    ctx: &TheoremContext,
    params: &SolutionParams,
    case: Theorem34Case,
) -> Result<Construction, Error> {
    let dim = ctx.dim();
    let [a1, a2, a3, _] = ctx.a;
    let mu = ctx.mu;
    let mixed = kind == EquationKind::E4;
    let nu = if mixed { Some(ctx.require_nu()?) } else { None };
    match (case, params) {
        (Theorem34Case::PolyExponent, SolutionParams::PolyExponent(p)) => {
            if p.g.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.g.dim(),
                });
            }
            if p.g.degree().unwrap_or(0) == 0 {
                return Err(Error::ConstantRhs);
            }
            let dg_mu = p.g.partial(mu)?;
            let identity = match nu {
                None => {
                    // 2 a2 dg/dz_mu + a3 (dg/dz_mu)^2 + 2 a3 d^2 g/dz_mu^2
                    dg_mu
                        .scale(Scalar::new(2.0, 0.0) * a2)
                        .add(&dg_mu.mul(&dg_mu)?.scale(a3))?
                        .add(&dg_mu.partial(mu)?.scale(Scalar::new(2.0, 0.0) * a3))?
                }
                Some(nu) => {
                    let dg_nu = p.g.partial(nu)?;
                    dg_mu
                        .scale(Scalar::new(2.0, 0.0) * a2)
                        .add(&dg_mu.mul(&dg_nu)?.scale(a3))?
                        .add(&dg_mu.partial(nu)?.scale(Scalar::new(2.0, 0.0) * a3))?
                }
            };
            let shifted_half = p.g.shift(&ctx.c.negated())?.scale(Scalar::new(0.5, 0.0));
            let candidate = |sign: Sign| -> ExpPoly { exp_term(sign.scalar() / a1, &shifted_half) };
            let (f, resolved) = match p.sign {
                Some(s) => (candidate(s), s),
                None => {
                    let spec =
                        EquationSpec::new(kind, ctx.a, mu, ctx.nu, ctx.c.clone(), p.g.clone())?;
                    let plus = candidate(Sign::Plus);
                    if spec.residual(&plus)?.is_zero() {
                        (plus, Sign::Plus)
                    } else {
                        let minus = candidate(Sign::Minus);
                        if spec.residual(&minus)?.is_zero() {
                            (minus, Sign::Minus)
                        } else {
                            (plus, Sign::Plus)
                        }
                    }
                }
            };
            let label = match nu {
                None => "2 a2 dg/dz_mu + a3 (dg/dz_mu)^2 + 2 a3 d2g/dz_mu^2 = 0",
                Some(_) => "2 a2 dg/dz_mu + a3 (dg/dz_mu)(dg/dz_nu) + 2 a3 d2g/dz_mu dz_nu = 0",
            };
            let constraints = vec![Constraint::PolyIdentity {
                label: label.to_string(),
                poly: identity,
            }];
            Ok(Construction {
                f,
                g: p.g.clone(),
                constraints,
                resolved_sign: Some(resolved),
            })
        }
        (Theorem34Case::SingleTerm, SolutionParams::SingleTerm(p)) => {
            if p.aux.is_some() {
                return Err(Error::CaseMismatch);
            }
            check_len(dim, &p.beta)?;
            let beta_mu = p.beta[mu - 1];
            if beta_mu.norm() <= tol::MERGE {
                return Err(Error::ZeroBetaMu);
            }
            if p.k4.norm() <= tol::MERGE {
                return Err(Error::DegenerateDenominator);
            }
            let g1 = periodic_poly(ctx, &p.periodic)?;
            let g = Polynomial::linear(dim, &p.beta)?
                .add(&g1)?
                .add(&Polynomial::constant(dim, p.beta_const))?;
            // f carries the back-shifted linear part: exponent (1/2)(<beta, z-c> + g1 + beta)
            let exponent = g
                .add(&Polynomial::constant(dim, -dot(&p.beta, &ctx.c)))?
                .scale(Scalar::new(0.5, 0.0));
            let f = exp_term(p.k3 / a1, &exponent);

            let mut constraints = vec![k34_item(p.k3, p.k4)];
            let factor = match nu {
                None => beta_mu * beta_mu,
                Some(nu) => beta_mu * p.beta[nu - 1],
            };
            constraints.push(Constraint::Scalar {
                label: "exp((1/2)<beta,c>) = (K3/K4)(a2 beta_mu/(2 a1) + a3 .../(4 a1))"
                    .to_string(),
                lhs: (dot(&p.beta, &ctx.c) * Scalar::new(0.5, 0.0)).exp(),
                rhs: p.k3 / p.k4
                    * (a2 * beta_mu / (Scalar::new(2.0, 0.0) * a1)
                        + a3 * factor / (Scalar::new(4.0, 0.0) * a1)),
            });
            if p.periodic.is_some() {
                constraints.push(independence_item("g1 independent of z_mu", &g1, mu)?);
                if let Some(nu) = nu {
                    constraints.push(independence_item("g1 independent of z_nu", &g1, nu)?);
                }
            }
            Ok(Construction {
                f,
                g,
                constraints,
                resolved_sign: None,
            })
        }
        (Theorem34Case::TwoTerm, SolutionParams::TwoTerm(p)) => {
            if p.aux.is_some() {
                return Err(Error::CaseMismatch);
            }
            check_len(dim, &p.b)?;
            check_len(dim, &p.d)?;
            let b_mu = p.b[mu - 1];
            let d_mu = p.d[mu - 1];
            if b_mu.norm() <= tol::MERGE || d_mu.norm() <= tol::MERGE {
                return Err(Error::ZeroBetaMu);
            }
            let xi1 = periodic_poly(ctx, &p.periodic1)?;
            let xi2 = periodic_poly(ctx, &p.periodic2)?;
            let exp_b = Polynomial::linear(dim, &p.b)?
                .add(&xi1)?
                .add(&Polynomial::constant(dim, p.a_const - dot(&p.b, &ctx.c)))?;
            let exp_d = Polynomial::linear(dim, &p.d)?
                .add(&xi2)?
                .add(&Polynomial::constant(dim, p.b_const - dot(&p.d, &ctx.c)))?;
            let half_inv = one() / (Scalar::new(2.0, 0.0) * a1);
            let f = exp_term(p.k1 * half_inv, &exp_b).add(&exp_term(p.k2 * half_inv, &exp_d))?;

            let sum: Vec<Scalar> = p.b.iter().zip(&p.d).map(|(x, y)| x + y).collect();
            let g = Polynomial::linear(dim, &sum)?
                .add(&xi1)?
                .add(&xi2)?
                .add(&Polynomial::constant(dim, p.a_const + p.b_const))?;

            let mut constraints = vec![k12_item(p.k1, p.k2)];
            let (b_factor, d_factor) = match nu {
                None => (b_mu * b_mu, d_mu * d_mu),
                Some(nu) => (b_mu * p.b[nu - 1], d_mu * p.d[nu - 1]),
            };
            constraints.push(Constraint::Scalar {
                label: "exp(<b,c>) = i(a3 ... + a2 b_mu)/a1".to_string(),
                lhs: dot(&p.b, &ctx.c).exp(),
                rhs: i_unit() * (a3 * b_factor + a2 * b_mu) / a1,
            });
            constraints.push(Constraint::Scalar {
                label: "exp(<d,c>) = -i(a3 ... + a2 d_mu)/a1".to_string(),
                lhs: dot(&p.d, &ctx.c).exp(),
                rhs: -i_unit() * (a3 * d_factor + a2 * d_mu) / a1,
            });
            for (part, poly, name) in [(&p.periodic1, &xi1, "xi1"), (&p.periodic2, &xi2, "xi2")] {
                if part.is_some() {
                    constraints.push(independence_item(
                        &format!("{name} independent of z_mu"),
                        poly,
                        mu,
                    )?);
                    if let Some(nu) = nu {
                        constraints.push(independence_item(
                            &format!("{name} independent of z_nu"),
                            poly,
                            nu,
                        )?);
                    }
                }
            }
            Ok(Construction {
                f,
                g,
                constraints,
                resolved_sign: None,
            })
        }
        _ => Err(Error::CaseMismatch),
    }
}
