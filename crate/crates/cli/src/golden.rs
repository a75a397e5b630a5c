//! The nine worked examples as built-in scenarios: three for the first
//! theorem and two for each of the others. Each entry rebuilds its solution
//! through the theorem constructor, checks the constraint list, verifies
//! the equation symbolically and numerically, and cross-checks that the
//! printed expression parses back to the constructed function.
//!
//! The first example of the second theorem uses (21√2−1)/(3√2) in the shift
//! component; with 27 in its place the equation is not satisfied.

use std::time::Instant;

use fermat_pdde::error::Error;
use fermat_pdde::pdde::{EquationKind, EquationSpec, SamplingConfig, Verdict, VerificationReport};
use fermat_pdde::poly::{Point, Polynomial};
use fermat_pdde::theorems::*;
use fermat_pdde::Scalar;

use crate::expr::parse_expression;

const PI: f64 = std::f64::consts::PI;

fn re(x: f64) -> Scalar {
    Scalar::new(x, 0.0)
}

fn im(x: f64) -> Scalar {
    Scalar::new(0.0, x)
}

#[derive(Clone, Copy, Debug)]
pub enum GoldenCase {
    T1(Theorem1Case),
    T2(Theorem2Case),
    T34(Theorem34Case),
}

pub struct GoldenExample {
    pub id: &'static str,
    pub description: &'static str,
    pub kind: EquationKind,
    pub theorem: u8,
    pub ctx: TheoremContext,
    pub params: SolutionParams,
    pub case: GoldenCase,
    /// Text form of the solution, for the parser cross-check.
    pub f_text: &'static str,
}

impl GoldenExample {
    pub fn construct(&self) -> Result<Construction, Error> {
        match self.case {
            GoldenCase::T1(case) => construct_t1(&self.ctx, &self.params, case),
            GoldenCase::T2(case) => construct_t2(&self.ctx, &self.params, case),
            GoldenCase::T34(case) => match self.kind {
                EquationKind::E3 => construct_t3(&self.ctx, &self.params, case),
                _ => construct_t4(&self.ctx, &self.params, case),
            },
        }
    }
}

fn var(j: usize) -> Polynomial {
    Polynomial::variable(3, j).expect("dimension 3")
}

fn single(
    k3: f64,
    beta: [Scalar; 3],
    beta_const: Scalar,
    periodic: Option<PeriodicPart>,
) -> SolutionParams {
    SolutionParams::SingleTerm(SingleTermParams {
        k3: re(k3),
        k4: re(0.0),
        beta: beta.to_vec(),
        beta_const,
        periodic,
        aux: None,
    })
}

fn pair(
    b: [Scalar; 3],
    d: [Scalar; 3],
    a_const: Scalar,
    b_const: Scalar,
    periodic1: Option<PeriodicPart>,
    periodic2: Option<PeriodicPart>,
) -> SolutionParams {
    SolutionParams::TwoTerm(TwoTermParams {
        k1: re(1.0),
        k2: re(1.0),
        b: b.to_vec(),
        d: d.to_vec(),
        a_const,
        b_const,
        periodic1,
        periodic2,
        aux: None,
    })
}

pub fn all_examples() -> Vec<GoldenExample> {
    let mut out = Vec::with_capacity(9);

    // ---- first theorem ----
    {
        let c = Point::new(vec![
            re(0.4 * (4.0f64 / 15.0).ln()),
            re((15.0f64 / 4.0).ln()),
            re((4.0f64 / 15.0).ln()),
        ])
        .unwrap();
        let s = var(2).add(&var(3)).unwrap();
        let g1 = PeriodicPart::new(s.mul(&s).unwrap(), &c).unwrap();
        out.push(GoldenExample {
            id: "t1e1",
            description: "theorem-1 single-term family, quadratic periodic part",
            kind: EquationKind::E1,
            theorem: 1,
            ctx: TheoremContext::new([re(3.0), re(5.0), re(-3.0), re(1.0)], 1, None, c).unwrap(),
            params: single(1.0, [re(5.0), re(7.0), re(3.0)], re(1.0), Some(g1)),
            case: GoldenCase::T1(Theorem1Case::BetaMuNonzero),
            f_text: "(2/15)*e^((z2^2+z3^2+2*z2*z3+5*z1+7*z2+3*z3+1)/2)",
        });
    }
    {
        let c = Point::new(vec![
            re(2.0 * 3.0f64.ln()),
            re(-(4.0f64.ln())),
            im(2.0 * PI / 3.0),
        ])
        .unwrap();
        out.push(GoldenExample {
            id: "t1e2",
            description: "theorem-1 single-term family, linear exponent",
            kind: EquationKind::E1,
            theorem: 1,
            ctx: TheoremContext::new([re(2.0), re(1.0), re(3.0), re(5.0)], 1, None, c).unwrap(),
            params: single(1.0, [re(1.0), re(2.0), re(3.0)], re(5.0), None),
            case: GoldenCase::T1(Theorem1Case::BetaMuNonzero),
            f_text: "e^((z1+2*z2+3*z3+5)/2)",
        });
    }
    {
        let c = Point::new(vec![re(3.0), re(-1.0), re(1.0)]).unwrap();
        out.push(GoldenExample {
            id: "t1e3",
            description: "theorem-1 two-term family",
            kind: EquationKind::E1,
            theorem: 1,
            ctx: TheoremContext::new(
                [re(3.0 * PI), re(5.0 * PI * PI), re(5.0 * PI * PI), re(1.0)],
                1,
                None,
                c,
            )
            .unwrap(),
            params: pair(
                [im(2.0 * PI), im(PI), im(3.0 * PI)],
                [im(3.0 * PI), im(2.0 * PI), im(4.0 * PI)],
                re(7.0),
                re(5.0),
                None,
                None,
            ),
            case: GoldenCase::T1(Theorem1Case::TwoTerm),
            f_text: "(1/(12*pi^2*i))*e^(pi*i*(2*z1+z2+3*z3)+7)+(1/(18*pi^2*i))*e^(pi*i*(3*z1+2*z2+4*z3)+5)",
        });
    }

    // ---- second theorem ----
    {
        let c1 = ((21.0 * 2.0f64.sqrt() - 1.0) / (3.0 * 2.0f64.sqrt())).ln() / 12.0;
        let c = Point::new(vec![re(c1), im(PI / 12.0), im(PI / 2.0)]).unwrap();
        let g = Polynomial::linear(3, &[re(24.0), re(12.0), re(2.0)])
            .unwrap()
            .add(&Polynomial::constant(3, re(18.0)))
            .unwrap();
        let h = parse_expression("e^(12*z1+6*z2+z3+9)", 3).expect("fixed expression parses");
        out.push(GoldenExample {
            id: "t2e1",
            description: "theorem-2 case-I checker instance",
            kind: EquationKind::E2,
            theorem: 2,
            ctx: TheoremContext::new([re(3.0), re(2.0), re(3.0), re(4.0)], 1, Some(2), c).unwrap(),
            params: SolutionParams::GivenAux(GivenAuxParams { h, g }),
            case: GoldenCase::T2(Theorem2Case::Checker),
            f_text: "e^(12*z1+6*z2+z3+9)",
        });
    }
    {
        let c = Point::new(vec![im(PI), im(PI), im(2.0 * PI)]).unwrap();
        out.push(GoldenExample {
            id: "t2e2",
            description: "theorem-2 two-term family",
            kind: EquationKind::E2,
            theorem: 2,
            ctx: TheoremContext::new(
                [re(2.0), re(2.0), re(3.0), re(4.0) / im(3.0)],
                1,
                Some(2),
                c,
            )
            .unwrap(),
            params: pair(
                [re(2.0), re(3.0), re(0.5)],
                [re(-2.0), re(3.0), re(1.5)],
                re(7.0),
                re(9.0),
                None,
                None,
            ),
            case: GoldenCase::T2(Theorem2Case::TwoTerm),
            f_text: "((3*i-2)/(2*i*(12+8*i)))*e^(2*z1+3*z2+(1/2)*z3+7)+((3*i+2)/(2*i*(-12+8*i)))*e^(-2*z1+3*z2+(3/2)*z3+9)",
        });
    }

    // ---- third theorem ----
    {
        let c = Point::new(vec![re(1.0), re(2.0), re(3.0)]).unwrap();
        let g = Polynomial::linear(3, &[re(3.0), re(5.0), re(1.0)])
            .unwrap()
            .add(&Polynomial::constant(3, re(7.0)))
            .unwrap();
        out.push(GoldenExample {
            id: "t3e1",
            description: "theorem-3 polynomial-exponent family",
            kind: EquationKind::E3,
            theorem: 3,
            ctx: TheoremContext::new([re(5.0), re(-6.0), re(4.0), re(1.0)], 1, None, c).unwrap(),
            params: SolutionParams::PolyExponent(PolyExponentParams {
                sign: Some(Sign::Plus),
                g,
            }),
            case: GoldenCase::T34(Theorem34Case::PolyExponent),
            f_text: "e^((3*z1+5*z2+z3-9)/2)/5",
        });
    }
    {
        let c = Point::new(vec![im(-PI), im(PI), im(3.0 * PI)]).unwrap();
        let s = var(2).scale(re(3.0)).sub(&var(3)).unwrap();
        let cubic = s.mul(&s).unwrap().mul(&s).unwrap();
        let square = s.mul(&s).unwrap();
        out.push(GoldenExample {
            id: "t3e2",
            description: "theorem-3 two-term family, cubic periodic part",
            kind: EquationKind::E3,
            theorem: 3,
            ctx: TheoremContext::new([im(2.0), re(5.0), re(-3.0), re(1.0)], 1, None, c.clone())
                .unwrap(),
            params: pair(
                [re(1.0), re(3.0), re(2.0)],
                [re(2.0), re(5.0), re(1.0)],
                re(7.0),
                re(5.0),
                Some(PeriodicPart::new(cubic, &c).unwrap()),
                Some(PeriodicPart::new(square, &c).unwrap()),
            ),
            case: GoldenCase::T34(Theorem34Case::TwoTerm),
            f_text:
                "(1/(4*i))*e^((3*z2-z3)^3+z1+3*z2+2*z3+7)+(1/(4*i))*e^((3*z2-z3)^2+2*z1+5*z2+z3+5)",
        });
    }

    // ---- fourth theorem ----
    {
        let c = Point::new(vec![im(PI), re(3.0), im(-PI)]).unwrap();
        let g = Polynomial::linear(3, &[re(7.0), re(-3.0), re(5.0)])
            .unwrap()
            .add(&Polynomial::constant(3, re(9.0)))
            .unwrap();
        out.push(GoldenExample {
            id: "t4e1",
            description: "theorem-4 polynomial-exponent family, mixed derivative",
            kind: EquationKind::E4,
            theorem: 4,
            ctx: TheoremContext::new([re(2.0), re(6.0), re(4.0), re(1.0)], 1, Some(2), c).unwrap(),
            params: SolutionParams::PolyExponent(PolyExponentParams {
                sign: Some(Sign::Minus),
                g,
            }),
            case: GoldenCase::T34(Theorem34Case::PolyExponent),
            f_text: "e^((7*z1-3*z2+5*z3+18)/2)/2",
        });
    }
    {
        let c = Point::new(vec![im(-PI), im(PI), im(PI)]).unwrap();
        out.push(GoldenExample {
            id: "t4e2",
            description: "theorem-4 two-term family",
            kind: EquationKind::E4,
            theorem: 4,
            ctx: TheoremContext::new([im(-12.0), re(-9.0), re(5.0), re(1.0)], 1, Some(2), c)
                .unwrap(),
            params: pair(
                [re(2.0), re(3.0), re(4.0)],
                [re(3.0), re(1.0), re(5.0)],
                re(5.0),
                re(7.0),
                None,
                None,
            ),
            case: GoldenCase::T34(Theorem34Case::TwoTerm),
            f_text: "(1/(24*i))*e^(2*z1+3*z2+4*z3+5)+(1/(24*i))*e^(3*z1+z2+5*z3+7)",
        });
    }

    out
}

/// One coefficient override, e.g. `t1e2.a3 = 3.001`: applied to the
/// equation only, never to the construction, so a perturbed equation is
/// verified against the unperturbed solution.
#[derive(Clone, Debug)]
pub struct Override {
    pub example: String,
    pub coefficient: usize,
    pub value: Scalar,
}

#[derive(Clone, Debug)]
pub struct GoldenRun {
    pub id: String,
    pub description: String,
    pub verification: VerificationReport,
    pub constraints: ConstraintReport,
    pub residual_terms: usize,
    pub residual_max_coeff: f64,
    pub f_text_matches: bool,
    pub millis: f64,
}

impl GoldenRun {
    pub fn verified(&self) -> bool {
        self.verification.verdict == Verdict::Verified
    }
}

/// Runs verification for every example, with optional coefficient
/// overrides and a shared sampling configuration.
pub fn run_golden_suite(
    overrides: &[Override],
    sampling: &SamplingConfig,
) -> Result<Vec<GoldenRun>, Error> {
    let mut runs = Vec::with_capacity(9);
    for example in all_examples() {
        let start = Instant::now();
        let built = example.construct()?;
        let constraints = check_constraints(&built.constraints, 1e-9);

        let mut a = example.ctx.a;
        for o in overrides {
            if o.example == example.id {
                if o.coefficient == 0 || o.coefficient > 4 {
                    return Err(Error::IndexOutOfRange {
                        index: o.coefficient,
                        dim: 4,
                    });
                }
                a[o.coefficient - 1] = o.value;
            }
        }
        let spec = EquationSpec::new(
            example.kind,
            a,
            example.ctx.mu,
            example.ctx.nu,
            example.ctx.c.clone(),
            built.g.clone(),
        )?;
        let residual = spec.residual(&built.f)?;
        let verification = spec.verify(&built.f, sampling)?;
        let f_text_matches = match parse_expression(example.f_text, 3) {
            Ok(parsed) => built.f.equivalent(&parsed).unwrap_or(false),
            Err(_) => false,
        };
        runs.push(GoldenRun {
            id: example.id.to_string(),
            description: example.description.to_string(),
            verification,
            constraints,
            residual_terms: residual.term_count(),
            residual_max_coeff: residual.max_coeff_magnitude(),
            f_text_matches,
            millis: start.elapsed().as_secs_f64() * 1e3,
        });
    }
    Ok(runs)
}
