//! Agreement of the two verification passes on a random corpus: a
//! canonically zero residual implies the numeric pass succeeds, and a
//! numeric failure implies the residual was symbolically nonzero. Also the
//! randomized end-to-end property: parameter sets completed through the
//! shift constraint construct solutions that verify.

use fermat_pdde::pdde::{EquationKind, EquationSpec, SamplingConfig, Verdict};
use fermat_pdde::poly::Point;
use fermat_pdde::solver::{
    matching_branch, shift_constraint, solve_shift_component, RelationFamily,
};
use fermat_pdde::testkit;
use fermat_pdde::theorems::*;
use fermat_pdde::Scalar;

fn re(x: f64) -> Scalar {
    Scalar::new(x, 0.0)
}

/// Random valid T1 case-I data: shift component c₃ solved from the
/// exponential constraint so that every emitted item passes.
fn random_t1_solution(rng: &mut testkit::TestRng) -> Option<(TheoremContext, Construction)> {
    let i = Scalar::new(0.0, 1.0);
    let a = [
        testkit::random_scalar_away_from_zero(rng, 1.5, 0.3),
        testkit::random_scalar_away_from_zero(rng, 1.5, 0.3),
        testkit::random_scalar_away_from_zero(rng, 1.5, 0.3),
        testkit::random_scalar_away_from_zero(rng, 1.5, 0.3),
    ];
    let theta = testkit::random_scalar(rng, 1.0);
    let k3 = ((i * theta).exp() + (-i * theta).exp()) / re(2.0);
    let k4 = ((i * theta).exp() - (-i * theta).exp()) / (re(2.0) * i);
    if k3.norm() < 0.2 || k4.norm() < 0.2 {
        return None;
    }
    let beta: Vec<Scalar> = (0..3)
        .map(|_| testkit::random_scalar_away_from_zero(rng, 1.0, 0.3))
        .collect();
    let mut c_coords: Vec<Scalar> = (0..3).map(|_| testkit::random_scalar(rng, 1.0)).collect();
    c_coords[2] = re(1.0);
    let probe = TheoremContext::new(a, 1, None, Point::new(c_coords.clone()).unwrap()).ok()?;
    let lc = shift_constraint(RelationFamily::T1Beta, &probe, (k3, k4), &beta, 3, 0).ok()?;
    let solved = solve_shift_component(&lc).ok()?;
    if !solved.re.is_finite() || !solved.im.is_finite() || solved.norm() > 20.0 {
        return None;
    }
    c_coords[2] = solved;
    let branch = matching_branch(&lc.weights, &c_coords, lc.target);
    if branch != 0 {
        // the solved component was produced on branch 0 by construction
        return None;
    }
    let ctx = TheoremContext::new(a, 1, None, Point::new(c_coords).unwrap()).unwrap();
    let params = SolutionParams::SingleTerm(SingleTermParams {
        k3,
        k4,
        beta,
        beta_const: testkit::random_scalar(rng, 1.0),
        periodic: None,
        aux: None,
    });
    let built = construct_t1(&ctx, &params, Theorem1Case::BetaMuNonzero).ok()?;
    Some((ctx, built))
}

#[test]
fn randomized_end_to_end_constraints_imply_verified() {
    let mut rng = testkit::rng(314159);
    let mut done = 0;
    while done < 40 {
        let Some((ctx, built)) = random_t1_solution(&mut rng) else {
            continue;
        };
        let report = check_constraints(&built.constraints, 1e-9);
        if !report.all_pass {
            continue;
        }
        let spec = EquationSpec::new(
            EquationKind::E1,
            ctx.a,
            ctx.mu,
            ctx.nu,
            ctx.c.clone(),
            built.g.clone(),
        )
        .unwrap();
        let verification = spec.verify(&built.f, &SamplingConfig::default()).unwrap();
        assert_eq!(
            verification.verdict,
            Verdict::Verified,
            "constraints passed but verification did not: {verification:?}"
        );
        done += 1;
    }
}

#[test]
fn symbolic_and_numeric_checks_agree() {
    let mut rng = testkit::rng(271828);
    let mut done = 0;
    while done < 60 {
        // half the corpus: genuine solutions; other half: random candidates
        let (spec, f) = if done % 2 == 0 {
            let Some((ctx, built)) = random_t1_solution(&mut rng) else {
                continue;
            };
            let spec = EquationSpec::new(
                EquationKind::E1,
                ctx.a,
                ctx.mu,
                ctx.nu,
                ctx.c.clone(),
                built.g.clone(),
            )
            .unwrap();
            (spec, built.f)
        } else {
            let a = [
                testkit::random_scalar_away_from_zero(&mut rng, 1.5, 0.3),
                testkit::random_scalar_away_from_zero(&mut rng, 1.5, 0.3),
                testkit::random_scalar_away_from_zero(&mut rng, 1.5, 0.3),
                testkit::random_scalar_away_from_zero(&mut rng, 1.5, 0.3),
            ];
            let c = testkit::random_point(&mut rng, 3, 1.0);
            if c.is_zero() {
                continue;
            }
            let mut g = testkit::random_polynomial(&mut rng, 3, 2, 4, 1.0);
            if g.degree().unwrap_or(0) == 0 {
                continue;
            }
            g = g.scale(re(1.0));
            let Ok(spec) = EquationSpec::new(EquationKind::E1, a, 1, None, c, g) else {
                continue;
            };
            let f = testkit::random_exppoly(&mut rng, 3, 3, 1, 1, 0.8);
            (spec, f)
        };
        let report = spec.verify(&f, &SamplingConfig::default()).unwrap();
        let numeric_pass = matches!(
            report.verdict,
            Verdict::Verified | Verdict::SymbolicOnlyFailed
        );
        // symbolically zero residuals must never fail the numeric pass
        assert!(
            !(report.symbolic_zero && !numeric_pass),
            "numeric pass contradicted a zero residual: {report:?}"
        );
        done += 1;
    }
}
