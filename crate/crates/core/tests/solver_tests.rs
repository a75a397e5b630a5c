//! Solver checks: closed-form shift inversion against hand-derived values,
//! Newton root search against the golden parameters, branch structure, and
//! randomized round trips through the theorem constraints.

use fermat_pdde::error::Error;
use fermat_pdde::poly::Point;
use fermat_pdde::solver::*;
use fermat_pdde::testkit;
use fermat_pdde::theorems::{
    check_constraints, construct_t1, construct_t3, construct_t4, SingleTermParams, SolutionParams,
    Theorem1Case, Theorem34Case, TheoremContext, TwoTermParams,
};
use fermat_pdde::Scalar;

fn re(x: f64) -> Scalar {
    Scalar::new(x, 0.0)
}

fn im(x: f64) -> Scalar {
    Scalar::new(0.0, x)
}

const PI: f64 = std::f64::consts::PI;

/// Known shift inversion: with
/// weights ½(1,2,3), R = -3/4, c₂ = -ln4, c₃ = 2πi/3 the principal branch
/// gives c₁ = 2 ln 3 (algebraic oracle: ½(c₁ - 2 ln 4) + πi = ln(3/4) + iπ).
#[test]
fn shift_component_recovers_worked_value() {
    let lc = LogConstraint {
        weights: vec![re(0.5), re(1.0), re(1.5)],
        target: re(-0.75),
        knowns: vec![re(0.0), re(-(4.0f64.ln())), im(2.0 * PI / 3.0)],
        unknown: 1,
        branch: 0,
    };
    let c1 = solve_shift_component(&lc).unwrap();
    assert!((c1 - re(2.0 * 3.0f64.ln())).norm() < 1e-12);

    // solution satisfies the constraint
    let total: Scalar = lc
        .weights
        .iter()
        .zip([c1, lc.knowns[1], lc.knowns[2]])
        .map(|(w, c)| w * c)
        .sum();
    assert!((total.exp() - lc.target).norm() <= 1e-9 * lc.target.norm().max(1.0));
}

#[test]
fn shift_component_trivial_and_branches() {
    // R = 1, all other c_j = 0, k = 0 -> c_m = 0
    let lc = LogConstraint {
        weights: vec![re(2.0), re(1.0)],
        target: re(1.0),
        knowns: vec![re(0.0), re(0.0)],
        unknown: 1,
        branch: 0,
    };
    assert!(solve_shift_component(&lc).unwrap().norm() < 1e-15);

    // k = 1 shifts by 2πi/w_m
    let shifted = solve_shift_component(&LogConstraint {
        branch: 1,
        ..lc.clone()
    })
    .unwrap();
    assert!((shifted - im(PI)).norm() < 1e-12);

    // branch consistency: k and k+1 differ by exactly 2πi/w_m
    let k2 = solve_shift_component(&LogConstraint {
        branch: 2,
        ..lc.clone()
    })
    .unwrap();
    assert!(((k2 - shifted) - im(PI)).norm() < 1e-12);

    assert!(matches!(
        solve_shift_component(&LogConstraint {
            target: re(0.0),
            ..lc.clone()
        }),
        Err(Error::ZeroTarget)
    ));
    assert!(matches!(
        solve_shift_component(&LogConstraint {
            weights: vec![re(0.0), re(1.0)],
            ..lc
        }),
        Err(Error::ZeroWeight)
    ));
}

/// Newton from the grid finds β₁ = 5 for the theorem-1 worked parameters
/// (grid + Newton oracle; 5 is known valid).
#[test]
fn newton_finds_worked_beta() {
    let c = Point::new(vec![
        re(0.4 * (4.0f64 / 15.0).ln()),
        re((15.0f64 / 4.0).ln()),
        re((4.0f64 / 15.0).ln()),
    ])
    .unwrap();
    let ctx = TheoremContext::new([re(3.0), re(5.0), re(-3.0), re(1.0)], 1, None, c).unwrap();
    let chi = vec![re(0.0), re(7.0), re(3.0)]; // unknown at index 1
    let rel = exponent_relation(RelationFamily::T1Beta, &ctx, (re(1.0), re(0.0)), &chi, 1).unwrap();
    let roots = solve_exponent_parameter(&rel, &RootSearchConfig::default()).unwrap();
    assert!(
        roots.iter().any(|r| (r - re(5.0)).norm() < 1e-8),
        "roots {roots:?} do not contain 5"
    );
    // every returned root satisfies the relation
    for r in &roots {
        assert!(rel.eval(*r).norm() <= 1e-9 * rel.rhs(*r).norm().max(1.0));
    }
}

/// When the unknown does not appear on the right-hand side the relation
/// reduces to the closed-form shift path; both must agree.
#[test]
fn newton_cross_checks_closed_form() {
    let c = Point::new(vec![re(1.0), re(2.0), re(3.0)]).unwrap();
    let ctx = TheoremContext::new([re(5.0), re(-6.0), re(4.0), re(1.0)], 1, None, c).unwrap();
    // T3 b-relation with unknown at index 3 (not mu): R is constant
    let chi = vec![re(0.4), re(0.3), re(0.0)];
    let rel = exponent_relation(RelationFamily::T3B, &ctx, (re(0.0), re(0.0)), &chi, 3).unwrap();
    assert!(rel.r[1].norm() == 0.0 && rel.r[2].norm() == 0.0);
    let roots = solve_exponent_parameter(&rel, &RootSearchConfig::default()).unwrap();

    // closed form: b_3 = (Log R + 2πik - Σ_{j≠3} b_j c_j)/c_3
    let log_r = Scalar::new(rel.r[0].norm().ln(), rel.r[0].arg());
    let rest = re(0.4) * re(1.0) + re(0.3) * re(2.0);
    let via_log = (log_r - rest) / re(3.0);
    assert!(
        roots.iter().any(|r| (r - via_log).norm() < 1e-8),
        "no root matches the closed form"
    );
}

#[test]
fn no_root_when_rhs_vanishes() {
    // e^{L} = 0 has no solution
    let rel = ExponentialRelation {
        l0: re(0.0),
        l1: re(1.0),
        r: [re(0.0), re(0.0), re(0.0)],
    };
    assert!(matches!(
        solve_exponent_parameter(&rel, &RootSearchConfig::default()),
        Err(Error::NoRootFound)
    ));
}

/// Random K₃, K₄ with K₃² + K₄² = 1 via the complex cosine/sine pair.
fn random_k_pair(rng: &mut rand_chacha::ChaCha8Rng) -> (Scalar, Scalar) {
    let theta = testkit::random_scalar(rng, 1.0);
    let i = Scalar::new(0.0, 1.0);
    let k3 = ((i * theta).exp() + (-i * theta).exp()) / re(2.0);
    let k4 = ((i * theta).exp() - (-i * theta).exp()) / (re(2.0) * i);
    (k3, k4)
}

/// Round trip: build a consistent parameter set by solving for one shift
/// component, erase it, re-solve with the matching branch, and recover it;
/// then check the full constraint list passes with the recovered value.
#[test]
fn randomized_round_trips() {
    let mut rng = testkit::rng(424242);
    let mut done = 0;
    while done < 60 {
        let dim = 3;
        let a = [
            testkit::random_scalar_away_from_zero(&mut rng, 1.5, 0.3),
            testkit::random_scalar_away_from_zero(&mut rng, 1.5, 0.3),
            testkit::random_scalar_away_from_zero(&mut rng, 1.5, 0.3),
            testkit::random_scalar_away_from_zero(&mut rng, 1.5, 0.3),
        ];
        let (k3, k4) = random_k_pair(&mut rng);
        let family = match done % 3 {
            0 => RelationFamily::T1Beta,
            1 => RelationFamily::T3Beta,
            _ => RelationFamily::T4B,
        };
        let nu = if family == RelationFamily::T4B {
            Some(2)
        } else {
            None
        };
        let mut chi: Vec<Scalar> = (0..dim)
            .map(|_| testkit::random_scalar_away_from_zero(&mut rng, 1.0, 0.2))
            .collect();
        if family == RelationFamily::T1Beta || family == RelationFamily::T3Beta {
            chi[0] = testkit::random_scalar_away_from_zero(&mut rng, 1.0, 0.3);
        }
        let mut c_coords: Vec<Scalar> = (0..dim)
            .map(|_| testkit::random_scalar(&mut rng, 1.0))
            .collect();
        c_coords[2] = re(1.0); // placeholder, solved below

        // degenerate K-pairs make the beta relations blow up; skip them
        if k4.norm() < 0.2 || k3.norm() < 0.2 {
            continue;
        }

        let ctx_probe = match TheoremContext::new(a, 1, nu, Point::new(c_coords.clone()).unwrap()) {
            Ok(ctx) => ctx,
            Err(_) => continue,
        };
        let lc = match shift_constraint(family, &ctx_probe, (k3, k4), &chi, 3, 0) {
            Ok(lc) => lc,
            Err(_) => continue,
        };
        let solved = match solve_shift_component(&lc) {
            Ok(v) => v,
            Err(_) => continue,
        };
        if !solved.re.is_finite() || !solved.im.is_finite() || solved.norm() > 50.0 {
            continue;
        }
        c_coords[2] = solved;

        // erase and re-solve with the matching branch
        let ctx = TheoremContext::new(a, 1, nu, Point::new(c_coords.clone()).unwrap()).unwrap();
        let branch = matching_branch(&lc.weights, &c_coords, lc.target);
        let lc2 = shift_constraint(family, &ctx, (k3, k4), &chi, 3, branch).unwrap();
        let recovered = solve_shift_component(&lc2).unwrap();
        assert!(
            (recovered - solved).norm() <= 1e-9 * solved.norm().max(1.0),
            "round trip failed: {solved} vs {recovered}"
        );

        // the constraint list of the corresponding constructor passes
        let report = match family {
            RelationFamily::T1Beta => {
                let params = SolutionParams::SingleTerm(SingleTermParams {
                    k3,
                    k4,
                    beta: chi.clone(),
                    beta_const: testkit::random_scalar(&mut rng, 1.0),
                    periodic: None,
                    aux: None,
                });
                let built = construct_t1(&ctx, &params, Theorem1Case::BetaMuNonzero).unwrap();
                check_constraints(&built.constraints, 1e-9)
            }
            RelationFamily::T3Beta => {
                let params = SolutionParams::SingleTerm(SingleTermParams {
                    k3,
                    k4,
                    beta: chi.clone(),
                    beta_const: testkit::random_scalar(&mut rng, 1.0),
                    periodic: None,
                    aux: None,
                });
                let built = construct_t3(&ctx, &params, Theorem34Case::SingleTerm).unwrap();
                check_constraints(&built.constraints, 1e-9)
            }
            _ => {
                // T4 two-term: make the d-relation hold as well by solving
                // its own shift component is not possible (c is fixed), so
                // check only the b-item of the emitted constraints
                let params = SolutionParams::TwoTerm(TwoTermParams {
                    k1: re(1.0),
                    k2: re(1.0),
                    b: chi.clone(),
                    d: chi.clone(),
                    a_const: re(0.0),
                    b_const: re(0.0),
                    periodic1: None,
                    periodic2: None,
                    aux: None,
                });
                let built = construct_t4(&ctx, &params, Theorem34Case::TwoTerm).unwrap();
                let report = check_constraints(&built.constraints, 1e-9);
                let item = report
                    .items
                    .iter()
                    .find(|i| i.label.starts_with("exp(<b,c>)"))
                    .unwrap();
                assert!(item.pass, "b-relation failed: {item:?}");
                done += 1;
                continue;
            }
        };
        let item = report
            .items
            .iter()
            .find(|i| i.label.contains("exp((1/2)<beta,c>)"))
            .unwrap();
        assert!(item.pass, "beta relation failed: {:?}", item);
        done += 1;
    }
}

/// Roots found for the golden relation, substituted back into the
/// constructor, pass the constraint check.
#[test]
fn newton_roots_pass_constraints() {
    let c = Point::new(vec![
        re(0.4 * (4.0f64 / 15.0).ln()),
        re((15.0f64 / 4.0).ln()),
        re((4.0f64 / 15.0).ln()),
    ])
    .unwrap();
    let ctx = TheoremContext::new([re(3.0), re(5.0), re(-3.0), re(1.0)], 1, None, c).unwrap();
    let chi = vec![re(0.0), re(7.0), re(3.0)];
    let rel = exponent_relation(RelationFamily::T1Beta, &ctx, (re(1.0), re(0.0)), &chi, 1).unwrap();
    let roots = solve_exponent_parameter(&rel, &RootSearchConfig::default()).unwrap();
    for root in roots {
        let params = SolutionParams::SingleTerm(SingleTermParams {
            k3: re(1.0),
            k4: re(0.0),
            beta: vec![root, re(7.0), re(3.0)],
            beta_const: re(1.0),
            periodic: None,
            aux: None,
        });
        let built = construct_t1(&ctx, &params, Theorem1Case::BetaMuNonzero).unwrap();
        let report = check_constraints(&built.constraints, 1e-9);
        let item = report
            .items
            .iter()
            .find(|i| i.label.contains("exp((1/2)<beta,c>)"))
            .unwrap();
        assert!(item.pass, "root {root} does not satisfy the constraint");
    }
}
