//! The four Fermat-type PDDEs, their residuals, and verification.
//!
//! Each equation has the shape A² + B² = e^{g} where A, B are built from f
//! by partial derivatives, the shift f(z+c) and the difference Δf. The
//! residual A² + B² − e^{g} lives in the exponential-polynomial class, so
//! "f solves the equation" is equivalent to a canonical zero test. A second,
//! independent check evaluates A, B and e^{g} pointwise at seeded random
//! samples.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::exppoly::ExpPoly;
use crate::poly::{Point, Polynomial};
use crate::tol;
use crate::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquationKind {
    E1,
    E2,
    E3,
    E4,
}

impl EquationKind {
    pub fn needs_nu(self) -> bool {
        matches!(self, EquationKind::E2 | EquationKind::E4)
    }

    pub fn label(self) -> &'static str {
        match self {
            EquationKind::E1 => "e1",
            EquationKind::E2 => "e2",
            EquationKind::E3 => "e3",
            EquationKind::E4 => "e4",
        }
    }
}

/// A validated equation instance.
///
/// - E1: (a₁ ∂f/∂z_μ)² + (a₂f + a₃f(z+c) + a₄ ∂²f/∂z_μ²)² = e^{g}
/// - E2: (a₁Δf + a₂ ∂f/∂z_μ)² + (a₃Δf + a₄ ∂f/∂z_ν)² = e^{g}
/// - E3: a₁²f²(z+c) + (a₂ ∂f/∂z_μ + a₃ ∂²f/∂z_μ²)² = e^{g}
/// - E4: a₁²f²(z+c) + (a₂ ∂f/∂z_μ + a₃ ∂²f/∂z_μ∂z_ν)² = e^{g}
#[derive(Clone, Debug)]
pub struct EquationSpec {
    pub kind: EquationKind,
    pub a: [Scalar; 4],
    pub mu: usize,
    pub nu: Option<usize>,
    pub c: Point,
    pub g: Polynomial,
}

impl EquationSpec {
    /// Validates the theorem hypotheses: nonzero coefficients (and
    /// a₁² + a₃² ≠ 0 for E2), nonzero shift, 1 ≤ μ < ν ≤ n where ν is
    /// required, and a non-constant right-hand exponent.
    pub fn new(
        kind: EquationKind,
        a: [Scalar; 4],
        mu: usize,
        nu: Option<usize>,
        c: Point,
        g: Polynomial,
    ) -> Result<Self, Error> {
        let dim = c.dim();
        if g.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: g.dim(),
            });
        }
        const NAMES: [&str; 4] = ["a1", "a2", "a3", "a4"];
        for (i, ai) in a.iter().enumerate() {
            if ai.norm() <= tol::MERGE {
                return Err(Error::ZeroCoefficient(NAMES[i]));
            }
        }
        if kind == EquationKind::E2 {
            let s = a[0] * a[0] + a[2] * a[2];
            if s.norm() <= tol::MERGE * (a[0].norm().powi(2)).max(a[2].norm().powi(2)) {
                return Err(Error::ZeroCoefficient("a1^2 + a3^2"));
            }
        }
        if c.is_zero() {
            return Err(Error::ZeroShift);
        }
        if mu == 0 || mu > dim {
            return Err(Error::IndexOutOfRange { index: mu, dim });
        }
        if kind.needs_nu() {
            match nu {
                Some(v) if mu < v && v <= dim => {}
                _ => return Err(Error::IndexOrder),
            }
        }
        if g.degree().unwrap_or(0) == 0 {
            return Err(Error::ConstantRhs);
        }
        Ok(EquationSpec {
            kind,
            a,
            mu,
            nu,
            c,
            g,
        })
    }

    pub fn dim(&self) -> usize {
        self.c.dim()
    }

    /// The two quantities whose squares form the left-hand side.
    pub fn lhs_pieces(&self, f: &ExpPoly) -> Result<(ExpPoly, ExpPoly), Error> {
        if f.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: f.dim(),
            });
        }
        let [a1, a2, a3, a4] = self.a;
        let mu = self.mu;
        match self.kind {
            EquationKind::E1 => {
                let first = f.partial(mu)?.scale(a1);
                let second = f
                    .scale(a2)
                    .add(&f.shift(&self.c)?.scale(a3))?
                    .add(&f.partial(mu)?.partial(mu)?.scale(a4))?;
                Ok((first, second))
            }
            EquationKind::E2 => {
                let nu = self.nu.ok_or(Error::IndexOrder)?;
                let delta = f.difference(&self.c)?;
                let first = delta.scale(a1).add(&f.partial(mu)?.scale(a2))?;
                let second = delta.scale(a3).add(&f.partial(nu)?.scale(a4))?;
                Ok((first, second))
            }
            EquationKind::E3 => {
                let first = f.shift(&self.c)?.scale(a1);
                let second = f
                    .partial(mu)?
                    .scale(a2)
                    .add(&f.partial(mu)?.partial(mu)?.scale(a3))?;
                Ok((first, second))
            }
            EquationKind::E4 => {
                let nu = self.nu.ok_or(Error::IndexOrder)?;
                let first = f.shift(&self.c)?.scale(a1);
                let second = f
                    .partial(mu)?
                    .scale(a2)
                    .add(&f.partial(mu)?.partial(nu)?.scale(a3))?;
                Ok((first, second))
            }
        }
    }

    /// LHS(f) − e^{g} as a canonical exponential polynomial.
    pub fn residual(&self, f: &ExpPoly) -> Result<ExpPoly, Error> {
        let (first, second) = self.lhs_pieces(f)?;
        first
            .mul(&first)?
            .add(&second.mul(&second)?)?
            .sub(&ExpPoly::exp_of_poly(&self.g))
    }

    /// Symbolic plus Monte Carlo verification.
    pub fn verify(&self, f: &ExpPoly, cfg: &SamplingConfig) -> Result<VerificationReport, Error> {
        let symbolic_zero = self.residual(f)?.is_zero();
        let (first, second) = self.lhs_pieces(f)?;

        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut max_abs_residual = 0.0f64;
        let mut scale = 0.0f64;
        let mut samples_done = 0usize;
        let mut resampled = 0usize;
        let mut attempts = 0usize;
        let attempt_cap = cfg.sample_count.saturating_mul(100).max(1000);
        while samples_done < cfg.sample_count && attempts < attempt_cap {
            attempts += 1;
            let z = sample_polydisc(&mut rng, self.dim(), cfg.radius);
            // discard samples in the exp() overflow region and redraw
            let (v1, f1) = first.eval_flagged(&z)?;
            let (v2, f2) = second.eval_flagged(&z)?;
            let gz = self.g.eval(&z)?;
            if f1 || f2 || gz.re.abs() > tol::OVERFLOW_RE {
                resampled += 1;
                continue;
            }
            let lhs = v1 * v1 + v2 * v2;
            let rhs = gz.exp();
            // precision guard, same rationale as the overflow guard: when
            // the squared pieces dwarf e^{g}, their cancellation noise
            // (~1e-15 relative) would swamp the tolerance band, so the
            // sample carries no information either way
            let piece_sq = v1.norm().max(v2.norm()).powi(2);
            if piece_sq * 1e-15 > 0.01 * cfg.tol_rel * rhs.norm().max(1.0) {
                resampled += 1;
                continue;
            }
            max_abs_residual = max_abs_residual.max((lhs - rhs).norm());
            scale = scale.max(lhs.norm()).max(rhs.norm()).max(1.0);
            samples_done += 1;
        }
        let numeric_pass = samples_done > 0 && max_abs_residual <= cfg.tol_rel * scale;
        let verdict = match (symbolic_zero, numeric_pass) {
            (true, true) => Verdict::Verified,
            (false, true) => Verdict::SymbolicOnlyFailed,
            (true, false) => Verdict::NumericOnlyFailed,
            (false, false) => Verdict::Failed,
        };
        Ok(VerificationReport {
            symbolic_zero,
            max_abs_residual,
            scale,
            sample_count: samples_done,
            resampled,
            verdict,
        })
    }
}

/// Uniform point of the polydisc of the given radius, one rejection-sampled
/// disc draw per coordinate.
fn sample_polydisc(rng: &mut ChaCha8Rng, dim: usize, radius: f64) -> Point {
    let mut coords = Vec::with_capacity(dim);
    for _ in 0..dim {
        loop {
            let re: f64 = rng.gen_range(-radius..=radius);
            let im: f64 = rng.gen_range(-radius..=radius);
            if re * re + im * im <= radius * radius {
                coords.push(Scalar::new(re, im));
                break;
            }
        }
    }
    Point::new(coords).expect("sampled coordinates are finite")
}

/// Monte Carlo configuration; the seed makes runs reproducible.
#[derive(Clone, Copy, Debug)]
pub struct SamplingConfig {
    pub sample_count: usize,
    pub radius: f64,
    pub seed: u64,
    pub tol_rel: f64,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig {
            sample_count: 100,
            radius: 1.0,
            seed: 20240001,
            tol_rel: 1e-6,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    SymbolicOnlyFailed,
    NumericOnlyFailed,
    Failed,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Verified => "Verified",
            Verdict::SymbolicOnlyFailed => "SymbolicOnlyFailed",
            Verdict::NumericOnlyFailed => "NumericOnlyFailed",
            Verdict::Failed => "Failed",
        }
    }
}

/// Outcome of the two verification passes. `scale` is
/// max(|LHS|, |RHS|, 1) over the samples; the numeric pass succeeds when
/// max |LHS − RHS| ≤ tol_rel·scale.
#[derive(Clone, Copy, Debug)]
pub struct VerificationReport {
    pub symbolic_zero: bool,
    pub max_abs_residual: f64,
    pub scale: f64,
    pub sample_count: usize,
    pub resampled: usize,
    pub verdict: Verdict,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(x: f64) -> Scalar {
        Scalar::new(x, 0.0)
    }

    fn im(x: f64) -> Scalar {
        Scalar::new(0.0, x)
    }

    fn lin3(w: [f64; 3], k: f64) -> Polynomial {
        Polynomial::linear(3, &[re(w[0]), re(w[1]), re(w[2])])
            .unwrap()
            .add(&Polynomial::constant(3, re(k)))
            .unwrap()
    }

    /// Worked e1 instance: a=(2,1,3,5), μ=1,
    /// c=(2ln3, −ln4, 2πi/3), g = z1+2z2+3z3+5, f = e^{g/2}.
    fn worked_e1() -> (EquationSpec, ExpPoly) {
        let g = lin3([1.0, 2.0, 3.0], 5.0);
        let c = Point::new(vec![
            re(2.0 * 3.0f64.ln()),
            re(-(4.0f64.ln())),
            im(2.0 * std::f64::consts::PI / 3.0),
        ])
        .unwrap();
        let spec = EquationSpec::new(
            EquationKind::E1,
            [re(2.0), re(1.0), re(3.0), re(5.0)],
            1,
            None,
            c,
            g.clone(),
        )
        .unwrap();
        let f = ExpPoly::exp_of_poly(&g.scale(re(0.5)));
        (spec, f)
    }

    /// Worked e3 instance: a=(5,−6,4), μ=1, c=(1,2,3),
    /// g = 3z1+5z2+z3+7, f = e^{(3z1+5z2+z3−9)/2}/5.
    fn worked_e3() -> (EquationSpec, ExpPoly) {
        let g = lin3([3.0, 5.0, 1.0], 7.0);
        let c = Point::new(vec![re(1.0), re(2.0), re(3.0)]).unwrap();
        let spec = EquationSpec::new(
            EquationKind::E3,
            [re(5.0), re(-6.0), re(4.0), re(1.0)],
            1,
            None,
            c,
            g,
        )
        .unwrap();
        let f = ExpPoly::exp_of_poly(&lin3([3.0, 5.0, 1.0], -9.0).scale(re(0.5))).scale(re(0.2));
        (spec, f)
    }

    #[test]
    fn validation_errors() {
        let g = lin3([1.0, 0.0, 0.0], 0.0);
        let c = Point::new(vec![re(1.0), re(0.0), re(0.0)]).unwrap();

        // E2 with a1² + a3² = 0
        let err = EquationSpec::new(
            EquationKind::E2,
            [re(1.0), re(1.0), im(1.0), re(1.0)],
            1,
            Some(2),
            c.clone(),
            g.clone(),
        );
        assert!(matches!(err, Err(Error::ZeroCoefficient("a1^2 + a3^2"))));

        // E4 with mu >= nu
        let err = EquationSpec::new(
            EquationKind::E4,
            [re(1.0), re(1.0), re(1.0), re(1.0)],
            2,
            Some(1),
            c.clone(),
            g.clone(),
        );
        assert!(matches!(err, Err(Error::IndexOrder)));

        // zero coefficient, zero shift, constant rhs
        assert!(matches!(
            EquationSpec::new(
                EquationKind::E1,
                [re(0.0), re(1.0), re(1.0), re(1.0)],
                1,
                None,
                c.clone(),
                g.clone()
            ),
            Err(Error::ZeroCoefficient("a1"))
        ));
        assert!(matches!(
            EquationSpec::new(
                EquationKind::E1,
                [re(1.0); 4],
                1,
                None,
                Point::zero(3),
                g.clone()
            ),
            Err(Error::ZeroShift)
        ));
        assert!(matches!(
            EquationSpec::new(
                EquationKind::E1,
                [re(1.0); 4],
                1,
                None,
                c.clone(),
                Polynomial::constant(3, re(2.0))
            ),
            Err(Error::ConstantRhs)
        ));

        // valid E1
        assert!(EquationSpec::new(
            EquationKind::E1,
            [re(2.0), re(1.0), re(3.0), re(5.0)],
            1,
            None,
            c,
            g
        )
        .is_ok());
    }

    #[test]
    fn worked_example_residuals_vanish() {
        let (spec, f) = worked_e1();
        assert!(spec.residual(&f).unwrap().is_zero());

        let (spec, f) = worked_e3();
        assert!(spec.residual(&f).unwrap().is_zero());
    }

    #[test]
    fn perturbed_coefficient_leaves_residual() {
        // a1 enters the first squared piece, which is nonzero, so a 1e-3
        // perturbation shows up at first order
        let (mut spec, f) = worked_e3();
        spec.a[0] += re(1e-3);
        let r = spec.residual(&f).unwrap();
        assert!(!r.is_zero());
        assert!(r.max_coeff_magnitude() >= 1e-4);
    }

    #[test]
    fn flat_perturbation_direction_stays_zero() {
        // for this solution a2·df/dz1 + a3·d2f/dz1^2 vanishes identically,
        // so an a3 perturbation enters only through the square: the residual
        // is ~delta^2·(d2f)^2, fourteen orders below the e^{g}-scale terms
        // and invisible at the merge tolerance
        let (mut spec, f) = worked_e3();
        spec.a[2] += re(1e-3);
        assert!(spec.residual(&f).unwrap().is_zero());
        let report = spec.verify(&f, &SamplingConfig::default()).unwrap();
        assert!(report.max_abs_residual < 1e-4 * report.scale);
    }

    #[test]
    fn verify_verdicts() {
        let (spec, f) = worked_e1();
        let cfg = SamplingConfig::default();
        let report = spec.verify(&f, &cfg).unwrap();
        assert_eq!(report.verdict, Verdict::Verified);
        assert!(report.symbolic_zero);
        assert!(report.max_abs_residual <= cfg.tol_rel * report.scale);
        assert_eq!(report.sample_count, cfg.sample_count);

        // zero candidate fails both checks: the residual is -e^{g}
        let zero = ExpPoly::zero(3);
        let report = spec.verify(&zero, &cfg).unwrap();
        assert_eq!(report.verdict, Verdict::Failed);

        // verdict is seed-independent for a genuine solution
        let other = SamplingConfig {
            seed: 987654321,
            ..cfg
        };
        let report = spec.verify(&f, &other).unwrap();
        assert_eq!(report.verdict, Verdict::Verified);
    }

    #[test]
    fn residual_invariant_under_term_reordering() {
        let (spec, _) = worked_e1();
        let q1 = lin3([0.5, 1.0, 1.5], 0.0);
        let q2 = lin3([1.0, -0.5, 0.0], 0.0);
        let p1 = Polynomial::constant(3, re(0.7));
        let p2 = Polynomial::constant(3, im(0.3));
        let f =
            ExpPoly::from_raw_terms(3, vec![(p1.clone(), q1.clone()), (p2.clone(), q2.clone())])
                .unwrap();
        let g = ExpPoly::from_raw_terms(3, vec![(p2, q2), (p1, q1)]).unwrap();
        let rf = spec.residual(&f).unwrap();
        let rg = spec.residual(&g).unwrap();
        assert!(rf.equivalent(&rg).unwrap());
    }
}
