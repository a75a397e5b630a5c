//! Completes partially specified parameter sets by inverting the theorems'
//! exponential constraints.
//!
//! Two situations arise. A missing shift component c_m appears only inside
//! e^{Σ wⱼcⱼ} = R with everything else known: that inverts in closed form
//! through the principal logarithm with an explicit integer branch. A
//! missing exponent parameter (β_m, b_m or d_m) appears on both sides,
//! giving F(x) = e^{l₀ + l₁x} − (r₀ + r₁x + r₂x²) = 0, which Newton handles
//! from a grid of complex starts with the analytic derivative.

use crate::error::Error;
use crate::theorems::TheoremContext;
use crate::tol;
use crate::Scalar;

/// A constraint e^{Σ wⱼcⱼ} = R with a single unknown shift component.
#[derive(Clone, Debug)]
pub struct LogConstraint {
    /// The βⱼ, bⱼ or dⱼ, already scaled (½ for the β-family).
    pub weights: Vec<Scalar>,
    /// Right-hand value R ≠ 0.
    pub target: Scalar,
    /// Shift components; the entry at `unknown` is ignored.
    pub knowns: Vec<Scalar>,
    /// 1-based index of the unknown component.
    pub unknown: usize,
    /// Branch k of the logarithm: solutions differ by 2πik/w_m.
    pub branch: i64,
}

/// Closed-form inversion: c_m = (Log R + 2πik − Σ_{j≠m} wⱼcⱼ)/w_m.
pub fn solve_shift_component(lc: &LogConstraint) -> Result<Scalar, Error> {
    if lc.weights.len() != lc.knowns.len() {
        return Err(Error::DimensionMismatch {
            expected: lc.weights.len(),
            found: lc.knowns.len(),
        });
    }
    let n = lc.weights.len();
    if lc.unknown == 0 || lc.unknown > n {
        return Err(Error::IndexOutOfRange {
            index: lc.unknown,
            dim: n,
        });
    }
    if lc.target.norm() <= tol::ABS_FLOOR {
        return Err(Error::ZeroTarget);
    }
    let w_m = lc.weights[lc.unknown - 1];
    if w_m.norm() <= tol::MERGE {
        return Err(Error::ZeroWeight);
    }
    let mut rest = Scalar::new(0.0, 0.0);
    for (j, (w, c)) in lc.weights.iter().zip(&lc.knowns).enumerate() {
        if j + 1 != lc.unknown {
            rest += w * c;
        }
    }
    let log_r = Scalar::new(lc.target.norm().ln(), lc.target.arg());
    let tau = Scalar::new(0.0, 2.0 * std::f64::consts::PI * lc.branch as f64);
    Ok((log_r + tau - rest) / w_m)
}

/// Branch index that makes `solve_shift_component` reproduce the original
/// component from a fully known, consistent parameter set.
pub fn matching_branch(weights: &[Scalar], c: &[Scalar], target: Scalar) -> i64 {
    let s: Scalar = weights.iter().zip(c).map(|(w, cj)| w * cj).sum();
    let log_r_im = target.arg();
    ((s.im - log_r_im) / (2.0 * std::f64::consts::PI)).round() as i64
}

/// F(x) = e^{l₀ + l₁·x} − (r₀ + r₁·x + r₂·x²), entire in the unknown.
#[derive(Clone, Debug)]
pub struct ExponentialRelation {
    pub l0: Scalar,
    pub l1: Scalar,
    pub r: [Scalar; 3],
}

impl ExponentialRelation {
    pub fn rhs(&self, x: Scalar) -> Scalar {
        self.r[0] + self.r[1] * x + self.r[2] * x * x
    }

    pub fn eval(&self, x: Scalar) -> Scalar {
        (self.l0 + self.l1 * x).exp() - self.rhs(x)
    }

    pub fn derivative(&self, x: Scalar) -> Scalar {
        self.l1 * (self.l0 + self.l1 * x).exp()
            - (self.r[1] + Scalar::new(2.0, 0.0) * self.r[2] * x)
    }
}

/// Grid of Newton starts over a complex rectangle.
#[derive(Clone, Debug)]
pub struct RootSearchConfig {
    pub re_range: (f64, f64),
    pub im_range: (f64, f64),
    pub re_steps: usize,
    pub im_steps: usize,
    pub max_iter: usize,
    pub tol: f64,
}

impl Default for RootSearchConfig {
    fn default() -> Self {
        RootSearchConfig {
            re_range: (-6.0, 6.0),
            im_range: (-6.0, 6.0),
            re_steps: 13,
            im_steps: 13,
            max_iter: 50,
            tol: tol::NEWTON,
        }
    }
}

/// All Newton-converged roots from the start grid, deduplicated and sorted
/// by (re, im). An empty outcome is reported as `NoRootFound`.
pub fn solve_exponent_parameter(
    rel: &ExponentialRelation,
    cfg: &RootSearchConfig,
) -> Result<Vec<Scalar>, Error> {
    if cfg.max_iter == 0 {
        return Err(Error::ResourceLimit("max_iter must be at least 1"));
    }
    let mut roots: Vec<Scalar> = Vec::new();
    for ri in 0..cfg.re_steps.max(1) {
        for ii in 0..cfg.im_steps.max(1) {
            let t_re = if cfg.re_steps > 1 {
                ri as f64 / (cfg.re_steps - 1) as f64
            } else {
                0.5
            };
            let t_im = if cfg.im_steps > 1 {
                ii as f64 / (cfg.im_steps - 1) as f64
            } else {
                0.5
            };
            let start = Scalar::new(
                cfg.re_range.0 + t_re * (cfg.re_range.1 - cfg.re_range.0),
                cfg.im_range.0 + t_im * (cfg.im_range.1 - cfg.im_range.0),
            );
            if let Some(root) = newton(rel, start, cfg) {
                if !roots.iter().any(|r| (r - root).norm() <= tol::ROOT_DEDUP) {
                    roots.push(root);
                }
            }
        }
    }
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    if roots.is_empty() {
        return Err(Error::NoRootFound);
    }
    Ok(roots)
}

fn newton(rel: &ExponentialRelation, start: Scalar, cfg: &RootSearchConfig) -> Option<Scalar> {
    let mut x = start;
    for _ in 0..cfg.max_iter {
        if (rel.l0 + rel.l1 * x).re > tol::OVERFLOW_RE {
            return None;
        }
        let fx = rel.eval(x);
        if !fx.re.is_finite() || !fx.im.is_finite() {
            return None;
        }
        let dfx = rel.derivative(x);
        if dfx.norm() <= tol::ABS_FLOOR {
            return None;
        }
        let step = fx / dfx;
        // residual smallness alone is fooled by e^{L} -> 0 along
        // Re L -> -inf; a root also needs a stationary Newton step
        if fx.norm() <= cfg.tol * 1.0f64.max(rel.rhs(x).norm())
            && step.norm() <= 1e-8 * x.norm().max(1.0)
        {
            return Some(x);
        }
        x -= step;
    }
    None
}

/// Constraint families whose exponential relations the solver can invert.
/// Beta variants use the half-weighted exponent e^{½Σβⱼcⱼ}; the b/d variants
/// use the plain one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationFamily {
    T1Beta,
    T1B,
    T1D,
    T2Beta,
    T2B,
    T2D,
    T3Beta,
    T3B,
    T3D,
    T4Beta,
    T4B,
    T4D,
}

impl RelationFamily {
    pub fn half_weighted(self) -> bool {
        matches!(
            self,
            RelationFamily::T1Beta
                | RelationFamily::T2Beta
                | RelationFamily::T3Beta
                | RelationFamily::T4Beta
        )
    }

    fn needs_nu(self) -> bool {
        matches!(
            self,
            RelationFamily::T2Beta
                | RelationFamily::T2B
                | RelationFamily::T2D
                | RelationFamily::T4Beta
                | RelationFamily::T4B
                | RelationFamily::T4D
        )
    }
}

/// Right-hand side of the family's constraint as a quadratic in the unknown
/// χ_m; all other entries of `chi` are fixed. `ks` carries (K₃, K₄) for the
/// beta families and is ignored elsewhere.
fn rhs_quadratic(
    family: RelationFamily,
    ctx: &TheoremContext,
    ks: (Scalar, Scalar),
    chi: &[Scalar],
    unknown: usize,
) -> Result<[Scalar; 3], Error> {
    let [a1, a2, a3, a4] = ctx.a;
    let mu = ctx.mu;
    let i = Scalar::new(0.0, 1.0);
    let zero = Scalar::new(0.0, 0.0);
    let one = Scalar::new(1.0, 0.0);
    let (k3, k4) = ks;
    let m = unknown;
    let x_mu = chi[mu - 1];
    // helper: expand coeff*(x payload) depending on whether the unknown sits at mu/nu
    let result = match family {
        RelationFamily::T1Beta => {
            // (a1/(a3 K3))(K4 x/2 - a4 K3 x^2/(4 a1) - a2 K3/a1), x = beta_mu
            if (a3 * k3).norm() <= tol::MERGE {
                return Err(Error::DegenerateDenominator);
            }
            let front = a1 / (a3 * k3);
            if m == mu {
                [
                    front * (-a2 * k3 / a1),
                    front * (k4 / Scalar::new(2.0, 0.0)),
                    front * (-a4 * k3 / (Scalar::new(4.0, 0.0) * a1)),
                ]
            } else {
                [
                    front
                        * (k4 * x_mu / Scalar::new(2.0, 0.0)
                            - a4 * k3 * x_mu * x_mu / (Scalar::new(4.0, 0.0) * a1)
                            - a2 * k3 / a1),
                    zero,
                    zero,
                ]
            }
        }
        RelationFamily::T1B => {
            // -(i a1 x + a4 x^2 + a2)/a3
            if m == mu {
                [-a2 / a3, -(i * a1) / a3, -a4 / a3]
            } else {
                [-(i * a1 * x_mu + a4 * x_mu * x_mu + a2) / a3, zero, zero]
            }
        }
        RelationFamily::T1D => {
            if m == mu {
                [-a2 / a3, (i * a1) / a3, -a4 / a3]
            } else {
                [-(-i * a1 * x_mu + a4 * x_mu * x_mu + a2) / a3, zero, zero]
            }
        }
        RelationFamily::T2Beta => {
            // 1 + (a4 x_nu K3 - a2 x_mu K4)/(a1 K4 - a3 K3)
            let nu = ctx.require_nu_for_solver()?;
            let den = a1 * k4 - a3 * k3;
            if den.norm() <= tol::MERGE {
                return Err(Error::DegenerateDenominator);
            }
            let x_nu = chi[nu - 1];
            if m == mu {
                [one + a4 * x_nu * k3 / den, -a2 * k4 / den, zero]
            } else if m == nu {
                [one - a2 * x_mu * k4 / den, a4 * k3 / den, zero]
            } else {
                [one + (a4 * x_nu * k3 - a2 * x_mu * k4) / den, zero, zero]
            }
        }
        RelationFamily::T2B => {
            let nu = ctx.require_nu_for_solver()?;
            let den = a1 - i * a3;
            let x_nu = chi[nu - 1];
            if m == mu {
                [one + a4 * x_nu * i / den, -a2 / den, zero]
            } else if m == nu {
                [one - a2 * x_mu / den, a4 * i / den, zero]
            } else {
                [one + (a4 * x_nu * i - a2 * x_mu) / den, zero, zero]
            }
        }
        RelationFamily::T2D => {
            let nu = ctx.require_nu_for_solver()?;
            let den = a1 + i * a3;
            let x_nu = chi[nu - 1];
            if m == mu {
                [one - a4 * x_nu * i / den, -a2 / den, zero]
            } else if m == nu {
                [one - a2 * x_mu / den, -a4 * i / den, zero]
            } else {
                [one - (a4 * x_nu * i + a2 * x_mu) / den, zero, zero]
            }
        }
        RelationFamily::T3Beta => {
            // (K3/K4)(a2 x/(2 a1) + a3 x^2/(4 a1))
            if k4.norm() <= tol::MERGE {
                return Err(Error::DegenerateDenominator);
            }
            let front = k3 / k4;
            if m == mu {
                [
                    zero,
                    front * a2 / (Scalar::new(2.0, 0.0) * a1),
                    front * a3 / (Scalar::new(4.0, 0.0) * a1),
                ]
            } else {
                [
                    front
                        * (a2 * x_mu / (Scalar::new(2.0, 0.0) * a1)
                            + a3 * x_mu * x_mu / (Scalar::new(4.0, 0.0) * a1)),
                    zero,
                    zero,
                ]
            }
        }
        RelationFamily::T3B => {
            // i(a3 x^2 + a2 x)/a1
            if m == mu {
                [zero, i * a2 / a1, i * a3 / a1]
            } else {
                [i * (a3 * x_mu * x_mu + a2 * x_mu) / a1, zero, zero]
            }
        }
        RelationFamily::T3D => {
            if m == mu {
                [zero, -i * a2 / a1, -i * a3 / a1]
            } else {
                [-i * (a3 * x_mu * x_mu + a2 * x_mu) / a1, zero, zero]
            }
        }
        RelationFamily::T4Beta => {
            let nu = ctx.require_nu_for_solver()?;
            if k4.norm() <= tol::MERGE {
                return Err(Error::DegenerateDenominator);
            }
            let front = k3 / k4;
            let x_nu = chi[nu - 1];
            if m == mu {
                [
                    zero,
                    front
                        * (a2 / (Scalar::new(2.0, 0.0) * a1)
                            + a3 * x_nu / (Scalar::new(4.0, 0.0) * a1)),
                    zero,
                ]
            } else if m == nu {
                [
                    front * a2 * x_mu / (Scalar::new(2.0, 0.0) * a1),
                    front * a3 * x_mu / (Scalar::new(4.0, 0.0) * a1),
                    zero,
                ]
            } else {
                [
                    front
                        * (a2 * x_mu / (Scalar::new(2.0, 0.0) * a1)
                            + a3 * x_mu * x_nu / (Scalar::new(4.0, 0.0) * a1)),
                    zero,
                    zero,
                ]
            }
        }
        RelationFamily::T4B => {
            let nu = ctx.require_nu_for_solver()?;
            let x_nu = chi[nu - 1];
            if m == mu {
                [zero, i * (a3 * x_nu + a2) / a1, zero]
            } else if m == nu {
                [i * a2 * x_mu / a1, i * a3 * x_mu / a1, zero]
            } else {
                [i * (a3 * x_mu * x_nu + a2 * x_mu) / a1, zero, zero]
            }
        }
        RelationFamily::T4D => {
            let nu = ctx.require_nu_for_solver()?;
            let x_nu = chi[nu - 1];
            if m == mu {
                [zero, -i * (a3 * x_nu + a2) / a1, zero]
            } else if m == nu {
                [-i * a2 * x_mu / a1, -i * a3 * x_mu / a1, zero]
            } else {
                [-i * (a3 * x_mu * x_nu + a2 * x_mu) / a1, zero, zero]
            }
        }
    };
    Ok(result)
}

impl TheoremContext {
    fn require_nu_for_solver(&self) -> Result<usize, Error> {
        self.nu.ok_or(Error::IndexOrder)
    }
}

/// Builds F(x) = e^{L(x)} − R(x) for solving one exponent parameter χ_m of
/// the given constraint family; L is affine in the unknown through the
/// (possibly half-scaled) weight on c_m, R quadratic at most.
pub fn exponent_relation(
    family: RelationFamily,
    ctx: &TheoremContext,
    ks: (Scalar, Scalar),
    chi: &[Scalar],
    unknown: usize,
) -> Result<ExponentialRelation, Error> {
    let n = ctx.dim();
    if chi.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: chi.len(),
        });
    }
    if unknown == 0 || unknown > n {
        return Err(Error::IndexOutOfRange {
            index: unknown,
            dim: n,
        });
    }
    if family.needs_nu() {
        ctx.require_nu_for_solver()?;
    }
    let h = if family.half_weighted() {
        Scalar::new(0.5, 0.0)
    } else {
        Scalar::new(1.0, 0.0)
    };
    let mut l0 = Scalar::new(0.0, 0.0);
    for (j, (x, cj)) in chi.iter().zip(ctx.c.coords()).enumerate() {
        if j + 1 != unknown {
            l0 += h * x * cj;
        }
    }
    let l1 = h * ctx.c.coords()[unknown - 1];
    let r = rhs_quadratic(family, ctx, ks, chi, unknown)?;
    Ok(ExponentialRelation { l0, l1, r })
}

/// The same family's constraint with all parameters known, as a
/// `LogConstraint` on one missing shift component.
pub fn shift_constraint(
    family: RelationFamily,
    ctx: &TheoremContext,
    ks: (Scalar, Scalar),
    chi: &[Scalar],
    unknown_c: usize,
    branch: i64,
) -> Result<LogConstraint, Error> {
    let n = ctx.dim();
    if chi.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: chi.len(),
        });
    }
    if unknown_c == 0 || unknown_c > n {
        return Err(Error::IndexOutOfRange {
            index: unknown_c,
            dim: n,
        });
    }
    let h = if family.half_weighted() {
        Scalar::new(0.5, 0.0)
    } else {
        Scalar::new(1.0, 0.0)
    };
    // with every chi fixed, R(x) degenerates to a constant: evaluate the
    // quadratic at an unknown index that cannot collide with mu/nu
    let r = rhs_quadratic(family, ctx, ks, chi, usize::MAX)?;
    let target = r[0];
    if target.norm() <= tol::ABS_FLOOR {
        return Err(Error::ZeroTarget);
    }
    Ok(LogConstraint {
        weights: chi.iter().map(|x| h * x).collect(),
        target,
        knowns: ctx.c.coords().to_vec(),
        unknown: unknown_c,
        branch,
    })
}
