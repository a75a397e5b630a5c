//! Scenario files, their validation, and report assembly.
//!
//! Scenarios are JSON with complex numbers as two-element [re, im] arrays
//! and functions/polynomials as expression text. A scenario is validated
//! completely before anything runs; an invalid file produces a diagnostic
//! naming the offending field. Reports are stable across runs with the same
//! seed except for the timing field.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use fermat_pdde::pdde::{EquationKind, EquationSpec, SamplingConfig, Verdict};
use fermat_pdde::poly::Point;
use fermat_pdde::solver::{
    exponent_relation, shift_constraint, solve_exponent_parameter, solve_shift_component,
    RelationFamily, RootSearchConfig,
};
use fermat_pdde::theorems::*;
use fermat_pdde::Scalar;

use crate::expr::{parse_expression, parse_polynomial, print_exppoly, print_polynomial};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Input error: exit code 2 territory.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for InputError {}

fn bad(field: &str, msg: impl std::fmt::Display) -> InputError {
    InputError(format!("{field}: {msg}"))
}

// ---------------------------------------------------------------- schema --

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub mode: String,
    pub equation: EquationInput,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construct: Option<ConstructInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solve: Option<SolveInput>,
    #[serde(default)]
    pub sampling: SamplingInput,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquationInput {
    pub kind: String,
    pub a: Vec<[f64; 2]>,
    pub mu: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<usize>,
    pub c: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<String>,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplingInput {
    pub samples: usize,
    pub radius: f64,
    pub seed: u64,
    pub tol_rel: f64,
}

impl Default for SamplingInput {
    fn default() -> Self {
        let d = SamplingConfig::default();
        SamplingInput {
            samples: d.sample_count,
            radius: d.radius,
            seed: d.seed,
            tol_rel: d.tol_rel,
        }
    }
}

impl SamplingInput {
    pub fn to_config(&self) -> Result<SamplingConfig, InputError> {
        if self.samples == 0 {
            return Err(bad("sampling.samples", "must be at least 1"));
        }
        if self.radius <= 0.0 || self.radius.is_nan() {
            return Err(bad("sampling.radius", "must be positive"));
        }
        if self.tol_rel <= 0.0 || self.tol_rel.is_nan() {
            return Err(bad("sampling.tol_rel", "must be positive"));
        }
        Ok(SamplingConfig {
            sample_count: self.samples,
            radius: self.radius,
            seed: self.seed,
            tol_rel: self.tol_rel,
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstructInput {
    pub theorem: u8,
    pub case: String,
    pub params: ParamsInput,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsInput {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k1: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k2: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k3: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k4: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta_const: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a_const: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_const: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub periodic: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub periodic2: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aux: Option<AuxInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuxInput {
    pub kind: String,
    pub expr: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveInput {
    pub target: String,
    pub family: String,
    pub chi: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_pair: Option<[[f64; 2]; 2]>,
    pub unknown: usize,
    #[serde(default)]
    pub branch: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridInput>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridInput {
    pub re: [f64; 2],
    pub im: [f64; 2],
    pub re_steps: usize,
    pub im_steps: usize,
    #[serde(default = "default_max_iter")]
    pub max_iter: usize,
    #[serde(default = "default_newton_tol")]
    pub tol: f64,
}

fn default_max_iter() -> usize {
    50
}

fn default_newton_tol() -> f64 {
    1e-12
}

// ----------------------------------------------------------- conversions --

pub fn scalar_of(pair: [f64; 2]) -> Scalar {
    Scalar::new(pair[0], pair[1])
}

pub fn pair_of(z: Scalar) -> [f64; 2] {
    [z.re, z.im]
}

fn scalars_of(pairs: &[[f64; 2]]) -> Vec<Scalar> {
    pairs.iter().map(|p| scalar_of(*p)).collect()
}

/// Parses a complex CLI entry in `re+imi` form: `3`, `-2.5`, `1.5i`,
/// `2+3i`, `2-3i`, `-1+0.5i`, `i`, `-i`.
pub fn parse_complex(text: &str) -> Result<Scalar, InputError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(InputError("empty complex literal".into()));
    }
    let parse_real = |t: &str| -> Result<f64, InputError> {
        t.parse::<f64>()
            .map_err(|_| InputError(format!("bad number '{t}' in '{text}'")))
    };
    let parse_imag = |t: &str| -> Result<f64, InputError> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            other => parse_real(other),
        }
    };
    if let Some(body) = s.strip_suffix('i') {
        // find the split between the real part and the imaginary part:
        // the last sign that is not a leading sign and not an exponent sign
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            if (bytes[k] == b'+' || bytes[k] == b'-')
                && bytes[k - 1] != b'e'
                && bytes[k - 1] != b'E'
            {
                split = Some(k);
                break;
            }
        }
        match split {
            Some(k) => Ok(Scalar::new(
                parse_real(&body[..k])?,
                parse_imag(&body[k..])?,
            )),
            None => Ok(Scalar::new(0.0, parse_imag(body)?)),
        }
    } else {
        Ok(Scalar::new(parse_real(&s)?, 0.0))
    }
}

pub fn format_complex(z: Scalar) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.re == 0.0 {
        format!("{}i", z.im)
    } else if z.im < 0.0 {
        format!("{}{}i", z.re, z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

fn equation_kind(text: &str) -> Result<EquationKind, InputError> {
    match text {
        "e1" => Ok(EquationKind::E1),
        "e2" => Ok(EquationKind::E2),
        "e3" => Ok(EquationKind::E3),
        "e4" => Ok(EquationKind::E4),
        other => Err(bad(
            "equation.kind",
            format!("'{other}' is not one of e1|e2|e3|e4"),
        )),
    }
}

impl EquationInput {
    pub fn kind(&self) -> Result<EquationKind, InputError> {
        equation_kind(&self.kind)
    }

    pub fn coefficients(&self) -> Result<[Scalar; 4], InputError> {
        match self.a.len() {
            4 => Ok([
                scalar_of(self.a[0]),
                scalar_of(self.a[1]),
                scalar_of(self.a[2]),
                scalar_of(self.a[3]),
            ]),
            // the third and fourth equations only involve a1..a3
            3 if matches!(self.kind()?, EquationKind::E3 | EquationKind::E4) => Ok([
                scalar_of(self.a[0]),
                scalar_of(self.a[1]),
                scalar_of(self.a[2]),
                Scalar::new(1.0, 0.0),
            ]),
            n => Err(bad(
                "equation.a",
                format!("expected 4 coefficients, found {n}"),
            )),
        }
    }

    pub fn point(&self) -> Result<Point, InputError> {
        if self.c.len() != self.dim {
            return Err(bad(
                "equation.c",
                format!("expected {} entries, found {}", self.dim, self.c.len()),
            ));
        }
        Point::new(scalars_of(&self.c)).map_err(|e| bad("equation.c", e))
    }

    pub fn context(&self) -> Result<TheoremContext, InputError> {
        if self.dim == 0 {
            return Err(bad("equation.dim", "must be at least 1"));
        }
        TheoremContext::new(self.coefficients()?, self.mu, self.nu, self.point()?)
            .map_err(|e| bad("equation", e))
    }

    pub fn spec(&self) -> Result<EquationSpec, InputError> {
        let g_text = self
            .g
            .as_ref()
            .ok_or_else(|| bad("equation.g", "required for this mode"))?;
        let g = parse_polynomial(g_text, self.dim).map_err(|e| bad("equation.g", e))?;
        EquationSpec::new(
            self.kind()?,
            self.coefficients()?,
            self.mu,
            self.nu,
            self.point()?,
            g,
        )
        .map_err(|e| bad("equation", e))
    }
}

fn require<T: Copy>(field: &str, v: &Option<T>) -> Result<T, InputError> {
    v.ok_or_else(|| bad(field, "required for this construction case"))
}

fn require_vec(
    field: &str,
    v: &Option<Vec<[f64; 2]>>,
    dim: usize,
) -> Result<Vec<Scalar>, InputError> {
    let v = v
        .as_ref()
        .ok_or_else(|| bad(field, "required for this construction case"))?;
    if v.len() != dim {
        return Err(bad(
            field,
            format!("expected {dim} entries, found {}", v.len()),
        ));
    }
    Ok(scalars_of(v))
}

impl ParamsInput {
    fn periodic_part(
        &self,
        field: &'static str,
        text: &Option<String>,
        dim: usize,
        c: &Point,
    ) -> Result<Option<PeriodicPart>, InputError> {
        match text {
            None => Ok(None),
            Some(t) => {
                let poly = parse_polynomial(t, dim).map_err(|e| bad(field, e))?;
                if poly.is_zero() {
                    return Ok(None);
                }
                PeriodicPart::new(poly, c).map(Some).map_err(|_| {
                    bad(
                        field,
                        "must be a shift-periodic polynomial with zero constant term",
                    )
                })
            }
        }
    }

    fn aux_function(&self, dim: usize) -> Result<Option<AuxiliaryFunction>, InputError> {
        match &self.aux {
            None => Ok(None),
            Some(a) => {
                let expr = parse_expression(&a.expr, dim).map_err(|e| bad("params.aux.expr", e))?;
                let kind = match a.kind.as_str() {
                    "y1" => AuxKind::Y1,
                    "y" => AuxKind::Y,
                    other => {
                        return Err(bad(
                            "params.aux.kind",
                            format!("'{other}' is not one of y1|y"),
                        ))
                    }
                };
                Ok(Some(AuxiliaryFunction { expr, kind }))
            }
        }
    }

    fn single(&self, dim: usize, c: &Point) -> Result<SolutionParams, InputError> {
        Ok(SolutionParams::SingleTerm(SingleTermParams {
            k3: scalar_of(require("params.k3", &self.k3)?),
            k4: scalar_of(require("params.k4", &self.k4)?),
            beta: require_vec("params.beta", &self.beta, dim)?,
            beta_const: scalar_of(self.beta_const.unwrap_or([0.0, 0.0])),
            periodic: self.periodic_part("params.periodic", &self.periodic, dim, c)?,
            aux: self.aux_function(dim)?,
        }))
    }

    fn two_term(&self, dim: usize, c: &Point) -> Result<SolutionParams, InputError> {
        Ok(SolutionParams::TwoTerm(TwoTermParams {
            k1: scalar_of(require("params.k1", &self.k1)?),
            k2: scalar_of(require("params.k2", &self.k2)?),
            b: require_vec("params.b", &self.b, dim)?,
            d: require_vec("params.d", &self.d, dim)?,
            a_const: scalar_of(self.a_const.unwrap_or([0.0, 0.0])),
            b_const: scalar_of(self.b_const.unwrap_or([0.0, 0.0])),
            periodic1: self.periodic_part("params.periodic", &self.periodic, dim, c)?,
            periodic2: self.periodic_part("params.periodic2", &self.periodic2, dim, c)?,
            aux: self.aux_function(dim)?,
        }))
    }

    fn poly_exponent(&self, dim: usize) -> Result<SolutionParams, InputError> {
        let g_text = self
            .g
            .as_ref()
            .ok_or_else(|| bad("params.g", "required for case I"))?;
        let g = parse_polynomial(g_text, dim).map_err(|e| bad("params.g", e))?;
        let sign = match self.sign.as_deref() {
            None | Some("auto") => None,
            Some("+") => Some(Sign::Plus),
            Some("-") => Some(Sign::Minus),
            Some(other) => {
                return Err(bad(
                    "params.sign",
                    format!("'{other}' is not one of +|-|auto"),
                ))
            }
        };
        Ok(SolutionParams::PolyExponent(PolyExponentParams { sign, g }))
    }

    fn given_aux(&self, dim: usize) -> Result<SolutionParams, InputError> {
        let h_text = self
            .h
            .as_ref()
            .ok_or_else(|| bad("params.h", "required for case I"))?;
        let h = parse_expression(h_text, dim).map_err(|e| bad("params.h", e))?;
        let g_text = self
            .g
            .as_ref()
            .ok_or_else(|| bad("params.g", "required for case I"))?;
        let g = parse_polynomial(g_text, dim).map_err(|e| bad("params.g", e))?;
        Ok(SolutionParams::GivenAux(GivenAuxParams { h, g }))
    }
}

fn relation_family(text: &str) -> Result<RelationFamily, InputError> {
    Ok(match text {
        "t1-beta" => RelationFamily::T1Beta,
        "t1-b" => RelationFamily::T1B,
        "t1-d" => RelationFamily::T1D,
        "t2-beta" => RelationFamily::T2Beta,
        "t2-b" => RelationFamily::T2B,
        "t2-d" => RelationFamily::T2D,
        "t3-beta" => RelationFamily::T3Beta,
        "t3-b" => RelationFamily::T3B,
        "t3-d" => RelationFamily::T3D,
        "t4-beta" => RelationFamily::T4Beta,
        "t4-b" => RelationFamily::T4B,
        "t4-d" => RelationFamily::T4D,
        other => {
            return Err(bad(
                "solve.family",
                format!("'{other}' is not a constraint family (t1-beta, t1-b, ..., t4-d)"),
            ))
        }
    })
}

// ------------------------------------------------------------- execution --

#[derive(Debug)]
pub struct RunOutput {
    pub report: Value,
    pub success: bool,
    pub summary: String,
}

fn constraints_json(report: &ConstraintReport) -> Value {
    json!({
        "all_pass": report.all_pass,
        "items": report.items.iter().map(|item| json!({
            "label": item.label,
            "pass": item.pass,
            "deviation": item.deviation,
            "lhs": item.lhs.map(pair_of),
            "rhs": item.rhs.map(pair_of),
        })).collect::<Vec<_>>()
    })
}

fn verification_json(
    v: &fermat_pdde::pdde::VerificationReport,
    residual_terms: usize,
    residual_max_coeff: f64,
) -> Value {
    json!({
        "verdict": v.verdict.label(),
        "symbolic_zero": v.symbolic_zero,
        "max_abs_residual": v.max_abs_residual,
        "scale": v.scale,
        "sample_count": v.sample_count,
        "resampled": v.resampled,
        "residual_term_count": residual_terms,
        "residual_max_coeff": residual_max_coeff,
    })
}

pub fn run_scenario(file: &ScenarioFile) -> Result<RunOutput, InputError> {
    let started = std::time::Instant::now();
    let echo = serde_json::to_value(file).expect("scenario serializes");
    let sampling = file.sampling.to_config()?;
    let mut body = match file.mode.as_str() {
        "verify" => {
            let spec = file.equation.spec()?;
            let f_text = file
                .f
                .as_ref()
                .ok_or_else(|| bad("f", "required in verify mode"))?;
            let f = parse_expression(f_text, file.equation.dim).map_err(|e| bad("f", e))?;
            let residual = spec.residual(&f).map_err(|e| bad("f", e))?;
            let report = spec.verify(&f, &sampling).map_err(|e| bad("f", e))?;
            let success = report.verdict == Verdict::Verified;
            let summary = format!("verify: {}", report.verdict.label());
            (
                json!({
                    "verification": verification_json(
                        &report,
                        residual.term_count(),
                        residual.max_coeff_magnitude(),
                    ),
                }),
                success,
                summary,
            )
        }
        "construct" => {
            let construct = file
                .construct
                .as_ref()
                .ok_or_else(|| bad("construct", "required in construct mode"))?;
            let ctx = file.equation.context()?;
            let dim = file.equation.dim;
            let c = file.equation.point()?;
            let kind = file.equation.kind()?;
            let built = build_construction(construct, &ctx, dim, &c, kind)?;
            let constraints = check_constraints(&built.constraints, 1e-9);
            let spec = EquationSpec::new(
                kind,
                file.equation.coefficients()?,
                file.equation.mu,
                file.equation.nu,
                c,
                built.g.clone(),
            )
            .map_err(|e| bad("equation", e))?;
            let residual = spec.residual(&built.f).map_err(|e| bad("construct", e))?;
            let report = spec
                .verify(&built.f, &sampling)
                .map_err(|e| bad("construct", e))?;
            let success = report.verdict == Verdict::Verified && constraints.all_pass;
            let summary = format!(
                "construct: {} with {} constraint item(s), verification {}",
                if constraints.all_pass {
                    "constraints pass"
                } else {
                    "constraint FAILURE"
                },
                constraints.items.len(),
                report.verdict.label(),
            );
            (
                json!({
                    "constructed": {
                        "f": print_exppoly(&built.f),
                        "g": print_polynomial(&built.g),
                        "resolved_sign": built.resolved_sign.map(|s| s.label()),
                    },
                    "constraints": constraints_json(&constraints),
                    "verification": verification_json(
                        &report,
                        residual.term_count(),
                        residual.max_coeff_magnitude(),
                    ),
                }),
                success,
                summary,
            )
        }
        "solve" => {
            let solve = file
                .solve
                .as_ref()
                .ok_or_else(|| bad("solve", "required in solve mode"))?;
            let ctx = file.equation.context()?;
            let family = relation_family(&solve.family)?;
            let ks = match solve.k_pair {
                Some([k_first, k_second]) => (scalar_of(k_first), scalar_of(k_second)),
                None => (Scalar::new(1.0, 0.0), Scalar::new(0.0, 0.0)),
            };
            let chi = scalars_of(&solve.chi);
            if chi.len() != file.equation.dim {
                return Err(bad(
                    "solve.chi",
                    format!(
                        "expected {} entries, found {}",
                        file.equation.dim,
                        chi.len()
                    ),
                ));
            }
            match solve.target.as_str() {
                "shift" => {
                    let lc = shift_constraint(family, &ctx, ks, &chi, solve.unknown, solve.branch)
                        .map_err(|e| bad("solve", e))?;
                    let component = solve_shift_component(&lc).map_err(|e| bad("solve", e))?;
                    let summary = format!(
                        "solve shift: c_{} = {}",
                        solve.unknown,
                        format_complex(component)
                    );
                    (
                        json!({
                            "solve": {
                                "target": "shift",
                                "component": pair_of(component),
                                "branch": solve.branch,
                                "log_target": pair_of(lc.target),
                            }
                        }),
                        true,
                        summary,
                    )
                }
                "parameter" => {
                    let rel = exponent_relation(family, &ctx, ks, &chi, solve.unknown)
                        .map_err(|e| bad("solve", e))?;
                    let cfg = match &solve.grid {
                        None => RootSearchConfig::default(),
                        Some(g) => RootSearchConfig {
                            re_range: (g.re[0], g.re[1]),
                            im_range: (g.im[0], g.im[1]),
                            re_steps: g.re_steps,
                            im_steps: g.im_steps,
                            max_iter: g.max_iter,
                            tol: g.tol,
                        },
                    };
                    let (roots, found) = match solve_exponent_parameter(&rel, &cfg) {
                        Ok(roots) => (roots, true),
                        Err(fermat_pdde::Error::NoRootFound) => (Vec::new(), false),
                        Err(e) => return Err(bad("solve", e)),
                    };
                    let summary = if found {
                        format!("solve parameter: {} root(s)", roots.len())
                    } else {
                        "solve parameter: no root found (flagged)".to_string()
                    };
                    (
                        json!({
                            "solve": {
                                "target": "parameter",
                                "roots": roots.iter().map(|r| pair_of(*r)).collect::<Vec<_>>(),
                                "no_root_found": !found,
                            }
                        }),
                        found,
                        summary,
                    )
                }
                other => {
                    return Err(bad(
                        "solve.target",
                        format!("'{other}' is not one of shift|parameter"),
                    ))
                }
            }
        }
        other => {
            return Err(bad(
                "mode",
                format!("'{other}' is not one of verify|construct|solve"),
            ))
        }
    };

    let (content, success, summary) = (body.0.take(), body.1, body.2);
    let mut report = json!({
        "engine_version": ENGINE_VERSION,
        "mode": file.mode,
        "scenario": echo,
        "timing_ms": started.elapsed().as_secs_f64() * 1e3,
    });
    for (k, v) in content.as_object().expect("content is an object") {
        report[k] = v.clone();
    }
    Ok(RunOutput {
        report,
        success,
        summary,
    })
}

fn build_construction(
    input: &ConstructInput,
    ctx: &TheoremContext,
    dim: usize,
    c: &Point,
    kind: EquationKind,
) -> Result<Construction, InputError> {
    let params_err = |e: fermat_pdde::Error| bad("construct.params", e);
    match input.theorem {
        1 => {
            let case = match input.case.as_str() {
                "I-beta-mu-nonzero" => Theorem1Case::BetaMuNonzero,
                "I-beta-mu-zero" => Theorem1Case::BetaMuZero,
                "II" => Theorem1Case::TwoTerm,
                other => {
                    return Err(bad(
                        "construct.case",
                        format!("'{other}' is not a theorem-1 case"),
                    ))
                }
            };
            let params = match case {
                Theorem1Case::TwoTerm => input.params.two_term(dim, c)?,
                _ => input.params.single(dim, c)?,
            };
            construct_t1(ctx, &params, case).map_err(params_err)
        }
        2 => {
            let case = match input.case.as_str() {
                "I" => Theorem2Case::Checker,
                "II-single" => Theorem2Case::SingleTerm,
                "II-pair" => Theorem2Case::TwoTerm,
                other => {
                    return Err(bad(
                        "construct.case",
                        format!("'{other}' is not a theorem-2 case"),
                    ))
                }
            };
            let params = match case {
                Theorem2Case::Checker => input.params.given_aux(dim)?,
                Theorem2Case::SingleTerm => input.params.single(dim, c)?,
                Theorem2Case::TwoTerm => input.params.two_term(dim, c)?,
            };
            construct_t2(ctx, &params, case).map_err(params_err)
        }
        3 | 4 => {
            let case = match input.case.as_str() {
                "I" => Theorem34Case::PolyExponent,
                "II-single" => Theorem34Case::SingleTerm,
                "II-pair" => Theorem34Case::TwoTerm,
                other => {
                    return Err(bad(
                        "construct.case",
                        format!("'{other}' is not a theorem-3/4 case"),
                    ))
                }
            };
            let params = match case {
                Theorem34Case::PolyExponent => input.params.poly_exponent(dim)?,
                Theorem34Case::SingleTerm => input.params.single(dim, c)?,
                Theorem34Case::TwoTerm => input.params.two_term(dim, c)?,
            };
            if input.theorem == 3 {
                if kind != EquationKind::E3 {
                    return Err(bad("construct.theorem", "theorem 3 pairs with equation e3"));
                }
                construct_t3(ctx, &params, case).map_err(params_err)
            } else {
                if kind != EquationKind::E4 {
                    return Err(bad("construct.theorem", "theorem 4 pairs with equation e4"));
                }
                construct_t4(ctx, &params, case).map_err(params_err)
            }
        }
        other => Err(bad(
            "construct.theorem",
            format!("'{other}' is not one of 1..4"),
        )),
    }
}
