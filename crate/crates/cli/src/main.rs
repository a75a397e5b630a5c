//! Command-line front end: verify candidate solutions, construct solution
//! families, solve parameter constraints, and run the built-in example
//! suite. Exit codes: 0 all checks pass, 1 a verification or constraint
//! failed, 2 invalid input.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fermat_pdde::pdde::SamplingConfig;
use fermat_pdde_cli::golden::{run_golden_suite, Override};
use fermat_pdde_cli::scenario::{
    pair_of, parse_complex, run_scenario, EquationInput, InputError, SamplingInput, ScenarioFile,
    ENGINE_VERSION,
};

#[derive(Parser)]
#[command(
    name = "fermat-pdde",
    version,
    about = "Verify and construct exponential-polynomial solutions of four Fermat-type PDDEs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a candidate f satisfies an equation, symbolically and
    /// numerically.
    Verify(VerifyArgs),
    /// Build a solution family from theorem parameters (scenario file) and
    /// check its constraints.
    Construct(ScenarioArgs),
    /// Complete a parameter set from an exponential constraint (scenario
    /// file).
    Solve(ScenarioArgs),
    /// Run the nine built-in examples.
    Examples(ExamplesArgs),
}

#[derive(Args)]
struct SamplingArgs {
    /// Monte Carlo sample count
    #[arg(long)]
    samples: Option<usize>,
    /// RNG seed for the numeric pass
    #[arg(long)]
    seed: Option<u64>,
    /// Relative tolerance of the numeric pass
    #[arg(long)]
    tol: Option<f64>,
    /// Polydisc radius for sampling
    #[arg(long)]
    radius: Option<f64>,
}

impl SamplingArgs {
    fn apply(&self, base: &mut SamplingInput) {
        if let Some(s) = self.samples {
            base.samples = s;
        }
        if let Some(s) = self.seed {
            base.seed = s;
        }
        if let Some(t) = self.tol {
            base.tol_rel = t;
        }
        if let Some(r) = self.radius {
            base.radius = r;
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// Scenario file (alternative to the inline flags)
    #[arg(long)]
    scenario: Option<PathBuf>,
    /// Which equation: e1|e2|e3|e4
    #[arg(long)]
    equation: Option<String>,
    /// Coefficients a1,a2,a3,a4 (complex entries as re+imi; three entries
    /// are accepted for e3/e4)
    #[arg(long)]
    coeffs: Option<String>,
    #[arg(long)]
    mu: Option<usize>,
    #[arg(long)]
    nu: Option<usize>,
    /// Shift vector c1,...,cn (complex entries as re+imi)
    #[arg(long)]
    shift: Option<String>,
    /// Candidate solution, e.g. "e^((z1+2*z2+3*z3+5)/2)"
    #[arg(long)]
    f: Option<String>,
    /// Right-hand exponent polynomial, e.g. "z1+2*z2+3*z3+5"
    #[arg(long)]
    g: Option<String>,
    /// Ambient dimension n
    #[arg(long)]
    dim: Option<usize>,
    #[command(flatten)]
    sampling: SamplingArgs,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct ScenarioArgs {
    /// Scenario file
    #[arg(long)]
    scenario: PathBuf,
    #[command(flatten)]
    sampling: SamplingArgs,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct ExamplesArgs {
    /// Perturb one equation coefficient, e.g. --override t1e2.a3=3.001
    /// (value as re+imi); repeatable
    #[arg(long = "override", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    #[command(flatten)]
    sampling: SamplingArgs,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    json: Option<PathBuf>,
}

fn complex_list(field: &str, text: &str) -> Result<Vec<[f64; 2]>, InputError> {
    text.split(',')
        .map(|part| parse_complex(part).map(pair_of))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| InputError(format!("{field}: {e}")))
}

fn load_scenario(path: &PathBuf) -> Result<ScenarioFile, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| InputError(format!("invalid scenario {}: {e}", path.display())))
}

fn inline_scenario(args: &VerifyArgs) -> Result<ScenarioFile, InputError> {
    let need = |field: &str, v: &Option<String>| -> Result<String, InputError> {
        v.clone()
            .ok_or_else(|| InputError(format!("--{field} is required without --scenario")))
    };
    let dim = args
        .dim
        .ok_or_else(|| InputError("--dim is required without --scenario".into()))?;
    let mu = args
        .mu
        .ok_or_else(|| InputError("--mu is required without --scenario".into()))?;
    Ok(ScenarioFile {
        mode: "verify".into(),
        equation: EquationInput {
            kind: need("equation", &args.equation)?,
            a: complex_list("--coeffs", &need("coeffs", &args.coeffs)?)?,
            mu,
            nu: args.nu,
            c: complex_list("--shift", &need("shift", &args.shift)?)?,
            g: Some(need("g", &args.g)?),
            dim,
        },
        f: Some(need("f", &args.f)?),
        construct: None,
        solve: None,
        sampling: SamplingInput::default(),
    })
}

fn emit(report: &serde_json::Value, path: &Option<PathBuf>) -> Result<(), InputError> {
    let text = serde_json::to_string_pretty(report).expect("report serializes");
    match path {
        Some(p) => std::fs::write(p, text.as_bytes())
            .map_err(|e| InputError(format!("cannot write {}: {e}", p.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn run_scenario_command(
    mut file: ScenarioFile,
    expected_mode: &str,
    sampling: &SamplingArgs,
    json: &Option<PathBuf>,
) -> Result<bool, InputError> {
    if file.mode != expected_mode {
        return Err(InputError(format!(
            "mode: scenario declares '{}' but the subcommand expects '{expected_mode}'",
            file.mode
        )));
    }
    sampling.apply(&mut file.sampling);
    let out = run_scenario(&file)?;
    eprintln!("{}", out.summary);
    emit(&out.report, json)?;
    Ok(out.success)
}

fn parse_overrides(raw: &[String]) -> Result<Vec<Override>, InputError> {
    raw.iter()
        .map(|entry| {
            let (key, value) = entry
                .split_once('=')
                .ok_or_else(|| InputError(format!("--override '{entry}': expected KEY=VALUE")))?;
            let (example, coeff) = key
                .split_once('.')
                .ok_or_else(|| InputError(format!("--override '{entry}': key must be ID.aN")))?;
            let coefficient = match coeff {
                "a1" => 1,
                "a2" => 2,
                "a3" => 3,
                "a4" => 4,
                other => {
                    return Err(InputError(format!(
                        "--override '{entry}': '{other}' is not one of a1..a4"
                    )))
                }
            };
            Ok(Override {
                example: example.to_string(),
                coefficient,
                value: parse_complex(value)?,
            })
        })
        .collect()
}

fn run_examples(args: &ExamplesArgs) -> Result<bool, InputError> {
    let overrides = parse_overrides(&args.overrides)?;
    let known: Vec<&str> = fermat_pdde_cli::golden::all_examples()
        .iter()
        .map(|e| e.id)
        .collect();
    for o in &overrides {
        if !known.contains(&o.example.as_str()) {
            return Err(InputError(format!(
                "--override: unknown example '{}' (known: {})",
                o.example,
                known.join(", ")
            )));
        }
    }
    let mut sampling = SamplingInput::default();
    args.sampling.apply(&mut sampling);
    let cfg: SamplingConfig = sampling.to_config()?;
    let runs = run_golden_suite(&overrides, &cfg).map_err(|e| InputError(e.to_string()))?;
    let mut all_verified = true;
    for run in &runs {
        eprintln!(
            "{:6} {:20} constraints {}  residual terms {:3}  ({:.1} ms)",
            run.id,
            run.verification.verdict.label(),
            if run.constraints.all_pass {
                "pass"
            } else {
                "FAIL"
            },
            run.residual_terms,
            run.millis,
        );
        all_verified &= run.verified();
    }
    eprintln!(
        "{}/9 examples verified",
        runs.iter().filter(|r| r.verified()).count()
    );
    let report = serde_json::json!({
        "engine_version": ENGINE_VERSION,
        "mode": "examples",
        "sampling": sampling,
        "overrides": args.overrides,
        "all_verified": all_verified,
        "examples": runs.iter().map(|run| serde_json::json!({
            "id": run.id,
            "description": run.description,
            "verdict": run.verification.verdict.label(),
            "symbolic_zero": run.verification.symbolic_zero,
            "max_abs_residual": run.verification.max_abs_residual,
            "scale": run.verification.scale,
            "sample_count": run.verification.sample_count,
            "resampled": run.verification.resampled,
            "residual_term_count": run.residual_terms,
            "residual_max_coeff": run.residual_max_coeff,
            "constraints_pass": run.constraints.all_pass,
            "printed_form_matches": run.f_text_matches,
            "timing_ms": run.millis,
        })).collect::<Vec<_>>(),
    });
    emit(&report, &args.json)?;
    Ok(all_verified)
}

fn dispatch(cli: Cli) -> Result<bool, InputError> {
    match cli.command {
        Command::Verify(args) => {
            let file = match &args.scenario {
                Some(path) => load_scenario(path)?,
                None => inline_scenario(&args)?,
            };
            run_scenario_command(file, "verify", &args.sampling, &args.json)
        }
        Command::Construct(args) => {
            let file = load_scenario(&args.scenario)?;
            run_scenario_command(file, "construct", &args.sampling, &args.json)
        }
        Command::Solve(args) => {
            let file = load_scenario(&args.scenario)?;
            run_scenario_command(file, "solve", &args.sampling, &args.json)
        }
        Command::Examples(args) => run_examples(&args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("input error: {e}");
            ExitCode::from(2)
        }
    }
}
