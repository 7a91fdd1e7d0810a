//! Command-line front end: decompositions and verification runs with JSON
//! input and output, for scripted reproduction of the acceptance suite.
//!
//! Exit codes: 0 on success, 1 when a verification run fails its residual
//! threshold, 2 on usage or parse errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use coneforge::cauchy::{
    self, character_multiplicativity, k_invariance_reduction_check, sampling, Law, LogFamily,
};
use coneforge::json as wire;
use coneforge::peirce::JordanFrame;
use coneforge::sym_real::SymMatrix;
use coneforge::triangular;
use coneforge::{AlgebraDescriptor, AlgebraKind, Element, Tolerance};

const DEFAULT_SEED: u64 = 42;

#[derive(Parser)]
#[command(
    name = "coneforge",
    about = "Euclidean Jordan algebra decompositions and functional-equation verification",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Spectral decomposition of an element
    Spectral(SpectralArgs),
    /// Joint Peirce blocks of an element with respect to a frame
    Peirce(PeirceArgs),
    /// Triangular (generalized Cholesky) decomposition
    Triangular(TriangularArgs),
    /// Principal minors, optionally a power-function value
    Minors(MinorsArgs),
    /// Sampled residual verification of the functional-equation laws
    Verify(VerifyArgs),
    /// Construct and certify a witness pair
    Witness(WitnessArgs),
    /// Triangular-group characters
    Character(CharacterArgs),
    /// Pexider-triple reduction with planted constants
    Pexider(PexiderArgs),
}

#[derive(Args, Clone)]
struct AlgebraArgs {
    /// Algebra kind for constructed inputs
    #[arg(long, value_enum, default_value_t = AlgebraChoice::SymReal)]
    algebra: AlgebraChoice,
    /// Matrix size for sym_real
    #[arg(long, default_value_t = 3)]
    r: usize,
    /// Spatial dimension for lorentz
    #[arg(long, default_value_t = 3)]
    n: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgebraChoice {
    #[value(name = "sym_real")]
    SymReal,
    #[value(name = "lorentz")]
    Lorentz,
}

impl AlgebraArgs {
    fn descriptor(&self) -> Result<AlgebraDescriptor, CliError> {
        let desc = match self.algebra {
            AlgebraChoice::SymReal => AlgebraDescriptor::sym_real(self.r),
            AlgebraChoice::Lorentz => AlgebraDescriptor::lorentz(self.n),
        };
        desc.map_err(CliError::usage)
    }
}

#[derive(Args, Clone)]
struct TolArgs {
    /// Absolute tolerance
    #[arg(long, default_value_t = 1e-10)]
    tol_abs: f64,
    /// Relative tolerance
    #[arg(long, default_value_t = 1e-9)]
    tol_rel: f64,
}

impl TolArgs {
    fn tolerance(&self) -> Result<Tolerance, CliError> {
        Tolerance::new(self.tol_abs, self.tol_rel).map_err(CliError::usage)
    }
}

#[derive(Args)]
struct SpectralArgs {
    /// Element: a JSON file path, `identity`, or `unit:i,j`
    element: String,
    #[command(flatten)]
    algebra: AlgebraArgs,
    /// Write the JSON result here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct PeirceArgs {
    element: String,
    /// Frame JSON file; defaults to the standard frame
    #[arg(long)]
    frame: Option<PathBuf>,
    #[command(flatten)]
    algebra: AlgebraArgs,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct TriangularArgs {
    element: String,
    #[arg(long)]
    frame: Option<PathBuf>,
    #[command(flatten)]
    algebra: AlgebraArgs,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct MinorsArgs {
    element: String,
    #[arg(long)]
    frame: Option<PathBuf>,
    /// Comma-separated exponents for a power-function evaluation
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    s: Option<Vec<f64>>,
    #[command(flatten)]
    algebra: AlgebraArgs,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LawChoice {
    W1,
    W2,
    DetMultW1,
    DetMultW2,
    KInvariance,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which law to verify
    #[arg(long, value_enum)]
    law: LawChoice,
    #[command(flatten)]
    algebra: AlgebraArgs,
    /// Number of sampled pairs
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Sampling seed; falls back to CONEFORGE_SEED, then 42
    #[arg(long)]
    seed: Option<u64>,
    /// Exponents of the solution family (w2); sampled from the seed when
    /// omitted
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    s: Option<Vec<f64>>,
    #[arg(long)]
    frame: Option<PathBuf>,
    #[command(flatten)]
    tol: TolArgs,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct WitnessArgs {
    /// Overlap parameter lambda^2 in (0, 1)
    #[arg(long, default_value_t = 0.5)]
    lambda2: f64,
    /// Product parameter; must lie in (0, lambda^8 / (1 + lambda^2)^2)
    #[arg(long, default_value_t = 0.02)]
    alpha: f64,
    #[command(flatten)]
    algebra: AlgebraArgs,
    /// Absolute residual threshold for the certified identities
    #[arg(long, default_value_t = 1e-8)]
    tol_abs: f64,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CharacterArgs {
    /// Element whose triangular operator is evaluated; runs a sampled
    /// multiplicativity report when omitted
    element: Option<String>,
    /// Comma-separated exponents
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    s: Option<Vec<f64>>,
    #[arg(long)]
    frame: Option<PathBuf>,
    #[command(flatten)]
    algebra: AlgebraArgs,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    tol: TolArgs,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct PexiderArgs {
    /// Which multiplication algorithm to reduce against
    #[arg(long, value_enum, default_value_t = PexiderLaw::W1)]
    law: PexiderLaw,
    #[command(flatten)]
    algebra: AlgebraArgs,
    /// Planted additive constant of the first function
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    a0: f64,
    /// Planted additive constant of the second function
    #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
    b0: f64,
    /// Poison the third function by this amount at one sampled argument
    #[arg(long, allow_negative_numbers = true)]
    perturb: Option<f64>,
    #[arg(long, default_value_t = 500)]
    samples: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    tol: TolArgs,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PexiderLaw {
    W1,
    W2,
}

struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    fn usage(err: impl std::fmt::Display) -> Self {
        CliError {
            message: err.to_string(),
            code: 2,
        }
    }

    fn residual(err: impl std::fmt::Display) -> Self {
        CliError {
            message: err.to_string(),
            code: 1,
        }
    }
}

fn require_samples(samples: usize) -> Result<usize, CliError> {
    if samples == 0 {
        return Err(CliError::usage("--samples must be at least 1"));
    }
    Ok(samples)
}

fn seed_or_env(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        std::env::var("CONEFORGE_SEED")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(DEFAULT_SEED)
    })
}

fn load_element(spec: &str, algebra: &AlgebraArgs) -> Result<Element, CliError> {
    if spec == "identity" {
        return Ok(Element::identity(algebra.descriptor()?));
    }
    if let Some(indices) = spec.strip_prefix("unit:") {
        if algebra.algebra != AlgebraChoice::SymReal {
            return Err(CliError::usage("unit:i,j elements exist only in sym_real"));
        }
        let parts: Vec<&str> = indices.split(',').collect();
        if parts.len() != 2 {
            return Err(CliError::usage(format!("malformed unit element `{spec}`")));
        }
        let i: usize = parts[0].trim().parse().map_err(CliError::usage)?;
        let j: usize = parts[1].trim().parse().map_err(CliError::usage)?;
        return SymMatrix::unit(algebra.r, i, j)
            .and_then(|m| m.to_element())
            .map_err(CliError::usage);
    }
    let text = fs::read_to_string(spec)
        .map_err(|e| CliError::usage(format!("cannot read `{spec}`: {e}")))?;
    wire::element_from_str(&text).map_err(CliError::usage)
}

fn load_frame(path: &Option<PathBuf>, desc: AlgebraDescriptor) -> Result<JordanFrame, CliError> {
    match path {
        None => Ok(JordanFrame::standard(desc)),
        Some(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| CliError::usage(format!("cannot read `{}`: {e}", p.display())))?;
            let frame = wire::frame_from_str(&text).map_err(CliError::usage)?;
            if *frame.descriptor() != desc {
                return Err(CliError::usage(format!(
                    "frame in `{}` does not match the requested algebra",
                    p.display()
                )));
            }
            Ok(frame)
        }
    }
}

fn emit<T: serde::Serialize>(value: &T, output: &Option<PathBuf>) -> Result<(), CliError> {
    let text = serde_json::to_string(value).expect("json serialization");
    match output {
        None => println!("{text}"),
        Some(path) => fs::write(path, format!("{text}\n"))
            .map_err(|e| CliError::usage(format!("cannot write `{}`: {e}", path.display())))?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Spectral(args) => {
            let el = load_element(&args.element, &args.algebra)?;
            let dec = coneforge::peirce::spectral_decompose(&el).map_err(CliError::usage)?;
            emit(&dec, &args.output)
        }
        Command::Peirce(args) => {
            let el = load_element(&args.element, &args.algebra)?;
            let frame = load_frame(&args.frame, *el.descriptor())?;
            let blocks = coneforge::peirce::joint_peirce(&el, &frame).map_err(CliError::usage)?;
            let mut map = serde_json::Map::new();
            for ((i, j), block) in &blocks.blocks {
                map.insert(
                    format!("{i},{j}"),
                    serde_json::to_value(block).expect("json"),
                );
            }
            emit(
                &json!({ "frame": frame, "blocks": serde_json::Value::Object(map) }),
                &args.output,
            )
        }
        Command::Triangular(args) => {
            let el = load_element(&args.element, &args.algebra)?;
            let frame = load_frame(&args.frame, *el.descriptor())?;
            let dec = triangular::triangular_decompose(&el, &frame).map_err(CliError::usage)?;
            emit(&dec, &args.output)
        }
        Command::Minors(args) => {
            let el = load_element(&args.element, &args.algebra)?;
            let frame = load_frame(&args.frame, *el.descriptor())?;
            let minors = (1..=frame.len())
                .map(|k| triangular::principal_minor(&el, k, &frame))
                .collect::<Result<Vec<_>, _>>()
                .map_err(CliError::usage)?;
            let mut out = json!({ "minors": minors });
            if let Some(s) = &args.s {
                let value = triangular::delta_s(&el, s, &frame).map_err(CliError::usage)?;
                out["delta_s"] = json!(value);
            }
            emit(&out, &args.output)
        }
        Command::Verify(args) => {
            let desc = args.algebra.descriptor()?;
            let samples = require_samples(args.samples)?;
            let seed = seed_or_env(args.seed);
            let tol = args.tol.tolerance()?;
            let frame = load_frame(&args.frame, desc)?;
            let report = match args.law {
                LawChoice::W1 => {
                    let s = args.s.as_ref().map_or(1.0, |v| v[0]);
                    cauchy::check_cauchy(
                        desc,
                        &Law::W1,
                        &LogFamily::DetLog { s },
                        samples,
                        seed,
                        &tol,
                    )
                }
                LawChoice::W2 => {
                    let s = match &args.s {
                        Some(v) => {
                            if v.len() != desc.rank() {
                                return Err(CliError::usage(format!(
                                    "--s needs {} entries for rank {}",
                                    desc.rank(),
                                    desc.rank()
                                )));
                            }
                            v.clone()
                        }
                        None => {
                            let mut rng = sampling::stream(seed, u64::MAX);
                            sampling::exponents(desc.rank(), -2.0, 2.0, &mut rng)
                        }
                    };
                    let family = LogFamily::MinorLog {
                        s,
                        frame: frame.clone(),
                    };
                    cauchy::check_cauchy(desc, &Law::W2 { frame }, &family, samples, seed, &tol)
                }
                LawChoice::DetMultW1 => {
                    cauchy::det_multiplicativity(desc, &Law::W1, samples, seed, &tol)
                }
                LawChoice::DetMultW2 => {
                    cauchy::det_multiplicativity(desc, &Law::W2 { frame }, samples, seed, &tol)
                }
                LawChoice::KInvariance => k_invariance_reduction_check(desc, samples, seed, &tol),
            }
            .map_err(CliError::usage)?;
            emit(&report, &args.output)?;
            if report.pass {
                Ok(())
            } else {
                Err(CliError::residual(format!(
                    "residual check failed: max abs {:.3e}, max rel {:.3e}",
                    report.max_abs_residual, report.max_rel_residual
                )))
            }
        }
        Command::Witness(args) => {
            let desc = args.algebra.descriptor()?;
            let frame = JordanFrame::standard(desc);
            let a = frame.get(0).clone();
            let c = frame.get(1).clone();
            let z = match desc.kind() {
                AlgebraKind::SymReal => SymMatrix::unit(args.algebra.r, 0, 1)
                    .and_then(|m| m.to_element())
                    .map_err(CliError::usage)?,
                AlgebraKind::Lorentz => {
                    let lframe = coneforge::lorentz::LorentzFrame::new({
                        let mut u = vec![0.0; args.algebra.n];
                        u[0] = 1.0;
                        u
                    })
                    .map_err(CliError::usage)?;
                    coneforge::lorentz::half_space_basis(&lframe)[0].clone()
                }
            };
            let tol = Tolerance::absolute(args.tol_abs);
            let witness = cauchy::witness_pair(&a, &c, &z, args.lambda2, args.alpha, &tol)
                .map_err(CliError::residual)?;
            emit(
                &json!({
                    "lambda2": witness.lambda2,
                    "alpha": witness.alpha,
                    "alpha_sup": cauchy::alpha_sup(witness.lambda2),
                    "x": witness.x,
                    "y": witness.y,
                    "b": witness.b,
                    "pass": true,
                }),
                &args.output,
            )
        }
        Command::Character(args) => {
            let desc = args.algebra.descriptor()?;
            let seed = seed_or_env(args.seed);
            let frame = load_frame(&args.frame, desc)?;
            let s = match &args.s {
                Some(v) => v.clone(),
                None => vec![1.0; desc.rank()],
            };
            match &args.element {
                Some(spec) => {
                    let el = load_element(spec, &args.algebra)?;
                    let dec =
                        triangular::triangular_decompose(&el, &frame).map_err(CliError::usage)?;
                    let h = cauchy::triangular_character(&dec, &s).map_err(CliError::usage)?;
                    emit(&json!({ "h": h, "s": s }), &args.output)
                }
                None => {
                    let tol = args.tol.tolerance()?;
                    let report = character_multiplicativity(
                        desc,
                        &s,
                        require_samples(args.samples)?,
                        seed,
                        &tol,
                    )
                    .map_err(CliError::usage)?;
                    emit(&report, &args.output)?;
                    if report.pass {
                        Ok(())
                    } else {
                        Err(CliError::residual(format!(
                            "character multiplicativity failed: max rel {:.3e}",
                            report.max_rel_residual
                        )))
                    }
                }
            }
        }
        Command::Pexider(args) => {
            let desc = args.algebra.descriptor()?;
            let seed = seed_or_env(args.seed);
            let tol = args.tol.tolerance()?;
            let law = match args.law {
                PexiderLaw::W1 => Law::W1,
                PexiderLaw::W2 => Law::W2 {
                    frame: JordanFrame::standard(desc),
                },
            };
            let (planted_a0, planted_b0) = (args.a0, args.b0);
            let a_fn = move |x: &Element| x.det().ln() + planted_a0;
            let b_fn = move |x: &Element| x.det().ln() + planted_b0;
            let poison = args
                .perturb
                .map(|eps| {
                    let (x2, y2) = sampling::cone_pair(desc, seed, 2);
                    law.apply(&x2, &y2).map(|el| (el, eps))
                })
                .transpose()
                .map_err(CliError::usage)?;
            let c_fn = move |x: &Element| {
                let base = x.det().ln() + planted_a0 + planted_b0;
                match &poison {
                    Some((el, eps)) if x.max_abs_diff(el) == 0.0 => base + eps,
                    _ => base,
                }
            };
            let (a0, b0, report) = cauchy::pexider_reduce(
                &a_fn,
                &b_fn,
                &c_fn,
                desc,
                &law,
                require_samples(args.samples)?,
                seed,
                &tol,
            )
            .map_err(CliError::residual)?;
            emit(
                &json!({ "a0": a0, "b0": b0, "report": report }),
                &args.output,
            )
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}
