//! Command-line front end: model inspection, integer encoding, the
//! compile/lift/verify pipeline, and the local-analysis helpers, with
//! reproducible exact-rational text output.
//!
//! Exit codes: 0 on success/pass, 1 on semantic failure (inadmissible cover,
//! failed verification), 2 on usage or input errors.

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use zmodel::compiler::{
    compile, parse_artifact, parse_witness, serialize_artifact, serialize_witness, verify_witness,
    Backend, CompilerConfig, IntPolySystem,
};
use zmodel::gadgets::{varkr_reduce, y_membership, ConSetConfig, PadicGadgetConfig};
use zmodel::lambda::LambdaConfig;
use zmodel::local::{is_psd_on_r, newton_polygon, DiagonalForm, Place};
use zmodel::poly::Polynomial;
use zmodel::rational::{rational_to_text, Rational};
use zmodel::ratfunc::RationalFunction;
use zmodel::textfmt;
use zmodel::twist::{is_admissible, SelfTwistModel};

#[derive(Parser)]
#[command(
    name = "zmodel",
    version,
    about = "Twisted-curve integer models over function fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CurveArgs {
    /// Base curve coefficients a,b,c of y^2 = x^3 + a x^2 + b x + c
    #[arg(long, default_value = "0,-1,1", allow_hyphen_values = true)]
    curve: String,
}

#[derive(Args, Clone)]
struct ModelArgs {
    #[command(flatten)]
    curve: CurveArgs,
    /// Scalar lambda of the cover t -> lambda * f
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    lambda: String,
    /// The cover f as a rational function of x
    #[arg(long, default_value = "x")]
    f: String,
}

#[derive(Args, Clone)]
struct PadicArgs {
    /// Odd prime for the p-adic backend
    #[arg(long)]
    p: Option<u64>,
    /// varpi with odd p-adic valuation (defaults to p)
    #[arg(long, allow_hyphen_values = true)]
    varpi: Option<String>,
    /// Root-of-unity surrogate, +1 or -1
    #[arg(long = "unit-a", default_value = "1", allow_hyphen_values = true)]
    unit_a: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    c3: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    c5: String,
}

#[derive(Subcommand)]
enum Command {
    /// Print the twisted model: uniformizer, Weierstrass chart, fibre data,
    /// and the admissibility report of the cover
    TwistInfo(ModelArgs),
    /// Print n*gamma with its evaluation at 0 and order at infinity
    Gamma {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(short, allow_hyphen_values = true)]
        n: i64,
    },
    /// Encode an integer as a model element { n, u, w }
    Encode {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(short, allow_hyphen_values = true)]
        n: i64,
    },
    /// Compile an integer polynomial system to a formula artifact
    Compile {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value = "semilocal")]
        backend: String,
        /// System file: one `lhs = rhs` equation per line
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        padic: PadicArgs,
    },
    /// Lift an integer solution to an exact witness
    Lift {
        #[arg(long)]
        artifact: PathBuf,
        #[arg(long)]
        system: PathBuf,
        /// Comma-separated integer values for the system variables
        #[arg(long, allow_hyphen_values = true)]
        solution: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        padic: PadicArgs,
    },
    /// Verify a witness file against an artifact
    Verify {
        #[arg(long)]
        artifact: PathBuf,
        #[arg(long)]
        witness: PathBuf,
        #[command(flatten)]
        padic: PadicArgs,
    },
    /// Analyze a diagonal quadratic form at a place (or globally)
    Qform {
        /// Comma-separated nonzero rational coefficients
        #[arg(long, allow_hyphen_values = true)]
        form: String,
        /// Place: "real" or "p:<prime>"; omit for the global analysis
        #[arg(long)]
        place: Option<String>,
    },
    /// Newton polygon of a polynomial at a prime
    Newton {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(short)]
        p: u64,
    },
    /// Apply the valuation-normalizing map r -> t + t^2 + (r/(1+t^2))^2
    Varkr {
        #[arg(long, allow_hyphen_values = true)]
        r: String,
    },
    /// Check admissibility of the cover lambda*f
    Admissible(ModelArgs),
}

fn main() -> ExitCode {
    // behave like a normal unix tool when piped into head etc.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}

fn parse_curve(arg: &str) -> Result<(Rational, Rational, Rational), String> {
    let parts: Vec<&str> = arg.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected a,b,c but got '{}'", arg));
    }
    let mut vals = Vec::new();
    for p in parts {
        vals.push(textfmt::parse_rational(p.trim()).map_err(|e| e.to_string())?);
    }
    Ok((vals[0].clone(), vals[1].clone(), vals[2].clone()))
}

fn build_model(curve: &CurveArgs) -> Result<SelfTwistModel, String> {
    let (a, b, c) = parse_curve(&curve.curve)?;
    SelfTwistModel::new(a, b, c).map_err(|e| e.to_string())
}

fn parse_rf(s: &str) -> Result<RationalFunction, String> {
    RationalFunction::parse(s).map_err(|e| e.to_string())
}

fn build_lambda_config(
    model_args: &ModelArgs,
) -> Result<Result<LambdaConfig, Vec<String>>, String> {
    let model = build_model(&model_args.curve)?;
    let lambda = textfmt::parse_rational(&model_args.lambda).map_err(|e| e.to_string())?;
    let f = parse_rf(&model_args.f)?;
    match LambdaConfig::new(model, lambda, f) {
        Ok(cfg) => Ok(Ok(cfg)),
        Err(zmodel::lambda::LambdaError::NotAdmissible(fails)) => Ok(Err(fails)),
        Err(e) => Err(e.to_string()),
    }
}

impl PadicArgs {
    fn build(&self) -> Result<Option<PadicGadgetConfig>, String> {
        match self.p {
            None => Ok(None),
            Some(p) => {
                let varpi = match &self.varpi {
                    Some(v) => textfmt::parse_rational(v).map_err(|e| e.to_string())?,
                    None => Rational::from_integer(p.into()),
                };
                let a = textfmt::parse_rational(&self.unit_a).map_err(|e| e.to_string())?;
                let c3 = textfmt::parse_rational(&self.c3).map_err(|e| e.to_string())?;
                let c5 = textfmt::parse_rational(&self.c5).map_err(|e| e.to_string())?;
                PadicGadgetConfig::new(p, a, varpi, c3, c5)
                    .map(Some)
                    .map_err(|e| e.to_string())
            }
        }
    }
}

fn compiler_config(
    model_args: &ModelArgs,
    padic: &PadicArgs,
) -> Result<Result<CompilerConfig, Vec<String>>, String> {
    let lambda_cfg = match build_lambda_config(model_args)? {
        Ok(cfg) => cfg,
        Err(fails) => return Ok(Err(fails)),
    };
    Ok(Ok(CompilerConfig {
        lambda_cfg,
        con: ConSetConfig::default_curve(),
        padic: padic.build()?,
    }))
}

fn read_file(path: &PathBuf) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {}", path.display(), e))
}

fn write_out(out: &Option<PathBuf>, content: &str) -> Result<(), String> {
    match out {
        Some(path) => {
            std::fs::write(path, content).map_err(|e| format!("{}: {}", path.display(), e))
        }
        None => {
            println!("{}", content);
            Ok(())
        }
    }
}

/// Rebuild the verification context from an artifact's recorded curve,
/// lambda and f, plus optional p-adic constants from flags.
fn config_from_artifact(
    artifact: &zmodel::compiler::CompiledArtifact,
    padic: &PadicArgs,
) -> Result<CompilerConfig, String> {
    let a = textfmt::parse_rational(&artifact.curve.a).map_err(|e| e.to_string())?;
    let b = textfmt::parse_rational(&artifact.curve.b).map_err(|e| e.to_string())?;
    let c = textfmt::parse_rational(&artifact.curve.c).map_err(|e| e.to_string())?;
    let model = SelfTwistModel::new(a, b, c).map_err(|e| e.to_string())?;
    let lambda = textfmt::parse_rational(&artifact.lambda).map_err(|e| e.to_string())?;
    let f = parse_rf(&artifact.f)?;
    let lambda_cfg = LambdaConfig::new(model, lambda, f).map_err(|e| e.to_string())?;
    Ok(CompilerConfig {
        lambda_cfg,
        con: ConSetConfig::default_curve(),
        padic: padic.build()?,
    })
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::TwistInfo(model_args) => {
            let model = build_model(&model_args.curve)?;
            println!("rho: {}", model.rho().to_text("t"));
            let w = model.weierstrass();
            println!("weierstrass a: {}", w.a.to_text("t"));
            println!("weierstrass b: {}", w.b.to_text("t"));
            println!("weierstrass c: {}", w.c.to_text("t"));
            println!(
                "fibre at infinity elliptic: {}",
                model.infinity_is_elliptic()
            );
            if model.infinity_is_elliptic() {
                println!(
                    "gamma(inf) non-torsion: {}",
                    model
                        .gamma_infinity_nontorsion()
                        .map_err(|e| e.to_string())?
                );
            }
            let lambda = textfmt::parse_rational(&model_args.lambda).map_err(|e| e.to_string())?;
            let f = parse_rf(&model_args.f)?;
            let report = is_admissible(&f, &lambda, &model, None).map_err(|e| e.to_string())?;
            println!("{}", report);
            Ok(ExitCode::SUCCESS)
        }
        Command::Gamma { curve, n } => {
            let model = build_model(&curve)?;
            let p = model.gamma_multiple(n);
            println!("point: {}", p);
            println!(
                "ev0: {}",
                rational_to_text(&model.ev0(&p).map_err(|e| e.to_string())?)
            );
            if model.infinity_is_elliptic() && model.gamma_infinity_nontorsion().unwrap_or(false) {
                println!(
                    "v_inf(u): {}",
                    model.ord_infinity_of_u(n).map_err(|e| e.to_string())?
                );
            }
            println!("in affine part: {}", model.in_affine_part(&p));
            println!(
                "in connected component: {}",
                model.in_connected_component(&p)
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Encode { model: margs, n } => {
            let cfg = match build_lambda_config(&margs)? {
                Ok(cfg) => cfg,
                Err(fails) => {
                    for f in fails {
                        eprintln!("inadmissible: {}", f);
                    }
                    return Ok(ExitCode::FAILURE);
                }
            };
            let e = cfg.encode(n);
            println!(
                "{}",
                serde_json::to_string_pretty(&e.to_json(&cfg)).unwrap()
            );
            let (u, w) = e.uw(&cfg);
            let lam_f = cfg.lambda_f();
            println!(
                "u(lambda f): {}",
                u.substitute(lam_f).unwrap().to_text("x")
            );
            println!(
                "w(lambda f): {}",
                w.substitute(lam_f).unwrap().to_text("x")
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Compile {
            model: margs,
            backend,
            system,
            out,
            padic,
        } => {
            let backend: Backend = backend
                .parse()
                .map_err(|e: zmodel::compiler::CompileError| e.to_string())?;
            let cfg = match compiler_config(&margs, &padic)? {
                Ok(cfg) => cfg,
                Err(fails) => {
                    for f in fails {
                        eprintln!("inadmissible: {}", f);
                    }
                    return Ok(ExitCode::FAILURE);
                }
            };
            let sys = IntPolySystem::parse(&read_file(&system)?).map_err(|e| e.to_string())?;
            let artifact = compile(&sys, backend, &cfg).map_err(|e| e.to_string())?;
            write_out(&out, &serialize_artifact(&artifact))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Lift {
            artifact,
            system,
            solution,
            out,
            padic,
        } => {
            let artifact = parse_artifact(&read_file(&artifact)?).map_err(|e| e.to_string())?;
            let sys = IntPolySystem::parse(&read_file(&system)?).map_err(|e| e.to_string())?;
            let solution: Vec<i64> = solution
                .split(',')
                .map(|s| s.trim().parse::<i64>().map_err(|e| e.to_string()))
                .collect::<Result<_, _>>()?;
            let cfg = config_from_artifact(&artifact, &padic)?;
            match zmodel::compiler::witness_lift(&sys, &solution, &artifact, &cfg) {
                Ok(witness) => {
                    write_out(&out, &serialize_witness(&witness))?;
                    Ok(ExitCode::SUCCESS)
                }
                Err(zmodel::compiler::CompileError::NotASolution) => {
                    eprintln!("not a solution of the system over the integers");
                    Ok(ExitCode::FAILURE)
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Command::Verify {
            artifact,
            witness,
            padic,
        } => {
            let artifact = parse_artifact(&read_file(&artifact)?).map_err(|e| e.to_string())?;
            let witness = parse_witness(&read_file(&witness)?).map_err(|e| e.to_string())?;
            let cfg = config_from_artifact(&artifact, &padic)?;
            let report = verify_witness(&artifact, &witness, &cfg);
            println!("{}", report);
            Ok(if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Qform { form, place } => {
            let coeffs: Vec<Rational> = form
                .split(',')
                .map(|s| textfmt::parse_rational(s.trim()).map_err(|e| e.to_string()))
                .collect::<Result<_, _>>()?;
            let form = DiagonalForm::new(coeffs).map_err(|e| e.to_string())?;
            let verdict = |iso: bool| if iso { "isotropic" } else { "anisotropic" };
            match place {
                Some(place_arg) => {
                    let place: Place = place_arg
                        .parse()
                        .map_err(|e: zmodel::local::LocalError| e.to_string())?;
                    println!("{}: {}", place, verdict(form.is_isotropic_local(&place)));
                }
                None => {
                    println!("real: {}", verdict(form.is_isotropic_local(&Place::Real)));
                    for p in form.relevant_primes() {
                        let place = Place::Prime(p);
                        println!("{}: {}", place, verdict(form.is_isotropic_local(&place)));
                    }
                    println!("global: {}", verdict(form.is_isotropic_over_q()));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Newton { poly, p } => {
            if !zmodel::local::is_prime_u64(p) {
                return Err(format!("{} is not prime", p));
            }
            let poly: Polynomial = textfmt::parse_poly(&poly).map_err(|e| e.to_string())?;
            let np = newton_polygon(&poly, p).map_err(|e| e.to_string())?;
            let verts: Vec<String> = np
                .vertices()
                .iter()
                .map(|(i, v)| format!("({}, {})", i, v))
                .collect();
            println!("vertices: {}", verts.join(" "));
            let slopes: Vec<String> = np.slopes().iter().map(rational_to_text).collect();
            println!("slopes: {}", slopes.join(" "));
            Ok(ExitCode::SUCCESS)
        }
        Command::Varkr { r } => {
            let r = parse_rf(&r)?;
            let s = varkr_reduce(&r).map_err(|e| e.to_string())?;
            println!("s: {}", s.to_text("t"));
            println!("v0(s): {}", s.ord_at_zero());
            println!("v_inf(s): {}", s.ord_at_infinity());
            println!("y-set: {:?}", y_membership(&s));
            println!("psd on R: {}", is_psd_on_r(&s));
            Ok(ExitCode::SUCCESS)
        }
        Command::Admissible(margs) => {
            let model = build_model(&margs.curve)?;
            let lambda = textfmt::parse_rational(&margs.lambda).map_err(|e| e.to_string())?;
            let f = parse_rf(&margs.f)?;
            let report = is_admissible(&f, &lambda, &model, None).map_err(|e| e.to_string())?;
            println!("{}", report);
            Ok(if report.admissible() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}
