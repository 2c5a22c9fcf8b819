//! The `superloc` command line.
//!
//! Exit codes: 0 success, 1 a verification failed (nonzero residual,
//! tolerance missed, broken chain, calibration drift), 2 usage error,
//! 3 module error (a diagnostic JSON object is printed on stdout).

mod report;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::exact::{cint, format_complex, int, parse_complex, CRational};
use crate::homspace::{self, ChainSpec, HomSpaceSpec, RootData};
use crate::locverify::{self, Profile};
use crate::qrep::CSRep;
use crate::superalg::{Coord, SuperFunction};

use report::{emit, emit_error, Failure};

#[derive(Debug, Parser)]
#[command(name = "superloc", version, about = "Localization checks and CS volumes of homogeneous superspaces")]
pub struct Cli {
    /// Print JSON instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check ∫f = Loc(f|₀) on random equivariant forms of a linear model.
    VerifyLinear(VerifyLinearArgs),
    /// CS volume of a homogeneous superspace.
    Volume {
        #[command(subcommand)]
        family: Family,
    },
    /// Fixed-point coset representatives.
    FixedPoints {
        #[command(subcommand)]
        family: Family,
    },
    /// Regularized pole identities by quadrature.
    DistCheck(DistCheckArgs),
    /// Recompute the measure constant from its witness.
    Calibrate,
    /// Splitting through a chain of subgroups.
    Chain {
        #[command(subcommand)]
        family: ChainFamily,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct RepSource {
    /// Eigenvalues χ_i(Q²), e.g. `3i,1-2i,2`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = complex_arg)]
    lambdas: Option<Vec<CRational>>,
    /// Representation in JSON.
    #[arg(long)]
    rep_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyLinearArgs {
    #[command(flatten)]
    source: RepSource,
    /// Maximal degree of the per-block profile polynomials.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(0..=8))]
    profiles: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..=100_000))]
    count: u32,
}

#[derive(Debug, Subcommand)]
pub enum Family {
    Isotropic {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
    },
    Periplectic {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        r: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        s: u32,
    },
    Flag {
        /// Root data in JSON.
        #[arg(long)]
        root_file: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum ChainFamily {
    Periplectic {
        /// Block sizes, e.g. `2,2`.
        #[arg(long, value_delimiter = ',', required = true, value_parser = clap::value_parser!(u32).range(1..))]
        parts: Vec<u32>,
    },
    Flag {
        #[arg(long)]
        root_file: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Identity {
    Polediff,
    Sigma,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TestProfile {
    /// `e^{−zz̄}` for polediff, `e^{−u}` for sigma.
    Gaussian,
    /// `zz̄e^{−zz̄}` for polediff, `u·e^{−u}` for sigma.
    Quadratic,
}

#[derive(Debug, Args)]
pub struct DistCheckArgs {
    identity: Identity,
    #[arg(long, value_delimiter = ',', default_value = "0.2,0.1,0.05,0.025")]
    eps: Vec<f64>,
    #[arg(long, value_enum, default_value_t = TestProfile::Gaussian)]
    profile: TestProfile,
    /// χ(Q²) of the one-block model used by `sigma`.
    #[arg(long, default_value = "3i", allow_hyphen_values = true, value_parser = complex_arg)]
    lambda: CRational,
}

fn complex_arg(s: &str) -> Result<CRational, String> {
    parse_complex(s).map_err(|e| e.to_string())
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    run(&cli)
}

pub fn run(cli: &Cli) -> i32 {
    let outcome = match &cli.command {
        Command::VerifyLinear(args) => verify_linear(args),
        Command::Volume { family } => volume(family),
        Command::FixedPoints { family } => fixed_points(family),
        Command::DistCheck(args) => dist_check(args),
        Command::Calibrate => calibrate(),
        Command::Chain { family } => chain(family),
    };
    match outcome {
        Ok(out) => {
            emit(cli.json, &out);
            if out.passed {
                0
            } else {
                1
            }
        }
        Err(f) => {
            emit_error(&f);
            3
        }
    }
}

/// A finished command: JSON body, table rows and pass/fail.
pub struct Outcome {
    pub command: &'static str,
    pub seed: Option<u64>,
    pub body: Value,
    pub rows: Vec<(String, String)>,
    pub passed: bool,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::new("io", format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::new("input", format!("{}: {e}", path.display())))
}

fn verify_linear(args: &VerifyLinearArgs) -> Result<Outcome, Failure> {
    let rep = match (&args.source.lambdas, &args.source.rep_file) {
        (Some(lambdas), _) => CSRep::from_lambdas(lambdas)?,
        (None, Some(path)) => read_json::<CSRep>(path)?,
        (None, None) => unreachable!("clap enforces one source"),
    };
    let model = locverify::build_model(&rep);
    let q_square_ok = locverify::check_q_square(&model)?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut failures = Vec::new();
    for case in 0..args.count {
        let (profiles, f) = locverify::random_form(&mut rng, &model, args.profiles as usize)?;
        let report = locverify::verify_localization(&model, &f)?;
        if !report.equal {
            failures.push(json!({
                "case": case,
                "profiles": profiles.iter().map(profile_json).collect::<Vec<_>>(),
                "report": report,
            }));
        }
    }
    let lambdas: Vec<String> = rep.oriented_lambdas().iter().map(format_complex).collect();
    let passed = failures.is_empty() && q_square_ok;
    Ok(Outcome {
        command: "verify-linear",
        seed: Some(args.seed),
        rows: vec![
            ("blocks".into(), rep.blocks().to_string()),
            ("lambdas".into(), lambdas.join(", ")),
            ("max profile degree".into(), args.profiles.to_string()),
            ("forms checked".into(), args.count.to_string()),
            ("Q^2 = torus action".into(), q_square_ok.to_string()),
            ("failures".into(), failures.len().to_string()),
        ],
        body: json!({
            "blocks": rep.blocks(),
            "lambdas": lambdas,
            "max_degree": args.profiles,
            "count": args.count,
            "q_square_ok": q_square_ok,
            "failures": failures.len(),
            "failed_cases": failures,
        }),
        passed,
    })
}

fn profile_json(p: &Profile) -> Value {
    json!({
        "coeffs": p.coeffs.iter().map(format_complex).collect::<Vec<_>>(),
        "s": p.s.to_string(),
    })
}

fn family_spec(family: &Family) -> Result<HomSpaceSpec, Failure> {
    Ok(match family {
        Family::Isotropic { n } => HomSpaceSpec::Isotropic { n: *n as usize },
        Family::Periplectic { r, s } => HomSpaceSpec::Periplectic { r: *r as usize, s: *s as usize },
        Family::Flag { root_file } => HomSpaceSpec::Flag { root_data: read_json::<RootData>(root_file)? },
    })
}

fn volume(family: &Family) -> Result<Outcome, Failure> {
    let spec = family_spec(family)?;
    let v = homspace::volume(&spec)?;
    Ok(Outcome {
        command: "volume",
        seed: None,
        rows: vec![
            ("space".into(), spec.describe()),
            ("fixed points".into(), v.count.to_string()),
            ("exponent m".into(), v.exponent_m.to_string()),
            ("alternative exponent".into(), v.alt_exponent.to_string()),
            ("volume".into(), v.value.clone()),
            ("verdict".into(), format!("{:?}", v.verdict)),
        ],
        body: json!({ "space": spec.describe(), "volume": v, "count": v.count, "verdict": v.verdict }),
        passed: true,
    })
}

fn fixed_points(family: &Family) -> Result<Outcome, Failure> {
    let spec = family_spec(family)?;
    let (count, reps) = match &spec {
        HomSpaceSpec::Flag { root_data } => {
            let ratio = homspace::weyl_ratio_flag(root_data)?;
            return Ok(Outcome {
                command: "fixed-points",
                seed: None,
                rows: vec![
                    ("space".into(), spec.describe()),
                    ("|W|".into(), ratio.w_order.to_string()),
                    ("|W_d|".into(), ratio.w_d.to_string()),
                    ("|W_c|".into(), ratio.w_c.to_string()),
                    ("fixed points".into(), ratio.ratio.to_string()),
                ],
                body: json!({ "space": spec.describe(), "count": ratio.ratio, "weyl": ratio }),
                passed: true,
            });
        }
        _ => homspace::fixed_points(&spec)?,
    };
    let mut rows = vec![("space".into(), spec.describe()), ("fixed points".into(), count.to_string())];
    for (i, w) in reps.iter().enumerate().take(16) {
        rows.push((format!("rep {i}"), format!("perm {:?} signs {:?}", w.perm, w.signs)));
    }
    if reps.len() > 16 {
        rows.push(("...".into(), format!("{} more", reps.len() - 16)));
    }
    Ok(Outcome {
        command: "fixed-points",
        seed: None,
        rows,
        body: json!({ "space": spec.describe(), "count": count, "representatives": reps }),
        passed: true,
    })
}

fn dist_check(args: &DistCheckArgs) -> Result<Outcome, Failure> {
    let report = match args.identity {
        Identity::Polediff => {
            let mut g = SuperFunction::one(1);
            if matches!(args.profile, TestProfile::Quadratic) {
                g = SuperFunction::coordinate(1, Coord::Z(0))?.multiply(&SuperFunction::coordinate(1, Coord::ZBar(0))?)?;
            }
            let g = g.with_envelope(vec![int(1)])?;
            locverify::cauchy_pompeiu_check(&g, &args.eps)?
        }
        Identity::Sigma => {
            let rep = CSRep::from_lambdas(std::slice::from_ref(&args.lambda))?;
            let model = locverify::build_model(&rep);
            let coeffs = match args.profile {
                TestProfile::Gaussian => vec![cint(1, 0)],
                TestProfile::Quadratic => vec![cint(0, 0), cint(1, 0)],
            };
            let f = locverify::make_equivariant_form(&model, &[Profile { coeffs, s: int(1) }])?;
            locverify::sigma_pairing_check(&model, &f, &args.eps)?
        }
    };
    let fmt = |v: [f64; 2]| format!("{:.10} {:+.10}i", v[0], v[1]);
    let mut rows: Vec<(String, String)> = report
        .eps_trace
        .iter()
        .map(|s| (format!("eps = {}", s.eps), fmt(s.value)))
        .collect();
    rows.push(("extrapolated".into(), fmt(report.extrapolated)));
    rows.push(("target".into(), fmt(report.target)));
    if let Some(c) = report.implied_constant {
        rows.push(("implied constant".into(), fmt(c)));
    }
    rows.push(("abs error".into(), format!("{:.3e}", report.abs_error)));
    rows.push(("tolerance".into(), format!("{:e}", report.tolerance)));
    Ok(Outcome {
        command: "dist-check",
        seed: None,
        rows,
        passed: report.passed,
        body: json!({ "report": report, "verification": report.verification_report() }),
    })
}

fn calibrate() -> Result<Outcome, Failure> {
    let r = locverify::calibrate()?;
    Ok(Outcome {
        command: "calibrate",
        seed: None,
        rows: vec![
            ("witness".into(), format!("{} with lambda = {}", r.witness, r.lambda)),
            ("raw integral".into(), r.raw_integral.to_string()),
            ("target".into(), r.target.to_string()),
            ("kappa measured".into(), r.kappa_measured.clone()),
            ("kappa frozen".into(), r.kappa_frozen.clone()),
            ("drift".into(), r.drift.to_string()),
        ],
        passed: !r.drift,
        body: serde_json::to_value(&r).expect("serializable"),
    })
}

fn chain(family: &ChainFamily) -> Result<Outcome, Failure> {
    let spec = match family {
        ChainFamily::Periplectic { parts } => ChainSpec::Periplectic { parts: parts.iter().map(|&p| p as usize).collect() },
        ChainFamily::Flag { root_file } => ChainSpec::Flag { root_data: read_json(root_file)? },
    };
    let r = homspace::splitting_chain_report(&spec)?;
    let mut rows = vec![("chain".into(), r.chain.clone())];
    for (i, s) in r.steps.iter().enumerate() {
        rows.push((format!("step {i}"), format!("{} in {}: {}", s.sub, s.sup, if s.splitting { "splitting" } else { "not established" })));
    }
    rows.push(("conclusion".into(), r.statement.clone()));
    Ok(Outcome {
        command: "chain",
        seed: None,
        rows,
        passed: r.broken_at.is_none(),
        body: serde_json::to_value(&r).expect("serializable"),
    })
}
