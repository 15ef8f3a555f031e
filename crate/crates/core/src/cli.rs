//! Command-line front end. Every invocation writes exactly one JSON document to stdout;
//! diagnostics go to stderr.
//!
//! Exit codes: 0 success or member or pass, 2 violation or exterior or fail, 3 inconclusive,
//! 1 usage or I/O error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::algebras::{self, DEFAULT_SPAN_TOL};
use crate::domains::{FreeDomain, Spectraball, Spectrahedron, DEFAULT_BOUNDARY_TOL};
use crate::error::Error;
use crate::genericity::{self, KernelWitness, ProbeOptions, ProbeOutcome, DEFAULT_GAP_TOL, DEFAULT_MARGIN_TOL};
use crate::maps::{ConvexotonicMap, Sign, DEFAULT_CONVEXOTONIC_TOL};
use crate::sampling::DEFAULT_SEED;
use crate::tuple::{ComplexMatrix, MatrixTuple};
use crate::verify::{self, TheoremData, DEFAULT_VERIFY_TOL};
use crate::wire::{self, TupleFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAIL: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

/// JSON schema of the tuple file format.
pub const TUPLE_SCHEMA: &str = include_str!("../schema/tuple.schema.json");

#[derive(Parser, Debug)]
#[command(name = "convexotonic", version, about = "Pencils, free spectrahedra and convexotonic maps")]
struct Cli {
    /// Print the JSON schema of tuple files and exit.
    #[arg(long)]
    schema: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Ball,
    Spec,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

impl From<SignArg> for Sign {
    fn from(s: SignArg) -> Self {
        match s {
            SignArg::Plus => Sign::Plus,
            SignArg::Minus => Sign::Minus,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Membership of a point in a spectraball or free spectrahedron.
    Member {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        tuple: PathBuf,
        #[arg(long)]
        point: PathBuf,
        /// Half-width of the boundary band.
        #[arg(long, default_value_t = DEFAULT_BOUNDARY_TOL)]
        tol: f64,
    },
    /// Structure constants of a tuple spanning an algebra.
    Xi {
        #[arg(long)]
        tuple: PathBuf,
        /// Extend the tuple to the algebra it generates first.
        #[arg(long)]
        closure: bool,
        /// Relative span residual tolerance.
        #[arg(long, default_value_t = DEFAULT_SPAN_TOL)]
        tol: f64,
    },
    /// Constants of `F_k C F_j` in the span of `F`.
    PencilXi {
        #[arg(long)]
        tuple: PathBuf,
        /// Middle factor as a one-element tuple file.
        #[arg(long)]
        middle: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SPAN_TOL)]
        tol: f64,
    },
    /// Evaluate a convexotonic map at a point.
    Eval {
        #[arg(long)]
        xi: PathBuf,
        #[arg(long, value_enum)]
        sign: SignArg,
        #[arg(long)]
        point: PathBuf,
        /// Convexotonic residual tolerance for the constants.
        #[arg(long, default_value_t = DEFAULT_CONVEXOTONIC_TOL)]
        tol: f64,
    },
    /// Round-trip residual of `p` and `q` at a point.
    InverseCheck {
        #[arg(long)]
        xi: PathBuf,
        #[arg(long)]
        point: PathBuf,
        #[arg(long, default_value_t = DEFAULT_VERIFY_TOL)]
        tol: f64,
    },
    /// Randomized sv-genericity certificate.
    SvProbe {
        #[arg(long)]
        tuple: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_GAP_TOL)]
        gap_tol: f64,
        #[arg(long, default_value_t = DEFAULT_MARGIN_TOL)]
        margin_tol: f64,
    },
    /// Check the classification theorem conclusions on data `(E, B, Z, M)`.
    VerifyTheorem {
        #[arg(long)]
        e: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// Unitary `Z` as a one-element tuple file.
        #[arg(long)]
        z: PathBuf,
        /// Unitary `M` as a one-element tuple file.
        #[arg(long)]
        m: PathBuf,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_VERIFY_TOL)]
        tol: f64,
    },
    /// Run the full example catalog.
    Examples {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

/// Failure before a result document could be produced.
enum Failure {
    /// Usage, I/O or malformed input: message to stderr, exit 1.
    Usage(String),
    /// Numerical failure on valid input: structured JSON on stdout, exit 2.
    Numerical(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numerical() { Failure::Numerical(e) } else { Failure::Usage(e.to_string()) }
    }
}

type Outcome = std::result::Result<(serde_json::Value, i32), Failure>;

fn read_tuple(path: &Path) -> std::result::Result<MatrixTuple, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    wire::parse_tuple(&text).map_err(|e| {
        if e.line == 0 {
            Failure::Usage(format!("{}: {}", path.display(), e.message))
        } else {
            Failure::Usage(format!("{}:{}:{}: {}", path.display(), e.line, e.column, e.message))
        }
    })
}

/// A one-element tuple file holding a single matrix.
fn read_matrix(path: &Path) -> std::result::Result<ComplexMatrix, Failure> {
    let t = read_tuple(path)?;
    if t.g() != 1 {
        return Err(Failure::Usage(format!("{}: expected a single matrix (g = 1), found g = {}", path.display(), t.g())));
    }
    Ok(t.into_inner().remove(0))
}

fn to_value<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn witness_json(w: &KernelWitness) -> serde_json::Value {
    json!({ "point": wire::encode_vector(&w.point), "kernel": wire::encode_vector(&w.kernel), "trial": w.trial })
}

fn constants_json(sc: &algebras::StructureConstants) -> serde_json::Value {
    json!({
        "xi": TupleFile::from(&sc.xi),
        "residual": sc.residual,
        "relative_residual": sc.relative_residual,
        "convexotonic_residual": sc.convexotonic_residual,
    })
}

fn report_outcome(r: &verify::VerificationReport) -> (serde_json::Value, i32) {
    (to_value(r), if r.passed { EXIT_OK } else { EXIT_FAIL })
}

fn dispatch(cmd: Command) -> Outcome {
    match cmd {
        Command::Member { kind, tuple, point, tol } => {
            let a = read_tuple(&tuple)?;
            let x = read_tuple(&point)?;
            let verdict = match kind {
                Kind::Ball => Spectraball::new(a).membership(&x, tol)?,
                Kind::Spec => Spectrahedron::new(a)?.membership(&x, tol)?,
            };
            let code = if verdict.location.is_member() { EXIT_OK } else { EXIT_FAIL };
            Ok((to_value(&verdict), code))
        }
        Command::Xi { tuple, closure, tol } => {
            let j = read_tuple(&tuple)?;
            if closure {
                let cl = algebras::algebra_closure(&j, tol)?;
                let sc = algebras::structure_constants(&cl.extended, tol)?;
                let mut v = constants_json(&sc);
                v["closure"] = json!({
                    "appended_count": cl.appended_count,
                    "extended": TupleFile::from(&cl.extended),
                });
                Ok((v, EXIT_OK))
            } else {
                Ok((constants_json(&algebras::structure_constants(&j, tol)?), EXIT_OK))
            }
        }
        Command::PencilXi { tuple, middle, tol } => {
            let f = read_tuple(&tuple)?;
            let c = read_matrix(&middle)?;
            Ok((constants_json(&algebras::pencil_structure_constants(&f, &c, tol)?), EXIT_OK))
        }
        Command::Eval { xi, sign, point, tol } => {
            let map = ConvexotonicMap::with_tolerance(read_tuple(&xi)?, sign.into(), tol)?;
            let y = map.eval(&read_tuple(&point)?)?;
            Ok((to_value(&TupleFile::from(&y)), EXIT_OK))
        }
        Command::InverseCheck { xi, point, tol } => {
            let q = ConvexotonicMap::new(read_tuple(&xi)?, Sign::Plus)?;
            let p = q.inverse();
            let x = read_tuple(&point)?;
            let p_after_q = p.eval(&q.eval(&x)?)?.max_distance(&x)?;
            let q_after_p = q.eval(&p.eval(&x)?)?.max_distance(&x)?;
            let residual = p_after_q.max(q_after_p);
            let passed = residual < tol;
            let v = json!({
                "p_after_q": p_after_q,
                "q_after_p": q_after_p,
                "residual": residual,
                "tol": tol,
                "passed": passed,
            });
            Ok((v, if passed { EXIT_OK } else { EXIT_FAIL }))
        }
        Command::SvProbe { tuple, trials, seed, gap_tol, margin_tol } => {
            let a = read_tuple(&tuple)?;
            let opts = ProbeOptions { trials, seed, gap_tol, margin_tol };
            match genericity::sv_probe(&a, &opts)? {
                ProbeOutcome::Certified(cert) => {
                    let check = cert.revalidate(&a, &opts)?;
                    let v = json!({
                        "result": "certified",
                        "seed": cert.seed,
                        "trials_used": cert.trials_used,
                        "hyperbasis_margin": cert.hyperbasis_margin,
                        "basis_margin": cert.basis_margin,
                        "alphas": cert.alphas.iter().map(witness_json).collect::<Vec<_>>(),
                        "betas": cert.betas.iter().map(witness_json).collect::<Vec<_>>(),
                        "revalidation": check,
                    });
                    Ok((v, if check.valid { EXIT_OK } else { EXIT_FAIL }))
                }
                ProbeOutcome::Inconclusive { trials_used } => {
                    Ok((json!({ "result": "inconclusive", "trials_used": trials_used }), EXIT_INCONCLUSIVE))
                }
                ProbeOutcome::Rejected(reasons) => {
                    Ok((json!({ "result": "rejected", "reasons": reasons }), EXIT_FAIL))
                }
            }
        }
        Command::VerifyTheorem { e, b, z, m, samples, seed, tol } => {
            let data = TheoremData::new(read_tuple(&e)?, read_tuple(&b)?, read_matrix(&z)?, read_matrix(&m)?, tol)?;
            Ok(report_outcome(&verify::verify_theorem_main(&data, samples, seed, tol)?))
        }
        Command::Examples { seed } => Ok(report_outcome(&verify::example_catalog(seed)?)),
    }
}

/// Parse `argv` (including the program name) and run, writing to the given streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let shown = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let text = e.render().to_string();
            return if shown {
                let _ = write!(out, "{text}");
                EXIT_OK
            } else {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            };
        }
    };
    if cli.schema {
        let _ = write!(out, "{TUPLE_SCHEMA}");
        return EXIT_OK;
    }
    let Some(cmd) = cli.command else {
        let _ = writeln!(err, "error: a subcommand is required (try --help)");
        return EXIT_USAGE;
    };
    match dispatch(cmd) {
        Ok((value, code)) => {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("json"));
            code
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Numerical(e)) => {
            let v = json!({ "error": e.kind(), "message": e.to_string() });
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"));
            let _ = writeln!(err, "error: {e}");
            EXIT_FAIL
        }
    }
}

/// Run with the process arguments and standard streams; returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
