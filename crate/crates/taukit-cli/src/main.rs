//! Command-line front end for the taukit library.
//!
//! Subcommands construct tau polynomials (`tau`), evaluate Schur polynomials
//! (`schur`), check bilinear identities and PDE flows (`verify`, `kk-check`,
//! `kdv-check`), cross-check wave symbols (`wave`), generate seeded constant
//! matrices (`gen-constants`), and render polynomials (`export-latex`).
//! Structured output is JSON on standard output, one value per invocation;
//! diagnostics go to standard error. Exit codes: 0 success, 1 a verification
//! failed (its report is still printed), 2 bad usage or input, 3 internal
//! error.

use std::collections::BTreeMap;
use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use taukit::bilinear::{
    verify_ckp, verify_kp, verify_reduced, verify_schur_constraint, verify_time_independence,
};
use taukit::jsonio;
use taukit::latex::export_latex;
use taukit::partitions::{FrobeniusCoords, Partition};
use taukit::pde::{verify_kdv, verify_kk};
use taukit::schur::{schur_jt, ArgSpec};
use taukit::seeds::gen_constants;
use taukit::tau::{
    resolve_ckp_constraints, tau_bkp, tau_ckp, tau_ckp_reduced, tau_kp_giambelli, tau_kp_jt,
};
use taukit::wave::{cross_check_wave, wave_giambelli_det, wave_jt_det};
use taukit::{
    CheckReport, ConstMatrix, Constants, Error, Poly, Rat, SeedSpec, TauPoly, VarRef, WaveRoute,
};

type Result<T> = std::result::Result<T, Error>;

#[derive(Parser)]
#[command(name = "taukit", version, about = "Exact tau-function construction and verification")]
struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,

    /// Omit residual polynomials from verification reports.
    #[arg(long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Schur polynomial of a partition, optionally with shifted
    /// time variables.
    Schur {
        /// Partition as comma-separated parts, e.g. "2,2"; empty for the
        /// empty partition.
        #[arg(long)]
        lambda: String,
        /// Constants file with a single column c; evaluates at t_i + c_i.
        #[arg(long)]
        shift: Option<PathBuf>,
    },
    /// Construct a tau polynomial of one of the supported families.
    #[command(subcommand)]
    Tau(TauCmd),
    /// Check a bilinear identity on a polynomial or tau object read from
    /// --input or standard input.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Build a wave-symbol numerator by a determinant route and cross-check
    /// it against the Miwa-shift route.
    #[command(subcommand)]
    Wave(WaveCmd),
    /// Check the Kaup-Kupershmidt equation on a tau object.
    KkCheck {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Check the KdV equation on a tau object.
    KdvCheck {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Generate a seeded constant matrix with the given column heights.
    GenConstants {
        #[arg(long)]
        seed: u64,
        /// Column heights, comma-separated, e.g. "3,2,1".
        #[arg(long)]
        shape: String,
        /// Numerators and denominators are drawn from [-bound, bound].
        #[arg(long, default_value_t = 9)]
        bound: u32,
    },
    /// Render a polynomial (or the polynomial of a tau object) as LaTeX.
    ExportLatex {
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

/// Where a constant matrix comes from: the literal "zero", a JSON file, or
/// a seeded generator.
#[derive(Args)]
struct ConstSource {
    /// Constants JSON file, or the literal "zero".
    #[arg(long, conflicts_with = "seed")]
    constants: Option<String>,
    /// Generate constants from this seed instead of reading a file.
    #[arg(long)]
    seed: Option<u64>,
    /// Value bound for seeded constants.
    #[arg(long, default_value_t = 9, requires = "seed")]
    bound: u32,
}

#[derive(Subcommand)]
enum TauCmd {
    /// Jacobi-Trudi determinant labelled by a partition.
    KpJt {
        #[arg(long)]
        lambda: String,
        #[command(flatten)]
        source: ConstSource,
    },
    /// Giambelli determinant labelled by Frobenius coordinates "a1,..|b1,..".
    KpGiambelli {
        #[arg(long)]
        frobenius: String,
        #[command(flatten)]
        source: ConstSource,
    },
    /// Symmetry-constrained determinant for self-conjugate coordinates;
    /// the dependent constant slots are resolved before construction.
    Ckp {
        /// Arm lengths "a1,a2,..." (legs equal arms).
        #[arg(long)]
        frobenius: String,
        #[command(flatten)]
        source: ConstSource,
    },
    /// n-reduced variant with one constants vector per congruence class.
    CkpReduced {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        frobenius: String,
        #[command(flatten)]
        source: ConstSource,
    },
    /// Pfaffian family labelled by a strict partition.
    Bkp {
        #[arg(long)]
        lambda: String,
        #[command(flatten)]
        source: ConstSource,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// KP hierarchy bilinear identity.
    Kp(VerifyInput),
    /// CKP identity: conjugation invariance plus the symmetric residue.
    Ckp(VerifyInput),
    /// Shifted identities of the n-reduced hierarchy for p = 0..=pmax.
    Reduced {
        #[command(flatten)]
        input: VerifyInput,
        /// Reduction order; defaults to the input tau's own, if present.
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, default_value_t = 2)]
        pmax: u32,
    },
    /// Differential-operator constraint, both signs.
    SchurConstraint(VerifyInput),
    /// Vanishing of the derivatives in t_n, t_2n, ...
    TimeIndep {
        #[command(flatten)]
        input: VerifyInput,
        #[arg(long)]
        n: Option<u32>,
    },
}

#[derive(Args)]
struct VerifyInput {
    /// Polynomial or tau JSON; standard input when omitted.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum WaveCmd {
    /// Border determinant over the Jacobi-Trudi data.
    Jt {
        #[arg(long)]
        lambda: String,
        #[command(flatten)]
        source: ConstSource,
    },
    /// Border determinant over the Giambelli data.
    Giambelli {
        #[arg(long)]
        frobenius: String,
        #[command(flatten)]
        source: ConstSource,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("taukit: {e}");
            match e {
                Error::Internal(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Schur { lambda, shift } => {
            let lambda = parse_partition(lambda)?;
            let mut poly = schur_jt(&lambda, &ArgSpec::t());
            if let Some(path) = shift {
                let col = single_column(&read_constants_file(path)?)?;
                for (i, c) in col.iter().enumerate() {
                    let v = VarRef::t(i as u32 + 1);
                    let shifted = Poly::var(v).add(&Poly::constant(c.clone()));
                    poly = poly.substitute_var(v, &shifted);
                }
            }
            emit(cli, &jsonio::poly_to_json(&poly));
            Ok(ExitCode::SUCCESS)
        }
        Command::Tau(cmd) => {
            let tau = build_tau(cmd)?;
            emit(cli, &jsonio::tau_to_json(&tau));
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(cmd) => run_verify(cli, cmd),
        Command::Wave(cmd) => run_wave(cli, cmd),
        Command::KkCheck { input } => {
            let tau = read_tau(input.as_deref())?;
            let report = verify_kk(&tau)?;
            finish_reports(cli, &[report])
        }
        Command::KdvCheck { input } => {
            let tau = read_tau(input.as_deref())?;
            let report = verify_kdv(&tau)?;
            finish_reports(cli, &[report])
        }
        Command::GenConstants { seed, shape, bound } => {
            let heights = parse_numbers(shape)?;
            let matrix = gen_constants(&SeedSpec {
                seed: *seed,
                heights,
                bound: *bound,
            })?;
            emit(cli, &jsonio::constants_to_json(&Constants::Matrix(matrix)));
            Ok(ExitCode::SUCCESS)
        }
        Command::ExportLatex { input } => {
            let (poly, _) = read_poly_like(input.as_deref())?;
            println!("{}", export_latex(&poly));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn build_tau(cmd: &TauCmd) -> Result<TauPoly> {
    match cmd {
        TauCmd::KpJt { lambda, source } => {
            let lambda = parse_partition(lambda)?;
            let c = matrix_source(source, &jt_heights(&lambda))?;
            tau_kp_jt(&lambda, &c)
        }
        TauCmd::KpGiambelli { frobenius, source } => {
            let f = parse_frobenius(frobenius)?;
            let (c, d) = pair_source(source, &f)?;
            tau_kp_giambelli(&f, &c, &d)
        }
        TauCmd::Ckp { frobenius, source } => {
            let f = parse_self_conjugate(frobenius)?;
            let arms = f.arms();
            let raw = matrix_source(source, &ckp_heights(arms))?;
            let resolved = resolve_ckp_constraints(arms, &raw)?;
            tau_ckp(arms, &resolved)
        }
        TauCmd::CkpReduced { n, frobenius, source } => {
            let f = parse_self_conjugate(frobenius)?;
            let classes = class_source(source, &f, *n)?;
            tau_ckp_reduced(*n, &f, &classes)
        }
        TauCmd::Bkp { lambda, source } => {
            let lambda = parse_partition(lambda)?;
            let c = matrix_source(source, &bkp_heights(&lambda))?;
            tau_bkp(&lambda, &c)
        }
    }
}

fn run_verify(cli: &Cli, cmd: &VerifyCmd) -> Result<ExitCode> {
    let reports = match cmd {
        VerifyCmd::Kp(input) => {
            let (poly, _) = read_poly_like(input.input.as_deref())?;
            vec![verify_kp(&poly)?]
        }
        VerifyCmd::Ckp(input) => {
            let (poly, _) = read_poly_like(input.input.as_deref())?;
            vec![verify_ckp(&poly)?]
        }
        VerifyCmd::Reduced { input, n, pmax } => {
            let (poly, tau) = read_poly_like(input.input.as_deref())?;
            let n = reduction_order(*n, tau.as_ref())?;
            verify_reduced(&poly, n, *pmax)?
        }
        VerifyCmd::SchurConstraint(input) => {
            let (poly, _) = read_poly_like(input.input.as_deref())?;
            let (plus, minus) = verify_schur_constraint(&poly);
            vec![plus, minus]
        }
        VerifyCmd::TimeIndep { input, n } => {
            let (poly, tau) = read_poly_like(input.input.as_deref())?;
            let n = reduction_order(*n, tau.as_ref())?;
            verify_time_independence(&poly, n)?
        }
    };
    finish_reports(cli, &reports)
}

fn run_wave(cli: &Cli, cmd: &WaveCmd) -> Result<ExitCode> {
    let (tau, symbol, route) = match cmd {
        WaveCmd::Jt { lambda, source } => {
            let lambda = parse_partition(lambda)?;
            let c = matrix_source(source, &jt_heights(&lambda))?;
            let symbol = wave_jt_det(&lambda, &c)?;
            (tau_kp_jt(&lambda, &c)?, symbol, WaveRoute::Jt)
        }
        WaveCmd::Giambelli { frobenius, source } => {
            let f = parse_frobenius(frobenius)?;
            let (c, d) = pair_source(source, &f)?;
            let symbol = wave_giambelli_det(&f, &c, &d)?;
            (tau_kp_giambelli(&f, &c, &d)?, symbol, WaveRoute::Giambelli)
        }
    };
    let check = cross_check_wave(&tau, route)?;
    let passed = check.passed;
    let out = serde_json::json!({
        "symbol": jsonio::wave_symbol_to_json(&symbol),
        "check": jsonio::wave_check_to_json(&check),
    });
    emit(cli, &out);
    Ok(if passed { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

/// Prints verification reports (a single object, or an array when the check
/// produced several) and turns their verdicts into the exit code.
fn finish_reports(cli: &Cli, reports: &[CheckReport]) -> Result<ExitCode> {
    let mut out = if reports.len() == 1 {
        jsonio::report_to_json(&reports[0])
    } else {
        jsonio::reports_to_json(reports)
    };
    if cli.quiet {
        strip_residuals(&mut out);
    }
    emit(cli, &out);
    Ok(if reports.iter().all(|r| r.passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn strip_residuals(v: &mut Value) {
    match v {
        Value::Array(items) => items.iter_mut().for_each(strip_residuals),
        Value::Object(map) => {
            if let Some(r) = map.get_mut("residual") {
                *r = Value::Null;
            }
        }
        _ => {}
    }
}

fn emit(cli: &Cli, v: &Value) {
    let text = if cli.pretty {
        serde_json::to_string_pretty(v).expect("serializable")
    } else {
        serde_json::to_string(v).expect("serializable")
    };
    println!("{text}");
}

fn parse_numbers(text: &str) -> Result<Vec<u32>> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| Error::invalid(format!("not a nonnegative integer: {p:?}")))
        })
        .collect()
}

fn parse_partition(text: &str) -> Result<Partition> {
    Partition::new(parse_numbers(text)?)
}

/// "a1,a2,...|b1,b2,..." or just "a1,a2,..." for self-conjugate coordinates.
fn parse_frobenius(text: &str) -> Result<FrobeniusCoords> {
    match text.split_once('|') {
        Some((a, b)) => FrobeniusCoords::new(parse_numbers(a)?, parse_numbers(b)?),
        None => {
            let a = parse_numbers(text)?;
            FrobeniusCoords::new(a.clone(), a)
        }
    }
}

fn parse_self_conjugate(text: &str) -> Result<FrobeniusCoords> {
    let f = parse_frobenius(text)?;
    if !f.is_self_conjugate() {
        return Err(Error::invalid(format!(
            "this family needs self-conjugate coordinates, got {f}"
        )));
    }
    Ok(f)
}

fn read_input(path: Option<&std::path::Path>) -> Result<String> {
    match path {
        Some(p) => {
            fs::read_to_string(p).map_err(|e| Error::invalid(format!("{}: {e}", p.display())))
        }
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Error::invalid(format!("standard input: {e}")))?;
            Ok(buf)
        }
    }
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::invalid(format!("not valid JSON: {e}")))
}

/// Reads either a bare polynomial or a tau object, returning the polynomial
/// and, when present, the full tau.
fn read_poly_like(path: Option<&std::path::Path>) -> Result<(Poly, Option<TauPoly>)> {
    let v = parse_json(&read_input(path)?)?;
    if v.get("family").is_some() {
        let tau = jsonio::tau_from_json(&v)?;
        Ok((tau.poly.clone(), Some(tau)))
    } else {
        Ok((jsonio::poly_from_json(&v)?, None))
    }
}

fn read_tau(path: Option<&std::path::Path>) -> Result<TauPoly> {
    let v = parse_json(&read_input(path)?)?;
    if v.get("family").is_none() {
        return Err(Error::invalid(
            "this check needs a tau object with its family tag, not a bare polynomial",
        ));
    }
    jsonio::tau_from_json(&v)
}

fn read_constants_file(path: &std::path::Path) -> Result<Constants> {
    jsonio::constants_from_json(&parse_json(&read_input(Some(path))?)?)
}

fn reduction_order(flag: Option<u32>, tau: Option<&TauPoly>) -> Result<u32> {
    flag.or_else(|| tau.and_then(|t| t.family.reduction()))
        .ok_or_else(|| Error::invalid("pass --n, or an input tau that carries a reduction order"))
}

fn single_column(c: &Constants) -> Result<Vec<Rat>> {
    match c {
        Constants::Matrix(m) if m.cols().len() == 1 => Ok(m.cols()[0].clone()),
        _ => Err(Error::invalid("expected a constants matrix with one column")),
    }
}

/// Column heights read by the Jacobi-Trudi determinant: lambda_j + len - j.
fn jt_heights(lambda: &Partition) -> Vec<u32> {
    let len = lambda.parts().len() as u32;
    lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(j, &p)| p + len - (j as u32 + 1))
        .collect()
}

/// Heights read by the symmetry-constrained determinant: a_j + a_1 + 1.
fn ckp_heights(arms: &[u32]) -> Vec<u32> {
    let a1 = arms.first().copied().unwrap_or(0);
    arms.iter().map(|&a| a + a1 + 1).collect()
}

/// Heights read by the Pfaffian family: part i plus the largest other part,
/// over the parts padded to even length.
fn bkp_heights(lambda: &Partition) -> Vec<u32> {
    let mut parts = lambda.parts().to_vec();
    if parts.len() % 2 == 1 {
        parts.push(0);
    }
    (0..parts.len())
        .map(|i| {
            let other = parts
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &p)| p)
                .max()
                .unwrap_or(0);
            parts[i] + other
        })
        .collect()
}

fn giambelli_heights(f: &FrobeniusCoords) -> (Vec<u32>, Vec<u32>) {
    let b1 = f.legs().first().copied().unwrap_or(0);
    let c = f.arms().iter().map(|&a| a + b1 + 1).collect();
    let d = f.legs().to_vec();
    (c, d)
}

fn seeded_matrix(seed: u64, bound: u32, heights: &[u32]) -> Result<ConstMatrix> {
    gen_constants(&SeedSpec {
        seed,
        heights: heights.to_vec(),
        bound,
    })
}

fn matrix_source(source: &ConstSource, heights: &[u32]) -> Result<ConstMatrix> {
    if let Some(seed) = source.seed {
        return seeded_matrix(seed, source.bound, heights);
    }
    match source.constants.as_deref() {
        None | Some("zero") => Ok(ConstMatrix::zero()),
        Some(path) => match read_constants_file(std::path::Path::new(path))? {
            Constants::Matrix(m) => Ok(m),
            _ => Err(Error::invalid(
                "this family takes a single constants matrix ({\"columns\": ...})",
            )),
        },
    }
}

/// Giambelli needs a row matrix and a column matrix; a seeded source derives
/// the second matrix from seed + 1.
fn pair_source(source: &ConstSource, f: &FrobeniusCoords) -> Result<(ConstMatrix, ConstMatrix)> {
    let (hc, hd) = giambelli_heights(f);
    if let Some(seed) = source.seed {
        return Ok((
            seeded_matrix(seed, source.bound, &hc)?,
            seeded_matrix(seed.wrapping_add(1), source.bound, &hd)?,
        ));
    }
    match source.constants.as_deref() {
        None | Some("zero") => Ok((ConstMatrix::zero(), ConstMatrix::zero())),
        Some(path) => match read_constants_file(std::path::Path::new(path))? {
            Constants::Pair(c, d) => Ok((c, d)),
            _ => Err(Error::invalid(
                "this family takes paired constants ({\"c\": ..., \"d\": ...})",
            )),
        },
    }
}

/// Reduced constants: one vector per congruence class of the arms mod n; a
/// seeded source salts the seed with the class.
fn class_source(
    source: &ConstSource,
    f: &FrobeniusCoords,
    n: u32,
) -> Result<BTreeMap<u32, Vec<Rat>>> {
    if n == 0 {
        return Err(Error::invalid("reduction order must be positive"));
    }
    if let Some(seed) = source.seed {
        let arms = f.arms();
        let a1 = arms.first().copied().unwrap_or(0);
        let mut classes = BTreeMap::new();
        for &arm in arms {
            let class = arm % n;
            if classes.contains_key(&class) {
                continue;
            }
            let top = arms
                .iter()
                .filter(|&&x| x % n == class)
                .max()
                .copied()
                .unwrap_or(0);
            let column =
                seeded_matrix(seed.wrapping_add(class as u64), source.bound, &[top + a1 + 1])?;
            classes.insert(class, column.cols()[0].clone());
        }
        return Ok(classes);
    }
    match source.constants.as_deref() {
        None | Some("zero") => Ok(BTreeMap::new()),
        Some(path) => match read_constants_file(std::path::Path::new(path))? {
            Constants::Classes(map) => Ok(map),
            _ => Err(Error::invalid(
                "the reduced family takes class constants ({\"classes\": ...})",
            )),
        },
    }
}
