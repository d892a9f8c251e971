//! The `resmat` command line. [`run`] takes explicit streams so the whole
//! front end can be driven from tests.
//!
//! Exit codes: 0 member / success, 1 non-member, 2 parse or usage error,
//! 3 witness search exhausted.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde_json::{json, Value};

use crate::cyclotomic::{
    cubic_symbol, primary_generator, quartic_symbol, EisensteinInt, GaussianInt, PrimaryPrime,
    QuadInt,
};
use crate::enumerate::{self, Family};
use crate::error::Error;
use crate::frequencies::{decimal6, empirical_scan, exact_frequencies, FrequencyReport};
use crate::higher::{
    cubic_matrix, cubic_witness, is_cubic_residue_matrix, is_quartic_residue_matrix,
    quartic_block_form, quartic_matrix, quartic_witness, DEFAULT_NORM_LIMIT,
};
use crate::matrix::{conjugate, parse_matrix, Permutation, RootMatrix};
use crate::qr::{block_form, is_qr_matrix, qr_matrix, witness_primes};
use crate::rational::{jacobi, legendre, OddPrime};

pub const EXIT_MEMBER: i32 = 0;
pub const EXIT_NON_MEMBER: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;

/// Default bound on witness primes for `--m 2`.
pub const DEFAULT_PRIME_LIMIT: u64 = 10_000_000;

#[derive(Debug, Parser)]
#[command(name = "resmat", version, about = "Residue matrices of primes")]
pub struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,

    /// Worker threads for `count` and `freq`.
    #[arg(long, global = true, env = "RESMAT_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CountKind {
    Qr,
    Symmetric,
    Skew,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SymbolKind {
    Legendre,
    Jacobi,
    Cubic,
    Quartic,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a matrix is a residue matrix.
    Check {
        /// Matrix file; `-` or absent reads stdin.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(2..=4))]
        m: u8,
    },
    /// Find primes realizing a matrix.
    Witness {
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(2..=4))]
        m: u8,
        /// Prime bound (m = 2) or norm bound (m = 3, 4).
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Count matrices or permutation classes.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = CountKind::Qr)]
        kind: CountKind,
        #[arg(long)]
        classes: bool,
    },
    /// Configuration frequencies of prime triples.
    #[command(group(ArgGroup::new("mode").required(true).args(["bound", "exact"])))]
    Freq {
        /// Scan triples with p·q·r up to this bound.
        #[arg(long)]
        bound: Option<u64>,
        /// Model frequencies from the 64 equiprobable outcomes.
        #[arg(long)]
        exact: bool,
    },
    /// Evaluate a residue symbol.
    Symbol {
        #[arg(long, value_enum)]
        kind: SymbolKind,
        #[arg(long, allow_hyphen_values = true)]
        num: String,
        #[arg(long, allow_hyphen_values = true)]
        den: String,
        /// Replace operands by their primary associates first.
        #[arg(long)]
        primary: bool,
    },
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    stdin: &'a mut dyn Read,
    json: bool,
    pool: rayon::ThreadPool,
}

enum Failure {
    Usage(String),
    Exhausted(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SearchExhausted { .. } | Error::NormSearchExhausted { .. } => {
                Failure::Exhausted(e.to_string())
            }
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write, stdin: &mut dyn Read) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_MEMBER
            };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let pool = match cli.threads {
        Some(0) => {
            let _ = writeln!(err, "error: --threads must be positive");
            return EXIT_USAGE;
        }
        Some(t) => rayon::ThreadPoolBuilder::new().num_threads(t).build(),
        None => rayon::ThreadPoolBuilder::new().build(),
    };
    let pool = match pool {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let mut io = Io {
        out,
        err,
        stdin,
        json: cli.json,
        pool,
    };
    let result = dispatch(&cli.command, &mut io);
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(io.err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Exhausted(msg)) => {
            let _ = writeln!(io.err, "error: {msg}");
            EXIT_EXHAUSTED
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(io.err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: &Command, io: &mut Io<'_>) -> Outcome {
    match command {
        Command::Check { file, m } => {
            let matrix = read_matrix(file.as_ref(), *m, io)?;
            check(&matrix, io)
        }
        Command::Witness { file, m, limit } => {
            let matrix = read_matrix(file.as_ref(), *m, io)?;
            witness(&matrix, *limit, io)
        }
        Command::Count { n, kind, classes } => count(*n, *kind, *classes, io),
        Command::Freq { bound, exact } => freq(*bound, *exact, io),
        Command::Symbol {
            kind,
            num,
            den,
            primary,
        } => symbol(*kind, num, den, *primary, io),
    }
}

fn read_matrix(
    file: Option<&PathBuf>,
    m: u8,
    io: &mut Io<'_>,
) -> std::result::Result<RootMatrix, Failure> {
    let mut text = String::new();
    match file {
        Some(path) if path.as_os_str() != "-" => {
            text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        }
        _ => {
            io.stdin.read_to_string(&mut text)?;
        }
    }
    Ok(parse_matrix(&text, m)?)
}

fn emit_json(io: &mut Io<'_>, value: &Value) -> std::io::Result<()> {
    let text = serde_json::to_string(value).expect("json values serialize");
    writeln!(io.out, "{text}")
}

fn one_based(p: &Permutation) -> Vec<usize> {
    p.image().iter().map(|&i| i + 1).collect()
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn check(matrix: &RootMatrix, io: &mut Io<'_>) -> Outcome {
    let n = matrix.n();
    let (verdict, s, diag, perm): (bool, Option<usize>, Vec<String>, Option<Permutation>) =
        match matrix.m() {
            2 => {
                let d = is_qr_matrix(matrix)?;
                let perm = d
                    .verdict
                    .then(|| block_form(matrix))
                    .transpose()?
                    .map(|b| b.perm);
                (
                    d.verdict,
                    d.s,
                    d.diag.iter().map(i64::to_string).collect(),
                    perm,
                )
            }
            3 => (is_cubic_residue_matrix(matrix)?, None, Vec::new(), None),
            _ => {
                let d = is_quartic_residue_matrix(matrix)?;
                let perm = d
                    .verdict
                    .then(|| quartic_block_form(matrix))
                    .transpose()?
                    .map(|b| b.perm);
                (
                    d.verdict,
                    d.s,
                    d.diag.iter().map(GaussianInt::to_string).collect(),
                    perm,
                )
            }
        };
    let block = perm.as_ref().map(|p| conjugate(matrix, p)).transpose()?;
    if io.json {
        emit_json(
            io,
            &json!({
                "m": matrix.m(),
                "n": n,
                "verdict": verdict,
                "s": s,
                "diag": diag,
                "permutation": perm.as_ref().map(one_based),
                "block_form": block.as_ref().map(|b| b.rows().iter().map(|r| {
                    r.iter().map(|e| e.token(b.m())).collect::<Vec<_>>()
                }).collect::<Vec<_>>()),
            }),
        )?;
    } else {
        writeln!(io.out, "verdict: {}", if verdict { "yes" } else { "no" })?;
        if let Some(s) = s {
            writeln!(io.out, "s: {s}")?;
        }
        if !diag.is_empty() {
            writeln!(io.out, "diag: {}", diag.join(" "))?;
        }
        if let (Some(p), Some(b)) = (&perm, &block) {
            writeln!(io.out, "permutation: {}", join(&one_based(p)))?;
            writeln!(io.out, "block form:")?;
            writeln!(io.out, "{b}")?;
        }
    }
    Ok(if verdict {
        EXIT_MEMBER
    } else {
        EXIT_NON_MEMBER
    })
}

fn witness(matrix: &RootMatrix, limit: Option<u64>, io: &mut Io<'_>) -> Outcome {
    let not_member = |e: &Error| {
        matches!(
            e,
            Error::NotQrMatrix | Error::NotCubicResidueMatrix | Error::NotQuarticResidueMatrix
        )
    };
    let (primes, json_primes, recomputed) = match matrix.m() {
        2 => match witness_primes(matrix, limit.unwrap_or(DEFAULT_PRIME_LIMIT)) {
            Ok(ps) => {
                let text: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                let values: Vec<Value> = ps.iter().map(|p| json!(p.get())).collect();
                (text, values, qr_matrix(&ps)?)
            }
            Err(e) if not_member(&e) => return non_member(io, &e),
            Err(e) => return Err(e.into()),
        },
        3 => match cubic_witness(matrix, limit.unwrap_or(DEFAULT_NORM_LIMIT)) {
            Ok(ps) => (elements(&ps), json_elements(&ps), cubic_matrix(&ps)?),
            Err(e) if not_member(&e) => return non_member(io, &e),
            Err(e) => return Err(e.into()),
        },
        _ => match quartic_witness(matrix, limit.unwrap_or(DEFAULT_NORM_LIMIT)) {
            Ok(ps) => (elements(&ps), json_elements(&ps), quartic_matrix(&ps)?),
            Err(e) if not_member(&e) => return non_member(io, &e),
            Err(e) => return Err(e.into()),
        },
    };
    if recomputed != *matrix {
        return Err(Failure::Usage(
            "internal error: witness does not reproduce the matrix".into(),
        ));
    }
    if io.json {
        emit_json(
            io,
            &json!({ "m": matrix.m(), "primes": json_primes, "verified": true }),
        )?;
    } else {
        writeln!(io.out, "primes: {}", primes.join(" "))?;
        writeln!(io.out, "VERIFIED")?;
    }
    Ok(EXIT_MEMBER)
}

fn elements<T: QuadInt>(ps: &[PrimaryPrime<T>]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn json_elements<T: QuadInt>(ps: &[PrimaryPrime<T>]) -> Vec<Value> {
    ps.iter()
        .map(|p| {
            let (a, b) = p.element().parts();
            json!({ "element": p.to_string(), "a": a, "b": b, "norm": p.norm() })
        })
        .collect()
}

fn non_member(io: &mut Io<'_>, e: &Error) -> Outcome {
    if io.json {
        emit_json(io, &json!({ "verdict": false, "message": e.to_string() }))?;
    } else {
        writeln!(io.out, "verdict: no")?;
    }
    Ok(EXIT_NON_MEMBER)
}

fn count(n: usize, kind: CountKind, classes: bool, io: &mut Io<'_>) -> Outcome {
    if !(2..=6).contains(&n) {
        return Err(Error::UnsupportedDimension { n, min: 2, max: 6 }.into());
    }
    if n == 6 && (kind == CountKind::Qr || classes) {
        writeln!(
            io.err,
            "warning: n = 6 is an exhaustive scan and may take minutes"
        )?;
    }
    let family = match kind {
        CountKind::Qr => Family::Qr,
        CountKind::Symmetric => Family::Symmetric,
        CountKind::Skew => Family::SkewSymmetric,
    };
    let value = io.pool.install(|| {
        if classes {
            enumerate::count_classes(n, family)
        } else {
            enumerate::count_family(n, family)
        }
    })?;
    if io.json {
        let kind = match kind {
            CountKind::Qr => "qr",
            CountKind::Symmetric => "symmetric",
            CountKind::Skew => "skew",
        };
        emit_json(
            io,
            &json!({ "kind": kind, "n": n, "classes": classes, "count": value }),
        )?;
    } else {
        writeln!(io.out, "{value}")?;
    }
    Ok(EXIT_MEMBER)
}

fn ratio_json(r: Ratio<u64>) -> Value {
    json!({ "numerator": r.numer(), "denominator": r.denom() })
}

fn signs_compact(m: &RootMatrix) -> String {
    let rows: Vec<String> = m
        .to_signs()
        .iter()
        .map(|r| {
            format!(
                "[{}]",
                r.iter().map(i8::to_string).collect::<Vec<_>>().join(",")
            )
        })
        .collect();
    format!("[{}]", rows.join(","))
}

fn freq(bound: Option<u64>, exact: bool, io: &mut Io<'_>) -> Outcome {
    let report: FrequencyReport = match (bound, exact) {
        (_, true) => exact_frequencies(),
        (Some(b), false) => io.pool.install(|| empirical_scan(b))?,
        (None, false) => {
            return Err(Failure::Usage(
                "one of --bound or --exact is required".into(),
            ))
        }
    };
    if io.json {
        let classes: Vec<Value> = report
            .classes
            .iter()
            .map(|c| {
                let mut v = json!({
                    "class_id": c.class_id,
                    "representative": c.representative.to_signs(),
                    "exact": ratio_json(c.exact),
                });
                if !exact {
                    v["count"] = json!(c.count);
                    v["empirical"] = ratio_json(c.empirical);
                    v["empirical_decimal"] = json!(decimal6(c.empirical));
                }
                v
            })
            .collect();
        let mut v =
            json!({ "mode": if exact { "exact" } else { "empirical" }, "classes": classes });
        if !exact {
            v["bound"] = json!(bound);
            v["total"] = json!(report.total);
        }
        emit_json(io, &v)?;
    } else if exact {
        writeln!(io.out, "class\texact\trepresentative")?;
        for c in &report.classes {
            writeln!(
                io.out,
                "{}\t{}\t{}",
                c.class_id,
                c.exact,
                signs_compact(&c.representative)
            )?;
        }
    } else {
        writeln!(io.out, "class\tcount\tempirical\texact\trepresentative")?;
        for c in &report.classes {
            writeln!(
                io.out,
                "{}\t{}\t{}\t{}\t{}",
                c.class_id,
                c.count,
                decimal6(c.empirical),
                c.exact,
                signs_compact(&c.representative)
            )?;
        }
        writeln!(io.out, "total\t{}", report.total)?;
    }
    Ok(EXIT_MEMBER)
}

fn parse_int(s: &str, what: &str) -> std::result::Result<i64, Failure> {
    s.trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("{what}: malformed integer {s:?}")))
}

/// Primary associate of a prime operand; units and composites pass through.
fn maybe_primary<T: QuadInt>(x: T) -> T {
    primary_generator(x).map(PrimaryPrime::element).unwrap_or(x)
}

fn symbol_token(m: u8, e: u8) -> &'static str {
    crate::matrix::Entry::Root(e).token(m)
}

fn symbol(kind: SymbolKind, num: &str, den: &str, primary: bool, io: &mut Io<'_>) -> Outcome {
    let (value, echo): (String, Option<(String, String)>) = match kind {
        SymbolKind::Legendre => {
            let a = parse_int(num, "numerator")?;
            let p = u64::try_from(parse_int(den, "denominator")?)
                .map_err(|_| Failure::Usage("denominator must be an odd prime".into()))?;
            (legendre(a, OddPrime::new(p)?).to_string(), None)
        }
        SymbolKind::Jacobi => {
            let a = parse_int(num, "numerator")?;
            let n = u64::try_from(parse_int(den, "denominator")?)
                .map_err(|_| Failure::Usage("denominator must be a positive odd integer".into()))?;
            (jacobi(a, n)?.to_string(), None)
        }
        SymbolKind::Cubic => {
            let (x, q) = higher_operands::<EisensteinInt>(num, den, primary)?;
            let v = residue_or_zero(cubic_symbol(x, q), 3)?;
            (v, primary.then(|| (x.to_string(), q.to_string())))
        }
        SymbolKind::Quartic => {
            let (x, q) = higher_operands::<GaussianInt>(num, den, primary)?;
            let v = residue_or_zero(quartic_symbol(x, q), 4)?;
            (v, primary.then(|| (x.to_string(), q.to_string())))
        }
    };
    if io.json {
        let mut v = json!({ "symbol": value });
        if let Some((x, q)) = &echo {
            v["num"] = json!(x);
            v["den"] = json!(q);
        }
        emit_json(io, &v)?;
    } else {
        if let Some((x, q)) = &echo {
            writeln!(io.out, "num: {x}")?;
            writeln!(io.out, "den: {q}")?;
        }
        writeln!(io.out, "{value}")?;
    }
    Ok(EXIT_MEMBER)
}

fn higher_operands<T: QuadInt + std::str::FromStr<Err = Error>>(
    num: &str,
    den: &str,
    primary: bool,
) -> std::result::Result<(T, PrimaryPrime<T>), Failure> {
    let x: T = num.parse()?;
    let q: T = den.parse()?;
    if primary {
        Ok((maybe_primary(x), primary_generator(q)?))
    } else {
        Ok((x, PrimaryPrime::new(q)?))
    }
}

fn residue_or_zero(r: crate::Result<u8>, m: u8) -> std::result::Result<String, Failure> {
    match r {
        Ok(e) => Ok(symbol_token(m, e).to_string()),
        Err(Error::NotCoprime) => Ok("0".to_string()),
        Err(e) => Err(e.into()),
    }
}
