//! Command-line front end: `hc`, `classify`, `check`, `groebner` and
//! `nonexist`.
//!
//! Coefficient tuples are always written in the order `a6,a5,a4,a3,a2,a1`.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 inconclusive result,
//! 3 internal error.

use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::field::{prime_power, FieldCtx};
use crate::groebner::{buchberger, with_field_equations, Budget};
use crate::hermite::{hermite_check, HermiteSpec};
use crate::mpoly::{MonomialOrder, PolyRing};
use crate::nonexistence::{certify, sweep, CertifyOptions};
use crate::ppsearch::{classify, is_pp_wan, NormalizedPoly, OrbitClass, SearchMode};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Environment variable giving the default for `--threads`.
pub const THREADS_ENV: &str = "OCTOPERM_THREADS";

#[derive(Parser, Debug)]
#[command(name = "octoperm", version, about = "Degree-8 permutation polynomials over odd finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the Hermite-criterion polynomial HC_d(q, m).
    Hc {
        #[arg(long, default_value_t = 8)]
        d: u32,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u32,
        /// Variables set to zero before expanding, e.g. `x1,x3,x5` (degree 8 only).
        #[arg(long, value_delimiter = ',')]
        zero: Vec<String>,
        /// Field modulus coefficients c0,c1,...,ck (monic, low degree first).
        #[arg(long, value_delimiter = ',')]
        modulus: Option<Vec<u32>>,
    },
    /// Classify normalized permutation octics over F_q up to scaling.
    Classify {
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value_t = Mode::Paper)]
        mode: Mode,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Also write the JSON result here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Test one normalized octic, given as a6,a5,a4,a3,a2,a1.
    Check {
        #[arg(long)]
        q: u64,
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long, value_delimiter = ',')]
        modulus: Option<Vec<u32>>,
    },
    /// Reduced Gröbner basis of the polynomials in a file, one per line.
    Groebner {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 6)]
        vars: usize,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Order::Grevlex)]
        order: Order,
        /// Append the field equations x_i^q - x_i.
        #[arg(long)]
        field_equations: bool,
        #[arg(long, default_value_t = 600)]
        budget_secs: u64,
        #[arg(long, value_delimiter = ',')]
        modulus: Option<Vec<u32>>,
    },
    /// Certify that no degree-8 permutation polynomial exists over F_q.
    Nonexist {
        #[arg(long, conflicts_with = "range", required_unless_present = "range")]
        q: Option<u32>,
        /// Inclusive range LO..HI.
        #[arg(long)]
        range: Option<String>,
        #[arg(long, default_value_t = 1800)]
        budget_secs: u64,
        #[arg(long)]
        threads: Option<usize>,
        /// Starting number of Hermite polynomials.
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Paper,
    Generic,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Order {
    Lex,
    Grlex,
    Grevlex,
}

enum Failure {
    Usage(String),
    Inconclusive(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconclusive(s) => Failure::Inconclusive(s),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Runs the CLI on `argv` (including the program name), writing results to
/// `out` and diagnostics to `err`.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = if code == EXIT_OK { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Inconclusive(msg)) => {
            let _ = writeln!(out, "INCONCLUSIVE(budget)");
            let _ = writeln!(err, "inconclusive: {msg}");
            EXIT_INCONCLUSIVE
        }
        Err(Failure::Internal(msg)) => {
            let _ = writeln!(err, "internal error: {msg}");
            EXIT_INTERNAL
        }
    }
}

fn default_threads() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|s| s.parse().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

fn make_field(q: u64, modulus: Option<&[u32]>) -> Result<Arc<FieldCtx>, Failure> {
    if q % 2 == 0 {
        return Err(Failure::Usage(format!("q = {q} is even")));
    }
    let (p, k) = prime_power(q).ok_or_else(|| Failure::Usage(format!("q = {q} is not a prime power")))?;
    Ok(Arc::new(FieldCtx::new(p, k, modulus)?))
}

fn octic_field(q: u64, modulus: Option<&[u32]>) -> Result<Arc<FieldCtx>, Failure> {
    if q <= 8 {
        return Err(Failure::Usage(format!("degree-8 workflows need q > 8, got {q}")));
    }
    make_field(q, modulus)
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Hc { d, q, m, zero, modulus } => {
            let field = if d == 8 { octic_field(q, modulus.as_deref())? } else { make_field(q, modulus.as_deref())? };
            let spec = HermiteSpec::with_field(d, field)?;
            let p = if zero.is_empty() {
                spec.hc(m)?
            } else {
                let vars = zero.iter().map(|s| parse_var(s, d as usize - 2)).collect::<Result<Vec<_>, _>>()?;
                spec.hc_restricted(m, &vars)?
            };
            writeln!(out, "{p}")?;
            Ok(EXIT_OK)
        }
        Command::Classify { q, mode, threads, format, out: path } => {
            let q = u32::try_from(octic_field(q, None)?.order()).expect("fits");
            let mode = match mode {
                Mode::Paper => SearchMode::Paper,
                Mode::Generic => SearchMode::Generic,
            };
            let classes = classify(q, mode, threads.unwrap_or_else(default_threads))?;
            let doc = classes_json(q, &classes);
            match format {
                Format::Json => writeln!(out, "{}", serde_json::to_string(&doc).expect("json"))?,
                Format::Csv => {
                    writeln!(out, "a6,a5,a4,a3,a2,a1,orbit_size")?;
                    for c in &classes {
                        let row: Vec<String> = c.rep.print_order().iter().map(|a| a.value().to_string()).collect();
                        writeln!(out, "{},{}", row.join(","), c.size())?;
                    }
                }
                Format::Text => {
                    writeln!(out, "q = {q}: {} classes", classes.len())?;
                    for c in &classes {
                        writeln!(out, "{} orbit_size={}", c.rep, c.size())?;
                    }
                }
            }
            if let Some(path) = path {
                write_json(&path, &doc)?;
            }
            Ok(EXIT_OK)
        }
        Command::Check { q, coeffs, modulus } => {
            let field = octic_field(q, modulus.as_deref())?;
            let f = NormalizedPoly::parse(field, &coeffs)?;
            let doc = CheckReport { is_pp: is_pp_wan(&f), hermite_verified: hermite_check(&f) };
            writeln!(out, "{}", serde_json::to_string(&doc).expect("json"))?;
            Ok(EXIT_OK)
        }
        Command::Groebner { q, vars, input, order, field_equations, budget_secs, modulus } => {
            let field = make_field(q, modulus.as_deref())?;
            let ring = PolyRing::new(field, vars)?;
            let text = std::fs::read_to_string(&input)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", input.display())))?;
            let mut gens = Vec::new();
            for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
                gens.push(ring.parse(line)?);
            }
            if gens.is_empty() {
                return Err(Failure::Usage("no polynomials in input".into()));
            }
            if field_equations {
                gens = with_field_equations(&gens)?;
            }
            let order = match order {
                Order::Lex => MonomialOrder::Lex,
                Order::Grlex => MonomialOrder::Grlex,
                Order::Grevlex => MonomialOrder::Grevlex,
            };
            let gb = buchberger(&gens, order, Budget::seconds(budget_secs))?;
            for g in gb.gens() {
                writeln!(out, "{g}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Nonexist { q, range, budget_secs, threads, k, out: path } => {
            let opts = CertifyOptions { budget: Duration::from_secs(budget_secs), k, ..Default::default() };
            let certs = match (q, range) {
                (Some(q), None) => vec![certify(q, opts)?],
                (None, Some(r)) => {
                    let (lo, hi) = parse_range(&r)?;
                    sweep(lo, hi, opts, threads.unwrap_or_else(default_threads))?
                }
                _ => return Err(Failure::Usage("give exactly one of --q and --range".into())),
            };
            for c in &certs {
                writeln!(out, "{}", c.to_json())?;
            }
            if let Some(path) = path {
                write_json(&path, &certs)?;
            }
            Ok(if certs.iter().all(|c| c.is_conclusive()) { EXIT_OK } else { EXIT_INCONCLUSIVE })
        }
    }
}

fn parse_var(s: &str, nvars: usize) -> Result<usize, Failure> {
    s.trim()
        .strip_prefix('x')
        .and_then(|d| d.parse::<usize>().ok())
        .filter(|&i| (1..=nvars).contains(&i))
        .map(|i| i - 1)
        .ok_or_else(|| Failure::Usage(format!("bad variable {s:?}")))
}

fn parse_range(s: &str) -> Result<(u32, u32), Failure> {
    let bad = || Failure::Usage(format!("bad range {s:?}, expected LO..HI"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    Ok((lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?))
}

fn write_json<T: Serialize + ?Sized>(path: &PathBuf, value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("json");
    std::fs::write(path, text + "\n")?;
    Ok(())
}

#[derive(Serialize)]
struct CheckReport {
    is_pp: bool,
    hermite_verified: bool,
}

/// Classification result as written by `classify --format json`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct ClassesDoc {
    pub q: u32,
    pub count: usize,
    pub classes: Vec<ClassEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct ClassEntry {
    pub rep: RepEntry,
    pub orbit_size: usize,
}

/// Coefficients as integer element encodings, so prime-field entries are the
/// residues themselves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct RepEntry {
    pub a6: u32,
    pub a5: u32,
    pub a4: u32,
    pub a3: u32,
    pub a2: u32,
    pub a1: u32,
}

pub fn classes_json(q: u32, classes: &[OrbitClass]) -> ClassesDoc {
    let classes = classes
        .iter()
        .map(|c| {
            let [a6, a5, a4, a3, a2, a1] = c.rep.print_order().map(|a| a.value());
            ClassEntry { rep: RepEntry { a6, a5, a4, a3, a2, a1 }, orbit_size: c.size() }
        })
        .collect::<Vec<_>>();
    ClassesDoc { q, count: classes.len(), classes }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("octoperm").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn hc_command() {
        assert_eq!(run_args(&["hc", "--q", "13", "--m", "2"]), (0, "x6^2 + 2*x4\n".into(), String::new()));
        let (code, out, _) = run_args(&["hc", "--q", "71", "--m", "18", "--zero", "x1,x2,x3,x5,x6"]);
        assert_eq!((code, out.as_str()), (0, "18*x4\n"));
    }

    #[test]
    fn check_command() {
        let (code, out, _) = run_args(&["check", "--q", "29", "--coeffs", "0,0,0,0,0,4"]);
        assert_eq!(code, 0);
        assert_eq!(out, "{\"is_pp\":true,\"hermite_verified\":true}\n");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_args(&["hc", "--q", "16", "--m", "2"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["hc", "--q", "7", "--m", "2"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["hc", "--d", "9", "--q", "27", "--m", "2"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["check", "--q", "29", "--coeffs", "1,2"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["nonexist", "--q", "31"]).0, EXIT_USAGE);
    }

    #[test]
    fn ranges() {
        assert!(matches!(parse_range("32..54"), Ok((32, 54))));
        assert!(matches!(parse_range("32..=54"), Ok((32, 54))));
        assert!(parse_range("32-54").is_err());
    }
}
