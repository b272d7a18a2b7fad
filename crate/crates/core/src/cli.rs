//! Batch front end. Tables go to the given writer, machine formats only to
//! `-o` files.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclotomic::{enumerate_abelian_fields, AbelianFieldSpec, FieldSpecFile};
use crate::error::Error;
use crate::oracle::{dump, OracleDump};
use crate::reconstruct::{judge, reconstruct_global, ReconstructionReport, Verdict};
use crate::verify::{discriminant, frobenius_check, min_poly_with_cap, SplittingMethod, DEFAULT_DEGREE_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    Mismatch = 1,
    InvalidInput = 2,
}

#[derive(Debug, Parser)]
#[command(name = "abelfield", version, about = "Rebuild abelian number fields from per-prime decomposition data")]
pub struct Cli {
    /// Worker threads for corpus runs (default: all cores)
    #[arg(long, global = true, value_name = "W")]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Inspect a field specification
    #[command(subcommand)]
    Field(FieldCommand),
    /// Produce decomposition data
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Rebuild a field from an oracle dump
    Reconstruct {
        dump: PathBuf,
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Corpus checks
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Debug, Subcommand)]
pub enum FieldCommand {
    /// Conductor, degree, discriminant and character conductors
    Info {
        spec: PathBuf,
        /// Largest degree for which a minimal polynomial is printed
        #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
        degree_cap: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Dump the local data of a field at every prime up to a bound
    Extract {
        spec: PathBuf,
        #[arg(long, value_name = "B")]
        primes: u64,
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct CorpusArgs {
    #[arg(long, value_name = "N")]
    pub conductor_max: u64,
    #[arg(long, value_name = "B")]
    pub primes: u64,
    #[arg(short, long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Dump, reload and rebuild every field up to a conductor bound
    Roundtrip {
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Change one residue degree per dump before rebuilding
        #[arg(long)]
        inject_corruption: bool,
    },
    /// Compare residue degrees against factorizations of minimal polynomials
    Frobenius {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long, default_value_t = 6)]
        degree_cap: u64,
    },
}

#[derive(Debug)]
struct Failure {
    exit: Exit,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure { exit: Exit::InvalidInput, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::invalid(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::invalid(e.to_string())
    }
}

type CmdResult = Result<Exit, Failure>;

/// Parses `args` (program name first), runs the command and returns the
/// exit status. Errors go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> Exit
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { Exit::InvalidInput } else { Exit::Success };
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.exit
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cli.jobs {
        if w == 0 {
            return Err(Failure::invalid("--jobs must be positive"));
        }
        builder = builder.num_threads(w);
    }
    let pool = builder.build().map_err(|e| Failure::invalid(e.to_string()))?;
    // buffered so the worker pool never touches the caller's handle
    let mut buf: Vec<u8> = Vec::new();
    let result = pool.install(|| dispatch(cli, &mut buf));
    out.write_all(&buf)?;
    result
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    match &cli.command {
        Command::Field(FieldCommand::Info { spec, degree_cap }) => field_info(spec, *degree_cap, out),
        Command::Oracle(OracleCommand::Extract { spec, primes, output }) => {
            oracle_extract(spec, *primes, output.as_deref(), out)
        }
        Command::Reconstruct { dump, output } => reconstruct(dump, output.as_deref(), out),
        Command::Verify(VerifyCommand::Roundtrip { corpus, inject_corruption }) => {
            verify_roundtrip(corpus, *inject_corruption, out)
        }
        Command::Verify(VerifyCommand::Frobenius { corpus, degree_cap }) => verify_frobenius(corpus, *degree_cap, out),
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn check_output(path: Option<&Path>) -> Result<(), Failure> {
    if let Some(parent) = path.and_then(Path::parent) {
        if !parent.as_os_str().is_empty() && !parent.is_dir() {
            return Err(Failure::invalid(format!("{}: no such directory", parent.display())));
        }
    }
    Ok(())
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    if let Some(path) = path {
        std::fs::write(path, format!("{text}\n")).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn check_primes(bound: u64) -> Result<(), Failure> {
    if bound < 2 {
        return Err(Failure::invalid("--primes must be at least 2"));
    }
    Ok(())
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

fn field_info(path: &Path, degree_cap: u64, out: &mut dyn Write) -> CmdResult {
    let spec = AbelianFieldSpec::from_json(&read_input(path)?)?.normalize()?;
    let characters = spec.character_group()?;
    writeln!(out, "field         {spec}")?;
    writeln!(out, "conductor     {}", spec.modulus())?;
    writeln!(out, "degree        {}", spec.degree())?;
    writeln!(out, "discriminant  {}", discriminant(&spec)?)?;
    writeln!(out, "characters    {}", join(&characters.conductors()))?;
    if spec.degree() <= degree_cap {
        writeln!(out, "min poly      {}", min_poly_with_cap(&spec, degree_cap)?.poly)?;
    }
    Ok(Exit::Success)
}

fn oracle_extract(path: &Path, primes: u64, output: Option<&Path>, out: &mut dyn Write) -> CmdResult {
    check_primes(primes)?;
    check_output(output)?;
    let spec = AbelianFieldSpec::from_json(&read_input(path)?)?;
    let d = dump(&spec, primes)?;
    writeln!(out, "{:>8} {:>4} {:>4} {:>4}  level", "p", "e", "f", "d")?;
    for datum in &d.data {
        let l = datum.underline_d.level;
        writeln!(
            out,
            "{:>8} {:>4} {:>4} {:>4}  ({}, {}, {})",
            datum.p, datum.e, datum.f, datum.d, l.p, l.unramified_degree, l.wild_exponent
        )?;
    }
    writeln!(out, "{} primes, {} ramified", d.data.len(), d.ramified().count())?;
    write_output(output, &d.to_json())?;
    Ok(Exit::Success)
}

fn print_log(report: &ReconstructionReport, out: &mut dyn Write) -> std::io::Result<()> {
    for e in report.failures() {
        let p = e.p.map_or("-".to_string(), |p| p.to_string());
        let check = serde_json::to_string(&e.check).unwrap_or_default();
        writeln!(out, "failed        {check} at p={p}: expected {}, observed {}", e.expected, e.observed)?;
    }
    Ok(())
}

fn reconstruct(path: &Path, output: Option<&Path>, out: &mut dyn Write) -> CmdResult {
    check_output(output)?;
    let d = OracleDump::from_json(&read_input(path)?)?;
    let report = match reconstruct_global(&d) {
        Ok(r) => r,
        Err(e @ (Error::Schema(_) | Error::InvalidInput(_))) => return Err(e.into()),
        Err(e) => {
            return Err(Failure { exit: Exit::Mismatch, message: format!("inconsistent oracle data: {e}") });
        }
    };
    writeln!(out, "n_G           {}", report.n_g)?;
    writeln!(out, "subgroup      <{}>", join(&report.subgroup_generators()))?;
    writeln!(out, "field         {}", report.field)?;
    writeln!(out, "degree        {}", report.degree())?;
    writeln!(out, "certified     {}", report.certified)?;
    print_log(&report, out)?;
    write_output(output, &report.to_json())?;
    Ok(if report.certified { Exit::Success } else { Exit::Mismatch })
}

fn corpus(args: &CorpusArgs) -> Result<Vec<AbelianFieldSpec>, Failure> {
    check_primes(args.primes)?;
    check_output(args.output.as_deref())?;
    if args.conductor_max == 0 {
        return Err(Failure::invalid("--conductor-max must be positive"));
    }
    Ok(enumerate_abelian_fields(args.conductor_max)?)
}

#[derive(Serialize)]
struct RoundtripRow {
    field: FieldSpecFile,
    conductor: u64,
    degree: u64,
    n_g: Option<u64>,
    certified: bool,
    verdict: Verdict,
}

/// Raises `f` at the first packet while keeping `d = e f`.
fn corrupt(d: &mut OracleDump) {
    if let Some(datum) = d.data.first_mut() {
        datum.f += 1;
        datum.d = datum.e * datum.f;
    }
}

fn roundtrip_row(spec: &AbelianFieldSpec, bound: u64, inject: bool) -> crate::Result<RoundtripRow> {
    let mut d = OracleDump::from_bytes(&dump(spec, bound)?.to_bytes())?;
    if inject {
        corrupt(&mut d);
    }
    let (verdict, report) = judge(reconstruct_global(&d), spec)?;
    Ok(RoundtripRow {
        field: spec.to_file(),
        conductor: spec.modulus(),
        degree: spec.degree(),
        n_g: report.as_ref().map(|r| r.n_g),
        certified: report.as_ref().is_some_and(|r| r.certified),
        verdict,
    })
}

fn verify_roundtrip(args: &CorpusArgs, inject: bool, out: &mut dyn Write) -> CmdResult {
    let fields = corpus(args)?;
    let rows = fields
        .par_iter()
        .map(|k| roundtrip_row(k, args.primes, inject))
        .collect::<crate::Result<Vec<_>>>()?;
    writeln!(out, "{:>9} {:>6} {:>6}  {:<12} {:<24}", "conductor", "degree", "n_G", "verdict", "H")?;
    for r in &rows {
        let n_g = r.n_g.map_or("-".to_string(), |n| n.to_string());
        let h: Vec<u64> = r.field.subgroup_generators.iter().map(|&x| x as u64).collect();
        writeln!(out, "{:>9} {:>6} {:>6}  {:<12} <{}>", r.conductor, r.degree, n_g, r.verdict, join(&h))?;
    }
    let matched = rows.iter().filter(|r| r.verdict == Verdict::Match).count();
    writeln!(out, "{matched}/{} fields match at B = {}", rows.len(), args.primes)?;
    if let Some(path) = &args.output {
        let text = serde_json::to_string_pretty(&rows).expect("plain data serializes");
        write_output(Some(path), &text)?;
    }
    Ok(if matched == rows.len() { Exit::Success } else { Exit::Mismatch })
}

#[derive(Serialize)]
struct FrobeniusRow {
    field: FieldSpecFile,
    degree: u64,
    primes_checked: usize,
    fixed_space: Vec<u64>,
    failures: Vec<u64>,
}

fn frobenius_row(spec: &AbelianFieldSpec, bound: u64) -> crate::Result<FrobeniusRow> {
    let mut row = FrobeniusRow {
        field: spec.to_file(),
        degree: spec.degree(),
        primes_checked: 0,
        fixed_space: Vec::new(),
        failures: Vec::new(),
    };
    for p in crate::arith::primes_up_to(bound) {
        if spec.modulus().is_multiple_of(p) {
            continue;
        }
        let c = frobenius_check(spec, p)?;
        row.primes_checked += 1;
        if c.method == SplittingMethod::FixedSpace {
            row.fixed_space.push(p);
        }
        if !c.ok() {
            row.failures.push(p);
        }
    }
    Ok(row)
}

fn verify_frobenius(args: &CorpusArgs, degree_cap: u64, out: &mut dyn Write) -> CmdResult {
    let fields: Vec<AbelianFieldSpec> = corpus(args)?.into_iter().filter(|k| k.degree() <= degree_cap).collect();
    let rows = fields
        .par_iter()
        .map(|k| frobenius_row(k, args.primes))
        .collect::<crate::Result<Vec<_>>>()?;
    writeln!(out, "{:>9} {:>6} {:>7}  {:<16} {:<10} H", "conductor", "degree", "primes", "fixed-space at", "status")?;
    for r in &rows {
        let h: Vec<u64> = r.field.subgroup_generators.iter().map(|&x| x as u64).collect();
        let status = if r.failures.is_empty() { "ok".to_string() } else { format!("FAIL {}", join(&r.failures)) };
        let fixed = if r.fixed_space.is_empty() { "-".to_string() } else { join(&r.fixed_space) };
        writeln!(
            out,
            "{:>9} {:>6} {:>7}  {:<16} {:<10} <{}>",
            r.field.modulus, r.degree, r.primes_checked, fixed, status, join(&h)
        )?;
    }
    let good = rows.iter().filter(|r| r.failures.is_empty()).count();
    writeln!(out, "{good}/{} fields agree at every unramified p <= {}", rows.len(), args.primes)?;
    if let Some(path) = &args.output {
        let text = serde_json::to_string_pretty(&rows).expect("plain data serializes");
        write_output(Some(path), &text)?;
    }
    Ok(if good == rows.len() { Exit::Success } else { Exit::Mismatch })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (Exit, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("abelfield").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn spec_file(dir: &Path, name: &str, n: u64, gens: &[i64]) -> String {
        let path = dir.join(name);
        std::fs::write(&path, AbelianFieldSpec::new(n, gens).unwrap().to_json()).unwrap();
        path.to_str().unwrap().to_string()
    }

    #[test]
    fn field_info_real_quadratic() {
        let dir = tempfile::tempdir().unwrap();
        // Q(sqrt 3), given at a non-minimal modulus
        let f = spec_file(dir.path(), "k.json", 24, &[11, 13, 23]);
        let (code, out, _) = run_capture(&["field", "info", &f]);
        assert_eq!(code, Exit::Success);
        assert!(out.contains("conductor     12\n"), "{out}");
        assert!(out.contains("degree        2\n"));
        assert!(out.contains("discriminant  12\n"));
        assert!(out.contains("characters    1 12\n"));
        assert!(out.contains("min poly      x^2 - 3\n"));
    }

    #[test]
    fn field_info_rationals_and_bad_input() {
        let dir = tempfile::tempdir().unwrap();
        let q = spec_file(dir.path(), "q.json", 1, &[]);
        let (code, out, _) = run_capture(&["field", "info", &q]);
        assert_eq!(code, Exit::Success);
        assert!(out.contains("conductor     1\n"));

        let bad = dir.path().join("bad.json");
        std::fs::write(&bad, "{\"modulus\": 12}").unwrap();
        let (code, _, err) = run_capture(&["field", "info", bad.to_str().unwrap()]);
        assert_eq!(code, Exit::InvalidInput);
        assert!(err.starts_with("error:"));

        let (code, _, _) = run_capture(&["field", "info", "/nonexistent/k.json"]);
        assert_eq!(code, Exit::InvalidInput);
        let (code, _, _) = run_capture(&["field", "frobnicate"]);
        assert_eq!(code, Exit::InvalidInput);
        let (code, _, _) = run_capture(&["--help"]);
        assert_eq!(code, Exit::Success);
    }

    #[test]
    fn extract_then_reconstruct() {
        let dir = tempfile::tempdir().unwrap();
        let f = spec_file(dir.path(), "k.json", 12, &[11]);
        let d = dir.path().join("dump.json");
        let r = dir.path().join("report.json");
        let (code, out, _) = run_capture(&["oracle", "extract", &f, "--primes", "50", "-o", d.to_str().unwrap()]);
        assert_eq!(code, Exit::Success);
        assert!(out.contains("15 primes, 2 ramified"), "{out}");
        let text = std::fs::read_to_string(&d).unwrap();
        assert!(!text.contains("modulus"));

        let (code, out, _) = run_capture(&["reconstruct", d.to_str().unwrap(), "-o", r.to_str().unwrap()]);
        assert_eq!(code, Exit::Success);
        assert!(out.contains("n_G           12\n"), "{out}");
        assert!(out.contains("certified     true\n"));
        let report = ReconstructionReport::from_json(&std::fs::read_to_string(&r).unwrap()).unwrap();
        assert_eq!(report.field, AbelianFieldSpec::new(12, &[11]).unwrap());
    }

    #[test]
    fn bounds_are_validated_before_work() {
        let (code, _, err) = run_capture(&["verify", "roundtrip", "--conductor-max", "0", "--primes", "50"]);
        assert_eq!(code, Exit::InvalidInput);
        assert!(err.contains("--conductor-max"));
        let (code, _, _) = run_capture(&["verify", "roundtrip", "--conductor-max", "5", "--primes", "1"]);
        assert_eq!(code, Exit::InvalidInput);
        let (code, _, _) = run_capture(&["--jobs", "0", "verify", "roundtrip", "--conductor-max", "5", "--primes", "50"]);
        assert_eq!(code, Exit::InvalidInput);
        let (code, _, _) = run_capture(&[
            "verify", "roundtrip", "--conductor-max", "5", "--primes", "50", "-o", "/nonexistent/dir/x.json",
        ]);
        assert_eq!(code, Exit::InvalidInput);
    }

    #[test]
    fn roundtrip_and_negative_control() {
        let (code, out, _) = run_capture(&["verify", "roundtrip", "--conductor-max", "1", "--primes", "10"]);
        assert_eq!(code, Exit::Success);
        assert!(out.contains("1/1 fields match"));

        let (code, out, _) = run_capture(&["verify", "roundtrip", "--conductor-max", "12", "--primes", "60"]);
        assert_eq!(code, Exit::Success, "{out}");

        let (code, out, _) =
            run_capture(&["verify", "roundtrip", "--conductor-max", "12", "--primes", "60", "--inject-corruption"]);
        assert_eq!(code, Exit::Mismatch);
        assert!(out.contains("0/"), "{out}");
    }

    #[test]
    fn frobenius_command() {
        let (code, out, _) = run_capture(&["verify", "frobenius", "--conductor-max", "20", "--primes", "60"]);
        assert_eq!(code, Exit::Success, "{out}");
        assert!(!out.contains("FAIL"));
    }

    #[test]
    fn output_is_deterministic_across_widths() {
        let a = run_capture(&["--jobs", "1", "verify", "roundtrip", "--conductor-max", "16", "--primes", "60"]);
        let b = run_capture(&["--jobs", "4", "verify", "roundtrip", "--conductor-max", "16", "--primes", "60"]);
        assert_eq!(a, b);
    }
}
