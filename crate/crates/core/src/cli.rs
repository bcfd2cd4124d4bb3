//! Command-line front end.
//!
//! Exit codes: 0 success, 2 usage error, 3 domain error, 4 violation found
//! (scan verbs only).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::deformation::{c_sequence, harmonic_orthogonality_report, infinitesimal_check, DeformationInput};
use crate::frieze::{build_from_first_row, validate, Frieze};
use crate::geometry::{
    frieze_to_polygon, polygon_to_frieze, problem2_experiment, random_polygon, sample_equilateral_convex, Problem2Config,
    ProjectivePolygon,
};
use crate::io::{frieze_from_json, frieze_to_csv, frieze_to_json, sequence_to_csv, verdict_to_json, PolygonJson, WireScalar};
use crate::scalar::{parse_rational_list, Rational, Scalar};
use crate::search::{cuntz_counterexample, scan_cc, scan_random, SearchError, ScanReport};
use crate::sign::{problem1_check, row_difference, sign_changes, SignError};
use crate::triangulation::{
    enumerate_triangulations_capped, random_triangulation, triangulation_to_frieze, Triangulation, TriangulationJson,
    DEFAULT_ENUMERATION_CAP,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_VIOLATION: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "frieze", version, about = "Frieze patterns: construction, validation and sign-change experiments")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Human-readable output (offset layout for friezes, indented JSON otherwise).
    #[arg(long, global = true)]
    pretty: bool,
    /// Worker threads for parallel verbs.
    #[arg(long, global = true, env = "FRIEZE_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a frieze from its first row.
    Build {
        /// Comma-separated rationals, e.g. 2,2,4,2,3,18/41,41,30/41.
        #[arg(long, value_name = "LIST")]
        first_row: String,
    },
    /// Conway–Coxeter frieze of a triangulation.
    FromTriangulation(TriangulationArgs),
    /// Check borders, diamonds, positivity and glide symmetry.
    Validate(FriezeArg),
    /// Row difference of two friezes.
    Diff(PairArgs),
    /// Sign-change counts of row differences.
    TheoremCheck(PairArgs),
    /// First-order deformation of the constant frieze.
    Deform {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: usize,
        /// Comma-separated q values, or seed:S for Gaussian q.
        #[arg(long)]
        q: String,
    },
    /// Pair scans over friezes.
    #[command(subcommand)]
    Scan(ScanCommand),
    /// Rebuild and check the width-5 counterexample pair.
    Cuntz,
    /// Projective and equilateral polygons.
    #[command(subcommand)]
    Polygon(PolygonCommand),
    /// List all triangulations of an n-gon with their first rows.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Refuse n above this value.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: usize,
    },
}

#[derive(Args, Debug)]
struct TriangulationArgs {
    #[arg(long)]
    n: Option<usize>,
    /// Diagonals as p-q pairs, e.g. 1-6,3-5,1-5,2-5.
    #[arg(long, value_name = "LIST", conflicts_with_all = ["input", "random"])]
    diagonals: Option<String>,
    /// Triangulation JSON file.
    #[arg(long, value_name = "FILE", conflicts_with = "random")]
    input: Option<PathBuf>,
    /// Uniformly random triangulation with this seed (needs --n).
    #[arg(long, value_name = "SEED")]
    random: Option<u64>,
}

#[derive(Args, Debug)]
struct FriezeArg {
    /// Frieze JSON file.
    #[arg(long, value_name = "FILE", conflicts_with = "first_row")]
    input: Option<PathBuf>,
    #[arg(long, value_name = "LIST")]
    first_row: Option<String>,
}

#[derive(Args, Debug)]
struct PairArgs {
    /// First frieze: comma list of first-row values or a frieze JSON file.
    #[arg(long)]
    a: String,
    /// Second frieze, same forms as --a.
    #[arg(long)]
    b: String,
    /// Row numbers; defaults to 1..=width/2 (1 for diff).
    #[arg(long, value_name = "LIST")]
    k: Option<String>,
}

#[derive(Subcommand, Debug)]
enum ScanCommand {
    /// Every pair of Conway–Coxeter friezes of a width.
    Cc {
        #[arg(long)]
        width: usize,
        #[arg(long, default_value = "1,2")]
        k: String,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Random pairs of real friezes of odd period.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1,2")]
        k: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum PolygonCommand {
    /// Projective polygon of a frieze.
    Project(FriezeArg),
    /// Frieze of a projective polygon given as JSON with angles and radii.
    ToFrieze {
        #[arg(long, value_name = "FILE")]
        input: PathBuf,
    },
    /// Random projective polygon (odd n) and its frieze.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random equilateral convex polygon.
    Equilateral {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Diagonal-length sign-change statistics over random equilateral pairs.
    Experiment {
        #[arg(long, default_value = "5,6,7,8,9,10,11,12")]
        n: String,
        #[arg(long, default_value = "1,2,3")]
        k: String,
        #[arg(long, default_value_t = 100)]
        pairs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl Failure {
    fn domain(e: impl std::fmt::Display) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<SignError> for Failure {
    fn from(e: SignError) -> Self {
        match e {
            SignError::PeriodMismatch(..) | SignError::RowOutOfRange { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

/// Result of a verb: the rendered output and the exit code to use after
/// writing it.
struct Output {
    text: String,
    code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: EXIT_OK }
    }
}

struct Ctx {
    format: Format,
    pretty: bool,
}

impl Ctx {
    fn json<S: Serialize>(&self, v: &S) -> String {
        let s = if self.pretty {
            serde_json::to_string_pretty(v)
        } else {
            serde_json::to_string(v)
        };
        s.expect("report types serialize") + "\n"
    }

    fn frieze<T: WireScalar>(&self, f: &Frieze<T>, extra: Option<(&str, Value)>) -> String {
        match (self.format, self.pretty) {
            (Format::Csv, _) => frieze_to_csv(f),
            (Format::Json, true) => f.to_string(),
            (Format::Json, false) => {
                let mut v = frieze_to_json(f, true);
                if let Some((key, value)) = extra {
                    v[key] = value;
                }
                self.json(&v)
            }
        }
    }
}

/// Parses `argv` (including the program name), runs the verb and writes the
/// output to `out` or the `--out` file. Diagnostics go to `err`.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let ctx = Ctx {
        format: cli.format,
        pretty: cli.pretty,
    };
    let result = match cli.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| dispatch(&ctx, &cli.command)),
            Err(e) => Err(Failure::Usage(format!("cannot start {t} threads: {e}"))),
        },
        None => dispatch(&ctx, &cli.command),
    };
    match result {
        Ok(output) => {
            let written = match &cli.out {
                Some(path) => fs::write(path, &output.text).map_err(|e| format!("{}: {e}", path.display())),
                None => out.write_all(output.text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => output.code,
                Err(e) => {
                    let _ = writeln!(err, "error: cannot write output: {e}");
                    EXIT_DOMAIN
                }
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_DOMAIN
        }
    }
}

fn dispatch(ctx: &Ctx, command: &Command) -> Result<Output, Failure> {
    match command {
        Command::Build { first_row } => {
            let a = parse_list(first_row)?;
            let f = build_from_first_row(&a).map_err(Failure::domain)?;
            Ok(Output::ok(ctx.frieze(&f, None)))
        }
        Command::FromTriangulation(args) => from_triangulation(ctx, args),
        Command::Validate(arg) => validate_verb(ctx, arg),
        Command::Diff(args) => diff(ctx, args),
        Command::TheoremCheck(args) => theorem_check(ctx, args),
        Command::Deform { n, k, q } => deform(ctx, *n, *k, q),
        Command::Scan(scan) => scan_verb(ctx, scan),
        Command::Cuntz => cuntz(ctx),
        Command::Polygon(cmd) => polygon(ctx, cmd),
        Command::Enumerate { n, cap } => enumerate(ctx, *n, *cap),
    }
}

fn parse_list(list: &str) -> Result<Vec<Rational>, Failure> {
    parse_rational_list(list).map_err(|e| Failure::Usage(e.to_string()))
}

fn parse_usizes(list: &str) -> Result<Vec<usize>, Failure> {
    list.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse().map_err(|_| Failure::Usage(format!("not a nonnegative integer: {s:?}"))))
        .collect()
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn is_exact(v: &Value) -> bool {
    v.get("exact").and_then(Value::as_bool).unwrap_or(true)
}

enum AnyFrieze {
    Exact(Frieze<Rational>),
    Float(Frieze<f64>),
}

impl AnyFrieze {
    fn to_float(&self) -> Frieze<f64> {
        match self {
            AnyFrieze::Exact(f) => f.to_float(),
            AnyFrieze::Float(f) => f.clone(),
        }
    }

    fn width(&self) -> usize {
        match self {
            AnyFrieze::Exact(f) => f.width(),
            AnyFrieze::Float(f) => f.width(),
        }
    }
}

fn load_frieze_value(v: &Value) -> Result<AnyFrieze, Failure> {
    if is_exact(v) {
        frieze_from_json(v).map(AnyFrieze::Exact).map_err(Failure::domain)
    } else {
        frieze_from_json(v).map(AnyFrieze::Float).map_err(Failure::domain)
    }
}

/// A comma list of first-row values, or a path to a frieze JSON file.
fn load_frieze_text(arg: &str) -> Result<AnyFrieze, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        return load_frieze_value(&read_json(path)?);
    }
    let a = parse_list(arg)?;
    build_from_first_row(&a).map(AnyFrieze::Exact).map_err(Failure::domain)
}

fn load_frieze_arg(arg: &FriezeArg) -> Result<AnyFrieze, Failure> {
    match (&arg.input, &arg.first_row) {
        (Some(path), _) => load_frieze_value(&read_json(path)?),
        (None, Some(list)) => load_frieze_text(list),
        (None, None) => Err(Failure::Usage("one of --input or --first-row is required".into())),
    }
}

fn parse_diagonals(list: &str) -> Result<Vec<(usize, usize)>, Failure> {
    list.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            let (p, q) = s
                .split_once('-')
                .ok_or_else(|| Failure::Usage(format!("diagonal {s:?} is not of the form p-q")))?;
            let p = p.trim().parse().map_err(|_| Failure::Usage(format!("bad vertex in {s:?}")))?;
            let q = q.trim().parse().map_err(|_| Failure::Usage(format!("bad vertex in {s:?}")))?;
            Ok((p, q))
        })
        .collect()
}

fn from_triangulation(ctx: &Ctx, args: &TriangulationArgs) -> Result<Output, Failure> {
    let t = if let Some(path) = &args.input {
        let j: TriangulationJson =
            serde_json::from_value(read_json(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        if args.n.is_some_and(|n| n != j.n) {
            return Err(Failure::Usage("--n disagrees with the triangulation file".into()));
        }
        Triangulation::try_from(&j).map_err(Failure::domain)?
    } else {
        let n = args.n.ok_or_else(|| Failure::Usage("--n is required".into()))?;
        match (&args.diagonals, args.random) {
            (Some(list), _) => Triangulation::new(n, parse_diagonals(list)?).map_err(Failure::domain)?,
            (None, Some(seed)) => random_triangulation(n, seed).map_err(Failure::domain)?,
            (None, None) if n == 3 => Triangulation::new(3, []).map_err(Failure::domain)?,
            (None, None) => return Err(Failure::Usage("one of --diagonals, --input or --random is required".into())),
        }
    };
    let f = triangulation_to_frieze(&t).map_err(Failure::domain)?;
    let tj = serde_json::to_value(TriangulationJson::from(&t)).expect("plain data");
    Ok(Output::ok(ctx.frieze(&f, Some(("triangulation", tj)))))
}

fn validate_verb(ctx: &Ctx, arg: &FriezeArg) -> Result<Output, Failure> {
    let report = match load_frieze_arg(arg)? {
        AnyFrieze::Exact(f) => validate(&f),
        AnyFrieze::Float(f) => validate(&f),
    };
    let code = if report.passed { EXIT_OK } else { EXIT_DOMAIN };
    Ok(Output {
        text: ctx.json(&report),
        code,
    })
}

/// Loads both friezes, keeping exact arithmetic when both are exact.
fn load_pair(args: &PairArgs) -> Result<(AnyFrieze, AnyFrieze), Failure> {
    let f = load_frieze_text(&args.a)?;
    let g = load_frieze_text(&args.b)?;
    Ok(match (f, g) {
        (AnyFrieze::Exact(f), AnyFrieze::Exact(g)) => (AnyFrieze::Exact(f), AnyFrieze::Exact(g)),
        (f, g) => (AnyFrieze::Float(f.to_float()), AnyFrieze::Float(g.to_float())),
    })
}

fn k_list(arg: &Option<String>, default: Vec<usize>) -> Result<Vec<usize>, Failure> {
    match arg {
        Some(s) => parse_usizes(s),
        None => Ok(default),
    }
}

fn diff(ctx: &Ctx, args: &PairArgs) -> Result<Output, Failure> {
    let (f, g) = load_pair(args)?;
    let ks = k_list(&args.k, vec![1])?;
    let &[k] = ks.as_slice() else {
        return Err(Failure::Usage("diff takes a single --k".into()));
    };
    fn render<T: WireScalar>(ctx: &Ctx, f: &Frieze<T>, g: &Frieze<T>, k: usize) -> Result<String, Failure> {
        let d = row_difference(f, g, k)?;
        Ok(match ctx.format {
            Format::Csv => sequence_to_csv(d.values()),
            Format::Json => ctx.json(&json!({
                "k": k,
                "count": sign_changes(&d),
                "degenerate": d.is_all_zero(),
                "sequence": d.values().iter().map(WireScalar::to_wire).collect::<Vec<_>>(),
            })),
        })
    }
    let text = match (&f, &g) {
        (AnyFrieze::Exact(f), AnyFrieze::Exact(g)) => render(ctx, f, g, k)?,
        (AnyFrieze::Float(f), AnyFrieze::Float(g)) => render(ctx, f, g, k)?,
        _ => unreachable!("load_pair unifies scalar kinds"),
    };
    Ok(Output::ok(text))
}

fn theorem_check(ctx: &Ctx, args: &PairArgs) -> Result<Output, Failure> {
    let (f, g) = load_pair(args)?;
    let half = (f.width() / 2).max(1);
    let ks = k_list(&args.k, (1..=half).collect())?;
    fn checks<T: WireScalar>(f: &Frieze<T>, g: &Frieze<T>, ks: &[usize]) -> Result<Vec<Value>, Failure> {
        ks.iter()
            .map(|&k| match problem1_check(f, g, k) {
                Ok(c) => Ok(verdict_to_json(&c)),
                Err(SignError::Degenerate(k)) => Ok(json!({"k": k, "count": 0, "verdict": "degenerate", "sequence": []})),
                Err(e) => Err(e.into()),
            })
            .collect()
    }
    let verdicts = match (&f, &g) {
        (AnyFrieze::Exact(f), AnyFrieze::Exact(g)) => checks(f, g, &ks)?,
        (AnyFrieze::Float(f), AnyFrieze::Float(g)) => checks(f, g, &ks)?,
        _ => unreachable!("load_pair unifies scalar kinds"),
    };
    let text = match ctx.format {
        Format::Json => ctx.json(&json!({
            "zero_convention": crate::sign::ZERO_CONVENTION,
            "checks": verdicts,
        })),
        Format::Csv => {
            let mut s = String::from("k,count,verdict\n");
            for v in &verdicts {
                s.push_str(&format!("{},{},{}\n", v["k"], v["count"], v["verdict"].as_str().unwrap_or("")));
            }
            s
        }
    };
    Ok(Output::ok(text))
}

fn deform(ctx: &Ctx, n: Option<usize>, k: usize, q: &str) -> Result<Output, Failure> {
    let inp = if let Some(seed) = q.strip_prefix("seed:") {
        let seed: u64 = seed.trim().parse().map_err(|_| Failure::Usage(format!("bad seed in {q:?}")))?;
        let n = n.ok_or_else(|| Failure::Usage("--n is required with --q seed:S".into()))?;
        DeformationInput::random(n, k, seed)
    } else {
        let values = q
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| s.trim().parse::<f64>().map_err(|_| Failure::Usage(format!("not a number: {s:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        if n.is_some_and(|n| n != values.len()) {
            return Err(Failure::Usage(format!("--n disagrees with the {} q values", values.len())));
        }
        DeformationInput::new(values, k)
    }
    .map_err(Failure::domain)?;
    let cs = c_sequence(&inp).map_err(Failure::domain)?;
    let residuals = harmonic_orthogonality_report(&cs);
    let report = infinitesimal_check(&inp).map_err(Failure::domain)?;
    let text = match ctx.format {
        Format::Csv => sequence_to_csv(&cs.c),
        Format::Json => ctx.json(&json!({
            "n": inp.n(),
            "k": inp.k(),
            "q": inp.q(),
            "c": cs.c,
            "residuals": residuals.as_array(),
            "residual_tolerance": residuals.tolerance,
            "count": report.count,
            "verdict": report.verdict,
            "zero_convention": crate::sign::ZERO_CONVENTION,
        })),
    };
    Ok(Output::ok(text))
}

fn scan_output(ctx: &Ctx, report: &ScanReport) -> String {
    match ctx.format {
        Format::Json => ctx.json(report),
        Format::Csv => {
            let mut s = String::from("k,count,pairs\n");
            for (k, stats) in &report.per_k {
                for (c, m) in &stats.histogram {
                    s.push_str(&format!("{k},{c},{m}\n"));
                }
            }
            s
        }
    }
}

fn scan_verb(ctx: &Ctx, scan: &ScanCommand) -> Result<Output, Failure> {
    let result = match scan {
        ScanCommand::Cc { width, k, cap } => scan_cc(*width, &parse_usizes(k)?, *cap),
        ScanCommand::Random { n, k, samples, seed } => scan_random(*n, &parse_usizes(k)?, *samples, *seed),
    };
    match result {
        Ok(report) => {
            let code = if report.has_violations() { EXIT_VIOLATION } else { EXIT_OK };
            Ok(Output {
                text: scan_output(ctx, &report),
                code,
            })
        }
        Err(SearchError::CapExceeded(report)) => {
            let code = if report.has_violations() { EXIT_VIOLATION } else { EXIT_DOMAIN };
            Ok(Output {
                text: scan_output(ctx, &report),
                code,
            })
        }
        Err(e @ (SearchError::WidthTooLarge(_) | SearchError::RowOutOfRange { .. } | SearchError::BadPeriod(_))) => {
            Err(Failure::Usage(e.to_string()))
        }
        Err(e) => Err(Failure::domain(e)),
    }
}

fn cuntz(ctx: &Ctx) -> Result<Output, Failure> {
    let c = cuntz_counterexample().map_err(Failure::domain)?;
    let verified = c
        .report
        .violations
        .iter()
        .map(|v| v.verify())
        .collect::<Result<Vec<_>, _>>()
        .map_err(Failure::domain)?
        .into_iter()
        .all(|ok| ok);
    let text = if ctx.pretty && ctx.format == Format::Json {
        let mut s = format!("first frieze\n{}\nsecond frieze\n{}\n", c.first, c.second);
        for v in &c.report.violations {
            s.push_str(&format!("row {}: {} sign changes, certificate verified: {verified}\n", v.k, v.count));
        }
        s
    } else {
        match ctx.format {
            Format::Json => ctx.json(&json!({
                "first": frieze_to_json(&c.first, true),
                "second": frieze_to_json(&c.second, true),
                "report": c.report,
                "certificates_verified": verified,
            })),
            Format::Csv => scan_output(ctx, &c.report),
        }
    };
    Ok(Output::ok(text))
}

fn polygon(ctx: &Ctx, cmd: &PolygonCommand) -> Result<Output, Failure> {
    let text = match cmd {
        PolygonCommand::Project(arg) => {
            let p = match load_frieze_arg(arg)? {
                AnyFrieze::Exact(f) => frieze_to_polygon(&f),
                AnyFrieze::Float(f) => frieze_to_polygon(&f),
            }
            .map_err(Failure::domain)?;
            ctx.json(&PolygonJson::from(&p))
        }
        PolygonCommand::ToFrieze { input } => {
            let pj: PolygonJson = serde_json::from_value(read_json(input)?)
                .map_err(|e| Failure::Usage(format!("{}: {e}", input.display())))?;
            let PolygonJson::Projective { angles, radii, .. } = pj else {
                return Err(Failure::Usage("to-frieze needs angles and radii".into()));
            };
            let p = ProjectivePolygon::new(angles, radii).map_err(Failure::domain)?;
            let f = polygon_to_frieze(&p).map_err(Failure::domain)?;
            ctx.frieze(&f, None)
        }
        PolygonCommand::Random { n, seed } => {
            let p = random_polygon(*n, *seed).map_err(Failure::domain)?;
            let f = polygon_to_frieze(&p).map_err(Failure::domain)?;
            match ctx.format {
                Format::Csv => frieze_to_csv(&f),
                Format::Json => ctx.json(&json!({
                    "polygon": PolygonJson::from(&p),
                    "frieze": frieze_to_json(&f, true),
                })),
            }
        }
        PolygonCommand::Equilateral { n, seed } => {
            let p = sample_equilateral_convex(*n, *seed).map_err(Failure::domain)?;
            match ctx.format {
                Format::Csv => {
                    let mut s = String::from("i,x,y\n");
                    for (i, v) in p.vertices.iter().enumerate() {
                        s.push_str(&format!("{i},{:e},{:e}\n", v[0], v[1]));
                    }
                    s
                }
                Format::Json => ctx.json(&PolygonJson::from(&p)),
            }
        }
        PolygonCommand::Experiment { n, k, pairs, seed } => {
            let config = Problem2Config {
                n_values: parse_usizes(n)?,
                k_values: parse_usizes(k)?,
                pairs_per_n: *pairs,
                seed: *seed,
            };
            if let Some(&bad) = config.n_values.iter().find(|&&n| n < 3) {
                return Err(Failure::Usage(format!("n = {bad} is below 3")));
            }
            let report = problem2_experiment(&config).map_err(Failure::domain)?;
            match ctx.format {
                Format::Json => ctx.json(&report),
                Format::Csv => {
                    let mut s = String::from("n,k,pair,seed_a,seed_b,count\n");
                    for r in &report.records {
                        s.push_str(&format!("{},{},{},{},{},{}\n", r.n, r.k, r.pair, r.seed_a, r.seed_b, r.count));
                    }
                    s
                }
            }
        }
    };
    Ok(Output::ok(text))
}

fn enumerate(ctx: &Ctx, n: usize, cap: usize) -> Result<Output, Failure> {
    let ts = enumerate_triangulations_capped(n, cap).map_err(|e| Failure::Usage(e.to_string()))?;
    let mut rows = Vec::new();
    for (rank, t) in ts.enumerate() {
        let counts: Vec<i64> = t.triangle_counts().into_iter().map(|c| c as i64).collect();
        rows.push((rank, t, counts));
    }
    let text = match ctx.format {
        Format::Json => ctx.json(
            &rows
                .iter()
                .map(|(rank, t, counts)| {
                    json!({
                        "rank": rank,
                        "triangulation": TriangulationJson::from(t),
                        "first_row": counts.iter().map(|&c| Rational::from_i64(c).to_wire()).collect::<Vec<_>>(),
                    })
                })
                .collect::<Vec<_>>(),
        ),
        Format::Csv => {
            let mut s = String::from("rank,first_row\n");
            for (rank, _, counts) in &rows {
                let joined: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
                s.push_str(&format!("{rank},{}\n", joined.join(" ")));
            }
            s
        }
    };
    Ok(Output::ok(text))
}
