//! `picardlab` command-line front end.
//!
//! Exit codes: 0 success, 1 certification or I/O failure, 2 usage error.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use picardlab::constructions::{self, build_theorem2_with, ConstructionReport, Theorem2Reading};
use picardlab::curve_lab::{self, AkClass, ParsedPoly};
use picardlab::geography::{self, FigureFormat, SetKind, SlopeSweep};
use picardlab::poly::Rational;
use picardlab::{Error, Theorem, TheoremParams};

#[derive(Parser)]
#[command(name = "picardlab", version, about = "Exact certificates for abelian-cover surfaces with maximal Picard number")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a theorem pipeline for one parameter choice or a sweep.
    VerifyTheorem(VerifyArgs),
    /// Enumerate invariant sets, check the set relations, write tables and plots.
    Geography(GeographyArgs),
    /// Classify a plane-curve germ, or check the branch curve C_n.
    Classify(ClassifyArgs),
    /// Exact slope table of the second family and its limit.
    Slopes(SlopesArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Theorem number (1, 2 or 3).
    theorem: u8,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    /// Parameter sweep such as `m=2..8,n=4,6,8`.
    #[arg(long, conflicts_with_all = ["m", "n"])]
    sweep: Option<String>,
    /// Write the reports as JSON to this path (`-` for standard output).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Line-bundle coefficients for theorem 2.
    #[arg(long, value_enum, default_value = "corrected")]
    reading: ReadingArg,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum ReadingArg {
    Corrected,
    Printed,
}

#[derive(Args)]
struct GeographyArgs {
    #[arg(long)]
    chi_max: i64,
    /// Comma-separated outputs: csv, svg, json.
    #[arg(long, value_delimiter = ',')]
    emit: Vec<String>,
    /// Comma-separated sets (A1, A2, A3, B, T).
    #[arg(long, value_delimiter = ',', default_value = "A1,A2,A3,B")]
    sets: Vec<String>,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    /// Check the set-relation claims; the exit status then reflects them.
    #[arg(long)]
    claims: bool,
    /// Upper limit for --chi-max.
    #[arg(long, env = "PICARDLAB_CHI_MAX", default_value_t = geography::DEFAULT_CHI_MAX)]
    chi_max_cap: i64,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("input").required(true).args(["curve_c", "local", "file"])))]
struct ClassifyArgs {
    /// Check the singular points of C_n on the coordinate lines.
    #[arg(long = "curve-C", value_name = "N")]
    curve_c: Option<u32>,
    /// Polynomial in term-sum format.
    #[arg(long)]
    local: Option<String>,
    /// File holding a polynomial in term-sum format.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Point `a:b:c` for homogeneous input.
    #[arg(long)]
    point: Option<String>,
    /// Affine chart (0, 1 or 2) for homogeneous input.
    #[arg(long)]
    chart: Option<usize>,
    /// Fixed jet bound instead of automatic doubling.
    #[arg(long)]
    jet_bound: Option<u32>,
    /// Largest n accepted with --curve-C.
    #[arg(long, default_value_t = curve_lab::DEFAULT_MAX_N)]
    max_n: u32,
}

#[derive(Args)]
struct SlopesArgs {
    /// `n=<even>` or `m=<at least 3>`.
    #[arg(long)]
    fix: String,
    #[arg(long, default_value_t = 20)]
    m_max: i64,
    #[arg(long, default_value_t = 40)]
    n_max: i64,
    /// Threshold for the final distance to the limit (rational, e.g. 1/100).
    #[arg(long)]
    threshold: Option<String>,
    /// Write the report as JSON to this path (`-` for standard output).
    #[arg(long)]
    out: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn fail(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Constraint(_) | Error::InvalidArgument(_) | Error::Parse { .. } | Error::UnknownFormat(_) => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

type CliResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::VerifyTheorem(a) => verify_theorem(a),
        Command::Geography(a) => geography_cmd(a),
        Command::Classify(a) => classify(a),
        Command::Slopes(a) => slopes(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn write_output(path: &Path, content: &str) -> Result<(), Failure> {
    if path == Path::new("-") {
        print!("{content}");
        return Ok(());
    }
    fs::write(path, content).map_err(|e| Failure::fail(format!("cannot write {}: {e}", path.display())))
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes") + "\n"
}

/// Parses `m=2..8,n=4,6,8` into value lists per key.
fn parse_sweep(spec: &str) -> Result<(Vec<u32>, Vec<u32>), Failure> {
    let mut m = Vec::new();
    let mut n = Vec::new();
    let mut current: Option<char> = None;
    for token in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let value = match token.split_once('=') {
            Some((key, value)) => {
                current = match key.trim() {
                    "m" => Some('m'),
                    "n" => Some('n'),
                    other => return Err(Failure::usage(format!("unknown sweep key `{other}`"))),
                };
                value.trim()
            }
            None => token,
        };
        let target = match current {
            Some('m') => &mut m,
            Some(_) => &mut n,
            None => return Err(Failure::usage(format!("sweep value `{token}` has no key"))),
        };
        let num = |s: &str| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| Failure::usage(format!("bad sweep value `{s}`")))
        };
        match value.split_once("..") {
            Some((lo, hi)) => {
                let (lo, hi) = (num(lo)?, num(hi.trim_start_matches('='))?);
                if lo > hi {
                    return Err(Failure::usage(format!("empty sweep range `{value}`")));
                }
                target.extend(lo..=hi);
            }
            None => target.push(num(value)?),
        }
    }
    m.sort_unstable();
    m.dedup();
    n.sort_unstable();
    n.dedup();
    Ok((m, n))
}

fn failing_fields(r: &ConstructionReport) -> Vec<&'static str> {
    let mut out = Vec::new();
    if !r.matches {
        out.push("match");
    }
    if !r.maximal {
        out.push("maximal");
    }
    if !r.ample {
        out.push("ample");
    }
    out
}

fn verify_theorem(a: VerifyArgs) -> CliResult {
    let theorem = Theorem::try_from(a.theorem)?;
    let mut params = Vec::new();
    if let Some(spec) = &a.sweep {
        let (ms, ns) = parse_sweep(spec)?;
        if ns.is_empty() {
            return Err(Failure::usage("sweep needs values for n"));
        }
        match theorem {
            Theorem::One => {
                if !ms.is_empty() {
                    return Err(Failure::usage("theorem 1 takes no m"));
                }
                params.extend(ns.iter().map(|&n| TheoremParams::n(n)));
            }
            _ => {
                if ms.is_empty() {
                    return Err(Failure::usage("sweep needs values for m"));
                }
                for &m in &ms {
                    params.extend(ns.iter().map(|&n| TheoremParams::mn(m, n)));
                }
            }
        }
    } else {
        let n = a.n.ok_or_else(|| Failure::usage("--n or --sweep is required"))?;
        params.push(TheoremParams { m: a.m, n });
    }
    // Validate everything before running anything.
    for p in &params {
        constructions::check_params(theorem, *p)?;
    }
    params.sort();

    let mut reports = Vec::new();
    for p in params {
        let report = match (theorem, a.reading) {
            (Theorem::Two, ReadingArg::Printed) => build_theorem2_with(p.m.unwrap_or(0), p.n, Theorem2Reading::Printed),
            _ => constructions::build(theorem, p),
        };
        match report {
            Ok(r) => reports.push(r),
            Err(e) => return Err(Failure::fail(format!("theorem {theorem} ({p}): {e}"))),
        }
    }

    let mut table = String::new();
    for r in &reports {
        let _ = writeln!(table, "{}", r.summary());
    }
    print!("{table}");
    if let Some(out) = &a.out {
        write_output(out, &to_json(&reports))?;
    }
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.certified())
        .map(|r| format!("theorem {} ({}): failed {}", r.theorem, r.params, failing_fields(r).join(", ")))
        .collect();
    if failed.is_empty() {
        println!("{} report(s) certified", reports.len());
        Ok(0)
    } else {
        for f in &failed {
            eprintln!("{f}");
        }
        Ok(1)
    }
}

fn parse_sets(names: &[String]) -> Result<Vec<SetKind>, Failure> {
    let mut out = Vec::new();
    for s in names.iter().filter(|s| !s.trim().is_empty()) {
        out.push(s.parse::<SetKind>()?);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn geography_cmd(a: GeographyArgs) -> CliResult {
    if a.chi_max < 3 {
        return Err(Failure::usage(format!("--chi-max must be at least 3, got {}", a.chi_max)));
    }
    if a.chi_max > a.chi_max_cap {
        return Err(Failure::usage(format!(
            "--chi-max {} exceeds the cap {} (set PICARDLAB_CHI_MAX to raise it)",
            a.chi_max, a.chi_max_cap
        )));
    }
    let sets = parse_sets(&a.sets)?;
    let mut emits = Vec::new();
    for e in a.emit.iter().map(|e| e.trim().to_ascii_lowercase()).filter(|e| !e.is_empty()) {
        if !matches!(e.as_str(), "csv" | "svg" | "json") {
            return Err(Failure::usage(format!("unknown format `{e}`")));
        }
        emits.push(e);
    }

    let pairs = geography::enumerate_sets(&sets, a.chi_max);
    println!("chi <= {}", a.chi_max);
    for &k in &sets {
        println!("  {:<3} {:>6} pairs", k.label(), geography::enumerate_set(k, a.chi_max).len());
    }

    if !emits.is_empty() {
        fs::create_dir_all(&a.out_dir)
            .map_err(|e| Failure::fail(format!("cannot create {}: {e}", a.out_dir.display())))?;
    }
    for e in &emits {
        let (name, content) = match e.as_str() {
            "csv" => ("geography.csv", geography::emit_figure(&sets, a.chi_max, FigureFormat::Csv)?),
            "svg" => ("geography.svg", geography::emit_figure(&sets, a.chi_max, FigureFormat::Svg)?),
            _ => ("pairs.json", to_json(&pairs)),
        };
        let path = a.out_dir.join(name);
        write_output(&path, &content)?;
        println!("wrote {}", path.display());
    }

    if !a.claims {
        return Ok(0);
    }
    let report = geography::set_relations_report(a.chi_max)?;
    println!("claims (chi <= {}):", a.chi_max);
    for c in &report.claims {
        let marker = match c.status {
            geography::ClaimStatus::Verified => "  ",
            geography::ClaimStatus::VerifiedUnderRelaxedAssumption => "! ",
            geography::ClaimStatus::RefutedWithinBound => "!!",
        };
        println!("{marker} {:<14} {}", c.claim_id, c.status);
        for w in &c.witnesses {
            println!("      {w}");
        }
    }
    if let Some(c) = report.claim("T⊆A2") {
        if c.status != geography::ClaimStatus::Verified {
            println!("NOTE: T ⊆ A2 needs odd n (and m = 2 at t = 6); it does not hold under the printed constraints.");
        }
    }
    let path = a.out_dir.join("claims.json");
    if emits.iter().any(|e| e == "json") {
        write_output(&path, &report.to_json())?;
        println!("wrote {}", path.display());
    }
    Ok(if report.all_succeeded() { 0 } else { 1 })
}

fn parse_point(text: &str) -> Result<[Rational; 3], Failure> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(Failure::usage(format!("point `{text}` must have the form a:b:c")));
    }
    let mut out: [Rational; 3] = Default::default();
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = p
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("bad coordinate `{p}` in point `{text}`")))?;
    }
    if out.iter().all(|c| c == &Rational::default()) {
        return Err(Failure::usage("point 0:0:0 is not a projective point"));
    }
    Ok(out)
}

fn classify_local(f: &curve_lab::LocalPoly, jet_bound: Option<u32>) -> Result<AkClass, Failure> {
    Ok(match jet_bound {
        Some(j) => curve_lab::classify_ak(f, j)?,
        None => curve_lab::classify_ak_auto(f, 1)?,
    })
}

fn classify(a: ClassifyArgs) -> CliResult {
    if let Some(n) = a.curve_c {
        let report = curve_lab::singular_points_report(n, a.max_n)?;
        println!("{}", report.summary());
        for l in &report.lines {
            println!(
                "  {}: {} points, representative {:?} in chart {}: {}",
                l.line, l.distinct_points, l.representative, l.chart, l.representative_type
            );
        }
        println!("  blow-up centre (0:0:1) off the curve: {}", report.blowup_center_off_curve);
        println!("  note: {}", report.limitations);
        return Ok(0);
    }
    let text = match (&a.local, &a.file) {
        (Some(t), _) => t.clone(),
        (None, Some(path)) => fs::read_to_string(path)
            .map_err(|e| Failure::fail(format!("cannot read {}: {e}", path.display())))?,
        (None, None) => unreachable!("clap enforces one input"),
    };
    let class = match curve_lab::parse_poly(text.trim())? {
        ParsedPoly::Local(f) => classify_local(&f, a.jet_bound)?,
        ParsedPoly::Homogeneous(h) => {
            let point = a
                .point
                .as_deref()
                .ok_or_else(|| Failure::usage("homogeneous input needs --point"))?;
            let point = parse_point(point)?;
            let chart = match a.chart {
                Some(c) => c,
                None => point
                    .iter()
                    .position(|c| c != &Rational::default())
                    .expect("nonzero point"),
            };
            let local = curve_lab::localize(&h, &point, chart)?;
            classify_local(&local, a.jet_bound)?
        }
    };
    println!("{class}");
    Ok(0)
}

fn slopes(a: SlopesArgs) -> CliResult {
    let (key, value) = a
        .fix
        .split_once('=')
        .ok_or_else(|| Failure::usage("--fix takes n=<value> or m=<value>"))?;
    let value: i64 = value
        .trim()
        .parse()
        .map_err(|_| Failure::usage(format!("bad value in --fix {}", a.fix)))?;
    let (sweep, default_threshold) = match key.trim() {
        "n" => (SlopeSweep::FixN { n: value, m_max: a.m_max }, "1/100"),
        "m" => (SlopeSweep::FixM { m: value, n_max: a.n_max }, "1/50"),
        other => return Err(Failure::usage(format!("--fix key must be n or m, got `{other}`"))),
    };
    let threshold: Rational = a
        .threshold
        .as_deref()
        .unwrap_or(default_threshold)
        .parse()
        .map_err(|_| Failure::usage("bad --threshold"))?;
    let report = geography::slope_limit_report(sweep, &threshold)?;
    println!("{:>5} {:>5} {:>10} {:>10} {:>22} {:>9} {:>22}", "m", "n", "K2", "chi", "slope", "identity", "|slope - limit|");
    for r in &report.rows {
        println!(
            "{:>5} {:>5} {:>10} {:>10} {:>22} {:>9} {:>22}",
            r.m,
            r.n,
            r.k2,
            r.chi,
            r.slope,
            if r.identity { "ok" } else { "FAIL" },
            r.distance
        );
    }
    println!("limit: {}", report.limit);
    println!(
        "final distance {} below {}: {}",
        report.final_distance,
        report.threshold,
        if report.below_threshold { "yes" } else { "no" }
    );
    println!("distances non-increasing: {}", if report.monotone { "yes" } else { "no" });
    if let Some(out) = &a.out {
        write_output(out, &to_json(&report))?;
    }
    Ok(if report.all_identities_hold { 0 } else { 1 })
}
