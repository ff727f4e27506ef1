//! `jacgate`: decide global injectivity of polynomial maps.
//!
//! Exit codes: 0 injective / only the origin, 2 not injective / non-trivial
//! zero, 3 unknown / inconclusive, 1 bad input, 4 internal inconsistency.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use jacgate::criteria::{self, Analysis, AnalysisConfig, Attempt, CriterionResult, JacStatus, Verdict};
use jacgate::numflow::{self, NewtonConfig, ZeroReport};
use jacgate::parse::default_names;
use jacgate::poly::{gradient_field, Polynomial};
use jacgate::rational::point_to_string;
use jacgate::quasihomog::{block_structure_from_degrees, higher_part_field, qh_decompose, tilde_weights};
use jacgate::zero_cert::{self, CertConfig, CertOutcome};
use jacgate::{par, parse_map_file, parse_system_file, print_poly, MapFile, PolyMap, Weight};
use serde::Serialize;

const SCHEMA: u32 = 1;
const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "jacgate", version, about = "Global injectivity of polynomial maps via quasi-homogeneous criteria")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run all criteria and the witness search, and print a verdict.
    Check {
        mapfile: PathBuf,
        /// Largest weight entry tried.
        #[arg(long, default_value_t = 4)]
        weights_max: u64,
        /// Maximum bisection depth of the only-origin certifier.
        #[arg(long, default_value_t = 24)]
        depth: u32,
        /// Half-width of the box on which det DF != 0 is verified.
        #[arg(long = "box", default_value_t = 10.0)]
        box_radius: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the JSON report here (`-` for stdout).
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Print the quasi-homogeneous decomposition of F, H or Y.
    Decompose {
        mapfile: PathBuf,
        #[arg(long)]
        weights: Weight,
        #[arg(long, value_enum, default_value_t = Target::F)]
        target: Target,
    },
    /// Decide whether a quasi-homogeneous system vanishes only at the origin.
    Certify {
        polyfile: PathBuf,
        #[arg(long)]
        weights: Weight,
        #[arg(long, value_enum, default_value_t = Mode::System)]
        mode: Mode,
        #[arg(long, default_value_t = 24)]
        depth: u32,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Find zeros of F by multi-start Newton and report their indices.
    Zeros {
        mapfile: PathBuf,
        #[arg(long, default_value_t = 64)]
        starts: usize,
        #[arg(long = "box", default_value_t = 5.0)]
        box_radius: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    #[value(name = "F")]
    F,
    #[value(name = "H")]
    H,
    #[value(name = "Y")]
    Y,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    System,
    Nonneg,
    Gradient,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Internal(_) => 4,
        }
    }
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Ok(v) = std::env::var("JACGATE_THREADS") {
        match v.parse::<usize>() {
            Ok(n) if n > 0 => {
                if let Err(e) = par::configure_threads(n) {
                    eprintln!("warning: JACGATE_THREADS ignored: {e}");
                }
            }
            _ => eprintln!("warning: JACGATE_THREADS={v:?} is not a positive integer; ignored"),
        }
    }
    let result = match cli.cmd {
        Cmd::Check {
            mapfile,
            weights_max,
            depth,
            box_radius,
            seed,
            json,
        } => cmd_check(&mapfile, weights_max, depth, box_radius, seed, json.as_deref()),
        Cmd::Decompose {
            mapfile,
            weights,
            target,
        } => cmd_decompose(&mapfile, &weights, target).map(|()| 0),
        Cmd::Certify {
            polyfile,
            weights,
            mode,
            depth,
            json,
        } => cmd_certify(&polyfile, &weights, mode, depth, json.as_deref()),
        Cmd::Zeros {
            mapfile,
            starts,
            box_radius,
            seed,
            json,
        } => cmd_zeros(&mapfile, starts, box_radius, seed, json.as_deref()).map(|()| 0),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            match &f {
                Failure::Input(m) => eprintln!("error: {m}"),
                Failure::Internal(m) => eprintln!("internal error: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}

fn read_map(path: &Path) -> Result<(PolyMap, MapFile), Failure> {
    let src = fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    parse_map_file(&src).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn write_json<T: Serialize>(value: &T, dest: &Path) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Failure::Internal(e.to_string()))?;
    text.push('\n');
    if dest == Path::new("-") {
        print!("{text}");
        Ok(())
    } else {
        fs::write(dest, text).map_err(|e| input(format!("{}: {e}", dest.display())))
    }
}

#[derive(Serialize)]
struct InputEcho {
    path: String,
    name: Option<String>,
    vars: Vec<String>,
    components: Vec<Component>,
}

#[derive(Serialize)]
struct Component {
    label: String,
    poly: String,
}

impl InputEcho {
    fn new(path: &Path, file: &MapFile) -> Self {
        InputEcho {
            path: path.display().to_string(),
            name: file.name.clone(),
            vars: file.vars.clone(),
            components: file
                .labels
                .iter()
                .zip(&file.polys)
                .map(|(l, p)| Component {
                    label: l.clone(),
                    poly: print_poly(p, &file.vars),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
struct AttemptRow<'a> {
    #[serde(flatten)]
    result: &'a CriterionResult,
    /// Set on map-criterion checks at a weight derived from a field success.
    #[serde(skip_serializing_if = "Option::is_none")]
    derived_from: Option<&'a Weight>,
}

#[derive(Serialize)]
struct VerdictSection<'a> {
    #[serde(flatten)]
    verdict: &'a Verdict,
    exit_code: i32,
    centered: bool,
    derived_weights: Vec<&'a Weight>,
    properness: &'a Option<criteria::ProperRecord>,
    index_check: &'a Option<numflow::IndexSumReport>,
    notes: &'a [String],
}

#[derive(Serialize)]
struct Report<'a> {
    schema: u32,
    version: &'static str,
    input: InputEcho,
    assumptions: &'a criteria::Assumptions,
    attempts: Vec<AttemptRow<'a>>,
    verdict: VerdictSection<'a>,
    witnesses: Vec<&'a numflow::InjectivityWitness>,
    config: &'a AnalysisConfig,
}

fn build_report<'a>(path: &Path, file: &MapFile, a: &'a Analysis, cfg: &'a AnalysisConfig) -> Report<'a> {
    let mut attempts: Vec<AttemptRow> = a
        .searches
        .iter()
        .flat_map(|l| l.attempts.iter())
        .map(|r| AttemptRow {
            result: r,
            derived_from: None,
        })
        .collect();
    attempts.extend(a.tilde.iter().map(|t| AttemptRow {
        result: &t.map_result,
        derived_from: Some(&t.from),
    }));
    Report {
        schema: SCHEMA,
        version: VERSION,
        input: InputEcho::new(path, file),
        assumptions: &a.assumptions,
        attempts,
        verdict: VerdictSection {
            verdict: &a.verdict,
            exit_code: a.verdict.exit_code(),
            centered: a.centered,
            derived_weights: a.tilde.iter().map(|t| &t.tilde.weight).collect(),
            properness: &a.properness,
            index_check: &a.index_check,
            notes: &a.notes,
        },
        witnesses: a.witness.iter().collect(),
        config: cfg,
    }
}

fn cmd_check(
    path: &Path,
    weights_max: u64,
    depth: u32,
    box_radius: f64,
    seed: u64,
    json: Option<&Path>,
) -> Result<u8, Failure> {
    let (f, file) = read_map(path)?;
    if weights_max == 0 {
        return Err(input("--weights-max must be at least 1"));
    }
    let cfg = AnalysisConfig {
        cert: CertConfig {
            max_depth: depth,
            ..CertConfig::default()
        },
        weights_max,
        box_radius,
        seed,
        ..AnalysisConfig::default()
    };
    let started = Instant::now();
    let analysis = criteria::verdict(&f, &cfg).map_err(|e| Failure::Internal(e.to_string()))?;
    let elapsed = started.elapsed();
    if json != Some(Path::new("-")) {
        print_analysis(&file, &analysis, elapsed.as_secs_f64());
    }
    if let Some(dest) = json {
        write_json(&build_report(path, &file, &analysis, &cfg), dest)?;
    }
    Ok(analysis.verdict.exit_code() as u8)
}

fn fmt_point(p: &[f64]) -> String {
    let parts: Vec<String> = p.iter().map(|v| format!("{v:.6}")).collect();
    format!("({})", parts.join(", "))
}

fn fmt_outcome(a: &Attempt) -> String {
    match a {
        Attempt::Cert(c) => fmt_cert(c),
        Attempt::Degenerate { reason } => format!("Degenerate: {reason}"),
    }
}

fn fmt_cert(c: &CertOutcome) -> String {
    match c {
        CertOutcome::OnlyOrigin {
            max_depth_used,
            box_count,
        } => format!("OnlyOrigin (depth {max_depth_used}, {box_count} boxes)"),
        CertOutcome::NontrivialZero { witness } => {
            let exact = match &witness.exact {
                Some(q) => format!(", exact {}", point_to_string(q)),
                None => String::new(),
            };
            format!("NontrivialZero at {}{exact}", fmt_point(&witness.point))
        }
        CertOutcome::Inconclusive { depth, box_count, .. } => {
            format!("Inconclusive (depth {depth}, {box_count} boxes)")
        }
    }
}

fn print_analysis(file: &MapFile, a: &Analysis, secs: f64) {
    let names = &file.vars;
    if let Some(name) = &file.name {
        println!("map: {name}");
    }
    for (l, p) in file.labels.iter().zip(&file.polys) {
        println!("  {l} = {}", print_poly(p, names));
    }
    let jac = match &a.assumptions.jac_nonvanishing {
        JacStatus::VerifiedGlobally => "non-zero constant".to_string(),
        JacStatus::VerifiedOnBox { radius, depth } => {
            format!("non-zero on [-{radius}, {radius}]^{} (depth {depth})", names.len())
        }
        JacStatus::ViolationFound { point, .. } => format!("vanishes at {}", fmt_point(point)),
        JacStatus::Assumed { reason } => format!("assumed non-zero ({reason})"),
    };
    println!("F(0) = 0: {}", if a.assumptions.f_zero_at_origin { "yes" } else { "no" });
    println!("det DF: {jac}");
    println!("attempts:");
    for log in &a.searches {
        for r in &log.attempts {
            println!("  {:<16} s = {:<10} {}", r.criterion.to_string(), r.weight.to_string(), fmt_outcome(&r.outcome));
        }
    }
    for t in &a.tilde {
        println!(
            "  {:<16} s~ = {:<9} {} (from field criterion at {})",
            t.map_result.criterion.to_string(),
            t.tilde.weight.to_string(),
            fmt_outcome(&t.map_result.outcome),
            t.from
        );
    }
    if let Some(p) = &a.properness {
        println!(
            "proper ({} only at origin, s = {}): {}",
            p.via,
            p.weight,
            if p.proper { "yes" } else { "not shown" }
        );
    }
    if let Some(ix) = &a.index_check {
        println!(
            "index check: {} zero(s), expected index {}, {}",
            ix.zeros,
            ix.expected,
            if ix.ok { "ok" } else { "mismatch" }
        );
    }
    for n in &a.notes {
        println!("note: {n}");
    }
    match &a.verdict {
        Verdict::Injective { by, weight } => println!("verdict: Injective by {by} at s = {weight}"),
        Verdict::NotInjective { witness } => {
            let exact = match &witness.exact {
                Some((p, q)) => format!(" (exact: {} and {})", point_to_string(p), point_to_string(q)),
                None => String::new(),
            };
            println!(
                "verdict: NotInjective: F{} = F{}{exact}",
                fmt_point(&witness.a),
                fmt_point(&witness.b)
            );
        }
        Verdict::Unknown { reason } => println!("verdict: Unknown ({reason})"),
    }
    println!("time: {secs:.2} s");
}

fn print_parts(label: &str, p: &Polynomial, s: &Weight, names: &[String]) -> Result<(), Failure> {
    let d = qh_decompose(p, s).map_err(|e| input(format!("{label}: {e}")))?;
    println!("{label}:");
    for (deg, part) in &d.parts {
        println!("  degree {deg}: {}", print_poly(part, names));
    }
    Ok(())
}

fn cmd_decompose(path: &Path, s: &Weight, target: Target) -> Result<(), Failure> {
    let (f, file) = read_map(path)?;
    s.check_len(f.n()).map_err(input)?;
    let names = &file.vars;
    println!("s = {s}");
    match target {
        Target::F => {
            for (l, p) in file.labels.iter().zip(f.components()) {
                print_parts(l, p, s, names)?;
            }
        }
        Target::H => print_parts("H", &f.h_norm(), s, names)?,
        Target::Y => {
            let h = f.h_norm();
            let y = gradient_field(&h);
            for (j, p) in y.components().iter().enumerate() {
                print_parts(&format!("Y{}", j + 1), p, s, names)?;
            }
            let fh = higher_part_field(&h, s).map_err(input)?;
            println!("higher part:");
            for (j, p) in fh.field.components().iter().enumerate() {
                println!("  Y{}_s = {}  (i_{} = {})", j + 1, print_poly(p, names), j + 1, fh.degrees[j]);
            }
            let bs = block_structure_from_degrees(&fh.degrees, s).map_err(input)?;
            let blocks: Vec<String> = (0..bs.blocks())
                .map(|b| {
                    let vars: Vec<&str> = bs.block_vars(b).iter().map(|&v| names[v].as_str()).collect();
                    format!("m = {}: {{{}}}", bs.block_degrees[b], vars.join(", "))
                })
                .collect();
            println!("blocks (r = {}): {}", bs.blocks(), blocks.join("; "));
            match tilde_weights(&bs) {
                Ok(t) => {
                    let raw: Vec<String> = t.raw.iter().map(u64::to_string).collect();
                    let raw = format!("({})", raw.join(","));
                    if raw == t.weight.to_string() {
                        println!("s~ = {raw}; m = {}", t.m);
                    } else {
                        println!("s~ = {raw}, reduced {}; m = {}", t.weight, t.m);
                    }
                }
                Err(e) => println!("s~: {e}"),
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct CertReport<'a> {
    schema: u32,
    version: &'static str,
    input: InputEcho,
    weight: &'a Weight,
    mode: &'static str,
    outcome: &'a CertOutcome,
    config: &'a CertConfig,
}

fn cmd_certify(path: &Path, s: &Weight, mode: Mode, depth: u32, json: Option<&Path>) -> Result<u8, Failure> {
    let src = fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    let file = parse_system_file(&src).map_err(|e| input(format!("{}: {e}", path.display())))?;
    let cfg = CertConfig {
        max_depth: depth,
        ..CertConfig::default()
    };
    let single = || -> Result<&Polynomial, Failure> {
        match file.polys.as_slice() {
            [p] => Ok(p),
            ps => Err(input(format!("mode needs exactly one polynomial, got {}", ps.len()))),
        }
    };
    let (outcome, mode_name) = match mode {
        Mode::System => (zero_cert::only_origin(&file.polys, s, &cfg), "system"),
        Mode::Nonneg => (zero_cert::unique_zero_nonneg(single()?, s, &cfg), "nonneg"),
        Mode::Gradient => (zero_cert::gradient_only_origin(single()?, s, &cfg), "gradient"),
    };
    let outcome = outcome.map_err(input)?;
    if json != Some(Path::new("-")) {
        println!("s = {s}, mode = {mode_name}");
        println!("{}", fmt_cert(&outcome));
    }
    if let Some(dest) = json {
        let report = CertReport {
            schema: SCHEMA,
            version: VERSION,
            input: InputEcho::new(path, &file),
            weight: s,
            mode: mode_name,
            outcome: &outcome,
            config: &cfg,
        };
        write_json(&report, dest)?;
    }
    Ok(match outcome {
        CertOutcome::OnlyOrigin { .. } => 0,
        CertOutcome::NontrivialZero { .. } => 2,
        CertOutcome::Inconclusive { .. } => 3,
    })
}

#[derive(Serialize)]
struct ZerosReport<'a> {
    schema: u32,
    version: &'static str,
    input: InputEcho,
    report: &'a ZeroReport,
    newton: &'a NewtonConfig,
}

fn cmd_zeros(path: &Path, starts: usize, r: f64, seed: u64, json: Option<&Path>) -> Result<(), Failure> {
    let (f, file) = read_map(path)?;
    let cfg = NewtonConfig::default();
    let rep = numflow::find_zeros(&f, starts, r, seed, &cfg);
    if json != Some(Path::new("-")) {
        let names = if file.vars.is_empty() { default_names(f.n()) } else { file.vars.clone() };
        println!("{} zero(s) from {starts} starts in [-{r}, {r}]^{} ({})", rep.zeros.len(), f.n(), names.join(", "));
        for z in &rep.zeros {
            let index = z.index.map_or("undetermined".to_string(), |i| format!("{i:+}"));
            println!("  {}  residual {:.3e}  index {index}", fmt_point(&z.point), z.residual);
        }
    }
    if let Some(dest) = json {
        let report = ZerosReport {
            schema: SCHEMA,
            version: VERSION,
            input: InputEcho::new(path, &file),
            report: &rep,
            newton: &cfg,
        };
        write_json(&report, dest)?;
    }
    Ok(())
}
