//! Batch front-end for the hyperturan library: construct designs, verify
//! and detect on `.lhg` files, evaluate bounds, certify extremal systems,
//! and run exact searches.
//!
//! Structured output is JSON on stdout, one value per invocation; human
//! summaries go to stderr. Every run ends with a single-line JSON manifest
//! on stderr recording the command, its arguments, a digest of any input
//! file, the files written, and the exit classification. Exit codes:
//! 0 success/found/pass, 1 not found, 2 certificate failed, 3 budget
//! truncated, 64 usage error, 65 data or format error.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hyperturan::bounds::{self, BoundKind};
use hyperturan::designs;
use hyperturan::patterns::{contains_b4, contains_crown, contains_path, contains_star};
use hyperturan::search::{self, Forbidden, ProbeStatus, SearchConfig};
use hyperturan::LinearHypergraph;

#[derive(Parser)]
#[command(
    name = "hyperturan",
    version,
    about = "Construct, detect, bound and exactly compute linear Turán numbers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named design family member; JSON on stdout, .lhg via --out.
    Construct {
        #[arg(long, value_enum)]
        method: Method,
        /// Point count for sts, prime order q for ag and pg.
        #[arg(long)]
        param: usize,
        /// Write the system to this .lhg file as well.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parse an .lhg file and report its shape; exit 65 if it is invalid.
    Verify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Look for one pattern copy: star:k, path:k (2..=4), b4 or crown.
    Detect {
        #[arg(long, value_parser = parse_detect_pattern)]
        pattern: DetectPattern,
        #[arg(long)]
        input: PathBuf,
    },
    /// Evaluate a closed-form edge-count bound at (n, r).
    Bound {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        /// Number of edges of the star or path; required exactly for those.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Build a lower-bound witness; JSON report on stdout, .lhg via --out.
    ConstructWitness {
        #[arg(long, value_enum)]
        kind: WitnessKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        /// Tree edge count; required for tree-lower, rejected otherwise.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the broom-extremal certificate; exit 0 on pass, 2 on fail.
    CertifyB4 {
        #[arg(long)]
        input: PathBuf,
    },
    /// Exact maximum edge count avoiding the forbidden configurations.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        /// Repeatable: p2, p3, p4, s:k, b4, crown.
        #[arg(long = "forbid", value_parser = parse_forbidden)]
        forbid: Vec<Forbidden>,
        #[arg(long)]
        node_budget: Option<u64>,
        /// Wall-clock limit in seconds.
        #[arg(long)]
        time_budget: Option<u64>,
        #[arg(long, value_enum, default_value_t = Toggle::On)]
        symmetry: Toggle,
    },
    /// Search with the four-edge path forbidden and compare the value
    /// against the conjectured ceiling (r+1)n/r.
    Probe {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        node_budget: Option<u64>,
        /// Wall-clock limit in seconds.
        #[arg(long)]
        time_budget: Option<u64>,
        #[arg(long, value_enum, default_value_t = Toggle::On)]
        symmetry: Toggle,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    #[value(name = "sts")]
    Sts,
    #[value(name = "ag")]
    Ag,
    #[value(name = "pg")]
    Pg,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    #[value(name = "star")]
    Star,
    #[value(name = "broom4")]
    Broom4,
    #[value(name = "crown4")]
    Crown4,
    #[value(name = "path")]
    Path,
    #[value(name = "pair")]
    Pair,
}

impl From<KindArg> for BoundKind {
    fn from(kind: KindArg) -> BoundKind {
        match kind {
            KindArg::Star => BoundKind::Star,
            KindArg::Broom4 => BoundKind::Broom4,
            KindArg::Crown4 => BoundKind::Crown4,
            KindArg::Path => BoundKind::Path,
            KindArg::Pair => BoundKind::Pair,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum WitnessKind {
    #[value(name = "tree-lower")]
    TreeLower,
    #[value(name = "p4-lower")]
    P4Lower,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Toggle {
    #[value(name = "on")]
    On,
    #[value(name = "off")]
    Off,
}

#[derive(Clone, Copy, Debug)]
enum DetectPattern {
    Star(usize),
    Path(usize),
    Broom4,
    Crown4,
}

fn parse_detect_pattern(s: &str) -> Result<DetectPattern, String> {
    match s {
        "b4" => Ok(DetectPattern::Broom4),
        "crown" => Ok(DetectPattern::Crown4),
        _ => {
            if let Some(k) = s.strip_prefix("star:") {
                let k: usize = k.parse().map_err(|_| format!("bad star size {k:?}"))?;
                if k == 0 {
                    return Err("a star needs at least one edge".to_string());
                }
                return Ok(DetectPattern::Star(k));
            }
            if let Some(k) = s.strip_prefix("path:") {
                let k: usize = k.parse().map_err(|_| format!("bad path length {k:?}"))?;
                if !(2..=4).contains(&k) {
                    return Err(format!("paths are detected for k in 2..=4, got {k}"));
                }
                return Ok(DetectPattern::Path(k));
            }
            Err(format!(
                "unknown pattern {s:?}, expected star:k|path:k|b4|crown"
            ))
        }
    }
}

fn parse_forbidden(s: &str) -> Result<Forbidden, String> {
    s.parse()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Success,
    NotFound,
    CertificateFail,
    BudgetTruncated,
    UsageError,
    DataError,
}

impl Status {
    fn code(self) -> i32 {
        match self {
            Status::Success => 0,
            Status::NotFound => 1,
            Status::CertificateFail => 2,
            Status::BudgetTruncated => 3,
            Status::UsageError => 64,
            Status::DataError => 65,
        }
    }

    fn word(self) -> &'static str {
        match self {
            Status::Success => "success",
            Status::NotFound => "not-found",
            Status::CertificateFail => "certificate-fail",
            Status::BudgetTruncated => "budget-truncated",
            Status::UsageError => "usage-error",
            Status::DataError => "data-error",
        }
    }
}

struct Outcome {
    status: Status,
    outputs: Vec<String>,
    input_digest: Option<String>,
}

impl Outcome {
    fn status(status: Status) -> Self {
        Outcome {
            status,
            outputs: Vec::new(),
            input_digest: None,
        }
    }

    fn usage(message: &str) -> Self {
        eprintln!("{message}");
        Outcome::status(Status::UsageError)
    }

    fn data(message: &str, input_digest: Option<String>) -> Self {
        eprintln!("{message}");
        Outcome {
            status: Status::DataError,
            outputs: Vec::new(),
            input_digest,
        }
    }
}

#[derive(Serialize)]
struct RunManifest<'a> {
    command: &'a str,
    args: &'a [String],
    input_digest: Option<&'a str>,
    output: &'a [String],
    status: &'a str,
}

/// FNV-1a, 64-bit: stable across runs and platforms, which the default
/// hasher does not guarantee.
fn content_digest(bytes: &[u8]) -> String {
    let mut hash: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x100000001b3);
    }
    format!("fnv1a:{hash:016x}")
}

fn emit_manifest(argv: &[String], outcome: &Outcome) {
    let command = argv
        .iter()
        .skip(1)
        .find(|a| !a.starts_with('-'))
        .map_or("", |s| s.as_str());
    let args: &[String] = if argv.len() > 2 { &argv[2..] } else { &[] };
    let manifest = RunManifest {
        command,
        args,
        input_digest: outcome.input_digest.as_deref(),
        output: &outcome.outputs,
        status: outcome.status.word(),
    };
    match serde_json::to_string(&manifest) {
        Ok(line) => eprintln!("{line}"),
        Err(e) => eprintln!("{{\"status\":\"manifest serialization failed: {e}\"}}"),
    }
}

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let outcome = if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion)
            {
                print!("{e}");
                Outcome::status(Status::Success)
            } else {
                eprintln!("{e}");
                Outcome::status(Status::UsageError)
            };
            emit_manifest(&argv, &outcome);
            std::process::exit(outcome.status.code());
        }
    };
    let outcome = dispatch(cli.command);
    emit_manifest(&argv, &outcome);
    std::process::exit(outcome.status.code());
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Construct { method, param, out } => construct(method, param, out),
        Command::Verify { input } => verify(&input),
        Command::Detect { pattern, input } => detect(pattern, &input),
        Command::Bound { kind, n, r, k } => bound(kind, n, r, k),
        Command::ConstructWitness { kind, n, r, k, out } => construct_witness(kind, n, r, k, out),
        Command::CertifyB4 { input } => certify_b4(&input),
        Command::Search {
            n,
            r,
            forbid,
            node_budget,
            time_budget,
            symmetry,
        } => run_search(n, r, &forbid, node_budget, time_budget, symmetry),
        Command::Probe {
            n,
            r,
            node_budget,
            time_budget,
            symmetry,
        } => run_probe(n, r, node_budget, time_budget, symmetry),
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<(), String> {
    let line = serde_json::to_string(value).map_err(|e| format!("serialization failed: {e}"))?;
    println!("{line}");
    Ok(())
}

/// Reads and parses an .lhg input. The digest is reported even when the
/// content fails validation, so the manifest still identifies the input.
fn read_input(path: &Path) -> (Option<String>, Result<LinearHypergraph, String>) {
    let text = match fs::read_to_string(path) {
        Ok(text) => text,
        Err(e) => return (None, Err(format!("cannot read {}: {e}", path.display()))),
    };
    let digest = content_digest(text.as_bytes());
    match LinearHypergraph::parse(&text) {
        Ok(h) => (Some(digest), Ok(h)),
        Err(e) => (Some(digest), Err(format!("{}: {e}", path.display()))),
    }
}

fn write_lhg(path: &Path, h: &LinearHypergraph, outputs: &mut Vec<String>) -> Result<(), String> {
    fs::write(path, h.serialize()).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    outputs.push(path.display().to_string());
    Ok(())
}

fn construct(method: Method, param: usize, out: Option<PathBuf>) -> Outcome {
    let (label, built) = match method {
        Method::Sts => ("sts", designs::construct_sts(param)),
        Method::Ag => ("ag", designs::construct_affine_plane(param)),
        Method::Pg => ("pg", designs::construct_projective_plane(param)),
    };
    let h = match built {
        Ok(h) => h,
        Err(e) => {
            eprintln!("construct {label}({param}) failed: {e}");
            println!("null");
            return Outcome::status(Status::NotFound);
        }
    };
    if let Err(msg) = print_json(&h) {
        return Outcome::data(&msg, None);
    }
    eprintln!(
        "{label}({param}): {} points, {} blocks, uniformity {}",
        h.n(),
        h.edge_count(),
        h.r()
    );
    let mut outcome = Outcome::status(Status::Success);
    if let Some(path) = out {
        if let Err(msg) = write_lhg(&path, &h, &mut outcome.outputs) {
            return Outcome::data(&msg, None);
        }
    }
    outcome
}

fn verify(input: &Path) -> Outcome {
    let (digest, parsed) = read_input(input);
    let h = match parsed {
        Ok(h) => h,
        Err(msg) => return Outcome::data(&msg, digest),
    };
    let profile = h.degree_profile();
    let report = serde_json::json!({
        "valid": true,
        "n": h.n(),
        "r": h.r(),
        "edges": h.edge_count(),
        "steiner": designs::verify_steiner(&h),
        "min_degree": profile.min,
        "max_degree": profile.max,
    });
    if let Err(msg) = print_json(&report) {
        return Outcome::data(&msg, digest);
    }
    eprintln!(
        "valid: {} vertices, {} edges, degrees {}..{}",
        h.n(),
        h.edge_count(),
        profile.min,
        profile.max
    );
    Outcome {
        status: Status::Success,
        outputs: Vec::new(),
        input_digest: digest,
    }
}

fn detect(pattern: DetectPattern, input: &Path) -> Outcome {
    let (digest, parsed) = read_input(input);
    let h = match parsed {
        Ok(h) => h,
        Err(msg) => return Outcome::data(&msg, digest),
    };
    if matches!(pattern, DetectPattern::Broom4 | DetectPattern::Crown4) && h.r() < 3 {
        return Outcome::data(
            &format!("pattern {pattern:?} needs uniformity at least 3, input has r = {}", h.r()),
            digest,
        );
    }
    let embedding = match pattern {
        DetectPattern::Star(k) => contains_star(&h, k),
        DetectPattern::Path(k) => match contains_path(&h, k) {
            Ok(found) => found,
            Err(e) => return Outcome::data(&format!("{e}"), digest),
        },
        DetectPattern::Broom4 => contains_b4(&h),
        DetectPattern::Crown4 => contains_crown(&h),
    };
    let status = match embedding {
        Some(embedding) => {
            if let Err(msg) = print_json(&embedding) {
                return Outcome::data(&msg, digest);
            }
            eprintln!(
                "found: {} host vertices, {} host edges used",
                embedding.vertex_map.len(),
                embedding.edge_map.len()
            );
            Status::Success
        }
        None => {
            println!("null");
            eprintln!("not found");
            Status::NotFound
        }
    };
    Outcome {
        status,
        outputs: Vec::new(),
        input_digest: digest,
    }
}

fn bound(kind: KindArg, n: usize, r: usize, k: Option<usize>) -> Outcome {
    match bounds::upper_bound(kind.into(), n, r, k) {
        Ok(report) => {
            if let Err(msg) = print_json(&report) {
                return Outcome::data(&msg, None);
            }
            eprintln!(
                "{:?} at n = {n}, r = {r}: {} (floor {})",
                report.statement, report.value, report.floor
            );
            Outcome::status(Status::Success)
        }
        Err(e) => Outcome::usage(&e.to_string()),
    }
}

fn construct_witness(
    kind: WitnessKind,
    n: usize,
    r: usize,
    k: Option<usize>,
    out: Option<PathBuf>,
) -> Outcome {
    let built = match kind {
        WitnessKind::TreeLower => match k {
            Some(k) => bounds::tree_lower_construction(n, r, k),
            None => return Outcome::usage("--k is required for tree-lower"),
        },
        WitnessKind::P4Lower => {
            if k.is_some() {
                return Outcome::usage("--k is not accepted for p4-lower");
            }
            bounds::p4_lower_construction(n, r)
        }
    };
    let report = match built {
        Ok(report) => report,
        Err(e) => {
            eprintln!("construction failed: {e}");
            println!("null");
            return Outcome::status(Status::NotFound);
        }
    };
    if let Err(msg) = print_json(&report) {
        return Outcome::data(&msg, None);
    }
    let witness = report.witness.as_ref().expect("lower constructions carry a witness");
    eprintln!(
        "witness: {} vertices, {} edges, value {}",
        witness.n(),
        witness.edge_count(),
        report.value
    );
    let mut outcome = Outcome::status(Status::Success);
    if let Some(path) = out {
        if let Err(msg) = write_lhg(&path, witness, &mut outcome.outputs) {
            return Outcome::data(&msg, None);
        }
    }
    outcome
}

fn certify_b4(input: &Path) -> Outcome {
    let (digest, parsed) = read_input(input);
    let h = match parsed {
        Ok(h) => h,
        Err(msg) => return Outcome::data(&msg, digest),
    };
    if h.r() < 3 {
        return Outcome::data(
            &format!("certificate needs uniformity at least 3, input has r = {}", h.r()),
            digest,
        );
    }
    let certificate = bounds::verify_b4_extremal(&h);
    if let Err(msg) = print_json(&certificate) {
        return Outcome::data(&msg, digest);
    }
    let status = if certificate.pass {
        eprintln!("certificate: pass");
        Status::Success
    } else {
        eprintln!("certificate: fail ({:?})", certificate.failure);
        Status::CertificateFail
    };
    Outcome {
        status,
        outputs: Vec::new(),
        input_digest: digest,
    }
}

fn search_config(
    node_budget: Option<u64>,
    time_budget: Option<u64>,
    symmetry: Toggle,
) -> Result<SearchConfig, String> {
    let mut cfg = SearchConfig::default();
    cfg.node_budget = node_budget;
    cfg.time_budget = time_budget.map(Duration::from_secs);
    cfg.symmetry = symmetry == Toggle::On;
    cfg.threads = thread_count()?;
    Ok(cfg)
}

fn thread_count() -> Result<usize, String> {
    match std::env::var("HYPERTURAN_THREADS") {
        Ok(raw) => {
            let parsed: Result<usize, _> = raw.trim().parse();
            match parsed {
                Ok(t) if t >= 1 => Ok(t),
                _ => Err(format!(
                    "HYPERTURAN_THREADS must be a positive integer, got {raw:?}"
                )),
            }
        }
        Err(std::env::VarError::NotPresent) => Ok(std::thread::available_parallelism()
            .map(|p| p.get())
            .unwrap_or(1)),
        Err(e) => Err(format!("HYPERTURAN_THREADS: {e}")),
    }
}

fn run_search(
    n: usize,
    r: usize,
    forbid: &[Forbidden],
    node_budget: Option<u64>,
    time_budget: Option<u64>,
    symmetry: Toggle,
) -> Outcome {
    let cfg = match search_config(node_budget, time_budget, symmetry) {
        Ok(cfg) => cfg,
        Err(msg) => return Outcome::usage(&msg),
    };
    match search::exact_linear_turan(n, r, forbid, &cfg) {
        Ok(result) => {
            if let Err(msg) = print_json(&result) {
                return Outcome::data(&msg, None);
            }
            eprintln!(
                "value {} ({}), {} nodes, {:.3}s",
                result.value,
                if result.optimal { "optimal" } else { "truncated" },
                result.nodes,
                result.elapsed
            );
            if result.optimal {
                Outcome::status(Status::Success)
            } else {
                Outcome::status(Status::BudgetTruncated)
            }
        }
        Err(e) => Outcome::usage(&e.to_string()),
    }
}

fn run_probe(
    n: usize,
    r: usize,
    node_budget: Option<u64>,
    time_budget: Option<u64>,
    symmetry: Toggle,
) -> Outcome {
    if r < 3 {
        return Outcome::usage("probe requires r >= 3");
    }
    let cfg = match search_config(node_budget, time_budget, symmetry) {
        Ok(cfg) => cfg,
        Err(msg) => return Outcome::usage(&msg),
    };
    match search::conjecture_probe(n, r, &cfg) {
        Ok(probe) => {
            if let Err(msg) = print_json(&probe) {
                return Outcome::data(&msg, None);
            }
            eprintln!(
                "value {} vs ceiling {}: {}, {}",
                probe.search.value,
                probe.ceiling,
                if probe.consistent { "consistent" } else { "INCONSISTENT" },
                match probe.status {
                    ProbeStatus::Optimal => "optimal",
                    ProbeStatus::Inconclusive => "inconclusive",
                }
            );
            if probe.status == ProbeStatus::Optimal {
                Outcome::status(Status::Success)
            } else {
                Outcome::status(Status::BudgetTruncated)
            }
        }
        Err(e) => Outcome::usage(&e.to_string()),
    }
}
