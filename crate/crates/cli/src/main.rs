//! Command line front end. Every subcommand reads JSON inputs, computes
//! through the library, and assembles its entire stdout in one thread, so
//! identical inputs (and seed) give byte-identical output.
//!
//! Exit codes: 0 everything confirmed / passed, 1 a claim was refuted or
//! obstructed (witness printed), 2 a boundary tie or degenerate input,
//! 3 usage error or malformed input.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::json;

use reebkit::capacities::{self, ObstructionVerdict};
use reebkit::constructions::{
    self, derive_embedding, paper_suite, verify_certificate, Certificate, ClaimVerdict,
    DeriveOptions, SuiteConfig,
};
use reebkit::curves::{self, CurveError, CurveQuery, Verdict};
use reebkit::reeb::{self, SmoothingPolicy};
use reebkit::{Domain, Rat, ReebOrbit};

const EXIT_REFUTED: u8 = 1;
const EXIT_BOUNDARY: u8 = 2;
const EXIT_USAGE: u8 = 3;

/// Recorded in reports; reserved for sampling-based cross-checks.
const DEFAULT_SEED: u64 = 1;

#[derive(Parser)]
#[command(name = "reebkit", version, about = "Exact Reeb-orbit, capacity and embedding computations on toric domains")]
struct Cli {
    /// Output format. Tabular commands default to tsv, report commands to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Seed for sampling-based cross-checks; recorded in reports.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List closed Reeb orbits with action at most a bound.
    Orbits {
        /// Domain description, JSON file.
        domain: PathBuf,
        /// Inclusive action bound, e.g. 5/2.
        #[arg(long, value_parser = parse_rat)]
        action_bound: Rat,
        #[command(flatten)]
        policy: PolicyArgs,
    },
    /// Conley-Zehnder index of one orbit.
    Cz {
        domain: PathBuf,
        /// Orbit label, e.g. "g^2_{1,1}", "g^1*2", "d^3", "g{1,2}_{1,1}".
        #[arg(long)]
        orbit: String,
        #[command(flatten)]
        policy: PolicyArgs,
    },
    /// Holomorphic curve enumeration in a symplectic cap.
    Curves {
        #[command(subcommand)]
        cmd: CurvesCmd,
    },
    /// Ekeland-Hofer capacities.
    Capacity {
        domain: PathBuf,
        /// Largest capacity index to report.
        #[arg(short, long, default_value_t = capacities::DEFAULT_EH_K)]
        k: usize,
    },
    /// Embedding obstructions and certificates.
    Embed {
        #[command(subcommand)]
        cmd: EmbedCmd,
    },
    /// Exhaustive finite case checks.
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
    /// Bundled claim suites.
    Suite {
        #[command(subcommand)]
        cmd: SuiteCmd,
    },
}

#[derive(clap::Args)]
struct PolicyArgs {
    /// Corner smoothing scale; requires --delta.
    #[arg(long, value_parser = parse_rat, requires = "delta")]
    epsilon: Option<Rat>,
    /// Secondary smoothing scale, 0 < delta < epsilon^2.
    #[arg(long, value_parser = parse_rat, requires = "epsilon")]
    delta: Option<Rat>,
}

#[derive(Subcommand)]
enum CurvesCmd {
    /// Enumerate low-degree curve classes in the cap of a polylike domain.
    Enumerate {
        domain: PathBuf,
        /// Cap radius R.
        #[arg(short = 'R', long = "radius", value_parser = parse_rat)]
        r: Rat,
        /// Curve degree in the cap.
        #[arg(long, default_value_t = 1)]
        degree: u32,
        /// Largest symplectic area to keep.
        #[arg(long, value_parser = parse_rat)]
        area_max: Rat,
        /// Smallest symplectic area to keep.
        #[arg(long, value_parser = parse_rat)]
        area_min: Option<Rat>,
        /// Discard classes with virtual index below this.
        #[arg(long, allow_hyphen_values = true)]
        index_min: Option<i64>,
        /// Constrain one negative end to this orbit and report the
        /// constrained index.
        #[arg(long)]
        end: Option<String>,
    },
}

#[derive(Subcommand)]
enum EmbedCmd {
    /// Check capacity and volume obstructions for source into target.
    Check {
        /// Run the obstruction battery (the only check mode).
        #[arg(long, required = true)]
        obstruct: bool,
        source: PathBuf,
        target: PathBuf,
        /// Largest capacity index probed for ellipsoid targets.
        #[arg(short, long, default_value_t = capacities::DEFAULT_EH_K)]
        k: usize,
    },
    /// Search for an embedding certificate and print it.
    Derive {
        source: PathBuf,
        target: PathBuf,
        /// Depth bound for the rule-chain search.
        #[arg(long, default_value_t = constructions::DEFAULT_SEARCH_DEPTH)]
        depth: usize,
        /// Comma-separated axiom ids to disable (E14, MS).
        #[arg(long, value_delimiter = ',')]
        no_axiom: Vec<String>,
        /// Certify an embedding into the open target.
        #[arg(long)]
        open: bool,
    },
    /// Replay a certificate file and validate every recorded step.
    Verify { cert: PathBuf },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Check one finite case analysis over a parameter grid.
    Lemma {
        name: LemmaName,
        /// Grid rows: a JSON file path, or inline JSON starting with [ or {.
        #[arg(long)]
        params: String,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum LemmaName {
    /// Low-area ends are the corner family or all elliptic in a window.
    Con1,
    /// Low-area index >= -1 planes have one of three single ends.
    Con2,
    /// Index ceiling for all-elliptic-end planes.
    Con3,
    /// Exclusions behind compactness of the degree-1 moduli space.
    Compactness,
    /// End-multiplicity solver for polydisk-stable ends.
    PolydiskEnds,
    /// Allowed single ends on a stabilized ellipsoid boundary.
    EllipsoidEnds,
}

#[derive(Subcommand)]
enum SuiteCmd {
    /// Run every bundled claim and certificate check.
    Paper {
        /// Write the full JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Depth bound for certificate searches.
        #[arg(long, default_value_t = constructions::DEFAULT_SEARCH_DEPTH)]
        depth: usize,
        /// Comma-separated axiom ids to disable (E14, MS).
        #[arg(long, value_delimiter = ',')]
        no_axiom: Vec<String>,
    },
}

/// Failures that abort a command. Everything else exits through the
/// verdict-derived code of a completed run.
enum Failure {
    /// Unreadable or malformed input: exit 3, message carries the location.
    Parse(String),
    /// Well-formed input outside a command's domain of definition: exit 2.
    Degenerate(String),
}

struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Output {
        Output { text, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{err}");
                return ExitCode::SUCCESS;
            }
            eprint!("{err}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(Failure::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Degenerate(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_BOUNDARY)
        }
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Orbits { domain, action_bound, policy } => {
            cmd_orbits(domain, action_bound, policy, pick(cli, Format::Tsv))
        }
        Command::Cz { domain, orbit, policy } => {
            cmd_cz(domain, orbit, policy, pick(cli, Format::Tsv))
        }
        Command::Curves { cmd } => match cmd {
            CurvesCmd::Enumerate { domain, r, degree, area_max, area_min, index_min, end } => {
                cmd_curves(
                    domain,
                    r,
                    *degree,
                    area_max,
                    area_min.as_ref(),
                    *index_min,
                    end.as_deref(),
                    pick(cli, Format::Tsv),
                )
            }
        },
        Command::Capacity { domain, k } => cmd_capacity(domain, *k, pick(cli, Format::Tsv)),
        Command::Embed { cmd } => match cmd {
            EmbedCmd::Check { obstruct: _, source, target, k } => {
                cmd_embed_check(source, target, *k, pick(cli, Format::Json))
            }
            EmbedCmd::Derive { source, target, depth, no_axiom, open } => {
                cmd_embed_derive(source, target, *depth, no_axiom, *open, pick(cli, Format::Json))
            }
            EmbedCmd::Verify { cert } => cmd_embed_verify(cert, pick(cli, Format::Json)),
        },
        Command::Verify { cmd } => match cmd {
            VerifyCmd::Lemma { name, params } => {
                cmd_lemma(*name, params, pick(cli, Format::Json))
            }
        },
        Command::Suite { cmd } => match cmd {
            SuiteCmd::Paper { report, depth, no_axiom } => {
                cmd_suite(report.as_deref(), *depth, no_axiom, cli.seed, pick(cli, Format::Tsv))
            }
        },
    }
}

fn pick(cli: &Cli, default: Format) -> Format {
    cli.format.unwrap_or(default)
}

fn parse_rat(s: &str) -> Result<Rat, String> {
    s.parse::<Rat>().map_err(|e| e.to_string())
}

fn parse_orbit(label: &str) -> Result<ReebOrbit, Failure> {
    label
        .parse::<ReebOrbit>()
        .map_err(|e| Failure::Parse(format!("orbit label {label:?}: {e}")))
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn read_domain(path: &Path) -> Result<Domain, Failure> {
    let domain: Domain = read_json(path)?;
    domain
        .validate()
        .map_err(|e| Failure::Degenerate(format!("{}: {e}", path.display())))?;
    Ok(domain)
}

fn smoothing(policy: &PolicyArgs) -> Result<SmoothingPolicy, Failure> {
    let built = match (&policy.epsilon, &policy.delta) {
        (Some(epsilon), Some(delta)) => SmoothingPolicy::ExplicitEpsilon {
            epsilon: epsilon.clone(),
            delta: delta.clone(),
        },
        _ => SmoothingPolicy::InfinitesimalEpsilon,
    };
    built
        .validate()
        .map_err(|e| Failure::Degenerate(e.to_string()))?;
    Ok(built)
}

fn pretty(value: &impl serde::Serialize) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable report");
    text.push('\n');
    text
}

fn cz_cell(cz: Option<&reebkit::CzValue>) -> String {
    match cz {
        Some(v) if v.floor_boundary => format!("{}*", v.value),
        Some(v) => v.value.to_string(),
        None => "-".into(),
    }
}

fn cmd_orbits(
    path: &Path,
    bound: &Rat,
    policy: &PolicyArgs,
    format: Format,
) -> Result<Output, Failure> {
    let domain = read_domain(path)?;
    let policy = smoothing(policy)?;
    let entries = reeb::enumerate_orbits(&domain, bound, &policy)
        .map_err(|e| Failure::Degenerate(e.to_string()))?;
    let text = match format {
        Format::Tsv => {
            let mut text = String::new();
            for e in &entries {
                writeln!(text, "{}\t{}\t{}", e.orbit, e.action, cz_cell(e.cz.as_ref())).unwrap();
            }
            text
        }
        Format::Json => {
            let rows: Vec<_> = entries
                .iter()
                .map(|e| {
                    json!({
                        "orbit": e.orbit.to_string(),
                        "action": e.action,
                        "cz": e.cz,
                        "at_bound": e.at_bound,
                    })
                })
                .collect();
            pretty(&rows)
        }
    };
    Ok(Output::ok(text))
}

fn cmd_cz(
    path: &Path,
    label: &str,
    policy: &PolicyArgs,
    format: Format,
) -> Result<Output, Failure> {
    let domain = read_domain(path)?;
    let policy = smoothing(policy)?;
    let orbit = parse_orbit(label)?;
    let cz = reeb::cz_index(&orbit, &domain, &policy)
        .map_err(|e| Failure::Degenerate(e.to_string()))?;
    let text = match format {
        Format::Tsv => format!("{}\t{}\t{}\n", orbit, cz.value, cz.floor_boundary),
        Format::Json => pretty(&json!({ "orbit": orbit.to_string(), "cz": cz })),
    };
    Ok(Output::ok(text))
}

#[allow(clippy::too_many_arguments)]
fn cmd_curves(
    path: &Path,
    r: &Rat,
    degree: u32,
    area_max: &Rat,
    area_min: Option<&Rat>,
    index_min: Option<i64>,
    end: Option<&str>,
    format: Format,
) -> Result<Output, Failure> {
    let domain = read_domain(path)?;
    let mut query = CurveQuery::new(degree, area_max.clone());
    if let Some(low) = area_min {
        query.area_min = low.clone();
    }
    if let Some(floor) = index_min {
        query.index_min = Some(Rat::int(floor));
    }
    if let Some(label) = end {
        query.constrained_end = Some(parse_orbit(label)?);
    }
    let found = curves::enumerate_cap_curves(&domain, r, &query)
        .map_err(|e| Failure::Degenerate(e.to_string()))?;
    let text = match format {
        Format::Tsv => {
            let mut text = String::new();
            for c in &found {
                let row = c.row();
                writeln!(text, "{}\t{}\t{}\t{}", row.degree, row.ends.join(","), row.area, row.index)
                    .unwrap();
            }
            text
        }
        Format::Json => pretty(&found.iter().map(|c| c.row()).collect::<Vec<_>>()),
    };
    Ok(Output::ok(text))
}

fn cmd_capacity(path: &Path, k_max: usize, format: Format) -> Result<Output, Failure> {
    let domain = read_domain(path)?;
    let rows: Vec<(usize, Rat)> = match &domain {
        Domain::Ellipsoid { .. } => (1..=k_max.max(1))
            .map(|k| capacities::eh_capacity_ellipsoid(&domain, k).map(|v| (k, v)))
            .collect::<Result<_, _>>()
            .map_err(|e| Failure::Degenerate(e.to_string()))?,
        Domain::BallProduct { .. } => {
            let value = capacities::eh2_ball_product(&domain)
                .map_err(|e| Failure::Degenerate(e.to_string()))?;
            vec![(2, value)]
        }
        other => {
            return Err(Failure::Degenerate(format!(
                "capacities are implemented for ellipsoids and ball products, not {}",
                other.kind()
            )))
        }
    };
    let text = match format {
        Format::Tsv => {
            let mut text = String::new();
            for (k, value) in &rows {
                writeln!(text, "{k}\t{value}").unwrap();
            }
            text
        }
        Format::Json => {
            let rows: Vec<_> = rows.iter().map(|(k, v)| json!({ "k": k, "value": v })).collect();
            pretty(&rows)
        }
    };
    Ok(Output::ok(text))
}

fn obstruction_kind_cell(kind: &capacities::ObstructionKind) -> String {
    match kind {
        capacities::ObstructionKind::Capacity { k } => format!("c{k}"),
        capacities::ObstructionKind::Volume => "volume".into(),
    }
}

fn cmd_embed_check(
    source: &Path,
    target: &Path,
    k_max: usize,
    format: Format,
) -> Result<Output, Failure> {
    let src = read_domain(source)?;
    let tgt = read_domain(target)?;
    let report = capacities::obstruct_embedding_with(&src, &tgt, k_max)
        .map_err(|e| Failure::Degenerate(e.to_string()))?;
    let code = match report.verdict {
        ObstructionVerdict::Obstructed => EXIT_REFUTED,
        ObstructionVerdict::Boundary => EXIT_BOUNDARY,
        ObstructionVerdict::Clear => 0,
    };
    if report.obstructed() {
        for row in report.rows.iter().filter(|r| r.verdict == ObstructionVerdict::Obstructed) {
            eprintln!(
                "witness: {} of source is {}, exceeding target {}",
                obstruction_kind_cell(&row.kind),
                row.source_value,
                row.target_value.as_ref().expect("obstructing row has a finite target value"),
            );
        }
    }
    let text = match format {
        Format::Tsv => {
            let mut text = String::new();
            for row in &report.rows {
                let target_cell =
                    row.target_value.as_ref().map_or("inf".to_string(), |v| v.to_string());
                writeln!(
                    text,
                    "{}\t{}\t{}\t{}",
                    obstruction_kind_cell(&row.kind),
                    row.source_value,
                    target_cell,
                    verdict_cell(&row.verdict),
                )
                .unwrap();
            }
            text
        }
        Format::Json => pretty(&report),
    };
    Ok(Output { text, code })
}

fn verdict_cell(v: &ObstructionVerdict) -> &'static str {
    match v {
        ObstructionVerdict::Obstructed => "obstructed",
        ObstructionVerdict::Boundary => "boundary",
        ObstructionVerdict::Clear => "clear",
    }
}

fn axiom_set(ids: &[String]) -> Result<BTreeSet<String>, Failure> {
    let known = [constructions::AXIOM_E14, constructions::AXIOM_MS];
    let mut set = BTreeSet::new();
    for id in ids {
        let id = id.trim();
        if !known.contains(&id) {
            return Err(Failure::Parse(format!(
                "unknown axiom id {id:?}; known ids are E14 and MS"
            )));
        }
        set.insert(id.to_string());
    }
    Ok(set)
}

fn cmd_embed_derive(
    source: &Path,
    target: &Path,
    depth: usize,
    no_axiom: &[String],
    open: bool,
    format: Format,
) -> Result<Output, Failure> {
    let src = read_domain(source)?;
    let tgt = read_domain(target)?;
    let opts = DeriveOptions {
        max_depth: depth,
        open_target: open,
        disabled_axioms: axiom_set(no_axiom)?,
    };
    let found = derive_embedding(&src, &tgt, &opts)
        .map_err(|e| Failure::Degenerate(e.to_string()))?;
    match found {
        Some(cert) => {
            let text = match format {
                Format::Json => pretty(&cert),
                Format::Tsv => {
                    let mut text = String::new();
                    for (i, step) in cert.steps.iter().enumerate() {
                        let margin =
                            step.margin.as_ref().map_or("-".to_string(), |m| m.to_string());
                        writeln!(text, "{}\t{}\t{}", i + 1, margin, step.output.kind()).unwrap();
                    }
                    text
                }
            };
            Ok(Output::ok(text))
        }
        None => {
            eprintln!(
                "witness: no rule chain within depth {depth} embeds the source into the {} target",
                if open { "open" } else { "closed" },
            );
            Ok(Output { text: String::new(), code: EXIT_REFUTED })
        }
    }
}

fn cmd_embed_verify(path: &Path, format: Format) -> Result<Output, Failure> {
    let cert: Certificate = read_json(path)?;
    match verify_certificate(&cert) {
        Ok(()) => {
            let text = match format {
                Format::Json => pretty(&json!({ "verdict": "verified" })),
                Format::Tsv => "verified\n".to_string(),
            };
            Ok(Output::ok(text))
        }
        Err(errors) => {
            for e in &errors {
                eprintln!("witness: {e}");
            }
            let text = match format {
                Format::Json => pretty(&json!({ "verdict": "invalid", "errors": errors })),
                Format::Tsv => {
                    let mut text = String::from("invalid\n");
                    for e in &errors {
                        writeln!(text, "{e}").unwrap();
                    }
                    text
                }
            };
            Ok(Output { text, code: EXIT_REFUTED })
        }
    }
}

#[derive(Deserialize)]
struct PolylikeRow {
    b: Rat,
    tail: Vec<Rat>,
    r: Rat,
}

#[derive(Deserialize)]
struct EndCountRow {
    n: usize,
    elliptic_ends: u32,
}

#[derive(Deserialize)]
struct PolydiskEndRow {
    a: Rat,
    b: Rat,
    eps: Rat,
    r: Rat,
    n: usize,
    #[serde(default = "default_mult_cap")]
    mult_cap: u32,
}

fn default_mult_cap() -> u32 {
    3
}

#[derive(Deserialize)]
struct EllipsoidRow {
    coeffs: Vec<Rat>,
}

/// Accepts a file path or inline JSON, and both a bare array of rows and
/// an object `{"rows": [...]}`.
fn read_rows<T: DeserializeOwned>(params: &str) -> Result<Vec<T>, Failure> {
    let text = if params.trim_start().starts_with(['[', '{']) {
        params.to_string()
    } else {
        fs::read_to_string(params).map_err(|e| Failure::Parse(format!("{params}: {e}")))?
    };
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Failure::Parse(format!("params: {e}")))?;
    let rows = match value {
        serde_json::Value::Object(mut map) => map
            .remove("rows")
            .ok_or_else(|| Failure::Parse("params object lacks a \"rows\" array".into()))?,
        other => other,
    };
    serde_json::from_value(rows).map_err(|e| Failure::Parse(format!("params: {e}")))
}

/// Highest-priority exit code across grid rows: any refutation wins, then
/// any boundary tie, then success.
fn fold_code(acc: u8, row: u8) -> u8 {
    let rank = |c: u8| match c {
        EXIT_REFUTED => 2,
        EXIT_BOUNDARY => 1,
        _ => 0,
    };
    if rank(row) > rank(acc) {
        row
    } else {
        acc
    }
}

struct LemmaRow {
    json: serde_json::Value,
    tsv: String,
    code: u8,
}

fn verdict_row(i: usize, verdict: &Verdict) -> (String, u8) {
    match verdict {
        Verdict::Confirmed => (format!("{i}\tconfirmed\t-"), 0),
        Verdict::Refuted { witness } => {
            eprintln!("witness: row {i}: {witness}");
            (format!("{i}\trefuted\t{witness}"), EXIT_REFUTED)
        }
        Verdict::BoundaryAmbiguous { witnesses } => {
            let first = witnesses.first().cloned().unwrap_or_default();
            (format!("{i}\tboundary_ambiguous\t{first}"), EXIT_BOUNDARY)
        }
    }
}

fn case_row(
    i: usize,
    result: Result<curves::CaseReport, CurveError>,
) -> Result<LemmaRow, Failure> {
    match result {
        Ok(report) => {
            let (tsv, code) = verdict_row(i, &report.verdict);
            Ok(LemmaRow { json: json!({ "row": i, "report": report }), tsv, code })
        }
        Err(CurveError::HypothesisViolated { failed }) => Ok(LemmaRow {
            json: json!({ "row": i, "hypothesis_violated": failed }),
            tsv: format!("{i}\thypothesis_violated\t{}", failed.join("; ")),
            code: EXIT_BOUNDARY,
        }),
        Err(e) => Err(Failure::Degenerate(format!("row {i}: {e}"))),
    }
}

fn cmd_lemma(name: LemmaName, params: &str, format: Format) -> Result<Output, Failure> {
    let mut rows: Vec<LemmaRow> = Vec::new();
    match name {
        LemmaName::Con1 => {
            for (i, row) in read_rows::<PolylikeRow>(params)?.into_iter().enumerate() {
                let result = curves::check_low_area_end_species(&row.b, &row.tail, &row.r);
                rows.push(case_row(i, result)?);
            }
        }
        LemmaName::Con2 => {
            let grid: Vec<(Rat, Vec<Rat>, Rat)> = read_rows::<PolylikeRow>(params)?
                .into_iter()
                .map(|row| (row.b, row.tail, row.r))
                .collect();
            for (i, result) in curves::plane_classification_grid(&grid).into_iter().enumerate() {
                rows.push(case_row(i, result)?);
            }
        }
        LemmaName::Compactness => {
            for (i, row) in read_rows::<PolylikeRow>(params)?.into_iter().enumerate() {
                let result = curves::compactness_exclusions(&row.b, &row.tail, &row.r);
                rows.push(case_row(i, result)?);
            }
        }
        LemmaName::Con3 => {
            for (i, row) in read_rows::<EndCountRow>(params)?.into_iter().enumerate() {
                match curves::elliptic_end_index_bound(row.n, row.elliptic_ends) {
                    Ok(bound) => {
                        // The claim: two or more elliptic ends force the
                        // ceiling below -1; zero or one never do.
                        let verdict = if bound.allowed == (row.elliptic_ends <= 1) {
                            Verdict::Confirmed
                        } else {
                            Verdict::Refuted {
                                witness: format!(
                                    "n={} with {} elliptic ends has index ceiling {}",
                                    row.n, row.elliptic_ends, bound.bound
                                ),
                            }
                        };
                        let (tsv, code) = verdict_row(i, &verdict);
                        rows.push(LemmaRow {
                            json: json!({
                                "row": i,
                                "n": row.n,
                                "elliptic_ends": row.elliptic_ends,
                                "bound": bound,
                                "verdict": verdict,
                            }),
                            tsv,
                            code,
                        });
                    }
                    Err(CurveError::HypothesisViolated { failed }) => rows.push(LemmaRow {
                        json: json!({ "row": i, "hypothesis_violated": failed }),
                        tsv: format!("{i}\thypothesis_violated\t{}", failed.join("; ")),
                        code: EXIT_BOUNDARY,
                    }),
                    Err(e) => return Err(Failure::Degenerate(format!("row {i}: {e}"))),
                }
            }
        }
        LemmaName::PolydiskEnds => {
            for (i, row) in read_rows::<PolydiskEndRow>(params)?.into_iter().enumerate() {
                match curves::polydisk_end_solver(
                    &row.a, &row.b, &row.eps, &row.r, row.n, row.mult_cap,
                ) {
                    Ok(report) => {
                        let (tsv, code) = verdict_row(i, &report.verdict);
                        rows.push(LemmaRow { json: json!({ "row": i, "report": report }), tsv, code });
                    }
                    Err(CurveError::HypothesisViolated { failed }) => rows.push(LemmaRow {
                        json: json!({ "row": i, "hypothesis_violated": failed }),
                        tsv: format!("{i}\thypothesis_violated\t{}", failed.join("; ")),
                        code: EXIT_BOUNDARY,
                    }),
                    Err(e) => return Err(Failure::Degenerate(format!("row {i}: {e}"))),
                }
            }
        }
        LemmaName::EllipsoidEnds => {
            for (i, row) in read_rows::<EllipsoidRow>(params)?.into_iter().enumerate() {
                let domain = Domain::ellipsoid(row.coeffs)
                    .map_err(|e| Failure::Degenerate(format!("row {i}: {e}")))?;
                let report = curves::ellipsoid_end_analysis(&domain)
                    .map_err(|e| Failure::Degenerate(format!("row {i}: {e}")))?;
                // A tie 2c1 = c2 makes the minimum-action threshold
                // degenerate; everything else is a completed analysis.
                let code = if report.boundary { EXIT_BOUNDARY } else { 0 };
                let labels: Vec<String> =
                    report.allowed.iter().map(|r| r.orbit.clone()).collect();
                let tsv = format!(
                    "{i}\t{}\t{}",
                    if report.boundary { "boundary_ambiguous" } else { "confirmed" },
                    labels.join(","),
                );
                rows.push(LemmaRow { json: json!({ "row": i, "report": report }), tsv, code });
            }
        }
    }
    let code = rows.iter().map(|r| r.code).fold(0, fold_code);
    let text = match format {
        Format::Json => {
            pretty(&rows.iter().map(|r| &r.json).collect::<Vec<_>>())
        }
        Format::Tsv => {
            let mut text = String::new();
            for row in &rows {
                writeln!(text, "{}", row.tsv).unwrap();
            }
            text
        }
    };
    Ok(Output { text, code })
}

fn claim_verdict_cell(v: ClaimVerdict) -> &'static str {
    match v {
        ClaimVerdict::Pass => "PASS",
        ClaimVerdict::Fail => "FAIL",
        ClaimVerdict::Boundary => "BOUNDARY",
        ClaimVerdict::Axiom => "AXIOM",
        ClaimVerdict::Notice => "NOTICE",
    }
}

fn cmd_suite(
    report_path: Option<&Path>,
    depth: usize,
    no_axiom: &[String],
    seed: u64,
    format: Format,
) -> Result<Output, Failure> {
    let config = SuiteConfig {
        disabled_axioms: axiom_set(no_axiom)?,
        depth,
        ..SuiteConfig::default()
    };
    let report = paper_suite(&config).map_err(|e| Failure::Degenerate(e.to_string()))?;
    for row in &report.rows {
        if row.verdict == ClaimVerdict::Fail {
            let detail = row.notes.first().map(String::as_str).unwrap_or("no notes");
            eprintln!("witness: claim {} ({}): {detail}", row.id, row.anchor);
        }
    }
    let full = json!({
        "seed": seed,
        "rows": report.rows,
        "certificates": report.certificates,
    });
    if let Some(path) = report_path {
        fs::write(path, pretty(&full))
            .map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    }
    let code = if report.all_hold() { 0 } else { EXIT_REFUTED };
    let text = match format {
        Format::Json => pretty(&full),
        Format::Tsv => {
            let mut text = String::new();
            for row in &report.rows {
                writeln!(
                    text,
                    "{}\t{}\t{}\t{}",
                    row.id,
                    row.anchor,
                    claim_verdict_cell(row.verdict),
                    if row.machine_checked { "machine" } else { "analytic" },
                )
                .unwrap();
            }
            writeln!(text, "# certificates verified: {}", report.certificates.len()).unwrap();
            text
        }
    };
    Ok(Output { text, code })
}
