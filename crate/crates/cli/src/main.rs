//! `recolor`: command-line front end for planar-recolor.
//!
//! Every subcommand writes one JSON document to stdout and diagnostics to
//! stderr. Exit codes: 0 success, 1 invalid input or sequence, 2 valid but
//! not k-good, 3 no configuration found, 4 theorem-violation fault, 5 budget
//! or cap exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use planar_recolor::catalog::{
    all_embeddings, builtin_catalog, match_configuration, verify_certificate, ConfigurationPattern,
};
use planar_recolor::discharging::{audit, Charge};
use planar_recolor::gen::{gen_instance, gen_triangulation};
use planar_recolor::io::{parse, parse_sequence, to_json, GraphFile};
use planar_recolor::oracle::{bfs_shortest_sequence, diameter, Diameter, ReconfigurationGraph, DEFAULT_CAP};
use planar_recolor::{is_k_good, recolor_planar, validate_sequence, Coloring, Error, ListAssignment, PlaneGraph};

const SEED_VAR: &str = "RECOLOR_SEED";

#[derive(Parser)]
#[command(name = "recolor", version, about = "Recoloring sequences for list-colored plane graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a k-good recoloring sequence between two list-colorings.
    Recolor(RecolorArgs),
    /// Check a sequence for validity and k-goodness.
    Verify(VerifyArgs),
    /// Exhaustive search over the reconfiguration graph of a small instance.
    Oracle(OracleArgs),
    /// Look for a catalog configuration in a graph.
    Detect(DetectArgs),
    /// Run the charge rules and the happiness audit.
    Discharge(DischargeArgs),
    /// Generate a random triangulation, optionally with lists and colorings.
    Gen(GenArgs),
    /// Check every catalog certificate and plan at a given k.
    CatalogCheck(CatalogArgs),
}

#[derive(Args)]
struct Instance {
    /// Graph file (JSON with `n` and `rotation`, optionally `lists`, `alpha`, `beta`).
    #[arg(long)]
    graph: PathBuf,
    /// List assignment: a path or inline JSON. Defaults to the graph file's lists.
    #[arg(long)]
    lists: Option<String>,
}

#[derive(Args)]
struct RecolorArgs {
    #[command(flatten)]
    instance: Instance,
    /// Start coloring: `alpha`, `beta`, a path or inline JSON.
    #[arg(long, default_value = "alpha")]
    from: String,
    /// Target coloring, same forms as `--from`.
    #[arg(long, default_value = "beta")]
    to: String,
    #[arg(long, default_value_t = planar_recolor::DEFAULT_K)]
    k: u64,
    /// Write the sequence here instead of embedding it in the report.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    instance: Instance,
    /// Sequence file: a path or inline JSON.
    #[arg(long)]
    seq: String,
    /// Expected final coloring: `alpha`, `beta`, a path or inline JSON.
    #[arg(long, default_value = "beta")]
    target: String,
    #[arg(long, default_value_t = planar_recolor::DEFAULT_K)]
    k: u64,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    instance: Instance,
    #[arg(long)]
    from: Option<String>,
    #[arg(long)]
    to: Option<String>,
    /// Report the diameter of the reconfiguration graph.
    #[arg(long)]
    diameter: bool,
    /// Largest number of colorings to enumerate.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u64,
}

#[derive(Args)]
struct DetectArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Report every entry that embeds, not just the first.
    #[arg(long)]
    all: bool,
}

#[derive(Args)]
struct DischargeArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Include the charge table after every rule.
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct GenArgs {
    /// Number of vertices.
    #[arg(long)]
    n: usize,
    /// Overridden by the RECOLOR_SEED environment variable.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(3..=5))]
    min_degree: u64,
    /// Also draw random lists of this size and two proper colorings.
    #[arg(long)]
    list_size: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CatalogArgs {
    /// Catalog file; defaults to the built-in catalog.
    #[arg(long)]
    catalog: Option<PathBuf>,
    #[arg(long, default_value_t = planar_recolor::DEFAULT_K)]
    k: u64,
}

/// What a subcommand prints and how it exits.
struct Outcome {
    report: Value,
    code: u8,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Outcome { report, code: 0 }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Inline JSON if the argument starts like JSON, otherwise a file path.
fn inline_or_file(arg: &str) -> Result<String> {
    let t = arg.trim_start();
    if t.starts_with('[') || t.starts_with('{') {
        Ok(arg.to_owned())
    } else {
        read(Path::new(arg))
    }
}

struct Loaded {
    file: GraphFile,
    graph: PlaneGraph,
    lists: ListAssignment,
}

fn load_graph(path: &Path) -> Result<(GraphFile, PlaneGraph)> {
    let file = GraphFile::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    let graph = file.graph()?;
    Ok((file, graph))
}

fn load_instance(inst: &Instance) -> Result<Loaded> {
    let (file, graph) = load_graph(&inst.graph)?;
    let lists = match &inst.lists {
        Some(arg) => parse::<ListAssignment>(&inline_or_file(arg)?).context("parsing lists")?,
        None => file.lists.clone().context("no --lists given and the graph file has none")?,
    };
    if lists.len() != graph.n() {
        bail!(Error::LengthMismatch { what: "lists", expected: graph.n(), got: lists.len() });
    }
    Ok(Loaded { file, graph, lists })
}

fn coloring_arg(arg: &str, file: &GraphFile) -> Result<Coloring> {
    let named = match arg {
        "alpha" => Some(&file.alpha),
        "beta" => Some(&file.beta),
        _ => None,
    };
    match named {
        Some(c) => c.clone().with_context(|| format!("graph file has no `{arg}` coloring")),
        None => Ok(parse(&inline_or_file(arg)?).with_context(|| format!("parsing coloring {arg}"))?),
    }
}

fn recolor(a: &RecolorArgs) -> Result<Outcome> {
    let inst = load_instance(&a.instance)?;
    let from = coloring_arg(&a.from, &inst.file)?;
    let to = coloring_arg(&a.to, &inst.file)?;
    let trace = recolor_planar(&inst.graph, &inst.lists, &from, &to, a.k)?;
    let report = validate_sequence(&inst.graph, &inst.lists, &trace.produced, &to);
    if !report.valid {
        bail!("internal error: produced sequence fails validation: {:?}", report.violation);
    }
    let reductions: Vec<Value> =
        trace.reductions.iter().filter_map(|r| r.id.as_ref().map(|id| json!({ "id": id, "image": r.image }))).collect();
    let mut out = json!({
        "k": a.k,
        "k_good": is_k_good(&report, a.k as usize),
        "length": trace.produced.len(),
        "max_count": trace.max_count(),
        "n": inst.graph.n(),
        "reductions": reductions,
    });
    match &a.out {
        Some(path) => {
            fs::write(path, to_json(&trace.produced)).with_context(|| format!("writing {}", path.display()))?;
            out["out"] = json!(path.display().to_string());
        }
        None => out["sequence"] = serde_json::to_value(&trace.produced)?,
    }
    Ok(Outcome::ok(out))
}

fn verify(a: &VerifyArgs) -> Result<Outcome> {
    let inst = load_instance(&a.instance)?;
    let seq = parse_sequence(&inline_or_file(&a.seq)?).context("parsing sequence")?;
    let target = coloring_arg(&a.target, &inst.file)?;
    let report = validate_sequence(&inst.graph, &inst.lists, &seq, &target);
    let k_good = report.valid && is_k_good(&report, a.k as usize);
    let code = match (report.valid, k_good) {
        (false, _) => 1,
        (true, false) => 2,
        (true, true) => 0,
    };
    let out = json!({
        "first_bad_step": report.first_bad_step(),
        "k": a.k,
        "k_good": k_good,
        "length": report.length,
        "max_count": report.max_count(),
        "valid": report.valid,
        "violation": report.violation,
    });
    Ok(Outcome { report: out, code })
}

fn oracle(a: &OracleArgs) -> Result<Outcome> {
    let inst = load_instance(&a.instance)?;
    let rg = ReconfigurationGraph::build(&inst.graph, &inst.lists, a.cap)?;
    let mut out = json!({ "nodes": rg.node_count(), "edges": rg.edge_count() });
    if a.diameter {
        out["diameter"] = match diameter(&rg) {
            Diameter::Finite(d) => json!(d),
            Diameter::Infinite => json!("infinite"),
        };
    }
    match (&a.from, &a.to) {
        (Some(from), Some(to)) => {
            let from = coloring_arg(from, &inst.file)?;
            let to = coloring_arg(to, &inst.file)?;
            let path = bfs_shortest_sequence(&rg, &from, &to).context("endpoints must be proper colorings")?;
            out["reachable"] = json!(path.is_some());
            if let Some(seq) = path {
                out["distance"] = json!(seq.len());
                out["sequence"] = serde_json::to_value(&seq)?;
            }
        }
        (None, None) if a.diameter => {}
        _ => bail!("give both --from and --to, or --diameter"),
    }
    Ok(Outcome::ok(out))
}

fn embedding_json(p: &ConfigurationPattern, image: &[usize]) -> Value {
    json!({ "id": p.id, "image": image })
}

fn detect(a: &DetectArgs) -> Result<Outcome> {
    let (_, g) = load_graph(&a.graph)?;
    let catalog = builtin_catalog();
    let found: Vec<Value> = if a.all {
        catalog
            .iter()
            .filter_map(|p| all_embeddings(&g, p).into_iter().next().map(|img| embedding_json(p, &img)))
            .collect()
    } else {
        match_configuration(&g, catalog).map(|m| json!({ "id": m.id, "image": m.image })).into_iter().collect()
    };
    let code = if found.is_empty() { 3 } else { 0 };
    let out =
        if a.all { json!({ "matches": found }) } else { found.into_iter().next().unwrap_or(json!({ "id": null })) };
    Ok(Outcome { report: out, code })
}

fn fraction(c: &Charge) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

fn discharge(a: &DischargeArgs) -> Result<Outcome> {
    let (_, g) = load_graph(&a.graph)?;
    let rep = audit(&g)?;
    let last = rep.stages.last().expect("audit keeps every stage");
    let mut out = json!({
        "fault": rep.fault,
        "final": last.charge.iter().map(fraction).collect::<Vec<_>>(),
        "matched": rep.matched,
        "total": fraction(&last.total()),
        "unhappy": rep.unhappy,
    });
    if a.trace {
        let stages: Vec<Value> = rep
            .stages
            .iter()
            .map(|s| json!({ "stage": s.stage, "charges": s.charge.iter().map(fraction).collect::<Vec<_>>(), "total": fraction(&s.total()) }))
            .collect();
        out["stages"] = json!(stages);
    }
    Ok(Outcome { report: out, code: if rep.fault { 4 } else { 0 } })
}

fn seed_override(flag: u64) -> Result<u64> {
    match std::env::var(SEED_VAR) {
        Ok(s) => s.trim().parse().with_context(|| format!("{SEED_VAR}={s:?} is not an integer")),
        Err(_) => Ok(flag),
    }
}

fn generate(a: &GenArgs) -> Result<Outcome> {
    let seed = seed_override(a.seed)?;
    let g = gen_triangulation(a.n, seed, a.min_degree as usize)?;
    let file = match a.list_size {
        Some(size) => gen_instance(&g, size, seed)?.to_file(),
        None => GraphFile { seed: Some(seed), ..GraphFile::from_graph(&g) },
    };
    match &a.out {
        Some(path) => {
            fs::write(path, to_json(&file)).with_context(|| format!("writing {}", path.display()))?;
            Ok(Outcome::ok(json!({ "n": g.n(), "out": path.display().to_string(), "seed": seed })))
        }
        None => Ok(Outcome::ok(serde_json::to_value(&file)?)),
    }
}

fn catalog_check(a: &CatalogArgs) -> Result<Outcome> {
    let owned;
    let entries: &[ConfigurationPattern] = match &a.catalog {
        Some(path) => {
            owned = parse::<Vec<ConfigurationPattern>>(&read(path)?).context("parsing catalog")?;
            &owned
        }
        None => builtin_catalog(),
    };
    let mut rows = Vec::new();
    let mut all_close = true;
    for e in entries {
        let structure = e.validate().err().map(|err| err.to_string());
        let plan = e.plan();
        let plan_closes = plan.as_ref().is_some_and(|p| p.validate().is_ok() && p.closes(a.k));
        let cert = e.certificate();
        let cert_report = cert.as_ref().map(|c| verify_certificate(c, a.k));
        let cert_closes = cert_report.as_ref().is_none_or(|r| r.is_ok());
        let closes = plan_closes && cert_closes;
        all_close &= closes;
        rows.push(json!({
            "certificate_min_k": cert.as_ref().and_then(|c| c.min_k()),
            "closes": closes,
            "error": structure,
            "id": e.id,
            "plan_min_k": plan.as_ref().and_then(|p| p.min_k()),
        }));
    }
    let out = json!({ "all_close": all_close, "count": entries.len(), "entries": rows, "k": a.k });
    Ok(Outcome { report: out, code: if all_close { 0 } else { 1 } })
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::TheoremViolation { .. }) => 4,
        Some(Error::CapExceeded { .. } | Error::GenBudget { .. }) => 5,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Recolor(a) => recolor(a),
        Command::Verify(a) => verify(a),
        Command::Oracle(a) => oracle(a),
        Command::Detect(a) => detect(a),
        Command::Discharge(a) => discharge(a),
        Command::Gen(a) => generate(a),
        Command::CatalogCheck(a) => catalog_check(a),
    };
    match result {
        Ok(Outcome { report, code }) => {
            println!("{}", to_json(&report));
            ExitCode::from(code)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
