//! `kneser`: generate, check and measure families of k-sets.
//!
//! Results go to stdout as JSON (or the family file, for `gen`); prose goes
//! to stderr. Exit status: 0 on success, 2 when a forbidden copy or failed
//! criterion is found, 1 on usage and input errors.

mod report;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use kneser_core::bounds::{self, BoundTag};
use kneser_core::constructions::{compose_chi3, ConstructionKind, ConstructionSpec};
use kneser_core::format::{self, FamilyJson};
use kneser_core::invariants::{ell_with, EllConfig};
use kneser_core::search::{self, SearchProblem, SideConstraint};
use kneser_core::verify::{self, VerifyConfig};
use kneser_core::{
    bipartite_classes, chromatic_profile, contains_subgraph, induced_kneser_graph, Error, Family,
    PatternGraph,
};
use serde_json::{json, Value};

use report::{InputDigest, RunReport, SCHEMA, VERSION};

#[derive(Parser)]
#[command(
    name = "kneser",
    version,
    about = "Forbidden subgraphs of Kneser graphs"
)]
struct Cli {
    /// Wrap the result in a RunReport envelope.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a named construction.
    Gen(GenArgs),
    /// Look for a copy of a pattern in a family's disjointness graph.
    Check(CheckArgs),
    /// Fewest members whose removal leaves no t pairwise disjoint sets.
    Ell(EllArgs),
    /// Chromatic number, smallest colour class and bipartite classes of a pattern.
    Eta(EtaArgs),
    /// Evaluate a closed-form bound.
    Bound(BoundArgs),
    /// Largest pattern-free family of K(n,k) by branch and bound.
    Search(SearchArgs),
    /// Run the acceptance grid.
    Verify(VerifyArgs),
    /// Print the JSON schema of `--json` reports.
    Schema,
}

#[derive(Clone, Copy, ValueEnum)]
enum FileFormat {
    Text,
    Json,
}

#[derive(clap::Args)]
struct GenArgs {
    /// hm-star, f-st, f-multi, g6, g2s, g2s-plus, or chi3 (compose a base family)
    #[arg(long)]
    kind: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    /// Part sizes for f-multi, e.g. `2,2,1`.
    #[arg(long, value_delimiter = ',')]
    parts: Vec<usize>,
    /// Base family file for chi3.
    #[arg(long)]
    base: Option<PathBuf>,
    /// Chromatic number for chi3.
    #[arg(long)]
    chi: Option<usize>,
    /// Write the family here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: FileFormat,
}

#[derive(clap::Args)]
struct CheckArgs {
    /// Family file (text or JSON); `-` reads stdin.
    family: PathBuf,
    #[arg(long)]
    pattern: PatternGraph,
}

#[derive(clap::Args)]
struct EllArgs {
    family: PathBuf,
    #[arg(long, default_value_t = 2)]
    t: usize,
    /// Node limit for the exact solver.
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(clap::Args)]
struct EtaArgs {
    #[arg(long)]
    pattern: PatternGraph,
}

#[derive(clap::Args)]
struct BoundArgs {
    /// at, hm, stabst, stabmulti, cycle6, cycles, easy-lemma, bbn, bs or kst.
    #[arg(long)]
    name: BoundTag,
    /// `key=value` pairs, e.g. `n=9 k=3`.
    #[arg(long, num_args = 0.., value_parser = parse_param)]
    params: Vec<(String, String)>,
}

#[derive(clap::Args)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    pattern: PatternGraph,
    /// Require an empty common intersection.
    #[arg(long, conflicts_with = "min_ell")]
    no_common_element: bool,
    /// Require ell_t >= s, written `t:s`.
    #[arg(long)]
    min_ell: Option<SideConstraint>,
    #[arg(long, default_value_t = search::DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Criterion number or row tag (sizes, freeness, ell, search, oracle, bbn,
    /// invariants, identities, stab, multi, cycles, hm).
    #[arg(long)]
    filter: Option<String>,
    #[arg(long, default_value_t = verify::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, hide = true)]
    inject_fault: Option<verify::Fault>,
}

fn parse_param(s: &str) -> Result<(String, String), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected key=value, got `{s}`"))?;
    Ok((k.trim().to_string(), v.trim().to_string()))
}

/// What a command produced: the JSON payload, optional plain stdout text
/// replacing it, a line for stderr, and the exit status.
struct Output {
    results: Value,
    plain: Option<String>,
    note: Option<String>,
    code: u8,
}

impl Output {
    fn json(results: Value) -> Self {
        Output {
            results,
            plain: None,
            note: None,
            code: 0,
        }
    }
}

struct Inputs {
    digest: InputDigest,
}

impl Inputs {
    fn read(&mut self, path: &Path) -> anyhow::Result<String> {
        let text = if path.as_os_str() == "-" {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .context("reading stdin")?;
            s
        } else {
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
        };
        self.digest.add_input(text.as_bytes());
        Ok(text)
    }

    fn family(&mut self, path: &Path) -> anyhow::Result<Family> {
        let text = self.read(path)?;
        format::parse_family(&text).with_context(|| format!("parsing {}", path.display()))
    }
}

fn cmd_gen(args: &GenArgs, inputs: &mut Inputs) -> anyhow::Result<Output> {
    let (family, expected, notes, label) = if args.kind == "chi3" {
        let base_path = args.base.as_ref().context("chi3 needs --base")?;
        let chi = args.chi.context("chi3 needs --chi")?;
        let base = inputs.family(base_path)?;
        let f = compose_chi3(&base, chi, args.n)?;
        (f, None, "", format!("chi3 n={} chi={chi}", args.n))
    } else {
        let kind: ConstructionKind = args.kind.parse()?;
        let k = args.k.context("--k is required")?;
        let mut spec = ConstructionSpec::new(kind, args.n, k).with_parts(&args.parts);
        spec.s = args.s;
        spec.t = args.t;
        let f = spec.generate()?;
        let expected = spec.expected_size()?;
        (
            f,
            Some(expected),
            spec.notes(),
            format!("{kind} n={} k={k}", args.n),
        )
    };
    let size = family.len();
    let mut results = json!({
        "kind": args.kind,
        "n": family.n(),
        "k": family.k(),
        "size": size,
    });
    if let Some(e) = &expected {
        results["expected"] = Value::String(e.to_string());
    }
    if let Some(s) = args.s {
        results["s"] = s.into();
    }
    if let Some(t) = args.t {
        results["t"] = t.into();
    }
    if !args.parts.is_empty() {
        results["parts"] = json!(args.parts);
    }
    if !notes.is_empty() {
        results["notes"] = notes.into();
    }
    let body = match args.format {
        FileFormat::Text => format::to_text(&family),
        FileFormat::Json => format::to_json(&family) + "\n",
    };
    let plain = match &args.out {
        Some(path) => {
            fs::write(path, &body).with_context(|| format!("writing {}", path.display()))?;
            results["out"] = path.display().to_string().into();
            None
        }
        None => {
            results["family"] = serde_json::to_value(FamilyJson::from(&family))?;
            Some(body)
        }
    };
    let note = match &expected {
        Some(e) => format!("{label}: {size} sets (expected {e})"),
        None => format!("{label}: {size} sets"),
    };
    Ok(Output {
        results,
        plain,
        note: Some(note),
        code: 0,
    })
}

fn cmd_check(args: &CheckArgs, inputs: &mut Inputs) -> anyhow::Result<Output> {
    let family = inputs.family(&args.family)?;
    let g = induced_kneser_graph(&family);
    let found = match contains_subgraph(&g, &args.pattern) {
        Ok(w) => w,
        Err(Error::PatternLargerThanHost { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    Ok(match found {
        None => Output {
            results: json!({ "pattern": args.pattern.to_string(), "free": true }),
            plain: None,
            note: Some("free".into()),
            code: 0,
        },
        Some(w) => {
            let sets: Vec<Vec<usize>> = w.mapping.iter().map(|&v| g.label(v).elements()).collect();
            Output {
                results: json!({
                    "pattern": args.pattern.to_string(),
                    "free": false,
                    "witness": w.mapping,
                    "sets": sets,
                }),
                plain: None,
                note: Some(format!("{} found", args.pattern)),
                code: 2,
            }
        }
    })
}

fn cmd_ell(args: &EllArgs, inputs: &mut Inputs) -> anyhow::Result<Output> {
    let family = inputs.family(&args.family)?;
    let mut config = EllConfig::default();
    if let Some(b) = args.budget {
        config.node_budget = b;
    }
    let r = ell_with(&family, args.t, config)?;
    Ok(Output::json(
        json!({ "value": r.value, "witness": r.witness }),
    ))
}

fn cmd_eta(args: &EtaArgs) -> anyhow::Result<Output> {
    let p = &args.pattern;
    let prof = chromatic_profile(p)?;
    let mut results = json!({
        "pattern": p.to_string(),
        "chi": prof.chi,
        "eta": prof.eta,
        "coloring": prof.coloring,
    });
    if prof.chi >= 3 {
        let classes = bipartite_classes(p)?;
        let names =
            |list: &[PatternGraph]| -> Vec<String> { list.iter().map(|b| b.to_string()).collect() };
        results["bipartite_classes"] = json!(names(&classes.all));
        results["eta_classes"] = json!(names(&classes.eta_matched));
    }
    Ok(Output::json(results))
}

fn cmd_bound(args: &BoundArgs) -> anyhow::Result<Output> {
    let value = bounds::evaluate(args.name, &args.params)?;
    Ok(Output::json(serde_json::to_value(value)?))
}

fn cmd_search(args: &SearchArgs) -> anyhow::Result<Output> {
    let side = if args.no_common_element {
        SideConstraint::NoCommonElement
    } else {
        args.min_ell.unwrap_or(SideConstraint::None)
    };
    let problem = SearchProblem::new(args.n, args.k, args.pattern.clone())
        .with_side(side)
        .with_budget(args.budget);
    let outcome = search::max_f_free(&problem)?;
    let note = format!(
        "optimum {} ({:?}, {} nodes)",
        outcome.optimum, outcome.status, outcome.nodes
    );
    let mut out = Output::json(serde_json::to_value(&outcome)?);
    out.note = Some(note);
    Ok(out)
}

fn cmd_verify(args: &VerifyArgs) -> anyhow::Result<Output> {
    let report = verify::run(VerifyConfig {
        filter: args.filter.clone(),
        seed: args.seed,
        fault: args.inject_fault,
    });
    if report.criteria.is_empty() {
        bail!(
            "filter {:?} matches no rows",
            args.filter.as_deref().unwrap_or("")
        );
    }
    let passed = report.passed();
    Ok(Output {
        results: serde_json::to_value(&report)?,
        plain: Some(report.table()),
        note: Some(
            if passed {
                "all criteria pass"
            } else {
                "some criteria fail"
            }
            .into(),
        ),
        code: if passed { 0 } else { 2 },
    })
}

fn run(cli: &Cli, inputs: &mut Inputs) -> anyhow::Result<Output> {
    match &cli.command {
        Command::Gen(a) => cmd_gen(a, inputs),
        Command::Check(a) => cmd_check(a, inputs),
        Command::Ell(a) => cmd_ell(a, inputs),
        Command::Eta(a) => cmd_eta(a),
        Command::Bound(a) => cmd_bound(a),
        Command::Search(a) => cmd_search(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Schema => Ok(Output {
            results: serde_json::from_str(SCHEMA)?,
            plain: Some(SCHEMA.to_string()),
            note: None,
            code: 0,
        }),
    }
}

fn emit(text: &str) -> ExitCode {
    let mut stdout = io::stdout().lock();
    if stdout
        .write_all(text.as_bytes())
        .and_then(|_| stdout.flush())
        .is_err()
    {
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut inputs = Inputs {
        digest: InputDigest::default(),
    };
    inputs.digest.add_args(&argv[1..]);
    let start = Instant::now();
    let output = match run(&cli, &mut inputs) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    if let Some(note) = &output.note {
        eprintln!("{note}");
    }
    let status = if cli.json {
        let report = RunReport {
            command: argv[1..].to_vec(),
            inputs_digest: inputs.digest.finish(),
            results: output.results,
            timing_ms: start.elapsed().as_secs_f64() * 1e3,
            version: VERSION.to_string(),
            exit_code: i32::from(output.code),
        };
        match report.to_validated_json() {
            Ok(text) => emit(&(text + "\n")),
            Err(e) => {
                eprintln!("error: {e:#}");
                return ExitCode::from(1);
            }
        }
    } else {
        match &output.plain {
            Some(text) => emit(text),
            None => emit(&(output.results.to_string() + "\n")),
        }
    };
    if status != ExitCode::SUCCESS {
        return status;
    }
    ExitCode::from(output.code)
}
