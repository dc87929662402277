//! Command-line front end. Every command prints one JSON document with sorted keys.
//!
//! Exit codes: 0 success, 1 the input is well formed but fails a check,
//! 2 the input could not be read or parsed.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::ade::{self, DualGraph};
use crate::config::{self, BranchConfiguration};
use crate::cover::{self, PlaneBranchCurve};
use crate::descent::{self, check_sd_case, SdDocument};
use crate::examples;
use crate::lattice::{DivisorClass, IntLattice};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "todorov",
    version,
    about = "Branch configurations on K3 lattices and their double covers"
)]
pub struct Cli {
    /// Emit JSON on stdout. This is the only output format, so the flag is a no-op.
    #[arg(long, global = true)]
    pub json: bool,
    /// Suppress the one-line summary on stderr.
    #[arg(long, short, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a configuration against the branch condition.
    Validate(Input),
    /// Surface invariants of a valid configuration.
    Invariants(Input),
    /// Dynkin types of the components of a curve graph.
    Classify(Input),
    /// Admissible branch markings of each ADE component of a curve graph.
    Markings(Input),
    /// Canonical resolution of a plane branch curve.
    Resolve(Input),
    /// Run the K^2 descent on a configuration.
    Descend(DescendArgs),
    /// Check a Saint-Donat case description.
    SdCheck(Input),
    /// Print, describe or check shipped fixtures.
    Example(ExampleArgs),
}

#[derive(Args, Debug)]
pub struct Input {
    /// Input file, or `-` for stdin.
    pub path: PathBuf,
}

#[derive(Args, Debug)]
pub struct DescendArgs {
    pub path: PathBuf,
    /// Descend all the way to t = 9 (the default).
    #[arg(long, conflicts_with = "steps")]
    pub full: bool,
    /// Stop after this many steps.
    #[arg(long)]
    pub steps: Option<usize>,
    /// Certify the terminal configuration with the pullback of a cubic (3 B').
    #[arg(long)]
    pub certify: bool,
}

#[derive(Args, Debug)]
pub struct ExampleArgs {
    pub name: Option<String>,
    /// Parameter j of the kummer family.
    #[arg(long)]
    pub j: Option<usize>,
    #[arg(long)]
    pub describe: bool,
    #[arg(long, conflicts_with_all = ["name", "all"])]
    pub list: bool,
    #[arg(long, requires = "check", conflicts_with = "name")]
    pub all: bool,
    #[arg(long)]
    pub check: bool,
}

/// A curve graph: a lattice and the (−2)-classes forming the vertices.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDocument {
    lattice: IntLattice,
    vertices: Vec<DivisorClass>,
}

struct Outcome {
    code: i32,
    body: Value,
    summary: String,
}

impl Outcome {
    fn ok(body: Value, summary: impl Into<String>) -> Self {
        Outcome {
            code: EXIT_OK,
            body,
            summary: summary.into(),
        }
    }

    fn failed(body: Value, summary: impl Into<String>) -> Self {
        Outcome {
            code: EXIT_FAILED,
            body,
            summary: summary.into(),
        }
    }

    fn error(code: i32, message: String) -> Self {
        Outcome {
            code,
            body: json!({ "error": message }),
            summary: message,
        }
    }
}

type Run = Result<Outcome, Outcome>;

fn malformed(message: impl std::fmt::Display) -> Outcome {
    Outcome::error(EXIT_MALFORMED, message.to_string())
}

fn failed(message: impl std::fmt::Display) -> Outcome {
    Outcome::error(EXIT_FAILED, message.to_string())
}

fn read_json<T: DeserializeOwned>(path: &PathBuf, stdin: &mut dyn Read) -> Result<T, Outcome> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        stdin
            .read_to_string(&mut text)
            .map_err(|e| malformed(format!("stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path)
            .map_err(|e| malformed(format!("{}: {e}", path.display())))?;
    }
    serde_json::from_str(&text).map_err(|e| malformed(format!("{}: {e}", path.display())))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("output types serialize")
}

fn validate(input: &Input, stdin: &mut dyn Read) -> Run {
    let cfg: BranchConfiguration = read_json(&input.path, stdin)?;
    let report = config::validate(&cfg);
    if !report.passed {
        let summary = format!("invalid: {}", report.summary());
        return Ok(Outcome::failed(
            json!({ "report": to_value(&report) }),
            summary,
        ));
    }
    let inv = config::invariants(&cfg).map_err(failed)?;
    Ok(Outcome::ok(
        json!({ "report": to_value(&report), "invariants": to_value(&inv) }),
        format!("valid: t = {}, K^2 = {}", report.t, inv.k2),
    ))
}

fn invariants(input: &Input, stdin: &mut dyn Read) -> Run {
    let cfg: BranchConfiguration = read_json(&input.path, stdin)?;
    match config::invariants(&cfg) {
        Ok(inv) => Ok(Outcome::ok(to_value(&inv), format!("K^2 = {}", inv.k2))),
        Err(config::ConfigError::Invalid(report)) => Ok(Outcome::failed(
            json!({ "report": to_value(&*report) }),
            format!("invalid: {}", report.summary()),
        )),
        Err(e) => Err(failed(e)),
    }
}

fn load_graph(input: &Input, stdin: &mut dyn Read) -> Result<DualGraph, Outcome> {
    let doc: GraphDocument = read_json(&input.path, stdin)?;
    ade::build_dual_graph(&doc.lattice, &doc.vertices).map_err(malformed)
}

fn classify(input: &Input, stdin: &mut dyn Read) -> Run {
    let g = load_graph(input, stdin)?;
    let comps = ade::classify_components(&g);
    let census: Vec<String> = comps.iter().map(|c| c.dynkin.to_string()).collect();
    Ok(Outcome::ok(to_value(&comps), census.join(" + ")))
}

fn markings(input: &Input, stdin: &mut dyn Read) -> Run {
    let g = load_graph(input, stdin)?;
    let mut out = Vec::new();
    for comp in ade::classify_components(&g) {
        let marks = if comp.dynkin.is_ade() {
            Some(ade::even_markings(&g, &comp.vertices).map_err(failed)?)
        } else {
            None
        };
        out.push(json!({ "vertices": comp.vertices, "type": comp.dynkin, "markings": marks }));
    }
    let n = out.len();
    Ok(Outcome::ok(Value::Array(out), format!("{n} components")))
}

fn resolve(input: &Input, stdin: &mut dyn Read) -> Run {
    let curve: PlaneBranchCurve = read_json(&input.path, stdin)?;
    let state = cover::canonical_resolution(&curve).map_err(malformed)?;
    let inv = cover::double_plane_invariants(&state).map_err(malformed)?;
    Ok(Outcome::ok(
        json!({
            "labels": state.labels,
            "L": state.l,
            "K": state.k,
            "branch": state.branch,
            "chi": inv.chi,
            "KV2": inv.kv2,
            "negligible": curve.negligibility(),
            "log": state.log,
        }),
        format!("chi = {}, K_V^2 = {}", inv.chi, inv.kv2),
    ))
}

fn descend(args: &DescendArgs, stdin: &mut dyn Read) -> Run {
    let cfg: BranchConfiguration = read_json(&args.path, stdin)?;
    let max_steps = args.steps.unwrap_or(usize::MAX);
    let chain = match descent::descend(&cfg, max_steps) {
        Ok(chain) => chain,
        Err(descent::DescentError::Invalid(report)) => {
            return Ok(Outcome::failed(
                json!({ "report": to_value(&*report) }),
                format!("invalid: {}", report.summary()),
            ))
        }
        Err(e) => return Err(failed(e)),
    };
    let last = chain.last();
    let k2 = last.t() as i64 - 8;
    let mut body = json!({
        "steps": to_value(&chain.steps),
        "K2_sequence": chain.k2_sequence(),
        "final": to_value(last),
        "K2": k2,
    });
    let mut summary = format!("{} steps, final K^2 = {k2}", chain.steps.len());
    if args.certify {
        let pullback = last.bprime().scaled(3);
        let report = descent::cubic_splitting_certificate(last, &pullback).map_err(failed)?;
        summary.push_str(if report.passed {
            ", splitting certified"
        } else {
            ", splitting NOT certified"
        });
        let passed = report.passed;
        body["splitting"] = to_value(&report);
        if !passed {
            return Ok(Outcome::failed(body, summary));
        }
    }
    Ok(Outcome::ok(body, summary))
}

fn sd_check(input: &Input, stdin: &mut dyn Read) -> Run {
    let doc: SdDocument = read_json(&input.path, stdin)?;
    let failures = check_sd_case(&doc.lattice, &doc.d, &doc.case).map_err(malformed)?;
    let d_square = doc.lattice.square(&doc.d).map_err(malformed)?;
    let body =
        json!({ "verified": failures.is_empty(), "failures": failures, "D_square": d_square });
    if failures.is_empty() {
        Ok(Outcome::ok(body, "case verified"))
    } else {
        Ok(Outcome::failed(
            body,
            format!("case rejected: {}", failures.join("; ")),
        ))
    }
}

fn example(args: &ExampleArgs) -> Run {
    if args.list {
        return Ok(Outcome::ok(
            to_value(&examples::list()),
            format!("{} fixtures", examples::NAMES.len()),
        ));
    }
    if args.all {
        let outcomes = examples::check_all();
        let bad = outcomes.iter().filter(|o| !o.passed).count();
        let body = to_value(&outcomes);
        return Ok(if bad == 0 {
            Outcome::ok(body, format!("all {} fixtures check", outcomes.len()))
        } else {
            Outcome::failed(body, format!("{bad} fixtures fail"))
        });
    }
    let Some(name) = &args.name else {
        return Err(malformed("example needs a name, --list or --all --check"));
    };
    if args.describe {
        return Ok(Outcome::ok(
            to_value(&examples::describe(name).map_err(malformed)?),
            name.clone(),
        ));
    }
    if args.check {
        let outcome = examples::check(name).map_err(malformed)?;
        let summary = format!("{name}: {}", if outcome.passed { "ok" } else { "mismatch" });
        return Ok(if outcome.passed {
            Outcome::ok(to_value(&outcome), summary)
        } else {
            Outcome::failed(to_value(&outcome), summary)
        });
    }
    let fixture = examples::build(name, args.j).map_err(malformed)?;
    Ok(Outcome::ok(fixture.to_json(), name.clone()))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_MALFORMED
            } else {
                EXIT_OK
            };
            let _ = if e.use_stderr() {
                write!(stderr, "{e}")
            } else {
                write!(stdout, "{e}")
            };
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::Validate(i) => validate(i, stdin),
        Command::Invariants(i) => invariants(i, stdin),
        Command::Classify(i) => classify(i, stdin),
        Command::Markings(i) => markings(i, stdin),
        Command::Resolve(i) => resolve(i, stdin),
        Command::Descend(a) => descend(a, stdin),
        Command::SdCheck(i) => sd_check(i, stdin),
        Command::Example(a) => example(a),
    }
    .unwrap_or_else(|e| e);
    let text = serde_json::to_string_pretty(&outcome.body).expect("values serialize");
    let _ = writeln!(stdout, "{text}");
    if !cli.quiet {
        let _ = writeln!(stderr, "{}", outcome.summary);
    }
    outcome.code
}
