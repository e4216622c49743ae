//! `spatial-lk`: validate diagrams, compute and compare linking-matrix
//! invariants, generate canonical forms, run perturbation walks, and
//! reduce integer matrices.
//!
//! Exit codes: 0 success or equivalent, 1 inequivalent, 2 domain
//! violation, 3 I/O or parse failure, 4 internal invariant failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use spatial_lk::classify::{classify, Mode, Outcome, Pairing, Verdict};
use spatial_lk::homology::CycleBasis;
use spatial_lk::linking::{linking_matrix, over_under_consistent, LinkingError};
use spatial_lk::moves::{
    canonical_diagram, checked_walk, parse_move_list, replay_checked, CheckedWalk, WalkError,
};
use spatial_lk::sgd::{parse_sgd, parse_sgd_unchecked, serialize_sgd, SgdError};
use spatial_lk::smith::{smith_normal_form, IntMatrix, LkInvariant};
use spatial_lk::Diagram;

const SCHEMA: u32 = 1;
const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Parser, Debug)]
#[command(
    name = "spatial-lk",
    version,
    about = "Linking-matrix invariants of two-component spatial graphs"
)]
struct Cli {
    /// Emit JSON instead of plain text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check an SGD file against the diagram invariants
    Validate { path: PathBuf },
    /// Print the invariant Lk of a two-component diagram
    Invariant(InvariantArgs),
    /// Decide neighborhood homotopy of two diagrams
    Classify(ClassifyArgs),
    /// Write the canonical diagram for ranks m, n and a divisor chain
    Canonical(CanonicalArgs),
    /// Apply random homotopy-preserving moves (or replay a move list)
    Perturb(PerturbArgs),
    /// Smith normal form of an integer matrix file
    Snf { path: PathBuf },
}

#[derive(Args, Debug)]
struct InvariantArgs {
    path: PathBuf,
    /// Also print the fundamental cycle bases
    #[arg(long)]
    show_basis: bool,
    /// Also print the linking matrix
    #[arg(long)]
    show_matrix: bool,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    a: PathBuf,
    b: PathBuf,
    /// Require component i of A to match component i of B
    #[arg(long)]
    ordered: bool,
    /// Treat inputs as handlebody-link spines (report genera)
    #[arg(long)]
    handlebody: bool,
}

#[derive(Args, Debug)]
struct CanonicalArgs {
    m: usize,
    n: usize,
    divisors: Vec<u64>,
    /// Output file (stdout if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PerturbArgs {
    path: PathBuf,
    #[arg(long, default_value_t = 20)]
    steps: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Replay moves from this file instead of sampling
    #[arg(long)]
    replay: Option<PathBuf>,
    /// Output SGD file (stdout if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Move list output file (stderr if omitted)
    #[arg(long)]
    moves: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Domain(String),
    Input(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Domain(_) => 2,
            Failure::Input(_) => 3,
            Failure::Internal(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Domain(m) | Failure::Input(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<LinkingError> for Failure {
    fn from(e: LinkingError) -> Self {
        Failure::Domain(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Syntax errors are input failures; broken invariants are domain errors.
fn load_diagram(path: &Path) -> Result<Diagram, Failure> {
    parse_sgd(&read(path)?).map_err(|e| match e {
        SgdError::Invalid(_) => Failure::Domain(format!("{}: {e}", path.display())),
        _ => Failure::Input(format!("{}: {e}", path.display())),
    })
}

/// Integers as JSON numbers when they fit in i64, strings otherwise.
fn big(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn matrix_json(m: &IntMatrix) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(big).collect()))
            .collect(),
    )
}

fn invariant_json(inv: &LkInvariant) -> (Value, Value) {
    let kind = if inv.is_zero() { "0" } else { "chain" };
    (
        json!(kind),
        Value::Array(inv.divisors().iter().map(big).collect()),
    )
}

fn basis_json(b: &CycleBasis) -> Value {
    json!({
        "tree_edges": b.tree_edges.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        "cycles": b.cycles.iter().zip(&b.defining_edges).map(|(c, e)| json!({
            "edge": e.to_string(),
            "coeffs": c.support().map(|(e, k)| (e.to_string(), json!(k))).collect::<serde_json::Map<_, _>>(),
        })).collect::<Vec<_>>(),
    })
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn cmd_validate(path: &Path, json_out: bool) -> Result<u8, Failure> {
    let text = read(path)?;
    let d = parse_sgd_unchecked(&text)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let violations = d.validate();
    if json_out {
        print_json(&json!({
            "schema": SCHEMA,
            "valid": violations.is_empty(),
            "violations": violations.iter().map(|v| json!({"class": v.class(), "message": v.to_string()})).collect::<Vec<_>>(),
        }));
    } else if violations.is_empty() {
        println!("OK");
    } else {
        for v in &violations {
            println!("{}: {v}", v.class());
        }
    }
    Ok(if violations.is_empty() { 0 } else { 2 })
}

fn cmd_invariant(args: &InvariantArgs, json_out: bool) -> Result<u8, Failure> {
    let d = load_diagram(&args.path)?;
    let lm = linking_matrix(&d)?;
    let inv = lm.invariant();
    let consistent = over_under_consistent(&d)?;
    if json_out {
        let (kind, divisors) = invariant_json(&inv);
        let mut v = json!({
            "schema": SCHEMA,
            "ranks": [lm.rows(), lm.cols()],
            "matrix": matrix_json(&lm.entries),
            "divisors": divisors,
            "invariant": kind,
            "over_under_consistent": consistent,
        });
        if args.show_basis {
            v["bases"] = json!([basis_json(&lm.basis1), basis_json(&lm.basis2)]);
        }
        print_json(&v);
        return Ok(0);
    }
    println!("{inv}");
    if args.show_matrix {
        print!("{}", lm.entries);
    }
    if args.show_basis {
        for (k, b) in [&lm.basis1, &lm.basis2].into_iter().enumerate() {
            let tree: Vec<String> = b.tree_edges.iter().map(|e| e.to_string()).collect();
            println!("component {} tree: {}", k + 1, tree.join(" "));
            for (c, e) in b.cycles.iter().zip(&b.defining_edges) {
                let terms: Vec<String> = c.support().map(|(e, k)| format!("{k:+}*{e}")).collect();
                println!("  cycle {e}: {}", terms.join(" "));
            }
        }
    }
    if !consistent {
        eprintln!("warning: over-crossing and under-crossing counts differ; diagram is not planar-realizable");
    }
    Ok(0)
}

fn verdict_json(v: &Verdict) -> Value {
    let result = match v.result {
        Outcome::Equivalent => "equivalent",
        Outcome::Inequivalent => "inequivalent",
        Outcome::HypothesisViolated => "hypothesis_violated",
    };
    let pairing = match v.pairing {
        Pairing::Ordered => "ordered",
        Pairing::Swapped => "swapped",
        Pairing::None => "none",
    };
    json!({
        "schema": SCHEMA,
        "result": result,
        "pairing": pairing,
        "mode": match v.mode { Mode::SpatialGraph => "spatial_graph", Mode::Handlebody => "handlebody" },
        "ranks": v.ranks,
        "invariants": v.invariants.iter().map(|i| i.to_string()).collect::<Vec<_>>(),
        "obstruction": v.obstruction.map(|o| o.tag()),
    })
}

fn cmd_classify(args: &ClassifyArgs, json_out: bool) -> Result<u8, Failure> {
    let a = load_diagram(&args.a)?;
    let b = load_diagram(&args.b)?;
    let mut v = classify(&a, &b, args.ordered)?;
    if args.handlebody {
        v.mode = Mode::Handlebody;
    }
    if json_out {
        print_json(&verdict_json(&v));
    } else {
        println!("{v}");
    }
    Ok(match v.result {
        Outcome::Equivalent => 0,
        Outcome::Inequivalent => 1,
        Outcome::HypothesisViolated => 2,
    })
}

fn cmd_canonical(args: &CanonicalArgs, json_out: bool) -> Result<u8, Failure> {
    let d = canonical_diagram(args.m, args.n, &args.divisors)
        .map_err(|e| Failure::Domain(e.to_string()))?;
    let text = serialize_sgd(&d);
    if json_out && args.out.is_none() {
        print_json(&json!({ "schema": SCHEMA, "sgd": text }));
    } else {
        write_or_print(args.out.as_deref(), &text)?;
    }
    Ok(0)
}

fn walk_failure(e: WalkError) -> Failure {
    match e {
        WalkError::InvariantChanged { .. } => Failure::Internal(format!("self-check failed: {e}")),
        WalkError::Linking(e) => e.into(),
        e => Failure::Domain(e.to_string()),
    }
}

fn cmd_perturb(args: &PerturbArgs, json_out: bool) -> Result<u8, Failure> {
    let d = load_diagram(&args.path)?;
    let walk: CheckedWalk = match &args.replay {
        Some(p) => {
            let moves = parse_move_list(&read(p)?)
                .map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
            replay_checked(&d, &moves).map_err(walk_failure)?
        }
        None => checked_walk(&d, args.steps, args.seed).map_err(walk_failure)?,
    };
    let text = serialize_sgd(&walk.diagram);
    let move_lines: Vec<String> = walk.moves.iter().map(|r| r.mv.to_string()).collect();
    if json_out {
        print_json(&json!({
            "schema": SCHEMA,
            "sgd": text,
            "moves": move_lines,
            "invariant": walk.invariant.to_string(),
        }));
        return Ok(0);
    }
    write_or_print(args.out.as_deref(), &text)?;
    let listing: String = move_lines.iter().map(|l| format!("{l}\n")).collect();
    match &args.moves {
        Some(p) => {
            fs::write(p, listing).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?
        }
        None => eprint!("{listing}"),
    }
    Ok(0)
}

fn cmd_snf(path: &Path, json_out: bool) -> Result<u8, Failure> {
    let m = IntMatrix::parse(&read(path)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let cert = smith_normal_form(&m);
    cert.verify(&m)
        .map_err(|e| Failure::Internal(format!("certificate check failed: {e}")))?;
    if json_out {
        print_json(&json!({
            "schema": SCHEMA,
            "divisors": cert.divisors.iter().map(big).collect::<Vec<_>>(),
            "U": matrix_json(&cert.u),
            "D": matrix_json(&cert.d),
            "V": matrix_json(&cert.v),
        }));
    } else {
        let parts: Vec<String> = cert.divisors.iter().map(BigInt::to_string).collect();
        println!("{}", parts.join(" "));
    }
    Ok(0)
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Validate { path } => cmd_validate(path, cli.json),
        Command::Invariant(a) => cmd_invariant(a, cli.json),
        Command::Classify(a) => cmd_classify(a, cli.json),
        Command::Canonical(a) => cmd_canonical(a, cli.json),
        Command::Perturb(a) => cmd_perturb(a, cli.json),
        Command::Snf { path } => cmd_snf(path, cli.json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            if cli.json {
                print_json(
                    &json!({ "schema": SCHEMA, "error": f.message(), "exit_code": f.code() }),
                );
            }
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
