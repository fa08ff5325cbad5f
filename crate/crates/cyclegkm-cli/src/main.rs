//! File-driven command line over the cyclegkm library with deterministic,
//! machine-readable output.
//!
//! A problem file is a single JSON document describing a nilpotent cycle
//! representation, a dimension vector, and a cocharacter. Exit codes: 0 ok,
//! 1 verification failure, 2 invalid input, 3 Knutson–Tao solver failure
//! (non-unique or no solution).

use clap::{Parser, Subcommand, ValueEnum};
use cyclegkm::gkm::{
    expand, is_gkm_class, kt_basis, kt_basis_json, EquivariantClass, Expansion, KtBasis, KtError,
};
use cyclegkm::graph::{build_graph, enumerate_fixed_points, MomentGraph};
use cyclegkm::poly::{act_on_character, parse_polynomial, Permutation};
use cyclegkm::rep::{column_order, is_aligned, is_homogeneous, Cocharacter, CycleRep, Segment};
use cyclegkm::symmetry::{
    act_on_class, act_on_fixed_point, block_group, divided_difference, generators, verify_nilhecke,
};
use serde::Deserialize;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "cyclegkm",
    about = "Moment graphs and Knutson-Tao bases for cycle-quiver Grassmannians",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Summarize a problem file: representation shape and cocharacter status.
    Inspect { file: PathBuf },
    /// List the torus fixed points as suffix tuples, one per line.
    FixedPoints { file: PathBuf },
    /// Export the moment graph.
    MomentGraph {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// Compute the Knutson-Tao basis.
    KtBasis {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Apply a word of reflections (s<i>) and divided differences (D<i>) to a
    /// class; tokens act left to right.
    Act {
        file: PathBuf,
        #[arg(long, default_value = "")]
        op: String,
        #[arg(long)]
        class: String,
    },
    /// Alias of `act` named for divided-difference words.
    Ddiff {
        file: PathBuf,
        #[arg(long, default_value = "")]
        op: String,
        #[arg(long)]
        class: String,
    },
    /// Print the Poincaré polynomial of the moment graph.
    Poincare { file: PathBuf },
    /// Run the invariant suite; exit 0 on success, 1 on any failure.
    Verify {
        file: PathBuf,
        #[arg(long)]
        class: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

enum Failure {
    /// Exit 1: an invariant or a supplied class failed verification.
    Verification(String),
    /// Exit 2: unreadable, unparsable, or mathematically invalid input.
    Invalid(String),
    /// Exit 3: the Knutson–Tao congruences have no or no unique solution.
    Solver(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            let (code, message) = match failure {
                Failure::Verification(m) => (1, m),
                Failure::Invalid(m) => (2, m),
                Failure::Solver(m) => (3, m),
            };
            eprintln!("{}", serde_json::json!({ "error": message }));
            ExitCode::from(code)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Inspect { file } => cmd_inspect(&file),
        Command::FixedPoints { file } => cmd_fixed_points(&file),
        Command::MomentGraph { file, format } => cmd_moment_graph(&file, format),
        Command::KtBasis { file, json } => cmd_kt_basis(&file, json),
        Command::Act { file, op, class } | Command::Ddiff { file, op, class } => {
            cmd_act(&file, &op, &class)
        }
        Command::Poincare { file } => cmd_poincare(&file),
        Command::Verify { file, class } => cmd_verify(&file, class.as_deref()),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemSpec {
    n: usize,
    segments: Vec<SegmentSpec>,
    dimension_vector: Vec<usize>,
    cocharacter: CocharacterSpec,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SegmentSpec {
    start: usize,
    length: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CocharacterSpec {
    delta: i64,
    epsilon: Vec<i64>,
}

fn load(file: &Path) -> Result<(CycleRep, Cocharacter, Vec<usize>), Failure> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Failure::Invalid(format!("cannot read {}: {e}", file.display())))?;
    let spec: ProblemSpec = serde_json::from_str(&text)
        .map_err(|e| Failure::Invalid(format!("{}: {e}", file.display())))?;
    let segments = spec
        .segments
        .iter()
        .map(|s| Segment { start: s.start, length: s.length })
        .collect();
    let rep = CycleRep::new(spec.n, segments).map_err(|e| Failure::Invalid(e.to_string()))?;
    if spec.cocharacter.epsilon.len() != rep.d() {
        return Err(Failure::Invalid(format!(
            "cocharacter has {} epsilon entries but the representation has {} segments",
            spec.cocharacter.epsilon.len(),
            rep.d()
        )));
    }
    if spec.dimension_vector.len() != spec.n {
        return Err(Failure::Invalid(format!(
            "dimension_vector has {} entries but n = {}",
            spec.dimension_vector.len(),
            spec.n
        )));
    }
    let chi = Cocharacter::new(spec.cocharacter.delta, spec.cocharacter.epsilon);
    Ok((rep, chi, spec.dimension_vector))
}

fn build(file: &Path) -> Result<(CycleRep, Cocharacter, Vec<usize>, MomentGraph), Failure> {
    let (rep, chi, e) = load(file)?;
    let graph = build_graph(&rep, &chi, &e).map_err(|err| Failure::Invalid(err.to_string()))?;
    Ok((rep, chi, e, graph))
}

fn basis_of(g: &MomentGraph) -> Result<KtBasis, Failure> {
    kt_basis(g).map_err(|err| match err {
        KtError::NoSolution { .. } | KtError::NonUnique { .. } => Failure::Solver(err.to_string()),
        KtError::AxiomFailure(_) => Failure::Verification(err.to_string()),
    })
}

fn cmd_inspect(file: &Path) -> Result<(), Failure> {
    let (rep, chi, e) = load(file)?;
    let (attractive, aligned) = match column_order(&rep, &chi) {
        Ok(order) => (true, is_aligned(&rep, &order)),
        Err(_) => (false, false),
    };
    println!(
        "n: {}, d: {}, d_0: {}, blocks: {:?}, attractive: {}, aligned: {}, homogeneous: {}, fixed_points: {}",
        rep.n(),
        rep.d(),
        rep.cuts().len(),
        rep.block_sizes(),
        attractive,
        aligned,
        is_homogeneous(&rep, &chi),
        enumerate_fixed_points(&rep, &e).len()
    );
    Ok(())
}

fn cmd_fixed_points(file: &Path) -> Result<(), Failure> {
    let (rep, _, e) = load(file)?;
    for point in enumerate_fixed_points(&rep, &e) {
        println!("{point}");
    }
    Ok(())
}

fn cmd_moment_graph(file: &Path, format: Format) -> Result<(), Failure> {
    let (_, _, _, graph) = build(file)?;
    match format {
        Format::Dot => print!("{}", graph.to_dot()),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&graph.to_json()).expect("graph JSON serializes")
        ),
    }
    Ok(())
}

fn cmd_kt_basis(file: &Path, json: bool) -> Result<(), Failure> {
    let (_, _, _, graph) = build(file)?;
    let basis = basis_of(&graph)?;
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&kt_basis_json(&graph, &basis))
                .expect("basis JSON serializes")
        );
    } else {
        for rank in 0..graph.vertex_count() {
            let v = graph.vertex_by_rank(rank);
            println!("L{}: {}", rank + 1, class_braces(&graph, basis.class(v)));
        }
    }
    Ok(())
}

fn cmd_poincare(file: &Path) -> Result<(), Failure> {
    let (_, _, _, graph) = build(file)?;
    println!("{}", graph.poincare());
    Ok(())
}

enum Op {
    Reflect(usize),
    Diff(usize),
}

fn parse_word(rep: &CycleRep, word: &str) -> Result<Vec<Op>, Failure> {
    let gens = generators(rep);
    let mut ops = Vec::new();
    for token in word.split_whitespace() {
        let bad = || Failure::Invalid(format!("bad token {token:?}: expected s<i> or D<i>"));
        let op = if let Some(rest) = token.strip_prefix('s') {
            Op::Reflect(rest.parse().map_err(|_| bad())?)
        } else if let Some(rest) = token.strip_prefix('D') {
            Op::Diff(rest.parse().map_err(|_| bad())?)
        } else {
            return Err(bad());
        };
        let i = match op {
            Op::Reflect(i) | Op::Diff(i) => i,
        };
        if !gens.contains(&i) {
            return Err(Failure::Invalid(format!(
                "index {i} is not a generator of this representation (generators: {gens:?})"
            )));
        }
        ops.push(op);
    }
    Ok(ops)
}

fn load_class(
    g: &MomentGraph,
    basis: &KtBasis,
    spec: &str,
) -> Result<EquivariantClass, Failure> {
    if let Some(rank) = spec.strip_prefix("kt:") {
        let k: usize = rank
            .parse()
            .map_err(|_| Failure::Invalid(format!("bad class reference {spec:?}")))?;
        if k == 0 || k > g.vertex_count() {
            return Err(Failure::Invalid(format!(
                "class rank {k} out of range 1..={}",
                g.vertex_count()
            )));
        }
        return Ok(basis.class(g.vertex_by_rank(k - 1)).clone());
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| Failure::Invalid(format!("cannot read {spec}: {e}")))?;
    let entries: BTreeMap<String, String> = serde_json::from_str(&text)
        .map_err(|e| Failure::Invalid(format!("{spec}: {e}")))?;
    let mut class = EquivariantClass::zero(g);
    for (name, expr) in entries {
        let v = g
            .vertex_by_name(&name)
            .ok_or_else(|| Failure::Invalid(format!("{spec}: unknown vertex name {name:?}")))?;
        let p = parse_polynomial(&expr, g.rep().d())
            .map_err(|e| Failure::Invalid(format!("{spec}: entry {name}: {e}")))?;
        class.set_entry(v, p);
    }
    if !is_gkm_class(g, &class) {
        return Err(Failure::Verification(format!(
            "{spec}: the class violates the GKM condition"
        )));
    }
    Ok(class)
}

fn cmd_act(file: &Path, op: &str, class_spec: &str) -> Result<(), Failure> {
    let (rep, _, _, graph) = build(file)?;
    let basis = basis_of(&graph)?;
    let word = parse_word(&rep, op)?;
    let mut class = load_class(&graph, &basis, class_spec)?;
    for step in &word {
        class = match step {
            Op::Reflect(i) => {
                let sigma = Permutation::transposition(rep.d(), *i, *i + 1);
                act_on_class(&graph, &sigma, &class)
            }
            Op::Diff(i) => divided_difference(&graph, *i, &class),
        };
    }
    println!("class: {}", class_braces(&graph, &class));
    let expansion = expand(&graph, &basis, &class)
        .map_err(|e| Failure::Verification(e.to_string()))?;
    println!("expansion: {}", expansion_braces(&graph, &expansion));
    Ok(())
}

/// `{L1: ..., L2: ...}` over nonzero entries in ascending rank order.
fn class_braces(g: &MomentGraph, class: &EquivariantClass) -> String {
    let mut parts = Vec::new();
    for rank in 0..g.vertex_count() {
        let v = g.vertex_by_rank(rank);
        let p = class.entry(v);
        if !p.is_zero() {
            parts.push(format!("L{}: {}", rank + 1, p.to_compact_string()));
        }
    }
    format!("{{{}}}", parts.join(", "))
}

/// `{L2: 1, L1: ...}` over nonzero coefficients in descending rank order.
fn expansion_braces(g: &MomentGraph, expansion: &Expansion) -> String {
    let mut parts = Vec::new();
    for rank in (0..g.vertex_count()).rev() {
        let v = g.vertex_by_rank(rank);
        if let Some(p) = expansion.get(&v) {
            parts.push(format!("L{}: {}", rank + 1, p.to_compact_string()));
        }
    }
    format!("{{{}}}", parts.join(", "))
}

fn sigma_equivariant(g: &MomentGraph) -> bool {
    for sigma in block_group(g.rep()) {
        for edge in g.edges() {
            let a = g.vertex_index(&act_on_fixed_point(&sigma, &g.vertices()[edge.tail]));
            let b = g.vertex_index(&act_on_fixed_point(&sigma, &g.vertices()[edge.head]));
            let (Some(a), Some(b)) = (a, b) else { return false };
            let moved = act_on_character(&sigma, &edge.label);
            let matched = g.edges().iter().any(|f| {
                ((f.tail, f.head) == (a, b) || (f.tail, f.head) == (b, a))
                    && (f.label == moved || f.label == moved.neg())
            });
            if !matched {
                return false;
            }
        }
    }
    true
}

fn cmd_verify(file: &Path, class_spec: Option<&str>) -> Result<(), Failure> {
    let (rep, chi, _, graph) = build(file)?;
    let basis = basis_of(&graph)?;
    let mut checks: Vec<(&str, bool)> = vec![
        (
            "gkm_membership",
            basis.classes().iter().all(|c| is_gkm_class(&graph, c)),
        ),
        (
            "kt_axioms",
            (0..graph.vertex_count())
                .all(|v| cyclegkm::gkm::verify_kt_axioms(&graph, v, basis.class(v)).is_ok()),
        ),
        (
            "palais_smale_implication",
            !is_homogeneous(&rep, &chi) || graph.is_palais_smale(),
        ),
        (
            "nilhecke_relations",
            verify_nilhecke(&graph, &basis, 5, 2024).all_pass(),
        ),
        ("sigma_equivariance", sigma_equivariant(&graph)),
    ];
    let supplied = match class_spec {
        Some(spec) => match load_class(&graph, &basis, spec) {
            Ok(class) => Some(expand(&graph, &basis, &class).is_ok()),
            Err(Failure::Verification(_)) => Some(false),
            Err(other) => return Err(other),
        },
        None => None,
    };
    if let Some(ok) = supplied {
        checks.push(("supplied_class", ok));
    }
    let pass = checks.iter().all(|(_, ok)| *ok);
    let report = serde_json::json!({
        "checks": checks
            .iter()
            .map(|(name, ok)| serde_json::json!({ "name": name, "pass": ok }))
            .collect::<Vec<_>>(),
        "pass": pass,
    });
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    if pass {
        Ok(())
    } else {
        let failed: Vec<&str> = checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
        Err(Failure::Verification(format!("failed checks: {}", failed.join(", "))))
    }
}
