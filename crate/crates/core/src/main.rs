//! `toric`: command-line surface over the tree/kempe/pluecker/polygon/
//! frames modules. All I/O is JSON; exit codes are 0 on success, 1 on
//! domain failures, 2 on usage errors.

use std::fmt::Display;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use toric::frames::{bend_lift, extend_framing, hamiltonians, ForestFraming, SpinFrame};
use toric::kempe::{star_product, KempeGraph};
use toric::pluecker::{initial_form, straighten};
use toric::polygon::{sample_linkage, stratum_signature, FramedPolygon, Polygon};
use toric::tree::{decompose, dual_tree, TrivalentTree, Triangulation};
use toric::verify::{run_suite, VerifyConfig};

#[derive(Parser)]
#[command(name = "toric", version, about = "Tree-metric toric degenerations and polygon spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a triangulation's dual trivalent tree and print it.
    Tree(TreeArgs),
    /// Kempe graph operations.
    #[command(subcommand)]
    Kempe(KempeCmd),
    /// Plücker bracket algebra.
    #[command(subcommand)]
    Pluecker(PlueckerCmd),
    /// Euclidean polygon operations.
    #[command(subcommand)]
    Polygon(PolygonCmd),
    /// Spin-frame operations on decomposed forests.
    #[command(subcommand)]
    Frames(FramesCmd),
    /// Run a verification suite and print a JSON report.
    Verify(VerifyArgs),
    /// End-to-end: edges → extend → restrict → polygon → strata → ledger.
    Pipeline(PipelineArgs),
}

#[derive(Args)]
struct TreeArgs {
    /// Vertex count of the model polygon.
    #[arg(long)]
    n: Option<usize>,
    /// Use the fan triangulation (all diagonals from vertex 1).
    #[arg(long)]
    fan: bool,
    /// Explicit diagonals as a,b pairs, e.g. --diagonals 1,3 1,4 1,5
    #[arg(long, num_args = 0.., value_parser = parse_pair)]
    diagonals: Vec<(usize, usize)>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum KempeCmd {
    /// The semigroup product G1 ∗_T G2.
    Product(PairArgs),
}

#[derive(Subcommand)]
enum PlueckerCmd {
    /// Expand m_{G1}·m_{G2} in the Kempe basis with tree weights.
    Straighten(PairArgs),
    /// Initial forms of all Plücker quadrics under the tree weighting.
    InitialIdeal(InitialIdealArgs),
}

#[derive(Args)]
struct PairArgs {
    /// Tree or triangulation JSON.
    #[arg(long)]
    tree: PathBuf,
    /// First Kempe graph JSON.
    #[arg(long)]
    a: PathBuf,
    /// Second Kempe graph JSON.
    #[arg(long)]
    b: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct InitialIdealArgs {
    /// Tree or triangulation JSON; defaults to the fan on --n vertices.
    #[arg(long)]
    tree: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum PolygonCmd {
    /// Sample a closed polygon with the given side lengths.
    Sample(SampleArgs),
    /// Bend a polygon about a diagonal.
    Bend(BendArgs),
    /// Report which diagonals of a triangulation vanish.
    Strata(StrataArgs),
}

#[derive(Args)]
struct SampleArgs {
    /// Comma-separated side lengths, e.g. --r 1,1,1,1,1,1
    #[arg(long, value_parser = parse_floats)]
    r: Vec<Vec<f64>>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BendArgs {
    /// Diagonal as a,b (1-based vertices).
    #[arg(long, value_parser = parse_pair)]
    diag: (usize, usize),
    #[arg(long)]
    theta: f64,
    /// Input polygon JSON (defaults to stdin).
    #[arg(long)]
    r#in: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct StrataArgs {
    #[arg(long)]
    tree: PathBuf,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long)]
    r#in: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum FramesCmd {
    /// Extend an edge framing to a normalized forest framing.
    Extend(ExtendArgs),
    /// Frame-level bending flow at an internal forest edge.
    Bend(FrameBendArgs),
    /// Print all residuals and the Hamiltonian ledger of a framing.
    Check(CheckArgs),
}

#[derive(Args)]
struct ExtendArgs {
    #[arg(long)]
    tree: PathBuf,
    /// Edge framing as a framed matrix JSON ({"cols": ...}).
    #[arg(long)]
    edges: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FrameBendArgs {
    /// Internal tree edge id to bend at.
    #[arg(long)]
    edge: usize,
    /// Spatial bending angle θ; the frame phase is e^{iθ/2}.
    #[arg(long)]
    theta: f64,
    #[arg(long)]
    r#in: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    r#in: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// semigroup | initial-ideal | hopf | bending | frames | strata | all
    #[arg(long)]
    suite: String,
    #[arg(long, default_value_t = 0)]
    trials: usize,
    #[arg(long = "n-max", default_value_t = 0)]
    n_max: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PipelineArgs {
    #[arg(long)]
    tree: PathBuf,
    #[arg(long)]
    edges: PathBuf,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected a,b got {s:?}"));
    }
    let a = parts[0].trim().parse().map_err(|e| format!("{e}"))?;
    let b = parts[1].trim().parse().map_err(|e| format!("{e}"))?;
    Ok((a, b))
}

fn parse_floats(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|e| format!("{e}")))
        .collect()
}

fn read_input(path: &Option<PathBuf>) -> Result<String, String> {
    match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| format!("stdin: {e}"))?;
            Ok(buf)
        }
    }
}

fn load_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// Accepts either the triangulation schema ({n, diagonals}) or the tree
/// schema ({n, edges, leaf_edges}); returns both views.
fn load_tree(path: &PathBuf) -> Result<(Triangulation, TrivalentTree), String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    if value.get("diagonals").is_some() {
        let t: Triangulation = serde_json::from_value(value).map_err(|e| e.to_string())?;
        let tree = dual_tree(&t);
        Ok((t, tree))
    } else {
        let tree: TrivalentTree = serde_json::from_value(value).map_err(|e| e.to_string())?;
        let diagonals: Vec<(usize, usize)> = tree
            .internal_edges()
            .map(|e| {
                tree.edge_arc(e)
                    .ok_or_else(|| format!("internal edge {e} has no dual diagonal"))
            })
            .collect::<Result<_, _>>()?;
        let t = Triangulation::new(tree.n(), diagonals).map_err(|e| e.to_string())?;
        Ok((t, tree))
    }
}

fn emit<T: Serialize>(value: &T, out: &Option<PathBuf>) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    match out {
        Some(p) => std::fs::write(p, text + "\n").map_err(|e| format!("{}: {e}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn fail(msg: impl Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(1)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Tree(args) => cmd_tree(args),
        Command::Kempe(KempeCmd::Product(args)) => cmd_kempe_product(args),
        Command::Pluecker(PlueckerCmd::Straighten(args)) => cmd_straighten(args),
        Command::Pluecker(PlueckerCmd::InitialIdeal(args)) => cmd_initial_ideal(args),
        Command::Polygon(PolygonCmd::Sample(args)) => cmd_sample(args),
        Command::Polygon(PolygonCmd::Bend(args)) => cmd_polygon_bend(args),
        Command::Polygon(PolygonCmd::Strata(args)) => cmd_strata(args),
        Command::Frames(FramesCmd::Extend(args)) => cmd_frames_extend(args),
        Command::Frames(FramesCmd::Bend(args)) => cmd_frames_bend(args),
        Command::Frames(FramesCmd::Check(args)) => cmd_frames_check(args),
        Command::Verify(args) => return cmd_verify(args),
        Command::Pipeline(args) => cmd_pipeline(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => fail(msg),
    }
}

fn cmd_tree(args: TreeArgs) -> Result<(), String> {
    let t = if args.fan {
        let n = args.n.ok_or("--fan requires --n")?;
        Triangulation::fan(n).map_err(|e| e.to_string())?
    } else {
        if args.diagonals.is_empty() && args.n.is_none() {
            return Err("provide --fan with --n, or --diagonals".into());
        }
        let n = args.n.unwrap_or(args.diagonals.len() + 3);
        Triangulation::new(n, args.diagonals.clone()).map_err(|e| e.to_string())?
    };
    let tree = dual_tree(&t);
    emit(&tree, &args.out)
}

fn cmd_kempe_product(args: PairArgs) -> Result<(), String> {
    let (_, tree) = load_tree(&args.tree)?;
    let a: KempeGraph = load_json(&args.a)?;
    let b: KempeGraph = load_json(&args.b)?;
    let product = star_product(&a, &b, &tree).map_err(|e| e.to_string())?;
    emit(&product, &args.out)
}

fn cmd_straighten(args: PairArgs) -> Result<(), String> {
    let (_, tree) = load_tree(&args.tree)?;
    let a: KempeGraph = load_json(&args.a)?;
    let b: KempeGraph = load_json(&args.b)?;
    let expansion = straighten(&a, &b).map_err(|e| e.to_string())?;
    let terms: Vec<serde_json::Value> = expansion
        .terms()
        .iter()
        .map(|(m, &c)| {
            let graph = m.to_kempe().map_err(|e| e.to_string())?;
            let weight = m.weight(&tree).map_err(|e| e.to_string())?;
            Ok(json!({ "graph": graph, "coef": c, "weight": weight }))
        })
        .collect::<Result<_, String>>()?;
    emit(&json!({ "terms": terms }), &args.out)
}

fn cmd_initial_ideal(args: InitialIdealArgs) -> Result<(), String> {
    let tree = match (&args.tree, args.n) {
        (Some(path), _) => load_tree(path)?.1,
        (None, Some(n)) => dual_tree(&Triangulation::fan(n).map_err(|e| e.to_string())?),
        (None, None) => return Err("provide --tree or --n".into()),
    };
    let n = tree.n();
    let mut quadrics = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            for k in (j + 1)..=n {
                for l in (k + 1)..=n {
                    let form = initial_form((i, j, k, l), &tree).map_err(|e| e.to_string())?;
                    let terms: Vec<serde_json::Value> = form
                        .terms()
                        .iter()
                        .map(|(m, &c)| {
                            json!({
                                "monomial": m.exponents().iter()
                                    .map(|(&(a, b), &e)| json!([a, b, e]))
                                    .collect::<Vec<_>>(),
                                "coef": c,
                                "weight": m.weight(&tree).unwrap(),
                            })
                        })
                        .collect();
                    quadrics.push(json!({ "quadric": [i, j, k, l], "initial_form": terms }));
                }
            }
        }
    }
    emit(&json!({ "n": n, "quadrics": quadrics }), &args.out)
}

fn cmd_sample(args: SampleArgs) -> Result<(), String> {
    let r: Vec<f64> = args.r.into_iter().flatten().collect();
    if r.is_empty() {
        return Err("--r must list at least one side length".into());
    }
    let p = sample_linkage(&r, args.seed).map_err(|e| e.to_string())?;
    emit(&p, &args.out)
}

fn cmd_polygon_bend(args: BendArgs) -> Result<(), String> {
    let text = read_input(&args.r#in)?;
    let p: Polygon = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let bent = p
        .bend(args.diag.0, args.diag.1, args.theta)
        .map_err(|e| e.to_string())?;
    emit(&bent, &args.out)
}

fn cmd_strata(args: StrataArgs) -> Result<(), String> {
    let (t, _) = load_tree(&args.tree)?;
    let text = read_input(&args.r#in)?;
    let p: Polygon = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let sig = stratum_signature(&p, &t, args.tol).map_err(|e| e.to_string())?;
    emit(&sig, &args.out)
}

fn frames_of_matrix(m: &FramedPolygon) -> Vec<SpinFrame> {
    m.cols()
        .iter()
        .map(|&(z, w)| SpinFrame::from_c2(z, w))
        .collect()
}

fn cmd_frames_extend(args: ExtendArgs) -> Result<(), String> {
    let (_, tree) = load_tree(&args.tree)?;
    let forest = decompose(&tree);
    let matrix: FramedPolygon = load_json(&args.edges)?;
    let framing =
        extend_framing(&frames_of_matrix(&matrix), &forest).map_err(|e| e.to_string())?;
    emit(&framing, &args.out)
}

fn cmd_frames_bend(args: FrameBendArgs) -> Result<(), String> {
    let text = read_input(&args.r#in)?;
    let framing: ForestFraming = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let phase = Complex64::from_polar(1.0, args.theta / 2.0);
    let bent = bend_lift(&framing, args.edge, phase).map_err(|e| e.to_string())?;
    emit(&bent, &args.out)
}

fn cmd_frames_check(args: CheckArgs) -> Result<(), String> {
    let text = read_input(&args.r#in)?;
    let framing: ForestFraming = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let report = json!({
        "tripod_residuals": framing.tripod_residuals(),
        "pair_lambda_mismatches": framing.pair_mismatches(),
        "normalized": framing.is_normalized(1e-9 * framing.lambda_scale()),
        "ledger": hamiltonians(&framing),
    });
    emit(&report, &args.out)
}

fn cmd_verify(args: VerifyArgs) -> ExitCode {
    let cfg = VerifyConfig {
        n_max: args.n_max,
        trials: args.trials,
        seed: args.seed,
        tol: args.tol,
        ..VerifyConfig::default()
    };
    match run_suite(&args.suite, &cfg) {
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Ok(report) => {
            if let Err(e) = emit(&report, &args.out) {
                return fail(e);
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn cmd_pipeline(args: PipelineArgs) -> Result<(), String> {
    let (t, tree) = load_tree(&args.tree)?;
    let forest = decompose(&tree);
    let matrix: FramedPolygon = load_json(&args.edges)?;
    let framing = extend_framing(&frames_of_matrix(&matrix), &forest)
        .map_err(|e| format!("extension failed: {e}"))?;
    let edges = framing
        .restrict_to_leaves()
        .map_err(|e| format!("restriction failed: {e}"))?;
    let polygon = framing.leaf_polygon();
    let sig = stratum_signature(&polygon, &t, args.tol).map_err(|e| e.to_string())?;
    let diagonals: Vec<serde_json::Value> = t
        .diagonals()
        .iter()
        .map(|&(a, b)| {
            json!({ "pair": [a, b], "length": polygon.diagonal(a, b).unwrap().norm() })
        })
        .collect();
    let ledger = hamiltonians(&framing);
    let max_ledger_deviation = ledger
        .iter()
        .map(|h| (h.lambda - h.geometric).abs())
        .fold(0.0, f64::max);
    let report = json!({
        "framing": framing,
        "residuals": {
            "tripod": framing.tripod_residuals(),
            "pair_lambda": framing.pair_mismatches(),
            "normalized": framing.is_normalized(1e-9 * framing.lambda_scale()),
        },
        "edge_frames": edges.iter().map(|f| json!({
            "g": f.g.quaternion(),
            "lambda": f.lambda,
        })).collect::<Vec<_>>(),
        "polygon": polygon,
        "diagonals": diagonals,
        "stratum": sig.zero_diagonals,
        "ledger": ledger,
        "max_ledger_deviation": max_ledger_deviation,
    });
    emit(&report, &args.out)
}
