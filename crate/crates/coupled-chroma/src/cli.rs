//! The `coupled-chroma` command line: generate graphs, color and verify,
//! run the certificate suite, export DOT, and benchmark the pipeline.
//!
//! Exit codes: 0 success, 1 invalid input, 2 unsatisfiable instance or
//! verification violation, 3 search budget exceeded. The environment
//! variable `COUPLED_CHROMA_BUDGET` supplies a solver budget when no
//! `--budget` flag is given.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::certificates::{run_certificate_with_budget, Certificate, CertificateStatus};
use crate::incidence::{build_incidence_graph, verify_coupled_coloring, ListAssignment, Verdict};
use crate::io;
use crate::plane_graph::{build_named, build_wheel, ElementRef, NamedGraph, PlaneGraph};
use crate::wheel::{auto_color, color_wheel, AutoOutcome};

pub const BUDGET_ENV: &str = "COUPLED_CHROMA_BUDGET";

#[derive(Parser, Debug)]
#[command(
    name = "coupled-chroma",
    about = "Coupled (vertex + face) list coloring of plane graphs",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Wheel,
    Cycle,
    TripleEdge,
    Prism,
    K4MinusEdge,
    StellatedCycle,
    StellatedK4MinusEdge,
    Graph6,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SolverChoice {
    /// Constructive pipeline for recognized wheels and wheel subgraphs,
    /// exact search otherwise.
    Auto,
    /// Exact search only.
    Exact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DotMode {
    Primal,
    Dual,
    Incidence,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a graph JSON (and optionally random lists for it).
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        /// Size parameter (wheel and cycle families).
        #[arg(long)]
        n: Option<usize>,
        /// Output path for the graph JSON (stdout when omitted).
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// graph6 file (kind = graph6).
        #[arg(long)]
        graph6: Option<PathBuf>,
        /// JSON file with per-vertex counterclockwise neighbor orders
        /// (kind = graph6), e.g. `[[1,2],[0,2],[0,1]]`.
        #[arg(long)]
        rotations: Option<PathBuf>,
        /// Also write a random list assignment for the generated graph.
        #[arg(long)]
        lists_out: Option<PathBuf>,
        #[arg(long, default_value_t = 5)]
        list_size: usize,
        #[arg(long, default_value_t = 15)]
        palette: i32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Color a graph from lists; writes the coloring and optionally the
    /// decision trace.
    Color {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(short, long)]
        lists: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long)]
        trace_out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = SolverChoice::Auto)]
        solver: SolverChoice,
        /// Node budget for exact search (overrides COUPLED_CHROMA_BUDGET).
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Check a coloring file; prints Valid or the first violation.
    Verify {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(short, long)]
        lists: PathBuf,
        #[arg(short, long)]
        coloring: PathBuf,
    },
    /// Run certificates; one JSON report per line on stdout.
    Certify {
        /// Run the whole default suite.
        #[arg(long, conflicts_with = "name")]
        all: bool,
        /// Run one certificate: w5_not_4, w6_not_4, adversarial,
        /// k4_minus_edge, prism_not_5, halin_duality, xk_three_colorability.
        #[arg(long)]
        name: Option<String>,
        /// Wheel size for `adversarial`.
        #[arg(long)]
        n: Option<usize>,
        /// Ring size for `xk_three_colorability`.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Render DOT: the primal graph, the dual overlay, or the incidence
    /// graph.
    ExportDot {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = DotMode::Primal)]
        mode: DotMode,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Time the constructive wheel pipeline over growing sizes (median of
    /// the given trials per size).
    Bench {
        #[arg(long, default_value = "100,1000,10000,100000")]
        sizes: String,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 15)]
        palette: i32,
    },
}

/// Parse `std::env::args` and run; returns the process exit code.
pub fn main() -> i32 {
    let cli = Cli::parse();
    run(cli)
}

pub fn run(cli: Cli) -> i32 {
    match dispatch(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, String> {
    match cli.command {
        Command::Gen {
            kind,
            n,
            out,
            graph6,
            rotations,
            lists_out,
            list_size,
            palette,
            seed,
        } => gen(kind, n, out, graph6, rotations, lists_out, list_size, palette, seed),
        Command::Color {
            graph,
            lists,
            out,
            trace_out,
            solver,
            budget,
        } => color(graph, lists, out, trace_out, solver, budget),
        Command::Verify {
            graph,
            lists,
            coloring,
        } => verify(graph, lists, coloring),
        Command::Certify {
            all,
            name,
            n,
            k,
            budget,
        } => certify(all, name, n, k, budget),
        Command::ExportDot { graph, mode, out } => export_dot(graph, mode, out),
        Command::Bench {
            sizes,
            trials,
            seed,
            palette,
        } => bench(&sizes, trials, seed, palette),
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(out: Option<PathBuf>, contents: &str) -> Result<(), String> {
    match out {
        Some(path) => fs::write(&path, contents).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn env_budget() -> Option<u64> {
    std::env::var(BUDGET_ENV).ok().and_then(|s| s.parse().ok())
}

#[allow(clippy::too_many_arguments)]
fn gen(
    kind: GenKind,
    n: Option<usize>,
    out: Option<PathBuf>,
    graph6: Option<PathBuf>,
    rotations: Option<PathBuf>,
    lists_out: Option<PathBuf>,
    list_size: usize,
    palette: i32,
    seed: u64,
) -> Result<i32, String> {
    let need_n = |kind: &str| n.ok_or(format!("--n is required for kind {kind}"));
    let g: PlaneGraph = match kind {
        GenKind::Wheel => build_wheel(need_n("wheel")?).map_err(|e| e.to_string())?.0,
        GenKind::Cycle => {
            build_named(NamedGraph::Cycle(need_n("cycle")?)).map_err(|e| e.to_string())?
        }
        GenKind::TripleEdge => build_named(NamedGraph::TripleEdge).map_err(|e| e.to_string())?,
        GenKind::Prism => build_named(NamedGraph::HalinPrism).map_err(|e| e.to_string())?,
        GenKind::K4MinusEdge => {
            build_named(NamedGraph::K4MinusEdge).map_err(|e| e.to_string())?
        }
        GenKind::StellatedCycle => {
            let c = build_named(NamedGraph::Cycle(need_n("stellated-cycle")?))
                .map_err(|e| e.to_string())?;
            c.stellate_face(c.outer_face()).map_err(|e| e.to_string())?.0
        }
        GenKind::StellatedK4MinusEdge => {
            let h = build_named(NamedGraph::K4MinusEdge).map_err(|e| e.to_string())?;
            let quad = h
                .face_ids()
                .find(|&f| h.face_walk(f).len() == 4)
                .expect("K4 - e has a quad face");
            let o = h.reroot_outer_face(quad).map_err(|e| e.to_string())?;
            o.stellate_face(quad).map_err(|e| e.to_string())?.0
        }
        GenKind::Graph6 => {
            let g6_path = graph6.ok_or("--graph6 is required for kind graph6")?;
            let rot_path = rotations.ok_or("--rotations is required for kind graph6")?;
            let g6 = read(&g6_path)?;
            let rots: Vec<Vec<usize>> = serde_json::from_str(read(&rot_path)?.trim())
                .map_err(|e| format!("rotations JSON: {e}"))?;
            io::plane_graph_from_graph6(g6.trim(), &rots).map_err(|e| e.to_string())?
        }
    };
    if let Some(lists_path) = lists_out {
        let lists = random_lists(&g, list_size, palette, seed)?;
        fs::write(&lists_path, io::lists_to_json(&lists))
            .map_err(|e| format!("{}: {e}", lists_path.display()))?;
    }
    emit(out, &io::graph_to_json(&g))?;
    Ok(0)
}

fn random_lists(
    g: &PlaneGraph,
    list_size: usize,
    palette: i32,
    seed: u64,
) -> Result<ListAssignment, String> {
    if (palette as usize) < list_size {
        return Err(format!("palette {palette} smaller than list size {list_size}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lists = ListAssignment::new();
    for e in g.elements() {
        let mut set = std::collections::BTreeSet::new();
        while set.len() < list_size {
            set.insert(rng.gen_range(1..=palette));
        }
        lists.insert(e, set);
    }
    Ok(lists)
}

fn color(
    graph: PathBuf,
    lists: PathBuf,
    out: Option<PathBuf>,
    trace_out: Option<PathBuf>,
    solver: SolverChoice,
    budget: Option<u64>,
) -> Result<i32, String> {
    let g = io::graph_from_json(&read(&graph)?).map_err(|e| e.to_string())?;
    let l = io::lists_from_json(&read(&lists)?).map_err(|e| e.to_string())?;
    let budget = budget
        .or_else(env_budget)
        .unwrap_or(crate::solver::DEFAULT_BUDGET);
    let outcome = auto_color(&g, &l, solver == SolverChoice::Exact, Some(budget))
        .map_err(|e| e.to_string())?;
    match outcome {
        AutoOutcome::Colored { coloring, trace } => {
            if let Some(path) = trace_out {
                let mut s = serde_json::to_string_pretty(&trace).map_err(|e| e.to_string())?;
                s.push('\n');
                fs::write(&path, s).map_err(|e| format!("{}: {e}", path.display()))?;
            }
            emit(out, &io::coloring_to_json(&coloring))?;
            Ok(0)
        }
        AutoOutcome::Unsat => {
            eprintln!("unsatisfiable: no coupled coloring exists for these lists");
            Ok(2)
        }
        AutoOutcome::Aborted { budget } => {
            eprintln!("aborted: budget of {budget} search nodes exceeded");
            Ok(3)
        }
    }
}

fn verify(graph: PathBuf, lists: PathBuf, coloring: PathBuf) -> Result<i32, String> {
    let g = io::graph_from_json(&read(&graph)?).map_err(|e| e.to_string())?;
    let l = io::lists_from_json(&read(&lists)?).map_err(|e| e.to_string())?;
    let c = io::coloring_from_json(&read(&coloring)?).map_err(|e| e.to_string())?;
    let x = build_incidence_graph(&g);
    match verify_coupled_coloring(&x, &l, &c).map_err(|e| e.to_string())? {
        Verdict::Valid => {
            println!("Valid");
            Ok(0)
        }
        Verdict::Violation(v) => {
            println!("Violation: {v}");
            Ok(2)
        }
    }
}

fn certify(
    all: bool,
    name: Option<String>,
    n: Option<usize>,
    k: Option<usize>,
    budget: Option<u64>,
) -> Result<i32, String> {
    let budget = budget.or_else(env_budget);
    let named = (!all).then_some(name).flatten();
    let suite: Vec<Certificate> = match named {
        None => Certificate::default_suite(),
        Some(name) => vec![match name.as_str() {
            "w5_not_4" => Certificate::W5Not4,
            "w6_not_4" => Certificate::W6Not4,
            "adversarial" => {
                let n = n.unwrap_or(7);
                Certificate::Adversarial { lo: n, hi: n }
            }
            "k4_minus_edge" => Certificate::K4MinusEdge,
            "prism_not_5" => Certificate::PrismNot5,
            "halin_duality" => Certificate::HalinDuality,
            "xk_three_colorability" => {
                let k = k.unwrap_or(5);
                Certificate::XkThreeColorability { lo: k, hi: k }
            }
            other => return Err(format!("unknown certificate {other:?}")),
        }],
    };
    let mut worst = 0;
    for cert in suite {
        let report = run_certificate_with_budget(cert, budget);
        println!(
            "{}",
            serde_json::to_string(&report).map_err(|e| e.to_string())?
        );
        worst = worst.max(match report.status {
            CertificateStatus::Confirmed => 0,
            CertificateStatus::Refuted => 2,
            CertificateStatus::Incomplete => 3,
        });
    }
    Ok(worst)
}

fn export_dot(graph: PathBuf, mode: DotMode, out: Option<PathBuf>) -> Result<i32, String> {
    let g = io::graph_from_json(&read(&graph)?).map_err(|e| e.to_string())?;
    let rendered = match mode {
        DotMode::Primal => io::dot_primal(&g),
        DotMode::Dual => io::dot_dual_overlay(&g),
        DotMode::Incidence => io::dot_incidence(&build_incidence_graph(&g)),
    };
    emit(out, &rendered)?;
    Ok(0)
}

fn bench(sizes: &str, trials: usize, seed: u64, palette: i32) -> Result<i32, String> {
    let sizes: Vec<usize> = sizes
        .split(',')
        .map(|s| s.trim().parse().map_err(|_| format!("bad size {s:?}")))
        .collect::<Result<_, _>>()?;
    if trials == 0 {
        return Err("--trials must be positive".into());
    }
    println!("{:>10} {:>10} {:>12}", "n", "trials", "median_ms");
    for &n in &sizes {
        let (w, _) = build_wheel(n).map_err(|e| e.to_string())?;
        let elements: Vec<ElementRef> = w.elements();
        let mut times = Vec::with_capacity(trials);
        for t in 0..trials {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((n as u64) << 20) ^ t as u64);
            let mut lists = ListAssignment::new();
            for &e in &elements {
                let mut set = std::collections::BTreeSet::new();
                while set.len() < 5 {
                    set.insert(rng.gen_range(1..=palette));
                }
                lists.insert(e, set);
            }
            let start = Instant::now();
            let coloring = color_wheel(n, &lists).map_err(|e| e.to_string())?;
            times.push(start.elapsed().as_secs_f64() * 1e3);
            std::hint::black_box(coloring);
        }
        times.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let median = times[times.len() / 2];
        println!("{:>10} {:>10} {:>12.3}", n, trials, median);
    }
    Ok(0)
}
