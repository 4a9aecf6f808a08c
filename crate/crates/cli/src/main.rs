//! Command-line front end: every subcommand reads the text graph format
//! (`-` for standard input), prints a deterministic text answer, and mirrors
//! it as JSON under `--json`. Decision answers are printed, never encoded in
//! the exit code; exit code 2 signals malformed input or usage.

use std::io::Read;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use wiener::constructions::{
    build_dk_stage, closed_form, closed_form_integer, find_center_vertex, format_rational,
    is_zigzag, ClosedFormId, Stage, TkInstance, ZigzagMethod,
};
use wiener::graph::{serialize_with_labels, MixedGraph};
use wiener::reduction::{
    build_gadget, hampath_bruteforce, verify_forward_reduction, GadgetInstance,
};
use wiener::solver::{
    orient_local_search, orient_max_exact, orient_min_exact, tournament_max, SearchReport, Strategy,
};
use wiener::transitive::{find_transitive_orientation, is_transitive};

#[derive(Parser)]
#[command(
    name = "wiener",
    about = "Wiener indices of mixed graphs and search over graph orientations",
    version
)]
struct Cli {
    /// Emit the result as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Wiener index of a graph file.
    Wiener {
        /// Graph file path, or "-" for standard input.
        file: String,
        /// Which variant to compute; "auto" picks by graph kind.
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
    },
    /// Search over the orientations of a graph.
    Orient {
        #[command(subcommand)]
        direction: OrientCommand,
    },
    /// Generate a family member (tk, dk, dkprime, dkdoubleprime,
    /// dktripleprime).
    Gen { stage: Stage, k: usize },
    /// Evaluate a closed form (W_TK, W_DK, WMAX_DKPRIME, WMAX_U_WTAIL,
    /// WMAX_U_X, CLAIM5_A, CLAIM5_B) at k.
    Closedform { id: ClosedFormId, k: usize },
    /// Whether a tree orientation is zig-zag.
    Zigzag {
        file: String,
        #[arg(long, default_value = "path-changes")]
        method: ZigzagMethod,
    },
    /// Find a centre vertex of a tree orientation, if any.
    Center { file: String },
    /// Build the pendant-star gadget over a source graph.
    Gadget { file: String, a: usize, b: usize },
    /// Search for a Hamiltonian (a,b)-path by backtracking.
    Hampath { file: String, a: usize, b: usize },
    /// Certify the path-to-orientation construction on an instance.
    ReductionVerify { file: String, a: usize, b: usize },
    /// Transitivity of a digraph, or comparability of a graph.
    Transitive { file: String },
    /// Maximum Wiener index over all labelled tournaments of order n.
    TournamentMax { n: usize },
}

#[derive(Subcommand)]
enum OrientCommand {
    /// Maximise the Wiener index.
    Max {
        file: String,
        #[arg(long, default_value_t = Strategy::Exhaustive)]
        strategy: Strategy,
        /// Report every optimal orientation (exact strategies only).
        #[arg(long)]
        all_optima: bool,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Random restarts for the local strategy.
        #[arg(long, default_value_t = 8)]
        restarts: u32,
        /// RNG seed for the local strategy.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Minimise the Wiener index.
    Min {
        file: String,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Auto,
    Undirected,
    Directed,
    Max,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<String> {
    let json = cli.json;
    match cli.command {
        Command::Wiener { file, mode } => cmd_wiener(&read_graph(&file)?, mode, json),
        Command::Orient { direction } => match direction {
            OrientCommand::Max {
                file,
                strategy,
                all_optima,
                workers,
                restarts,
                seed,
            } => {
                let g = read_graph(&file)?;
                let report = match strategy {
                    Strategy::Local => {
                        if all_optima {
                            bail!("--all-optima requires an exact strategy");
                        }
                        orient_local_search(&g, restarts, seed)?
                    }
                    _ => orient_max_exact(&g, strategy, all_optima, workers)?,
                };
                Ok(render_report(&report, json))
            }
            OrientCommand::Min { file, workers } => {
                let report = orient_min_exact(&read_graph(&file)?, workers)?;
                Ok(render_report(&report, json))
            }
        },
        Command::Gen { stage, k } => cmd_gen(stage, k, json),
        Command::Closedform { id, k } => cmd_closedform(id, k, json),
        Command::Zigzag { file, method } => {
            let zigzag = is_zigzag(&read_graph(&file)?, method)?;
            if json {
                let method_name = match method {
                    ZigzagMethod::PathChanges => "path-changes",
                    ZigzagMethod::Center => "center",
                };
                Ok(format!(
                    "{}\n",
                    json!({ "zigzag": zigzag, "method": method_name })
                ))
            } else {
                Ok(format!("zigzag: {}\n", yes_no(zigzag)))
            }
        }
        Command::Center { file } => {
            let center = find_center_vertex(&read_graph(&file)?)?;
            if json {
                Ok(format!("{}\n", json!({ "center": center })))
            } else {
                match center {
                    Some(v) => Ok(format!("center: {v}\n")),
                    None => Ok("center: none\n".to_string()),
                }
            }
        }
        Command::Gadget { file, a, b } => {
            let gi = build_gadget(&read_graph(&file)?, a, b)?;
            cmd_gadget(&gi, json)
        }
        Command::Hampath { file, a, b } => {
            let path = hampath_bruteforce(&read_graph(&file)?, a, b)?;
            if json {
                let vertices = path.as_ref().map(|p| p.vertices().to_vec());
                Ok(format!("{}\n", json!({ "path": vertices })))
            } else {
                match path {
                    Some(p) => Ok(format!("path: {}\n", join_usize(p.vertices()))),
                    None => Ok("path: none\n".to_string()),
                }
            }
        }
        Command::ReductionVerify { file, a, b } => {
            let report = verify_forward_reduction(&read_graph(&file)?, a, b)?;
            if json {
                Ok(format!("{}\n", serde_json::to_string(&report)?))
            } else {
                let mut out = String::new();
                out.push_str(&format!("n {}\n", report.n));
                out.push_str(&format!("gadget_order {}\n", report.gadget_order));
                out.push_str(&format!("threshold {}\n", report.threshold));
                if let Some(path) = &report.path {
                    out.push_str(&format!("path {}\n", join_usize(path)));
                }
                if let Some(w) = report.wiener {
                    out.push_str(&format!("wiener {w}\n"));
                }
                if let Some(w) = report.wiener_between_a_b {
                    out.push_str(&format!("wiener_between_a_b {w}\n"));
                }
                for check in &report.checks {
                    out.push_str(&format!(
                        "check {}: {} ({})\n",
                        check.name,
                        if check.passed { "PASS" } else { "FAIL" },
                        check.detail
                    ));
                }
                let overall = if report.vacuous {
                    "VACUOUS (no hamiltonian (a,b)-path)"
                } else if report.passed {
                    "PASS"
                } else {
                    "FAIL"
                };
                out.push_str(&format!("overall: {overall}\n"));
                Ok(out)
            }
        }
        Command::Transitive { file } => cmd_transitive(&read_graph(&file)?, json),
        Command::TournamentMax { n } => {
            let report = tournament_max(n)?;
            let arcs: Vec<String> = report
                .witness
                .arcs()
                .iter()
                .map(|(u, v)| format!("{u}->{v}"))
                .collect();
            if json {
                Ok(format!(
                    "{}\n",
                    json!({
                        "n": report.n,
                        "value": report.value,
                        "binomial_bound": report.binomial_bound,
                        "witness": arcs,
                    })
                ))
            } else {
                Ok(format!(
                    "n {}\nvalue {}\nbinomial_bound {}\nwitness {}\n",
                    report.n,
                    report.value,
                    report.binomial_bound,
                    arcs.join(" ")
                ))
            }
        }
    }
}

fn read_graph(path: &str) -> Result<MixedGraph> {
    let text = if path == "-" {
        let mut buffer = String::new();
        std::io::stdin()
            .read_to_string(&mut buffer)
            .context("reading standard input")?;
        buffer
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?
    };
    text.parse::<MixedGraph>()
        .with_context(|| format!("parsing {path}"))
}

fn yes_no(v: bool) -> &'static str {
    if v {
        "yes"
    } else {
        "no"
    }
}

fn join_usize(values: &[usize]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_wiener(g: &MixedGraph, mode: Mode, json: bool) -> Result<String> {
    let mode = match mode {
        Mode::Auto => {
            if g.is_arc_free() {
                Mode::Undirected
            } else if g.is_digraph() {
                Mode::Directed
            } else {
                Mode::Max
            }
        }
        other => other,
    };
    let (name, value) = match mode {
        Mode::Undirected => ("undirected", g.wiener_undirected()?),
        Mode::Directed => ("directed", g.wiener_directed()?),
        Mode::Max => ("max", g.wiener_max()?),
        Mode::Auto => unreachable!("auto resolved above"),
    };
    if json {
        Ok(format!("{}\n", json!({ "mode": name, "value": value })))
    } else {
        Ok(format!("{value}\n"))
    }
}

fn render_report(report: &SearchReport, json: bool) -> String {
    if json {
        return format!("{}\n", report.to_json_string());
    }
    let mut out = String::new();
    out.push_str(&format!("objective {}\n", report.objective.name()));
    out.push_str(&format!("strategy {}\n", report.strategy.name()));
    out.push_str(&format!("value {}\n", report.value));
    out.push_str(&format!("explored {}\n", report.explored));
    out.push_str(&format!("pruned {}\n", report.pruned));
    for witness in &report.witnesses {
        out.push_str(&format!("witness {}\n", witness.arrow_strings().join(" ")));
    }
    out
}

fn cmd_gen(stage: Stage, k: usize, json: bool) -> Result<String> {
    let instance = build_dk_stage(k, stage)?;
    if json {
        Ok(format!("{}\n", instance_json(&instance, stage)))
    } else {
        Ok(serialize_with_labels(
            &instance.graph,
            &instance.roles.labels(),
        ))
    }
}

fn instance_json(instance: &TkInstance, stage: Stage) -> serde_json::Value {
    json!({
        "stage": stage.name(),
        "k": instance.k,
        "vertices": instance.graph.n(),
        "labels": instance.roles.labels(),
        "undirected": instance.graph.undirected_edges(),
        "arcs": instance.graph.arcs(),
    })
}

fn cmd_closedform(id: ClosedFormId, k: usize, json: bool) -> Result<String> {
    let value = closed_form(id, k)?;
    let rendered = if id.guarantees_integrality() {
        closed_form_integer(id, k)?.to_string()
    } else {
        format_rational(&value)
    };
    if json {
        Ok(format!(
            "{}\n",
            json!({
                "id": id.name(),
                "k": k,
                "value": rendered,
                "integral": value.denom() == &1,
            })
        ))
    } else {
        Ok(format!("{rendered}\n"))
    }
}

fn cmd_gadget(gi: &GadgetInstance, json: bool) -> Result<String> {
    let (a_lo, a_hi) = gi.a_leaf_range();
    let (b_lo, b_hi) = gi.b_leaf_range();
    if json {
        return Ok(format!(
            "{}\n",
            json!({
                "n": gi.n,
                "a": gi.a,
                "b": gi.b,
                "a0": gi.a0(),
                "b0": gi.b0(),
                "a_leaves": [a_lo, a_hi],
                "b_leaves": [b_lo, b_hi],
                "vertices": gi.graph.n(),
                "undirected": gi.graph.undirected_edges(),
                "arcs": gi.graph.arcs(),
            })
        ));
    }
    let mut out = format!("vertices {}\n", gi.graph.n());
    for (index, name) in gi.labels() {
        out.push_str(&format!("# label {index} {name}\n"));
    }
    let leaves = gi.leaf_count();
    out.push_str(&format!("# label {a_lo}..{a_hi} a1..a{leaves}\n"));
    out.push_str(&format!("# label {b_lo}..{b_hi} b1..b{leaves}\n"));
    for &(u, v) in gi.graph.undirected_edges() {
        out.push_str(&format!("{u} -- {v}\n"));
    }
    for &(u, v) in gi.graph.arcs() {
        out.push_str(&format!("{u} -> {v}\n"));
    }
    Ok(out)
}

fn cmd_transitive(g: &MixedGraph, json: bool) -> Result<String> {
    if g.is_digraph() {
        let transitive = is_transitive(g)?;
        if json {
            Ok(format!(
                "{}\n",
                json!({ "kind": "digraph", "transitive": transitive })
            ))
        } else {
            Ok(format!("transitive: {}\n", yes_no(transitive)))
        }
    } else if g.is_arc_free() {
        let witness = find_transitive_orientation(g)?;
        let arrows = witness.as_ref().map(|w| w.arrow_strings());
        if json {
            Ok(format!(
                "{}\n",
                json!({
                    "kind": "graph",
                    "comparability": arrows.is_some(),
                    "witness": arrows,
                })
            ))
        } else {
            match arrows {
                Some(arrows) => Ok(format!(
                    "comparability: yes\nwitness: {}\n",
                    arrows.join(" ")
                )),
                None => Ok("comparability: no\n".to_string()),
            }
        }
    } else {
        bail!("transitive expects a digraph or an undirected graph, not a mixed graph");
    }
}
