//! Command-line front end: load manifests, run computations and the
//! verification suites, emit tables, DOT files and machine-readable lines.
//!
//! Exit codes: 0 success, 2 input error, 3 resource limit, 4 insufficient
//! truncation order, 1 failed verification.

mod manifest;
mod output;
mod verify;

use clap::{Parser, Subcommand};
use graphweights::graph::{
    aut_order, class_name, enumerate_graphs, graph_differential, named_graphs, pair_rat,
    parse_graph, to_dot, EnumLimits, ExtGraph, GraphChain, GraphCochain, GraphError, Valence,
};
use graphweights::weights::{lie_weights, pair_with_diagram_rat, rw_weights, WeightError};
use graphweights::{fmt_rat, rat_int};
use manifest::Manifest;
use output::{emit, Format, Line};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "graphweights",
    version,
    about = "Exact workbench for graph complexes, chord-diagram weights and jet identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Truncation order for jet suites.
    #[arg(long, global = true)]
    order: Option<u32>,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Graph-complex operations on graphs in text form or by name.
    Graph {
        #[command(subcommand)]
        action: GraphAction,
    },
    /// Weight tables from a Lie or curvature manifest.
    Weights {
        /// Manifest path.
        manifest: String,
        /// Total vertex count.
        #[arg(long, default_value_t = 4)]
        m: u32,
        /// Diagrams to pair against, by reference name or text form; the
        /// full table is printed when omitted.
        #[arg(long)]
        diagram: Vec<String>,
    },
    /// Identity suites; one pass/fail line per item.
    Verify {
        /// One of: flatness, key-id, variation, chain-map, ce-d2,
        /// graph-d2, rw.
        suite: String,
        /// Manifest path; jet suites read dimensions from it.
        manifest: Option<String>,
    },
    /// DOT export of a graph or of every graph in a graphs manifest.
    ExportDot {
        /// Graph text, a reference name, or a manifest path.
        input: String,
        /// Output path; defaults to the input path with `.dot`, or stdout
        /// for inline graphs.
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Subcommand)]
enum GraphAction {
    /// Boundary of a graph.
    Diff { graph: String },
    /// Order of the vertex automorphism group.
    Aut { graph: String },
    /// Canonical classes with the given counts and valences.
    Enumerate {
        #[arg(long)]
        internal: u32,
        #[arg(long)]
        peripheral: u32,
        #[arg(long, default_value_t = 3)]
        valence: u32,
        /// Bound the valences instead of fixing them.
        #[arg(long)]
        loose: bool,
    },
    /// Pairing of a dual class against a formal sum of graphs.
    Pair { cochain: String, chain: Vec<String> },
}

fn resolve_graph(text: &str) -> Result<ExtGraph, GraphError> {
    for (name, g) in named_graphs() {
        if name.eq_ignore_ascii_case(text.trim()) {
            return Ok(g);
        }
    }
    parse_graph(text)
}

type Failure = (u8, String);

fn bad_input(e: impl std::fmt::Display) -> Failure {
    (2, e.to_string())
}

fn run(cli: Cli) -> Result<Vec<Line>, Failure> {
    match cli.command {
        Command::Graph { action } => match action {
            GraphAction::Diff { graph } => {
                let g = resolve_graph(&graph).map_err(bad_input)?;
                let mut chain: GraphChain = GraphChain::new();
                chain.add_graph(&g, rat_int(1)).map_err(bad_input)?;
                let boundary = graph_differential(&chain).map_err(bad_input)?;
                Ok(output::chain_lines(&boundary))
            }
            GraphAction::Aut { graph } => {
                let g = resolve_graph(&graph).map_err(bad_input)?;
                Ok(vec![Line::kv("aut", &aut_order(&g).to_string())])
            }
            GraphAction::Enumerate { internal, peripheral, valence, loose } => {
                let v = if loose { Valence::at_most(valence) } else { Valence::exactly(valence) };
                let pv = if loose { Valence::at_most(2) } else { Valence::exactly(1) };
                let classes = enumerate_graphs(internal, peripheral, v, pv, &EnumLimits::default())
                    .map_err(|e| match e {
                        GraphError::ResourceLimit(_) => (3, e.to_string()),
                        other => bad_input(other),
                    })?;
                Ok(classes.iter().map(|c| Line::graph(c.graph())).collect())
            }
            GraphAction::Pair { cochain, chain } => {
                let b = resolve_graph(&cochain).map_err(bad_input)?;
                let dual = GraphCochain::dual_of(&b).map_err(bad_input)?;
                let mut ch: GraphChain = GraphChain::new();
                for g in &chain {
                    let g = resolve_graph(g).map_err(bad_input)?;
                    ch.add_graph(&g, rat_int(1)).map_err(bad_input)?;
                }
                Ok(vec![Line::kv("pairing", &fmt_rat(&pair_rat(&dual, &ch)))])
            }
        },
        Command::Weights { manifest, m, diagram } => {
            let mf = manifest::load(&manifest).map_err(bad_input)?;
            match mf {
                Manifest::Lie(lm) => {
                    let data = lm.to_data().map_err(bad_input)?;
                    let w = lie_weights(&data, m).map_err(bad_input)?;
                    let mut lines = Vec::new();
                    if diagram.is_empty() {
                        for (class, c) in w.terms() {
                            let name = class_name(class)
                                .map(str::to_string)
                                .unwrap_or_else(|| class.graph().to_string());
                            lines.push(Line::weight(&name, &fmt_rat(c)));
                        }
                    } else {
                        for d in &diagram {
                            let g = resolve_graph(d).map_err(bad_input)?;
                            let dual = GraphCochain::dual_of(&g).map_err(bad_input)?;
                            let val = pair_with_diagram_rat(&w, &dual);
                            lines.push(Line::weight(d, &fmt_rat(&val)));
                        }
                    }
                    Ok(lines)
                }
                Manifest::Rw(rm) => {
                    let data = rm.to_data().map_err(bad_input)?;
                    let w = rw_weights(&data, m).map_err(|e| match e {
                        WeightError::TruncationTooLow => (4, e.to_string()),
                        other => bad_input(other),
                    })?;
                    let mut lines = Vec::new();
                    for (class, c) in w.chain.terms() {
                        let name = class_name(class)
                            .map(str::to_string)
                            .unwrap_or_else(|| class.graph().to_string());
                        lines.push(Line::tensor(&name, &c.to_string()));
                    }
                    lines.push(Line::kv(
                        "boundary",
                        if w.boundary.is_zero() { "0" } else { "exact-term (reported, not zero)" },
                    ));
                    Ok(lines)
                }
                _ => Err(bad_input("weights needs a lie or rw manifest")),
            }
        }
        Command::Verify { suite, manifest } => {
            verify::run(&suite, manifest.as_deref(), cli.seed, cli.order)
        }
        Command::ExportDot { input, out } => {
            let mut lines = Vec::new();
            let path = std::path::Path::new(&input);
            if path.exists() {
                let mf = manifest::load(&input).map_err(bad_input)?;
                let Manifest::Graphs(gm) = mf else {
                    return Err(bad_input("export-dot needs a graphs manifest"));
                };
                let mut dots = String::new();
                for (i, text) in gm.graphs.iter().enumerate() {
                    let g = parse_graph(text).map_err(bad_input)?;
                    dots.push_str(&to_dot(&g, &format!("g{i}")));
                }
                let target = out.unwrap_or_else(|| format!("{input}.dot"));
                std::fs::write(&target, dots).map_err(bad_input)?;
                lines.push(Line::kv("wrote", &target));
            } else {
                let g = resolve_graph(&input).map_err(bad_input)?;
                let dot = to_dot(&g, "g");
                match out {
                    Some(target) => {
                        std::fs::write(&target, dot).map_err(bad_input)?;
                        lines.push(Line::kv("wrote", &target));
                    }
                    None => lines.push(Line::kv("dot", &dot)),
                }
            }
            Ok(lines)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(lines) => {
            emit(&lines, format);
            if lines.iter().any(Line::is_failure) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
