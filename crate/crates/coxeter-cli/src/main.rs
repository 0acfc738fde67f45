//! Command-line front end: root tables, centralizer analysis,
//! fixing-property verification, standard decompositions, and the built-in regression
//! walk. Exit codes: 0 success/verified, 1 refuted, 2 truncated or
//! incomplete, 3 input error.

use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use coxeter::centralizer::{
    analyze, carries_perp_positively, regression_subset, walk, Limits, Tuple,
    REGRESSION_WALK_PIVOTS,
};
use coxeter::decomp::{is_standard, standard_decomposition};
use coxeter::geom::{from_word, inversion_set, length_and_word, root_table, Root};
use coxeter::graph::{
    parse_indices, parse_subset, parse_type_name, regression_graph, CoxeterGraph, GenSet,
};

const EXIT_OK: u8 = 0;
const EXIT_REFUTED: u8 = 1;
const EXIT_INCOMPLETE: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "coxeter",
    about = "Exact computations in Coxeter groups: root systems, reflection subgroups, and centralizers of parabolic subgroups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Tsv,
    Dot,
}

#[derive(clap::Args)]
struct GraphArgs {
    /// graph file (`nodes <n>` then `edge <i> <j> <m|inf>` lines)
    #[arg(long)]
    graph: Option<String>,
    /// finite type name such as E8, B5, D7, H4, I2(5)
    #[arg(long = "type")]
    type_name: Option<String>,
}

impl GraphArgs {
    fn load(&self) -> Result<CoxeterGraph, String> {
        match (&self.graph, &self.type_name) {
            (Some(path), None) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| format!("cannot read {path}: {e}"))?;
                CoxeterGraph::parse(&text).map_err(|e| e.to_string())
            }
            (None, Some(name)) => parse_type_name(name).map_err(|e| e.to_string()),
            _ => Err("exactly one of --graph and --type is required".into()),
        }
    }
}

#[derive(clap::Args)]
struct LimitArgs {
    #[arg(long, default_value_t = 5000)]
    max_nodes: usize,
    #[arg(long, default_value_t = 20000)]
    max_edges: usize,
    #[arg(long, default_value_t = 20000)]
    max_roots: usize,
}

impl LimitArgs {
    fn limits(&self) -> Limits {
        Limits {
            max_nodes: self.max_nodes,
            max_edges: self.max_edges,
            max_roots: self.max_roots,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Emit the positive-root table of a finite-type graph or subset
    Roots {
        #[command(flatten)]
        graph: GraphArgs,
        /// comma-separated 1-based generators (defaults to all)
        #[arg(long)]
        subset: Option<String>,
        /// emit a depth-bounded window instead of the full (finite)
        /// system; works for infinite groups too
        #[arg(long)]
        window: bool,
        /// depth bound for --window
        #[arg(long, default_value_t = 12)]
        depth: usize,
        /// root cap for --window (truncation exits with code 2)
        #[arg(long, default_value_t = 20000)]
        max_roots: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Analyse the centralizer of the parabolic subgroup on a subset
    Centralizer {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        subset: String,
        #[command(flatten)]
        limits: LimitArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check that every found loop generator fixes every finite-part
    /// perpendicular simple root
    Verify {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        subset: String,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Standard decomposition of an element given as a word
    Decompose {
        #[command(flatten)]
        graph: GraphArgs,
        /// the element, as comma-separated 1-based generator indices
        #[arg(long)]
        word: String,
        /// source tuple (comma-separated 1-based indices, ordered)
        #[arg(long)]
        source: String,
        /// target tuple (comma-separated 1-based indices, ordered)
        #[arg(long)]
        target: String,
        /// tracked subset
        #[arg(long)]
        subset: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the built-in regression walk on the 7-node fixture graph
    Counterexample,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, code)) => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(out.as_bytes()) {
                Ok(()) => ExitCode::from(code),
                // a closed pipe is the consumer's business, not an error
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::from(code),
                Err(e) => {
                    eprintln!("error: cannot write output: {e}");
                    ExitCode::from(EXIT_INPUT)
                }
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

type CmdResult = Result<(String, u8), String>;

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Roots {
            graph,
            subset,
            window,
            depth,
            max_roots,
            format,
        } => {
            if window {
                cmd_root_window(graph, depth, max_roots, format)
            } else {
                cmd_roots(graph, subset, format)
            }
        }
        Command::Centralizer {
            graph,
            subset,
            limits,
            format,
        } => cmd_centralizer(graph, &subset, &limits, format),
        Command::Verify {
            graph,
            subset,
            limits,
        } => cmd_verify(graph, &subset, &limits),
        Command::Decompose {
            graph,
            word,
            source,
            target,
            subset,
            format,
        } => cmd_decompose(graph, &word, &source, &target, &subset, format),
        Command::Counterexample => cmd_counterexample(),
    }
}

fn subset_of(g: &CoxeterGraph, text: &str) -> Result<GenSet, String> {
    parse_subset(text, g.rank()).map_err(|e| e.to_string())
}

fn reject_dot(format: Format) -> Result<(), String> {
    if format == Format::Dot {
        return Err("dot output is only available for the centralizer command".into());
    }
    Ok(())
}

fn cmd_roots(graph: GraphArgs, subset: Option<String>, format: Format) -> CmdResult {
    reject_dot(format)?;
    let g = graph.load()?;
    let set = match subset {
        Some(text) => subset_of(&g, &text)?,
        None => g.all(),
    };
    let table = match root_table(&g, set) {
        Ok(t) => t,
        Err(coxeter::Error::NotFiniteType { subset }) => {
            // name the offending component for the caller
            let comp = coxeter::graph::components(&g, subset)
                .into_iter()
                .find(|&c| !coxeter::graph::is_finite_type(&g, c).unwrap_or(false));
            return Err(match comp {
                Some(c) => {
                    format!("subset {subset} is not of finite type: component {c} is infinite")
                }
                None => format!("subset {subset} is not of finite type"),
            });
        }
        Err(e) => return Err(e.to_string()),
    };
    let out = match format {
        Format::Tsv => table.to_tsv(),
        _ => table.to_text(),
    };
    Ok((out, EXIT_OK))
}

fn cmd_root_window(graph: GraphArgs, depth: usize, max_roots: usize, format: Format) -> CmdResult {
    reject_dot(format)?;
    let g = graph.load()?;
    let window = coxeter::geom::roots_up_to_depth(&g, depth, max_roots);
    let mut out = String::new();
    match format {
        Format::Tsv => {
            let _ = writeln!(out, "index\tcoeffs");
            for (i, r) in window.roots.iter().enumerate() {
                let _ = writeln!(out, "{}\t{r}", i + 1);
            }
            let _ = writeln!(out, "truncated\t{}", window.truncated);
        }
        _ => {
            let _ = writeln!(
                out,
                "depth-bounded window (depth {depth}): {} positive roots{}",
                window.roots.len(),
                if window.truncated {
                    ", truncated at the root cap"
                } else {
                    ""
                }
            );
            for r in &window.roots {
                let _ = writeln!(out, "  {r}");
            }
        }
    }
    Ok((
        out,
        if window.truncated {
            EXIT_INCOMPLETE
        } else {
            EXIT_OK
        },
    ))
}

fn cmd_centralizer(graph: GraphArgs, subset: &str, limits: &LimitArgs, format: Format) -> CmdResult {
    let g = graph.load()?;
    let set = subset_of(&g, subset)?;
    let report = analyze(&g, set, &limits.limits()).map_err(|e| e.to_string())?;
    let out = match format {
        Format::Text => report.to_text(),
        Format::Tsv => report.to_tsv(),
        Format::Dot => report.to_dot(),
    };
    let code = if report.complete() {
        EXIT_OK
    } else {
        EXIT_INCOMPLETE
    };
    Ok((out, code))
}

fn cmd_verify(graph: GraphArgs, subset: &str, limits: &LimitArgs) -> CmdResult {
    let g = graph.load()?;
    let set = subset_of(&g, subset)?;
    let report = analyze(&g, set, &limits.limits()).map_err(|e| e.to_string())?;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "hypothesis: subset {} free of A_n components (2 <= n): {}",
        set, report.hypothesis_a_gt1_free
    );
    let _ = writeln!(
        out,
        "groupoid: {} nodes ({} underlying sets), {} edges, complete: {}",
        report.groupoid.nodes.len(),
        report.groupoid.distinct_sets().len(),
        report.groupoid.edges.len(),
        report.groupoid.complete
    );
    let _ = writeln!(
        out,
        "perp simple roots: {} (closure complete: {}), finite part: {}",
        report.perp_simple.len(),
        report.perp_complete,
        report.finite_part.finite.len()
    );
    let _ = writeln!(out, "loop generators found: {}", report.generators.len());
    let (verdict, code) = match (report.conclusion_on_generators, report.complete()) {
        (true, true) => ("VERIFIED", EXIT_OK),
        (true, false) => ("VERIFIED-INCOMPLETE", EXIT_INCOMPLETE),
        (false, _) => {
            if report.hypothesis_a_gt1_free {
                ("REFUTED-HYPOTHESIS-TRUE", EXIT_REFUTED)
            } else {
                ("REFUTED-HYPOTHESIS-FALSE", EXIT_REFUTED)
            }
        }
    };
    if !report.conclusion_on_generators {
        for (i, row) in report.verdicts.iter().enumerate() {
            for (j, &fixed) in row.iter().enumerate() {
                if !fixed {
                    let _ = writeln!(
                        out,
                        "counterwitness: g{} moves {} to {}",
                        i + 1,
                        report.finite_part.finite[j],
                        report.generators[i].act_root(&report.finite_part.finite[j])
                    );
                }
            }
        }
    }
    let _ = writeln!(out, "{verdict}");
    Ok((out, code))
}

fn cmd_decompose(
    graph: GraphArgs,
    word: &str,
    source: &str,
    target: &str,
    subset: &str,
    format: Format,
) -> CmdResult {
    reject_dot(format)?;
    let g = graph.load()?;
    let letters = parse_indices(word, g.rank()).map_err(|e| e.to_string())?;
    let u = from_word(&g, &letters);
    let y = Tuple::new(parse_indices(source, g.rank()).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let z = Tuple::new(parse_indices(target, g.rank()).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let j = subset_of(&g, subset)?;
    let d = standard_decomposition(&g, &u, &y, &z, j).map_err(|e| e.to_string())?;
    let mut out = match format {
        Format::Tsv => d.to_tsv(),
        _ => d.to_text(),
    };
    let (len, _) = length_and_word(&g, &u).map_err(|e| e.to_string())?;
    let total: usize = d.steps.iter().map(|s| s.word.len()).sum();
    let _ = writeln!(out, "length {len} = sum of factor lengths {total}");
    if !is_standard(&g, &d).map_err(|e| e.to_string())? {
        return Err("internal: produced decomposition is not standard".into());
    }
    Ok((out, EXIT_OK))
}

fn cmd_counterexample() -> CmdResult {
    let g = regression_graph();
    let base = Tuple::base(regression_subset());
    let mut out = String::new();
    let _ = writeln!(
        out,
        "graph: 7 generators, bonds 1-3 2-3 3-4 4-5 5-6 5-7 and infinite bonds 3-6 3-7"
    );
    let _ = writeln!(out, "tuple: {base}");
    let pivots: Vec<String> = REGRESSION_WALK_PIVOTS
        .iter()
        .map(|s| (s + 1).to_string())
        .collect();
    let _ = writeln!(out, "walk pivots: {}", pivots.join(" "));
    let (w, end) = walk(&g, &base, &REGRESSION_WALK_PIVOTS).map_err(|e| e.to_string())?;
    if end != base {
        return Err(format!("walk ended at {end}, expected {base}"));
    }
    if !carries_perp_positively(&g, &w, &base, &base).map_err(|e| e.to_string())? {
        return Err("walk product is not a perp-positive carrier of the base tuple".into());
    }
    let a1 = Root::simple(7, 0);
    let a2 = Root::simple(7, 1);
    let image = w.act_root(&a1);
    if image != a2 {
        return Err(format!("walk product sends {a1} to {image}, expected {a2}"));
    }
    let (len, word) = length_and_word(&g, &w).map_err(|e| e.to_string())?;
    let inversions = inversion_set(&g, &w).map_err(|e| e.to_string())?;
    if inversions.len() != len {
        return Err("inversion count disagrees with the length".into());
    }
    let _ = writeln!(out, "product length: {len} (= {} inversions)", inversions.len());
    let _ = writeln!(
        out,
        "reduced word: {}",
        word.iter()
            .map(|s| (s + 1).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    );
    let _ = writeln!(out, "action: sends {a1} to {a2}, fixes the tuple simple roots");
    let _ = writeln!(out, "PASS");
    Ok((out, EXIT_OK))
}
