use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;

use widthproof::extract::{prove, validate, Counterexample, ProveOutcome};
use widthproof::graph::MultiGraph;
use widthproof::itd::Term;
use widthproof::oracles;
use widthproof::propfile::{reed_formula, PropertyFormula};
use widthproof::search::{Limits, Mode, SearchConfig, Stats, Strategy, Verdict};

const SCHEMA: u32 = 1;

/// Exit codes: 0 inclusion holds, 1 refuted, 2 indeterminate (limits hit),
/// 3 usage, input or validation error.
const EXIT_HOLDS: u8 = 0;
const EXIT_REFUTED: u8 = 1;
const EXIT_INDETERMINATE: u8 = 2;
const EXIT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "widthproof", version, about = "Decide graph properties on all graphs of bounded treewidth or pathwidth")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Search for a counterexample to a property file at a given width.
    Prove(ProveArgs),
    /// Run the Reed family for every maximum degree below the width (or one).
    Reed(ReedArgs),
    /// Evaluate a property on one decomposition term.
    Eval(EvalArgs),
    /// Brute-force checks on an adjacency-list graph.
    Oracle(OracleArgs),
    /// Re-check a counterexample JSON written by `prove`.
    Validate(ValidateArgs),
}

#[derive(Args, Clone)]
struct SearchArgs {
    /// Width bound k; bags hold at most k+1 labels.
    #[arg(long)]
    width: usize,
    #[arg(long, default_value = "pw")]
    mode: Mode,
    #[arg(long, default_value = "iso-bfs-premise")]
    strategy: Strategy,
    #[arg(long, env = "WIDTHPROOF_MAX_STATES", default_value_t = 10_000_000)]
    max_states: usize,
    /// Seconds; 0 disables the time cap.
    #[arg(long, env = "WIDTHPROOF_TIMEOUT", default_value_t = 3600)]
    timeout: u64,
    /// Rough memory cap in MiB; 0 disables it.
    #[arg(long, env = "WIDTHPROOF_MAX_MEMORY_MB", default_value_t = 0)]
    max_memory_mb: usize,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Progress on standard error.
    #[arg(long, short)]
    verbose: bool,
}

impl SearchArgs {
    fn config(&self) -> SearchConfig {
        let mut cfg = SearchConfig::new(self.width, self.mode, self.strategy);
        cfg.limits = Limits {
            max_states: self.max_states,
            timeout: (self.timeout > 0).then(|| Duration::from_secs(self.timeout)),
            max_memory_bytes: (self.max_memory_mb > 0).then_some(self.max_memory_mb << 20),
        };
        cfg.threads = self.threads.max(1);
        cfg.verbose = self.verbose;
        cfg
    }
}

#[derive(Args)]
struct ProveArgs {
    #[arg(long)]
    property: PathBuf,
    #[command(flatten)]
    search: SearchArgs,
    /// Result JSON destination (standard output when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Accept simple-graph-only atoms without a conjoined NOT HasMultipleEdges.
    #[arg(long)]
    allow_unmasked: bool,
}

#[derive(Args)]
struct ReedArgs {
    #[command(flatten)]
    search: SearchArgs,
    /// Run only this maximum degree.
    #[arg(long)]
    delta: Option<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    term: PathBuf,
    #[arg(long)]
    property: PathBuf,
    /// Width bound; defaults to the largest label in the term minus one.
    #[arg(long)]
    width: Option<usize>,
    #[arg(long)]
    allow_unmasked: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct OracleArgs {
    #[command(subcommand)]
    check: OracleCheck,
}

#[derive(Subcommand)]
enum OracleCheck {
    /// Is the graph properly colourable with at most R colours?
    Chromatic {
        graph: PathBuf,
        #[arg(long)]
        at_most: Option<u32>,
    },
    /// Maximum degree, or whether it reaches D.
    MaxDegree {
        graph: PathBuf,
        #[arg(long)]
        at_least: Option<u32>,
    },
    /// Clique number of the underlying simple graph.
    Clique {
        graph: PathBuf,
        #[arg(long)]
        at_least: Option<u32>,
    },
    MultiEdge { graph: PathBuf },
    TriangleFree { graph: PathBuf },
    /// Checks a path decomposition (one comma-separated bag per line).
    PathDecomposition {
        graph: PathBuf,
        #[arg(long)]
        bags: PathBuf,
        #[arg(long)]
        width: usize,
    },
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long)]
    counterexample: PathBuf,
}

#[derive(Serialize, Deserialize)]
struct RunReport {
    schema: u32,
    verdict: Verdict,
    property: String,
    width: usize,
    mode: Mode,
    strategy: Strategy,
    components: Vec<String>,
    stats: Stats,
    counterexample: Option<Counterexample>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_property(path: &Path, allow_unmasked: bool) -> Result<PropertyFormula> {
    PropertyFormula::load(&read(path)?, allow_unmasked).with_context(|| format!("parsing {}", path.display()))
}

fn verdict_code(v: &Verdict) -> u8 {
    match v {
        Verdict::InclusionHolds => EXIT_HOLDS,
        Verdict::Refuted => EXIT_REFUTED,
        Verdict::Indeterminate => EXIT_INDETERMINATE,
    }
}

fn run(pf: &PropertyFormula, args: &SearchArgs) -> Result<(RunReport, ProveOutcome)> {
    let comb = pf.to_combination()?;
    let cfg = args.config();
    let outcome = prove(&comb, &cfg)?;
    let report = RunReport {
        schema: SCHEMA,
        verdict: outcome.result.verdict.clone(),
        property: pf.to_string(),
        width: cfg.k,
        mode: cfg.mode,
        strategy: cfg.strategy,
        components: pf.bindings.iter().map(|b| format!("{} := {}", b.name, b.core)).collect(),
        stats: outcome.result.stats.clone(),
        counterexample: outcome.counterexample.clone(),
    };
    Ok((report, outcome))
}

fn emit(out: Option<&Path>, value: &impl Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_prove(a: &ProveArgs) -> Result<u8> {
    let pf = load_property(&a.property, a.allow_unmasked)?;
    let (report, _) = run(&pf, &a.search)?;
    eprintln!(
        "{}: states={} seen={} time={:.2}s multiplicity={:?}",
        verdict_label(&report.verdict),
        report.stats.states,
        report.stats.seen,
        report.stats.seconds,
        report.stats.multiplicity
    );
    if let Some(reason) = &report.stats.limit_hit {
        eprintln!("stopped: {reason}");
    }
    emit(a.out.as_deref(), &report)?;
    Ok(verdict_code(&report.verdict))
}

fn verdict_label(v: &Verdict) -> &'static str {
    match v {
        Verdict::InclusionHolds => "Inclusion Holds",
        Verdict::Refuted => "Refuted",
        Verdict::Indeterminate => "Indeterminate",
    }
}

fn cmd_reed(a: &ReedArgs) -> Result<u8> {
    let cases: Vec<u32> = match a.delta {
        Some(d) => vec![d],
        None => (0..a.search.width as u32).collect(),
    };
    let mut reports = Vec::new();
    let mut code = EXIT_HOLDS;
    println!("{:>5} {:>10} {:>12} {:>10}  multiplicity", "delta", "verdict", "states", "seconds");
    for s in cases {
        let (report, _) = run(&reed_formula(s), &a.search)?;
        println!(
            "{:>5} {:>10} {:>12} {:>10.2}  {:?}",
            s,
            match report.verdict {
                Verdict::InclusionHolds => "holds",
                Verdict::Refuted => "refuted",
                Verdict::Indeterminate => "unknown",
            },
            report.stats.states,
            report.stats.seconds,
            report.stats.multiplicity
        );
        code = code.max(match report.verdict {
            Verdict::InclusionHolds => EXIT_HOLDS,
            Verdict::Indeterminate => EXIT_INDETERMINATE,
            Verdict::Refuted => EXIT_REFUTED,
        });
        reports.push(report);
    }
    // refuted outranks indeterminate
    if reports.iter().any(|r| r.verdict == Verdict::Refuted) {
        code = EXIT_REFUTED;
    }
    if let Some(p) = &a.out {
        emit(Some(p), &json!({ "schema": SCHEMA, "runs": reports }))?;
    }
    Ok(code)
}

fn cmd_eval(a: &EvalArgs) -> Result<u8> {
    let pf = load_property(&a.property, a.allow_unmasked)?;
    let comb = pf.to_combination()?;
    let term: Term = read(&a.term)?.parse().context("parsing term")?;
    let k = a.width.unwrap_or_else(|| (term.max_label() as usize).saturating_sub(1));
    let st = comb.dynamize(&term, k)?;
    let flags = comb.flags(&st);
    let g = term.semantics(k)?.graph;
    let premise = comb.premise().map(|p| p.eval(&flags));
    let conclusion = comb.split().map(|(_, c)| c.eval(&flags));
    let value = comb.combo_final(&st);
    if a.json {
        let comps: Vec<_> = pf
            .bindings
            .iter()
            .zip(&flags)
            .map(|(b, f)| json!({ "name": b.name, "core": b.core.to_string(), "accepts": f }))
            .collect();
        emit(
            None,
            &json!({
                "schema": SCHEMA, "width": k, "vertices": g.vertex_count(), "edges": g.edge_count(),
                "components": comps, "premise": premise, "conclusion": conclusion, "value": value,
            }),
        )?;
    } else {
        println!("graph: {} vertices, {} edges, width bound {k}", g.vertex_count(), g.edge_count());
        for (b, f) in pf.bindings.iter().zip(&flags) {
            println!("{} := {}: {}", b.name, b.core, f);
        }
        if let (Some(p), Some(c)) = (premise, conclusion) {
            println!("premise: {p}");
            println!("conclusion: {c}");
        }
        println!("formula: {value}");
    }
    Ok(EXIT_HOLDS)
}

fn load_graph(p: &Path) -> Result<MultiGraph> {
    MultiGraph::from_adjacency_text(&read(p)?).with_context(|| format!("parsing {}", p.display()))
}

fn cmd_oracle(a: &OracleArgs) -> Result<u8> {
    let verdict = |b: bool| if b { EXIT_HOLDS } else { EXIT_REFUTED };
    Ok(match &a.check {
        OracleCheck::Chromatic { graph, at_most } => {
            let g = load_graph(graph)?;
            match at_most {
                Some(r) => {
                    let ok = oracles::chromatic_at_most(&g, *r);
                    println!("chromatic number at most {r}: {ok}");
                    verdict(ok)
                }
                None => {
                    println!("chromatic number: {}", oracles::chromatic_number(&g));
                    EXIT_HOLDS
                }
            }
        }
        OracleCheck::MaxDegree { graph, at_least } => {
            let g = load_graph(graph)?;
            match at_least {
                Some(d) => {
                    let ok = oracles::max_degree_at_least(&g, *d);
                    println!("maximum degree at least {d}: {ok}");
                    verdict(ok)
                }
                None => {
                    println!("maximum degree: {}", g.max_degree());
                    EXIT_HOLDS
                }
            }
        }
        OracleCheck::Clique { graph, at_least } => {
            let g = load_graph(graph)?;
            match at_least {
                Some(w) => {
                    let ok = oracles::has_clique(&g, *w);
                    println!("clique of size {w}: {ok}");
                    verdict(ok)
                }
                None => {
                    println!("clique number: {}", oracles::clique_number(&g));
                    EXIT_HOLDS
                }
            }
        }
        OracleCheck::MultiEdge { graph } => {
            let ok = oracles::has_multi_edge(&load_graph(graph)?);
            println!("has multiple edges: {ok}");
            verdict(ok)
        }
        OracleCheck::TriangleFree { graph } => {
            let ok = oracles::triangle_free(&load_graph(graph)?);
            println!("triangle-free: {ok}");
            verdict(ok)
        }
        OracleCheck::PathDecomposition { graph, bags, width } => {
            let g = load_graph(graph)?;
            let bags = widthproof::fixtures::parse_bags(&read(bags)?).context("parsing bags")?;
            match oracles::check_path_decomposition(&g, &bags, *width) {
                Ok(()) => {
                    println!("valid path decomposition of width at most {width}");
                    EXIT_HOLDS
                }
                Err(e) => {
                    println!("invalid: {e}");
                    EXIT_REFUTED
                }
            }
        }
    })
}

fn cmd_validate(a: &ValidateArgs) -> Result<u8> {
    let report: RunReport = serde_json::from_str(&read(&a.counterexample)?).context("parsing counterexample JSON")?;
    if report.schema != SCHEMA {
        bail!("unsupported schema {}", report.schema);
    }
    let Some(cx) = &report.counterexample else { bail!("file holds no counterexample (verdict {:?})", report.verdict) };
    let pf = PropertyFormula::parse(&report.property)?;
    let comb = pf.to_combination()?;
    let term: Term = cx.term.parse().context("parsing stored term")?;
    let fresh = validate(&comb, &term, report.width, report.mode)?;
    if fresh.graph != cx.graph {
        bail!("stored graph differs from the graph the term builds");
    }
    if fresh.flags != cx.flags {
        bail!("stored flags {:?} differ from recomputed {:?}", cx.flags, fresh.flags);
    }
    println!(
        "valid counterexample: {} vertices, {} edges, width {}",
        fresh.graph.vertex_count(),
        fresh.graph.edge_count(),
        fresh.width
    );
    Ok(EXIT_HOLDS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_HOLDS };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let res = match &cli.cmd {
        Cmd::Prove(a) => cmd_prove(a),
        Cmd::Reed(a) => cmd_reed(a),
        Cmd::Eval(a) => cmd_eval(a),
        Cmd::Oracle(a) => cmd_oracle(a),
        Cmd::Validate(a) => cmd_validate(a),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
