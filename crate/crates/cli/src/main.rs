//! `noncyclic`: build groups from specs, inspect their non-cyclic graphs,
//! certify Hamiltonian cycles and codes, and run the property suites.

mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use noncyclic::codes::{
    self, CodeCertificate, CodeKind, CodeStatus, OracleLimits, DEFAULT_CODE_BUDGET,
    DEFAULT_EXHAUSTIVE_CAP,
};
use noncyclic::cyclizer::{cyclizer_brute, cyclizer_closed_form};
use noncyclic::graph::{build_graph, export_dot, graph_json, DotOptions, NonCyclicGraph};
use noncyclic::hamiltonian::{
    ham_backtrack, ham_cycle_nilpotent, verify_certificate, Builder, SearchStatus,
    DEFAULT_SEARCH_BUDGET,
};
use noncyclic::verify::{run_suite, Suite};
use noncyclic::{arith, catalog, classify_nilpotent, parse_spec, Element, FiniteGroup};

use config::{pick, Config};

// Writes to stdout, ignoring a closed pipe.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = write!(std::io::stdout(), $($t)*);
    }};
}

macro_rules! outln {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

const DEFAULT_CATALOG_ORDER: usize = 64;
const DEFAULT_VERIFY_ORDER: usize = 60;
const DEFAULT_SEED: u64 = 7;

#[derive(Parser)]
#[command(
    name = "noncyclic",
    version,
    about = "Non-cyclic graphs of finite groups"
)]
struct Cli {
    /// TOML file with defaults for `budget`, `cap`, `max-order` and `seed`.
    #[arg(long, global = true, env = "NONCYCLIC_CONFIG")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Built-in specs and suites.
    Catalog {
        #[command(subcommand)]
        what: CatalogCmd,
    },
    /// Order, exponent, cyclic-subgroup counts and classification.
    Info(SpecArgs),
    /// The non-cyclic graph as DOT (default) or JSON.
    Graph {
        #[command(flatten)]
        spec: SpecArgs,
        /// Fill vertices by element order.
        #[arg(long)]
        color: bool,
    },
    /// Elements forming a cyclic subgroup with every element.
    Cyclizer {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value_t = CyclizerMethodArg::Both)]
        method: CyclizerMethodArg,
    },
    /// A verified Hamiltonian cycle of the non-cyclic graph.
    Hamiltonian {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value_t = HamMethod::Auto)]
        method: HamMethod,
        /// Print DOT with the cycle highlighted instead of the cycle.
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Perfect and total perfect codes.
    Codes {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value_t = KindArg::Both)]
        kind: KindArg,
        /// Also run the exhaustive search and compare.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Vertex count up to which every vertex is a search candidate.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Run a property suite over the catalog.
    Verify {
        #[arg(value_parser = Suite::NAMES, default_value = "all")]
        suite: String,
        #[arg(long)]
        max_order: Option<usize>,
        /// Seed for sampled associativity checks.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// Every catalog spec up to an order.
    List {
        #[arg(long)]
        max_order: Option<usize>,
        /// Keep only non-cyclic nilpotent groups.
        #[arg(long)]
        nilpotent: bool,
        #[arg(long)]
        json: bool,
    },
    /// Names accepted by `verify`.
    Suites,
}

#[derive(Args)]
struct SpecArgs {
    /// Group spec, e.g. "Z4 x Z2", "Q8", "D16 x Z3".
    spec: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BudgetArgs {
    /// Search-node limit for exhaustive searches.
    #[arg(long, env = "NONCYCLIC_BUDGET")]
    budget: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CyclizerMethodArg {
    Brute,
    Closed,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum HamMethod {
    /// Constructive for nilpotent groups, backtracking otherwise.
    Auto,
    Constructive,
    Backtrack,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Perfect,
    Total,
    Both,
}

/// How a command ended; maps onto the exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Outcome {
    Ok,
    BudgetExhausted,
    CheckFailed,
}

enum Failure {
    Usage(String),
    Other(String),
}

impl From<noncyclic::Error> for Failure {
    fn from(e: noncyclic::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<Outcome, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = cli
        .config
        .as_deref()
        .map(Config::load)
        .transpose()
        .map_err(Failure::Usage)
        .and_then(|cfg| run(cli.command, &cfg.unwrap_or_default()));
    match result {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::CheckFailed) => ExitCode::from(1),
        Ok(Outcome::BudgetExhausted) => ExitCode::from(3),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command, cfg: &Config) -> CmdResult {
    match command {
        Command::Catalog { what } => cmd_catalog(what, cfg),
        Command::Info(spec) => cmd_info(&spec),
        Command::Graph { spec, color } => cmd_graph(&spec, color),
        Command::Cyclizer { spec, method } => cmd_cyclizer(&spec, method),
        Command::Hamiltonian {
            spec,
            method,
            dot,
            budget,
        } => cmd_hamiltonian(
            &spec,
            method,
            dot,
            pick(budget.budget, cfg.budget, DEFAULT_SEARCH_BUDGET),
        ),
        Command::Codes {
            spec,
            kind,
            oracle,
            budget,
            cap,
        } => {
            let limits = OracleLimits {
                exhaustive_cap: pick(cap, cfg.cap, DEFAULT_EXHAUSTIVE_CAP),
                budget: pick(budget.budget, cfg.budget, DEFAULT_CODE_BUDGET),
            };
            cmd_codes(&spec, kind, oracle, limits)
        }
        Command::Verify {
            suite,
            max_order,
            seed,
            json,
        } => cmd_verify(
            suite.parse()?,
            pick(max_order, cfg.max_order, DEFAULT_VERIFY_ORDER),
            pick(seed, cfg.seed, DEFAULT_SEED),
            json,
        ),
    }
}

fn build(spec: &SpecArgs) -> Result<(String, FiniteGroup), Failure> {
    let parsed = parse_spec(&spec.spec)?;
    let g = parsed.build()?;
    Ok((parsed.to_string(), g))
}

fn print_json<T: Serialize>(value: &T) {
    outln!(
        "{}",
        serde_json::to_string_pretty(value).expect("report serializes")
    );
}

fn labels(g: &FiniteGroup, xs: &[Element]) -> Vec<String> {
    xs.iter().map(|&x| g.label(x).to_string()).collect()
}

fn warn_if_empty(graph: &NonCyclicGraph<'_>, spec: &str) -> bool {
    if graph.is_empty() {
        eprintln!("warning: {spec} is cyclic; its non-cyclic graph is empty");
    }
    graph.is_empty()
}

#[derive(Serialize)]
struct CatalogEntry {
    spec: String,
    order: usize,
    tag: String,
}

fn cmd_catalog(what: CatalogCmd, cfg: &Config) -> CmdResult {
    match what {
        CatalogCmd::Suites => {
            for name in Suite::NAMES {
                outln!("{name}");
            }
        }
        CatalogCmd::List {
            max_order,
            nilpotent,
            json,
        } => {
            let max_order = pick(max_order, cfg.max_order, DEFAULT_CATALOG_ORDER);
            let mut entries = Vec::new();
            for spec in catalog::catalog(max_order) {
                let g = spec.build()?;
                let tag = classify_nilpotent(&g).tag;
                if nilpotent && !tag.is_noncyclic_nilpotent() {
                    continue;
                }
                entries.push(CatalogEntry {
                    spec: spec.to_string(),
                    order: g.order(),
                    tag: format!("{tag:?}"),
                });
            }
            if json {
                print_json(&entries);
            } else {
                for e in &entries {
                    outln!("{:<24} {:>5}  {}", e.spec, e.order, e.tag);
                }
            }
        }
    }
    Ok(Outcome::Ok)
}

#[derive(Serialize)]
struct InfoReport {
    spec: String,
    order: usize,
    exponent: usize,
    /// Orders of the non-identity elements, ascending.
    element_orders: Vec<usize>,
    /// `(d, number of cyclic subgroups of order d)` for each divisor of the
    /// exponent.
    cyclic_subgroup_counts: Vec<(usize, usize)>,
    cyclizer_size: usize,
    maximal_cyclic_subgroups: usize,
    tag: String,
    graph_vertices: usize,
    graph_edges: usize,
}

fn cmd_info(spec: &SpecArgs) -> CmdResult {
    let (text, g) = build(spec)?;
    let graph = build_graph(&g);
    let report = InfoReport {
        spec: text,
        order: g.order(),
        exponent: g.exponent(),
        element_orders: g.pi(),
        cyclic_subgroup_counts: arith::divisors(g.exponent())
            .into_iter()
            .map(|d| (d, g.class_count(d)))
            .collect(),
        cyclizer_size: graph.cyc_set().len(),
        maximal_cyclic_subgroups: g.maximal_cyclic_subgroups().len(),
        tag: format!("{:?}", classify_nilpotent(&g).tag),
        graph_vertices: graph.len(),
        graph_edges: graph.edge_count(),
    };
    warn_if_empty(&graph, &report.spec);
    if spec.json {
        print_json(&report);
        return Ok(Outcome::Ok);
    }
    outln!("spec          {}", report.spec);
    outln!("order         {}", report.order);
    outln!("exponent      {}", report.exponent);
    outln!("elem. orders  {:?}", report.element_orders);
    outln!("class         {}", report.tag);
    outln!("|Cyc|         {}", report.cyclizer_size);
    outln!("|M|           {}", report.maximal_cyclic_subgroups);
    outln!(
        "graph         {} vertices, {} edges",
        report.graph_vertices,
        report.graph_edges
    );
    outln!("cyclic subgroups by order:");
    for (d, m) in &report.cyclic_subgroup_counts {
        outln!("  {d:>6}  {m}");
    }
    Ok(Outcome::Ok)
}

fn cmd_graph(spec: &SpecArgs, color: bool) -> CmdResult {
    let (text, g) = build(spec)?;
    let graph = build_graph(&g);
    warn_if_empty(&graph, &text);
    if spec.json {
        print_json(&graph_json(&graph, &text));
    } else {
        let options = DotOptions {
            color_by_order: color,
            highlight_cycle: None,
        };
        out!("{}", export_dot(&graph, &options));
    }
    Ok(Outcome::Ok)
}

#[derive(Serialize)]
struct CyclizerReport {
    spec: String,
    method: &'static str,
    size: usize,
    elements: Vec<String>,
}

fn cmd_cyclizer(spec: &SpecArgs, method: CyclizerMethodArg) -> CmdResult {
    let (text, g) = build(spec)?;
    let cls = classify_nilpotent(&g);
    let closed_applies = cls.tag.is_noncyclic_nilpotent();
    if method == CyclizerMethodArg::Closed && !closed_applies {
        return Err(Failure::Usage(format!(
            "the closed form needs a non-cyclic nilpotent group; {text} is {:?}",
            cls.tag
        )));
    }
    let mut reports = Vec::new();
    if method != CyclizerMethodArg::Closed {
        reports.push(("brute-force", cyclizer_brute(&g).cyc_set));
    }
    if method != CyclizerMethodArg::Brute && closed_applies {
        reports.push(("closed-form", cyclizer_closed_form(&g, &cls)?.cyc_set));
    }
    let agree = reports.windows(2).all(|w| w[0].1 == w[1].1);
    let reports: Vec<CyclizerReport> = reports
        .into_iter()
        .map(|(method, set)| CyclizerReport {
            spec: text.clone(),
            method,
            size: set.len(),
            elements: labels(&g, &set),
        })
        .collect();
    if spec.json {
        print_json(&reports);
    } else {
        for r in &reports {
            outln!(
                "{:<12} |Cyc| = {}  {{{}}}",
                r.method,
                r.size,
                r.elements.join(", ")
            );
        }
    }
    if agree {
        Ok(Outcome::Ok)
    } else {
        eprintln!("error: cyclizer methods disagree");
        Ok(Outcome::CheckFailed)
    }
}

#[derive(Serialize)]
struct HamResult {
    method: &'static str,
    status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    builder: Option<Builder>,
    cycle: Vec<String>,
    verified: bool,
}

#[derive(Serialize)]
struct HamReport {
    spec: String,
    n_vertices: usize,
    results: Vec<HamResult>,
}

fn cmd_hamiltonian(spec: &SpecArgs, method: HamMethod, dot: bool, budget: usize) -> CmdResult {
    let (text, g) = build(spec)?;
    let graph = build_graph(&g);
    let mut report = HamReport {
        spec: text.clone(),
        n_vertices: graph.len(),
        results: Vec::new(),
    };
    let mut outcome = Outcome::Ok;
    let mut first_cycle: Option<Vec<Element>> = None;

    let cls = classify_nilpotent(&g);
    let method = match method {
        HamMethod::Auto if cls.tag.is_noncyclic_nilpotent() => HamMethod::Constructive,
        HamMethod::Auto => HamMethod::Backtrack,
        m => m,
    };

    if !warn_if_empty(&graph, &text) {
        if method != HamMethod::Backtrack {
            if !cls.tag.is_noncyclic_nilpotent() {
                if method == HamMethod::Constructive {
                    return Err(Failure::Usage(format!(
                        "the constructive builder needs a nilpotent group; {text} is not \
                         (try --method backtrack)"
                    )));
                }
            } else {
                let cert =
                    ham_cycle_nilpotent(&g, &cls).map_err(|e| Failure::Other(e.to_string()))?;
                let verified = verify_certificate(&graph, &cert);
                if !verified {
                    outcome = outcome.max(Outcome::CheckFailed);
                }
                report.results.push(HamResult {
                    method: "constructive",
                    status: "Found".into(),
                    builder: Some(cert.builder),
                    cycle: labels(&g, &cert.cycle),
                    verified,
                });
                first_cycle.get_or_insert(cert.cycle);
            }
        }
        if method != HamMethod::Constructive {
            let out = ham_backtrack(&graph, budget);
            let verified = out
                .certificate
                .as_ref()
                .is_some_and(|c| verify_certificate(&graph, c));
            match out.status {
                SearchStatus::Found if !verified => outcome = outcome.max(Outcome::CheckFailed),
                SearchStatus::BudgetExhausted => outcome = outcome.max(Outcome::BudgetExhausted),
                // a constructive cycle contradicts an exhausted search
                SearchStatus::ProvenAbsent if first_cycle.is_some() => {
                    outcome = outcome.max(Outcome::CheckFailed)
                }
                _ => {}
            }
            let cycle = out.certificate.map(|c| c.cycle).unwrap_or_default();
            report.results.push(HamResult {
                method: "backtrack",
                status: format!("{:?}", out.status),
                builder: None,
                cycle: labels(&g, &cycle),
                verified,
            });
            if !cycle.is_empty() {
                first_cycle.get_or_insert(cycle);
            }
        }
    }

    if dot {
        let options = DotOptions {
            color_by_order: false,
            highlight_cycle: first_cycle.as_deref(),
        };
        out!("{}", export_dot(&graph, &options));
    } else if spec.json {
        print_json(&report);
    } else {
        outln!("{}: {} vertices", report.spec, report.n_vertices);
        for r in &report.results {
            let check = if r.verified {
                "verified"
            } else {
                "not verified"
            };
            outln!("{:<12} {} ({check})", r.method, r.status);
            if !r.cycle.is_empty() {
                outln!("  {}", r.cycle.join(" -> "));
            }
        }
    }
    Ok(outcome)
}

#[derive(Serialize)]
struct CodeResult {
    kind: CodeKind,
    method: &'static str,
    status: CodeStatus,
    vertices: Vec<String>,
    valid: bool,
}

#[derive(Serialize)]
struct CodesReport {
    spec: String,
    n_vertices: usize,
    results: Vec<CodeResult>,
}

fn code_valid(graph: &NonCyclicGraph<'_>, cert: &CodeCertificate) -> bool {
    if cert.status != CodeStatus::Found {
        return true;
    }
    let Some(pos) = cert
        .vertices
        .iter()
        .map(|&x| graph.position(x))
        .collect::<Option<Vec<usize>>>()
    else {
        return false;
    };
    match cert.kind {
        CodeKind::Perfect => codes::is_perfect_code(graph, &pos),
        CodeKind::TotalPerfect => codes::is_total_perfect_code(graph, &pos),
    }
}

fn cmd_codes(spec: &SpecArgs, kind: KindArg, oracle: bool, limits: OracleLimits) -> CmdResult {
    let (text, g) = build(spec)?;
    let graph = build_graph(&g);
    let cls = classify_nilpotent(&g);
    let mut report = CodesReport {
        spec: text.clone(),
        n_vertices: graph.len(),
        results: Vec::new(),
    };
    let mut outcome = Outcome::Ok;

    if !warn_if_empty(&graph, &text) {
        let mut runs: Vec<(&'static str, CodeCertificate)> = Vec::new();
        if kind != KindArg::Total {
            runs.push(("closed-form", codes::find_perfect_code(&graph)));
            if oracle {
                runs.push(("oracle", codes::perfect_code_oracle(&graph, limits)));
            }
        }
        if kind != KindArg::Perfect {
            if cls.tag.is_noncyclic_nilpotent() {
                runs.push(("closed-form", codes::find_total_perfect_code(&graph, &cls)));
            }
            if oracle || !cls.tag.is_noncyclic_nilpotent() {
                runs.push(("oracle", codes::total_perfect_code_oracle(&graph, limits)));
            }
        }
        for (method, cert) in runs {
            let valid = code_valid(&graph, &cert);
            if !valid {
                outcome = outcome.max(Outcome::CheckFailed);
            }
            if cert.status == CodeStatus::BudgetExhausted {
                outcome = outcome.max(Outcome::BudgetExhausted);
            }
            report.results.push(CodeResult {
                kind: cert.kind,
                method,
                status: cert.status,
                vertices: labels(&g, &cert.vertices),
                valid,
            });
        }
        // decided results of the same kind must agree on existence
        for k in [CodeKind::Perfect, CodeKind::TotalPerfect] {
            let decided: Vec<bool> = report
                .results
                .iter()
                .filter(|r| r.kind == k && r.status != CodeStatus::BudgetExhausted)
                .map(|r| r.status == CodeStatus::Found)
                .collect();
            if decided.windows(2).any(|w| w[0] != w[1]) {
                eprintln!("error: {k:?} code results disagree");
                outcome = outcome.max(Outcome::CheckFailed);
            }
        }
    }

    if spec.json {
        print_json(&report);
    } else {
        outln!("{}: {} vertices", report.spec, report.n_vertices);
        for r in &report.results {
            let kind = match r.kind {
                CodeKind::Perfect => "perfect",
                CodeKind::TotalPerfect => "total perfect",
            };
            out!("{kind:<14} {:<12} {:?}", r.method, r.status);
            if r.status == CodeStatus::Found {
                out!("  {{{}}}", r.vertices.join(", "));
            }
            outln!();
        }
    }
    Ok(outcome)
}

fn cmd_verify(suite: Suite, max_order: usize, seed: u64, json: bool) -> CmdResult {
    let report = run_suite(suite, max_order, seed)?;
    if json {
        print_json(&report);
    } else {
        for (spec, check) in report.failures() {
            outln!("FAIL {spec}: {} ({})", check.property, check.detail);
        }
        let s = &report.summary;
        outln!(
            "suite {} up to order {}: {} groups, {} checks, {} passed, {} failed, {} budget-limited ({:.2?})",
            report.suite,
            report.max_order,
            s.groups,
            s.checks,
            s.passed,
            s.failed,
            s.budget_exhausted,
            report.wall_time
        );
    }
    Ok(if report.summary.failed > 0 {
        Outcome::CheckFailed
    } else if report.summary.budget_exhausted > 0 {
        Outcome::BudgetExhausted
    } else {
        Outcome::Ok
    })
}
