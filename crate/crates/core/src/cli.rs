//! Command-line interface. `run` takes the argument vector and output
//! streams so it can be driven in-process.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::claims::{self, Context, Faults, Scale, CLAIMS};
use crate::genio::{
    gen_named, gen_nearly_bipartite, gen_random_bipartite, gen_random_multigraph, gen_regular_bipartite,
    parse_edge_list, parse_graph6, read_reports, verify_certificate, write_edge_list, write_reports, Certificate,
};
use crate::graph::{bipartition, MultiGraph};
use crate::solver::{solve, Method, SolveError, SolveResult};
use crate::spectrum::{
    default_method, evaluate, labeled_count, replay_report, search_counterexamples, spectrum, CheckReport, GraphClass,
    Rule, Sampler, SearchConfig, SpectrumCache,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

const DEFAULT_BUDGET: u64 = 50_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "kecs",
    version,
    about = "Maximum k-edge-colorable subgraphs: solve, certify and check"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute a maximum k-edge-colorable subgraph with a coloring.
    Solve(SolveArgs),
    /// Print nu_0, nu_1, ... up to the point where every edge fits.
    Spectrum(SpectrumArgs),
    /// Check rules on one graph, a certificate, or replay a report file.
    Verify(VerifyArgs),
    /// Sweep a graph class for rule violations.
    Search(SearchArgs),
    /// Write a generated graph as an edge list.
    Gen(GenArgs),
    /// Run the bundled claims suite.
    SelfTest(SelfTestArgs),
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Graph file: `.g6` is read as graph6, anything else as an edge list,
    /// `-` is stdin.
    #[arg(short, long, conflicts_with = "named")]
    input: Option<PathBuf>,
    /// Named graph instead of a file, e.g. `petersen` or `cycle:5`.
    #[arg(long)]
    named: Option<String>,
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(short)]
    k: usize,
    /// augment, flow or oracle. Defaults to flow on bipartite input and
    /// oracle otherwise.
    #[arg(long)]
    method: Option<Method>,
    /// Write the certificate here.
    #[arg(short)]
    o: Option<PathBuf>,
    /// Oracle search node budget.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Also run the oracle and compare.
    #[arg(long)]
    cross_check: bool,
    /// Seed recorded in the certificate.
    #[arg(long, env = "KECS_SEED")]
    seed: Option<u64>,
    /// Print the certificate on stdout.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct SpectrumArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    method: Option<Method>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Comma separated: concavity, midpoint, conj1, conj2, conj2-floor,
    /// cubic, lemma5, props34. Defaults to all.
    #[arg(long, value_delimiter = ',')]
    rules: Vec<Rule>,
    #[arg(long)]
    method: Option<Method>,
    /// Report file (`.report.jsonl`) to recompute independently.
    #[arg(long, conflicts_with_all = ["input", "named", "cert"])]
    replay: Option<PathBuf>,
    /// Certificate file (`.cert.json`) to check.
    #[arg(long, conflicts_with_all = ["input", "named"])]
    cert: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// bipartite, nearly-bipartite or all.
    #[arg(long)]
    class: GraphClass,
    #[arg(long)]
    max_n: usize,
    /// Largest edge multiplicity.
    #[arg(long, default_value_t = 1)]
    max_mult: usize,
    /// Defaults to midpoint, conj1 or conj2 depending on the class.
    #[arg(long, value_delimiter = ',')]
    rules: Vec<Rule>,
    /// Random samples instead of exhaustive enumeration.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, env = "KECS_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    jobs: Option<usize>,
    /// Write violation reports here, one JSON object per line.
    #[arg(short)]
    o: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Solve every graph even when an isomorphic one was already solved.
    #[arg(long)]
    no_cache: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Model {
    RegularBipartite,
    RandomBipartite,
    NearlyBipartite,
    Random,
    Named,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    model: Model,
    #[arg(long, default_value_t = 3)]
    half_n: usize,
    #[arg(short, default_value_t = 3)]
    k: usize,
    #[arg(long, default_value_t = 3)]
    nu: usize,
    #[arg(long, default_value_t = 3)]
    nw: usize,
    #[arg(short, default_value_t = 6)]
    n: usize,
    #[arg(short, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 1)]
    max_mult: usize,
    #[arg(long, default_value_t = 2)]
    apex_degree: usize,
    #[arg(long)]
    name: Option<String>,
    #[arg(long, env = "KECS_SEED", default_value_t = 0)]
    seed: u64,
    /// Output file; stdout when absent.
    #[arg(short)]
    o: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SelfTestArgs {
    /// Print claim ids without running them.
    #[arg(long)]
    list: bool,
    /// Use the full populations instead of the quick ones.
    #[arg(long)]
    full: bool,
    /// Run only these claims.
    #[arg(long, value_delimiter = ',')]
    only: Vec<String>,
    /// Corrupt the golden value table to exercise the failure path.
    #[arg(long)]
    inject_fault: bool,
    #[arg(long)]
    jobs: Option<usize>,
}

struct Failure {
    code: i32,
    msg: String,
}

fn input_error(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        msg: msg.into(),
    }
}

type CmdResult = Result<i32, Failure>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let to_out = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let text = e.render().to_string();
            if to_out {
                let _ = write!(out, "{text}");
                return EXIT_OK;
            }
            let _ = write!(err, "{text}");
            return EXIT_INPUT;
        }
    };
    let result = match cli.command {
        Command::Solve(a) => cmd_solve(a, out),
        Command::Spectrum(a) => cmd_spectrum(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Search(a) => cmd_search(a, out),
        Command::Gen(a) => cmd_gen(a, out),
        Command::SelfTest(a) => cmd_self_test(a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| input_error(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn load_graph(a: &InputArgs) -> Result<MultiGraph, Failure> {
    match (&a.input, &a.named) {
        (Some(path), _) => {
            let text = read_text(path)?;
            let parsed = if path.extension().is_some_and(|e| e == "g6") {
                parse_graph6(&text)
            } else {
                parse_edge_list(&text)
            };
            parsed.map_err(|e| input_error(format!("{}: {e}", path.display())))
        }
        (None, Some(name)) => gen_named(name).map_err(|e| input_error(e.to_string())),
        (None, None) => Err(input_error("no graph given; use -i <file> or --named <name>")),
    }
}

/// Rejects a bipartite-only method on non-bipartite input up front.
fn pick_method(g: &MultiGraph, method: Option<Method>) -> Result<Method, Failure> {
    match method {
        None => Ok(default_method(g)),
        Some(m) if m.requires_bipartite() && !bipartition(g).is_present() => Err(input_error(format!(
            "the {m} method needs a bipartite graph and this one has an odd cycle; use --method oracle"
        ))),
        Some(m) => Ok(m),
    }
}

fn solve_failure(e: SolveError) -> Failure {
    match e {
        SolveError::NotBipartite { .. } => input_error(format!("{e}; use --method oracle")),
        other => input_error(other.to_string()),
    }
}

fn internal(msg: String) -> Failure {
    Failure {
        code: EXIT_VIOLATION,
        msg: format!("internal error: {msg}"),
    }
}

fn cross_check(g: &MultiGraph, r: &SolveResult, budget: u64, with_oracle: bool) -> Result<(), Failure> {
    let mut others: Vec<Method> = Vec::new();
    if bipartition(g).is_present() {
        others.extend([Method::Augmenting, Method::Flow]);
    }
    if with_oracle {
        others.push(Method::Oracle);
    }
    for m in others.into_iter().filter(|&m| m != r.method) {
        let o = solve(g, r.k, m, Some(budget)).map_err(|e| internal(format!("{m} failed: {e}")))?;
        if !o.stats.exact || !r.stats.exact {
            continue;
        }
        if o.nu != r.nu {
            return Err(internal(format!(
                "methods disagree for k = {}: {} gives {}, {m} gives {}",
                r.k, r.method, r.nu, o.nu
            )));
        }
    }
    Ok(())
}

fn cmd_solve(a: SolveArgs, out: &mut dyn Write) -> CmdResult {
    let g = load_graph(&a.input)?;
    let method = pick_method(&g, a.method)?;
    let r = solve(&g, a.k, method, Some(a.budget)).map_err(solve_failure)?;
    cross_check(&g, &r, a.budget, a.cross_check)?;
    let cert = Certificate::new(&r, &g, a.seed);
    let text = cert.to_text();
    if let Some(path) = &a.o {
        write_file(path, &text)?;
    }
    if a.json {
        write!(out, "{text}").unwrap();
    } else {
        writeln!(
            out,
            "nu={} k={} method={} n={} m={} exact={}",
            r.nu,
            r.k,
            r.method,
            g.n(),
            g.m(),
            r.stats.exact
        )
        .unwrap();
        for c in 1..=r.k {
            let class = r.coloring.class(c);
            if !class.is_empty() {
                let ids: Vec<String> = class.iter().map(|e| e.to_string()).collect();
                writeln!(out, "color {c}: {}", ids.join(" ")).unwrap();
            }
        }
    }
    Ok(if r.stats.exact { EXIT_OK } else { EXIT_BUDGET })
}

fn cmd_spectrum(a: SpectrumArgs, out: &mut dyn Write) -> CmdResult {
    let g = load_graph(&a.input)?;
    let method = pick_method(&g, a.method)?;
    let s = spectrum(&g, method, Some(a.budget)).map_err(solve_failure)?;
    if a.json {
        let v = json!({
            "n": g.n(),
            "m": g.m(),
            "spectrum": s.values,
            "methods": s.methods,
            "saturated": s.is_saturated(),
            "exact": s.exact,
        });
        writeln!(out, "{v}").unwrap();
    } else {
        writeln!(out, "k\tnu_k").unwrap();
        for (k, v) in s.values.iter().enumerate() {
            writeln!(out, "{k}\t{v}").unwrap();
        }
        if !s.exact {
            writeln!(out, "oracle budget exhausted: values are lower bounds").unwrap();
        }
    }
    Ok(if s.exact { EXIT_OK } else { EXIT_BUDGET })
}

fn describe(r: &CheckReport) -> String {
    let mut s = format!("{} lhs={} rhs={} {:?}", r.rule, r.lhs, r.rhs, r.verdict).to_lowercase();
    if let Some(k) = r.k {
        s.push_str(&format!(" k={k}"));
    }
    if let Some(i) = r.i {
        s.push_str(&format!(" i={i}"));
    }
    if let Some(b) = r.b {
        s.push_str(&format!(" b={b}"));
    }
    if let Some(t) = &r.target {
        s.push_str(&format!(" at {t}"));
    }
    if r.informational {
        s.push_str(" (informational: graph is not bipartite)");
    }
    s
}

/// Prefix for a report line, flagging failures.
fn tag(r: &CheckReport) -> &'static str {
    if !r.counts() {
        ""
    } else if r.rule.is_conjecture() {
        "COUNTEREXAMPLE "
    } else {
        "VIOLATION "
    }
}

fn bug_found(reports: &[CheckReport]) -> bool {
    reports.iter().any(|r| r.counts() && !r.rule.is_conjecture())
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> CmdResult {
    if let Some(path) = &a.cert {
        let chk = verify_certificate(&read_text(path)?);
        if a.json {
            let v: Vec<String> = chk.violations.iter().map(|v| v.to_string()).collect();
            writeln!(out, "{}", json!({ "valid": chk.is_valid(), "violations": v })).unwrap();
        } else if chk.is_valid() {
            let c = chk.certificate.as_ref().unwrap();
            writeln!(out, "certificate valid: nu={} k={} method={}", c.nu, c.k, c.method).unwrap();
        } else {
            for v in &chk.violations {
                writeln!(out, "VIOLATION {v}").unwrap();
            }
        }
        return Ok(if chk.is_valid() { EXIT_OK } else { EXIT_VIOLATION });
    }
    if let Some(path) = &a.replay {
        let reports = read_reports(&read_text(path)?).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
        let mut code = EXIT_OK;
        for (idx, r) in reports.iter().enumerate() {
            match replay_report(r, Some(a.budget)) {
                Ok(true) => writeln!(out, "{}confirmed #{idx}: {}", tag(r), describe(r)).unwrap(),
                Ok(false) => {
                    writeln!(out, "MISMATCH #{idx}: {}", describe(r)).unwrap();
                    code = EXIT_VIOLATION;
                }
                Err(e) => {
                    writeln!(out, "UNVERIFIED #{idx}: {e}").unwrap();
                    if code == EXIT_OK {
                        code = EXIT_BUDGET;
                    }
                }
            }
        }
        if bug_found(&reports) {
            code = EXIT_VIOLATION;
        }
        writeln!(out, "replayed {} reports", reports.len()).unwrap();
        return Ok(code);
    }
    let g = load_graph(&a.input)?;
    let method = pick_method(&g, a.method)?;
    let rules = if a.rules.is_empty() {
        Rule::ALL.to_vec()
    } else {
        a.rules
    };
    let cache = SpectrumCache::with_method(false, method);
    let eval = evaluate(&g, &rules, &cache, Some(a.budget));
    if a.json {
        for r in &eval.reports {
            writeln!(out, "{}", serde_json::to_string(r).unwrap()).unwrap();
        }
    } else {
        for r in &eval.reports {
            writeln!(out, "{}{}", tag(r), describe(r)).unwrap();
        }
        let ran: Vec<Rule> = eval.reports.iter().map(|r| r.rule).collect();
        let skipped: Vec<&str> = rules.iter().filter(|r| !ran.contains(r)).map(|r| r.name()).collect();
        if !skipped.is_empty() {
            writeln!(out, "not applicable: {}", skipped.join(", ")).unwrap();
        }
    }
    Ok(if eval.unverified {
        EXIT_BUDGET
    } else if bug_found(&eval.reports) {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    })
}

/// Largest exhaustive population accepted by `search`.
const EXHAUSTIVE_LIMIT: u64 = 1 << 28;

fn cmd_search(a: SearchArgs, out: &mut dyn Write) -> CmdResult {
    let rules = if a.rules.is_empty() {
        vec![match a.class {
            GraphClass::Bipartite => Rule::Midpoint,
            GraphClass::NearlyBipartite => Rule::NearlyBipartite,
            GraphClass::All => Rule::OddTransversal,
        }]
    } else {
        a.rules
    };
    let sampler = match a.samples {
        Some(samples) => Sampler::Random { samples, seed: a.seed },
        None => {
            let total = (1..=a.max_n).try_fold(0u64, |acc, n| {
                labeled_count(n, a.max_mult).and_then(|c| acc.checked_add(c))
            });
            if total.is_none_or(|t| t > EXHAUSTIVE_LIMIT) {
                return Err(input_error(format!(
                    "exhaustive search over n <= {} with multiplicity {} is too large; use --samples",
                    a.max_n, a.max_mult
                )));
            }
            Sampler::Exhaustive
        }
    };
    let cfg = SearchConfig {
        class: a.class,
        max_n: a.max_n,
        max_multiplicity: a.max_mult.max(1),
        rules: rules.clone(),
        sampler,
        jobs: a.jobs,
        budget: Some(a.budget),
        use_cache: !a.no_cache,
    };
    let o = search_counterexamples(&cfg);
    if let Some(path) = &a.o {
        write_file(path, &write_reports(&o.reports))?;
    }
    let rule_names: Vec<&str> = rules.iter().map(|r| r.name()).collect();
    let seed = matches!(sampler, Sampler::Random { .. }).then_some(a.seed);
    if a.json {
        let v = json!({
            "class": format!("{:?}", a.class).to_lowercase(),
            "max_n": a.max_n,
            "max_mult": cfg.max_multiplicity,
            "rules": rule_names,
            "seed": seed,
            "graphs": o.graphs,
            "checks": o.checks,
            "theorem_violations": o.theorem_violations,
            "counterexamples": o.counterexamples,
            "informational": o.informational,
            "unverified": o.unverified,
            "reports": o.reports,
        });
        writeln!(out, "{v}").unwrap();
    } else {
        for r in o.reports.iter().filter(|r| r.counts()) {
            writeln!(out, "{}{} graph={:?}", tag(r), describe(r), r.graph).unwrap();
        }
        writeln!(
            out,
            "rules={} graphs={} checks={} theorem_violations={} counterexamples={} informational={} unverified={}",
            rule_names.join(","),
            o.graphs,
            o.checks,
            o.theorem_violations,
            o.counterexamples,
            o.informational,
            o.unverified
        )
        .unwrap();
    }
    Ok(if o.theorem_violations > 0 {
        EXIT_VIOLATION
    } else if o.unverified > 0 {
        EXIT_BUDGET
    } else {
        EXIT_OK
    })
}

fn cmd_gen(a: GenArgs, out: &mut dyn Write) -> CmdResult {
    if !(0.0..=1.0).contains(&a.p) {
        return Err(input_error(format!("probability {} is outside [0, 1]", a.p)));
    }
    let (g, desc) = match a.model {
        Model::RegularBipartite => (
            gen_regular_bipartite(a.half_n, a.k, a.seed),
            format!("regular-bipartite half_n={} k={} seed={}", a.half_n, a.k, a.seed),
        ),
        Model::RandomBipartite => (
            gen_random_bipartite(a.nu, a.nw, a.p, a.max_mult, a.seed),
            format!(
                "random-bipartite nu={} nw={} p={} max_mult={} seed={}",
                a.nu, a.nw, a.p, a.max_mult, a.seed
            ),
        ),
        Model::NearlyBipartite => (
            gen_nearly_bipartite(a.nu, a.nw, a.p, a.max_mult, a.apex_degree, a.seed),
            format!(
                "nearly-bipartite nu={} nw={} p={} max_mult={} apex_degree={} seed={}",
                a.nu, a.nw, a.p, a.max_mult, a.apex_degree, a.seed
            ),
        ),
        Model::Random => (
            gen_random_multigraph(a.n, a.p, a.max_mult, a.seed),
            format!("random n={} p={} max_mult={} seed={}", a.n, a.p, a.max_mult, a.seed),
        ),
        Model::Named => {
            let name = a.name.ok_or_else(|| input_error("--model named needs --name"))?;
            let g = gen_named(&name).map_err(|e| input_error(e.to_string()))?;
            (g, format!("named {name}"))
        }
    };
    let text = format!("c {desc}\n{}", write_edge_list(&g));
    match &a.o {
        Some(path) => write_file(path, &text)?,
        None => write!(out, "{text}").unwrap(),
    }
    Ok(EXIT_OK)
}

fn cmd_self_test(a: SelfTestArgs, out: &mut dyn Write) -> CmdResult {
    if a.list {
        for c in CLAIMS {
            writeln!(out, "{}\t{}", c.id, c.title).unwrap();
        }
        return Ok(EXIT_OK);
    }
    let selected: Vec<&claims::Claim> = if a.only.is_empty() {
        CLAIMS.iter().collect()
    } else {
        a.only
            .iter()
            .map(|id| claims::find(id).ok_or_else(|| input_error(format!("unknown claim `{id}`"))))
            .collect::<Result<_, _>>()?
    };
    let ctx = Context {
        scale: if a.full { Scale::Full } else { Scale::Quick },
        faults: Faults {
            corrupt_golden: a.inject_fault,
        },
        jobs: a.jobs,
    };
    let mut failed = 0;
    for c in selected {
        let (o, secs) = c.run(&ctx);
        failed += usize::from(!o.pass);
        let status = if o.pass { "PASS" } else { "FAIL" };
        writeln!(out, "{status}  {:<18} {secs:>7.2}s  {}", c.id, o.detail).unwrap();
    }
    Ok(if failed == 0 { EXIT_OK } else { EXIT_VIOLATION })
}
