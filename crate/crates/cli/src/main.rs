//! `vposet`: command-line front end for the vramsey library.

mod render;
mod selftest;

use std::collections::HashMap;
use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use vramsey::checker::{is_good, is_good_rainbow, Target, TargetList};
use vramsey::coloring::ColoringJson;
use vramsey::constructions as cons;
use vramsey::lattice::DomainJson;
use vramsey::poset::{dim2, parse_pattern_list, PosetJson};
use vramsey::search::{
    self, verify_certificate, CertificateJson, ColorSymmetry, EnumerateOptions, Outcome, RamseyResult,
    SearchCertificate,
};
use vramsey::{Coloring, Domain, ElementSet, Error, Mode, Poset, SearchConfig};

#[derive(Parser)]
#[command(name = "vposet", version, about = "Boolean Ramsey numbers of small posets, by construction and exhaustive search")]
struct Cli {
    #[command(flatten)]
    search: SearchArgs,

    /// Write the JSON document to this file (`-` for stdout).
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SearchArgs {
    /// Worker threads for searches.
    #[arg(long, global = true, env = "VPOSET_WORKERS", default_value_t = 1)]
    workers: usize,

    /// Stop a search after this many nodes and report it as inconclusive.
    #[arg(long, global = true)]
    node_budget: Option<u64>,

    /// Size levels that get orbit pruning.
    #[arg(long, global = true, default_value_t = 2)]
    symmetry_depth: usize,

    /// Color-name pruning: auto, on or off.
    #[arg(long, global = true, default_value = "auto")]
    color_symmetry: String,

    /// Size levels assigned before the search splits into parallel subtrees.
    #[arg(long, global = true, default_value_t = 2)]
    split_levels: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Boolean Ramsey numbers.
    #[command(subcommand)]
    Ramsey(RamseyCmd),
    /// Rainbow Ramsey numbers.
    #[command(subcommand)]
    Rainbow(RainbowCmd),
    /// Minimal Ramsey domains.
    #[command(subcommand)]
    Minimal(MinimalCmd),
    /// Explicit colorings and embeddings.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Pattern parameters.
    #[command(subcommand)]
    Poset(PosetCmd),
    /// Re-check a certificate written by `ramsey` or `rainbow`.
    VerifyCertificate {
        #[arg(long)]
        file: String,
        /// Re-run exhaustion claims with the recorded configuration instead
        /// of with all symmetry reduction off.
        #[arg(long)]
        trust_config: bool,
    },
    /// Diagrams.
    #[command(subcommand)]
    Render(RenderCmd),
    /// Randomized consistency checks.
    Selftest {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        cases: usize,
    },
}

#[derive(Args)]
struct TargetArgs {
    /// Comma-separated pattern literals, e.g. "V(1,1),V(2,2)", or `@file`
    /// holding a JSON array of posets.
    #[arg(long)]
    targets: String,
    /// Weak (order-preserving only) containment.
    #[arg(long)]
    weak: bool,
}

#[derive(Subcommand)]
enum RamseyCmd {
    /// Least n such that every coloring of B_n contains a target.
    Compute {
        #[command(flatten)]
        t: TargetArgs,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
    },
    /// Certify R <= n by exhausting the colorings of B_n.
    VerifyUpper {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        t: TargetArgs,
    },
    /// Certify R > n by finding a good coloring of B_n.
    FindLower {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        t: TargetArgs,
    },
    /// Compare R and R_w with m_1 + ... + m_k + 1 for V(m_i,m_i) targets.
    Conjecture {
        /// Comma-separated m_i.
        #[arg(long)]
        m: String,
    },
}

#[derive(Subcommand)]
enum RainbowCmd {
    /// Least n such that every coloring of B_n has a monochromatic p or a
    /// rainbow q.
    Compute {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
    },
}

#[derive(Subcommand)]
enum MinimalCmd {
    /// Decide whether a domain is Ramsey and minimal.
    Check {
        /// Domain JSON, inline or a file path.
        #[arg(long)]
        domain: String,
        #[command(flatten)]
        t: TargetArgs,
    },
    /// List minimal Ramsey domains of B_n up to relabeling.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        t: TargetArgs,
        #[arg(long, default_value_t = 3)]
        max_removed: usize,
        /// Do not force the removal of [n].
        #[arg(long)]
        keep_top: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ColoringRule {
    Layered,
    Mixed,
    Theorem3,
    RainbowLower,
    Prop8,
}

#[derive(Clone, Copy, ValueEnum)]
enum EmbeddingRule {
    ChainRemoval,
    AntichainRemoval,
    Iterated,
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Emit a coloring and its checker verdict.
    Coloring {
        #[arg(long, value_enum)]
        rule: ColoringRule,
        /// key=value pairs, e.g. "m=1,n=2,k=2,top=1", "k=2,s={1}", "p=V(1,2)".
        #[arg(long, default_value = "")]
        params: String,
    },
    /// Emit an embedding of a smaller cube that avoids a family.
    Embedding {
        #[arg(long, value_enum)]
        rule: EmbeddingRule,
        /// `{ "n": 4, "family": ["{1}", "{1,2}"], "w": 4, "forbid_top": true }`
        #[arg(long)]
        input: String,
    },
}

#[derive(Subcommand)]
enum PosetCmd {
    /// Least n with the pattern inside B_n.
    Dim2 {
        #[arg(long)]
        pattern: String,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
    },
    /// Size, height, dim2, extremal count and covers.
    Info {
        #[arg(long)]
        pattern: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Svg,
}

#[derive(Subcommand)]
enum RenderCmd {
    /// Hasse diagram of a domain, optionally colored.
    Hasse {
        #[arg(long)]
        domain: String,
        #[arg(long)]
        coloring: Option<String>,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
    },
}

/// A failed command: message and process exit code.
#[derive(Debug)]
struct Fail {
    code: u8,
    msg: String,
}

impl Fail {
    fn new(code: u8, msg: impl Display) -> Fail {
        Fail {
            code,
            msg: msg.to_string(),
        }
    }
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        let code = match e {
            Error::Pattern(_) => 2,
            Error::Format(_) => 3,
            Error::Inconclusive(_) => 4,
            _ => 1,
        };
        Fail::new(code, e)
    }
}

type CmdResult = Result<Report, Fail>;

/// What a command produced: summary lines, a JSON document, and whether the
/// claim asked for was certified.
struct Report {
    lines: Vec<String>,
    doc: Value,
    certified: bool,
    /// Text written as is instead of a JSON document.
    raw: Option<String>,
}

impl Report {
    fn new(lines: Vec<String>, doc: Value, certified: bool) -> Report {
        Report {
            lines,
            doc,
            certified,
            raw: None,
        }
    }

    fn raw(text: String) -> Report {
        Report {
            raw: Some(text),
            ..Report::new(vec![], Value::Null, true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            return ExitCode::from(f.code);
        }
    };
    let path = cli.output.as_deref().filter(|p| p.as_os_str() != "-");
    let doc_to_stdout = cli.output.is_some() && path.is_none();
    for line in &report.lines {
        if doc_to_stdout {
            eprintln!("{line}");
        } else {
            println!("{line}");
        }
    }
    let text = match report.raw {
        Some(raw) => Some(raw),
        None if cli.output.is_some() => {
            Some(serde_json::to_string_pretty(&report.doc).expect("serializable") + "\n")
        }
        None => None,
    };
    match (text, path) {
        (Some(text), Some(path)) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        (Some(text), None) => print!("{text}"),
        _ => {}
    }
    if report.certified {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: &Cli) -> CmdResult {
    let cfg = config(&cli.search)?;
    match &cli.command {
        Command::Ramsey(c) => ramsey(c, &cfg),
        Command::Rainbow(RainbowCmd::Compute { p, q, n_max }) => {
            let (p, q) = (read_pattern(p)?, read_pattern(q)?);
            let r = search::compute_rainbow_ramsey(&p, &q, *n_max, &cfg)?;
            Ok(number_report(&format!("RR({p}, {q})"), &r))
        }
        Command::Minimal(c) => minimal(c, &cfg),
        Command::Construct(c) => construct(c),
        Command::Poset(c) => poset(c),
        Command::VerifyCertificate { file, trust_config } => verify(file, !trust_config, cfg.workers),
        Command::Render(RenderCmd::Hasse { domain, coloring, format }) => {
            let d = Domain::from_json(&read_json::<DomainJson>(domain)?)?;
            let c = match coloring {
                Some(s) => Some(Coloring::from_json(&read_json::<ColoringJson>(s)?)?),
                None => None,
            };
            if c.as_ref().is_some_and(|c| c.domain() != &d) {
                return Err(Fail::new(1, "coloring and domain disagree"));
            }
            let text = match format {
                Format::Dot => render::dot(&d, c.as_ref()),
                Format::Svg => render::svg(&d, c.as_ref()),
            };
            Ok(Report::raw(text))
        }
        Command::Selftest { seed, cases } => selftest::run(*seed, *cases, &cfg),
    }
}

fn config(a: &SearchArgs) -> Result<SearchConfig, Fail> {
    let color_symmetry: ColorSymmetry = a.color_symmetry.parse()?;
    Ok(SearchConfig {
        node_budget: a.node_budget,
        symmetry_depth: a.symmetry_depth,
        color_symmetry,
        split_levels: a.split_levels,
        workers: a.workers.max(1),
    })
}

/// Inline JSON (starting with `{` or `[`), `@path`, or a plain path.
fn read_json<T: DeserializeOwned>(arg: &str) -> Result<T, Fail> {
    let text = if arg.trim_start().starts_with(['{', '[']) {
        arg.to_string()
    } else {
        let path = arg.strip_prefix('@').unwrap_or(arg);
        std::fs::read_to_string(path).map_err(|e| Fail::new(1, format!("cannot read {path}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Fail::new(3, format!("malformed JSON: {e}")))
}

/// A pattern literal, or a custom poset as inline JSON or `@file`.
fn read_pattern(arg: &str) -> Result<Poset, Fail> {
    if arg.trim_start().starts_with('{') || arg.starts_with('@') {
        Ok(Poset::from_json(&read_json::<PosetJson>(arg)?)?)
    } else {
        Ok(arg.parse()?)
    }
}

fn read_targets(t: &TargetArgs) -> Result<TargetList, Fail> {
    let mode = if t.weak { Mode::Weak } else { Mode::Strong };
    let patterns = if t.targets.starts_with('@') || t.targets.trim_start().starts_with('[') {
        read_json::<Vec<PosetJson>>(&t.targets)?
            .iter()
            .map(Poset::from_json)
            .collect::<Result<Vec<_>, _>>()?
    } else {
        parse_pattern_list(&t.targets)?
    };
    Ok(TargetList::new(patterns.into_iter().map(|pattern| Target { pattern, mode }).collect())?)
}

fn cert_line(c: &SearchCertificate) -> String {
    format!(
        "{} on {}: {} after {} nodes ({} ms)",
        match &c.problem {
            search::Problem::Coloring { k, .. } => format!("{k}-coloring search"),
            search::Problem::Partition { .. } => "partition search".to_string(),
        },
        c.problem.domain(),
        c.outcome.name(),
        c.nodes_visited,
        c.elapsed.as_millis()
    )
}

fn number_report(name: &str, r: &RamseyResult) -> Report {
    let mut lines = vec![format!("{name} = {}", r.value)];
    if let Some(l) = &r.lower {
        lines.push(format!("  lower: {}", cert_line(l)));
    }
    lines.push(format!("  upper: {}", cert_line(&r.upper)));
    let doc = json!({
        "value": r.value,
        "lower": r.lower.as_ref().map(SearchCertificate::to_json),
        "upper": r.upper.to_json(),
    });
    Report::new(lines, doc, true)
}

fn single_report(c: SearchCertificate, want: &str, claim: String) -> CmdResult {
    if c.outcome == Outcome::Inconclusive {
        return Err(Fail::new(4, format!("node budget exhausted: {}", cert_line(&c))));
    }
    let certified = c.outcome.name() == want;
    let verdict = if certified { claim } else { format!("not certified: {}", c.outcome.name()) };
    Ok(Report::new(vec![verdict, format!("  {}", cert_line(&c))], serde_json::to_value(c.to_json()).unwrap(), certified))
}

fn ramsey(c: &RamseyCmd, cfg: &SearchConfig) -> CmdResult {
    match c {
        RamseyCmd::Compute { t, n_max } => {
            let targets = read_targets(t)?;
            let r = search::compute_ramsey(&targets, *n_max, cfg)?;
            Ok(number_report(&format!("R{}", targets.describe()), &r))
        }
        RamseyCmd::VerifyUpper { n, t } => {
            let targets = read_targets(t)?;
            let cert = search::find_good_coloring(&Domain::full(*n)?, targets.len(), &targets, cfg)?;
            single_report(cert, "exhausted", format!("R{} <= {n}", targets.describe()))
        }
        RamseyCmd::FindLower { n, t } => {
            let targets = read_targets(t)?;
            let cert = search::find_good_coloring(&Domain::full(*n)?, targets.len(), &targets, cfg)?;
            single_report(cert, "witness", format!("R{} > {n}", targets.describe()))
        }
        RamseyCmd::Conjecture { m } => {
            let ms: Vec<usize> = m
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| Fail::new(2, format!("bad list `{m}`")))?;
            let predicted = ms.iter().sum::<usize>() + 1;
            let targets = |mode| -> Result<TargetList, Error> {
                let list = ms
                    .iter()
                    .map(|&k| Ok(Target { pattern: Poset::v(k, k)?, mode }))
                    .collect::<Result<Vec<_>, Error>>()?;
                TargetList::new(list)
            };
            let strong = search::compute_ramsey(&targets(Mode::Strong)?, 6, cfg)?;
            let weak = search::compute_ramsey(&targets(Mode::Weak)?, 6, cfg)?;
            let lines = vec![
                format!("R = {}, R_w = {}, m_1 + ... + m_k + 1 = {predicted}", strong.value, weak.value),
                format!("agrees: {}", strong.value == predicted && weak.value == predicted),
            ];
            let doc = json!({
                "m": ms, "predicted": predicted,
                "strong": {"value": strong.value, "upper": strong.upper.to_json()},
                "weak": {"value": weak.value, "upper": weak.upper.to_json()},
            });
            Ok(Report::new(lines, doc, true))
        }
    }
}

fn minimal(c: &MinimalCmd, cfg: &SearchConfig) -> CmdResult {
    match c {
        MinimalCmd::Check { domain, t } => {
            let d = Domain::from_json(&read_json::<DomainJson>(domain)?)?;
            let targets = read_targets(t)?;
            let ramsey = search::is_ramsey_domain(&d, &targets, cfg)?;
            let minimal = ramsey && search::is_minimal_ramsey(&d, &targets, cfg)?;
            let lines = vec![format!("{d}: ramsey {ramsey}, minimal {minimal}")];
            let doc = json!({"domain": d.to_json(), "ramsey": ramsey, "minimal": minimal});
            Ok(Report::new(lines, doc, true))
        }
        MinimalCmd::Enumerate {
            n,
            t,
            max_removed,
            keep_top,
        } => {
            let targets = read_targets(t)?;
            let opts = EnumerateOptions {
                remove_top: !keep_top,
                max_removed: *max_removed,
            };
            let r = search::enumerate_minimal_ramsey(*n, &targets, opts, cfg)?;
            let mut lines = vec![format!(
                "{} minimal classes among {} candidate classes; minimal domains by number of extra removed sets (from 0): {:?}",
                r.classes.len(),
                r.candidates_checked,
                r.minimal_counts
            )];
            lines.extend(r.classes.iter().map(|c| format!("  {} (orbit {})", c.domain, c.orbit_size)));
            let doc = json!({
                "n": n,
                "remove_top": opts.remove_top,
                "max_removed": opts.max_removed,
                "minimal_counts": r.minimal_counts,
                "classes": r.classes.iter().map(|c| json!({"domain": c.domain.to_json(), "orbit_size": c.orbit_size})).collect::<Vec<_>>(),
            });
            Ok(Report::new(lines, doc, true))
        }
    }
}

/// Splits `a=1,b={1,2},p=V(1,2)` at top-level commas.
fn parse_params(s: &str) -> Result<HashMap<String, String>, Fail> {
    let mut out = HashMap::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut parts = Vec::new();
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    for p in parts.into_iter().filter(|p| !p.trim().is_empty()) {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| Fail::new(1, format!("parameter `{p}` is not key=value")))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

fn param<T: std::str::FromStr>(p: &HashMap<String, String>, key: &str, default: Option<T>) -> Result<T, Fail> {
    match p.get(key) {
        Some(v) => v.parse().map_err(|_| Fail::new(1, format!("bad value for {key}: `{v}`"))),
        None => default.ok_or_else(|| Fail::new(1, format!("missing parameter {key}"))),
    }
}

fn identical(pattern: Poset, k: usize) -> Result<TargetList, Error> {
    TargetList::identical(Target::strong(pattern), k)
}

fn construct(c: &ConstructCmd) -> CmdResult {
    match c {
        ConstructCmd::Coloring { rule, params } => {
            let p = parse_params(params)?;
            let (coloring, good, against) = match rule {
                ColoringRule::Layered => {
                    let (m, n, k) = (param(&p, "m", None)?, param(&p, "n", None)?, param(&p, "k", None)?);
                    let c = cons::coloring_layered_identical(m, n, k, param(&p, "top", Some(1))?)?;
                    let t = identical(Poset::v(m, n)?, k)?;
                    (c.clone(), is_good(&c, &t), t.describe())
                }
                ColoringRule::Mixed => {
                    let (m, n) = (param(&p, "m", None)?, param(&p, "n", None)?);
                    let c = cons::coloring_mixed(m, n)?;
                    let t = TargetList::new(vec![Target::strong(Poset::v(m, m)?), Target::strong(Poset::v(n, n)?)])?;
                    (c.clone(), is_good(&c, &t), t.describe())
                }
                ColoringRule::Theorem3 => {
                    let k: usize = param(&p, "k", None)?;
                    let s = ElementSet::parse(p.get("s").map_or("{}", String::as_str), k + 1)?;
                    let c = cons::coloring_minimal_theorem3(k, s)?;
                    let t = identical(Poset::v(1, 1)?, k)?;
                    (c.clone(), is_good(&c, &t), t.describe())
                }
                ColoringRule::RainbowLower => {
                    let (n, k): (usize, usize) = (param(&p, "n", None)?, param(&p, "k", None)?);
                    let m: usize = param(&p, "m", Some(1))?;
                    let c = cons::coloring_rainbow_lower(n, k)?;
                    let (pp, q) = (Poset::v(m, n)?, Poset::antichain(k)?);
                    (c.clone(), is_good_rainbow(&c, &pp, &q), format!("mono {pp}, rainbow {q}"))
                }
                ColoringRule::Prop8 => {
                    let pp = read_pattern(p.get("p").ok_or_else(|| Fail::new(1, "missing parameter p"))?)?;
                    let c = cons::coloring_prop8_lower(&pp)?;
                    let q = Poset::antichain(2)?;
                    (c.clone(), is_good_rainbow(&c, &pp, &q), format!("mono {pp}, rainbow {q}"))
                }
            };
            let lines = vec![format!("coloring of {}: good against {against}: {good}", coloring.domain())];
            let doc = json!({"coloring": coloring.to_json(), "against": against, "good": good});
            Ok(Report::new(lines, doc, good))
        }
        ConstructCmd::Embedding { rule, input } => {
            #[derive(Deserialize)]
            struct Input {
                n: usize,
                family: Vec<String>,
                w: Option<usize>,
                #[serde(default = "yes")]
                forbid_top: bool,
            }
            fn yes() -> bool {
                true
            }
            let inp: Input = read_json(input)?;
            if inp.n > 13 {
                return Err(Fail::new(1, "embedding output is limited to n <= 13"));
            }
            let family = inp
                .family
                .iter()
                .map(|s| ElementSet::parse(s, inp.n))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Fail::new(3, e))?;
            let map = match rule {
                EmbeddingRule::ChainRemoval => cons::chain_removal_embedding(inp.n, &family)?,
                EmbeddingRule::AntichainRemoval => cons::antichain_removal_embedding(inp.n, &family, inp.w)?,
                EmbeddingRule::Iterated => cons::iterated_removal_embedding(inp.n, &family, inp.forbid_top)?,
            };
            let dim = map.images.len().trailing_zeros() as usize;
            let top = ElementSet::full(inp.n);
            let avoided = |x: ElementSet| {
                !family.contains(&x) || (matches!(rule, EmbeddingRule::Iterated) && !inp.forbid_top && x == top)
            };
            let valid = map.is_valid_for(&Poset::cube(dim)?, avoided);
            let lines = vec![format!("B_{dim} -> B_{} avoiding {} sets: valid {valid}", inp.n, family.len())];
            let doc = json!({"n": inp.n, "source_dim": dim, "embedding": map.to_json(), "valid": valid});
            Ok(Report::new(lines, doc, valid))
        }
    }
}

fn poset(c: &PosetCmd) -> CmdResult {
    match c {
        PosetCmd::Dim2 { pattern, n_max } => {
            let p = read_pattern(pattern)?;
            let d = dim2(&p, *n_max)?;
            Ok(Report::new(vec![d.to_string()], json!({"pattern": p.to_json(), "dim2": d}), true))
        }
        PosetCmd::Info { pattern } => {
            let p = read_pattern(pattern)?;
            let d = dim2(&p, 6).ok();
            let lines = vec![
                format!("pattern: {p}"),
                format!("size: {}", p.size()),
                format!("height: {}", p.height()),
                format!("dim2: {}", d.map_or("> 6".to_string(), |d| d.to_string())),
                format!("extremal elements: {}", p.extremal_count()),
                format!("covers: {:?}", p.covers()),
            ];
            let doc = json!({
                "pattern": p.to_json(), "size": p.size(), "height": p.height(),
                "dim2": d, "extremal_count": p.extremal_count(),
            });
            Ok(Report::new(lines, doc, true))
        }
    }
}

fn verify(file: &str, independent: bool, workers: usize) -> CmdResult {
    let doc: Value = read_json(file)?;
    let mut certs: Vec<(String, CertificateJson)> = Vec::new();
    let parse = |v: &Value| {
        serde_json::from_value::<CertificateJson>(v.clone()).map_err(|e| Fail::new(3, format!("malformed certificate: {e}")))
    };
    if doc.get("upper").is_some() {
        if let Some(l) = doc.get("lower").filter(|l| !l.is_null()) {
            certs.push(("lower".into(), parse(l)?));
        }
        certs.push(("upper".into(), parse(&doc["upper"])?));
    } else {
        certs.push(("certificate".into(), parse(&doc)?));
    }
    let mut lines = Vec::new();
    let mut all = true;
    let mut results = Vec::new();
    for (name, c) in &certs {
        let v = verify_certificate(c, independent, workers)?;
        all &= v.ok;
        lines.push(format!("{name}: {} {} ({})", v.outcome, if v.ok { "verified" } else { "NOT verified" }, v.detail));
        results.push(json!({"name": name, "outcome": v.outcome, "ok": v.ok, "detail": v.detail}));
    }
    Ok(Report::new(lines, json!({"results": results, "ok": all}), all))
}
