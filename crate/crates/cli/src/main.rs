//! `multipark`: command-line access to multiparking enumeration, the burning
//! bijection, generating functions and identity checks.
//!
//! Exit codes: 0 success, 1 malformed input, 2 invalid function or forest,
//! or a failed identity.

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use multipark::bijection::{render_edges, ForestDocument};
use multipark::genfunc::pbar_direct;
use multipark::recursion::p_recursive_with;
use multipark::*;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "multipark",
    version,
    about = "Multiparking functions on multigraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every multiparking function with its sum.
    Enumerate(Common),
    /// List every spanning color forest.
    Forests(Common),
    /// Burn a function into a color forest.
    Phi {
        #[command(flatten)]
        common: Common,
        /// Function values as a JSON array, e.g. "[0,1,-1]".
        #[arg(long)]
        function: String,
    },
    /// Recover the function of a color forest.
    Psi {
        #[command(flatten)]
        common: Common,
        /// Forest document (path, inline JSON or "-").
        #[arg(long)]
        forest: String,
    },
    /// Print a generating function.
    Poly {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Which::P)]
        which: Which,
    },
    /// Check an identity; exits 2 when it fails.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        check: Check,
    },
    /// Emit graph documents, one JSON object per line.
    Corpus {
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value_t = 1)]
        max_mu: u32,
        #[arg(long, default_value_t = 0)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct Common {
    /// Graph document: a path, inline JSON, or "-" for stdin.
    #[arg(long)]
    graph: String,
    /// Threshold vertex; defaults to n.
    #[arg(long)]
    m: Option<usize>,
    /// Comma-separated images "t(1),...,t(n)", or "random" (uses --seed).
    #[arg(long)]
    ranking: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    #[value(name = "P")]
    P,
    #[value(name = "Pbar")]
    Pbar,
    #[value(name = "I")]
    I,
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Reciprocity,
    Recursion,
    Tutte,
    Bijection,
    Corollary,
}

impl Check {
    fn name(self) -> &'static str {
        match self {
            Check::Reciprocity => "reciprocity",
            Check::Recursion => "recursion",
            Check::Tutte => "tutte",
            Check::Bijection => "bijection",
            Check::Corollary => "corollary",
        }
    }
}

struct Failure {
    code: u8,
    error: anyhow::Error,
}

type Outcome<T> = std::result::Result<T, Failure>;

fn malformed(error: anyhow::Error) -> Failure {
    Failure { code: 1, error }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidFunction(_) | Error::InvalidForest(_) => 2,
            _ => 1,
        };
        Failure {
            code,
            error: e.into(),
        }
    }
}

/// Parsed graph plus the options every graph command shares.
struct Session {
    g: ColoredMultigraph,
    m: usize,
    tau: VertexRanking,
    format: Format,
    seed: Option<u64>,
}

fn read_source(source: &str) -> anyhow::Result<String> {
    let trimmed = source.trim_start();
    if source == "-" {
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else if trimmed.starts_with('{') || trimmed.starts_with('[') {
        Ok(source.to_string())
    } else {
        fs::read_to_string(source).with_context(|| format!("reading {source}"))
    }
}

fn load(common: &Common) -> Outcome<Session> {
    let text = read_source(&common.graph).map_err(malformed)?;
    let doc: GraphDocument = serde_json::from_str(&text)
        .context("graph document")
        .map_err(malformed)?;
    let g = ColoredMultigraph::from_document(&doc)?;
    let n = g.n();
    let m = common.m.unwrap_or(n);
    if m == 0 || m > n {
        return Err(Error::InvalidThreshold { m, n }.into());
    }
    let tau = match common.ranking.as_deref() {
        None => VertexRanking::identity(n),
        Some("random") => VertexRanking::random(n, common.seed.unwrap_or(0)),
        Some(s) => {
            let tau: VertexRanking = s.parse()?;
            if tau.n() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: tau.n(),
                }
                .into());
            }
            tau
        }
    };
    Ok(Session {
        g,
        m,
        tau,
        format: common.format,
        seed: common.seed,
    })
}

fn json_line(v: &impl serde::Serialize) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn cmd_enumerate(cx: &Session) -> Outcome<String> {
    let all = enumerate_multiparking(&cx.g, cx.m)?;
    Ok(match cx.format {
        Format::Text => all.iter().map(|f| format!("{f} {}\n", f.sum())).collect(),
        Format::Json => {
            let items: Vec<Value> = all
                .iter()
                .map(|f| json!({"values": f.values(), "sum": f.sum()}))
                .collect();
            json_line(&json!({"m": cx.m, "count": all.len(), "functions": items})) + "\n"
        }
    })
}

fn cmd_forests(cx: &Session) -> Outcome<String> {
    let all = enumerate_color_forests(&cx.g, cx.m)?;
    Ok(match cx.format {
        Format::Text => all.iter().map(|f| format!("{f}\n")).collect(),
        Format::Json => {
            let docs: Vec<ForestDocument> = all.iter().map(|f| f.to_document()).collect();
            json_line(&json!({"m": cx.m, "count": all.len(), "forests": docs})) + "\n"
        }
    })
}

fn cmd_phi(cx: &Session, function: &str) -> Outcome<String> {
    let values: Vec<i64> = serde_json::from_str(function)
        .context("function values")
        .map_err(malformed)?;
    let f = MultiparkingFunction::new(cx.m, values)?;
    let (forest, order) = phi(&cx.g, &cx.tau, &f)?;
    let edges = forest.edges_in_order(&order);
    Ok(match cx.format {
        Format::Text => format!("forest: {}\norder: {order}\n", render_edges(&edges)),
        Format::Json => {
            let doc: Vec<(usize, usize, u32)> =
                edges.iter().map(|e| (e.u(), e.v(), e.color())).collect();
            json_line(&json!({"forest": {"edges": doc}, "order": order.order()})) + "\n"
        }
    })
}

fn cmd_psi(cx: &Session, source: &str) -> Outcome<String> {
    let text = read_source(source).map_err(malformed)?;
    let doc: ForestDocument = serde_json::from_str(&text)
        .context("forest document")
        .map_err(malformed)?;
    let forest = ColorForest::from_document(cx.g.n(), cx.m, &doc)?;
    let (f, order) = psi(&cx.g, &cx.tau, &forest)?;
    Ok(match cx.format {
        Format::Text => format!("function: {f}\norder: {order}\n"),
        Format::Json => json_line(&json!({"function": f.values(), "order": order.order()})) + "\n",
    })
}

fn cmd_poly(cx: &Session, which: Which) -> Outcome<String> {
    let p = match which {
        Which::P => p_poly(&cx.g, cx.m)?,
        Which::Pbar => pbar_poly(&cx.g, cx.m)?,
        Which::I => i_poly(&cx.g, cx.m, &cx.tau)?,
    };
    Ok(match cx.format {
        Format::Text => format!("{p}\n"),
        Format::Json => json_line(&p) + "\n",
    })
}

fn require_root_n(cx: &Session, check: Check) -> Outcome<()> {
    if cx.m != cx.g.n() {
        return Err(malformed(anyhow!(
            "the {} check uses root n = {}; got m = {}",
            check.name(),
            cx.g.n(),
            cx.m
        )));
    }
    Ok(())
}

/// Runs a check and returns the rendered report with its verdict.
fn cmd_verify(cx: &Session, check: Check) -> Outcome<(String, bool)> {
    let (sides, pass): (Vec<(&str, Value)>, bool) = match check {
        Check::Reciprocity => {
            let r = reciprocity_check(&cx.g, cx.m, &cx.tau)?;
            let also = pbar_direct(&cx.g, cx.m)? == r.pbar;
            (
                vec![
                    ("q^|V| I", json!(r.shifted_i.to_string())),
                    ("Pbar", json!(r.pbar.to_string())),
                    ("q^|E| P(1/q)", json!(r.reflected_p.to_string())),
                ],
                r.pass && also,
            )
        }
        Check::Recursion => {
            require_root_n(cx, check)?;
            let brute = p_poly(&cx.g, cx.m)?;
            let rule = cx.seed.map_or(PivotRule::Smallest, PivotRule::Random);
            let rec = p_recursive_with(&cx.g, rule)?;
            let pass = brute == rec;
            (
                vec![
                    ("P enumerated", json!(brute.to_string())),
                    ("P recursive", json!(rec.to_string())),
                ],
                pass,
            )
        }
        Check::Tutte => {
            require_root_n(cx, check)?;
            let r = tutte_check(&cx.g)?;
            (
                vec![
                    ("P enumerated", json!(r.p.to_string())),
                    ("T", json!(r.tutte.to_string())),
                    ("q^(|E|-|V|) T(1,1/q)", json!(r.from_tutte.to_string())),
                ],
                r.pass,
            )
        }
        Check::Bijection => {
            let functions = enumerate_multiparking(&cx.g, cx.m)?;
            let forests = enumerate_color_forests(&cx.g, cx.m)?;
            let mut failures = 0usize;
            for f in &functions {
                let (forest, _) = phi(&cx.g, &cx.tau, f)?;
                if &psi(&cx.g, &cx.tau, &forest)?.0 != f {
                    failures += 1;
                }
            }
            for forest in &forests {
                let (f, _) = psi(&cx.g, &cx.tau, forest)?;
                if !is_multiparking(&cx.g, &f)? || &phi(&cx.g, &cx.tau, &f)?.0 != forest {
                    failures += 1;
                }
            }
            (
                vec![
                    ("functions", json!(functions.len())),
                    ("forests", json!(forests.len())),
                    ("round-trip failures", json!(failures)),
                ],
                failures == 0 && functions.len() == forests.len(),
            )
        }
        Check::Corollary => {
            let forests = enumerate_color_forests(&cx.g, cx.m)?;
            let mut failures = 0usize;
            let (mut lhs, mut rhs) = (0i64, 0i64);
            for forest in &forests {
                let s = corollary_stats(&cx.g, &cx.tau, forest)?;
                lhs += s.f_sum;
                rhs += s.color_sum + s.n_sum - s.sigma;
                failures += usize::from(!s.holds());
            }
            (
                vec![
                    ("forests", json!(forests.len())),
                    ("total f sum", json!(lhs)),
                    ("total color + N - sigma", json!(rhs)),
                    ("failures", json!(failures)),
                ],
                failures == 0,
            )
        }
    };
    let verdict = if pass { "pass" } else { "fail" };
    let text = match cx.format {
        Format::Text => {
            let mut out = format!("check: {}\n", check.name());
            for (k, v) in &sides {
                match v {
                    Value::String(s) => out += &format!("{k}: {s}\n"),
                    other => out += &format!("{k}: {other}\n"),
                }
            }
            out + &format!("result: {verdict}\n")
        }
        Format::Json => {
            let map: serde_json::Map<String, Value> =
                sides.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
            json_line(&json!({"check": check.name(), "sides": map, "pass": pass})) + "\n"
        }
    };
    Ok((text, pass))
}

fn cmd_corpus(max_n: usize, max_mu: u32, count: usize, seed: u64) -> Outcome<String> {
    if max_n == 0 {
        return Err(malformed(anyhow!("--max-n must be at least 1")));
    }
    let graphs = multipark::corpus::corpus(max_n, max_mu, count, seed)?;
    Ok(graphs
        .iter()
        .map(|g| json_line(&g.to_document()) + "\n")
        .collect())
}

fn run(cli: Cli) -> Outcome<(String, bool)> {
    let ok = |s: String| (s, true);
    match cli.command {
        Command::Enumerate(c) => cmd_enumerate(&load(&c)?).map(ok),
        Command::Forests(c) => cmd_forests(&load(&c)?).map(ok),
        Command::Phi { common, function } => cmd_phi(&load(&common)?, &function).map(ok),
        Command::Psi { common, forest } => cmd_psi(&load(&common)?, &forest).map(ok),
        Command::Poly { common, which } => cmd_poly(&load(&common)?, which).map(ok),
        Command::Verify { common, check } => cmd_verify(&load(&common)?, check),
        Command::Corpus {
            max_n,
            max_mu,
            count,
            seed,
        } => cmd_corpus(max_n, max_mu, count, seed).map(ok),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok((out, pass)) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(out.as_bytes()).is_err() {
                return ExitCode::from(1);
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(Failure { code, error }) => {
            eprintln!("error: {error:#}");
            ExitCode::from(code)
        }
    }
}
