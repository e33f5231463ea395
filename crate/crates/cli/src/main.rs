use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use nfree::format::{self, FormatError};
use nfree::oracle::{self, EnumerationSpec, Filter, Suite};
use nfree::{
    a_set, full_subdivision, grillet_closure, is_cac, is_n_free, is_series_parallel, n_diag, nd_closure, nd_diag,
    sequential_closure, subdivide, Edge, EdgeSet, Poset, Strategy,
};

/// Minimal N-free barycentric extensions of finite posets.
///
/// Posets are read from FILE, or standard input when FILE is omitted or `-`.
/// Files ending in `.json` are read as JSON documents.
#[derive(Parser)]
#[command(name = "nfree", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Diagonal edges of the N's, one `x<y` per line.
    Ndiag(Input),
    /// Covers that become diagonal edges after one subdivision pass.
    Aset(Input),
    /// Diagonal edges of the N's of the Hasse diagram.
    Nddiag(Input),
    /// Whether the poset contains no N.
    Nfree(Input),
    /// Whether every maximal chain meets every maximal antichain.
    Cac(Input),
    /// Whether no four elements induce an N.
    Sp(Input),
    /// Place one dummy on each given cover.
    Subdivide {
        #[arg(long = "edge", value_name = "X<Y", value_parser = parse_edge)]
        edges: Vec<Edge>,
        #[command(flatten)]
        input: Input,
    },
    /// The smallest N-free barycentric subdivision.
    Close {
        #[arg(long, value_enum, default_value_t = Method::TwoPass)]
        method: Method,
        /// Edge choice for `--method sequential`.
        #[arg(long, value_enum)]
        strategy: Option<StrategyKind>,
        /// Seed for `--strategy random`. Each step takes the diagonal edge at
        /// index `next % count` in canonical order, where `next` is the next
        /// SplitMix64 output. Defaults to 0.
        #[arg(long)]
        seed: Option<u64>,
        /// Print the sequential steps as comments before the result.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        input: Input,
    },
    /// One dummy on every cover.
    FullSubdivide(Input),
    /// The reversed order.
    Dual(Input),
    /// Graphviz rendering of the Hasse diagram.
    Dot(Input),
    /// All labeled posets on `v1..vK`.
    Enumerate {
        #[arg(long = "n", value_name = "K")]
        n: usize,
        #[arg(long)]
        count_only: bool,
        /// One of nfree, has-n, sp, not-sp, single-n.
        #[arg(long, value_parser = parse_filter)]
        filter: Option<Filter>,
        /// Allow K = 7.
        #[arg(long)]
        long: bool,
    },
    /// Check every property of a suite on all labeled posets on K elements.
    Verify {
        #[arg(long = "n", value_name = "K")]
        n: usize,
        /// One of all, npattern, subdivision, minimality, confluence.
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: Suite,
        /// Allow K = 7.
        #[arg(long)]
        long: bool,
    },
}

#[derive(clap::Args)]
struct Input {
    #[arg(value_name = "FILE")]
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    TwoPass,
    Sequential,
    Nd,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyKind {
    Lex,
    Random,
}

fn parse_edge(s: &str) -> Result<Edge, String> {
    Edge::parse(s).map_err(|e| e.to_string())
}

fn parse_filter(s: &str) -> Result<Filter, String> {
    s.parse().map_err(|e: oracle::EnumerationError| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

enum Failure {
    /// Exit 2.
    Input(String),
    /// Exit 3, the report goes to standard output.
    Verification(String),
    /// Exit 3.
    Internal(String),
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Failure {
        Failure::Input(e.to_string())
    }
}

fn input_error(e: impl ToString) -> Failure {
    Failure::Input(e.to_string())
}

fn read_poset(input: &Input) -> Result<Poset, Failure> {
    let (text, json) = match input.file.as_deref() {
        None => (read_stdin()?, false),
        Some(p) if p == Path::new("-") => (read_stdin()?, false),
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| input_error(format!("{}: {e}", p.display())))?;
            (text, p.extension().is_some_and(|x| x == "json"))
        }
    };
    Ok(if json {
        format::read_poset_json(&text)?
    } else {
        format::read_poset(&text)?
    })
}

fn read_stdin() -> Result<String, Failure> {
    let mut text = String::new();
    io::stdin().read_to_string(&mut text).map_err(input_error)?;
    Ok(text)
}

fn string(set: EdgeSet) -> String {
    set.to_string()
}

fn boolean(b: bool) -> String {
    format!("{b}\n")
}

fn run(cli: Cli) -> Result<String, Failure> {
    Ok(match cli.command {
        Command::Ndiag(i) => string(n_diag(&read_poset(&i)?)),
        Command::Aset(i) => string(a_set(&read_poset(&i)?)),
        Command::Nddiag(i) => string(nd_diag(&read_poset(&i)?)),
        Command::Nfree(i) => boolean(is_n_free(&read_poset(&i)?)),
        Command::Cac(i) => boolean(is_cac(&read_poset(&i)?)),
        Command::Sp(i) => boolean(is_series_parallel(&read_poset(&i)?)),
        Command::Subdivide { edges, input } => {
            let p = read_poset(&input)?;
            let q = subdivide(&p, &edges.into_iter().collect()).map_err(input_error)?;
            format::serialize_poset(&q)
        }
        Command::Close {
            method,
            strategy,
            seed,
            trace,
            input,
        } => close(&read_poset(&input)?, method, strategy, seed, trace)?,
        Command::FullSubdivide(i) => format::serialize_poset(&full_subdivision(&read_poset(&i)?)),
        Command::Dual(i) => format::serialize_poset(&read_poset(&i)?.dual()),
        Command::Dot(i) => format::emit_dot(&read_poset(&i)?),
        Command::Enumerate {
            n,
            count_only,
            filter,
            long,
        } => {
            let mut spec = EnumerationSpec::new(n).long_running(long);
            spec.filter = filter;
            let posets = oracle::enumerate_posets(&spec).map_err(input_error)?;
            if count_only {
                format!("{}\n", posets.count())
            } else {
                posets
                    .map(|p| format::serialize_poset(&p))
                    .collect::<Vec<_>>()
                    .join("\n")
            }
        }
        Command::Verify { n, suite, long } => {
            let spec = EnumerationSpec::new(n).long_running(long);
            let report = oracle::verify(&spec, suite).map_err(input_error)?;
            let text = format!("{report}\n");
            if report.failed > 0 {
                return Err(Failure::Verification(text));
            }
            text
        }
    })
}

fn close(
    p: &Poset,
    method: Method,
    strategy: Option<StrategyKind>,
    seed: Option<u64>,
    trace: bool,
) -> Result<String, Failure> {
    if !matches!(method, Method::Sequential) && (strategy.is_some() || seed.is_some() || trace) {
        return Err(input_error("--strategy, --seed and --trace need --method sequential"));
    }
    let strategy = match (strategy, seed) {
        (Some(StrategyKind::Lex), Some(_)) => return Err(input_error("--seed needs --strategy random")),
        (Some(StrategyKind::Lex), None) | (None, None) => Strategy::Lexicographic,
        (Some(StrategyKind::Random), seed) | (None, seed @ Some(_)) => Strategy::SeededRandom(seed.unwrap_or(0)),
    };
    Ok(match method {
        Method::TwoPass => format::serialize_poset(&grillet_closure(p)),
        Method::Nd => format::serialize_poset(&nd_closure(p)),
        Method::Sequential => {
            let run = sequential_closure(p, &strategy).map_err(|e| Failure::Internal(e.to_string()))?;
            let mut out = String::new();
            if trace {
                for s in &run.steps {
                    out.push_str(&format!("# step {}: {} -> {}\n", s.index, s.edge, s.dummy));
                }
            }
            out.push_str(&format::serialize_poset(&run.result));
            out
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            // A closed pipe is not an error worth reporting.
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            print!("{msg}");
            ExitCode::from(3)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
