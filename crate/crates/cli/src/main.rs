use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};

use chinese_monoid::diagram::{enumerate_leaves, Diagram};
use chinese_monoid::error::Error;
use chinese_monoid::harness::{run_suite, Suite, SuiteParams, DEFAULT_SEED};
use chinese_monoid::render::{render_dot, render_tree_ascii};
use chinese_monoid::representation::{build_representation, incomparability_witness, Embedding, LeafRepresentation};
use chinese_monoid::rewriting::{eq_oracle, CongruencePairs};
use chinese_monoid::staircase::{multiply, to_staircase, StaircaseForm};
use chinese_monoid::word::Word;

/// The Chinese monoid: normal forms, the diagram tree and its leaf
/// representations.
#[derive(Parser)]
#[command(name = "chinese", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Rank {
    /// Rank of the monoid (number of generators).
    #[arg(short = 'n', long = "rank")]
    n: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Oracle,
    Embedding,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Staircase normal form of a word.
    Normalize {
        #[command(flatten)]
        rank: Rank,
        word: String,
        #[arg(long)]
        json: bool,
    },
    /// Normal form of the product of two words.
    Mul {
        #[command(flatten)]
        rank: Rank,
        w: String,
        v: String,
        #[arg(long)]
        json: bool,
    },
    /// Decides whether two words are equal in the monoid.
    Eq {
        #[command(flatten)]
        rank: Rank,
        w: String,
        v: String,
        #[arg(long, value_enum, default_value = "oracle")]
        method: Method,
    },
    /// Prints the tree of diagrams.
    Tree {
        #[command(flatten)]
        rank: Rank,
        /// Graphviz output.
        #[arg(long, conflicts_with = "ascii")]
        dot: bool,
        /// Indented drawing (default).
        #[arg(long)]
        ascii: bool,
    },
    /// Lists the leaves with their schema counts (c, d).
    Leaves {
        #[command(flatten)]
        rank: Rank,
        #[arg(long)]
        json: bool,
    },
    /// Generator images of one leaf representation.
    Repr {
        #[command(flatten)]
        rank: Rank,
        #[arg(long)]
        leaf: String,
        #[arg(long)]
        json: bool,
    },
    /// Image of a word under one leaf representation.
    Image {
        #[command(flatten)]
        rank: Rank,
        #[arg(long)]
        leaf: String,
        word: String,
    },
    /// Words identified by the first leaf but separated by the second.
    Witness {
        #[command(flatten)]
        rank: Rank,
        #[arg(long)]
        leaf1: String,
        #[arg(long)]
        leaf2: String,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    /// Runs a verification suite, or `all` of them.
    Verify {
        /// counts, faithfulness, boxplus, identity, centrality, incomparability, schema or all
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Largest rank (exact rank for faithfulness and incomparability).
        #[arg(short = 'n', long = "rank")]
        n: Option<usize>,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        /// Corrupt one generator image first; faithfulness must then fail.
        #[arg(long)]
        inject_fault: bool,
        /// One JSON object per suite.
        #[arg(long)]
        json: bool,
        /// Include elapsed time.
        #[arg(long)]
        timing: bool,
    },
}

enum Failure {
    Usage(Error),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ClassCapExceeded { .. } => Failure::Runtime(e.to_string()),
            e => Failure::Usage(e),
        }
    }
}

type Outcome = Result<(String, bool), Failure>;

fn form_output(f: &StaircaseForm, json: bool) -> String {
    if json {
        let mut value = serde_json::to_value(f).expect("staircase forms serialize");
        value["format"] = json!(1);
        value["word"] = json!(f.expand().to_string());
        format!("{value}\n")
    } else {
        format!("{f}\n= {}\n", f.expand())
    }
}

fn leaf(n: usize, id: &str) -> Result<LeafRepresentation, Error> {
    build_representation(&Diagram::parse_id(n, id)?)
}

fn repr_table(r: &LeafRepresentation) -> String {
    let mut out = format!("leaf {} (c={}, d={})\n", r.leaf().id(), r.counts().0, r.counts().1);
    for (pos, c) in r.schema().iter().enumerate() {
        let _ = writeln!(out, "  [{pos}] {} from {}", c.kind.tag(), c.origin);
    }
    for g in 1..=r.rank() {
        let _ = writeln!(out, "a{g} -> {}", r.generator_image(g));
    }
    out
}

fn run(command: Command) -> Outcome {
    let ok = |s: String| Ok((s, true));
    match command {
        Command::Normalize { rank, word, json } => {
            ok(form_output(&to_staircase(&Word::parse(rank.n, &word)?)?, json))
        }
        Command::Mul { rank, w, v, json } => {
            let f = to_staircase(&Word::parse(rank.n, &w)?)?;
            let g = to_staircase(&Word::parse(rank.n, &v)?)?;
            ok(form_output(&multiply(&f, &g)?, json))
        }
        Command::Eq { rank, w, v, method } => {
            let (w, v) = (Word::parse(rank.n, &w)?, Word::parse(rank.n, &v)?);
            let oracle = || eq_oracle(&w, &v, &CongruencePairs::none(rank.n));
            let embedding = || Embedding::new(rank.n)?.eq(&w, &v);
            let answer = match method {
                Method::Oracle => oracle()?,
                Method::Embedding => embedding()?,
                Method::Both => {
                    let (a, b) = (oracle()?, embedding()?);
                    if a != b {
                        return Err(Failure::Runtime(format!(
                            "oracle says {a}, embedding says {b} for {w} and {v} at rank {}",
                            rank.n
                        )));
                    }
                    a
                }
            };
            ok(format!("{answer}\n"))
        }
        Command::Tree { rank, dot, .. } => {
            let root = Diagram::root(rank.n)?;
            ok(if dot { render_dot(&root) } else { render_tree_ascii(&root) })
        }
        Command::Leaves { rank, json } => {
            let leaves = enumerate_leaves(rank.n)?;
            if json {
                let list: Vec<Json> = leaves
                    .iter()
                    .map(|d| {
                        let (c, dd) = d.schema_counts();
                        let steps: Vec<String> = d.steps().iter().map(|s| s.to_string()).collect();
                        json!({"id": d.id(), "steps": steps, "c": c, "d": dd})
                    })
                    .collect();
                ok(format!("{}\n", json!({"format": 1, "n": rank.n, "leaves": list})))
            } else {
                let mut out = String::new();
                for d in &leaves {
                    let (c, dd) = d.schema_counts();
                    let _ = writeln!(out, "{}\tc={c}\td={dd}", d.id());
                }
                ok(out)
            }
        }
        Command::Repr { rank, leaf: id, json } => {
            let r = leaf(rank.n, &id)?;
            if json {
                let mut value = r.to_json();
                value["format"] = json!(1);
                ok(format!("{value}\n"))
            } else {
                ok(repr_table(&r))
            }
        }
        Command::Image { rank, leaf: id, word } => {
            let r = leaf(rank.n, &id)?;
            ok(format!("{}\n", r.image(&Word::parse(rank.n, &word)?)?))
        }
        Command::Witness { rank, leaf1, leaf2, max_len } => {
            let (r1, r2) = (leaf(rank.n, &leaf1)?, leaf(rank.n, &leaf2)?);
            match incomparability_witness(&r1, &r2, max_len)? {
                Some((w, v)) => ok(format!(
                    "{w}\n{v}\n\"{leaf1}\": {} = {}\n\"{leaf2}\": {} != {}\n",
                    r1.image(&w)?,
                    r1.image(&v)?,
                    r2.image(&w)?,
                    r2.image(&v)?
                )),
                None => ok(format!("not found up to length {max_len}\n")),
            }
        }
        Command::Verify { suite, seed, n, max_len, samples, inject_fault, json, timing } => {
            let suites = if suite == "all" { Suite::ALL.to_vec() } else { vec![suite.parse::<Suite>()?] };
            let params = SuiteParams { n, max_len, samples, seed, inject_fault };
            let mut out = String::new();
            let mut passed = true;
            for s in suites {
                let report = run_suite(s, &params)?;
                passed &= report.passed();
                if json {
                    let _ = writeln!(out, "{}", report.to_json(timing));
                } else {
                    let _ = writeln!(out, "{report}");
                    if timing {
                        let _ = writeln!(out, "elapsed: {:.3}s", report.elapsed.as_secs_f64());
                    }
                }
            }
            Ok((out, passed))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((out, passed)) => {
            print!("{out}");
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
