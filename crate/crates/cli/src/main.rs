//! `bsgraph`: command-line front end for coloured graphs, their square
//! collections, and the category of compatible morphisms.
//!
//! Exit codes: 0 success, 1 mathematical finding (report on stdout),
//! 2 usage or input error (message on stderr).

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use bsgraph::category::CategoryError;
use bsgraph::dot::{model_to_dot, morphism_to_dot};
use bsgraph::enumerate::{enumerate_morphisms_with, EnumerateLimits};
use bsgraph::{
    lift_path, BsWord, Collection, ColouredGraph, Degree, Fixture, GridDegree, LambdaContext,
    LiftError, ModelGraph, Morphism, Path, SquareShape, VerificationReport,
};

#[derive(Parser)]
#[command(
    name = "bsgraph",
    version,
    about = "Coloured graphs, square collections and their morphism categories"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that the squares of a fixture form a complete collection
    Check {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Degree arithmetic
    Word {
        #[command(subcommand)]
        op: WordOp,
    },
    /// Print the model graph of a degree
    Model {
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value = "bs")]
        mode: Mode,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
    },
    /// Lift a path to the unique compatible morphism it traverses
    Lift {
        file: PathBuf,
        #[arg(long)]
        path: String,
        /// Cross-check against brute-force enumeration
        #[arg(long)]
        oracle: bool,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
    },
    /// Compose the lifts of two paths
    Compose {
        file: PathBuf,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        #[arg(long)]
        json: bool,
    },
    /// Split the lift of a path at a prefix of its degree
    Factorize {
        file: PathBuf,
        #[arg(long)]
        path: String,
        #[arg(long)]
        at: String,
        #[arg(long)]
        json: bool,
    },
    /// Shortest and longest traversals of the lift of a path
    Traversals {
        file: PathBuf,
        #[arg(long)]
        path: String,
        #[arg(long, conflicts_with = "longest")]
        shortest: bool,
        #[arg(long)]
        longest: bool,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate every compatible morphism of a degree
    Enumerate {
        file: PathBuf,
        #[arg(long)]
        degree: String,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Check category, functor and factorization laws on all lifts of short paths
    Verify {
        file: PathBuf,
        #[arg(long)]
        max_len: usize,
        #[arg(long, value_enum, value_delimiter = ',', default_values = ["category", "functor", "factorization"])]
        laws: Vec<Law>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum WordOp {
    /// Canonical pair, shortest and longest forms
    Normalize {
        word: String,
        #[command(flatten)]
        opts: WordOpts,
    },
    /// Product of two degrees
    Mul {
        lhs: String,
        rhs: String,
        #[command(flatten)]
        opts: WordOpts,
    },
    /// The degree w2 with prefix · w2 = word
    Quotient {
        prefix: String,
        word: String,
        #[command(flatten)]
        opts: WordOpts,
    },
    /// Whether the first degree is a prefix of the second
    Prefix {
        prefix: String,
        word: String,
        #[command(flatten)]
        opts: WordOpts,
    },
}

#[derive(Args, Clone, Copy)]
struct WordOpts {
    #[arg(long, value_enum, default_value = "bs")]
    mode: Mode,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Bs,
    Grid,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Law {
    Category,
    Functor,
    Factorization,
}

enum Failure {
    /// A mathematical finding: printed on stdout, exit 1.
    Finding { text: String, json: Value },
    /// Bad input or usage: printed on stderr, exit 2.
    Input(String),
}

impl Failure {
    fn input(e: impl std::fmt::Display) -> Failure {
        Failure::Input(e.to_string())
    }

    fn finding(kind: &str, message: impl std::fmt::Display) -> Failure {
        let message = message.to_string();
        Failure::Finding {
            text: format!("{kind}: {message}\n"),
            json: json!({ "error": kind, "message": message }),
        }
    }
}

type Outcome = Result<Output, Failure>;

struct Output {
    text: String,
    json: Value,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let as_json = wants_json(&cli.command);
    match run(cli.command) {
        Ok(out) => {
            emit(&out.text, &out.json, as_json);
            ExitCode::SUCCESS
        }
        Err(Failure::Finding { text, json }) => {
            emit(&text, &json, as_json);
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(text: &str, value: &Value, as_json: bool) {
    let body = if as_json {
        serde_json::to_string_pretty(value).expect("json values serialize") + "\n"
    } else {
        text.to_owned()
    };
    // a closed pipe downstream is not our error
    let _ = std::io::stdout().lock().write_all(body.as_bytes());
}

fn wants_json(cmd: &Command) -> bool {
    match cmd {
        Command::Check { json, .. }
        | Command::Model { json, .. }
        | Command::Lift { json, .. }
        | Command::Compose { json, .. }
        | Command::Factorize { json, .. }
        | Command::Traversals { json, .. }
        | Command::Enumerate { json, .. }
        | Command::Verify { json, .. } => *json,
        Command::Word { op } => match op {
            WordOp::Normalize { opts, .. }
            | WordOp::Mul { opts, .. }
            | WordOp::Quotient { opts, .. }
            | WordOp::Prefix { opts, .. } => opts.json,
        },
    }
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Check { file, .. } => check(&load(&file)?),
        Command::Word { op } => {
            let mode = match &op {
                WordOp::Normalize { opts, .. }
                | WordOp::Mul { opts, .. }
                | WordOp::Quotient { opts, .. }
                | WordOp::Prefix { opts, .. } => opts.mode,
            };
            match mode {
                Mode::Bs => word::<BsWord>(op),
                Mode::Grid => word::<GridDegree>(op),
            }
        }
        Command::Model {
            word, mode, dot, ..
        } => match mode {
            Mode::Bs => model::<BsWord>(&word, dot),
            Mode::Grid => model::<GridDegree>(&word, dot),
        },
        other => {
            let file = match &other {
                Command::Lift { file, .. }
                | Command::Compose { file, .. }
                | Command::Factorize { file, .. }
                | Command::Traversals { file, .. }
                | Command::Enumerate { file, .. }
                | Command::Verify { file, .. } => file.clone(),
                _ => unreachable!(),
            };
            let fx = load(&file)?;
            match fx.mode {
                SquareShape::Bs => with_fixture::<BsWord>(other, fx),
                SquareShape::Grid => with_fixture::<GridDegree>(other, fx),
            }
        }
    }
}

fn load(file: &std::path::Path) -> Result<Fixture, Failure> {
    Fixture::load(file).map_err(Failure::input)
}

fn check(fx: &Fixture) -> Outcome {
    let report = fx.check();
    let out = Output {
        text: report.render(),
        json: serde_json::to_value(&report).expect("report serializes"),
    };
    if report.is_complete() {
        Ok(out)
    } else {
        Err(Failure::Finding {
            text: out.text,
            json: out.json,
        })
    }
}

/// Degree syntax accepted on the command line.
trait CliDegree: Degree {
    fn parse_arg(text: &str) -> Result<Self, String>;
}

impl CliDegree for BsWord {
    fn parse_arg(text: &str) -> Result<Self, String> {
        BsWord::parse(text).map_err(|e| format!("bad word {text:?}: {e}"))
    }
}

impl CliDegree for GridDegree {
    /// `(x,y)`, or a word in `a`/`b` (or `1`/`2`) with optional exponents.
    fn parse_arg(text: &str) -> Result<Self, String> {
        let bad = || format!("bad grid degree {text:?}");
        if text.trim_start().starts_with('(') {
            return GridDegree::parse(text).ok_or_else(bad);
        }
        let mut acc = GridDegree(0, 0);
        let mut chars = text
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '.')
            .peekable();
        while let Some(c) = chars.next() {
            let unit = match c {
                'a' | '1' => GridDegree(1, 0),
                'b' | '2' => GridDegree(0, 1),
                'e' => GridDegree(0, 0),
                _ => return Err(bad()),
            };
            if chars.peek() == Some(&'^') {
                chars.next();
            }
            let mut digits = String::new();
            while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                digits.push(*d);
                chars.next();
            }
            let k: u64 = if digits.is_empty() {
                1
            } else {
                digits.parse().map_err(|_| bad())?
            };
            acc = acc.grid_add(GridDegree(unit.0 * k, unit.1 * k));
        }
        Ok(acc)
    }
}

fn degree_json<D: Degree>(w: &D) -> Value {
    let shortest = w.shortest_form().map(|s| s.to_string()).ok();
    let longest = w.longest_form().map(|s| s.to_string()).ok();
    json!({
        "degree": w.to_string(),
        "word": w.label(),
        "shortest": shortest,
        "longest": longest,
        "prefixes": w.prefix_count().to_string(),
    })
}

fn word<D: CliDegree>(op: WordOp) -> Outcome {
    match op {
        WordOp::Normalize { word, .. } => {
            let w = D::parse_arg(&word).map_err(Failure::Input)?;
            let shortest = w.shortest_form().map_err(Failure::input)?;
            let longest = w.longest_form().map_err(Failure::input)?;
            Ok(Output {
                text: format!(
                    "{w}\nshortest: {} (length {})\nlongest: {} (length {})\nprefixes: {}\n",
                    show_word(&shortest.to_string()),
                    shortest.len(),
                    show_word(&longest.to_string()),
                    longest.len(),
                    w.prefix_count()
                ),
                json: degree_json(&w),
            })
        }
        WordOp::Mul { lhs, rhs, .. } => {
            let (x, y) = (
                D::parse_arg(&lhs).map_err(Failure::Input)?,
                D::parse_arg(&rhs).map_err(Failure::Input)?,
            );
            let p = x.mul(&y);
            Ok(Output {
                text: format!("{p}\n"),
                json: json!({ "lhs": x.to_string(), "rhs": y.to_string(), "product": degree_json(&p) }),
            })
        }
        WordOp::Quotient { prefix, word, .. } => {
            let (x, w) = (
                D::parse_arg(&prefix).map_err(Failure::Input)?,
                D::parse_arg(&word).map_err(Failure::Input)?,
            );
            match x.left_quotient(&w) {
                Some(q) => Ok(Output {
                    text: format!("{q}\n"),
                    json: json!({ "prefix": x.to_string(), "word": w.to_string(), "quotient": degree_json(&q) }),
                }),
                None => Err(Failure::finding(
                    "NotAPrefix",
                    format!("{x} is not a prefix of {w}"),
                )),
            }
        }
        WordOp::Prefix { prefix, word, .. } => {
            let (x, w) = (
                D::parse_arg(&prefix).map_err(Failure::Input)?,
                D::parse_arg(&word).map_err(Failure::Input)?,
            );
            let yes = x.is_prefix_of(&w);
            Ok(Output {
                text: format!("{yes}\n"),
                json: json!({ "prefix": x.to_string(), "word": w.to_string(), "is_prefix": yes }),
            })
        }
    }
}

fn show_word(s: &str) -> &str {
    if s.is_empty() {
        "e"
    } else {
        s
    }
}

fn model<D: CliDegree>(word: &str, dot: bool) -> Outcome {
    let w = D::parse_arg(word).map_err(Failure::Input)?;
    let m = ModelGraph::new(&w).map_err(Failure::input)?;
    let (red, blue) = m.count_by_colour();
    let text = if dot {
        model_to_dot(&m)
    } else {
        let mut t = format!(
            "model graph of {w}: {} vertices, {} edges ({red} red, {blue} blue), {} square positions\n",
            m.vertices().len(),
            m.edges().len(),
            m.square_positions().len()
        );
        for e in m.edges() {
            t.push_str(&format!(
                "  {} <-{}- {}\n",
                e.base.label(),
                e.letter,
                e.source().label()
            ));
        }
        t
    };
    let json = json!({
        "degree": w.to_string(),
        "word": w.label(),
        "vertices": m.vertices().iter().map(|z| z.label()).collect::<Vec<_>>(),
        "edges": m.edges().iter().map(|e| json!({
            "range": e.base.label(),
            "source": e.source().label(),
            "letter": e.letter.to_string(),
        })).collect::<Vec<_>>(),
        "red": red,
        "blue": blue,
        "square_positions": m.square_positions().iter().map(|z| z.label()).collect::<Vec<_>>(),
    });
    Ok(Output { text, json })
}

fn lift_error(e: LiftError) -> Failure {
    match e {
        LiftError::Graph(g) => Failure::input(g),
        LiftError::NotComposable { .. } => Failure::input(e),
        LiftError::NotCovered(_) => Failure::finding("NotCovered", e),
        LiftError::Conflict { .. } => Failure::finding("Conflict", e),
        LiftError::Undetermined { .. } => Failure::finding("Undetermined", e),
        LiftError::ShapeMismatch { .. } => Failure::input(e),
        LiftError::Model(_) => Failure::input(e),
    }
}

fn category_error(e: CategoryError) -> Failure {
    match e {
        CategoryError::Incomplete(report) => Failure::Finding {
            text: report.render(),
            json: json!({ "error": "Incomplete", "report": *report }),
        },
        CategoryError::Lift(l) => lift_error(l),
        CategoryError::Morphism(m) => Failure::finding("Morphism", m),
        other => Failure::input(other),
    }
}

fn path_json(g: &ColouredGraph, p: &Path) -> Value {
    let edges: Vec<&str> = p.edges().iter().map(|&e| g.edge_name(e)).collect();
    json!({ "path": g.display_path(p), "edges": edges, "length": p.len() })
}

fn with_fixture<D: CliDegree>(cmd: Command, fx: Fixture) -> Outcome {
    let g = &fx.graph;
    let collection = || -> Result<Collection, Failure> { fx.collection().map_err(Failure::input) };
    let parse_path = |p: &str| g.parse_path(p).map_err(Failure::input);
    let context = || -> Result<LambdaContext, Failure> {
        LambdaContext::new(fx.graph.clone(), collection()?).map_err(category_error)
    };
    match cmd {
        Command::Lift {
            path, oracle, dot, ..
        } => {
            let c = collection()?;
            let x = parse_path(&path)?;
            let lam: Morphism<D> = lift_path(g, &c, &x).map_err(lift_error)?;
            let mut text = if dot {
                morphism_to_dot(g, &lam)
            } else {
                lam.render(g)
            };
            let mut json = lam.to_json(g);
            if oracle {
                let all = enumerate_morphisms_with(g, &c, lam.degree(), EnumerateLimits::default())
                    .map_err(Failure::input)?;
                let traversed: Vec<&Morphism<D>> =
                    all.iter().filter(|m| m.check_traverses(g, &x)).collect();
                if traversed.len() != 1 || *traversed[0] != lam {
                    return Err(Failure::finding(
                        "OracleMismatch",
                        format!(
                            "enumeration found {} morphisms of degree {} traversed by {}; lift disagrees",
                            traversed.len(),
                            lam.degree(),
                            g.display_path(&x)
                        ),
                    ));
                }
                if !dot {
                    text.push_str(&format!(
                        "oracle: agrees ({} morphisms of this degree)\n",
                        all.len()
                    ));
                }
                json["oracle"] = json!({ "agrees": true, "morphisms_of_degree": all.len() });
            }
            Ok(Output { text, json })
        }
        Command::Compose { lhs, rhs, .. } => {
            let ctx = context()?;
            let mu: Morphism<D> = ctx.lift(&parse_path(&lhs)?).map_err(category_error)?;
            let nu: Morphism<D> = ctx.lift(&parse_path(&rhs)?).map_err(category_error)?;
            let prod = ctx.compose(&mu, &nu).map_err(category_error)?;
            let t = prod.shortest_traversal().map_err(Failure::input)?;
            Ok(Output {
                text: format!(
                    "shortest traversal: {}\n{}",
                    g.display_path(&t),
                    prod.render(g)
                ),
                json: json!({
                    "lhs": mu.degree().to_string(),
                    "rhs": nu.degree().to_string(),
                    "shortest_traversal": path_json(g, &t),
                    "composite": prod.to_json(g),
                }),
            })
        }
        Command::Factorize { path, at, .. } => {
            let ctx = context()?;
            let lam: Morphism<D> = ctx.lift(&parse_path(&path)?).map_err(category_error)?;
            let w1 = D::parse_arg(&at).map_err(Failure::Input)?;
            let (mu, nu) = ctx.factorize_at(&lam, &w1).map_err(category_error)?;
            Ok(Output {
                text: format!(
                    "{} = {} · {}\nfirst factor:\n{}second factor:\n{}",
                    lam.degree(),
                    mu.degree(),
                    nu.degree(),
                    mu.render(g),
                    nu.render(g)
                ),
                json: json!({
                    "degree": lam.degree().to_string(),
                    "at": mu.degree().to_string(),
                    "rest": nu.degree().to_string(),
                    "first": mu.to_json(g),
                    "second": nu.to_json(g),
                }),
            })
        }
        Command::Traversals {
            path,
            shortest,
            longest,
            ..
        } => {
            let c = collection()?;
            let lam: Morphism<D> = lift_path(g, &c, &parse_path(&path)?).map_err(lift_error)?;
            let mut text = format!("degree {}\n", lam.degree());
            let mut json = json!({ "degree": lam.degree().to_string() });
            let mut show = |name: &str, p: Path| {
                text.push_str(&format!(
                    "{name}: {} (length {}, degree {})\n",
                    g.display_path(&p),
                    p.len(),
                    p.degree::<D>(g)
                ));
                let mut v = path_json(g, &p);
                v["degree"] = json!(p.degree::<D>(g).to_string());
                json[name] = v;
            };
            if !longest {
                show(
                    "shortest",
                    lam.shortest_traversal().map_err(Failure::input)?,
                );
            }
            if !shortest {
                show("longest", lam.longest_traversal().map_err(Failure::input)?);
            }
            Ok(Output { text, json })
        }
        Command::Enumerate { degree, limit, .. } => {
            let c = collection()?;
            let w = D::parse_arg(&degree).map_err(Failure::Input)?;
            let limits = EnumerateLimits {
                results: limit,
                ..EnumerateLimits::default()
            };
            let all = enumerate_morphisms_with(g, &c, &w, limits).map_err(Failure::input)?;
            let mut text = format!("{} morphisms of degree {w}\n", all.len());
            for m in &all {
                let t = m.shortest_traversal().map_err(Failure::input)?;
                text.push_str(&format!(
                    "  {} (r = {}, s = {})\n",
                    g.display_path(&t),
                    g.vertex_name(m.range()),
                    g.vertex_name(m.source())
                ));
            }
            Ok(Output {
                text,
                json: json!({
                    "degree": w.to_string(),
                    "count": all.len(),
                    "morphisms": all.iter().map(|m| m.to_json(g)).collect::<Vec<_>>(),
                }),
            })
        }
        Command::Verify { max_len, laws, .. } => {
            let ctx = context()?;
            let mut report = VerificationReport::new(max_len, 0);
            for law in [Law::Category, Law::Functor, Law::Factorization] {
                if !laws.contains(&law) {
                    continue;
                }
                let part = match law {
                    Law::Category => ctx.verify_category::<D>(max_len),
                    Law::Functor => ctx.verify_functor::<D>(max_len),
                    Law::Factorization => ctx.verify_factorization::<D>(max_len),
                }
                .map_err(category_error)?;
                report = report.merge(part);
            }
            let out = Output {
                text: report.to_string(),
                json: serde_json::to_value(&report).expect("report serializes"),
            };
            if report.passed {
                Ok(out)
            } else {
                Err(Failure::Finding {
                    text: out.text,
                    json: out.json,
                })
            }
        }
        Command::Check { .. } | Command::Word { .. } | Command::Model { .. } => unreachable!(),
    }
}
