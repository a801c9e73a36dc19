use std::io::{self, BufWriter, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tubelat::cycle_lattice::{
    cached_graph, cut, fiber, join_cycle, join_path, leq_cycle, leq_path, lift, meet_cycle,
    meet_path, sew, ShuffleWord,
};
use tubelat::forcing::forcing_system;
use tubelat::irreducibles::{canonical_ji, kappa};
use tubelat::json::{gtree_from_json, gtree_to_json, parse, read_tubing, tubing_to_json};
use tubelat::poset::build_poset;
use tubelat::tubing::enumerate_with_cap;
use tubelat::verify::{self, Suite};
use tubelat::{gtree_of, tubing_of, Error, Graph, GraphKind, TreeKind, Tubing};

#[derive(Parser)]
#[command(name = "tubelat", about = "Maximal tubings of paths and cycles as lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Path,
    Cycle,
    Complete,
}

impl Kind {
    fn graph_kind(self) -> GraphKind {
        match self {
            Kind::Path => GraphKind::Path,
            Kind::Cycle => GraphKind::Cycle,
            Kind::Complete => GraphKind::Complete,
        }
    }

    /// Largest size enumerated without `--force`.
    fn cap(self) -> usize {
        match self {
            Kind::Path => 12,
            Kind::Cycle => 9,
            Kind::Complete => 8,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Count,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum TreeFormat {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// List every maximal tubing, breadth first from the minimum.
    Enumerate {
        #[arg(long, value_enum)]
        graph: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        force: bool,
    },
    /// Compare two tubings of the same path or cycle.
    Order {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    Join {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    Meet {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Image of a cycle tubing in the path lattice.
    Cut {
        #[arg(long)]
        input: String,
    },
    /// Cycle tubing over a path tubing selected by a shuffle of its zippers.
    Sew {
        #[arg(long)]
        base: String,
        #[arg(long)]
        word: String,
    },
    /// Every cycle tubing cutting to the base, one JSON line each.
    Fiber {
        #[arg(long)]
        base: String,
    },
    /// Least element over `x` that lies above `j`.
    Lift {
        #[arg(long)]
        j: String,
        #[arg(long)]
        x: String,
    },
    /// Convert a tubing to its G-tree or a G-tree to its tubing.
    Gtree {
        #[arg(long)]
        input: String,
        /// Graph for trees whose document has no "kind".
        #[arg(long, value_enum, default_value = "cycle")]
        graph: Kind,
        #[arg(long, value_enum, default_value = "json")]
        format: TreeFormat,
    },
    /// The tree of the join irreducible J(i,k) of C_n.
    Ji {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        k: usize,
        /// Emit the tubing instead of the tree.
        #[arg(long)]
        tubing: bool,
    },
    Kappa {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        k: usize,
    },
    /// Factorization relations and direct forcing on the join irreducibles of C_n.
    Forcing {
        #[arg(long)]
        n: usize,
    },
    /// Hasse diagram in DOT.
    Hasse {
        #[arg(long, value_enum)]
        graph: Kind,
        #[arg(long)]
        n: usize,
        /// Label nodes by tubing instead of index.
        #[arg(long)]
        labels: bool,
        #[arg(long)]
        force: bool,
    },
    /// Möbius matrix as CSV.
    Mobius {
        #[arg(long, value_enum)]
        graph: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        force: bool,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        selector: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        force: bool,
    },
}

enum Failure {
    Usage(String),
    Cap(String),
    Violation(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SizeCap(m) => Failure::Cap(m),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Out<'a> = &'a mut dyn Write;

fn read_text(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))
}

fn read(path: &str, default: GraphKind) -> Result<Tubing, Failure> {
    Ok(read_tubing(&parse(&read_text(path)?)?, default)?)
}

fn read_pair(a: &str, b: &str) -> Result<(Tubing, Tubing), Failure> {
    let x = read(a, GraphKind::Cycle)?;
    let y = read(b, GraphKind::Cycle)?;
    if x.graph() != y.graph() {
        return Err(Failure::Usage(format!(
            "tubings live on different graphs ({} {} vs {} {})",
            x.graph().kind(),
            x.n(),
            y.graph().kind(),
            y.n()
        )));
    }
    Ok((x, y))
}

fn capped(kind: Kind, n: usize, limit: usize, force: bool) -> Result<Graph, Failure> {
    if n > limit && !force {
        return Err(Failure::Cap(format!(
            "n = {n} exceeds the limit {limit} for this graph; pass --force to override"
        )));
    }
    Ok(Graph::new(kind.graph_kind(), n)?)
}

fn line(out: Out, v: &Value) -> Result<(), Failure> {
    writeln!(out, "{v}")?;
    Ok(())
}

fn binary(a: &str, b: &str, join: bool) -> Result<Tubing, Failure> {
    let (x, y) = read_pair(a, b)?;
    let r = match (x.graph().kind(), join) {
        (GraphKind::Cycle, true) => join_cycle(&x, &y)?,
        (GraphKind::Cycle, false) => meet_cycle(&x, &y)?,
        (GraphKind::Path, true) => join_path(&x, &y)?,
        (GraphKind::Path, false) => meet_path(&x, &y)?,
        (k, _) => return Err(Failure::Usage(format!("joins are only available for paths and cycles, not {k}"))),
    };
    Ok(r)
}

fn run(cmd: Command, out: Out) -> Result<(), Failure> {
    match cmd {
        Command::Enumerate {
            graph,
            n,
            format,
            force,
        } => {
            let g = capped(graph, n, graph.cap(), force)?;
            let all = enumerate_with_cap(&g, usize::MAX)?;
            match format {
                Format::Count => writeln!(out, "{}", all.len())?,
                Format::Json => {
                    for t in &all {
                        line(out, &tubing_to_json(t))?;
                    }
                }
                Format::Text => {
                    for t in &all {
                        writeln!(out, "{t}")?;
                    }
                }
            }
        }
        Command::Order { a, b } => {
            let (x, y) = read_pair(&a, &b)?;
            let le = |p: &Tubing, q: &Tubing| -> Result<bool, Failure> {
                Ok(match p.graph().kind() {
                    GraphKind::Cycle => leq_cycle(p, q)?,
                    GraphKind::Path => leq_path(p, q)?,
                    k => return Err(Failure::Usage(format!("no order test for {k} graphs"))),
                })
            };
            line(out, &json!({"leq": le(&x, &y)?, "geq": le(&y, &x)?}))?;
        }
        Command::Join { a, b } => line(out, &tubing_to_json(&binary(&a, &b, true)?))?,
        Command::Meet { a, b } => line(out, &tubing_to_json(&binary(&a, &b, false)?))?,
        Command::Cut { input } => {
            line(out, &tubing_to_json(&cut(&read(&input, GraphKind::Cycle)?)?))?;
        }
        Command::Sew { base, word } => {
            let x = read(&base, GraphKind::Path)?;
            line(out, &tubing_to_json(&sew(&x, &ShuffleWord::parse(&word)?)?))?;
        }
        Command::Fiber { base } => {
            for (w, t) in fiber(&read(&base, GraphKind::Path)?)? {
                line(out, &json!({"word": w.to_string(), "tubing": tubing_to_json(&t)}))?;
            }
        }
        Command::Lift { j, x } => {
            let j = read(&j, GraphKind::Cycle)?;
            let x = read(&x, GraphKind::Path)?;
            line(out, &tubing_to_json(&lift(&j, &x)?))?;
        }
        Command::Gtree {
            input,
            graph,
            format,
        } => {
            let v = parse(&read_text(&input)?)?;
            let (tree, tubing) = if v.get("tubes").is_some() {
                let t = read_tubing(&v, graph.graph_kind())?;
                (gtree_of(&t), None)
            } else {
                let g = gtree_from_json(&v, TreeKind::of_graph(graph.graph_kind()))?;
                let kind = match g.kind() {
                    TreeKind::Path => GraphKind::Path,
                    TreeKind::Cycle => GraphKind::Cycle,
                    TreeKind::General => graph.graph_kind(),
                };
                let graph = match kind {
                    GraphKind::Path | GraphKind::Cycle => cached_graph(kind, g.n())?,
                    _ => std::sync::Arc::new(Graph::new(kind, g.n())?),
                };
                let t = tubing_of(&graph, &g)?;
                (g, Some(t))
            };
            match (format, tubing) {
                (TreeFormat::Dot, _) => write!(out, "{}", tree.to_dot())?,
                (TreeFormat::Json, Some(t)) => line(out, &tubing_to_json(&t))?,
                (TreeFormat::Json, None) => line(out, &gtree_to_json(&tree))?,
            }
        }
        Command::Ji { n, i, k, tubing } => {
            let g = canonical_ji(n, i, k)?;
            if tubing {
                line(out, &tubing_to_json(&tubing_of(&cached_graph(GraphKind::Cycle, n)?, &g)?))?;
            } else {
                line(out, &gtree_to_json(&g))?;
            }
        }
        Command::Kappa { n, i, k } => {
            let m = kappa(n, i, k)?;
            line(out, &json!({"i": m.i, "k": m.k}))?;
        }
        Command::Forcing { n } => line(out, &forcing_system(n)?.to_json())?,
        Command::Hasse {
            graph,
            n,
            labels,
            force,
        } => {
            let g = capped(graph, n, graph.cap().min(8), force)?;
            write!(out, "{}", build_poset(&g)?.poset.to_dot(labels))?;
        }
        Command::Mobius { graph, n, force } => {
            let g = capped(graph, n, 7, force)?;
            write!(out, "{}", build_poset(&g)?.poset.mobius_csv())?;
        }
        Command::Verify { selector, n, force } => {
            let suite: Suite = selector.parse()?;
            match verify::run(suite, n, force)? {
                Ok(report) => line(out, &serde_json::to_value(report).expect("serializable"))?,
                Err(v) => {
                    return Err(Failure::Violation(serde_json::to_value(v).expect("serializable")))
                }
            }
        }
    }
    Ok(())
}

fn configure_threads() {
    if let Some(t) = std::env::var("TUBELAT_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&t| t > 0)
    {
        // a second initialization only happens in tests; ignore it
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let res = run(cli.command, &mut out);
    let flushed = out.flush();
    match res {
        Ok(()) if flushed.is_ok() => ExitCode::SUCCESS,
        Ok(()) => ExitCode::from(2),
        Err(Failure::Violation(v)) => {
            eprintln!("{v}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
