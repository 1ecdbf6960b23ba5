//! Command-line front end. `run` returns the process exit code:
//! 0 success, 1 validation or classification failure, 2 input error,
//! 3 budget exhausted.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::error::Error;
use crate::explore::{explore_with_threads, ExploreLimits};
use crate::families::{
    brick_wall, gale_robinson, gale_robinson_step, linear_seed, wiring_seed, LinearGraph, WiringDiagram,
};
use crate::matrix::{cross_check_cluster, from_exchange_matrix, ExchangeMatrix};
use crate::mutation::{mutate_with, Limits};
use crate::poly::IrredBudget;
use crate::rank2::rank2_classify;
use crate::seed::{denominator_vector, Seed};
use crate::seedfile::{parse_seed, write_seed};

#[derive(Parser, Debug)]
#[command(name = "lpalg", version, about = "Seeds, mutation and exchange graphs of Laurent phenomenon algebras")]
struct Cli {
    /// Irreducibility checking: off, heuristic or strict.
    #[arg(long, global = true, default_value = "heuristic")]
    irred: IrredBudget,
    /// Worker threads for exploration (0 picks the number of cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[arg(long, global = true, default_value_t = Limits::default().max_terms, value_parser = clap::value_parser!(usize))]
    max_terms: usize,
    #[arg(long, global = true, default_value_t = Limits::default().max_degree)]
    max_degree: i64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the seed conditions.
    Validate { seed: PathBuf },
    /// Print the exchange Laurent polynomials.
    Hat { seed: PathBuf },
    /// Mutate along cluster names or 1-based slots.
    Mutate {
        seed: PathBuf,
        #[arg(required = true)]
        path: Vec<String>,
    },
    /// Breadth-first exploration of the exchange graph.
    Explore {
        seed: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        max_seeds: usize,
        #[arg(long)]
        max_depth: Option<usize>,
        /// Write the exchange graph in Graphviz format.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Label DOT vertices by short hashes.
        #[arg(long)]
        short_labels: bool,
        /// Write seeds, variables, edges and facets as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Print every seed.
        #[arg(long)]
        list: bool,
    },
    /// Write the variables reached along a path over the initial cluster.
    Laurent {
        seed: PathBuf,
        /// Comma-separated names or 1-based slots.
        #[arg(long, default_value = "")]
        path: String,
    },
    /// Classify a rank-two seed.
    Classify2 { seed: PathBuf },
    /// Build a seed from an exchange matrix file.
    ImportMatrix {
        file: PathBuf,
        /// Compare with matrix mutation on all paths up to this length.
        #[arg(long)]
        cross_check: Option<usize>,
    },
    /// Print a built-in seed family.
    Example {
        #[command(subcommand)]
        family: Family,
    },
}

#[derive(Subcommand, Debug)]
enum Family {
    /// Six-term Gale–Robinson seed; `--terms N` prints y7..yN.
    GaleRobinson {
        #[arg(long)]
        terms: Option<usize>,
    },
    BrickWall,
    /// Linear seed of a graph file with lines `i -> j`.
    Linear { graph: PathBuf },
    /// Seed of a wiring diagram region file.
    Wiring { file: PathBuf },
}

struct Ctx {
    budget: IrredBudget,
    threads: usize,
    limits: Limits,
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_seed(path: &Path, ctx: &Ctx) -> Result<Seed, Error> {
    parse_seed(&read(path)?, ctx.budget)
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::UnknownSymbol(_) | Error::Io(_) => 2,
        Error::Budget(_) => 3,
        _ => 1,
    }
}

/// Runs the command line `argv` (including the program name).
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let ctx = Ctx {
        budget: cli.irred,
        threads: cli.threads,
        limits: Limits { max_terms: cli.max_terms, max_degree: cli.max_degree },
    };
    match dispatch(cli.command, &ctx, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn resolve_path(s: &Seed, item: &str) -> Result<usize, Error> {
    s.slot(item.trim())
}

fn dispatch(cmd: Command, ctx: &Ctx, out: &mut dyn Write) -> Result<i32, Error> {
    let w = |e: std::io::Error| Error::Io(format!("write failed: {e}"));
    match cmd {
        Command::Validate { seed } => {
            let text = read(&seed)?;
            let (ring, polys) = crate::seedfile::parse_seed_parts(&text)?;
            let violations = crate::seed::validate_polys(&ring, &polys, ctx.budget);
            if violations.is_empty() {
                writeln!(out, "ok").map_err(w)?;
                return Ok(0);
            }
            for v in &violations {
                writeln!(out, "{}", v.describe(&ring)).map_err(w)?;
            }
            Ok(1)
        }
        Command::Hat { seed } => {
            let s = load_seed(&seed, ctx)?;
            for i in 0..s.rank() {
                writeln!(out, "{} : {}", s.names()[i], s.hat(i).value.display(s.ring())).map_err(w)?;
            }
            Ok(0)
        }
        Command::Mutate { seed, path } => {
            let mut s = load_seed(&seed, ctx)?;
            for item in &path {
                let i = resolve_path(&s, item)?;
                s = mutate_with(&s, i, &ctx.limits)?.0;
            }
            writeln!(out, "{}", s.display()).map_err(w)?;
            for i in 0..s.rank() {
                writeln!(out, "{} = {}", s.names()[i], s.var(i).display(s.root())).map_err(w)?;
            }
            Ok(0)
        }
        Command::Explore { seed, max_seeds, max_depth, dot, short_labels, json, list } => {
            let s = load_seed(&seed, ctx)?;
            let limits = ExploreLimits { max_seeds, max_depth, mutation: ctx.limits };
            let g = explore_with_threads(&s, &limits, ctx.threads)?;
            writeln!(out, "{}", g.summary()).map_err(w)?;
            if list {
                for v in g.vertices() {
                    writeln!(out, "{}", v.seed.display()).map_err(w)?;
                }
            }
            if let Some(p) = dot {
                std::fs::write(&p, g.to_dot(short_labels)).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            }
            if let Some(p) = json {
                let text = serde_json::to_string_pretty(&g.to_json()).expect("json");
                std::fs::write(&p, text + "\n").map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            }
            Ok(if g.truncations().iter().any(|t| matches!(t, crate::explore::Truncation::Budget(_))) { 3 } else { 0 })
        }
        Command::Laurent { seed, path } => {
            let start = load_seed(&seed, ctx)?;
            let mut s = start.clone();
            for item in path.split(',').filter(|x| !x.trim().is_empty()) {
                let i = resolve_path(&s, item)?;
                s = mutate_with(&s, i, &ctx.limits)?.0;
            }
            let mut ok = true;
            for i in 0..s.rank() {
                let v = s.var(i);
                match denominator_vector(v, s.root()) {
                    Ok(d) => {
                        let d: Vec<String> = d.iter().map(i32::to_string).collect();
                        writeln!(out, "{} = {}  laurent  d = ({})", s.names()[i], v.display(s.root()), d.join(", "))
                            .map_err(w)?;
                    }
                    Err(_) => {
                        ok = false;
                        writeln!(out, "{} = {}  NOT laurent", s.names()[i], v.display(s.root())).map_err(w)?;
                    }
                }
            }
            Ok(if ok { 0 } else { 1 })
        }
        Command::Classify2 { seed } => {
            let s = load_seed(&seed, ctx)?;
            let r = rank2_classify(&s)?;
            match r.shape.seed_count() {
                Some(k) => {
                    let found = r.graph.as_ref().map_or(0, |g| g.len());
                    let status = if r.verified() { "closed" } else { "MISMATCH" };
                    writeln!(out, "(b, c) = ({}, {}): {}, {k} seeds, found {found} ({status})", r.b, r.c, r.shape)
                        .map_err(w)?;
                    Ok(if r.verified() { 0 } else { 1 })
                }
                None => {
                    writeln!(out, "(b, c) = ({}, {}): {}", r.b, r.c, r.shape).map_err(w)?;
                    Ok(0)
                }
            }
        }
        Command::ImportMatrix { file, cross_check } => {
            let b = ExchangeMatrix::parse(&read(&file)?)?;
            let s = from_exchange_matrix(&b, b.default_ring())?;
            write!(out, "{}", write_seed(&s)).map_err(w)?;
            if let Some(len) = cross_check {
                let n = b.cols();
                let mut checked = 0;
                let mut paths: Vec<Vec<usize>> = vec![vec![]];
                for _ in 0..len {
                    let mut next = Vec::new();
                    for p in &paths {
                        for i in 0..n {
                            if p.last() != Some(&i) {
                                let mut q = p.clone();
                                q.push(i);
                                next.push(q);
                            }
                        }
                    }
                    for p in &next {
                        let r = cross_check_cluster(&b, b.default_ring(), p)?;
                        if let Some(m) = r.mismatch {
                            writeln!(out, "# mismatch on path {p:?}: {m}").map_err(w)?;
                            return Ok(1);
                        }
                        checked += 1;
                    }
                    paths = next;
                }
                writeln!(out, "# cross-check: {checked} paths agree").map_err(w)?;
            }
            Ok(0)
        }
        Command::Example { family } => {
            let s = match family {
                Family::GaleRobinson { terms: Some(last) } => {
                    let mut s = gale_robinson();
                    let root = s.root().clone();
                    for k in 7..=last {
                        s = gale_robinson_step(&s, k, &ctx.limits)?;
                        let v = s.var(s.rank() - 1);
                        let laurent = if v.is_laurent(&root) { "laurent" } else { "NOT laurent" };
                        writeln!(out, "y{k}: {} terms over {}, {laurent}", v.num().len(), v.den().display(&root))
                            .map_err(w)?;
                    }
                    return Ok(0);
                }
                Family::GaleRobinson { terms: None } => gale_robinson(),
                Family::BrickWall => brick_wall(),
                Family::Linear { graph } => linear_seed(&LinearGraph::parse(&read(&graph)?)?)?,
                Family::Wiring { file } => wiring_seed(&WiringDiagram::parse(&read(&file)?)?)?,
            };
            write!(out, "{}", write_seed(&s)).map_err(w)?;
            Ok(0)
        }
    }
}
