//! Command-line front end. [`run`] takes the argument vector and returns the exit
//! code together with everything written to stdout and stderr, so it can be
//! tested without spawning a process.
//!
//! Exit codes: 0 for success (and `true`), 1 for a `false` answer, 2 for usage,
//! parse and validation errors.

use std::fmt::Write as _;
use std::io::Read as _;

use clap::{Parser, Subcommand};

use crate::boehm::{bt_graph, bt_truncate, gen_s, gen_u, BtBudget, BtGraph};
use crate::coalgebra::{
    c_construct, gen_pair, gen_rsigma, instantiate, parse_coalgebra, parse_element,
    print_coalgebra, rsigma_count, size_bound, CarrierMode,
};
use crate::graph::{alpha_bisim, graph_of, subtree_count, TermGraph};
use crate::subst::subst_rational;
use crate::syntax::{parse_term_with, print_finite, print_term, Interner, MuTerm};
use crate::term::FiniteTerm;

#[derive(Parser, Debug)]
#[command(
    name = "ratlam",
    version,
    about = "Rational lambda-trees modulo alpha-equivalence"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a term from a file (or `-` for stdin) and print it back.
    Parse { file: String },
    /// Print the term graph of a term, one node per line.
    Print { term: String },
    /// Cut the tree of a term at depth N; deeper subtrees become `_|_`.
    Truncate {
        #[arg(short)]
        d: usize,
        term: String,
    },
    /// Decide α-equivalence of two (possibly infinite) terms.
    AlphaEq { left: String, right: String },
    /// Count the distinct subtrees of a term.
    Subtrees { term: String },
    /// Substitute the third argument for atom V in the second.
    Subst {
        #[arg(short)]
        v: String,
        term: String,
        with: String,
    },
    /// Böhm-tree prefix of a finite term.
    Bt {
        #[arg(short, default_value_t = 8)]
        d: usize,
        #[arg(short, default_value_t = 1000)]
        f: usize,
        term: String,
    },
    /// The whole Böhm tree of a finite term as a μ-term, or `unknown`.
    BtGraph {
        #[arg(short, default_value_t = 64)]
        s: usize,
        #[arg(short, default_value_t = 1000)]
        f: usize,
        term: String,
    },
    /// Build the term graph of an orbit-finite coalgebra from a root element.
    CConstruct {
        coalgebra: String,
        root: String,
        /// Keep only the elements reachable from the root.
        #[arg(long)]
        reachable: bool,
    },
    /// Emit a built-in example: pair, rsigma:<l>, u or s.
    Examples { name: String },
    /// Compare the subtree count of the rsigma example with its closed form.
    Bench { family: String, ell: u32 },
}

struct Failure {
    code: i32,
    msg: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure {
            code: 2,
            msg: msg.into(),
        }
    }
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::usage(e.to_string())
    }
}

/// Runs one command. `argv[0]` is the program name.
pub fn run<I, S>(argv: I) -> (i32, String, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    (0, text, String::new())
                }
                _ => (2, String::new(), text),
            };
        }
    };
    let mut out = String::new();
    match dispatch(cli.command, &mut out) {
        Ok(code) => (code, out, String::new()),
        Err(f) => (f.code, out, format!("error: {}\n", f.msg)),
    }
}

fn parse_all(sources: &[&str]) -> Result<(Vec<MuTerm>, Interner), Failure> {
    let mut names = Interner::for_sources(sources.iter().copied());
    let terms = sources
        .iter()
        .map(|s| parse_term_with(s, &mut names))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((terms, names))
}

fn parse_one(src: &str) -> Result<(TermGraph, Interner), Failure> {
    let (mut ts, names) = parse_all(&[src])?;
    Ok((graph_of(&ts.remove(0)), names))
}

fn finite(src: &str) -> Result<(FiniteTerm, Interner), Failure> {
    let (mut ts, names) = parse_all(&[src])?;
    let t = ts
        .remove(0)
        .to_finite()
        .ok_or_else(|| Failure::usage("this command needs a finite term (no mu)"))?;
    Ok((t, names))
}

fn read_input(file: &str) -> Result<String, Failure> {
    let mut text = String::new();
    if file == "-" {
        std::io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(file).map_err(|e| Failure::usage(format!("{file}: {e}")))?;
    }
    Ok(text)
}

fn dispatch(cmd: Command, out: &mut String) -> Result<i32, Failure> {
    match cmd {
        Command::Parse { file } => {
            let text = read_input(&file)?;
            let (ts, names) = parse_all(&[&text])?;
            writeln!(out, "{}", print_term(&ts[0], &names)).unwrap();
        }
        Command::Print { term } => {
            let (g, names) = parse_one(&term)?;
            out.push_str(&g.node_listing(&names));
        }
        Command::Truncate { d, term } => {
            let (g, names) = parse_one(&term)?;
            writeln!(out, "{}", print_finite(&g.truncate(d), &names)).unwrap();
        }
        Command::AlphaEq { left, right } => {
            let (ts, _) = parse_all(&[&left, &right])?;
            let eq = alpha_bisim(&graph_of(&ts[0]), &graph_of(&ts[1]));
            writeln!(out, "{eq}").unwrap();
            return Ok(if eq { 0 } else { 1 });
        }
        Command::Subtrees { term } => {
            let (g, _) = parse_one(&term)?;
            writeln!(out, "{}", subtree_count(&g)).unwrap();
        }
        Command::Subst { v, term, with } => {
            let (ts, mut names) = parse_all(&[&term, &with, &v])?;
            let atom = match &ts[2] {
                MuTerm::Var(a) => *a,
                _ => return Err(Failure::usage(format!("`{v}` is not an atom"))),
            };
            names.intern(&v);
            let g = subst_rational(&graph_of(&ts[0]), atom, &graph_of(&ts[1]));
            writeln!(out, "{}", print_term(&g.minimize().to_mu_term(), &names)).unwrap();
        }
        Command::Bt { d, f, term } => {
            let (t, names) = finite(&term)?;
            let b = BtBudget {
                fuel: f,
                depth: d,
                ..BtBudget::default()
            };
            writeln!(out, "{}", print_finite(&bt_truncate(&t, b), &names)).unwrap();
        }
        Command::BtGraph { s, f, term } => {
            let (t, names) = finite(&term)?;
            let b = BtBudget {
                fuel: f,
                states: s,
                ..BtBudget::default()
            };
            match bt_graph(&t, b) {
                BtGraph::Rational(g) => {
                    writeln!(out, "{}", print_term(&g.minimize().to_mu_term(), &names)).unwrap()
                }
                BtGraph::Unknown => writeln!(out, "unknown").unwrap(),
            }
        }
        Command::CConstruct {
            coalgebra,
            root,
            reachable,
        } => {
            let text = read_input(&coalgebra)?;
            let c = parse_coalgebra(&text)?;
            let root = parse_element(&root, c.carrier())?;
            let mode = if reachable {
                CarrierMode::Reachable
            } else {
                CarrierMode::Enumerate
            };
            let g = c_construct(&instantiate(&c), &root, mode)?;
            let names = Interner::new();
            writeln!(out, "{}", print_term(&g.to_mu_term(), &names)).unwrap();
            writeln!(out, "nodes: {}", g.len()).unwrap();
            writeln!(
                out,
                "bound: {}",
                size_bound(c.orbit_count(), c.carrier().max_arity())
            )
            .unwrap();
        }
        Command::Examples { name } => examples(&name, out)?,
        Command::Bench { family, ell } => {
            if family != "rsigma" {
                return Err(Failure::usage(format!("unknown benchmark `{family}`")));
            }
            if !(1..=4).contains(&ell) {
                return Err(Failure::usage("ell must be between 1 and 4"));
            }
            let got = subtree_count(&gen_rsigma(ell)) as u128;
            let want = rsigma_count(ell);
            let verdict = if got == want { "ok" } else { "MISMATCH" };
            writeln!(out, "{got} {want} {verdict}").unwrap();
            return Ok(if got == want { 0 } else { 1 });
        }
    }
    Ok(0)
}

fn examples(name: &str, out: &mut String) -> Result<(), Failure> {
    let names = Interner::new();
    match name {
        "pair" => {
            let (c, root) = gen_pair();
            out.push_str(&print_coalgebra(&c));
            writeln!(out, "# root: {root}").unwrap();
        }
        "u" => writeln!(out, "{}", print_finite(&gen_u(), &names)).unwrap(),
        "s" => writeln!(out, "{}", print_finite(&gen_s(), &names)).unwrap(),
        _ => {
            let ell = name
                .strip_prefix("rsigma:")
                .and_then(|l| l.parse::<u32>().ok())
                .filter(|l| (1..=4).contains(l))
                .ok_or_else(|| {
                    Failure::usage(format!(
                        "unknown example `{name}` (pair, rsigma:<1-4>, u, s)"
                    ))
                })?;
            out.push_str(&gen_rsigma(ell).node_listing(&names));
        }
    }
    Ok(())
}
