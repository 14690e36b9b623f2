//! Rational λ-trees modulo α-equivalence, represented as finite coalgebras over
//! nominal sets.
//!
//! The crate is organised bottom-up:
//!
//! - [`nominal`]: atoms, finite permutations, support and freshness, abstraction equality.
//! - [`orbit`]: finite presentations of orbit-finite nominal sets.
//! - [`term`], [`syntax`], [`graph`]: finite λ⊥-terms, the μ-term syntax, and term
//!   graphs with truncation, α-equivalence and subtree counting.
//! - [`coalgebra`]: orbit-finite coalgebras for `V + [V]X + X×X`, the bounded-name
//!   construction that turns them into finite term graphs, and conversions back.
//! - [`subst`]: capture-avoiding substitution on finite terms and corecursive
//!   substitution on rational trees.
//! - [`boehm`]: head reduction and Böhm trees, with rationality detection.
//! - [`cli`]: the command-line front end used by the `ratlam` binary.

pub mod boehm;
pub mod cli;
pub mod coalgebra;
pub mod error;
pub mod graph;
pub mod nominal;
pub mod orbit;
pub mod subst;
pub mod syntax;
pub mod term;

pub use error::{CoalgebraError, OrbitError, ParseError};
pub use graph::{alpha_bisim, graph_of, subtree_count, Node, NodeId, TermGraph};
pub use nominal::{abstraction_eq, is_fresh, Atom, AtomSet, Nominal, Perm};
pub use syntax::{parse_term, print_term, Interner, MuTerm};
pub use term::{alpha_eq_finite, AlphaTerm, FiniteTerm};
