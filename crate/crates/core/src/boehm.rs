//! Head reduction, Böhm-tree prefixes, and detection of rational Böhm trees.
//!
//! Böhm trees are not computable, so every operation here takes a budget: `fuel`
//! bounds the head-reduction steps spent on one node, `depth` bounds the size of
//! a prefix, and `states` bounds the number of distinct states [`bt_graph`] may
//! discover before giving up.

use std::cell::Cell;

use crate::coalgebra::{construct_bounded_states, unfold, Coalgebra, Step};
use crate::graph::TermGraph;
use crate::nominal::Atom;
use crate::subst::subst_finite;
use crate::term::{AlphaTerm, FiniteTerm};

/// `λx1…λxn. y N1 … Nm`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnfDecomposition {
    pub binders: Vec<Atom>,
    pub head: Atom,
    pub args: Vec<FiniteTerm>,
}

impl HnfDecomposition {
    pub fn to_term(&self) -> FiniteTerm {
        let spine = FiniteTerm::apps(FiniteTerm::var(self.head), self.args.iter().cloned());
        FiniteTerm::lams(&self.binders, spine)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BottomReason {
    /// The fuel ran out before a head-normal form was reached.
    FuelExhausted,
    /// The head of the spine is ⊥.
    BottomHead,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BottomVerdict {
    pub reason: BottomReason,
    pub steps: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HeadResult {
    Hnf(HnfDecomposition),
    Bottom(BottomVerdict),
}

impl HeadResult {
    pub fn hnf(&self) -> Option<&HnfDecomposition> {
        match self {
            HeadResult::Hnf(h) => Some(h),
            HeadResult::Bottom(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BtBudget {
    pub fuel: usize,
    pub depth: usize,
    pub states: usize,
}

impl Default for BtBudget {
    fn default() -> Self {
        BtBudget {
            fuel: 1000,
            depth: 8,
            states: 64,
        }
    }
}

/// Contracts the head redex until the term is in head-normal form or `fuel`
/// β-steps have been spent.
///
/// ⊥ in head position gives [`BottomReason::BottomHead`]; ⊥ elsewhere is an
/// inert constant.
pub fn head_reduce(t: &FiniteTerm, fuel: usize) -> HeadResult {
    let mut cur = t.clone();
    let mut steps = 0;
    loop {
        let mut binders = Vec::new();
        let mut body = &cur;
        while let FiniteTerm::Lam(x, b) = body {
            binders.push(*x);
            body = b;
        }
        let mut args = Vec::new();
        let mut head = body;
        while let FiniteTerm::App(l, r) = head {
            args.push(r.as_ref());
            head = l;
        }
        args.reverse();
        match head {
            FiniteTerm::Var(y) => {
                return HeadResult::Hnf(HnfDecomposition {
                    binders,
                    head: *y,
                    args: args.into_iter().cloned().collect(),
                })
            }
            FiniteTerm::Bottom => {
                return HeadResult::Bottom(BottomVerdict {
                    reason: BottomReason::BottomHead,
                    steps,
                })
            }
            FiniteTerm::Lam(x, b) => {
                debug_assert!(!args.is_empty());
                if steps == fuel {
                    return HeadResult::Bottom(BottomVerdict {
                        reason: BottomReason::FuelExhausted,
                        steps,
                    });
                }
                let reduct = subst_finite(b, *x, args[0]);
                let spine = FiniteTerm::apps(reduct, args[1..].iter().map(|a| (*a).clone()));
                cur = FiniteTerm::lams(&binders, spine);
                steps += 1;
            }
            FiniteTerm::App(..) => unreachable!("spine was fully unwound"),
        }
    }
}

/// The Böhm-tree coalgebra: a state is a term up to α, its step is the first
/// constructor of its Böhm tree.
pub struct BtCoalgebra {
    fuel: usize,
    exhausted: Cell<bool>,
}

impl BtCoalgebra {
    pub fn new(fuel: usize) -> Self {
        BtCoalgebra {
            fuel,
            exhausted: Cell::new(false),
        }
    }

    /// Whether some step so far ran out of fuel.
    pub fn exhausted(&self) -> bool {
        self.exhausted.get()
    }
}

impl Coalgebra for BtCoalgebra {
    type State = AlphaTerm;

    fn step(&self, x: &AlphaTerm) -> Step<AlphaTerm> {
        match head_reduce(x.term(), self.fuel) {
            HeadResult::Bottom(v) => {
                if v.reason == BottomReason::FuelExhausted {
                    self.exhausted.set(true);
                }
                Step::Bottom
            }
            HeadResult::Hnf(mut h) => {
                if !h.binders.is_empty() {
                    let x1 = h.binders.remove(0);
                    return Step::Abs(x1, AlphaTerm::new(&h.to_term()));
                }
                match h.args.pop() {
                    None => Step::Var(h.head),
                    Some(last) => Step::App(AlphaTerm::new(&h.to_term()), AlphaTerm::new(&last)),
                }
            }
        }
    }

    fn support_bound(&self) -> usize {
        usize::MAX
    }
}

/// The Böhm tree of `t` cut at tree depth `b.depth`: the root has depth 0 and
/// every subtree at depth `b.depth` is ⊥. A node whose term has no head-normal
/// form within `b.fuel` steps is ⊥.
pub fn bt_truncate(t: &FiniteTerm, b: BtBudget) -> FiniteTerm {
    let c = BtCoalgebra::new(b.fuel);
    unfold(&c, &AlphaTerm::new(t), b.depth)
}

#[derive(Clone, Debug)]
pub enum BtGraph {
    /// The whole Böhm tree, as a finite graph.
    Rational(TermGraph),
    /// More than `states` distinct states were found, or some head reduction ran
    /// out of fuel.
    Unknown,
}

impl BtGraph {
    pub fn graph(&self) -> Option<&TermGraph> {
        match self {
            BtGraph::Rational(g) => Some(g),
            BtGraph::Unknown => None,
        }
    }
}

/// Unfolds the Böhm tree of `t`, identifying α-equivalent pending terms.
pub fn bt_graph(t: &FiniteTerm, b: BtBudget) -> BtGraph {
    let c = BtCoalgebra::new(b.fuel);
    match construct_bounded_states(&c, &AlphaTerm::new(t), b.states) {
        Some(g) if !c.exhausted() => BtGraph::Rational(g),
        _ => BtGraph::Unknown,
    }
}

fn v(i: usize) -> FiniteTerm {
    FiniteTerm::var(Atom(i))
}

fn lam(i: usize, b: FiniteTerm) -> FiniteTerm {
    FiniteTerm::lam(Atom(i), b)
}

/// `Y_f = (λz.f (z z)) (λz.f (z z))` with `z` chosen fresh for `f`.
pub fn y_of(f: &FiniteTerm) -> FiniteTerm {
    let z = f.free_vars().union(&f.atoms()).least_fresh();
    let half = FiniteTerm::lam(
        z,
        FiniteTerm::app(
            f.clone(),
            FiniteTerm::app(FiniteTerm::var(z), FiniteTerm::var(z)),
        ),
    );
    FiniteTerm::app(half.clone(), half)
}

/// `Y = λg.(λx.g (x x)) (λx.g (x x))` over the atoms `g = v0`, `x = v1`.
pub fn y_combinator() -> FiniteTerm {
    let half = lam(1, FiniteTerm::app(v(0), FiniteTerm::app(v(1), v(1))));
    lam(0, FiniteTerm::app(half.clone(), half))
}

/// `u = Y_{λg.λx.x (g (x y))}` with `x = v0`, `y = v1`, `g = v2`, `z = v3`.
/// Its only free variable is `y`.
pub fn gen_u() -> FiniteTerm {
    let f = lam(
        2,
        lam(
            0,
            FiniteTerm::app(v(0), FiniteTerm::app(v(2), FiniteTerm::app(v(0), v(1)))),
        ),
    );
    y_of(&f)
}

/// `s = Y_{λg.λx.λy.x g y}` with `x = v0`, `y = v1`, `g = v2`, `z = v3`. Closed.
pub fn gen_s() -> FiniteTerm {
    let f = lam(2, lam(0, lam(1, FiniteTerm::apps(v(0), [v(2), v(1)]))));
    y_of(&f)
}
