//! Substitution: the usual capture-avoiding one on finite terms, and a
//! corecursive one on rational trees defined by a coalgebra on
//! `B + A×V×B`.

use crate::coalgebra::{
    c_construct, graph_to_coalgebra, instantiate, CarrierMode, Coalgebra, ConcreteCoalgebra, Step,
};
use crate::error::CoalgebraError;
use crate::graph::TermGraph;
use crate::nominal::{Atom, AtomSet, Nominal, Perm};
use crate::orbit::OrbitElement;
use crate::term::FiniteTerm;

/// `t[v := s]`. A binder is renamed only when it would capture a free variable
/// of `s`; the new name is the least atom outside `fv(s) ∪ fv(body) ∪ {v}`.
/// `⊥` is left alone.
pub fn subst_finite(t: &FiniteTerm, v: Atom, s: &FiniteTerm) -> FiniteTerm {
    let fv_s = s.free_vars();
    go(t, v, s, &fv_s)
}

fn go(t: &FiniteTerm, v: Atom, s: &FiniteTerm, fv_s: &AtomSet) -> FiniteTerm {
    match t {
        FiniteTerm::Var(a) if *a == v => s.clone(),
        FiniteTerm::Var(_) | FiniteTerm::Bottom => t.clone(),
        FiniteTerm::App(l, r) => FiniteTerm::app(go(l, v, s, fv_s), go(r, v, s, fv_s)),
        FiniteTerm::Lam(x, _) if *x == v => t.clone(),
        FiniteTerm::Lam(_, b) if !b.free_vars().contains(v) => t.clone(),
        FiniteTerm::Lam(x, b) if fv_s.contains(*x) => {
            let mut avoid = fv_s.union(&b.free_vars());
            avoid.insert(v);
            let x2 = avoid.least_fresh();
            let renamed = b.act(&Perm::swap(*x, x2));
            FiniteTerm::lam(x2, go(&renamed, v, s, fv_s))
        }
        FiniteTerm::Lam(x, b) => FiniteTerm::lam(*x, go(b, v, s, fv_s)),
    }
}

/// A state of the substitution coalgebra: either a state of `B` (the tree being
/// substituted in) or a triple `(a, w, b)` standing for `a[w := b]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SubstState {
    InB(OrbitElement),
    InTriple(OrbitElement, Atom, OrbitElement),
}

impl Nominal for SubstState {
    fn act(&self, p: &Perm) -> Self {
        match self {
            SubstState::InB(b) => SubstState::InB(b.act(p)),
            SubstState::InTriple(a, w, b) => SubstState::InTriple(a.act(p), p.apply(*w), b.act(p)),
        }
    }

    fn support(&self) -> AtomSet {
        match self {
            SubstState::InB(b) => b.support(),
            SubstState::InTriple(a, w, b) => {
                let mut s = a.support().union(&b.support());
                s.insert(*w);
                s
            }
        }
    }
}

/// An abstraction `⟨binder⟩body` whose binder is fresh for the marker and the
/// `B`-component of the body.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrengthWitness {
    pub binder: Atom,
    pub body: SubstState,
}

impl StrengthWitness {
    /// Pairs `⟨u⟩x'` with `(w, y)`, renaming `u` to the least atom fresh for
    /// `{w} ∪ supp(y) ∪ supp(x)` where `x` is the element whose step produced
    /// the abstraction.
    pub fn new(
        x: &OrbitElement,
        u: Atom,
        x_body: &OrbitElement,
        w: Atom,
        y: &OrbitElement,
    ) -> Self {
        let mut avoid = x.support().union(&y.support());
        avoid.insert(w);
        let fresh = avoid.least_fresh();
        StrengthWitness {
            binder: fresh,
            body: SubstState::InTriple(x_body.act(&Perm::swap(u, fresh)), w, y.clone()),
        }
    }
}

/// The coalgebra `[g, h]` on `B + A×V×B` for two instantiated coalgebras.
#[derive(Clone, Debug)]
pub struct SubstCoalgebra {
    pub a: ConcreteCoalgebra,
    pub b: ConcreteCoalgebra,
}

impl SubstCoalgebra {
    fn b_step(&self, y: &OrbitElement) -> Step<SubstState> {
        match self.b.step(y) {
            Step::Var(u) => Step::Var(u),
            Step::Bottom => Step::Bottom,
            Step::Abs(u, y2) => Step::Abs(u, SubstState::InB(y2)),
            Step::App(l, r) => Step::App(SubstState::InB(l), SubstState::InB(r)),
        }
    }
}

impl Coalgebra for SubstCoalgebra {
    type State = SubstState;

    fn step(&self, s: &SubstState) -> Step<SubstState> {
        match s {
            SubstState::InB(y) => self.b_step(y),
            SubstState::InTriple(x, w, y) => match self.a.step(x) {
                Step::Var(u) if u == *w => self.b_step(y),
                Step::Var(u) => Step::Var(u),
                Step::Bottom => Step::Bottom,
                Step::Abs(u, x2) => {
                    let sw = StrengthWitness::new(x, u, &x2, *w, y);
                    Step::Abs(sw.binder, sw.body)
                }
                Step::App(x1, x2) => Step::App(
                    SubstState::InTriple(x1, *w, y.clone()),
                    SubstState::InTriple(x2, *w, y.clone()),
                ),
            },
        }
    }

    fn support_bound(&self) -> usize {
        self.a.support_bound() + 1 + self.b.support_bound()
    }
}

/// Substitutes `root_b` (a state of `b`) for `v` in `root_a` (a state of `a`)
/// and materializes the result.
pub fn subst_coalgebra(
    a: ConcreteCoalgebra,
    root_a: &OrbitElement,
    v: Atom,
    b: ConcreteCoalgebra,
    root_b: &OrbitElement,
) -> Result<TermGraph, CoalgebraError> {
    let c = SubstCoalgebra { a, b };
    let root = SubstState::InTriple(root_a.clone(), v, root_b.clone());
    c_construct(&c, &root, CarrierMode::Reachable)
}

/// `t[v := s]` on rational trees.
pub fn subst_rational(t: &TermGraph, v: Atom, s: &TermGraph) -> TermGraph {
    let (a, root_a) = graph_to_coalgebra(t);
    let (b, root_b) = graph_to_coalgebra(s);
    subst_coalgebra(instantiate(&a), &root_a, v, instantiate(&b), &root_b)
        .expect("graph-derived coalgebras respect their support bound")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{alpha_bisim, graph_of};
    use crate::syntax::{parse_finite_with, parse_term_with, Interner};
    use crate::term::alpha_eq_finite;

    #[test]
    fn finite_examples() {
        let x = Atom(0);
        let y = Atom(1);
        let s = FiniteTerm::app(FiniteTerm::var(Atom(5)), FiniteTerm::var(Atom(6)));
        assert_eq!(subst_finite(&FiniteTerm::var(x), x, &s), s);
        let id = FiniteTerm::lam(x, FiniteTerm::var(x));
        assert_eq!(subst_finite(&id, x, &s), id);
        let k = FiniteTerm::lam(y, FiniteTerm::var(x));
        let out = subst_finite(&k, x, &FiniteTerm::var(y));
        assert_eq!(out, FiniteTerm::lam(Atom(2), FiniteTerm::var(y)));
        assert_eq!(subst_finite(&FiniteTerm::Bottom, x, &s), FiniteTerm::Bottom);
    }

    #[test]
    fn no_rename_without_capture() {
        let mut names = Interner::new();
        let t = parse_finite_with("\\a. a x", &mut names).unwrap();
        let s = parse_finite_with("b", &mut names).unwrap();
        let x = names.lookup("x").unwrap();
        let expect = parse_finite_with("\\a. a b", &mut names).unwrap();
        assert_eq!(subst_finite(&t, x, &s), expect);
    }

    fn graphs(srcs: &[&str]) -> (Vec<TermGraph>, Interner) {
        let mut names = Interner::for_sources(srcs.iter().copied());
        let gs = srcs
            .iter()
            .map(|s| graph_of(&parse_term_with(s, &mut names).unwrap()))
            .collect();
        (gs, names)
    }

    #[test]
    fn rational_loop() {
        let (g, names) = graphs(&["mu r. x #r", "y", "mu r. y #r"]);
        let x = names.lookup("x").unwrap();
        let out = subst_rational(&g[0], x, &g[1]);
        assert!(alpha_bisim(&out, &g[2]));
    }

    #[test]
    fn rational_capture() {
        let (g, names) = graphs(&["\\x. z x", "x", "\\w. x w"]);
        let z = names.lookup("z").unwrap();
        let out = subst_rational(&g[0], z, &g[1]);
        assert!(alpha_bisim(&out, &g[2]));
        let t = out.truncate(5);
        let expect = g[2].truncate(5);
        assert!(alpha_eq_finite(&t, &expect));
    }

    #[test]
    fn rational_vacuous() {
        let (g, names) = graphs(&["mu a. \\x. mu b. \\y. #a #b", "q r"]);
        let q = names.lookup("q").unwrap();
        assert!(alpha_bisim(&subst_rational(&g[0], q, &g[1]), &g[0]));
    }
}
