#![allow(dead_code)]

use std::collections::HashMap;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

use ratlam::coalgebra::{Coalgebra, SlotRef, Step, StepView, SymbolicCoalgebra, Target};
use ratlam::orbit::{OrbitSchema, OrbitSet, SlotPerm};
use ratlam::syntax::parse_term_with;
use ratlam::{graph_of, Atom, FiniteTerm, Interner, Node, Nominal, Perm, TermGraph};

/// μ-terms used across the suites. The first six are the rational trees drawn in
/// the introduction of the theory (two spellings of the capture example).
pub const CORPUS: &[&str] = &[
    "mu r. f #r",
    "mu r. f (f #r)",
    "\\x. mu b. (\\x. #b) (x #b)",
    "mu a. \\x. ((mu b. \\x. #b) (mu c. x #c))",
    "mu r. (\\x. (\\y. #r) y) x",
    "mu a. \\x. mu b. \\y. #a #b",
    "(\\x. x x) (\\x. x x)",
    "v0 v1",
    "\\x. x",
    "\\y. y",
    "\\x. \\y. x",
    "\\y. \\x. y",
    "\\x. \\y. y",
    "\\x. \\x. x",
    "f (mu r. f #r)",
    "mu r. \\x. x #r",
    "mu r. \\y. y #r",
    "mu r. \\x. #r x",
    "mu r. \\x. \\y. (x #r) y",
    "mu r. \\x. \\y. (y #r) x",
    "\\g. (\\x. g (x x)) (\\x. g (x x))",
    "mu r. f (g #r)",
    "mu r. g (f #r)",
    "f (g (mu r. f (g #r)))",
    "mu r. (mu s. \\x. #s) #r",
    "mu r. \\x. f x #r",
    "mu r. \\z. f z #r",
    "\\x. mu r. x (\\y. #r)",
    "\\x. mu r. x (\\x. #r)",
    "mu r. _|_ #r",
    "mu r. f (f (f (f (f (g #r)))))",
    "mu r. f (f (f (f (f (g (f (f (f (f (f (g #r)))))))))))",
    "mu r. f (f (f (f (f (h #r)))))",
    "(\\x. x) y",
    "\\x. _|_",
];

pub fn corpus_terms() -> (Vec<ratlam::MuTerm>, Interner) {
    let mut names = Interner::for_sources(CORPUS.iter().copied());
    let terms = CORPUS
        .iter()
        .map(|s| parse_term_with(s, &mut names).unwrap_or_else(|e| panic!("{s}: {e}")))
        .collect();
    (terms, names)
}

pub fn corpus() -> Vec<TermGraph> {
    corpus_terms().0.iter().map(graph_of).collect()
}

/// Truncation by literally unfolding μ-binders in the syntax tree.
pub fn mu_unfold(t: &ratlam::MuTerm, d: usize) -> FiniteTerm {
    fn go<'a>(
        t: &'a ratlam::MuTerm,
        d: usize,
        env: &[(&'a str, &'a ratlam::MuTerm, usize)],
    ) -> FiniteTerm {
        use ratlam::MuTerm as M;
        if d == 0 {
            return FiniteTerm::Bottom;
        }
        match t {
            M::Var(a) => FiniteTerm::Var(*a),
            M::Bottom => FiniteTerm::Bottom,
            M::Lam(x, b) => FiniteTerm::lam(*x, go(b, d - 1, env)),
            M::App(l, r) => FiniteTerm::app(go(l, d - 1, env), go(r, d - 1, env)),
            M::Mu(l, b) => {
                let mut env2 = env.to_vec();
                env2.push((l.as_str(), t, env.len()));
                go(b, d, &env2)
            }
            M::Ref(l) => {
                let (_, mu, depth) = *env
                    .iter()
                    .rev()
                    .find(|(n, _, _)| *n == l.as_str())
                    .expect("bound ref");
                go(mu, d, &env[..depth])
            }
        }
    }
    go(t, d, &[])
}

/// Locally nameless form: bound variables by index, free ones by atom.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Db {
    Free(Atom),
    Bound(usize),
    Bot,
    Lam(Box<Db>),
    App(Box<Db>, Box<Db>),
}

pub fn db(t: &FiniteTerm) -> Db {
    fn go(t: &FiniteTerm, env: &mut Vec<Atom>) -> Db {
        match t {
            FiniteTerm::Var(a) => match env.iter().rev().position(|b| b == a) {
                Some(i) => Db::Bound(i),
                None => Db::Free(*a),
            },
            FiniteTerm::Bottom => Db::Bot,
            FiniteTerm::Lam(x, b) => {
                env.push(*x);
                let body = go(b, env);
                env.pop();
                Db::Lam(Box::new(body))
            }
            FiniteTerm::App(l, r) => Db::App(Box::new(go(l, env)), Box::new(go(r, env))),
        }
    }
    go(t, &mut Vec::new())
}

/// Substitution on locally nameless terms; no renaming is ever needed.
pub fn db_subst(t: &Db, v: Atom, s: &Db) -> Db {
    match t {
        Db::Free(a) if *a == v => s.clone(),
        Db::Free(_) | Db::Bound(_) | Db::Bot => t.clone(),
        Db::Lam(b) => Db::Lam(Box::new(db_subst(b, v, s))),
        Db::App(l, r) => Db::App(Box::new(db_subst(l, v, s)), Box::new(db_subst(r, v, s))),
    }
}

pub fn db_truncate(t: &Db, d: usize) -> Db {
    if d == 0 {
        return Db::Bot;
    }
    match t {
        Db::Lam(b) => Db::Lam(Box::new(db_truncate(b, d - 1))),
        Db::App(l, r) => Db::App(
            Box::new(db_truncate(l, d - 1)),
            Box::new(db_truncate(r, d - 1)),
        ),
        other => other.clone(),
    }
}

pub fn alpha_eq_oracle(a: &FiniteTerm, b: &FiniteTerm) -> bool {
    db(a) == db(b)
}

/// The truncation characterisation of α-equivalence of infinite trees, checked
/// up to depth `max_d`.
pub fn alpha_eq_by_truncation(g1: &TermGraph, g2: &TermGraph, max_d: usize) -> bool {
    (0..=max_d).all(|d| alpha_eq_oracle(&g1.truncate(d), &g2.truncate(d)))
}

/// Unfolds a coalgebra to depth `d`, renaming every binder to a globally new atom.
pub fn naive_unfold<C: Coalgebra>(c: &C, x: &C::State, d: usize) -> FiniteTerm {
    fn go<C: Coalgebra>(c: &C, x: &C::State, d: usize, next: &mut usize) -> FiniteTerm {
        if d == 0 {
            return FiniteTerm::Bottom;
        }
        match c.step(x) {
            Step::Var(a) => FiniteTerm::Var(a),
            Step::Bottom => FiniteTerm::Bottom,
            Step::Abs(v, y) => {
                let g = Atom(*next);
                *next += 1;
                let y = y.act(&Perm::swap(v, g));
                FiniteTerm::lam(g, go(c, &y, d - 1, next))
            }
            Step::App(l, r) => {
                let l = go(c, &l, d - 1, next);
                FiniteTerm::app(l, go(c, &r, d - 1, next))
            }
        }
    }
    let mut next = 100_000;
    go(c, x, d, &mut next)
}

/// Distinct subtrees counted by iterated hash-consing of depth-k truncations.
pub fn subtree_oracle(g: &TermGraph) -> usize {
    #[derive(Clone, PartialEq, Eq, Hash)]
    enum Sig {
        Cut,
        Var(Atom),
        Bot,
        Lam(Atom, usize),
        App(usize, usize),
    }
    let reach = g.reachable();
    let mut table: HashMap<Sig, usize> = HashMap::new();
    let cut = 0;
    table.insert(Sig::Cut, cut);
    let mut cur: HashMap<usize, usize> = reach.iter().map(|&n| (n, cut)).collect();
    for _ in 0..=reach.len() {
        let mut next = HashMap::new();
        for &n in &reach {
            let sig = match g.node(n) {
                Node::Var(a) => Sig::Var(a),
                Node::Bottom => Sig::Bot,
                Node::Lam(x, b) => Sig::Lam(x, cur[&b]),
                Node::App(l, r) => Sig::App(cur[&l], cur[&r]),
            };
            let fresh = table.len();
            let id = *table.entry(sig).or_insert(fresh);
            next.insert(n, id);
        }
        cur = next;
    }
    let mut ids: Vec<usize> = cur.into_values().collect();
    ids.sort();
    ids.dedup();
    ids.len()
}

pub fn random_perm(rng: &mut StdRng, atoms: usize) -> Perm {
    let mut images: Vec<usize> = (0..atoms).collect();
    images.shuffle(rng);
    Perm::from_map(
        images
            .into_iter()
            .enumerate()
            .map(|(i, j)| (Atom(i), Atom(j))),
    )
    .unwrap()
}

/// A random term graph with `size` nodes over atoms `v0 … v(atoms-1)`. Edges
/// mostly point forward, towards the variable leaves at the end; about one in
/// five points back and closes a cycle.
pub fn random_graph(rng: &mut StdRng, size: usize, atoms: usize) -> TermGraph {
    let nodes = (0..size)
        .map(|i| {
            let a = Atom(rng.gen_range(0..atoms));
            if i + 2 >= size {
                return if rng.gen_range(0..20) == 0 {
                    Node::Bottom
                } else {
                    Node::Var(a)
                };
            }
            let mut child = || {
                if rng.gen_bool(0.2) {
                    rng.gen_range(0..=i)
                } else {
                    rng.gen_range(i + 1..size)
                }
            };
            let (l, r) = (child(), child());
            if rng.gen_bool(0.4) {
                Node::Lam(a, l)
            } else {
                Node::App(l, r)
            }
        })
        .collect();
    TermGraph::new(nodes, 0).unwrap()
}

/// A free variable of `g` most of the time, otherwise any of the first `atoms`.
pub fn pick_var(rng: &mut StdRng, g: &TermGraph, atoms: usize) -> Atom {
    let fv: Vec<Atom> = g.support().iter().collect();
    if !fv.is_empty() && rng.gen_bool(0.8) {
        *fv.choose(rng).unwrap()
    } else {
        Atom(rng.gen_range(0..atoms))
    }
}

fn random_schema(rng: &mut StdRng, id: String, arity: usize) -> OrbitSchema {
    let cyc = |cs: &[&[usize]]| {
        SlotPerm::from_cycles(arity, &cs.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap()
    };
    let stab = match (arity, rng.gen_range(0..10)) {
        (2, 0..=2) => vec![SlotPerm::identity(2), cyc(&[&[0, 1]])],
        (3, 0) => vec![SlotPerm::identity(3), cyc(&[&[0, 1]])],
        (3, 1) => vec![
            SlotPerm::identity(3),
            cyc(&[&[0, 1, 2]]),
            cyc(&[&[0, 2, 1]]),
        ],
        (3, 2) => SlotPerm::all(3),
        _ => vec![SlotPerm::identity(arity)],
    };
    OrbitSchema {
        id,
        arity,
        stabilizer: stab,
    }
    .validate()
    .unwrap()
}

fn random_target(
    rng: &mut StdRng,
    schemas: &[OrbitSchema],
    pool: &[SlotRef],
    must: Option<SlotRef>,
) -> Option<Target> {
    let candidates: Vec<&OrbitSchema> = schemas
        .iter()
        .filter(|s| s.arity <= pool.len() && (must.is_none() || s.arity >= 1))
        .collect();
    let target = candidates.choose(rng)?;
    let mut args: Vec<SlotRef> = pool.to_vec();
    args.shuffle(rng);
    args.truncate(target.arity);
    if let Some(m) = must {
        if !args.contains(&m) && rng.gen_bool(0.8) {
            args[0] = m;
            args.shuffle(rng);
        }
    }
    Some(Target::new(target.id.clone(), args))
}

fn random_view(rng: &mut StdRng, me: &OrbitSchema, schemas: &[OrbitSchema]) -> StepView {
    let slots: Vec<SlotRef> = (0..me.arity).map(SlotRef::Slot).collect();
    for _ in 0..10 {
        let view = match rng.gen_range(0..20) {
            0 => Some(StepView::Bottom),
            1..=4 if me.arity > 0 => Some(StepView::Var(rng.gen_range(0..me.arity))),
            5..=11 => random_target(rng, schemas, &slots, None)
                .zip(random_target(rng, schemas, &slots, None))
                .map(|(l, r)| StepView::App(l, r)),
            12..=16 => {
                let mut pool = slots.clone();
                pool.push(SlotRef::Fresh);
                random_target(rng, schemas, &pool, Some(SlotRef::Fresh)).map(|target| {
                    StepView::Abs {
                        binder: SlotRef::Fresh,
                        target,
                    }
                })
            }
            _ if me.arity > 0 => {
                let binder = SlotRef::Slot(rng.gen_range(0..me.arity));
                random_target(rng, schemas, &slots, Some(binder))
                    .map(|target| StepView::Abs { binder, target })
            }
            _ => None,
        };
        if let Some(v) = view {
            return v;
        }
    }
    StepView::Bottom
}

/// A random valid symbolic coalgebra with at most `max_orbits` orbits of arity at
/// most `max_arity`. Steps that are not invariant under the stabilizer are
/// rejected and redrawn.
pub fn random_coalgebra(
    rng: &mut StdRng,
    max_orbits: usize,
    max_arity: usize,
) -> SymbolicCoalgebra {
    loop {
        let n = rng.gen_range(1..=max_orbits);
        let schemas: Vec<OrbitSchema> = (0..n)
            .map(|i| {
                let k = rng.gen_range(0..=max_arity);
                random_schema(rng, format!("o{i}"), k)
            })
            .collect();
        let steps: Vec<(String, StepView)> = schemas
            .iter()
            .map(|s| (s.id.clone(), random_view(rng, s, &schemas)))
            .collect();
        if let Ok(c) = SymbolicCoalgebra::new(OrbitSet::new(schemas).unwrap(), steps) {
            return c;
        }
    }
}

/// An element of every orbit, with atoms drawn at random from `v0 … v5`.
pub fn random_roots(rng: &mut StdRng, c: &SymbolicCoalgebra) -> Vec<ratlam::orbit::OrbitElement> {
    c.carrier()
        .schemas()
        .iter()
        .map(|s| {
            let mut atoms: Vec<Atom> = (0..6).map(Atom).collect();
            atoms.shuffle(rng);
            atoms.truncate(s.arity);
            c.carrier().element(&s.id, atoms).unwrap()
        })
        .collect()
}
