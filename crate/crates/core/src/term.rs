//! Finite λ-terms over atoms, extended with the constant ⊥.

use std::collections::HashMap;

use crate::nominal::{abstraction_eq_by, Atom, AtomSet, Nominal, Perm};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FiniteTerm {
    Var(Atom),
    Bottom,
    Lam(Atom, Box<FiniteTerm>),
    App(Box<FiniteTerm>, Box<FiniteTerm>),
}

impl FiniteTerm {
    pub fn var(a: Atom) -> Self {
        FiniteTerm::Var(a)
    }

    pub fn lam(x: Atom, body: FiniteTerm) -> Self {
        FiniteTerm::Lam(x, Box::new(body))
    }

    pub fn app(l: FiniteTerm, r: FiniteTerm) -> Self {
        FiniteTerm::App(Box::new(l), Box::new(r))
    }

    /// `head a1 … an`, left-associated.
    pub fn apps(head: FiniteTerm, args: impl IntoIterator<Item = FiniteTerm>) -> Self {
        args.into_iter().fold(head, FiniteTerm::app)
    }

    /// `λx1. … λxn. body`.
    pub fn lams(binders: &[Atom], body: FiniteTerm) -> Self {
        binders
            .iter()
            .rev()
            .fold(body, |acc, &x| FiniteTerm::lam(x, acc))
    }

    pub fn free_vars(&self) -> AtomSet {
        let mut out = AtomSet::new();
        self.collect_fv(&mut Vec::new(), &mut out);
        out
    }

    fn collect_fv(&self, bound: &mut Vec<Atom>, out: &mut AtomSet) {
        match self {
            FiniteTerm::Var(a) => {
                if !bound.contains(a) {
                    out.insert(*a);
                }
            }
            FiniteTerm::Bottom => {}
            FiniteTerm::Lam(x, b) => {
                bound.push(*x);
                b.collect_fv(bound, out);
                bound.pop();
            }
            FiniteTerm::App(l, r) => {
                l.collect_fv(bound, out);
                r.collect_fv(bound, out);
            }
        }
    }

    /// Every atom occurring anywhere, binders included.
    pub fn atoms(&self) -> AtomSet {
        let mut out = AtomSet::new();
        self.walk(&mut |t| match t {
            FiniteTerm::Var(a) | FiniteTerm::Lam(a, _) => {
                out.insert(*a);
            }
            _ => {}
        });
        out
    }

    fn walk(&self, f: &mut impl FnMut(&FiniteTerm)) {
        f(self);
        match self {
            FiniteTerm::Lam(_, b) => b.walk(f),
            FiniteTerm::App(l, r) => {
                l.walk(f);
                r.walk(f);
            }
            _ => {}
        }
    }

    pub fn size(&self) -> usize {
        let mut n = 0;
        self.walk(&mut |_| n += 1);
        n
    }

    pub fn depth(&self) -> usize {
        match self {
            FiniteTerm::Var(_) | FiniteTerm::Bottom => 1,
            FiniteTerm::Lam(_, b) => 1 + b.depth(),
            FiniteTerm::App(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    pub fn contains_bottom(&self) -> bool {
        let mut found = false;
        self.walk(&mut |t| found |= matches!(t, FiniteTerm::Bottom));
        found
    }

    /// Replaces every subtree rooted at depth `d` by ⊥ (the root has depth 0).
    pub fn truncate(&self, d: usize) -> FiniteTerm {
        if d == 0 {
            return FiniteTerm::Bottom;
        }
        match self {
            FiniteTerm::Var(_) | FiniteTerm::Bottom => self.clone(),
            FiniteTerm::Lam(x, b) => FiniteTerm::lam(*x, b.truncate(d - 1)),
            FiniteTerm::App(l, r) => FiniteTerm::app(l.truncate(d - 1), r.truncate(d - 1)),
        }
    }

    /// All subterms, in pre-order.
    pub fn subterms(&self) -> Vec<&FiniteTerm> {
        let mut out = Vec::new();
        fn rec<'a>(t: &'a FiniteTerm, out: &mut Vec<&'a FiniteTerm>) {
            out.push(t);
            match t {
                FiniteTerm::Lam(_, b) => rec(b, out),
                FiniteTerm::App(l, r) => {
                    rec(l, out);
                    rec(r, out);
                }
                _ => {}
            }
        }
        rec(self, &mut out);
        out
    }

    /// The α-canonical representative: the binder at nesting depth `k` is renamed
    /// to the `k`-th atom (in index order) that is not free in the whole term.
    pub fn alpha_canonical(&self) -> FiniteTerm {
        let fv = self.free_vars();
        let mut names = Vec::new();
        self.canon(&mut HashMap::new(), 0, &fv, &mut names)
    }

    fn canon(
        &self,
        env: &mut HashMap<Atom, Vec<Atom>>,
        depth: usize,
        fv: &AtomSet,
        names: &mut Vec<Atom>,
    ) -> FiniteTerm {
        match self {
            FiniteTerm::Var(a) => match env.get(a).and_then(|s| s.last()) {
                Some(&c) => FiniteTerm::Var(c),
                None => FiniteTerm::Var(*a),
            },
            FiniteTerm::Bottom => FiniteTerm::Bottom,
            FiniteTerm::Lam(x, b) => {
                while names.len() <= depth {
                    let mut avoid = fv.clone();
                    for &n in names.iter() {
                        avoid.insert(n);
                    }
                    names.push(avoid.least_fresh());
                }
                let c = names[depth];
                env.entry(*x).or_default().push(c);
                let body = b.canon(env, depth + 1, fv, names);
                env.get_mut(x).map(|s| s.pop());
                FiniteTerm::lam(c, body)
            }
            FiniteTerm::App(l, r) => FiniteTerm::app(
                l.canon(env, depth, fv, names),
                r.canon(env, depth, fv, names),
            ),
        }
    }
}

/// Renames every atom occurrence, binders included; the support is the set of
/// free variables, so the support laws hold up to α-equivalence.
impl Nominal for FiniteTerm {
    fn act(&self, p: &Perm) -> Self {
        if p.is_identity() {
            return self.clone();
        }
        match self {
            FiniteTerm::Var(a) => FiniteTerm::Var(p.apply(*a)),
            FiniteTerm::Bottom => FiniteTerm::Bottom,
            FiniteTerm::Lam(x, b) => FiniteTerm::lam(p.apply(*x), b.act(p)),
            FiniteTerm::App(l, r) => FiniteTerm::app(l.act(p), r.act(p)),
        }
    }

    fn support(&self) -> AtomSet {
        self.free_vars()
    }
}

/// α-equivalence of finite λ⊥-terms, comparing abstractions by the swap test.
pub fn alpha_eq_finite(t1: &FiniteTerm, t2: &FiniteTerm) -> bool {
    match (t1, t2) {
        (FiniteTerm::Var(a), FiniteTerm::Var(b)) => a == b,
        (FiniteTerm::Bottom, FiniteTerm::Bottom) => true,
        (FiniteTerm::App(l1, r1), FiniteTerm::App(l2, r2)) => {
            alpha_eq_finite(l1, l2) && alpha_eq_finite(r1, r2)
        }
        (FiniteTerm::Lam(x1, b1), FiniteTerm::Lam(x2, b2)) => {
            abstraction_eq_by(*x1, b1.as_ref(), *x2, b2.as_ref(), |a, b| {
                alpha_eq_finite(a, b)
            })
        }
        _ => false,
    }
}

/// A finite term kept in α-canonical form, so that `==` and hashing are α-equivalence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlphaTerm(FiniteTerm);

impl AlphaTerm {
    pub fn new(t: &FiniteTerm) -> Self {
        AlphaTerm(t.alpha_canonical())
    }

    pub fn term(&self) -> &FiniteTerm {
        &self.0
    }

    pub fn into_term(self) -> FiniteTerm {
        self.0
    }
}

impl Nominal for AlphaTerm {
    fn act(&self, p: &Perm) -> Self {
        AlphaTerm::new(&self.0.act(p))
    }

    fn support(&self) -> AtomSet {
        self.0.free_vars()
    }
}
