//! Atoms, finite permutations and the support/freshness vocabulary of nominal sets.
//!
//! Every value type in this crate implements [`Nominal`]: it carries an action of
//! the group of finite permutations of atoms and a finite support. Fresh names are
//! always chosen as the atom with the least index outside some finite set, which
//! keeps every construction deterministic.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A variable name `v<index>` from the countable universe of atoms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(pub usize);

impl Atom {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// A finite, sorted, duplicate-free set of atoms.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomSet(BTreeSet<Atom>);

impl AtomSet {
    pub fn new() -> Self {
        AtomSet(BTreeSet::new())
    }

    pub fn singleton(a: Atom) -> Self {
        let mut s = AtomSet::new();
        s.insert(a);
        s
    }

    pub fn insert(&mut self, a: Atom) -> bool {
        self.0.insert(a)
    }

    pub fn remove(&mut self, a: Atom) -> bool {
        self.0.remove(&a)
    }

    pub fn contains(&self, a: Atom) -> bool {
        self.0.contains(&a)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Atom> + '_ {
        self.0.iter().copied()
    }

    pub fn union(&self, other: &AtomSet) -> AtomSet {
        AtomSet(self.0.union(&other.0).copied().collect())
    }

    pub fn extend(&mut self, other: &AtomSet) {
        self.0.extend(other.0.iter().copied());
    }

    pub fn is_subset(&self, other: &AtomSet) -> bool {
        self.0.is_subset(&other.0)
    }

    /// Position of `a` in ascending order, if present.
    pub fn position(&self, a: Atom) -> Option<usize> {
        self.0.iter().position(|&b| b == a)
    }

    /// The atom with the least index not in this set.
    pub fn least_fresh(&self) -> Atom {
        let mut i = 0;
        for a in self.iter() {
            if a.0 == i {
                i += 1;
            } else if a.0 > i {
                break;
            }
        }
        Atom(i)
    }

    /// Adds the least fresh atoms until the set has `n` elements.
    pub fn padded_to(&self, n: usize) -> AtomSet {
        let mut out = self.clone();
        while out.len() < n {
            let a = out.least_fresh();
            out.insert(a);
        }
        out
    }
}

impl FromIterator<Atom> for AtomSet {
    fn from_iter<I: IntoIterator<Item = Atom>>(iter: I) -> Self {
        AtomSet(iter.into_iter().collect())
    }
}

impl fmt::Display for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}

/// A finite permutation of atoms, stored as the graph of its non-fixpoints.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Perm {
    moved: BTreeMap<Atom, Atom>,
}

impl Perm {
    pub fn identity() -> Self {
        Perm::default()
    }

    /// The transposition exchanging `a` and `b`.
    pub fn swap(a: Atom, b: Atom) -> Self {
        let mut moved = BTreeMap::new();
        if a != b {
            moved.insert(a, b);
            moved.insert(b, a);
        }
        Perm { moved }
    }

    /// Builds a permutation from an arbitrary finite map, or `None` if the map is
    /// not a bijection of its domain onto itself.
    pub fn from_map(map: impl IntoIterator<Item = (Atom, Atom)>) -> Option<Self> {
        let mut moved = BTreeMap::new();
        for (a, b) in map {
            if let Some(prev) = moved.insert(a, b) {
                if prev != b {
                    return None;
                }
            }
        }
        let dom: BTreeSet<Atom> = moved.keys().copied().collect();
        let img: BTreeSet<Atom> = moved.values().copied().collect();
        if dom != img {
            return None;
        }
        moved.retain(|a, b| a != b);
        Some(Perm { moved })
    }

    /// Extends an injective partial map `from[i] ↦ to[i]` to a finite permutation.
    /// Returns `None` if the map is not injective.
    pub fn extending(pairs: &[(Atom, Atom)]) -> Option<Self> {
        let mut fwd: BTreeMap<Atom, Atom> = BTreeMap::new();
        let mut bwd: BTreeMap<Atom, Atom> = BTreeMap::new();
        for &(a, b) in pairs {
            match (fwd.get(&a), bwd.get(&b)) {
                (Some(&x), _) if x != b => return None,
                (_, Some(&y)) if y != a => return None,
                _ => {}
            }
            fwd.insert(a, b);
            bwd.insert(b, a);
        }
        // Close each open chain b = f(a), f(b) undefined ... back to the chain start.
        let mut moved = fwd.clone();
        for &a in fwd.keys() {
            if bwd.contains_key(&a) {
                continue;
            }
            // `a` starts a chain; walk to its end and map the end back to `a`.
            let mut end = a;
            while let Some(&next) = fwd.get(&end) {
                end = next;
            }
            moved.insert(end, a);
        }
        Perm::from_map(moved)
    }

    pub fn apply(&self, a: Atom) -> Atom {
        self.moved.get(&a).copied().unwrap_or(a)
    }

    pub fn is_identity(&self) -> bool {
        self.moved.is_empty()
    }

    /// `(self ∘ other)(a) = self(other(a))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        let mut moved = BTreeMap::new();
        for &a in self.moved.keys().chain(other.moved.keys()) {
            let b = self.apply(other.apply(a));
            if a != b {
                moved.insert(a, b);
            }
        }
        Perm { moved }
    }

    pub fn inverse(&self) -> Perm {
        Perm {
            moved: self.moved.iter().map(|(&a, &b)| (b, a)).collect(),
        }
    }

    /// Atoms not fixed by this permutation.
    pub fn domain(&self) -> AtomSet {
        self.moved.keys().copied().collect()
    }

    /// Disjoint cycles, each starting at its least atom, ordered by that atom.
    pub fn cycles(&self) -> Vec<Vec<Atom>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in self.moved.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut cycle = vec![start];
            seen.insert(start);
            let mut cur = self.apply(start);
            while cur != start {
                seen.insert(cur);
                cycle.push(cur);
                cur = self.apply(cur);
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "()");
        }
        for cycle in self.cycles() {
            write!(f, "(")?;
            for (i, a) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{a}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// A value with a finite-permutation action and a finite support.
///
/// Implementations must satisfy `act(id, x) = x`, `act(p, act(q, x)) = act(p∘q, x)`,
/// `support(act(p, x)) = p·support(x)`, and `act(p, x) = x` whenever `p` fixes the
/// support pointwise (where `=` is the type's notion of equality; for raw terms that
/// is α-equivalence).
pub trait Nominal {
    fn act(&self, p: &Perm) -> Self;
    fn support(&self) -> AtomSet;
}

impl Nominal for Atom {
    fn act(&self, p: &Perm) -> Self {
        p.apply(*self)
    }

    fn support(&self) -> AtomSet {
        AtomSet::singleton(*self)
    }
}

impl Nominal for AtomSet {
    fn act(&self, p: &Perm) -> Self {
        self.iter().map(|a| p.apply(a)).collect()
    }

    fn support(&self) -> AtomSet {
        self.clone()
    }
}

impl<A: Nominal, B: Nominal> Nominal for (A, B) {
    fn act(&self, p: &Perm) -> Self {
        (self.0.act(p), self.1.act(p))
    }

    fn support(&self) -> AtomSet {
        self.0.support().union(&self.1.support())
    }
}

pub fn is_fresh<T: Nominal + ?Sized>(a: Atom, x: &T) -> bool {
    !x.support().contains(a)
}

/// Decides `⟨v1⟩x1 = ⟨v2⟩x2` using the least atom fresh for both pairs as witness.
pub fn abstraction_eq<T: Nominal + PartialEq>(v1: Atom, x1: &T, v2: Atom, x2: &T) -> bool {
    abstraction_eq_by(v1, x1, v2, x2, |a, b| a == b)
}

/// [`abstraction_eq`] with a caller-supplied equality on the body type.
pub fn abstraction_eq_by<T, F>(v1: Atom, x1: &T, v2: Atom, x2: &T, eq: F) -> bool
where
    T: Nominal,
    F: Fn(&T, &T) -> bool,
{
    let mut avoid = x1.support().union(&x2.support());
    avoid.insert(v1);
    avoid.insert(v2);
    let z = avoid.least_fresh();
    abstraction_eq_with_witness(v1, x1, v2, x2, z, eq)
}

/// Checks `(v1 z)·x1 = (v2 z)·x2` for a given witness `z`. The witness must be fresh
/// for `v1`, `v2`, `x1` and `x2`; the answer does not depend on which fresh atom is used.
pub fn abstraction_eq_with_witness<T, F>(v1: Atom, x1: &T, v2: Atom, x2: &T, z: Atom, eq: F) -> bool
where
    T: Nominal,
    F: Fn(&T, &T) -> bool,
{
    eq(&x1.act(&Perm::swap(v1, z)), &x2.act(&Perm::swap(v2, z)))
}
