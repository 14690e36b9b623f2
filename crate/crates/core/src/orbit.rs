//! Finite presentations of orbit-finite nominal sets.
//!
//! Each orbit is presented by a schema: an arity `k` together with a subgroup of
//! the symmetric group on the slots `1..=k`. An element of the orbit is an
//! injective `k`-tuple of atoms, and two tuples denote the same element when one
//! is a slot-permutation of the other by a stabilizer member. Elements are stored
//! in canonical form (the lexicographically least tuple of their class), so the
//! derived equality and hashing are the element equality.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::error::OrbitError;
use crate::nominal::{Atom, AtomSet, Nominal, Perm};

/// A permutation of the slots `0..k` (printed 1-based in cycle notation).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SlotPerm(Vec<usize>);

impl SlotPerm {
    pub fn identity(k: usize) -> Self {
        SlotPerm((0..k).collect())
    }

    /// `images[i]` is the image of slot `i`. Returns `None` unless this is a bijection.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let k = images.len();
        let set: BTreeSet<usize> = images.iter().copied().collect();
        if set.len() != k || images.iter().any(|&i| i >= k) {
            return None;
        }
        Some(SlotPerm(images))
    }

    /// Builds a permutation of `0..k` from 0-based cycles.
    pub fn from_cycles(k: usize, cycles: &[Vec<usize>]) -> Option<Self> {
        let mut images: Vec<usize> = (0..k).collect();
        let mut touched = BTreeSet::new();
        for cycle in cycles {
            for (i, &s) in cycle.iter().enumerate() {
                if s >= k || !touched.insert(s) {
                    return None;
                }
                images[s] = cycle[(i + 1) % cycle.len()];
            }
        }
        Some(SlotPerm(images))
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, slot: usize) -> usize {
        self.0[slot]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &SlotPerm) -> SlotPerm {
        SlotPerm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> SlotPerm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        SlotPerm(inv)
    }

    /// The tuple `t∘g`, i.e. entry `i` is `t[g(i)]`.
    pub fn permute_tuple<T: Clone>(&self, tuple: &[T]) -> Vec<T> {
        self.0.iter().map(|&j| tuple[j].clone()).collect()
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.0[start];
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.0[cur];
            }
            out.push(cycle);
        }
        out
    }

    /// All permutations of `0..k` in lexicographic order of their image vectors.
    pub fn all(k: usize) -> Vec<SlotPerm> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        let mut used = vec![false; k];
        fn rec(k: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<SlotPerm>) {
            if cur.len() == k {
                out.push(SlotPerm(cur.clone()));
                return;
            }
            for i in 0..k {
                if !used[i] {
                    used[i] = true;
                    cur.push(i);
                    rec(k, cur, used, out);
                    cur.pop();
                    used[i] = false;
                }
            }
        }
        rec(k, &mut cur, &mut used, &mut out);
        out
    }
}

impl fmt::Display for SlotPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, s) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", s + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// One orbit: arity plus stabilizer subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrbitSchema {
    pub id: String,
    pub arity: usize,
    pub stabilizer: Vec<SlotPerm>,
}

impl OrbitSchema {
    /// A schema whose stabilizer is just the identity.
    pub fn trivial(id: impl Into<String>, arity: usize) -> Self {
        OrbitSchema {
            id: id.into(),
            arity,
            stabilizer: vec![SlotPerm::identity(arity)],
        }
    }

    /// A schema whose stabilizer is the full symmetric group on its slots.
    pub fn symmetric(id: impl Into<String>, arity: usize) -> Self {
        OrbitSchema {
            id: id.into(),
            arity,
            stabilizer: SlotPerm::all(arity),
        }
    }

    /// Checks that the stabilizer is a subgroup of `S_arity` and sorts it.
    pub fn validate(mut self) -> Result<Self, OrbitError> {
        let not_subgroup = || OrbitError::NotASubgroup(self.id.clone());
        if self.stabilizer.iter().any(|g| g.arity() != self.arity) {
            return Err(not_subgroup());
        }
        let members: HashSet<&SlotPerm> = self.stabilizer.iter().collect();
        if !members.contains(&SlotPerm::identity(self.arity)) {
            return Err(not_subgroup());
        }
        for g in &self.stabilizer {
            if !members.contains(&g.inverse()) {
                return Err(not_subgroup());
            }
            for h in &self.stabilizer {
                if !members.contains(&g.compose(h)) {
                    return Err(not_subgroup());
                }
            }
        }
        self.stabilizer.sort();
        self.stabilizer.dedup();
        Ok(self)
    }

    /// The canonical representative of the class of `tuple`.
    fn canonical(&self, tuple: &[Atom]) -> Vec<Atom> {
        self.stabilizer
            .iter()
            .map(|g| g.permute_tuple(tuple))
            .min()
            .unwrap_or_else(|| tuple.to_vec())
    }
}

/// A validated list of orbit schemas with pairwise distinct ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitSet {
    schemas: Vec<Arc<OrbitSchema>>,
}

impl OrbitSet {
    pub fn new(schemas: Vec<OrbitSchema>) -> Result<Self, OrbitError> {
        let mut ids = HashSet::new();
        let mut out = Vec::with_capacity(schemas.len());
        for s in schemas {
            if !ids.insert(s.id.clone()) {
                return Err(OrbitError::DuplicateSchema(s.id));
            }
            out.push(Arc::new(s.validate()?));
        }
        Ok(OrbitSet { schemas: out })
    }

    pub fn schemas(&self) -> &[Arc<OrbitSchema>] {
        &self.schemas
    }

    pub fn len(&self) -> usize {
        self.schemas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.schemas.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&Arc<OrbitSchema>> {
        self.schemas.iter().find(|s| s.id == id)
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.schemas.iter().position(|s| s.id == id)
    }

    /// Largest arity, i.e. the largest support size of any element.
    pub fn max_arity(&self) -> usize {
        self.schemas.iter().map(|s| s.arity).max().unwrap_or(0)
    }

    /// Looks up `id` and builds the element with the given tuple.
    pub fn element(&self, id: &str, tuple: Vec<Atom>) -> Result<OrbitElement, OrbitError> {
        let schema = self
            .get(id)
            .ok_or_else(|| OrbitError::UnknownSchema(id.to_string()))?;
        OrbitElement::new(schema.clone(), tuple)
    }

    /// All elements whose support is contained in `w`, without duplicates.
    ///
    /// Schemas are visited in order; within a schema, injective tuples are
    /// generated in lexicographic order over the sorted atoms of `w`, and each
    /// class is reported once, at its first (canonical) tuple.
    pub fn enumerate_support_in(&self, w: &AtomSet) -> Vec<OrbitElement> {
        let atoms: Vec<Atom> = w.iter().collect();
        let mut out = Vec::new();
        for schema in &self.schemas {
            let mut seen = HashSet::new();
            for tuple in injective_tuples(&atoms, schema.arity) {
                let canon = schema.canonical(&tuple);
                if seen.insert(canon.clone()) {
                    out.push(OrbitElement {
                        schema: schema.clone(),
                        tuple: canon,
                    });
                }
            }
        }
        out
    }
}

/// All injective `k`-tuples over `atoms`, in lexicographic order of positions.
pub fn injective_tuples(atoms: &[Atom], k: usize) -> Vec<Vec<Atom>> {
    let mut out = Vec::new();
    if k > atoms.len() {
        return out;
    }
    let mut cur = Vec::with_capacity(k);
    let mut used = vec![false; atoms.len()];
    fn rec(
        atoms: &[Atom],
        k: usize,
        cur: &mut Vec<Atom>,
        used: &mut [bool],
        out: &mut Vec<Vec<Atom>>,
    ) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 0..atoms.len() {
            if !used[i] {
                used[i] = true;
                cur.push(atoms[i]);
                rec(atoms, k, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    rec(atoms, k, &mut cur, &mut used, &mut out);
    out
}

/// Number of distinct elements of the orbit of `schema` whose support is exactly `s`.
pub fn count_same_support(schema: &OrbitSchema, s: &AtomSet) -> Result<usize, OrbitError> {
    if s.len() != schema.arity {
        return Err(OrbitError::ArityMismatch {
            schema: schema.id.clone(),
            expected: schema.arity,
            found: s.len(),
        });
    }
    let atoms: Vec<Atom> = s.iter().collect();
    let classes: HashSet<Vec<Atom>> = injective_tuples(&atoms, schema.arity)
        .iter()
        .map(|t| schema.canonical(t))
        .collect();
    Ok(classes.len())
}

/// An element of an orbit-finite set: a schema and an injective atom tuple,
/// stored as the canonical member of its stabilizer class.
#[derive(Clone, Debug)]
pub struct OrbitElement {
    schema: Arc<OrbitSchema>,
    tuple: Vec<Atom>,
}

impl OrbitElement {
    pub fn new(schema: Arc<OrbitSchema>, tuple: Vec<Atom>) -> Result<Self, OrbitError> {
        if tuple.len() != schema.arity {
            return Err(OrbitError::ArityMismatch {
                schema: schema.id.clone(),
                expected: schema.arity,
                found: tuple.len(),
            });
        }
        let distinct: BTreeSet<Atom> = tuple.iter().copied().collect();
        if distinct.len() != tuple.len() {
            return Err(OrbitError::NotInjective(schema.id.clone()));
        }
        let tuple = schema.canonical(&tuple);
        Ok(OrbitElement { schema, tuple })
    }

    pub fn schema(&self) -> &Arc<OrbitSchema> {
        &self.schema
    }

    pub fn schema_id(&self) -> &str {
        &self.schema.id
    }

    /// The canonical tuple.
    pub fn tuple(&self) -> &[Atom] {
        &self.tuple
    }
}

impl PartialEq for OrbitElement {
    fn eq(&self, other: &Self) -> bool {
        self.schema.id == other.schema.id && self.tuple == other.tuple
    }
}

impl Eq for OrbitElement {}

impl std::hash::Hash for OrbitElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.schema.id.hash(state);
        self.tuple.hash(state);
    }
}

impl Nominal for OrbitElement {
    fn act(&self, p: &Perm) -> Self {
        let tuple: Vec<Atom> = self.tuple.iter().map(|&a| p.apply(a)).collect();
        OrbitElement {
            tuple: self.schema.canonical(&tuple),
            schema: self.schema.clone(),
        }
    }

    fn support(&self) -> AtomSet {
        self.tuple.iter().copied().collect()
    }
}

impl fmt::Display for OrbitElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.schema.id)?;
        for (i, a) in self.tuple.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

pub fn elem_eq(e1: &OrbitElement, e2: &OrbitElement) -> bool {
    e1 == e2
}
