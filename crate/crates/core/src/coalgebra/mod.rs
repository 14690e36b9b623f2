//! Orbit-finite coalgebras for `V + [V]X + X×X` (optionally with ⊥), and the
//! construction that turns them into finite term graphs.
//!
//! A [`SymbolicCoalgebra`] gives its structure map one orbit at a time, as a
//! [`StepView`] over slot positions. [`instantiate`] turns it into a
//! [`ConcreteCoalgebra`] acting on actual elements. [`c_construct`] restricts
//! any [`Coalgebra`] to the elements whose support lies in a pool `W` of `m+1`
//! atoms (where `m` bounds all supports) and reads off a finite graph whose
//! unfolding is α-equivalent to the behaviour of the root.

mod format;
mod generators;

use std::collections::{HashMap, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

pub use format::{parse_coalgebra, parse_element, print_coalgebra};
pub use generators::{gen_pair, gen_rsigma, rsigma_count};

use crate::error::CoalgebraError;
use crate::graph::{alpha_bisim_from, Node, NodeId, TermGraph};
use crate::nominal::{abstraction_eq, Atom, AtomSet, Nominal, Perm};
use crate::orbit::{OrbitElement, OrbitSchema, OrbitSet};
use crate::term::FiniteTerm;

/// One observation: a variable, ⊥, an abstraction `⟨v⟩x`, or a pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Step<S> {
    Var(Atom),
    Bottom,
    Abs(Atom, S),
    App(S, S),
}

/// An equivariant structure map on a nominal set of states.
pub trait Coalgebra {
    type State: Nominal + Clone + Eq + Hash + Debug;

    fn step(&self, x: &Self::State) -> Step<Self::State>;

    /// An upper bound on the support size of every state.
    fn support_bound(&self) -> usize;

    /// All states with support inside `w`, if the carrier can be enumerated.
    fn enumerate_support_in(&self, _w: &AtomSet) -> Option<Vec<Self::State>> {
        None
    }
}

/// Unfolds the behaviour of `x` to depth `d` (subtrees at depth `d` become ⊥),
/// using the binder names the steps themselves report.
pub fn unfold<C: Coalgebra>(c: &C, x: &C::State, d: usize) -> FiniteTerm {
    if d == 0 {
        return FiniteTerm::Bottom;
    }
    match c.step(x) {
        Step::Var(a) => FiniteTerm::Var(a),
        Step::Bottom => FiniteTerm::Bottom,
        Step::Abs(v, y) => FiniteTerm::lam(v, unfold(c, &y, d - 1)),
        Step::App(l, r) => FiniteTerm::app(unfold(c, &l, d - 1), unfold(c, &r, d - 1)),
    }
}

/// A slot of the source element, or the single fresh name of an abstraction step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SlotRef {
    Slot(usize),
    Fresh,
}

/// A target element: an orbit together with, for each of its slots, where the
/// atom comes from. Slots are 0-based here and 1-based in the text format.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Target {
    pub schema: String,
    pub args: Vec<SlotRef>,
}

impl Target {
    pub fn new(schema: impl Into<String>, args: Vec<SlotRef>) -> Self {
        Target {
            schema: schema.into(),
            args,
        }
    }

    pub fn slots(schema: impl Into<String>, slots: impl IntoIterator<Item = usize>) -> Self {
        Target::new(schema, slots.into_iter().map(SlotRef::Slot).collect())
    }
}

/// The structure map on one orbit, expressed over slot positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum StepView {
    Var(usize),
    Bottom,
    Abs { binder: SlotRef, target: Target },
    App(Target, Target),
}

/// An orbit-finite coalgebra given schema by schema.
#[derive(Clone, Debug)]
pub struct SymbolicCoalgebra {
    carrier: OrbitSet,
    steps: Vec<StepView>,
}

impl SymbolicCoalgebra {
    /// Validates the step of every orbit, including invariance under the
    /// orbit's stabilizer.
    pub fn new(carrier: OrbitSet, steps: Vec<(String, StepView)>) -> Result<Self, CoalgebraError> {
        let mut by_id: HashMap<String, StepView> = HashMap::new();
        for (id, view) in steps {
            if carrier.get(&id).is_none() {
                return Err(crate::error::OrbitError::UnknownSchema(id).into());
            }
            if by_id.insert(id.clone(), view).is_some() {
                return Err(CoalgebraError::InvalidStep {
                    schema: id,
                    msg: "more than one step".into(),
                });
            }
        }
        let mut ordered = Vec::with_capacity(carrier.len());
        for schema in carrier.schemas() {
            let view = by_id
                .remove(&schema.id)
                .ok_or_else(|| CoalgebraError::MissingStep(schema.id.clone()))?;
            check_view(&carrier, schema, &view)?;
            ordered.push(view);
        }
        let me = SymbolicCoalgebra {
            carrier,
            steps: ordered,
        };
        me.check_well_defined()?;
        Ok(me)
    }

    pub fn carrier(&self) -> &OrbitSet {
        &self.carrier
    }

    pub fn orbit_count(&self) -> usize {
        self.carrier.len()
    }

    pub fn step_view(&self, id: &str) -> Option<&StepView> {
        self.carrier.index_of(id).map(|i| &self.steps[i])
    }

    pub fn steps(&self) -> impl Iterator<Item = (&OrbitSchema, &StepView)> {
        self.carrier
            .schemas()
            .iter()
            .map(|s| s.as_ref())
            .zip(self.steps.iter())
    }

    /// Adds orbits that the existing ones never reach.
    pub fn padded(&self, extra: Vec<(OrbitSchema, StepView)>) -> Result<Self, CoalgebraError> {
        let mut schemas: Vec<OrbitSchema> = self
            .carrier
            .schemas()
            .iter()
            .map(|s| (**s).clone())
            .collect();
        let mut steps: Vec<(String, StepView)> = self
            .steps()
            .map(|(s, v)| (s.id.clone(), v.clone()))
            .collect();
        for (s, v) in extra {
            steps.push((s.id.clone(), v));
            schemas.push(s);
        }
        SymbolicCoalgebra::new(OrbitSet::new(schemas)?, steps)
    }

    /// The step of the element of orbit `index` with atom tuple `tuple`.
    fn eval(&self, index: usize, tuple: &[Atom]) -> Step<OrbitElement> {
        let fresh = || tuple.iter().copied().collect::<AtomSet>().least_fresh();
        let resolve = |r: &SlotRef, fresh_atom: Atom| match *r {
            SlotRef::Slot(i) => tuple[i],
            SlotRef::Fresh => fresh_atom,
        };
        let build = |t: &Target, fresh_atom: Atom| {
            let atoms = t.args.iter().map(|r| resolve(r, fresh_atom)).collect();
            self.carrier
                .element(&t.schema, atoms)
                .expect("validated step targets are well-formed")
        };
        match &self.steps[index] {
            StepView::Var(i) => Step::Var(tuple[*i]),
            StepView::Bottom => Step::Bottom,
            StepView::App(l, r) => {
                let unused = Atom(usize::MAX);
                Step::App(build(l, unused), build(r, unused))
            }
            StepView::Abs { binder, target } => {
                let f = fresh();
                Step::Abs(resolve(binder, f), build(target, f))
            }
        }
    }

    fn check_well_defined(&self) -> Result<(), CoalgebraError> {
        for (index, schema) in self.carrier.schemas().iter().enumerate() {
            let generic: Vec<Atom> = (1..=schema.arity).map(Atom).collect();
            let base = self.eval(index, &generic);
            for g in &schema.stabilizer {
                let other = self.eval(index, &g.permute_tuple(&generic));
                if !step_eq(&base, &other) {
                    return Err(CoalgebraError::NotWellDefined(schema.id.clone()));
                }
            }
        }
        Ok(())
    }
}

fn step_eq<S: Nominal + PartialEq>(a: &Step<S>, b: &Step<S>) -> bool {
    match (a, b) {
        (Step::Abs(v1, x1), Step::Abs(v2, x2)) => abstraction_eq(*v1, x1, *v2, x2),
        _ => a == b,
    }
}

fn check_view(
    carrier: &OrbitSet,
    schema: &OrbitSchema,
    view: &StepView,
) -> Result<(), CoalgebraError> {
    let bad = |msg: &str| CoalgebraError::InvalidStep {
        schema: schema.id.clone(),
        msg: msg.to_string(),
    };
    let check_target = |t: &Target, fresh_ok: bool| -> Result<(), CoalgebraError> {
        let target = carrier
            .get(&t.schema)
            .ok_or_else(|| crate::error::OrbitError::UnknownSchema(t.schema.clone()))?;
        if t.args.len() != target.arity {
            return Err(bad(&format!(
                "target `{}` has arity {} but {} slots are given",
                t.schema,
                target.arity,
                t.args.len()
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for r in &t.args {
            match r {
                SlotRef::Slot(i) if *i >= schema.arity => return Err(bad("slot out of range")),
                SlotRef::Fresh if !fresh_ok => {
                    return Err(bad("`fresh` is only allowed under a fresh binder"))
                }
                _ => {}
            }
            if !seen.insert(*r) {
                return Err(bad("slot assignment is not injective"));
            }
        }
        Ok(())
    };
    match view {
        StepView::Var(i) if *i >= schema.arity => Err(bad("variable slot out of range")),
        StepView::Var(_) | StepView::Bottom => Ok(()),
        StepView::App(l, r) => {
            check_target(l, false)?;
            check_target(r, false)
        }
        StepView::Abs { binder, target } => {
            if let SlotRef::Slot(i) = binder {
                if *i >= schema.arity {
                    return Err(bad("binder slot out of range"));
                }
            }
            check_target(target, *binder == SlotRef::Fresh)
        }
    }
}

/// A symbolic coalgebra acting on concrete orbit elements.
#[derive(Clone, Debug)]
pub struct ConcreteCoalgebra {
    symbolic: SymbolicCoalgebra,
}

impl ConcreteCoalgebra {
    pub fn symbolic(&self) -> &SymbolicCoalgebra {
        &self.symbolic
    }

    pub fn carrier(&self) -> &OrbitSet {
        &self.symbolic.carrier
    }
}

impl Coalgebra for ConcreteCoalgebra {
    type State = OrbitElement;

    /// Substitutes the element's atoms into its orbit's step; a fresh binder is
    /// the least atom not in the element's support.
    fn step(&self, x: &OrbitElement) -> Step<OrbitElement> {
        let index = self
            .symbolic
            .carrier
            .index_of(x.schema_id())
            .expect("element belongs to this carrier");
        self.symbolic.eval(index, x.tuple())
    }

    fn support_bound(&self) -> usize {
        self.symbolic.carrier.max_arity()
    }

    fn enumerate_support_in(&self, w: &AtomSet) -> Option<Vec<OrbitElement>> {
        Some(self.symbolic.carrier.enumerate_support_in(w))
    }
}

pub fn instantiate(c: &SymbolicCoalgebra) -> ConcreteCoalgebra {
    ConcreteCoalgebra {
        symbolic: c.clone(),
    }
}

/// How the finite carrier of [`c_construct`] is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CarrierMode {
    /// Every element whose support lies in the pool `W`.
    Enumerate,
    /// Only the elements reached from the root.
    Reachable,
}

/// `n·(m+1)!`, the bound on the size of the enumerated carrier for `n` orbits
/// and support bound `m`.
pub fn size_bound(n: usize, m: usize) -> u128 {
    (1..=(m as u128 + 1)).product::<u128>() * n as u128
}

/// The pool `W`: the root's support padded with least fresh atoms to `m + 1` atoms.
pub fn name_pool(root_support: &AtomSet, m: usize) -> AtomSet {
    root_support.padded_to(m + 1)
}

/// Builds a finite term graph whose unfolding from the returned root is
/// α-equivalent to the behaviour of `root`.
///
/// Each carrier element becomes one node. A variable step stays a variable, a
/// pair becomes an application, and an abstraction `⟨v⟩y'` becomes `λw` over
/// `(v w)·y'`, where `w` is the least atom of the pool not in the element's
/// support. In [`CarrierMode::Enumerate`] the graph contains every element of
/// the carrier, so it may have unreachable nodes.
pub fn c_construct<C: Coalgebra>(
    c: &C,
    root: &C::State,
    mode: CarrierMode,
) -> Result<TermGraph, CoalgebraError> {
    let m = c.support_bound();
    let supp = root.support();
    if supp.len() > m {
        return Err(CoalgebraError::SupportTooLarge(format!("{root:?}")));
    }
    let pool = name_pool(&supp, m);
    let mut builder = Builder::new(c, Some(pool), m);
    match mode {
        CarrierMode::Reachable => {
            builder.intern(root.clone(), true)?;
        }
        CarrierMode::Enumerate => {
            let all = c
                .enumerate_support_in(builder.pool.as_ref().expect("pool is set"))
                .ok_or(CoalgebraError::NotEnumerable)?;
            for x in all {
                builder.intern(x, true)?;
            }
            builder.closed = true;
        }
    }
    let root_id = builder
        .index
        .get(root)
        .copied()
        .ok_or_else(|| CoalgebraError::EscapesCarrier(format!("{root:?}")))?;
    builder.run(None)?;
    let graph = builder.finish(root_id);
    Ok(graph)
}

/// Reachable construction without a fixed pool: abstraction binders are renamed
/// to the least atom not in the element's support. Returns `Ok(None)` once more
/// than `max_states` states are discovered.
pub fn construct_bounded_states<C: Coalgebra>(
    c: &C,
    root: &C::State,
    max_states: usize,
) -> Option<TermGraph> {
    let mut builder = Builder::new(c, None, usize::MAX);
    builder.intern(root.clone(), true).ok()?;
    match builder.run(Some(max_states)) {
        Ok(true) => Some(builder.finish(0)),
        _ => None,
    }
}

struct Builder<'a, C: Coalgebra> {
    c: &'a C,
    pool: Option<AtomSet>,
    bound: usize,
    states: Vec<C::State>,
    index: HashMap<C::State, NodeId>,
    nodes: Vec<Node>,
    closed: bool,
}

impl<'a, C: Coalgebra> Builder<'a, C> {
    fn new(c: &'a C, pool: Option<AtomSet>, bound: usize) -> Self {
        Builder {
            c,
            pool,
            bound,
            states: Vec::new(),
            index: HashMap::new(),
            nodes: Vec::new(),
            closed: false,
        }
    }

    fn intern(&mut self, x: C::State, allow_new: bool) -> Result<NodeId, CoalgebraError> {
        if let Some(&id) = self.index.get(&x) {
            return Ok(id);
        }
        if !allow_new || self.closed {
            return Err(CoalgebraError::EscapesCarrier(format!("{x:?}")));
        }
        let supp = x.support();
        if supp.len() > self.bound {
            return Err(CoalgebraError::SupportTooLarge(format!("{x:?}")));
        }
        if let Some(pool) = &self.pool {
            if !supp.is_subset(pool) {
                return Err(CoalgebraError::EscapesCarrier(format!("{x:?}")));
            }
        }
        let id = self.states.len();
        self.states.push(x.clone());
        self.index.insert(x, id);
        self.nodes.push(Node::Bottom);
        Ok(id)
    }

    /// Processes states in discovery order; returns `Ok(false)` if the state
    /// limit is exceeded.
    fn run(&mut self, max_states: Option<usize>) -> Result<bool, CoalgebraError> {
        let mut queue: VecDeque<NodeId> = (0..self.states.len()).collect();
        while let Some(id) = queue.pop_front() {
            let x = self.states[id].clone();
            let before = self.states.len();
            let node = match self.c.step(&x) {
                Step::Var(a) => Node::Var(a),
                Step::Bottom => Node::Bottom,
                Step::App(l, r) => {
                    let l = self.intern(l, true)?;
                    Node::App(l, self.intern(r, true)?)
                }
                Step::Abs(v, y) => {
                    let supp = x.support();
                    let w = match &self.pool {
                        Some(pool) => pool
                            .iter()
                            .find(|a| !supp.contains(*a))
                            .ok_or_else(|| CoalgebraError::SupportTooLarge(format!("{x:?}")))?,
                        None => supp.least_fresh(),
                    };
                    let y = y.act(&Perm::swap(v, w));
                    Node::Lam(w, self.intern(y, true)?)
                }
            };
            self.nodes[id] = node;
            queue.extend(before..self.states.len());
            if let Some(limit) = max_states {
                if self.states.len() > limit {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn finish(self, root: NodeId) -> TermGraph {
        TermGraph::new(self.nodes, root).expect("all node references were interned")
    }
}

/// Turns a term graph into an orbit-finite coalgebra with one orbit per reachable
/// node. A node's slots are its free variables in ascending order; a λ-binder
/// becomes a fresh name. Returns the coalgebra and the element of the root.
pub fn graph_to_coalgebra(g: &TermGraph) -> (SymbolicCoalgebra, OrbitElement) {
    let fv = g.free_vars();
    let reach = g.reachable();
    let id = |n: NodeId| format!("n{n}");
    let schemas: Vec<OrbitSchema> = reach
        .iter()
        .map(|&n| OrbitSchema::trivial(id(n), fv[n].len()))
        .collect();
    let slot_of = |n: NodeId, a: Atom| fv[n].position(a).expect("atom is free in the node");
    let target = |src: NodeId, child: NodeId, bound: Option<Atom>| {
        let args = fv[child]
            .iter()
            .map(|a| {
                if Some(a) == bound {
                    SlotRef::Fresh
                } else {
                    SlotRef::Slot(slot_of(src, a))
                }
            })
            .collect();
        Target::new(id(child), args)
    };
    let steps = reach
        .iter()
        .map(|&n| {
            let view = match g.node(n) {
                Node::Var(a) => StepView::Var(slot_of(n, a)),
                Node::Bottom => StepView::Bottom,
                Node::App(l, r) => StepView::App(target(n, l, None), target(n, r, None)),
                Node::Lam(x, b) => StepView::Abs {
                    binder: SlotRef::Fresh,
                    target: target(n, b, Some(x)),
                },
            };
            (id(n), view)
        })
        .collect();
    let carrier = OrbitSet::new(schemas).expect("distinct ids and trivial stabilizers");
    let coalg = SymbolicCoalgebra::new(carrier, steps).expect("graph-derived steps are valid");
    let root = coalg
        .carrier()
        .element(&id(g.root()), fv[g.root()].iter().collect())
        .expect("root tuple matches its arity");
    (coalg, root)
}

/// Number of orbits of the nominal set formed by the α-classes of all subtrees
/// of the unfolding: two subtrees share an orbit when some renaming of free
/// variables makes them α-equivalent.
pub fn subtree_orbit_count(g: &TermGraph) -> usize {
    let g = g.minimize();
    let fv = g.free_vars();
    let mut reps: Vec<NodeId> = Vec::new();
    for n in g.reachable() {
        let known = reps.iter().any(|&r| same_orbit(&g, &fv, r, n));
        if !known {
            reps.push(n);
        }
    }
    reps.len()
}

fn same_orbit(g: &TermGraph, fv: &[AtomSet], a: NodeId, b: NodeId) -> bool {
    if fv[a].len() != fv[b].len()
        || std::mem::discriminant(&g.node(a)) != std::mem::discriminant(&g.node(b))
    {
        return false;
    }
    let from: Vec<Atom> = fv[a].iter().collect();
    let to: Vec<Atom> = fv[b].iter().collect();
    crate::orbit::SlotPerm::all(from.len())
        .into_iter()
        .any(|p| {
            let mut rho: Vec<(Atom, Atom)> = p
                .permute_tuple(&to)
                .into_iter()
                .zip(from.iter())
                .map(|(t, &f)| (f, t))
                .collect();
            rho.sort();
            alpha_bisim_from(g, fv, g, fv, a, b, rho)
        })
}
