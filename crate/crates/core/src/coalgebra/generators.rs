use std::collections::HashMap;

use super::{StepView, SymbolicCoalgebra, Target};
use crate::graph::{Node, NodeId, TermGraph};
use crate::nominal::Atom;
use crate::orbit::{OrbitElement, OrbitSchema, OrbitSet};

/// Variables plus ordered pairs of distinct variables, each pair stepping to the
/// application of its two components. The root is the pair `(v0, v1)`.
pub fn gen_pair() -> (SymbolicCoalgebra, OrbitElement) {
    let carrier = OrbitSet::new(vec![
        OrbitSchema::trivial("var", 1),
        OrbitSchema::trivial("pair", 2),
    ])
    .expect("static orbit set");
    let steps = vec![
        ("var".to_string(), StepView::Var(0)),
        (
            "pair".to_string(),
            StepView::App(Target::slots("var", [0]), Target::slots("var", [1])),
        ),
    ];
    let c = SymbolicCoalgebra::new(carrier, steps).expect("static coalgebra");
    let root = c
        .carrier()
        .element("pair", vec![Atom(0), Atom(1)])
        .expect("injective tuple");
    (c, root)
}

/// `2·m! + Σ_{i=1..ℓ} m!/(m − 2^{i−1})!` with `m = 2^{ℓ−1}`: the number of
/// distinct subtrees of the root of [`gen_rsigma`].
///
/// # Panics
///
/// If `ell` is 0 or the result does not fit in a `u128` (`ell > 6`).
pub fn rsigma_count(ell: u32) -> u128 {
    assert!((1..=6).contains(&ell), "ell must be in 1..=6");
    let m = 1u128 << (ell - 1);
    let fact = |n: u128| (1..=n).product::<u128>();
    let falling = |n: u128, k: u128| ((n - k + 1)..=n).product::<u128>();
    2 * fact(m) + (1..=ell).map(|i| falling(m, 1 << (i - 1))).sum::<u128>()
}

/// The graph of `r_id` over the atoms `v1 … vm`, `m = 2^{ℓ−1}`.
///
/// For every permutation σ of the atoms, `r_σ = h_σ @ b_σ` and
/// `h_σ = r_{σ∘(1 2)} @ r_{σ∘(1 … m)}`, where `b_σ` is the complete binary tree
/// of applications whose leaves read `σv1 … σvm`. Equal subtrees share a node.
pub fn gen_rsigma(ell: u32) -> TermGraph {
    assert!((1..=4).contains(&ell), "ell must be in 1..=4");
    let m = 1usize << (ell - 1);
    let mut b = RsigmaBuilder {
        m,
        nodes: Vec::new(),
        r_nodes: HashMap::new(),
        fronts: HashMap::new(),
        pending: Vec::new(),
    };
    let id: Vec<usize> = (0..m).collect();
    let root = b.r(&id);
    while let Some((sigma, r_id, h_id)) = b.pending.pop() {
        let swap12 = if m >= 2 {
            compose(&sigma, &transposition(m))
        } else {
            sigma.clone()
        };
        let rotate = compose(&sigma, &rotation(m));
        let left = b.r(&swap12);
        let right = b.r(&rotate);
        b.nodes[h_id] = Node::App(left, right);
        let front: Vec<Atom> = sigma.iter().map(|&i| Atom(i + 1)).collect();
        let binary = b.binary(&front);
        b.nodes[r_id] = Node::App(h_id, binary);
    }
    TermGraph::new(b.nodes, root).expect("all nodes filled")
}

struct RsigmaBuilder {
    m: usize,
    nodes: Vec<Node>,
    r_nodes: HashMap<Vec<usize>, NodeId>,
    fronts: HashMap<Vec<Atom>, NodeId>,
    pending: Vec<(Vec<usize>, NodeId, NodeId)>,
}

impl RsigmaBuilder {
    fn r(&mut self, sigma: &[usize]) -> NodeId {
        debug_assert_eq!(sigma.len(), self.m);
        if let Some(&id) = self.r_nodes.get(sigma) {
            return id;
        }
        let r_id = self.nodes.len();
        let h_id = r_id + 1;
        self.nodes.push(Node::Bottom);
        self.nodes.push(Node::Bottom);
        self.r_nodes.insert(sigma.to_vec(), r_id);
        self.pending.push((sigma.to_vec(), r_id, h_id));
        r_id
    }

    fn binary(&mut self, front: &[Atom]) -> NodeId {
        if let Some(&id) = self.fronts.get(front) {
            return id;
        }
        let node = if front.len() == 1 {
            Node::Var(front[0])
        } else {
            let (l, r) = front.split_at(front.len() / 2);
            let l = self.binary(l);
            Node::App(l, self.binary(r))
        };
        let id = self.nodes.len();
        self.nodes.push(node);
        self.fronts.insert(front.to_vec(), id);
        id
    }
}

/// `(σ∘τ)(i) = σ(τ(i))`
fn compose(sigma: &[usize], tau: &[usize]) -> Vec<usize> {
    tau.iter().map(|&i| sigma[i]).collect()
}

fn transposition(m: usize) -> Vec<usize> {
    let mut t: Vec<usize> = (0..m).collect();
    t.swap(0, 1);
    t
}

fn rotation(m: usize) -> Vec<usize> {
    (0..m).map(|i| (i + 1) % m).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::subtree_count;

    #[test]
    fn closed_form_values() {
        assert_eq!(rsigma_count(1), 3);
        assert_eq!(rsigma_count(2), 8);
        assert_eq!(rsigma_count(3), 88);
    }

    #[test]
    fn small_generators_match_closed_form() {
        assert_eq!(subtree_count(&gen_rsigma(1)), 3);
        assert_eq!(subtree_count(&gen_rsigma(2)), 8);
    }

    #[test]
    fn pair_has_two_orbits() {
        let (c, root) = gen_pair();
        assert_eq!(c.orbit_count(), 2);
        assert_eq!(root.to_string(), "pair(v0,v1)");
    }
}
