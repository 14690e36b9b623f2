mod common;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use common::*;
use ratlam::boehm::{bt_graph, bt_truncate, head_reduce, BtBudget, BtGraph, HeadResult};
use ratlam::coalgebra::{c_construct, graph_to_coalgebra, instantiate, CarrierMode};
use ratlam::nominal::{abstraction_eq, abstraction_eq_with_witness};
use ratlam::orbit::elem_eq;
use ratlam::syntax::{parse_term, print_finite};
use ratlam::{
    alpha_bisim, alpha_eq_finite, graph_of, print_term, subtree_count, Atom, AtomSet, FiniteTerm,
    Interner, Nominal, Perm, TermGraph,
};

fn perm() -> impl Strategy<Value = Perm> {
    Just((0..7usize).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|images| {
            Perm::from_map(
                images
                    .into_iter()
                    .enumerate()
                    .map(|(i, j)| (Atom(i), Atom(j))),
            )
            .unwrap()
        })
}

fn finite_term() -> impl Strategy<Value = FiniteTerm> {
    let leaf = prop_oneof![
        8 => (0..5usize).prop_map(|i| FiniteTerm::var(Atom(i))),
        1 => Just(FiniteTerm::Bottom),
    ];
    leaf.prop_recursive(6, 40, 2, |inner| {
        prop_oneof![
            (0..5usize, inner.clone()).prop_map(|(x, b)| FiniteTerm::lam(Atom(x), b)),
            (inner.clone(), inner).prop_map(|(l, r)| FiniteTerm::app(l, r)),
        ]
    })
}

fn graph(max: usize) -> impl Strategy<Value = TermGraph> {
    (any::<u64>(), 1..=max)
        .prop_map(|(seed, n)| random_graph(&mut StdRng::seed_from_u64(seed), n, 4))
}

/// Full normal-order normalization on locally nameless terms, with a step limit.
fn normalize(t: &Db, fuel: &mut usize) -> Option<Db> {
    fn shift(t: &Db, by: isize, cutoff: usize) -> Db {
        match t {
            Db::Bound(i) if *i >= cutoff => Db::Bound((*i as isize + by) as usize),
            Db::Lam(b) => Db::Lam(Box::new(shift(b, by, cutoff + 1))),
            Db::App(l, r) => Db::App(
                Box::new(shift(l, by, cutoff)),
                Box::new(shift(r, by, cutoff)),
            ),
            other => other.clone(),
        }
    }
    fn subst(t: &Db, j: usize, s: &Db) -> Db {
        match t {
            Db::Bound(i) if *i == j => s.clone(),
            Db::Lam(b) => Db::Lam(Box::new(subst(b, j + 1, &shift(s, 1, 0)))),
            Db::App(l, r) => Db::App(Box::new(subst(l, j, s)), Box::new(subst(r, j, s))),
            other => other.clone(),
        }
    }
    fn beta(body: &Db, arg: &Db) -> Db {
        shift(&subst(body, 0, &shift(arg, 1, 0)), -1, 0)
    }
    fn step(t: &Db) -> Option<Db> {
        match t {
            Db::App(l, r) => match l.as_ref() {
                Db::Lam(b) => Some(beta(b, r)),
                _ => step(l)
                    .map(|l2| Db::App(Box::new(l2), r.clone()))
                    .or_else(|| step(r).map(|r2| Db::App(l.clone(), Box::new(r2)))),
            },
            Db::Lam(b) => step(b).map(|b2| Db::Lam(Box::new(b2))),
            _ => None,
        }
    }
    let mut cur = t.clone();
    loop {
        match step(&cur) {
            None => return Some(cur),
            Some(next) => {
                if *fuel == 0 {
                    return None;
                }
                *fuel -= 1;
                cur = next;
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn group_laws(p in perm(), q in perm(), r in perm()) {
        let id = Perm::identity();
        prop_assert_eq!(p.compose(&q).compose(&r), p.compose(&q.compose(&r)));
        prop_assert_eq!(p.compose(&id), p.clone());
        prop_assert_eq!(p.compose(&p.inverse()), id);
        for a in 0..9 {
            prop_assert_eq!(p.compose(&q).apply(Atom(a)), p.apply(q.apply(Atom(a))));
        }
    }

    #[test]
    fn term_support_is_equivariant(t in finite_term(), p in perm()) {
        prop_assert_eq!(t.act(&p).support(), t.support().act(&p));
        prop_assert_eq!(t.act(&p).free_vars().len(), t.free_vars().len());
    }

    #[test]
    fn support_law(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let c = random_coalgebra(&mut rng, 3, 3);
        for e in random_roots(&mut rng, &c) {
            // a permutation that only moves atoms outside the support
            let outside: Vec<Atom> = (0..10).map(Atom).filter(|a| !e.support().contains(*a)).collect();
            let p = Perm::swap(outside[0], outside[1]).compose(&Perm::swap(outside[2], outside[3]));
            prop_assert_eq!(e.act(&p), e.clone());
            let q = random_perm(&mut rng, 7);
            let f = e.act(&q);
            prop_assert!(elem_eq(&e, &e));
            prop_assert_eq!(elem_eq(&e, &f), elem_eq(&e.act(&q), &f.act(&q)));
        }
    }

    #[test]
    fn abstraction_eq_is_witness_independent(t in finite_term(), u in finite_term(), v1 in 0..5usize, v2 in 0..5usize) {
        let (v1, v2) = (Atom(v1), Atom(v2));
        let eq = |a: &FiniteTerm, b: &FiniteTerm| a == b;
        let mut avoid = t.atoms().union(&u.atoms());
        avoid.insert(v1);
        avoid.insert(v2);
        let base = abstraction_eq(v1, &t, v2, &u);
        let mut z = avoid.least_fresh();
        for _ in 0..3 {
            prop_assert_eq!(abstraction_eq_with_witness(v1, &t, v2, &u, z, eq), base);
            avoid.insert(z);
            z = avoid.least_fresh();
        }
        prop_assert!(abstraction_eq(v1, &t, v1, &t));
        prop_assert_eq!(abstraction_eq(v1, &t, v2, &u), abstraction_eq(v2, &u, v1, &t));
    }

    #[test]
    fn finite_alpha_matches_locally_nameless(t in finite_term(), p in perm()) {
        let renamed = t.alpha_canonical();
        prop_assert!(alpha_eq_finite(&t, &renamed));
        prop_assert_eq!(db(&t), db(&renamed));
        prop_assert_eq!(renamed.alpha_canonical(), renamed.clone());
        let moved = t.act(&p);
        prop_assert_eq!(alpha_eq_finite(&t, &moved), db(&t) == db(&moved));
    }

    #[test]
    fn printing_roundtrips(t in finite_term()) {
        let names = Interner::new();
        let printed = print_finite(&t, &names);
        let (again, _) = parse_term(&printed).unwrap();
        prop_assert_eq!(again.to_finite().unwrap(), t);
    }

    #[test]
    fn graph_printing_roundtrips(g in graph(5)) {
        let names = Interner::new();
        let printed = print_term(&g.to_mu_term(), &names);
        let (again, _) = parse_term(&printed).unwrap();
        prop_assert!(alpha_bisim(&g, &graph_of(&again)), "{}", printed);
    }

    #[test]
    fn subtree_count_matches_oracle(g in graph(8)) {
        prop_assert_eq!(subtree_count(&g), subtree_oracle(&g));
        prop_assert_eq!(subtree_count(&g.minimize()), subtree_count(&g));
    }

    #[test]
    fn alpha_bisim_matches_truncations(a in graph(4), b in graph(4), p in perm()) {
        let bisim = alpha_bisim(&a, &b);
        prop_assert_eq!(bisim, alpha_eq_by_truncation(&a, &b, 24));
        prop_assert!(alpha_bisim(&a, &a.minimize()));
        prop_assert_eq!(alpha_bisim(&a.act(&p), &b.act(&p)), bisim);
    }

    #[test]
    fn construction_is_equivariant(g in graph(5), p in perm()) {
        let (c, root) = graph_to_coalgebra(&g);
        let cc = instantiate(&c);
        let lhs = c_construct(&cc, &root.act(&p), CarrierMode::Reachable).unwrap();
        let rhs = c_construct(&cc, &root, CarrierMode::Reachable).unwrap().act(&p);
        prop_assert!(alpha_bisim(&lhs, &rhs));
        let full = c_construct(&cc, &root, CarrierMode::Enumerate).unwrap();
        prop_assert!(full.support().is_subset(&root.support()));
    }

    #[test]
    fn truncation_support_shrinks(g in graph(6), d in 0..8usize) {
        prop_assert!(g.truncate(d).free_vars().is_subset(&g.support()));
    }
}

fn combinators() -> Vec<FiniteTerm> {
    let srcs = [
        "(\\x. \\y. \\z. x z (y z)) (\\x. \\y. x) (\\x. \\y. x) a",
        "(\\x. \\y. x) a b",
        "(\\x. x) (\\x. x) a",
        "(\\x. \\y. \\z. x z (y z)) (\\x. \\y. x) (\\x. x) (\\q. q)",
        "(\\f. \\x. f (f x)) (\\f. \\x. f (f x)) g a",
        "(\\x. \\y. y x) a (\\z. z z)",
        "\\y. (\\x. \\y. x y) y",
        "(\\x. \\y. \\z. x z (y z)) (\\x. \\y. \\z. x z (y z)) (\\x. \\y. x) a b",
    ];
    let mut names = Interner::for_sources(srcs);
    srcs.iter()
        .map(|s| ratlam::syntax::parse_finite_with(s, &mut names).unwrap())
        .collect()
}

#[test]
fn head_reduction_agrees_with_full_normalization() {
    for t in combinators() {
        let mut fuel = 500;
        let nf = normalize(&db(&t), &mut fuel).expect("normalizes");
        let hnf = match head_reduce(&t, 500) {
            HeadResult::Hnf(h) => h.to_term(),
            HeadResult::Bottom(v) => panic!("{t:?}: {v:?}"),
        };
        let mut fuel = 500;
        assert_eq!(normalize(&db(&hnf), &mut fuel).unwrap(), nf);
        let bt = bt_truncate(
            &t,
            BtBudget {
                fuel: 500,
                depth: 30,
                states: 64,
            },
        );
        assert_eq!(
            db(&bt),
            nf,
            "Böhm tree of a normalizing term is its normal form"
        );
    }
}

#[test]
fn bt_prefixes_are_monotone() {
    let t = FiniteTerm::app(ratlam::boehm::gen_u(), FiniteTerm::var(Atom(7)));
    let budget = |fuel, depth| BtBudget {
        fuel,
        depth,
        states: 64,
    };
    for d in 1..8 {
        let shallow = bt_truncate(&t, budget(100, d));
        let deep = bt_truncate(&t, budget(100, d + 1));
        assert_eq!(db(&deep.truncate(d)), db(&shallow));
        let starved = bt_truncate(&t, budget(3, d));
        assert!(refines(&shallow, &starved), "fuel 3 at depth {d}");
    }
}

/// `a` agrees with `b` wherever `b` is not ⊥.
fn refines(a: &FiniteTerm, b: &FiniteTerm) -> bool {
    match (a, b) {
        (_, FiniteTerm::Bottom) => true,
        (FiniteTerm::Var(x), FiniteTerm::Var(y)) => x == y,
        (FiniteTerm::Lam(x, p), FiniteTerm::Lam(y, q)) => x == y && refines(p, q),
        (FiniteTerm::App(p1, p2), FiniteTerm::App(q1, q2)) => refines(p1, q1) && refines(p2, q2),
        _ => false,
    }
}

#[test]
fn bt_graph_agrees_with_prefixes() {
    let mut names = Interner::new();
    let terms = [
        ratlam::boehm::gen_s(),
        ratlam::syntax::parse_finite_with("\\x. x", &mut names).unwrap(),
        ratlam::syntax::parse_finite_with("(\\x. \\y. x) a ((\\x. x x) (\\x. x x))", &mut names)
            .unwrap(),
        FiniteTerm::app(ratlam::boehm::y_combinator(), FiniteTerm::var(Atom(9))),
    ];
    for t in &terms {
        let b = BtBudget {
            fuel: 200,
            depth: 10,
            states: 64,
        };
        match bt_graph(t, b) {
            BtGraph::Rational(g) => {
                for d in 0..=b.depth {
                    assert_eq!(
                        db(&g.truncate(d)),
                        db(&bt_truncate(t, BtBudget { depth: d, ..b }))
                    );
                }
            }
            BtGraph::Unknown => panic!("{t:?} should have a rational Böhm tree"),
        }
    }
}

#[test]
fn mu_unfolding_matches_graph_truncation() {
    let (terms, _) = corpus_terms();
    for t in &terms {
        let g = graph_of(t);
        for d in 0..10 {
            assert_eq!(g.truncate(d), mu_unfold(t, d));
        }
    }
    assert!(terms.len() >= 30);
    let fv: AtomSet = corpus()
        .iter()
        .flat_map(|g| g.support().iter().collect::<Vec<_>>())
        .collect();
    assert!(!fv.is_empty());
}
