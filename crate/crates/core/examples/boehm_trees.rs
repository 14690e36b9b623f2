//! Head reduction and Böhm trees: a term with a rational Böhm tree, one whose
//! Böhm tree keeps growing, and one without a head-normal form.

use ratlam::boehm::{
    bt_graph, bt_truncate, gen_s, gen_u, head_reduce, BtBudget, BtGraph, HeadResult,
};
use ratlam::syntax::print_finite;
use ratlam::{print_term, subtree_count, Atom, FiniteTerm, Interner, TermGraph};

fn main() {
    let names = Interner::new();
    let budget = BtBudget::default();

    let s = gen_s();
    println!("s = {}", print_finite(&s, &names));
    if let HeadResult::Hnf(h) = head_reduce(&s, budget.fuel) {
        println!("  head-normal form: {}", print_finite(&h.to_term(), &names));
    }
    match bt_graph(&s, budget) {
        BtGraph::Rational(g) => println!(
            "  BT(s) = {}",
            print_term(&g.minimize().to_mu_term(), &names)
        ),
        BtGraph::Unknown => println!("  BT(s) not found within budget"),
    }

    let ux = FiniteTerm::app(gen_u(), FiniteTerm::var(Atom(5)));
    println!(
        "\nu v5: BT rational within {} states? {}",
        budget.states,
        bt_graph(&ux, budget).graph().is_some()
    );
    for depth in [4, 6, 8] {
        let prefix = bt_truncate(&ux, BtBudget { depth, ..budget });
        let count = subtree_count(&TermGraph::from_finite(&prefix));
        println!(
            "  depth {depth}: {count:>3} subtrees  {}",
            print_finite(&prefix, &names)
        );
    }

    let half = FiniteTerm::lam(
        Atom(0),
        FiniteTerm::app(FiniteTerm::var(Atom(0)), FiniteTerm::var(Atom(0))),
    );
    let omega = FiniteTerm::app(half.clone(), half);
    println!(
        "\nBT(omega) = {}",
        print_finite(&bt_truncate(&omega, budget), &names)
    );
}
