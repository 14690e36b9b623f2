//! The two-orbit coalgebra of variables and ordered pairs, turned into a finite
//! term graph by the bounded-name construction.

use ratlam::coalgebra::{
    c_construct, gen_pair, instantiate, print_coalgebra, size_bound, CarrierMode,
};
use ratlam::{print_term, subtree_count, Interner};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (c, root) = gen_pair();
    print!("{}", print_coalgebra(&c));
    let cc = instantiate(&c);
    let names = Interner::new();

    for mode in [CarrierMode::Enumerate, CarrierMode::Reachable] {
        let g = c_construct(&cc, &root, mode)?;
        println!(
            "{mode:?}: {} nodes (bound {}), root unfolds to {}, {} subtrees",
            g.len(),
            size_bound(c.orbit_count(), c.carrier().max_arity()),
            print_term(&g.to_mu_term(), &names),
            subtree_count(&g)
        );
    }
    Ok(())
}
