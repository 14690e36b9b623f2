//! Reading a coalgebra from its text format, checking it against its
//! stabilizers, and converting term graphs to coalgebras and back.

use ratlam::coalgebra::{
    c_construct, graph_to_coalgebra, instantiate, parse_coalgebra, parse_element, print_coalgebra,
    CarrierMode,
};
use ratlam::syntax::parse_term;
use ratlam::{alpha_bisim, graph_of, print_term, Interner};

const STREAM: &str = "\
# an infinite spine of abstractions, each applying the outer variable
orbit top arity=0
orbit body arity=1
orbit var arity=1
step top = abs fresh body(fresh)
step body = app var(1) top()
step var = var 1
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c = parse_coalgebra(STREAM)?;
    let root = parse_element("top()", c.carrier())?;
    let g = c_construct(&instantiate(&c), &root, CarrierMode::Enumerate)?;
    println!(
        "top() unfolds to {}",
        print_term(&g.to_mu_term(), &Interner::new())
    );

    let bad = "orbit p arity=2 stab=(1 2)\nstep p = var 1\n";
    match parse_coalgebra(bad) {
        Ok(_) => println!("unexpectedly accepted"),
        Err(e) => println!("rejected: {e}"),
    }

    let (t, names) = parse_term("mu a. \\x. mu b. \\y. #a #b")?;
    let g = graph_of(&t);
    let (c, root) = graph_to_coalgebra(&g);
    print!("\n{}", print_coalgebra(&c));
    println!("root element: {root}");
    let back = c_construct(&instantiate(&c), &root, CarrierMode::Reachable)?;
    println!("rebuilt: {}", print_term(&back.to_mu_term(), &names));
    println!("same tree: {}", alpha_bisim(&g, &back));
    Ok(())
}
