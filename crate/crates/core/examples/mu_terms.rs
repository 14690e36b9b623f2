//! Parsing μ-terms into term graphs, truncating them, counting subtrees and
//! deciding α-equivalence of the infinite trees they denote.
//!
//! Run with a term of your own: `cargo run --example mu_terms -- 'mu r. \x. x #r'`

use ratlam::syntax::parse_term_with;
use ratlam::{alpha_bisim, graph_of, print_term, subtree_count, Interner};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let src = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "\\x. mu b. (\\x. #b) (x #b)".to_string());
    let mut names = Interner::for_sources([src.as_str()]);
    let g = graph_of(&parse_term_with(&src, &mut names)?);

    println!("term:     {src}");
    print!("graph:\n{}", g.node_listing(&names));
    println!("printed:  {}", print_term(&g.to_mu_term(), &names));
    println!("subtrees: {}", subtree_count(&g));
    for d in 1..=5 {
        println!(
            "depth {d}:  {}",
            ratlam::syntax::print_finite(&g.truncate(d), &names)
        );
    }

    let pairs = [
        ("mu r. f #r", "mu r. f (f #r)"),
        ("mu r. \\x. x #r", "mu r. \\y. y #r"),
        ("\\x. \\y. x", "\\x. \\y. y"),
    ];
    for (a, b) in pairs {
        let mut names = Interner::for_sources([a, b]);
        let ga = graph_of(&parse_term_with(a, &mut names)?);
        let gb = graph_of(&parse_term_with(b, &mut names)?);
        println!("{a}  ~  {b}: {}", alpha_bisim(&ga, &gb));
    }
    Ok(())
}
