//! Capture-avoiding substitution on finite terms and on rational trees.

use ratlam::subst::{subst_finite, subst_rational};
use ratlam::syntax::{parse_finite_with, parse_term_with, print_finite};
use ratlam::{graph_of, print_term, Interner};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut names = Interner::new();
    let t = parse_finite_with("\\y. x y", &mut names)?;
    let s = parse_finite_with("y", &mut names)?;
    let x = names.intern("x");
    let r = subst_finite(&t, x, &s);
    println!("(\\y. x y)[x := y] = {}", print_finite(&r, &names));

    let cases = [
        ("mu r. x #r", "x", "y"),
        ("\\x. z x", "z", "x"),
        ("mu r. \\x. z (x #r)", "z", "x x"),
    ];
    for (t, v, s) in cases {
        let mut names = Interner::for_sources([t, s]);
        let tg = graph_of(&parse_term_with(t, &mut names)?);
        let sg = graph_of(&parse_term_with(s, &mut names)?);
        let va = names.intern(v);
        let out = subst_rational(&tg, va, &sg).minimize();
        println!(
            "({t})[{v} := {s}] = {}",
            print_term(&out.to_mu_term(), &names)
        );
    }
    Ok(())
}
