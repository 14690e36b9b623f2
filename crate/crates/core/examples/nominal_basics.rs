//! Atoms, permutations, support and abstraction equality.

use ratlam::nominal::abstraction_eq;
use ratlam::{Atom, AtomSet, FiniteTerm, Nominal, Perm};

fn main() {
    let (x, y, z) = (Atom(0), Atom(1), Atom(2));

    let p = Perm::swap(x, y).compose(&Perm::swap(y, z));
    println!("p = {p}, p^-1 = {}", p.inverse());
    for a in [x, y, z] {
        println!("  p({a}) = {}", p.apply(a));
    }

    // λy. x y has support {x}; renaming moves it along with p
    let t = FiniteTerm::lam(y, FiniteTerm::app(FiniteTerm::var(x), FiniteTerm::var(y)));
    println!(
        "supp(t) = {}, supp(p·t) = {}",
        t.support(),
        t.act(&p).support()
    );

    let used: AtomSet = [x, y, Atom(3)].into_iter().collect();
    println!("least atom fresh for {used}: {}", used.least_fresh());

    let vx = FiniteTerm::var(x);
    let vy = FiniteTerm::var(y);
    println!("<x>x = <y>y ? {}", abstraction_eq(x, &vx, y, &vy));
    println!("<x>y = <y>x ? {}", abstraction_eq(x, &vy, y, &vx));
}
