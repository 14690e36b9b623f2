//! Finite presentations of orbit-finite sets: injective tuples modulo a
//! stabilizer, bounded enumeration and the per-support count.

use ratlam::orbit::{count_same_support, OrbitSchema, OrbitSet};
use ratlam::{Atom, AtomSet, Nominal, Perm};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let set = OrbitSet::new(vec![
        OrbitSchema::trivial("pair", 2),
        OrbitSchema::symmetric("edge", 2),
    ])?;
    let w: AtomSet = (0..3).map(Atom).collect();

    for schema in set.schemas() {
        let inside = OrbitSet::new(vec![(**schema).clone()])?.enumerate_support_in(&w);
        let listed: Vec<String> = inside.iter().map(|e| e.to_string()).collect();
        println!(
            "{:>4}: {} elements in {w}: {}",
            schema.id,
            inside.len(),
            listed.join(" ")
        );
        let s: AtomSet = [Atom(0), Atom(1)].into_iter().collect();
        println!(
            "      with support exactly {s}: {}",
            count_same_support(schema, &s)?
        );
    }

    let e = set.element("edge", vec![Atom(2), Atom(0)])?;
    let p = Perm::swap(Atom(0), Atom(5));
    println!("{e} moved by {p} is {}", e.act(&p));
    Ok(())
}
