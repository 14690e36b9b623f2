//! A family of rational trees whose number of distinct subtrees grows
//! factorially while the number of orbits grows linearly.
//!
//! `cargo run --release --example rsigma -- 4`

use std::time::Instant;

use ratlam::coalgebra::{gen_rsigma, rsigma_count, subtree_orbit_count};
use ratlam::subtree_count;

fn main() {
    let max: u32 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(3);
    println!(
        "{:>3} {:>7} {:>10} {:>10} {:>7}",
        "l", "nodes", "subtrees", "formula", "orbits"
    );
    for ell in 1..=max.min(4) {
        let start = Instant::now();
        let g = gen_rsigma(ell);
        let count = subtree_count(&g);
        // orbit detection tries every renaming of the free atoms, so stop at l = 3
        let orbits = if ell <= 3 {
            subtree_orbit_count(&g).to_string()
        } else {
            "-".into()
        };
        println!(
            "{ell:>3} {:>7} {count:>10} {:>10} {orbits:>7}   ({:.2?})",
            g.len(),
            rsigma_count(ell),
            start.elapsed()
        );
    }
}
