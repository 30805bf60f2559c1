//! Jacket genera, the degree, and melonic recognition on a few graphs,
//! followed by the melon census.
//!
//! cargo run --release --example melons

use tensortrack::graph::{builtin, ColoredGraph};
use tensortrack::melonic::{degree, insert_melon, melon_census, melonic_reduction};

fn describe(name: &str, g: &ColoredGraph) -> tensortrack::Result<()> {
    let r = degree(g)?;
    let genera: Vec<String> = r.genera.iter().map(|(_, g)| g.to_string()).collect();
    let m = melonic_reduction(g);
    println!(
        "{name:<20} rank {} pairs {} genera [{}] ω = {} melonic = {} ({} removals)",
        g.rank(),
        g.pairs(),
        genera.join(" "),
        r.degree,
        m.melonic,
        m.trace.len()
    );
    Ok(())
}

fn main() -> tensortrack::Result<()> {
    let dipole = ColoredGraph::dipole(4);
    describe("dipole", &dipole)?;
    let mut g = dipole.clone();
    for (color, white) in [(0, 1), (2, 1), (1, 3)] {
        g = insert_melon(&g, color, white)?;
    }
    describe("three insertions", &g)?;
    describe("quartic melonic", &builtin::quartic_melonic(4, 0))?;
    describe("torus", &builtin::torus())?;
    describe("cube", &builtin::cube())?;
    let cube_closure = builtin::cube().closure(&[0, 1, 2, 3])?;
    describe("cube closed", &cube_closure)?;
    let twisted = builtin::cube().closure(&[1, 0, 3, 2])?;
    describe("cube closed, twisted", &twisted)?;

    for k in [3, 4] {
        let counts = (1..=4).map(|p| melon_census(k, p, 100_000_000)).collect::<tensortrack::Result<Vec<_>>>()?;
        println!("melons of rank {k}, 1..=4 pairs: {counts:?}");
    }
    Ok(())
}
