//! Reading and writing GCT files, canonical forms, faces, and DOT export.
//!
//! cargo run --release --example graph_files

use tensortrack::graph::{export_dot, parse_gct, to_gct};

const K33: &str = "\
# K_3,3 with three colors
rank 3
pairs 3
edge 0 1 1
edge 0 2 2
edge 0 3 3
edge 1 1 2
edge 1 2 3
edge 1 3 1
edge 2 1 3
edge 2 2 1
edge 2 3 2
";

fn main() -> tensortrack::Result<()> {
    let g = parse_gct(K33)?;
    let faces = g.faces();
    for p in &faces.pairs {
        println!("colors {:?}: face lengths {:?}", p.colors, p.lengths);
    }
    println!("{} faces, connected = {}", faces.total(), g.is_connected());

    // relabeling does not change the canonical form
    let h = g.relabel(&[2, 0, 1], &[1, 2, 0])?;
    let (cg, ch) = (g.canonical_form(), h.canonical_form());
    println!("canonical forms agree: {} (hash {})", cg == ch, cg.content_hash());
    print!("{}", to_gct(&cg.to_graph()));

    match parse_gct("rank 1\npairs 1\nedge 0 1 2\n") {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }

    print!("{}", export_dot(&g));
    Ok(())
}
