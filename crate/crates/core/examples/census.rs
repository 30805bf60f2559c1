//! Counts of connected invariants Z_d(n) for small rank and order.
//!
//! cargo run --release --example census

use std::time::Instant;

use tensortrack::census::{count_invariants, DEFAULT_MAX_SPACE};

fn main() -> tensortrack::Result<()> {
    for (d, n_max) in [(1, 4), (2, 8), (3, 6), (4, 5)] {
        let t = Instant::now();
        let r = count_invariants(d, n_max, false, DEFAULT_MAX_SPACE)?;
        let counts: Vec<String> = r.counts.iter().map(|c| c.to_string()).collect();
        println!("Z_{d}(1..={n_max}) = {}  ({:.2?})", counts.join(", "), t.elapsed());
    }

    // the three quartic invariants of rank 3, as GCT
    let r = count_invariants(3, 2, true, DEFAULT_MAX_SPACE)?;
    for form in r.forms.iter().flatten().flatten().filter(|f| f.pairs() == 2) {
        println!("# {}", form.content_hash());
        print!("{}", tensortrack::graph::to_gct(&form.to_graph()));
    }
    Ok(())
}
