//! Gaussian expectation of bubble invariants: exact polynomial, Monte Carlo
//! check, and which Wick pairings dominate at large N.
//!
//! cargo run --release --example gaussian_moments

use tensortrack::gaussian::{dominance_profile, exact_moment, mc_moment};
use tensortrack::graph::builtin;
use tensortrack::power::InteractionBubble;

fn main() -> tensortrack::Result<()> {
    let bubbles = [
        InteractionBubble::vector(),
        InteractionBubble::matrix(),
        InteractionBubble::tensor(3, 0),
        InteractionBubble { name: "K_3,3".into(), graph: builtin::torus() },
    ];
    for b in &bubbles {
        let exact = exact_moment(&b.graph, 3)?;
        println!("{:<6} E = {}", b.name, exact.polynomial);
        // beyond quartic order the evaluator sums over every index assignment
        let samples = if b.graph.pairs() == 2 { 100_000 } else { 2_000 };
        for n in [2, 3] {
            let r = mc_moment(&b.graph, n, samples, 2024)?;
            let mc = r.mc.expect("requested");
            println!(
                "       N = {n}: exact {:>8}  mc {:>12.4} ± {:.4}  ({:+.2}σ)",
                r.exact.unwrap_or_default(),
                mc.mean,
                mc.std_error,
                (mc.mean - r.value) / mc.std_error
            );
        }
        let prof = dominance_profile(&b.graph, &[2, 8, 32, 128])?;
        for row in &prof.rows {
            println!("       pairing {:?}: {} faces, degree {:?}, melonic {}", row.pairing, row.faces, row.degree, row.melonic);
        }
        let shares: Vec<String> = prof.degree_zero_share().iter().map(|s| format!("{s:.4}")).collect();
        println!("       degree-0 share at N = {:?}: {}", prof.grid, shares.join(" "));
    }
    Ok(())
}
