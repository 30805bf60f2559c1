//! Divergent diagram classes of the three quartic models up to a few vertices.
//!
//! cargo run --release --example power_counting -- 3

use std::time::Instant;

use tensortrack::power::{build_strands, diagrams, divergence_degree, scan_divergent, ModelKind, ModelSpec};

fn main() -> tensortrack::Result<()> {
    let max_vertices: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    for kind in [ModelKind::Vector, ModelKind::Matrix, ModelKind::Tensor] {
        let model = ModelSpec::new(kind);
        let four = divergence_degree(&build_strands(&model, &diagrams::one_loop_four_point(&model)));
        let two = divergence_degree(&build_strands(&model, &diagrams::tadpole(&model)));
        println!("{kind}: one-loop 4-point δ = {}, tadpole δ = {}", four.degree, two.degree);

        let t = Instant::now();
        let scan = scan_divergent(&model, max_vertices)?;
        println!("  {} divergent classes up to {max_vertices} vertices ({:.2?})", scan.classes.len(), t.elapsed());
        println!("  {:>16} {:>2} {:>3} {:>2} {:>7} {:>3} {:>5} {:>8}", "class", "V", "pts", "L", "strands", "δ", "mult", "closure");
        for c in &scan.classes {
            let closure = match (c.closure.min_degree, c.closure.melonic) {
                (Some(0), Some(true)) => "melonic",
                (Some(0), _) => "planar",
                (Some(_), _) => "higher",
                (None, _) => "-",
            };
            println!(
                "  {:>16} {:>2} {:>3} {:>2} {:>7} {:>3} {:>5} {:>8}",
                c.hash, c.vertices, c.n_points, c.internal_lines, c.closed_strands, c.report.degree, c.multiplicity, closure
            );
        }
        println!("  every class has a leading closure: {}", scan.all_have_leading_closure());
    }
    Ok(())
}
