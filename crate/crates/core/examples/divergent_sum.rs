//! The logarithmic lattice sum S(N), its slope against ln N, mass
//! independence, and the subtraction identity behind the p² coefficient.
//!
//! cargo run --release --example divergent_sum

use std::time::Instant;

use tensortrack::beta::TWO_PI_SQUARED;
use tensortrack::numerics::{default_pc_sequence, log_sum_fit, subtraction_identity_check, DEFAULT_GRID};

fn main() -> tensortrack::Result<()> {
    for m2 in [1.0, 4.0] {
        let t = Instant::now();
        let fit = log_sum_fit(&DEFAULT_GRID, m2)?;
        for (n, s) in &fit.samples {
            println!("m² = {m2}  N = {n:>4}  S = {s:.10}");
        }
        println!(
            "m² = {m2}  slope {:.6} vs 2π² = {:.6} ({:+.3}%), {:.2?}",
            fit.slope,
            TWO_PI_SQUARED,
            100.0 * (fit.slope / TWO_PI_SQUARED - 1.0),
            t.elapsed()
        );
    }

    let pc = default_pc_sequence();
    for q in [[0, 0, 0, 0], [1, -2, 3, 0], [5, 5, -5, 5]] {
        let c = subtraction_identity_check(q, 1.0, &pc)?;
        println!("q = {q:?}: extrapolated {:.15e}, exact {:.15e}, rel. error {:.1e}", c.estimate, c.exact, c.rel_error);
    }
    Ok(())
}
